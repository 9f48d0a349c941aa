//! Nested sums over integer indices.
//!
//! Every series in the crate is a tree of summation levels. A level sums
//! over an integer index `m` with weight
//!
//! ```text
//!   w(m) = base^m / (m^k * prod_i (m + c_i)^{e_i})      (m of the right parity)
//! ```
//!
//! and multiplies by the cumulative values of its children evaluated at
//! `m - 1` (strict link) or `m` (weak link). Writing `C_v(M)` for the
//! cumulative sum of node `v` over `m <= M`,
//!
//! ```text
//!   C_v(M) = sum_{m <= M} w_v(m) * prod_c C_c(m - delta_c).
//! ```
//!
//! A plain chain of levels is a multiple harmonic sum; a root with two
//! chains below it is a Kaneko-Yamamoto convolution. Parity filters give
//! the level-two families (t, T, S, M) without special cases.

use rug::ops::Pow;
use rug::{Assign, Float, Integer, Rational};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Any,
    Even,
    Odd,
}

impl Parity {
    pub fn admits(self, m: u64) -> bool {
        match self {
            Parity::Any => true,
            Parity::Even => m % 2 == 0,
            Parity::Odd => m % 2 == 1,
        }
    }

    /// Parity of the integer `j` as a filter.
    pub fn of(j: usize) -> Parity {
        if j % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// The geometric factor `base^m` of a level.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Base {
    One,
    Minus,
    Real(f64),
}

impl Base {
    pub fn sign(s: i8) -> Base {
        if s < 0 {
            Base::Minus
        } else {
            Base::One
        }
    }

    pub fn abs(self) -> f64 {
        match self {
            Base::One | Base::Minus => 1.0,
            Base::Real(x) => x.abs(),
        }
    }

    /// Product of two bases (used when signs of nested levels are merged).
    pub fn times(self, other: Base) -> Base {
        match (self, other) {
            (Base::One, b) | (b, Base::One) => b,
            (Base::Minus, Base::Minus) => Base::One,
            (Base::Minus, Base::Real(x)) | (Base::Real(x), Base::Minus) => Base::Real(-x),
            (Base::Real(x), Base::Real(y)) => Base::Real(x * y),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Link {
    /// Child evaluated at `m - 1`.
    Strict,
    /// Child evaluated at `m`.
    Weak,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Level {
    pub exponent: u32,
    pub parity: Parity,
    pub base: Base,
    /// Extra denominator factors `(a*m + c)^e` as `(a, c, e)`.
    pub shifts: Vec<(i64, i64, u32)>,
    pub min_index: u64,
}

impl Level {
    pub fn new(exponent: u32) -> Self {
        Level { exponent, parity: Parity::Any, base: Base::One, shifts: Vec::new(), min_index: 1 }
    }

    pub fn parity(mut self, p: Parity) -> Self {
        self.parity = p;
        self
    }

    pub fn base(mut self, b: Base) -> Self {
        self.base = b;
        self
    }

    pub fn shift(self, c: i64, e: u32) -> Self {
        self.affine(1, c, e)
    }

    /// Multiplies the denominator by `(a*m + c)^e`.
    pub fn affine(mut self, a: i64, c: i64, e: u32) -> Self {
        assert!(a >= 1);
        if e > 0 {
            self.shifts.push((a, c, e));
        }
        self
    }

    pub fn min_index(mut self, m: u64) -> Self {
        self.min_index = m;
        self
    }

    fn active(&self, m: u64) -> bool {
        m >= self.min_index && self.parity.admits(m)
    }

    /// Total decay exponent of the weight in `m`.
    pub fn total_exponent(&self) -> u32 {
        self.exponent + self.shifts.iter().map(|s| s.2).sum::<u32>()
    }

    fn denominator(&self, m: u64) -> Integer {
        let mut d = Integer::from(m).pow(self.exponent);
        for &(a, c, e) in &self.shifts {
            let v = a * m as i64 + c;
            debug_assert!(v > 0);
            d *= Integer::from(v).pow(e);
        }
        d
    }

    /// Small-integer version of the denominator when it fits.
    fn denominator_u128(&self, m: u64) -> Option<u128> {
        let mut d: u128 = 1;
        for _ in 0..self.exponent {
            d = d.checked_mul(m as u128)?;
        }
        for &(a, c, e) in &self.shifts {
            let v = (a * m as i64 + c) as u128;
            for _ in 0..e {
                d = d.checked_mul(v)?;
            }
        }
        Some(d)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Node {
    pub level: Level,
    pub children: Vec<(Node, Link)>,
}

impl Node {
    pub fn leaf(level: Level) -> Self {
        Node { level, children: Vec::new() }
    }

    pub fn with_child(mut self, child: Node, link: Link) -> Self {
        self.children.push((child, link));
        self
    }

    /// A chain of levels, innermost first: `levels[0]` is the smallest
    /// index and the last entry becomes the root.
    pub fn chain(levels: Vec<Level>, links: Vec<Link>) -> Option<Node> {
        assert_eq!(links.len() + 1, levels.len().max(1));
        let mut it = levels.into_iter();
        let mut node = Node::leaf(it.next()?);
        for (lvl, link) in it.zip(links) {
            node = Node { level: lvl, children: vec![(node, link)] };
        }
        Some(node)
    }

    fn count(&self) -> usize {
        1 + self.children.iter().map(|c| c.0.count()).sum::<usize>()
    }
}

/// A nested sum with an exact overall coefficient. An absent root means the
/// empty sum convention (value 1 times the coefficient).
#[derive(Clone, Debug, PartialEq)]
pub struct NestedSum {
    pub root: Option<Node>,
    pub scale: Rational,
}

struct Flat {
    levels: Vec<Level>,
    children: Vec<Vec<(usize, Link)>>,
}

fn flatten(node: &Node, out: &mut Flat) -> usize {
    let kids: Vec<(usize, Link)> = node.children.iter().map(|(c, l)| (flatten(c, out), *l)).collect();
    out.levels.push(node.level.clone());
    out.children.push(kids);
    out.levels.len() - 1
}

impl NestedSum {
    pub fn new(root: Node) -> Self {
        NestedSum { root: Some(root), scale: Rational::from(1) }
    }

    pub fn one() -> Self {
        NestedSum { root: None, scale: Rational::from(1) }
    }

    pub fn scaled(mut self, s: impl Into<Rational>) -> Self {
        self.scale *= s.into();
        self
    }

    pub fn node_count(&self) -> usize {
        self.root.as_ref().map_or(0, |r| r.count())
    }

    fn flat(&self) -> Option<Flat> {
        let root = self.root.as_ref()?;
        let mut f = Flat { levels: Vec::new(), children: Vec::new() };
        flatten(root, &mut f);
        Some(f)
    }

    /// Whether the infinite series converges: the root needs decay faster
    /// than `1/m` unless its terms oscillate or decay geometrically. Inner
    /// levels are finite partial sums and grow at most polylogarithmically.
    pub fn check_convergent(&self) -> Result<()> {
        let Some(root) = &self.root else { return Ok(()) };
        let lvl = &root.level;
        let ok = lvl.total_exponent() >= 2 || lvl.base != Base::One;
        if let Base::Real(x) = lvl.base {
            if x.abs() > 1.0 {
                return Err(Error::Domain(format!("argument {x} outside [-1, 1]")));
            }
            if x == 1.0 && lvl.total_exponent() < 2 {
                return Err(Error::Divergent("series diverges at x = 1".into()));
            }
        }
        if ok {
            Ok(())
        } else {
            Err(Error::Divergent("outer exponent 1 without oscillation".into()))
        }
    }

    /// Exact cumulative values `C(M)` for `M = 0..=m_max`, including the
    /// overall coefficient. Only levels with bases `+1`/`-1` are allowed.
    pub fn exact_prefix(&self, m_max: u64) -> Result<Vec<Rational>> {
        let Some(f) = self.flat() else {
            return Ok(vec![self.scale.clone(); m_max as usize + 1]);
        };
        for l in &f.levels {
            if let Base::Real(_) = l.base {
                return Err(Error::Domain("exact evaluation needs bases +1 or -1".into()));
            }
        }
        let n = f.levels.len();
        let mut cur = vec![Rational::new(); n];
        let mut prev = vec![Rational::new(); n];
        let mut out = Vec::with_capacity(m_max as usize + 1);
        out.push(Rational::new());
        for m in 1..=m_max {
            for v in 0..n {
                prev[v].clone_from(&cur[v]);
                let lvl = &f.levels[v];
                if !lvl.active(m) {
                    continue;
                }
                let mut term = Rational::from((Integer::from(1), lvl.denominator(m)));
                if lvl.base == Base::Minus && m % 2 == 1 {
                    term = -term;
                }
                for &(c, link) in &f.children[v] {
                    let cv = match link {
                        Link::Strict => &prev[c],
                        Link::Weak => &cur[c],
                    };
                    term *= cv;
                }
                cur[v] += term;
            }
            out.push(Rational::from(&cur[n - 1] * &self.scale));
        }
        Ok(out)
    }

    /// Floating-point cumulative sums. `record` is called with `(M, C(M))`
    /// for every `M` in `checkpoints` (sorted ascending); the coefficient is
    /// already applied. Stops after the last checkpoint.
    pub fn float_prefix(&self, prec: u32, checkpoints: &[u64], mut record: impl FnMut(u64, &Float)) {
        let Some(f) = self.flat() else {
            let one = Float::with_val(prec, &self.scale);
            for &c in checkpoints {
                record(c, &one);
            }
            return;
        };
        let n = f.levels.len();
        let zero = Float::new(prec);
        let mut cur = vec![zero.clone(); n];
        let mut prev = vec![zero.clone(); n];
        let mut pow: Vec<Option<(Float, Float)>> = f
            .levels
            .iter()
            .map(|l| match l.base {
                Base::Real(x) => Some((Float::with_val(prec, 1), Float::with_val(prec, x))),
                _ => None,
            })
            .collect();
        let scale = Float::with_val(prec, &self.scale);
        let mut term = zero.clone();
        let mut den = zero.clone();
        let mut scratch = zero;
        let mut next_cp = 0;
        while next_cp < checkpoints.len() && checkpoints[next_cp] == 0 {
            record(0, &scratch);
            next_cp += 1;
        }
        let m_max = checkpoints.last().copied().unwrap_or(0);
        for m in 1..=m_max {
            for v in 0..n {
                prev[v].clone_from(&cur[v]);
                let lvl = &f.levels[v];
                if let Some((p, x)) = pow[v].as_mut() {
                    *p *= &*x;
                }
                if !lvl.active(m) {
                    continue;
                }
                match lvl.denominator_u128(m) {
                    Some(d) => {
                        den.assign_u128(d);
                    }
                    None => den.assign(lvl.denominator(m)),
                }
                term.assign(1);
                match lvl.base {
                    Base::One => {}
                    Base::Minus => {
                        if m % 2 == 1 {
                            term = -term;
                        }
                    }
                    Base::Real(_) => term *= &pow[v].as_ref().unwrap().0,
                }
                for &(c, link) in &f.children[v] {
                    let cv = match link {
                        Link::Strict => &prev[c],
                        Link::Weak => &cur[c],
                    };
                    term *= cv;
                }
                term /= &den;
                cur[v] += &term;
            }
            while next_cp < checkpoints.len() && checkpoints[next_cp] == m {
                scratch.assign(&cur[n - 1] * &scale);
                record(m, &scratch);
                next_cp += 1;
            }
        }
    }
}

trait AssignU128 {
    fn assign_u128(&mut self, v: u128);
}

impl AssignU128 for Float {
    fn assign_u128(&mut self, v: u128) {
        if v <= u64::MAX as u128 {
            self.assign(v as u64);
        } else {
            self.assign(Integer::from(v));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(parts: &[u32], link: Link) -> NestedSum {
        let levels = parts.iter().map(|&k| Level::new(k)).collect();
        let links = vec![link; parts.len().saturating_sub(1)];
        NestedSum { root: Node::chain(levels, links), scale: Rational::from(1) }
    }

    #[test]
    fn exact_depth_one() {
        let v = chain(&[1], Link::Strict).exact_prefix(3).unwrap();
        assert_eq!(v[2], Rational::from((3, 2)));
        assert_eq!(v[3], Rational::from((11, 6)));
    }

    #[test]
    fn exact_star_vs_strict() {
        // zeta*_2(1,1) = 7/4, zeta_2(1,1) = 1/2.
        assert_eq!(chain(&[1, 1], Link::Weak).exact_prefix(2).unwrap()[2], Rational::from((7, 4)));
        assert_eq!(chain(&[1, 1], Link::Strict).exact_prefix(2).unwrap()[2], Rational::from((1, 2)));
    }

    #[test]
    fn float_matches_exact() {
        let s = chain(&[2, 1, 3], Link::Strict);
        let ex = s.exact_prefix(40).unwrap();
        let mut got = Vec::new();
        s.float_prefix(128, &[10, 40], |m, v| got.push((m, v.clone())));
        for (m, v) in got {
            let e = Float::with_val(128, &ex[m as usize]);
            assert!((v - e).abs() < 1e-30);
        }
    }

    #[test]
    fn geometric_base() {
        let s = NestedSum::new(Node::leaf(Level::new(1).base(Base::Real(0.5))));
        let mut last = Float::new(128);
        s.float_prefix(128, &[200], |_, v| last = v.clone());
        let log2 = Float::with_val(128, rug::float::Constant::Log2);
        assert!((last - log2).abs() < 1e-30);
    }

    #[test]
    fn convergence_policy() {
        assert!(chain(&[2], Link::Strict).check_convergent().is_ok());
        assert!(chain(&[2, 1], Link::Strict).check_convergent().is_err());
        let alt = NestedSum::new(Node::leaf(Level::new(1).base(Base::Minus)));
        assert!(alt.check_convergent().is_ok());
        let shifted = NestedSum::new(Node::leaf(Level::new(1).shift(1, 1)));
        assert!(shifted.check_convergent().is_ok());
    }
}
