//! Finite harmonic sums: multiple harmonic (star) sums, the T-/S-harmonic
//! sums with interleaved odd/even denominators, t-harmonic sums and the
//! auxiliary star sums with shifted lower bounds.
//!
//! Every family is a chain over the denominators themselves: a T-harmonic
//! sum of depth p runs over `0 < m_1 < ... < m_p <= 2n - 1` with
//! `m_j ≡ j (mod 2)`, which is the same as the nested ≤/< conditions on the
//! `n_j` with denominators `2n_j - 1`, `2n_j`. The same chains, summed to
//! infinity, give the special values.

use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::nested::{Base, Level, Link, NestedSum, Node, Parity};
use crate::real::{pow2, ApproxReal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HarmonicFamily {
    /// ζ_n(k), signs allowed.
    Zeta,
    /// ζ★_n(k), signs allowed.
    ZetaStar,
    /// T_n(k).
    T,
    /// S_n(k).
    S,
    /// t_n(k), odd denominators.
    SmallT,
    /// t★_n(k).
    SmallTStar,
    /// ĥt★_n(k): odd denominators, 2 ≤ n_1 ≤ ... ≤ n_r ≤ n.
    HatTStar,
    /// s★_n(k): first denominator 2n_1 − 2, the rest 2n_j − 1, 2 ≤ n_1 ≤ ... .
    SStar,
    /// Mixed values: entry j even if its sign is +1, odd if −1; factor 2^r.
    Mixed,
}

impl HarmonicFamily {
    pub fn name(self) -> &'static str {
        match self {
            HarmonicFamily::Zeta => "zeta",
            HarmonicFamily::ZetaStar => "zeta_star",
            HarmonicFamily::T => "T",
            HarmonicFamily::S => "S",
            HarmonicFamily::SmallT => "t",
            HarmonicFamily::SmallTStar => "t_star",
            HarmonicFamily::HatTStar => "hat_t_star",
            HarmonicFamily::SStar => "s_star",
            HarmonicFamily::Mixed => "M",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "zeta" | "z" => HarmonicFamily::Zeta,
            "zeta_star" | "zs" | "zeta*" => HarmonicFamily::ZetaStar,
            "T" => HarmonicFamily::T,
            "S" => HarmonicFamily::S,
            "t" => HarmonicFamily::SmallT,
            "t_star" | "t*" => HarmonicFamily::SmallTStar,
            "hat_t_star" => HarmonicFamily::HatTStar,
            "s_star" | "s*" => HarmonicFamily::SStar,
            "M" => HarmonicFamily::Mixed,
            other => return Err(Error::Parse(format!("unknown family '{other}'"))),
        })
    }

    /// Whether entry signs are meaningful (as signs or parities).
    pub fn uses_signs(self) -> bool {
        matches!(self, HarmonicFamily::Zeta | HarmonicFamily::ZetaStar | HarmonicFamily::Mixed)
    }

    /// Largest denominator index for the truncation at `n`.
    pub fn bound(self, n: u64) -> u64 {
        match self {
            HarmonicFamily::Zeta | HarmonicFamily::ZetaStar | HarmonicFamily::Mixed => n,
            _ => (2 * n).saturating_sub(1),
        }
    }
}

/// The chain of levels for a family, as a nested sum whose cumulative value
/// at `M` is the truncation `m_r <= M`.
pub fn chain_sum(family: HarmonicFamily, k: &Composition) -> Result<NestedSum> {
    if !family.uses_signs() && k.is_signed() {
        return Err(Error::Domain(format!("family {} takes no signs", family.name())));
    }
    let r = k.depth();
    let mut levels = Vec::with_capacity(r);
    let mut links = Vec::with_capacity(r.saturating_sub(1));
    for (j, (&kj, &sj)) in k.parts().iter().zip(k.signs()).enumerate() {
        let pos = j + 1;
        let lvl = Level::new(kj);
        let lvl = match family {
            HarmonicFamily::Zeta | HarmonicFamily::ZetaStar => lvl.base(Base::sign(sj)),
            HarmonicFamily::T => lvl.parity(Parity::of(pos)),
            HarmonicFamily::S => lvl.parity(Parity::of(pos + 1)),
            HarmonicFamily::SmallT | HarmonicFamily::SmallTStar => lvl.parity(Parity::Odd),
            HarmonicFamily::HatTStar => lvl.parity(Parity::Odd).min_index(3),
            HarmonicFamily::SStar => {
                if pos == 1 {
                    lvl.parity(Parity::Even).min_index(2)
                } else {
                    lvl.parity(Parity::Odd).min_index(3)
                }
            }
            HarmonicFamily::Mixed => lvl.parity(if sj > 0 { Parity::Even } else { Parity::Odd }),
        };
        levels.push(lvl);
        if pos > 1 {
            links.push(match family {
                HarmonicFamily::ZetaStar | HarmonicFamily::SmallTStar | HarmonicFamily::HatTStar => Link::Weak,
                HarmonicFamily::SStar if pos > 2 => Link::Weak,
                _ => Link::Strict,
            });
        }
    }
    let scale = match family {
        HarmonicFamily::T | HarmonicFamily::S | HarmonicFamily::Mixed => pow2(r as i32),
        _ => Rational::from(1),
    };
    Ok(NestedSum { root: Node::chain(levels, links), scale })
}

/// A harmonic family truncated at an outer index `n`, written on the `n`
/// scale itself so that it can sit under a level that also carries other
/// `n`-indexed factors. Returns the top node, the link from the outer level
/// (`Weak` means the truncation includes `n`) and the constant factor.
/// `None` for the empty composition (value 1).
///
/// T_n: denominators 2n_1−1, 2n_2, ...; `n_j ≤ n_{j+1}` after odd positions,
/// `<` after even ones, and the top runs to `n` for odd depth, `n − 1` for
/// even depth. S_n mirrors this with 2n_1, 2n_2−1, ....
pub fn n_scale_chain(family: HarmonicFamily, k: &Composition) -> Result<Option<(Node, Link, Rational)>> {
    if !family.uses_signs() && k.is_signed() {
        return Err(Error::Domain(format!("family {} takes no signs", family.name())));
    }
    let r = k.depth();
    if r == 0 {
        return Ok(None);
    }
    let mut levels = Vec::with_capacity(r);
    let mut links = Vec::with_capacity(r - 1);
    for (j, (&kj, &sj)) in k.parts().iter().zip(k.signs()).enumerate() {
        let pos = j + 1;
        let odd = pos % 2 == 1;
        let (lvl, after) = match family {
            HarmonicFamily::Zeta => (Level::new(kj).base(Base::sign(sj)), Link::Strict),
            HarmonicFamily::ZetaStar => (Level::new(kj).base(Base::sign(sj)), Link::Weak),
            HarmonicFamily::T if odd => (Level::new(0).affine(2, -1, kj), Link::Weak),
            HarmonicFamily::T => (Level::new(0).affine(2, 0, kj), Link::Strict),
            HarmonicFamily::S if odd => (Level::new(0).affine(2, 0, kj), Link::Strict),
            HarmonicFamily::S => (Level::new(0).affine(2, -1, kj), Link::Weak),
            HarmonicFamily::SmallT => (Level::new(0).affine(2, -1, kj), Link::Strict),
            HarmonicFamily::SmallTStar => (Level::new(0).affine(2, -1, kj), Link::Weak),
            HarmonicFamily::HatTStar => (Level::new(0).affine(2, -1, kj).min_index(2), Link::Weak),
            HarmonicFamily::SStar if pos == 1 => (Level::new(0).affine(2, -2, kj).min_index(2), Link::Weak),
            HarmonicFamily::SStar => (Level::new(0).affine(2, -1, kj).min_index(2), Link::Weak),
            HarmonicFamily::Mixed => {
                return Err(Error::Domain("mixed values have no truncation family".into()));
            }
        };
        levels.push(lvl);
        if pos < r {
            links.push(after);
        }
    }
    // The link after the top position decides whether n itself is included.
    let top = match family {
        HarmonicFamily::T if r % 2 == 0 => Link::Strict,
        HarmonicFamily::S if r % 2 == 1 => Link::Strict,
        _ => Link::Weak,
    };
    let scale = match family {
        HarmonicFamily::T | HarmonicFamily::S => pow2(r as i32),
        _ => Rational::from(1),
    };
    Ok(Some((Node::chain(levels, links).unwrap(), top, scale)))
}

/// Truncation of a factor relative to the outer index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trunc {
    /// H_n.
    AtN,
    /// H_{n−1}; only for families whose top runs up to `n`.
    BeforeN,
}

/// Σ_n root(n) · Π_i H_i(n) with every factor truncated at `n` or `n − 1`.
pub fn outer_sum(root: Level, factors: &[(HarmonicFamily, Composition, Trunc)]) -> Result<NestedSum> {
    let mut node = Node::leaf(root);
    let mut scale = Rational::from(1);
    for (fam, k, tr) in factors {
        let Some((child, link, s)) = n_scale_chain(*fam, k)? else { continue };
        let link = match (tr, link) {
            (Trunc::AtN, l) => l,
            (Trunc::BeforeN, Link::Weak) => Link::Strict,
            (Trunc::BeforeN, Link::Strict) => {
                return Err(Error::Domain(format!("{}_{{n-1}}({k}) has no n-scale form", fam.name())));
            }
        };
        node = node.with_child(child, link);
        scale *= s;
    }
    Ok(NestedSum::new(node).scaled(scale))
}

/// Exact values of a harmonic family for `n = 0..=n_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct PrefixTable {
    pub family: HarmonicFamily,
    pub k: Composition,
    pub values: Vec<Rational>,
}

impl PrefixTable {
    /// One pass over the denominators, O(n·r) rational operations.
    pub fn build(family: HarmonicFamily, k: &Composition, n_max: u64) -> Result<Self> {
        let sum = chain_sum(family, k)?;
        let m_max = family.bound(n_max);
        let cumulative = sum.exact_prefix(m_max)?;
        let values = (0..=n_max)
            .map(|n| {
                if n == 0 {
                    // Empty range; the empty composition still gives 1.
                    if k.is_empty() {
                        Rational::from(1)
                    } else {
                        Rational::new()
                    }
                } else {
                    cumulative[family.bound(n) as usize].clone()
                }
            })
            .collect();
        Ok(PrefixTable { family, k: k.clone(), values })
    }

    pub fn at(&self, n: u64) -> &Rational {
        &self.values[n as usize]
    }
}

fn single(family: HarmonicFamily, k: &Composition, n: u64) -> Result<Rational> {
    Ok(PrefixTable::build(family, k, n)?.values.pop().unwrap())
}

/// ζ_n(k); signed entries give alternating sums.
pub fn mhs(k: &Composition, n: u64) -> Result<Rational> {
    single(HarmonicFamily::Zeta, k, n)
}

/// ζ★_n(k).
pub fn mhss(k: &Composition, n: u64) -> Result<Rational> {
    single(HarmonicFamily::ZetaStar, k, n)
}

/// T_n(k).
pub fn mths_t(k: &Composition, n: u64) -> Result<Rational> {
    single(HarmonicFamily::T, k, n)
}

/// S_n(k).
pub fn mshs_s(k: &Composition, n: u64) -> Result<Rational> {
    single(HarmonicFamily::S, k, n)
}

/// t_n(k) or t★_n(k).
pub fn ths_t(k: &Composition, n: u64, star: bool) -> Result<Rational> {
    let fam = if star { HarmonicFamily::SmallTStar } else { HarmonicFamily::SmallT };
    single(fam, k, n)
}

pub fn aux_hat_t_star(k: &Composition, n: u64) -> Result<Rational> {
    single(HarmonicFamily::HatTStar, k, n)
}

pub fn aux_s_star(k: &Composition, n: u64) -> Result<Rational> {
    single(HarmonicFamily::SStar, k, n)
}

/// ζ_n(k; x) or ζ★_n(k; x) for real arguments `|x_j| <= 1`.
pub fn parametric_mhs(k: &Composition, x: &[f64], n: u64, star: bool, bits: u32) -> Result<ApproxReal> {
    if x.len() != k.depth() {
        return Err(Error::Domain(format!("{} arguments for depth {}", x.len(), k.depth())));
    }
    if x.iter().any(|v| v.abs() > 1.0 || !v.is_finite()) {
        return Err(Error::Domain("parametric arguments must lie in [-1, 1]".into()));
    }
    if k.is_signed() {
        return Err(Error::Domain("pass signs through the arguments".into()));
    }
    let levels = k
        .parts()
        .iter()
        .zip(x)
        .map(|(&kj, &xj)| Level::new(kj).base(real_base(xj)))
        .collect();
    let link = if star { Link::Weak } else { Link::Strict };
    let sum = NestedSum {
        root: Node::chain(levels, vec![link; k.depth().saturating_sub(1)]),
        scale: Rational::from(1),
    };
    let mut out = Float::with_val(bits, if k.is_empty() { 1 } else { 0 });
    if n > 0 {
        sum.float_prefix(bits + 32, &[n], |_, v| out = Float::with_val(bits, v));
    }
    let r = out.to_f64().abs() * 2f64.powi(-(bits as i32) + 4) * (n as f64 + 1.0);
    Ok(ApproxReal::new(out, r))
}

/// Maps ±1 to the exact bases and anything else to a real base.
pub fn real_base(x: f64) -> Base {
    if x == 1.0 {
        Base::One
    } else if x == -1.0 {
        Base::Minus
    } else {
        Base::Real(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::from((a, b))
    }

    fn c(p: &[u32]) -> Composition {
        Composition::from_slice(p)
    }

    #[test]
    fn mhs_examples() {
        assert_eq!(mhs(&c(&[1]), 2).unwrap(), q(3, 2));
        assert_eq!(mhs(&c(&[1, 1]), 1).unwrap(), q(0, 1));
        assert_eq!(mhs(&Composition::empty(), 5).unwrap(), q(1, 1));
        // 0 < m1 < m2 <= 3: (1,2),(1,3),(2,3).
        let expect = q(1, 4) + q(1, 9) + q(1, 18);
        assert_eq!(mhs(&c(&[1, 2]), 3).unwrap(), expect);
    }

    #[test]
    fn mhss_examples() {
        assert_eq!(mhss(&c(&[1]), 2).unwrap(), q(3, 2));
        assert_eq!(mhss(&c(&[1, 1]), 2).unwrap(), q(7, 4));
        // 0 < m1 <= m2 <= 3 for (2,1).
        let mut expect = Rational::new();
        for a in 1..=3i64 {
            for b in a..=3 {
                expect += q(1, a * a * b);
            }
        }
        assert_eq!(mhss(&c(&[2, 1]), 3).unwrap(), expect);
    }

    #[test]
    fn t_and_s_examples() {
        assert_eq!(mths_t(&c(&[1]), 1).unwrap(), q(2, 1));
        assert_eq!(mths_t(&c(&[1, 1]), 1).unwrap(), q(0, 1));
        assert_eq!(mths_t(&c(&[1, 1]), 2).unwrap(), q(2, 1));
        assert_eq!(mshs_s(&c(&[1]), 2).unwrap(), q(1, 1));
        assert_eq!(mshs_s(&c(&[1]), 1).unwrap(), q(0, 1));
        assert_eq!(mshs_s(&c(&[1, 1]), 2).unwrap(), q(2, 3));
    }

    #[test]
    fn small_t_examples() {
        assert_eq!(ths_t(&c(&[2]), 2, false).unwrap(), q(10, 9));
        assert_eq!(ths_t(&c(&[1, 1]), 1, true).unwrap(), q(1, 1));
        assert_eq!(ths_t(&c(&[1, 1]), 2, false).unwrap(), q(1, 3));
        assert_eq!(ths_t(&Composition::empty(), 3, true).unwrap(), q(1, 1));
    }

    #[test]
    fn aux_examples() {
        assert_eq!(aux_hat_t_star(&c(&[1]), 2).unwrap(), q(1, 3));
        assert_eq!(aux_s_star(&c(&[1]), 2).unwrap(), q(1, 2));
        // 2 <= n1 <= n2 <= 3 with denominators 3, 5.
        let expect = q(1, 9) + q(1, 15) + q(1, 25);
        assert_eq!(aux_hat_t_star(&c(&[1, 1]), 3).unwrap(), expect);
        assert_eq!(aux_hat_t_star(&c(&[1]), 1).unwrap(), q(0, 1));
    }

    #[test]
    fn parametric_examples() {
        let v = parametric_mhs(&c(&[1]), &[1.0], 2, false, 128).unwrap();
        assert!((v.to_f64() - 1.5).abs() < 1e-30);
        let v = parametric_mhs(&c(&[1]), &[-1.0], 2, false, 128).unwrap();
        assert!((v.to_f64() + 0.5).abs() < 1e-30);
        // zeta*_2((1,1); (-1,1)) = sum_{m1<=m2<=2} (-1)^m1/(m1 m2) = -1 - 1/2 + 1/4.
        let v = parametric_mhs(&c(&[1, 1]), &[-1.0, 1.0], 2, true, 128).unwrap();
        assert!((v.to_f64() + 1.25).abs() < 1e-30);
        assert!(parametric_mhs(&c(&[1]), &[2.0], 2, false, 128).is_err());
    }
    #[test]
    fn n_scale_chains_match_tables() {
        let fams = [
            HarmonicFamily::Zeta,
            HarmonicFamily::ZetaStar,
            HarmonicFamily::T,
            HarmonicFamily::S,
            HarmonicFamily::SmallT,
            HarmonicFamily::SmallTStar,
            HarmonicFamily::HatTStar,
            HarmonicFamily::SStar,
        ];
        for fam in fams {
            for k in [c(&[1]), c(&[2, 1]), c(&[1, 1, 2]), c(&[1, 2, 1, 1])] {
                let table = PrefixTable::build(fam, &k, 9).unwrap();
                let (node, link, scale) = n_scale_chain(fam, &k).unwrap().unwrap();
                // Wrap in an outer level of weight 1 at every n to read off the truncation.
                let outer = Node::leaf(Level::new(0)).with_child(node, link);
                let sum = NestedSum { root: Some(outer), scale };
                let cum = sum.exact_prefix(9).unwrap();
                for n in 1..=9u64 {
                    let got = Rational::from(&cum[n as usize] - &cum[n as usize - 1]);
                    assert_eq!(&got, table.at(n), "{fam:?} {k} n={n}");
                }
            }
        }
    }

    #[test]
    fn outer_sums_multiply_truncations() {
        let k = c(&[2]);
        let l = c(&[1, 1]);
        let sum = outer_sum(
            Level::new(3),
            &[(HarmonicFamily::Zeta, k.clone(), Trunc::BeforeN), (HarmonicFamily::T, l.clone(), Trunc::AtN)],
        )
        .unwrap();
        let cum = sum.exact_prefix(8).unwrap();
        let mut acc = Rational::new();
        for n in 1..=8u64 {
            acc += Rational::from(mhs(&k, n - 1).unwrap() * mths_t(&l, n).unwrap()) / Rational::from(n.pow(3));
            assert_eq!(cum[n as usize], acc);
        }
        assert!(outer_sum(Level::new(2), &[(HarmonicFamily::T, l, Trunc::BeforeN)]).is_err());
    }
}
