//! Kaneko-Yamamoto convolutions ζ(k ⊛ l★), their alternating and level-two
//! (convoluted T/S) versions, Arakawa-Kaneko values at positive integers,
//! and Schur multiple zeta values modulo N truncated at a finite bound.

use std::collections::HashMap;

use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::harmonic::{chain_sum, HarmonicFamily};
use crate::nested::{Base, Level, Link, NestedSum, Node, Parity};
use crate::real::ApproxReal;
use crate::series::{sum_series_cached, SeriesConfig};

fn inner_node(family: HarmonicFamily, k: &Composition) -> Result<(Option<Node>, Rational)> {
    let s = chain_sum(family, k)?;
    Ok((s.root, s.scale))
}

/// Σ_n ζ_{n−1}(k_1..k_{r−1}; σ) ζ★_n(l_1..l_{s−1}; ε) (σ_r ε_s)^n / n^{k_r + l_s}.
/// Signs live in the compositions; all signs +1 gives ζ(k ⊛ l★).
pub fn ky_series(k: &Composition, l: &Composition) -> Result<NestedSum> {
    let (Some(kr), Some(ls)) = (k.last(), l.last()) else {
        return Err(Error::Domain("both compositions must be nonempty".into()));
    };
    let sign = k.signs()[k.depth() - 1] * l.signs()[l.depth() - 1];
    let mut root = Node::leaf(Level::new(kr + ls).base(Base::sign(sign)));
    let (kn, _) = inner_node(HarmonicFamily::Zeta, &k.init())?;
    let (ln, _) = inner_node(HarmonicFamily::ZetaStar, &l.init())?;
    if let Some(n) = kn {
        root = root.with_child(n, Link::Strict);
    }
    if let Some(n) = ln {
        root = root.with_child(n, Link::Weak);
    }
    Ok(NestedSum::new(root))
}

/// ζ(k ⊛ l★).
pub fn ky_zeta(k: &Composition, l: &Composition, cfg: &SeriesConfig) -> Result<ApproxReal> {
    if k.is_signed() || l.is_signed() {
        return Err(Error::Domain("use alt_ky for signed entries".into()));
    }
    sum_series_cached(&ky_series(k, l)?, cfg)
}

/// ζ((k; σ) ⊛ (l; ε)★) with the signs carried by the compositions.
pub fn alt_ky(k: &Composition, l: &Composition, cfg: &SeriesConfig) -> Result<ApproxReal> {
    sum_series_cached(&ky_series(k, l)?, cfg)
}

/// ξ(k; s) = ζ(k ⊛ ({1}_s)★) for a positive integer `s`.
pub fn xi_value(k: &Composition, s: usize, cfg: &SeriesConfig) -> Result<ApproxReal> {
    if s == 0 {
        return Err(Error::Domain("ξ(k; s) needs s ≥ 1".into()));
    }
    ky_zeta(k, &Composition::repeat(1, s), cfg)
}

/// Depth parities of (k, l) in a convoluted value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConvCase {
    EvenEven,
    OddOdd,
    EvenOdd,
    OddEven,
}

impl ConvCase {
    pub fn of(k: &Composition, l: &Composition) -> ConvCase {
        match (k.depth() % 2 == 0, l.depth() % 2 == 0) {
            (true, true) => ConvCase::EvenEven,
            (false, false) => ConvCase::OddOdd,
            (true, false) => ConvCase::EvenOdd,
            (false, true) => ConvCase::OddEven,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "ee" | "even-even" => ConvCase::EvenEven,
            "oo" | "odd-odd" => ConvCase::OddOdd,
            "eo" | "even-odd" => ConvCase::EvenOdd,
            "oe" | "odd-even" => ConvCase::OddEven,
            other => return Err(Error::Parse(format!("unknown parity case '{other}'"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConvKind {
    T,
    S,
}

/// Inner families of the two arms and the parity of the outer index.
fn conv_shape(kind: ConvKind, case: ConvCase) -> Result<(HarmonicFamily, HarmonicFamily, Parity)> {
    use HarmonicFamily::{S, T};
    Ok(match (kind, case) {
        (ConvKind::T, ConvCase::EvenEven) => (T, T, Parity::Even),
        (ConvKind::T, ConvCase::OddOdd) => (T, T, Parity::Odd),
        (ConvKind::T, ConvCase::EvenOdd) => (T, S, Parity::Even),
        (ConvKind::T, ConvCase::OddEven) => (T, S, Parity::Odd),
        (ConvKind::S, ConvCase::EvenEven) => (S, S, Parity::Odd),
        (ConvKind::S, ConvCase::OddOdd) => (S, S, Parity::Even),
        (ConvKind::S, c) => return Err(Error::Domain(format!("no convoluted S-value for case {c:?}"))),
    })
}

/// The series of T(k ⊛ l) or S(k ⊛ l) on the integer scale: the outer index
/// is 2n or 2n − 1 and the arms are T/S chains truncated just below it.
pub fn conv_series(kind: ConvKind, k: &Composition, l: &Composition, case: ConvCase) -> Result<NestedSum> {
    if k.is_empty() || l.is_empty() {
        return Err(Error::Domain("both compositions must be nonempty".into()));
    }
    if ConvCase::of(k, l) != case {
        return Err(Error::Domain(format!(
            "depths ({}, {}) do not match case {case:?}",
            k.depth(),
            l.depth()
        )));
    }
    let (fk, fl, parity) = conv_shape(kind, case)?;
    let (kn, ks) = inner_node(fk, &k.init())?;
    let (ln, ls) = inner_node(fl, &l.init())?;
    let mut root = Node::leaf(Level::new(k.last().unwrap() + l.last().unwrap()).parity(parity));
    for n in [kn, ln].into_iter().flatten() {
        // Arms have the opposite parity at their top, so < and ≤ agree.
        root = root.with_child(n, Link::Strict);
    }
    Ok(NestedSum::new(root).scaled(ks * ls * Rational::from(2)))
}

pub fn conv_t(k: &Composition, l: &Composition, case: ConvCase, cfg: &SeriesConfig) -> Result<ApproxReal> {
    sum_series_cached(&conv_series(ConvKind::T, k, l, case)?, cfg)
}

pub fn conv_s(k: &Composition, l: &Composition, case: ConvCase, cfg: &SeriesConfig) -> Result<ApproxReal> {
    sum_series_cached(&conv_series(ConvKind::S, k, l, case)?, cfg)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchurCell {
    pub row: u32,
    pub col: u32,
    pub exponent: u32,
    #[serde(default)]
    pub residue: u32,
}

/// A skew Young diagram whose boxes carry exponents and residues mod N.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchurDiagramModN {
    pub modulus: u32,
    pub cells: Vec<SchurCell>,
}

pub const MAX_ENTRY_BOUND: u32 = 60;
const MAX_PATH_CELLS: usize = 16;

impl SchurDiagramModN {
    pub fn from_json(s: &str) -> Result<Self> {
        let d: SchurDiagramModN = serde_json::from_str(s).map_err(|e| Error::Schema(e.to_string()))?;
        d.validate()?;
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap()
    }

    /// Checks the skew shape: every row and column is a contiguous run and
    /// the row starts and ends weakly decrease going down.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Schema(m));
        if self.modulus == 0 {
            return bad("modulus must be at least 1".into());
        }
        if self.cells.is_empty() {
            return bad("diagram has no boxes".into());
        }
        let mut rows: HashMap<u32, Vec<u32>> = HashMap::new();
        let mut cols: HashMap<u32, Vec<u32>> = HashMap::new();
        for c in &self.cells {
            if c.row == 0 || c.col == 0 {
                return bad("rows and columns are numbered from 1".into());
            }
            if c.exponent == 0 {
                return bad(format!("box ({}, {}) has exponent 0", c.row, c.col));
            }
            if c.residue >= self.modulus {
                return bad(format!("box ({}, {}) residue {} not below {}", c.row, c.col, c.residue, self.modulus));
            }
            rows.entry(c.row).or_default().push(c.col);
            cols.entry(c.col).or_default().push(c.row);
        }
        for (what, map) in [("row", &mut rows), ("column", &mut cols)] {
            for (key, v) in map.iter_mut() {
                v.sort_unstable();
                if v.windows(2).any(|w| w[1] != w[0] + 1) {
                    return bad(format!("{what} {key} is not a contiguous run of boxes"));
                }
            }
        }
        let mut row_ids: Vec<u32> = rows.keys().copied().collect();
        row_ids.sort_unstable();
        if row_ids.windows(2).any(|w| w[1] != w[0] + 1) {
            return bad("rows must be consecutive".into());
        }
        for w in row_ids.windows(2) {
            let (a, b) = (&rows[&w[0]], &rows[&w[1]]);
            if b[0] > a[0] || b[b.len() - 1] > a[a.len() - 1] {
                return bad(format!("rows {} and {} do not form a skew shape", w[0], w[1]));
            }
        }
        Ok(())
    }

    fn has(&self, row: u32, col: u32) -> bool {
        row > 0 && col > 0 && self.cells.iter().any(|c| c.row == row && c.col == col)
    }

    /// The anti-hook of a pair: k_1..k_{r−1} down the last column, l_1..l_{s−1}
    /// along the bottom row and k_r + l_s in the corner. Residues are given in
    /// the same order plus the corner's.
    pub fn anti_hook(
        k: &Composition,
        l: &Composition,
        modulus: u32,
        column_residues: &[u32],
        row_residues: &[u32],
        corner_residue: u32,
    ) -> Result<Self> {
        let (r, s) = (k.depth() as u32, l.depth() as u32);
        if r == 0 || s == 0 {
            return Err(Error::Domain("both compositions must be nonempty".into()));
        }
        let mut cells = Vec::new();
        for i in 0..r - 1 {
            let residue = column_residues.get(i as usize).copied().unwrap_or(0);
            cells.push(SchurCell { row: i + 1, col: s, exponent: k.parts()[i as usize], residue });
        }
        for j in 0..s - 1 {
            let residue = row_residues.get(j as usize).copied().unwrap_or(0);
            cells.push(SchurCell { row: r, col: j + 1, exponent: l.parts()[j as usize], residue });
        }
        cells.push(SchurCell {
            row: r,
            col: s,
            exponent: k.last().unwrap() + l.last().unwrap(),
            residue: corner_residue,
        });
        let d = SchurDiagramModN { modulus, cells };
        d.validate()?;
        Ok(d)
    }

    /// The modulus-1 anti-hook of ζ(k ⊛ l★).
    pub fn ky(k: &Composition, l: &Composition) -> Result<Self> {
        Self::anti_hook(k, l, 1, &[], &[], 0)
    }

    /// The modulus-2 anti-hook of a convoluted T- or S-value.
    pub fn conv(kind: ConvKind, k: &Composition, l: &Composition, case: ConvCase) -> Result<Self> {
        if ConvCase::of(k, l) != case {
            return Err(Error::Domain(format!("depths do not match case {case:?}")));
        }
        let (fk, fl, parity) = conv_shape(kind, case)?;
        let residues = |fam: HarmonicFamily, n: usize| -> Vec<u32> {
            let offset = if fam == HarmonicFamily::T { 0 } else { 1 };
            (1..=n).map(|j| ((j + offset) % 2) as u32).collect()
        };
        let corner = if parity == Parity::Odd { 1 } else { 0 };
        Self::anti_hook(
            k,
            l,
            2,
            &residues(fk, k.depth() - 1),
            &residues(fl, l.depth() - 1),
            corner,
        )
    }
}

struct Prepared {
    /// Cells in row-major order: (col, exponent, residue, has_left, has_up, has_down, has_right).
    cells: Vec<(usize, u32, u32, bool, bool, bool, bool)>,
    width: usize,
}

fn prepare(d: &SchurDiagramModN) -> Prepared {
    let mut cells = d.cells.clone();
    cells.sort_by_key(|c| (c.row, c.col));
    let min_col = cells.iter().map(|c| c.col).min().unwrap();
    let width = (cells.iter().map(|c| c.col).max().unwrap() - min_col + 1) as usize;
    let cells = cells
        .iter()
        .map(|c| {
            (
                (c.col - min_col) as usize,
                c.exponent,
                c.residue,
                d.has(c.row, c.col - 1),
                d.has(c.row - 1, c.col),
                d.has(c.row + 1, c.col),
                d.has(c.row, c.col + 1),
            )
        })
        .collect();
    Prepared { cells, width }
}

/// Dynamic program over cells in row-major order. The state is the set of
/// values later cells still need: the entry above each pending column and
/// the entry to the left. Weights are integers `(L/v)^s` with `L` the lcm of
/// 1..=bound, so no gcds are taken until the end.
struct SchurDp<'a> {
    p: &'a Prepared,
    bound: u32,
    modulus: u32,
    weights: Vec<Vec<Integer>>,
    memo: HashMap<(usize, u32, Vec<u32>), Integer>,
}

impl SchurDp<'_> {
    /// Sum over fillings of cells `idx..` given this cell's lower bound and
    /// the rest of the state.
    fn cell(&mut self, idx: usize, lo: u32, rest: Vec<u32>) -> Integer {
        if idx == self.p.cells.len() {
            return Integer::from(1);
        }
        let key = (idx, lo, rest);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let (col, _, residue, _, _, down, right) = self.p.cells[idx];
        let mut total = Integer::new();
        let mut v = lo;
        while v <= self.bound {
            if v % self.modulus == residue % self.modulus {
                let mut frontier = key.2.clone();
                if down {
                    frontier[col] = v;
                }
                let left = if right { v } else { 0 };
                let inner = self.next(idx + 1, frontier, left);
                if inner != 0 {
                    total += inner * &self.weights[idx][v as usize];
                }
            }
            v += 1;
        }
        self.memo.insert(key, total.clone());
        total
    }

    /// Consumes the state entries read by cell `idx` and recurses.
    fn next(&mut self, idx: usize, mut frontier: Vec<u32>, left: u32) -> Integer {
        if idx == self.p.cells.len() {
            return Integer::from(1);
        }
        let (col, _, _, has_left, has_up, _, _) = self.p.cells[idx];
        let mut lo = 1;
        if has_left {
            lo = lo.max(left);
        }
        if has_up {
            lo = lo.max(frontier[col] + 1);
            frontier[col] = 0;
        }
        self.cell(idx, lo, frontier)
    }
}

/// Σ over semistandard fillings with entries ≤ `bound` and the prescribed
/// residues of N^{#boxes} / Π m^s, as an exact rational. The factor N^{#boxes}
/// makes modulus 1 the plain Schur value and modulus 2 the level-two one.
pub fn schur_truncated(d: &SchurDiagramModN, bound: u32) -> Result<Rational> {
    d.validate()?;
    if bound == 0 || bound > MAX_ENTRY_BOUND {
        return Err(Error::Schema(format!("entry bound must lie in 1..={MAX_ENTRY_BOUND}")));
    }
    let p = prepare(d);
    let mut lcm = Integer::from(1);
    for v in 2..=bound {
        lcm.lcm_u_mut(v);
    }
    let weights = p
        .cells
        .iter()
        .map(|c| {
            (0..=bound)
                .map(|v| if v == 0 { Integer::new() } else { Integer::from(&lcm / v).pow(c.1) })
                .collect()
        })
        .collect();
    let total_exp: u32 = p.cells.iter().map(|c| c.1).sum();
    let mut dp = SchurDp { p: &p, bound, modulus: d.modulus, weights, memo: HashMap::new() };
    let num = dp.next(0, vec![0; p.width], 0);
    let den = lcm.pow(total_exp);
    let norm = Integer::from(d.modulus).pow(d.cells.len() as u32);
    Ok(Rational::from((num * norm, den)))
}

/// The path condition for convergence: along every allowable path, the last
/// ℓ boxes have exponent sum > ℓ for every ℓ.
pub fn allowable_path_check(d: &SchurDiagramModN) -> Result<bool> {
    d.validate()?;
    let n = d.cells.len();
    if n > MAX_PATH_CELLS {
        return Err(Error::Schema(format!("path check supports at most {MAX_PATH_CELLS} boxes")));
    }
    let index: HashMap<(u32, u32), usize> = d.cells.iter().enumerate().map(|(i, c)| ((c.row, c.col), i)).collect();
    // Boxes that must be covered before each box: the rest of its column
    // above it and of its row to its left.
    let prereq: Vec<u32> = d
        .cells
        .iter()
        .map(|c| {
            let mut m = 0u32;
            for (&(r, col), &i) in &index {
                if (col == c.col && r < c.row) || (r == c.row && col < c.col) {
                    m |= 1 << i;
                }
            }
            m
        })
        .collect();
    let precedes = |a: usize, b: usize| d.cells[a].row < d.cells[b].row || d.cells[a].col < d.cells[b].col;
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut memo: HashMap<(u32, usize), bool> = HashMap::new();
    let mut completable_masks: Vec<u32> = Vec::new();

    fn explore(
        mask: u32,
        last: usize,
        full: u32,
        prereq: &[u32],
        precedes: &dyn Fn(usize, usize) -> bool,
        memo: &mut HashMap<(u32, usize), bool>,
        good: &mut Vec<u32>,
    ) -> bool {
        if mask == full {
            return true;
        }
        if let Some(&v) = memo.get(&(mask, last)) {
            return v;
        }
        let mut ok = false;
        for c in 0..prereq.len() {
            if mask & (1 << c) == 0 && prereq[c] & !mask == 0 && precedes(last, c) {
                ok |= explore(mask | (1 << c), c, full, prereq, precedes, memo, good);
            }
        }
        memo.insert((mask, last), ok);
        if ok {
            good.push(mask);
        }
        ok
    }

    let mut any = false;
    for c in 0..n {
        if prereq[c] == 0 && explore(1 << c, c, full, &prereq, &precedes, &mut memo, &mut completable_masks) {
            any = true;
        }
    }
    if !any {
        return Ok(true);
    }
    completable_masks.push(0);
    for mask in completable_masks {
        let rest: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) == 0).collect();
        let sum: u32 = rest.iter().map(|&i| d.cells[i].exponent).sum();
        if sum as usize <= rest.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact partial sum of a convoluted value over outer indices ≤ `bound`.
pub fn conv_partial(kind: ConvKind, k: &Composition, l: &Composition, case: ConvCase, bound: u64) -> Result<Rational> {
    Ok(conv_series(kind, k, l, case)?.exact_prefix(bound)?.pop().unwrap())
}

pub fn ky_partial(k: &Composition, l: &Composition, bound: u64) -> Result<Rational> {
    Ok(ky_series(k, l)?.exact_prefix(bound)?.pop().unwrap())
}
