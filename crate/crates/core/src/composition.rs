//! Compositions (index tuples with optional signs) and the slicing helpers
//! every other module works with.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite sequence of positive integers, each carrying a sign.
///
/// A negative sign on entry `j` stands for a barred index (alternating
/// sums); an unsigned composition simply has every sign equal to `+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition {
    parts: Vec<u32>,
    signs: Vec<i8>,
}

/// Which convergence rule a composition is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Admissibility {
    /// k_r >= 2.
    Mzv,
    /// (k_r, eps_r) != (1, +1).
    Alternating,
    /// Level-two families (t, T, S, M): again k_r >= 2.
    LevelTwo,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let signs = vec![1; parts.len()];
        Self::with_signs(parts, signs)
    }

    pub fn with_signs(parts: Vec<u32>, signs: Vec<i8>) -> Result<Self> {
        if parts.len() != signs.len() {
            return Err(Error::Parse(format!(
                "{} parts but {} signs",
                parts.len(),
                signs.len()
            )));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Parse("composition parts must be positive".into()));
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Parse("signs must be +1 or -1".into()));
        }
        Ok(Composition { parts, signs })
    }

    /// Panicking constructor for literals in code and tests.
    pub fn from_slice(parts: &[u32]) -> Self {
        Self::new(parts.to_vec()).expect("valid composition literal")
    }

    pub fn signed(parts: &[u32], signs: &[i8]) -> Self {
        Self::with_signs(parts.to_vec(), signs.to_vec()).expect("valid signed composition")
    }

    pub fn empty() -> Self {
        Composition { parts: Vec::new(), signs: Vec::new() }
    }

    /// `{v}_r`: the value `v` repeated `r` times.
    pub fn repeat(v: u32, r: usize) -> Self {
        Self::new(vec![v; r]).expect("positive repeat")
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_signed(&self) -> bool {
        self.signs.iter().any(|&s| s < 0)
    }

    pub fn last(&self) -> Option<u32> {
        self.parts.last().copied()
    }

    /// Drops the signs (every entry becomes positive).
    pub fn unsigned(&self) -> Self {
        Composition { parts: self.parts.clone(), signs: vec![1; self.parts.len()] }
    }

    /// `k_i^j = (k_{i+1-j}, ..., k_i)`; empty when `j = 0` or `i < j`.
    pub fn slice_tail(&self, i: usize, j: usize) -> Result<Self> {
        if i > self.depth() {
            return Err(Error::Domain(format!(
                "slice index {i} exceeds depth {}",
                self.depth()
            )));
        }
        if j == 0 || i < j {
            return Ok(Self::empty());
        }
        Ok(self.range(i - j, i))
    }

    /// The first `i` entries, `k_i`.
    pub fn prefix(&self, i: usize) -> Self {
        self.range(0, i.min(self.depth()))
    }

    /// Entries with 0-based indices in `lo..hi`.
    pub fn range(&self, lo: usize, hi: usize) -> Self {
        Composition {
            parts: self.parts[lo..hi].to_vec(),
            signs: self.signs[lo..hi].to_vec(),
        }
    }

    /// Everything except the last entry.
    pub fn init(&self) -> Self {
        self.prefix(self.depth().saturating_sub(1))
    }

    /// Returns a copy whose last part is increased by `by`.
    pub fn bump_last(&self, by: u32) -> Self {
        let mut c = self.clone();
        if let Some(p) = c.parts.last_mut() {
            *p += by;
        }
        c
    }

    /// Returns a copy whose last part is replaced.
    pub fn with_last(&self, value: u32) -> Self {
        assert!(value >= 1);
        let mut c = self.clone();
        if let Some(p) = c.parts.last_mut() {
            *p = value;
        }
        c
    }

    pub fn push(&mut self, part: u32, sign: i8) {
        assert!(part >= 1 && (sign == 1 || sign == -1));
        self.parts.push(part);
        self.signs.push(sign);
    }

    pub fn pushed(&self, part: u32, sign: i8) -> Self {
        let mut c = self.clone();
        c.push(part, sign);
        c
    }

    pub fn prepended(&self, part: u32, sign: i8) -> Self {
        let mut c = Composition { parts: vec![part], signs: vec![sign] };
        c.parts.extend_from_slice(&self.parts);
        c.signs.extend_from_slice(&self.signs);
        c
    }

    pub fn concat(&self, other: &Composition) -> Self {
        let mut c = self.clone();
        c.parts.extend_from_slice(&other.parts);
        c.signs.extend_from_slice(&other.signs);
        c
    }

    pub fn reversed(&self) -> Self {
        let mut c = self.clone();
        c.parts.reverse();
        c.signs.reverse();
        c
    }

    pub fn is_admissible(&self, kind: Admissibility) -> bool {
        match (self.parts.last(), self.signs.last()) {
            (None, _) => true,
            (Some(&k), Some(&s)) => match kind {
                Admissibility::Mzv | Admissibility::LevelTwo => k >= 2,
                Admissibility::Alternating => !(k == 1 && s == 1),
            },
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (p, s)) in self.parts.iter().zip(&self.signs).enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if *s < 0 {
                f.write_str("-")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() || cleaned == "()" {
            return Ok(Self::empty());
        }
        let body = cleaned
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(&cleaned);
        let mut parts = Vec::new();
        let mut signs = Vec::new();
        for tok in body.split(',') {
            let (sign, digits) = match tok.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, tok),
            };
            let v: u32 = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad composition entry '{tok}' in '{s}'")))?;
            parts.push(v);
            signs.push(sign);
        }
        Self::with_signs(parts, signs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn weight_and_depth() {
        assert_eq!(Composition::from_slice(&[1, 2, 3]).weight(), 6);
        assert_eq!(Composition::empty().weight(), 0);
        assert_eq!(Composition::from_slice(&[2, 3, 1, 4]).weight(), 10);
        assert_eq!(Composition::from_slice(&[2, 3, 1, 4]).depth(), 4);
    }

    #[test]
    fn slices() {
        let k = Composition::from_slice(&[5, 6, 7, 8]);
        assert_eq!(k.slice_tail(3, 2).unwrap(), Composition::from_slice(&[6, 7]));
        assert_eq!(k.slice_tail(3, 0).unwrap(), Composition::empty());
        let k = Composition::from_slice(&[5, 6]);
        assert_eq!(k.slice_tail(1, 2).unwrap(), Composition::empty());
        assert!(k.slice_tail(3, 1).is_err());
    }

    #[test]
    fn admissibility() {
        let a: Composition = "1,2".parse().unwrap();
        assert!(a.is_admissible(Admissibility::Mzv));
        let b: Composition = "2,1".parse().unwrap();
        assert!(!b.is_admissible(Admissibility::Mzv));
        let c: Composition = "2,-1".parse().unwrap();
        assert!(c.is_admissible(Admissibility::Alternating));
        assert!(!b.is_admissible(Admissibility::Alternating));
    }

    #[test]
    fn parsing() {
        let k: Composition = " -2, 3 ,-1,4".parse().unwrap();
        assert_eq!(k.parts(), &[2, 3, 1, 4]);
        assert_eq!(k.signs(), &[-1, 1, -1, 1]);
        assert_eq!(k.to_string(), "-2,3,-1,4");
        assert!("1,,2".parse::<Composition>().is_err());
        assert!("0".parse::<Composition>().is_err());
        assert!("a".parse::<Composition>().is_err());
        assert_eq!("".parse::<Composition>().unwrap(), Composition::empty());
    }

    fn arb_comp() -> impl Strategy<Value = Composition> {
        prop::collection::vec((1u32..9, prop::bool::ANY), 0..7).prop_map(|v| {
            let parts = v.iter().map(|p| p.0).collect();
            let signs = v.iter().map(|p| if p.1 { -1 } else { 1 }).collect();
            Composition::with_signs(parts, signs).unwrap()
        })
    }

    proptest! {
        #[test]
        fn round_trip(k in arb_comp()) {
            let back: Composition = k.to_string().parse().unwrap();
            prop_assert_eq!(back, k);
        }

        #[test]
        fn full_slice_is_identity(k in arb_comp()) {
            prop_assert_eq!(k.slice_tail(k.depth(), k.depth()).unwrap(), k);
        }

        #[test]
        fn slice_weight_bound(k in arb_comp(), a in 0usize..8, b in 0usize..8) {
            let i = a.min(k.depth());
            let s = k.slice_tail(i, b).unwrap();
            prop_assert!(s.weight() <= k.weight());
            if s.weight() == k.weight() && k.weight() > 0 {
                prop_assert_eq!(s, k);
            }
        }
    }
}
