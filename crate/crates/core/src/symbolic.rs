//! Rational linear combinations of named values.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use rug::Rational;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::real::{sum_all, ApproxReal};
use crate::series::SeriesConfig;
use crate::values::ValueDescriptor;

/// `Σ q_i · v_i` with rational `q_i`. The empty ζ(∅) stands for the
/// constant 1. Terms are kept as emitted; no basis reduction is attempted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RationalCombo {
    terms: BTreeMap<ValueDescriptor, Rational>,
}

impl RationalCombo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(v: ValueDescriptor, q: Rational) -> Self {
        let mut c = Self::new();
        c.add_term(v, q);
        c
    }

    pub fn add_term(&mut self, v: ValueDescriptor, q: Rational) {
        let e = self.terms.entry(v.clone()).or_insert_with(Rational::new);
        *e += q;
        // Cancelled terms are dropped so equal combos compare equal.
        if *e == 0 {
            self.terms.remove(&v);
        }
    }

    pub fn add_scaled(&mut self, other: &RationalCombo, q: &Rational) {
        for (v, c) in &other.terms {
            self.add_term(v.clone(), Rational::from(c * q));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ValueDescriptor, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, cfg: &SeriesConfig) -> Result<ApproxReal> {
        let parts: Vec<ApproxReal> = self
            .terms
            .par_iter()
            .map(|(v, q)| v.eval(cfg).map(|x| x.scale_rational(q)))
            .collect::<Result<_>>()?;
        Ok(sum_all(cfg.bits, &parts))
    }
}

impl fmt::Display for RationalCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (v, q)) in self.terms.iter().enumerate() {
            let neg = *q < 0;
            let mag = Rational::from(q.abs_ref());
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let constant = v.k.is_empty();
            if constant {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{mag}*{v}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for RationalCombo {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            coefficient: String,
            value: String,
        }
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (v, q) in &self.terms {
            seq.serialize_element(&Term { coefficient: q.to_string(), value: v.to_string() })?;
        }
        seq.end()
    }
}

/// Polynomial in log 2 and ζ(2), ζ(3), ... with rational coefficients.
/// A monomial is its exponent vector: slot 0 is log 2, slot i is ζ(i + 1).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstPoly {
    terms: BTreeMap<Vec<u32>, Rational>,
}

fn trim(mut m: Vec<u32>) -> Vec<u32> {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

impl ConstPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(q: Rational) -> Self {
        let mut p = Self::zero();
        p.add_monomial(Vec::new(), q);
        p
    }

    pub fn log2() -> Self {
        let mut p = Self::zero();
        p.add_monomial(vec![1], Rational::from(1));
        p
    }

    /// ζ(s) for s ≥ 2.
    pub fn zeta(s: usize) -> Self {
        assert!(s >= 2, "ζ(1) is not a constant");
        let mut m = vec![0; s];
        m[s - 1] = 1;
        let mut p = Self::zero();
        p.add_monomial(m, Rational::from(1));
        p
    }

    fn add_monomial(&mut self, m: Vec<u32>, q: Rational) {
        let m = trim(m);
        let e = self.terms.entry(m.clone()).or_insert_with(Rational::new);
        *e += q;
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &ConstPoly) -> ConstPoly {
        let mut out = self.clone();
        for (m, q) in &other.terms {
            out.add_monomial(m.clone(), q.clone());
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> ConstPoly {
        let mut out = ConstPoly::zero();
        for (m, c) in &self.terms {
            out.add_monomial(m.clone(), Rational::from(c * q));
        }
        out
    }

    pub fn mul(&self, other: &ConstPoly) -> ConstPoly {
        let mut out = ConstPoly::zero();
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                let n = a.len().max(b.len());
                let m = (0..n).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect();
                out.add_monomial(m, Rational::from(p * q));
            }
        }
        out
    }

    pub fn eval(&self, bits: u32) -> ApproxReal {
        let mut acc = ApproxReal::zero(bits);
        for (m, q) in &self.terms {
            let mut t = ApproxReal::from_rational(bits, q);
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = if i == 0 { ApproxReal::log2(bits) } else { ApproxReal::riemann_zeta(bits, i as u32 + 1) };
                t = &t * &base.pow(e);
            }
            acc = &acc + &t;
        }
        acc
    }
}

impl fmt::Display for ConstPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, q)) in self.terms.iter().enumerate() {
            let neg = *q < 0;
            let mag = Rational::from(q.abs_ref());
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            for (s, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = if s == 0 { "log(2)".to_string() } else { format!("ζ({})", s + 1) };
                factors.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::Composition;

    #[test]
    fn cancellation_and_display() {
        let z2 = ValueDescriptor::zeta(Composition::from_slice(&[2]));
        let z3 = ValueDescriptor::zeta(Composition::from_slice(&[3]));
        let mut c = RationalCombo::single(z2.clone(), Rational::from(2));
        c.add_term(z3.clone(), Rational::from((-1, 2)));
        assert_eq!(c.to_string(), "2*ζ(2) - 1/2*ζ(3)");
        c.add_term(z2, Rational::from(-2));
        assert_eq!(c, RationalCombo::single(z3, Rational::from((-1, 2))));
    }

    #[test]
    fn eval_matches_terms() {
        let cfg = SeriesConfig::default();
        let mut c = RationalCombo::new();
        c.add_term(ValueDescriptor::zeta(Composition::empty()), Rational::from(3));
        c.add_term(ValueDescriptor::zeta(Composition::from_slice(&[2])), Rational::from(6));
        let v = c.eval(&cfg).unwrap().to_f64();
        let pi = std::f64::consts::PI;
        assert!((v - (3.0 + pi * pi)).abs() < 1e-12);
    }

    #[test]
    fn const_poly_arithmetic() {
        let l = ConstPoly::log2();
        let p = l.mul(&l).scale(&Rational::from((-1, 2))).add(&ConstPoly::zeta(2).scale(&Rational::from((1, 4))));
        assert_eq!(p.to_string(), "1/4*ζ(2) - 1/2*log(2)^2");
        let ln2 = 2f64.ln();
        let want = std::f64::consts::PI.powi(2) / 24.0 - ln2 * ln2 / 2.0;
        assert!((p.eval(128).to_f64() - want).abs() < 1e-15);
        assert_eq!(p.add(&p.scale(&Rational::from(-1))), ConstPoly::zero());
    }
}
