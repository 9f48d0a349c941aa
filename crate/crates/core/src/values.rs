//! Named special values and the one-variable functions built on the same
//! chains: ζ, ζ★ (alternating allowed), t, t★, T, S, mixed values M(k;ε),
//! ζ̄(m), Li_k(x), λ_k(σx), A(k;x), L(k;x) and t(k;x).

use std::fmt;

use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::composition::{Admissibility, Composition};
use crate::error::{Error, Result};
use crate::harmonic::{chain_sum, real_base, HarmonicFamily};
use crate::nested::{Base, Level, Link, NestedSum, Node};
use crate::real::{pow2, ApproxReal};
use crate::series::{sum_series_cached, SeriesConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Zeta,
    ZetaStar,
    SmallT,
    SmallTStar,
    T,
    S,
    Mixed,
}

impl Family {
    pub fn harmonic(self) -> HarmonicFamily {
        match self {
            Family::Zeta => HarmonicFamily::Zeta,
            Family::ZetaStar => HarmonicFamily::ZetaStar,
            Family::SmallT => HarmonicFamily::SmallT,
            Family::SmallTStar => HarmonicFamily::SmallTStar,
            Family::T => HarmonicFamily::T,
            Family::S => HarmonicFamily::S,
            Family::Mixed => HarmonicFamily::Mixed,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "zeta" | "z" => Family::Zeta,
            "zeta_star" | "zeta*" | "zs" => Family::ZetaStar,
            "t" => Family::SmallT,
            "t_star" | "t*" => Family::SmallTStar,
            "T" => Family::T,
            "S" => Family::S,
            "M" => Family::Mixed,
            other => return Err(Error::Parse(format!("unknown value family '{other}'"))),
        })
    }

    fn symbol(self) -> &'static str {
        match self {
            Family::Zeta => "ζ",
            Family::ZetaStar => "ζ★",
            Family::SmallT => "t",
            Family::SmallTStar => "t★",
            Family::T => "T",
            Family::S => "S",
            Family::Mixed => "M",
        }
    }
}

/// A named value: family plus composition (signs mark barred entries for
/// ζ/ζ★ and odd-parity entries for M).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ValueDescriptor {
    pub family: Family,
    pub k: Composition,
}

impl ValueDescriptor {
    pub fn new(family: Family, k: Composition) -> Self {
        ValueDescriptor { family, k }
    }

    pub fn zeta(k: Composition) -> Self {
        Self::new(Family::Zeta, k)
    }

    pub fn series(&self) -> Result<NestedSum> {
        check_admissible(self.family, &self.k)?;
        chain_sum(self.family.harmonic(), &self.k)
    }

    pub fn eval(&self, cfg: &SeriesConfig) -> Result<ApproxReal> {
        if self.k.is_empty() {
            return Ok(ApproxReal::from_int(cfg.bits, 1));
        }
        sum_series_cached(&self.series()?, cfg)
    }
}

impl fmt::Display for ValueDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family.symbol(), self.k)
    }
}

fn check_admissible(family: Family, k: &Composition) -> Result<()> {
    let ok = match family {
        Family::Zeta | Family::ZetaStar => k.is_admissible(Admissibility::Alternating),
        Family::Mixed => k.last().map_or(true, |v| v >= 2),
        _ => {
            if k.is_signed() {
                return Err(Error::Domain(format!("family {family:?} takes no signs")));
            }
            k.is_admissible(Admissibility::LevelTwo)
        }
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Divergent(format!("{} is not admissible", ValueDescriptor::new(family, k.clone()))))
    }
}

pub fn zeta(k: &Composition, cfg: &SeriesConfig) -> Result<ApproxReal> {
    ValueDescriptor::new(Family::Zeta, k.clone()).eval(cfg)
}

pub fn zeta_star(k: &Composition, cfg: &SeriesConfig) -> Result<ApproxReal> {
    ValueDescriptor::new(Family::ZetaStar, k.clone()).eval(cfg)
}

pub fn t_value(k: &Composition, cfg: &SeriesConfig) -> Result<ApproxReal> {
    ValueDescriptor::new(Family::SmallT, k.clone()).eval(cfg)
}

pub fn t_star_value(k: &Composition, cfg: &SeriesConfig) -> Result<ApproxReal> {
    ValueDescriptor::new(Family::SmallTStar, k.clone()).eval(cfg)
}

pub fn big_t_value(k: &Composition, cfg: &SeriesConfig) -> Result<ApproxReal> {
    ValueDescriptor::new(Family::T, k.clone()).eval(cfg)
}

pub fn big_s_value(k: &Composition, cfg: &SeriesConfig) -> Result<ApproxReal> {
    ValueDescriptor::new(Family::S, k.clone()).eval(cfg)
}

/// M(k; ε): entry j runs over even integers when ε_j = +1 and odd ones
/// when ε_j = −1 (the sign slot of the composition carries ε).
pub fn m_value(k: &Composition, cfg: &SeriesConfig) -> Result<ApproxReal> {
    ValueDescriptor::new(Family::Mixed, k.clone()).eval(cfg)
}

/// ζ̄(m) = −ζ(m̄): 1/2 at m = 0, log 2 at m = 1, (1 − 2^{1−m}) ζ(m) above.
pub fn bar_zeta(m: u32, bits: u32) -> ApproxReal {
    match m {
        0 => ApproxReal::from_rational(bits, &Rational::from((1, 2))),
        1 => ApproxReal::log2(bits),
        _ => {
            let f = Rational::from(1) - pow2(1 - m as i32);
            ApproxReal::riemann_zeta(bits, m).scale_rational(&f)
        }
    }
}

fn check_x(x: f64) -> Result<()> {
    if !x.is_finite() || x.abs() > 1.0 {
        return Err(Error::Domain(format!("argument {x} outside [-1, 1]")));
    }
    Ok(())
}

fn with_root_base(mut sum: NestedSum, b: Base) -> NestedSum {
    if let Some(root) = sum.root.as_mut() {
        root.level.base = root.level.base.times(b);
    }
    sum
}

/// Li_k(x) = Σ_{0<n_1<...<n_r} x^{n_r} / (n_1^{k_1} ... n_r^{k_r}).
pub fn li_single_series(k: &Composition, x: f64) -> Result<NestedSum> {
    check_x(x)?;
    if k.is_signed() {
        return Err(Error::Domain("Li_k(x) takes an unsigned composition".into()));
    }
    Ok(with_root_base(chain_sum(HarmonicFamily::Zeta, k)?, real_base(x)))
}

pub fn li_single(k: &Composition, x: f64, cfg: &SeriesConfig) -> Result<ApproxReal> {
    sum_series_cached(&li_single_series(k, x)?, cfg)
}

/// Li_k(x_1, ..., x_r) = Σ Π x_j^{n_j} / n_j^{k_j} (strict) or its star
/// version (weak inequalities).
pub fn li_multi_series(k: &Composition, xs: &[f64], star: bool) -> Result<NestedSum> {
    if xs.len() != k.depth() {
        return Err(Error::Domain(format!("{} arguments for depth {}", xs.len(), k.depth())));
    }
    for &x in xs {
        check_x(x)?;
    }
    let levels = k.parts().iter().zip(xs).map(|(&kj, &x)| Level::new(kj).base(real_base(x))).collect();
    let link = if star { Link::Weak } else { Link::Strict };
    Ok(NestedSum {
        root: Node::chain(levels, vec![link; k.depth().saturating_sub(1)]),
        scale: Rational::from(1),
    })
}

pub fn li_multi(k: &Composition, xs: &[f64], star: bool, cfg: &SeriesConfig) -> Result<ApproxReal> {
    sum_series_cached(&li_multi_series(k, xs, star)?, cfg)
}

/// Arguments of Li for λ_k(σ_1 x, ..., σ_r x): consecutive ratios
/// σ_j σ_{j+1} and the last argument σ_r x.
pub fn lambda_arguments(sigma: &[i8], x: f64) -> Vec<f64> {
    let r = sigma.len();
    (0..r)
        .map(|j| if j + 1 < r { (sigma[j] * sigma[j + 1]) as f64 } else { sigma[j] as f64 * x })
        .collect()
}

pub fn lambda_series(k: &Composition, sigma: &[i8], x: f64) -> Result<NestedSum> {
    if sigma.len() != k.depth() {
        return Err(Error::Domain("one sign per entry required".into()));
    }
    li_multi_series(k, &lambda_arguments(sigma, x), false)
}

/// λ_k(σ_1 x, ..., σ_r x).
pub fn lambda_multi(k: &Composition, sigma: &[i8], x: f64, cfg: &SeriesConfig) -> Result<ApproxReal> {
    sum_series_cached(&lambda_series(k, sigma, x)?, cfg)
}

/// A(k; x) = 2^r Σ_{n_1<...<n_r, n_i ≡ i mod 2} x^{n_r} / Π n_i^{k_i}.
pub fn a_series(k: &Composition, x: f64) -> Result<NestedSum> {
    check_x(x)?;
    Ok(with_root_base(chain_sum(HarmonicFamily::T, k)?, real_base(x)))
}

pub fn a_function(k: &Composition, x: f64, cfg: &SeriesConfig) -> Result<ApproxReal> {
    if k.is_empty() {
        return Ok(ApproxReal::from_int(cfg.bits, 1));
    }
    sum_series_cached(&a_series(k, x)?, cfg)
}

/// L(k; x) = 2^{-|k|} Li_k(x^2).
pub fn l_series(k: &Composition, x: f64) -> Result<NestedSum> {
    check_x(x)?;
    Ok(li_single_series(k, x * x)?.scaled(pow2(-(k.weight() as i32))))
}

pub fn l_function(k: &Composition, x: f64, cfg: &SeriesConfig) -> Result<ApproxReal> {
    sum_series_cached(&l_series(k, x)?, cfg)
}

/// t(k; x) = Σ t_{n-1}(k_1..k_{r-1}) x^{2n-1} / (2n-1)^{k_r}; t(∅; x) = 1/x.
pub fn t_series(k: &Composition, x: f64) -> Result<NestedSum> {
    check_x(x)?;
    if k.is_empty() {
        return Err(Error::Domain("t(∅; x) = 1/x is not a series".into()));
    }
    Ok(with_root_base(chain_sum(HarmonicFamily::SmallT, k)?, real_base(x)))
}

pub fn t_function(k: &Composition, x: f64, cfg: &SeriesConfig) -> Result<ApproxReal> {
    if k.is_empty() {
        if x == 0.0 {
            return Err(Error::Domain("t(∅; 0) undefined".into()));
        }
        return Ok(ApproxReal::from_f64(cfg.bits, x).recip());
    }
    sum_series_cached(&t_series(k, x)?, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;
    use rug::Float;

    fn cfg() -> SeriesConfig {
        SeriesConfig::default()
    }

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn pi2() -> ApproxReal {
        let p = ApproxReal::pi(128);
        &p * &p
    }

    fn close(a: &ApproxReal, b: &ApproxReal, tol: f64) {
        let d = a.distance(b);
        assert!(d <= tol + a.radius + b.radius, "{a} vs {b}: diff {d:e}");
    }

    fn q(a: i64, b: i64) -> Rational {
        Rational::from((a, b))
    }

    #[test]
    fn zeta_examples() {
        let z3 = ApproxReal::riemann_zeta(128, 3);
        close(&zeta(&c("1,2"), &cfg()).unwrap(), &z3, 1e-30);
        close(&zeta(&c("-2"), &cfg()).unwrap(), &pi2().scale_rational(&q(-1, 12)), 1e-30);
        let zs22 = zeta_star(&c("2,2"), &cfg()).unwrap();
        let rhs = &zeta(&c("2,2"), &cfg()).unwrap() + &ApproxReal::riemann_zeta(128, 4);
        close(&zs22, &rhs, 1e-30);
        assert!(matches!(zeta(&c("2,1"), &cfg()), Err(Error::Divergent(_))));
        assert!(zeta(&c("2,-1"), &cfg()).is_ok());
    }

    #[test]
    fn level_two_examples() {
        close(&t_value(&c("2"), &cfg()).unwrap(), &pi2().scale_rational(&q(1, 8)), 1e-30);
        close(&big_t_value(&c("2"), &cfg()).unwrap(), &pi2().scale_rational(&q(1, 4)), 1e-30);
        // M(1,2,3̌) against the expanded triple sum 8 Σ 1/((2l)(2m)^2(2n-1)^3).
        let m = m_value(&c("1,2,-3"), &cfg()).unwrap();
        let levels = vec![
            Level::new(1).parity(crate::nested::Parity::Even),
            Level::new(2).parity(crate::nested::Parity::Even),
            Level::new(3).parity(crate::nested::Parity::Odd),
        ];
        let direct = NestedSum::new(Node::chain(levels, vec![Link::Strict; 2]).unwrap()).scaled(8);
        let direct = crate::series::sum_series(&direct, &cfg()).unwrap();
        close(&m, &direct, 1e-8);
    }

    #[test]
    fn polylog_examples() {
        let log2 = ApproxReal::log2(128);
        close(&li_single(&c("1"), 0.5, &cfg()).unwrap(), &log2, 1e-30);
        close(&li_single(&c("2"), 1.0, &cfg()).unwrap(), &ApproxReal::riemann_zeta(128, 2), 1e-30);
        // Li_{1,2}(1/2) by a plain double loop.
        let mut direct = 0f64;
        for n in 2..200 {
            let mut inner = 0f64;
            for m in 1..n {
                inner += 1.0 / m as f64;
            }
            direct += inner * 0.5f64.powi(n) / (n * n) as f64;
        }
        let v = li_single(&c("1,2"), 0.5, &cfg()).unwrap();
        assert!((v.to_f64() - direct).abs() < 1e-10);
    }

    #[test]
    fn lambda_examples() {
        let v = lambda_multi(&c("2"), &[-1], 1.0, &cfg()).unwrap();
        close(&v, &li_single(&c("2"), -1.0, &cfg()).unwrap(), 1e-30);
        let v = lambda_multi(&c("1,2"), &[1, 1], 1.0, &cfg()).unwrap();
        close(&v, &ApproxReal::riemann_zeta(128, 3), 1e-25);
        // λ_{1,2}(−1, 1) = Σ_{n1<n2} (−1)^{n1} / (n1 n2^2) = ζ(1̄, 2).
        let v = lambda_multi(&c("1,2"), &[-1, 1], 1.0, &cfg()).unwrap();
        close(&v, &zeta(&c("-1,2"), &cfg()).unwrap(), 1e-25);
    }

    #[test]
    fn function_examples() {
        let three = ApproxReal::from_int(128, 3);
        let log3 = three.ln();
        close(&a_function(&c("1"), 0.5, &cfg()).unwrap(), &log3, 1e-30);
        close(&a_function(&c("2"), 1.0, &cfg()).unwrap(), &pi2().scale_rational(&q(1, 4)), 1e-30);
        let half_log3_sq = (&log3 * &log3).scale_rational(&q(1, 2));
        close(&a_function(&c("1,1"), 0.5, &cfg()).unwrap(), &half_log3_sq, 1e-30);
        let l = l_function(&c("1"), 0.5, &cfg()).unwrap();
        let expect = ApproxReal::from_rational(128, &q(3, 4)).ln().scale_rational(&q(-1, 2));
        close(&l, &expect, 1e-30);
        close(&t_function(&c("2"), 1.0, &cfg()).unwrap(), &pi2().scale_rational(&q(1, 8)), 1e-30);
        close(&t_function(&Composition::empty(), 0.5, &cfg()).unwrap(), &ApproxReal::from_int(128, 2), 1e-30);
    }

    #[test]
    fn bar_zeta_examples() {
        assert_eq!(bar_zeta(0, 128).value, Float::with_val(128, 0.5));
        assert_eq!(bar_zeta(1, 128).value, Float::with_val(128, Constant::Log2));
        let z = zeta(&c("-2"), &cfg()).unwrap();
        close(&bar_zeta(2, 128), &-&z, 1e-30);
        close(&bar_zeta(2, 128), &ApproxReal::riemann_zeta(128, 2).scale_rational(&q(1, 2)), 1e-30);
    }

    #[test]
    fn stuffle_and_duality() {
        for a in 2..=4u32 {
            for b in 2..=4u32 {
                let lhs = &ApproxReal::riemann_zeta(128, a) * &ApproxReal::riemann_zeta(128, b);
                let rhs = &(&zeta(&Composition::from_slice(&[a, b]), &cfg()).unwrap()
                    + &zeta(&Composition::from_slice(&[b, a]), &cfg()).unwrap())
                    + &ApproxReal::riemann_zeta(128, a + b);
                close(&lhs, &rhs, 1e-6);
            }
        }
        close(&zeta(&c("1,1,2"), &cfg()).unwrap(), &ApproxReal::riemann_zeta(128, 4), 1e-6);
    }

    #[test]
    fn boundary_values() {
        for s in ["2", "1,2", "2,3", "1,1,2", "3,1,2"] {
            let k = c(s);
            close(&a_function(&k, 1.0, &cfg()).unwrap(), &big_t_value(&k, &cfg()).unwrap(), 1e-6);
            let l = l_function(&k, 1.0, &cfg()).unwrap();
            let z = zeta(&k, &cfg()).unwrap().scale_rational(&pow2(-(k.weight() as i32)));
            close(&l, &z, 1e-6);
        }
    }
}
