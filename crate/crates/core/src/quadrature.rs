//! Integration oracles on [0, 1].
//!
//! [`de_integrate`] is tanh-sinh quadrature for elementary integrands with
//! logarithmic endpoint singularities. The integrand receives both `x` and
//! `1 − x`, the latter computed without cancellation, so `log(1 − x)` stays
//! accurate next to the endpoint.
//!
//! [`termwise_integral`] exchanges the defining series of a polylogarithm
//! type function with the integral: every `x^m` becomes `1/(m + a + 1)`,
//! which is one more denominator factor at the root of the nested sum.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::nested::NestedSum;
use crate::real::ApproxReal;
use crate::series::{sum_series_cached, SeriesConfig};
use crate::values::{a_series, lambda_series, l_series, li_single_series, t_series};

pub const MAX_LEVEL: u32 = 12;

/// Abscissa `x`, its complement `1 − x` and the weight `dx/dt`.
type NodeTriple = (Float, Float, Float);

fn node_cache() -> &'static Mutex<HashMap<(u32, u32), Arc<Vec<NodeTriple>>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<Vec<NodeTriple>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Half-width of the t-range: beyond it `1 − x` drops below `2^{-prec-40}`.
fn t_max(prec: u32) -> f64 {
    let target = (prec as f64 + 40.0) * std::f64::consts::LN_2 / std::f64::consts::PI;
    target.asinh() + 0.25
}

/// Nodes first used at `level`: every `t = k h` at level 0, odd `k` above.
fn nodes(prec: u32, level: u32) -> Arc<Vec<NodeTriple>> {
    if let Some(v) = node_cache().lock().unwrap().get(&(prec, level)) {
        return v.clone();
    }
    let h = Float::with_val(prec, 0.5f64.powi(level as i32));
    let kmax = (t_max(prec) * 2f64.powi(level as i32)).ceil() as i64;
    let pi = Float::with_val(prec, Constant::Pi);
    let mut out = Vec::new();
    for k in -kmax..=kmax {
        if level > 0 && k % 2 == 0 {
            continue;
        }
        let t = Float::with_val(prec, &h * k);
        // u = (π/2) sinh t, v = e^{-2|u|}.
        let u = Float::with_val(prec, t.clone().sinh() * &pi) / 2u32;
        let v = Float::with_val(prec, -2 * u.clone().abs()).exp();
        let one_v = Float::with_val(prec, 1 + &v);
        let small = Float::with_val(prec, &v / &one_v);
        let big = Float::with_val(prec, 1 / one_v.clone());
        let w = Float::with_val(prec, &pi * t.cosh()) * &v / one_v.square();
        if small.is_zero() {
            continue;
        }
        let (x, omx) = if k < 0 { (small, big) } else { (big, small) };
        out.push((x, omx, w));
    }
    let out = Arc::new(out);
    node_cache().lock().unwrap().insert((prec, level), out.clone());
    out
}

/// Tanh-sinh quadrature of `f(x, 1 − x)` over [0, 1]. The step is halved
/// until two successive estimates differ by less than `tol`; the last
/// difference is the error radius.
pub fn de_integrate<F>(f: F, tol: f64, bits: u32) -> Result<ApproxReal>
where
    F: Fn(&Float, &Float) -> Float,
{
    let prec = bits + 32;
    let mut sum = Float::new(prec);
    let mut prev: Option<Float> = None;
    for level in 0..=MAX_LEVEL {
        for (x, omx, w) in nodes(prec, level).iter() {
            let fx = f(x, omx);
            if !fx.is_finite() {
                return Err(Error::Domain("integrand not finite inside (0, 1)".into()));
            }
            sum += Float::with_val(prec, fx * w);
        }
        let est = Float::with_val(prec, &sum) / Float::with_val(prec, 2u32).pow(level);
        if let Some(p) = prev {
            let diff = Float::with_val(prec, &est - &p).abs().to_f64();
            if level >= 4 && diff < tol {
                return Ok(ApproxReal::new(Float::with_val(bits, &est), diff));
            }
        }
        prev = Some(est);
    }
    Err(Error::Precision(format!("tanh-sinh did not reach {tol:e} by level {MAX_LEVEL}")))
}

/// Integrand families for the term-wise oracle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Termwise {
    /// Li_k(x).
    Li(Composition),
    /// A(k; x).
    A(Composition),
    /// L(k; x) = 2^{-|k|} Li_k(x²).
    L(Composition),
    /// t(k; x), with t(∅; x) = 1/x.
    T(Composition),
    /// λ_k(σ_1 x, ..., σ_r x).
    Lambda(Composition, Vec<i8>),
}

impl Termwise {
    pub fn composition(&self) -> &Composition {
        match self {
            Termwise::Li(k) | Termwise::A(k) | Termwise::L(k) | Termwise::T(k) | Termwise::Lambda(k, _) => k,
        }
    }
}

/// The nested sum for `∫_0^1 x^a f(x) dx`, or the exact value when `f` is
/// a monomial.
pub fn termwise_series(f: &Termwise, a: i64) -> Result<std::result::Result<NestedSum, Rational>> {
    let k = f.composition();
    if k.is_signed() {
        return Err(Error::Domain("pass signs through the λ sign vector".into()));
    }
    let r = k.depth() as i64;
    // f(x) is x^e for empty k.
    if r == 0 {
        let e = if matches!(f, Termwise::T(_)) { -1 } else { 0 };
        if a + e + 1 <= 0 {
            return Err(Error::Divergent(format!("∫ x^{} diverges at 0", a + e)));
        }
        return Ok(Err(Rational::from((1, a + e + 1))));
    }
    // Smallest root index of the series and the root factor (step, offset).
    let (sum, min_root, step) = match f {
        Termwise::Li(k) => (li_single_series(k, 1.0)?, r, 1),
        Termwise::A(k) => (a_series(k, 1.0)?, r, 1),
        Termwise::L(k) => (l_series(k, 1.0)?, r, 2),
        Termwise::T(k) => (t_series(k, 1.0)?, 2 * r - 1, 1),
        Termwise::Lambda(k, sigma) => (lambda_series(k, sigma, 1.0)?, r, 1),
    };
    if step * min_root + a + 1 <= 0 {
        return Err(Error::Divergent(format!("∫ x^{a} f(x) diverges at 0")));
    }
    let mut sum = sum;
    let root = sum.root.as_mut().unwrap();
    // Below `min_root` the inner sums vanish, but with a < 0 the new factor
    // can be zero there too.
    let start = root.level.min_index.max(min_root as u64);
    root.level = root.level.clone().affine(step, a + 1, 1).min_index(start);
    Ok(Ok(sum))
}

/// `∫_0^1 x^a f(x) dx` by exchanging sum and integral.
pub fn termwise_integral(f: &Termwise, a: i64, cfg: &SeriesConfig) -> Result<ApproxReal> {
    match termwise_series(f, a)? {
        Ok(sum) => sum_series_cached(&sum, cfg),
        Err(q) => Ok(ApproxReal::from_rational(cfg.bits, &q)),
    }
}
