//! Evaluation of infinite nested sums.
//!
//! Partial sums are recorded at a geometric ladder of even cut-offs `M`
//! (even cut-offs remove the period-two oscillation of alternating and
//! parity-filtered sums). The limit is then fitted under the asymptotic
//! model
//!
//! ```text
//!   C(M) = S + sum_{q=1..Q} sum_{p=0..P} c_{q,p} log^p(M) / M^q
//! ```
//!
//! where `P` counts the inner levels able to produce a logarithm. Two fits
//! on ladders shifted by one octave give the value and its error radius.
//! Geometric series (`|x| < 1` at the root) are summed until the terms drop
//! below the working precision instead.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rug::ops::Pow;
use rug::{Assign, Float};

use crate::error::{Error, Result};
use crate::nested::{Base, NestedSum, Node};
use crate::real::{ApproxReal, DEFAULT_BITS};

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesConfig {
    pub bits: u32,
    /// Largest cut-off of the first attempt.
    pub terms: u64,
    /// Hard cap for automatic escalation.
    pub max_terms: u64,
    /// Escalate while the error radius exceeds this.
    pub tol: f64,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig { bits: DEFAULT_BITS, terms: 1 << 14, max_terms: 1 << 20, tol: 1e-12 }
    }
}

/// Shape of the tail expansion used by [`tail_correct`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TailModel {
    /// Lowest power of `1/N` in the expansion.
    pub first_order: u32,
    /// Highest power of `log N` per order.
    pub log_power: u32,
}

impl TailModel {
    pub fn new(first_order: u32, log_power: u32) -> Self {
        TailModel { first_order, log_power }
    }

    /// Basis exponents `(q, p)` in order of decreasing size at large N.
    fn basis(&self, count: usize) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(count);
        let mut q = self.first_order;
        while out.len() < count {
            for p in (0..=self.log_power).rev() {
                if out.len() < count {
                    out.push((q, p));
                }
            }
            q += 1;
        }
        out
    }
}

/// Least-squares-free fit: exactly as many basis functions as points allow.
/// Returns the fitted limit.
fn fit_limit(points: &[(u64, Float)], model: &TailModel, nbasis: usize, wp: u32) -> Option<Float> {
    let n = nbasis + 1;
    assert!(points.len() >= n);
    let pts = &points[points.len() - n..];
    let basis = model.basis(nbasis);
    let m_ref = pts.iter().map(|p| p.0).min().unwrap();
    let lref = Float::with_val(wp, m_ref).ln();
    let mut a: Vec<Vec<Float>> = Vec::with_capacity(n);
    for (m, s) in pts {
        let mf = Float::with_val(wp, *m);
        let u = Float::with_val(wp, m_ref) / &mf;
        let l = Float::with_val(wp, mf.ln_ref()) - &lref;
        let mut row = vec![Float::with_val(wp, 1)];
        for &(q, p) in &basis {
            let mut v = Float::with_val(wp, (&u).pow(q - model.first_order + 1));
            if p > 0 {
                v *= Float::with_val(wp, (&l).pow(p));
            }
            row.push(v);
        }
        row.push(Float::with_val(wp, s));
        a.push(row);
    }
    gauss_first_unknown(a)
}

/// Gaussian elimination with partial pivoting on an augmented matrix;
/// returns the first unknown.
fn gauss_first_unknown(mut a: Vec<Vec<Float>>) -> Option<Float> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| {
            a[i][col].clone().abs().partial_cmp(&a[j][col].clone().abs()).unwrap()
        })?;
        if a[piv][col].is_zero() {
            return None;
        }
        a.swap(col, piv);
        for r in col + 1..n {
            let f = Float::with_val(a[r][col].prec(), &a[r][col] / &a[col][col]);
            if f.is_zero() {
                continue;
            }
            for c in col..=n {
                let t = Float::with_val(f.prec(), &f * &a[col][c]);
                a[r][c] -= t;
            }
        }
    }
    let mut x = vec![Float::new(a[0][0].prec()); n];
    for r in (0..n).rev() {
        let mut acc = a[r][n].clone();
        for c in r + 1..n {
            acc -= Float::with_val(acc.prec(), &a[r][c] * &x[c]);
        }
        x[r] = acc / &a[r][r];
    }
    Some(x.swap_remove(0))
}

/// Extrapolates a limit from partial sums `(N, S_N)` (ascending N).
///
/// The finest fit uses every point; the coarser one drops the last point
/// and one basis function. The radius is their difference. If the fit is
/// no better than the raw partial sums the last partial sum is returned
/// with a widened radius.
pub fn tail_correct(partials: &[(u64, Float)], model: &TailModel) -> Result<ApproxReal> {
    if partials.len() < 3 {
        return Err(Error::Precision("tail correction needs at least three partial sums".into()));
    }
    let prec = partials[0].1.prec();
    let last = &partials[partials.len() - 1].1;
    if partials.iter().all(|p| p.1 == *last) {
        return Ok(ApproxReal::exact(last.clone()));
    }
    let wp = 2 * prec + 64;
    let nb = partials.len() - 1;
    let fine = fit_limit(partials, model, nb, wp);
    let coarse = fit_limit(&partials[..partials.len() - 1], model, nb - 1, wp);
    let raw = Float::with_val(prec, last - &partials[partials.len() - 2].1).abs().to_f64();
    Ok(pick(fine, coarse, last, raw, prec))
}

fn pick(fine: Option<Float>, coarse: Option<Float>, last: &Float, raw: f64, prec: u32) -> ApproxReal {
    if let (Some(f), Some(c)) = (fine, coarse) {
        // The difference of the two fits underestimates occasionally when
        // rounding noise dominates; pad it.
        let r = 4.0 * Float::with_val(prec, &f - &c).abs().to_f64();
        if r.is_finite() && r <= raw.max(f64::MIN_POSITIVE) {
            let v = Float::with_val(prec, &f);
            let floor = v.to_f64().abs() * 2f64.powi(-(prec as i32) + 8);
            return ApproxReal::new(v, r.max(floor));
        }
    }
    ApproxReal::new(last.clone(), 4.0 * raw)
}

/// Number of inner levels that can contribute a power of `log M`: levels
/// with exponent one and no oscillation.
fn log_power(node: &Node, is_root: bool) -> u32 {
    let own = (!is_root && node.level.total_exponent() == 1 && node.level.base == Base::One) as u32;
    own + node.children.iter().map(|c| log_power(&c.0, false)).sum::<u32>()
}

fn even(x: f64) -> u64 {
    let v = x.round() as u64;
    (v + v % 2).max(2)
}

type CacheKey = (String, u32, u64, u64);

fn cache() -> &'static Mutex<HashMap<CacheKey, ApproxReal>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, ApproxReal>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// [`sum_series`] with a process-wide memo keyed by the series shape and
/// the configuration. Identity checks evaluate the same values many times.
pub fn sum_series_cached(s: &NestedSum, cfg: &SeriesConfig) -> Result<ApproxReal> {
    let key = (format!("{s:?}"), cfg.bits, cfg.terms, cfg.tol.to_bits());
    if let Some(v) = cache().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let v = sum_series(s, cfg)?;
    cache().lock().unwrap().insert(key, v.clone());
    Ok(v)
}

/// Evaluates a convergent nested sum.
pub fn sum_series(s: &NestedSum, cfg: &SeriesConfig) -> Result<ApproxReal> {
    s.check_convergent()?;
    let prec = cfg.bits;
    let Some(root) = &s.root else {
        return Ok(ApproxReal::exact(Float::with_val(prec, &s.scale)));
    };
    if s.scale == 0 {
        return Ok(ApproxReal::zero(prec));
    }
    let x = root.level.base.abs();
    if x < 1.0 {
        return sum_geometric(s, x, cfg);
    }
    let p = log_power(root, true);
    let model = TailModel::new(1, p);
    // Unknowns in the fit; enough orders to reach ~40 digits on 2^14 terms.
    let orders = (36 / (p + 1)).clamp(4, 12) as usize;
    let unknowns = 1 + orders * (p as usize + 1);
    let per_octave = 8usize;
    let mut n_max = cfg.terms.max(64);
    loop {
        let ratio = 2f64.powf(1.0 / per_octave as f64);
        let total = unknowns + per_octave;
        let mut cps: Vec<u64> = (0..total).map(|j| even(n_max as f64 / ratio.powi(j as i32))).collect();
        cps.sort_unstable();
        cps.dedup();
        let mut partials: Vec<(u64, Float)> = Vec::with_capacity(cps.len());
        s.float_prefix(prec + 96, &cps, |m, v| partials.push((m, v.clone())));
        let value = if cps.len() < total {
            // Tiny cut-offs: not enough distinct points, use plain difference.
            let last = &partials[partials.len() - 1].1;
            let prev = &partials[partials.len() / 2].1;
            let raw = Float::with_val(prec, last - prev).abs().to_f64();
            ApproxReal::new(Float::with_val(prec, last), 4.0 * raw)
        } else {
            let wp = 2 * prec + 96;
            let nb = unknowns - 1;
            let fine = fit_limit(&partials, &model, nb, wp);
            let shifted = &partials[..partials.len() - per_octave];
            let coarse = fit_limit(shifted, &model, nb, wp);
            let last = &partials[partials.len() - 1].1;
            let raw = Float::with_val(prec, last - &shifted[shifted.len() - 1].1).abs().to_f64();
            let mut v = pick(fine, coarse, last, raw, prec);
            v.value.set_prec(prec);
            v
        };
        if value.radius <= cfg.tol || n_max >= cfg.max_terms {
            if value.radius > cfg.tol {
                return Err(Error::Precision(format!(
                    "error radius {:.2e} above tolerance {:.2e} at {} terms (value {})",
                    value.radius, cfg.tol, n_max, value
                )));
            }
            return Ok(value);
        }
        n_max = (n_max * 4).min(cfg.max_terms);
    }
}

fn sum_geometric(s: &NestedSum, x: f64, cfg: &SeriesConfig) -> Result<ApproxReal> {
    let prec = cfg.bits;
    let nodes = s.node_count() as f64;
    // |x|^M * M^nodes below 2^-(bits+10).
    let target = (prec as f64 + 10.0) * std::f64::consts::LN_2;
    let mut m = 16f64;
    while m * (-x.ln()) - nodes * m.ln() < target {
        m *= 1.25;
        if m > cfg.max_terms as f64 {
            return Err(Error::Precision(format!(
                "geometric ratio {x} too close to 1 for {} terms",
                cfg.max_terms
            )));
        }
    }
    let m = even(m);
    let mut v = Float::new(prec + 32);
    s.float_prefix(prec + 32, &[m], |_, val| v.assign(val));
    let tail = x.powf(m as f64) * (1.0 + (m as f64).ln()).powf(nodes) / (1.0 - x)
        * s.scale.to_f64().abs();
    let mut out = ApproxReal::new(v, tail);
    out.value.set_prec(prec);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nested::{Level, Link};
    use rug::float::Constant;

    fn cfg() -> SeriesConfig {
        SeriesConfig::default()
    }

    fn pi_pow(k: u32) -> Float {
        Float::with_val(128, Constant::Pi).pow(k)
    }

    #[test]
    fn zeta_two() {
        let s = NestedSum::new(Node::leaf(Level::new(2)));
        let v = sum_series(&s, &cfg()).unwrap();
        let exact = pi_pow(2) / 6u32;
        let err = Float::with_val(128, &v.value - &exact).abs().to_f64();
        assert!(err <= v.radius.max(1e-30), "err {err} radius {}", v.radius);
        assert!(v.radius < 1e-20);
    }

    #[test]
    fn alternating_log() {
        let s = NestedSum::new(Node::leaf(Level::new(1).base(Base::Minus)));
        let v = sum_series(&s, &cfg()).unwrap();
        let exact = -Float::with_val(128, Constant::Log2);
        let err = Float::with_val(128, &v.value - &exact).abs().to_f64();
        assert!(err <= v.radius.max(1e-30), "err {err} radius {}", v.radius);
    }

    #[test]
    fn nested_with_logs() {
        // zeta(1,1,2) = zeta(4) = pi^4/90.
        let levels = vec![Level::new(1), Level::new(1), Level::new(2)];
        let s = NestedSum::new(Node::chain(levels, vec![Link::Strict, Link::Strict]).unwrap());
        let v = sum_series(&s, &cfg()).unwrap();
        let exact = pi_pow(4) / 90u32;
        let err = Float::with_val(128, &v.value - &exact).abs().to_f64();
        assert!(err <= v.radius.max(1e-30), "err {err} radius {}", v.radius);
        assert!(v.radius < 1e-12);
    }

    #[test]
    fn empty_sum_and_zero_scale() {
        let v = sum_series(&NestedSum::one(), &cfg()).unwrap();
        assert_eq!(v.value, 1);
        let z = NestedSum::new(Node::leaf(Level::new(2))).scaled(0);
        let v = sum_series(&z, &cfg()).unwrap();
        assert_eq!(v.radius, 0.0);
        assert!(v.value.is_zero());
    }

    #[test]
    fn tail_correct_examples() {
        let s = NestedSum::new(Node::leaf(Level::new(2)));
        let mut parts = Vec::new();
        s.float_prefix(160, &[1000, 2000, 4000], |m, v| parts.push((m, v.clone())));
        let v = tail_correct(&parts, &TailModel::new(1, 0)).unwrap();
        let exact = pi_pow(2) / 6u32;
        assert!(Float::with_val(128, &v.value - &exact).abs() < 1e-9);

        let alt = NestedSum::new(Node::leaf(Level::new(1).base(Base::Minus)));
        let mut parts = Vec::new();
        alt.float_prefix(160, &[10000, 20000, 40000], |m, v| parts.push((m, v.clone())));
        let v = tail_correct(&parts, &TailModel::new(1, 0)).unwrap();
        let exact = -Float::with_val(128, Constant::Log2);
        assert!(Float::with_val(128, &v.value - &exact).abs() < 1e-12);

        let flat = vec![
            (10, Float::with_val(64, 3)),
            (20, Float::with_val(64, 3)),
            (40, Float::with_val(64, 3)),
        ];
        let v = tail_correct(&flat, &TailModel::new(1, 0)).unwrap();
        assert_eq!(v.radius, 0.0);
        assert_eq!(v.value, 3);
    }

    #[test]
    fn divergent_rejected() {
        let s = NestedSum::new(Node::leaf(Level::new(1)));
        assert!(matches!(sum_series(&s, &cfg()), Err(Error::Divergent(_))));
    }
}
