//! Closed evaluations of ∫ x^a f(x) dx for the polylogarithm type functions
//! Li, A, λ, L and t, written in terms of (alternating) multiple zeta values,
//! multiple T/S/t values and finite harmonic sums.
//!
//! Finite sums are exact rationals. Sub-integrals that have no closed form
//! here (∫A(k,1;x)dx for depth ≥ 2, most ∫L/x^n and ∫t/x^n) go through the
//! term-wise oracle and are flagged in [`TailIntegral::closed`].

use rug::ops::PowAssign;
use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::harmonic::{aux_hat_t_star, aux_s_star, mhss, mshs_s, mths_t, ths_t};
use crate::quadrature::{termwise_integral, Termwise};
use crate::real::{pow2, sum_all, ApproxReal};
use crate::series::SeriesConfig;
use crate::symbolic::ConstPoly;
use crate::values::{bar_zeta, big_s_value, big_t_value, t_value, zeta};

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn factorial(n: u32) -> Rational {
    (1..=n).fold(Rational::from(1), |acc, i| acc * i)
}

/// `s / d^e` as an exact rational.
fn frac(s: i64, d: u64, e: u32) -> Rational {
    let mut den = rug::Integer::from(d);
    den.pow_assign(e);
    Rational::from((rug::Integer::from(s), den))
}

fn comp(parts: &[u32]) -> Composition {
    Composition::from_slice(parts)
}

fn cat(head: &[u32], last: u32) -> Composition {
    let mut v = head.to_vec();
    v.push(last);
    Composition::from_slice(&v)
}

fn front(first: u32, rest: &[u32]) -> Composition {
    let mut v = vec![first];
    v.extend_from_slice(rest);
    Composition::from_slice(&v)
}

/// `k_i^j`: the `j` entries ending at position `i` (1-based), empty if `j = 0`.
fn tail(k: &[u32], i: usize, j: usize) -> &[u32] {
    if j == 0 || i < j {
        &[]
    } else {
        &k[i - j..i]
    }
}

fn weight(k: &[u32]) -> i64 {
    k.iter().map(|&x| x as i64).sum()
}

/// Running sum of `q · x` terms.
struct Acc {
    bits: u32,
    parts: Vec<ApproxReal>,
}

impl Acc {
    fn new(bits: u32) -> Self {
        Acc { bits, parts: Vec::new() }
    }

    fn add(&mut self, q: &Rational, x: &ApproxReal) {
        if *q != 0 {
            self.parts.push(x.scale_rational(q));
        }
    }

    /// Adds `q · x` even when `q` is zero.
    fn add_forced(&mut self, q: &Rational, x: &ApproxReal) {
        self.parts.push(x.scale_rational(q));
    }

    fn add_q(&mut self, q: &Rational) {
        if *q != 0 {
            self.parts.push(ApproxReal::from_rational(self.bits, q));
        }
    }

    fn total(self) -> ApproxReal {
        sum_all(self.bits, &self.parts)
    }
}

fn need_unsigned(k: &Composition) -> Result<()> {
    if k.is_empty() {
        return Err(Error::Domain("empty composition".into()));
    }
    if k.is_signed() {
        return Err(Error::Domain(format!("{k} must be unsigned")));
    }
    Ok(())
}

fn need_positive(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("n must be a positive integer".into()));
    }
    Ok(())
}

/// `∫_0^1 x^{n-1} Li_k(x) dx`.
pub fn int_xn_li_closed(k: &Composition, n: u64, cfg: &SeriesConfig) -> Result<ApproxReal> {
    need_unsigned(k)?;
    need_positive(n)?;
    let k = k.parts();
    let r = k.len();
    let kr = k[r - 1];
    let mut acc = Acc::new(cfg.bits);
    for j in 1..kr {
        acc.add(&frac(sign(j as i64 - 1), n, j), &zeta(&cat(&k[..r - 1], kr + 1 - j), cfg)?);
    }
    let s = mhss(&front(1, &k[..r - 1]), n)?;
    acc.add_q(&(frac(sign(weight(k) - r as i64), n, kr) * s));
    for l in 1..r {
        let kk = k[r - l - 1];
        let outer = sign(weight(tail(k, r, l)) - l as i64);
        for j in 1..kk {
            let s = mhss(&front(j, tail(k, r - 1, l - 1)), n)?;
            let z = zeta(&cat(&k[..r - l - 1], kk + 1 - j), cfg)?;
            acc.add(&(frac(outer * sign(j as i64 - 1), n, kr) * s), &z);
        }
    }
    Ok(acc.total())
}

/// `∫_0^1 x^{n-1} log^r(1 − x) dx = (−1)^r r! ζ★_n({1}_r) / n`.
pub fn cor_i2_closed(r: u32, n: u64, bits: u32) -> Result<ApproxReal> {
    need_positive(n)?;
    let s = mhss(&Composition::repeat(1, r as usize), n)?;
    let q = factorial(r) * s * frac(sign(r as i64), n, 1);
    Ok(ApproxReal::from_rational(bits, &q))
}

/// Which of the four A-integral evaluations applies: the power of `x` and the
/// depth parity it is stated for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AVariant {
    /// Even depth, `x^{2n-2}`.
    EvenDepthX2n2,
    /// Odd depth, `x^{2n-1}`.
    OddDepthX2n1,
    /// Odd depth, `x^{2n-2}`.
    OddDepthX2n2,
    /// Even depth, `x^{2n-1}`.
    EvenDepthX2n1,
}

impl AVariant {
    pub fn for_integrand(depth: usize, odd_power: bool) -> Self {
        match (depth % 2 == 0, odd_power) {
            (true, false) => AVariant::EvenDepthX2n2,
            (false, true) => AVariant::OddDepthX2n1,
            (false, false) => AVariant::OddDepthX2n2,
            (true, true) => AVariant::EvenDepthX2n1,
        }
    }

    fn even_depth(self) -> bool {
        matches!(self, AVariant::EvenDepthX2n2 | AVariant::EvenDepthX2n1)
    }

    /// Exponent `a` in `x^a` for a given `n`.
    pub fn power(self, n: u64) -> i64 {
        match self {
            AVariant::EvenDepthX2n2 | AVariant::OddDepthX2n2 => 2 * n as i64 - 2,
            _ => 2 * n as i64 - 1,
        }
    }
}

/// `∫_0^1 A({1}_r; x) dx` in the generating-function normalization, where the
/// integrand is `(1/r!) (½ log((1+x)/(1−x)))^r`: log 2 at r = 1 and
/// `2^{1-r} ζ̄(r)` above. The A-function itself carries an extra `2^r`.
pub fn int_a_ones(r: u32, bits: u32) -> Result<ApproxReal> {
    if r == 0 {
        return Err(Error::Domain("r must be positive".into()));
    }
    if r == 1 {
        return Ok(ApproxReal::log2(bits));
    }
    Ok(bar_zeta(r, bits).scale_rational(&pow2(1 - r as i32)))
}

/// `∫_0^1 A(k, 1; x) dx = −2 log 2 T(k) + 2 T(k+1) + 4 t(1, k) − S(1, k)`.
pub fn int_a_k1(k: u32, cfg: &SeriesConfig) -> Result<ApproxReal> {
    if k < 2 {
        return Err(Error::Domain("∫A(k,1;x)dx by this formula needs k ≥ 2".into()));
    }
    let t = |c: &[u32]| big_t_value(&comp(c), cfg);
    let log2 = ApproxReal::log2(cfg.bits);
    let mut acc = Acc::new(cfg.bits);
    acc.add(&Rational::from(-2), &(&log2 * &t(&[k])?));
    acc.add(&Rational::from(2), &t(&[k + 1])?);
    acc.add(&Rational::from(4), &t_value(&comp(&[1, k]), cfg)?);
    acc.add(&Rational::from(-1), &big_s_value(&comp(&[1, k]), cfg)?);
    Ok(acc.total())
}

/// `∫_0^1 A(c, 1; x) dx`, closed when `c` is empty, all ones or of depth
/// one, otherwise by the term-wise oracle. The flag says which.
pub fn int_a_with_one(c: &[u32], cfg: &SeriesConfig) -> Result<(ApproxReal, bool)> {
    if c.iter().all(|&x| x == 1) {
        let r = c.len() as u32 + 1;
        return Ok((int_a_ones(r, cfg.bits)?.scale_rational(&pow2(r as i32)), true));
    }
    if c.len() == 1 {
        return Ok((int_a_k1(c[0], cfg)?, true));
    }
    Ok((termwise_integral(&Termwise::A(cat(c, 1)), 0, cfg)?, false))
}

/// `∫_0^1 x^{2n-2} A(k;x) dx` or `∫_0^1 x^{2n-1} A(k;x) dx` per `variant`.
pub fn int_x2n_a_closed(k: &Composition, n: u64, variant: AVariant, cfg: &SeriesConfig) -> Result<ApproxReal> {
    need_unsigned(k)?;
    need_positive(n)?;
    let r = k.depth();
    if variant.even_depth() != (r % 2 == 0) {
        return Err(Error::Domain(format!("{variant:?} does not apply to depth {r}")));
    }
    let k = k.parts();
    let kr = k[r - 1];
    let d = match variant {
        AVariant::EvenDepthX2n2 | AVariant::OddDepthX2n2 => 2 * n - 1,
        _ => 2 * n,
    };
    let tv = |c: Composition| big_t_value(&c, cfg);
    let tn = |c: Composition| mths_t(&c, n);
    let sn = |c: Composition| mshs_s(&c, n);
    let w = |i: usize, j: usize| weight(tail(k, i, j));
    // Σ_{j=1}^{k_p - 1} (−1)^{j−1} T(k_{p−1}, k_p + 1 − j) X_n(j, rest), p 1-based.
    let inner = |p: usize, rest: &[u32], use_s: bool| -> Result<ApproxReal> {
        let kp = k[p - 1];
        let mut acc = Acc::new(cfg.bits);
        for j in 1..kp {
            let h = if use_s { sn(front(j, rest))? } else { tn(front(j, rest))? };
            acc.add(&(h * sign(j as i64 - 1)), &tv(cat(&k[..p - 1], kp + 1 - j))?);
        }
        Ok(acc.total())
    };
    let ia = |p: usize| -> Result<ApproxReal> { Ok(int_a_with_one(&k[..p], cfg)?.0) };

    let mut acc = Acc::new(cfg.bits);
    for j in 1..kr {
        acc.add(&frac(sign(j as i64 - 1), d, j), &tv(cat(&k[..r - 1], kr + 1 - j))?);
    }
    let g = frac(1, d, kr);
    let sw = sign(weight(k));
    let one = |acc: &mut Acc, coef: i64, x: ApproxReal| acc.add(&(g.clone() * coef), &x);
    match variant {
        AVariant::EvenDepthX2n2 => {
            let m = r / 2;
            acc.add_q(&(g.clone() * sw * tn(front(1, &k[..r - 1]))?));
            for i in 1..m {
                let x = inner(2 * m - 2 * i, tail(k, 2 * m - 1, 2 * i - 1), false)?;
                one(&mut acc, sign(w(2 * m, 2 * i)), x);
            }
            for i in 0..m {
                let x = inner(2 * m - 2 * i - 1, tail(k, 2 * m - 1, 2 * i), true)?;
                one(&mut acc, -sign(w(2 * m, 2 * i + 1)), x);
                let y = ia(2 * m - 2 * i - 1)?.scale_rational(&tn(comp(tail(k, 2 * m - 1, 2 * i)))?);
                one(&mut acc, -sign(w(2 * m, 2 * i + 1)), y);
            }
        }
        AVariant::OddDepthX2n1 => {
            let m = (r - 1) / 2;
            acc.add_q(&(g.clone() * -sw * tn(front(1, &k[..r - 1]))?));
            for i in 0..m {
                let x = inner(2 * m - 2 * i, tail(k, 2 * m, 2 * i), false)?;
                one(&mut acc, -sign(w(r, 2 * i + 1)), x);
                let x = inner(2 * m - 2 * i - 1, tail(k, 2 * m, 2 * i + 1), true)?;
                one(&mut acc, sign(w(r, 2 * i + 2)), x);
                let y = ia(2 * m - 2 * i - 1)?.scale_rational(&tn(comp(tail(k, 2 * m, 2 * i + 1)))?);
                one(&mut acc, sign(w(r, 2 * i + 2)), y);
            }
        }
        AVariant::OddDepthX2n2 => {
            let m = (r - 1) / 2;
            acc.add_q(&(g.clone() * -sw * sn(front(1, &k[..r - 1]))?));
            for i in 1..=m {
                let x = inner(2 * m + 1 - 2 * i, tail(k, 2 * m, 2 * i - 1), false)?;
                one(&mut acc, sign(w(r, 2 * i)), x);
            }
            for i in 0..m {
                let x = inner(2 * m - 2 * i, tail(k, 2 * m, 2 * i), true)?;
                one(&mut acc, -sign(w(r, 2 * i + 1)), x);
            }
            for i in 0..=m {
                let y = ia(2 * m - 2 * i)?.scale_rational(&tn(comp(tail(k, 2 * m, 2 * i)))?);
                one(&mut acc, -sign(w(r, 2 * i + 1)), y);
            }
        }
        AVariant::EvenDepthX2n1 => {
            let m = r / 2;
            acc.add_q(&(g.clone() * sw * sn(front(1, &k[..r - 1]))?));
            for i in 1..=m {
                let x = inner(2 * m + 1 - 2 * i, tail(k, 2 * m - 1, 2 * i - 2), false)?;
                one(&mut acc, -sign(w(2 * m, 2 * i - 1)), x);
                let y = ia(2 * m - 2 * i)?.scale_rational(&tn(comp(tail(k, 2 * m - 1, 2 * i - 1)))?);
                one(&mut acc, sign(w(2 * m, 2 * i)), y);
            }
            for i in 1..m {
                let x = inner(2 * m - 2 * i, tail(k, 2 * m - 1, 2 * i - 1), true)?;
                one(&mut acc, sign(w(2 * m, 2 * i)), x);
            }
        }
    }
    Ok(acc.total())
}

/// The four log-power integrals over `[0, 1]` with `log((1−t)/(1+t))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LogCase {
    /// `t^{2n-2} log^{2m}`.
    Ee,
    /// `t^{2n-2} log^{2m-1}`.
    Eo,
    /// `t^{2n-1} log^{2m}`.
    Oe,
    /// `t^{2n-1} log^{2m-1}`.
    Oo,
}

impl LogCase {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "ee" => LogCase::Ee,
            "eo" => LogCase::Eo,
            "oe" => LogCase::Oe,
            "oo" => LogCase::Oo,
            other => return Err(Error::Parse(format!("unknown case '{other}' (ee, eo, oe, oo)"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            LogCase::Ee => "ee",
            LogCase::Eo => "eo",
            LogCase::Oe => "oe",
            LogCase::Oo => "oo",
        }
    }

    /// `(power of t, power of the logarithm)`.
    pub fn exponents(self, n: u64, m: u32) -> (u64, u32) {
        match self {
            LogCase::Ee => (2 * n - 2, 2 * m),
            LogCase::Eo => (2 * n - 2, 2 * m - 1),
            LogCase::Oe => (2 * n - 1, 2 * m),
            LogCase::Oo => (2 * n - 1, 2 * m - 1),
        }
    }
}

/// `∫_0^1 t^a log^b((1−t)/(1+t)) dt` in terms of ζ̄ and `T_n({1}_j)`, `S_n({1}_j)`.
pub fn cor_ii_integral(n: u64, m: u32, which: LogCase, bits: u32) -> Result<ApproxReal> {
    need_positive(n)?;
    if m == 0 {
        return Err(Error::Domain("m must be a positive integer".into()));
    }
    let ones = |j: u32| Composition::repeat(1, j as usize);
    let tn = |j: u32| mths_t(&ones(j), n);
    let sn = |j: u32| mshs_s(&ones(j), n);
    let mut acc = Acc::new(bits);
    let total = match which {
        LogCase::Ee => {
            for j in 0..=m {
                acc.add(&tn(2 * m - 2 * j)?, &bar_zeta(2 * j, bits));
            }
            acc.total().scale_rational(&(factorial(2 * m) * frac(2, 2 * n - 1, 1)))
        }
        LogCase::Eo => {
            for j in 1..=m {
                acc.add(&(tn(2 * m - 2 * j)? * 2), &bar_zeta(2 * j - 1, bits));
            }
            acc.add_q(&sn(2 * m - 1)?);
            acc.total().scale_rational(&(factorial(2 * m - 1) * frac(-1, 2 * n - 1, 1)))
        }
        LogCase::Oe => {
            for j in 1..=m {
                acc.add(&tn(2 * m - 2 * j + 1)?, &bar_zeta(2 * j - 1, bits));
            }
            // S_n({1}_{2m}) enters with weight 1/2, not 1 as printed.
            acc.add_q(&(sn(2 * m)? / 2));
            acc.total().scale_rational(&(factorial(2 * m) * frac(1, n, 1)))
        }
        LogCase::Oo => {
            // ζ̄(2j) here; the index as printed, ζ̄(2j − 2), fails numerically.
            for j in 0..m {
                acc.add(&tn(2 * m - 2 * j - 1)?, &bar_zeta(2 * j, bits));
            }
            acc.total().scale_rational(&(factorial(2 * m - 1) * frac(-1, n, 1)))
        }
    };
    Ok(total)
}

/// `ε_j = σ_j σ_{j+1}`, `ε_r = σ_r`: the signs of the alternating MZV equal
/// to `λ_k(σ)`.
pub fn lambda_signs(sigma: &[i8]) -> Vec<i8> {
    let r = sigma.len();
    (0..r).map(|j| if j + 1 < r { sigma[j] * sigma[j + 1] } else { sigma[j] }).collect()
}

/// `λ_k(σ)` as an alternating MZV; `λ_∅ = 1`.
pub fn lambda_value(k: &[u32], sigma: &[i8], cfg: &SeriesConfig) -> Result<ApproxReal> {
    zeta(&Composition::signed(k, &lambda_signs(sigma)), cfg)
}

/// `(σ_{r−l+1}σ_{r−l}, ..., σ_r σ_{r−1})`.
fn sigma_pairs(sigma: &[i8], l: usize) -> Vec<i8> {
    let r = sigma.len();
    (r - l..r).map(|i| sigma[i] * sigma[i - 1]).collect()
}

fn signed_star(parts: &Composition, signs: Vec<i8>, n: u64) -> Result<Rational> {
    mhss(&Composition::signed(parts.parts(), &signs), n)
}

/// `∫_0^1 x^{n-1} λ_k(σ_1 x, ..., σ_r x) dx`. A product term whose exact
/// harmonic-sum factor vanishes is skipped, which is how the divergent
/// `λ_{…,1}(…, 1)` cases drop out.
pub fn int_xn_lambda_closed(k: &Composition, sigma: &[i8], n: u64, cfg: &SeriesConfig) -> Result<ApproxReal> {
    lambda_integral(k, sigma, n, false, cfg)
}

/// Same as [`int_xn_lambda_closed`], but terms with a vanishing factor are
/// still evaluated and added with coefficient zero. Fails where such a term
/// diverges.
pub fn int_xn_lambda_unclaused(k: &Composition, sigma: &[i8], n: u64, cfg: &SeriesConfig) -> Result<ApproxReal> {
    lambda_integral(k, sigma, n, true, cfg)
}

fn lambda_integral(k: &Composition, sigma: &[i8], n: u64, force: bool, cfg: &SeriesConfig) -> Result<ApproxReal> {
    need_unsigned(k)?;
    need_positive(n)?;
    let r = k.depth();
    if sigma.len() != r || sigma.iter().any(|&s| s != 1 && s != -1) {
        return Err(Error::Domain("one sign ±1 per entry required".into()));
    }
    let k = k.parts();
    let kr = k[r - 1];
    let sr_n: i64 = if sigma[r - 1] == -1 && n % 2 == 1 { -1 } else { 1 };
    let mut acc = Acc::new(cfg.bits);
    for j in 1..kr {
        acc.add(&frac(sign(j as i64 - 1), n, j), &lambda_value(cat(&k[..r - 1], kr + 1 - j).parts(), sigma, cfg)?);
    }
    if sr_n != 1 || force {
        let c = frac(sign(kr as i64) * (sr_n - 1), n, kr);
        acc.add_forced(&c, &lambda_value(cat(&k[..r - 1], 1).parts(), sigma, cfg)?);
    }
    let g = frac(sr_n, n, kr);
    for l in 1..r {
        let kk = k[r - l - 1];
        let head = &sigma[..r - l];
        let mut signs = vec![sigma[r - l]];
        signs.extend(sigma_pairs(sigma, l - 1));
        for j in 1..kk {
            let s = signed_star(&front(j, tail(k, r - 1, l - 1)), signs.clone(), n)?;
            if s == 0 {
                continue;
            }
            // (−1)^{|k_r^l| − l}, as in the Li case; the bare (−1)^{|k_r^l|} fails.
            let c = g.clone() * -sign(weight(tail(k, r, l)) - l as i64 + j as i64) * s;
            acc.add(&c, &lambda_value(cat(&k[..r - l - 1], kk + 1 - j).parts(), head, cfg)?);
        }
        let slice = comp(tail(k, r - 1, l));
        let diff = signed_star(&slice, signs.clone(), n)? - signed_star(&slice, sigma_pairs(sigma, l), n)?;
        if diff != 0 || force {
            let c = g.clone() * -sign(weight(tail(k, r, l + 1)) - l as i64) * diff;
            acc.add_forced(&c, &lambda_value(cat(&k[..r - l - 1], 1).parts(), head, cfg)?);
        }
    }
    let mut signs = vec![sigma[0]];
    signs.extend(sigma_pairs(sigma, r - 1));
    let s = signed_star(&front(1, &k[..r - 1]), signs, n)?;
    acc.add_q(&(g * sign(weight(k) - r as i64) * s));
    Ok(acc.total())
}

/// Depth-one case: `∫_0^1 x^{n-1} λ_k(σx) dx`.
pub fn cor_il_closed(k: u32, sigma: i8, n: u64, cfg: &SeriesConfig) -> Result<ApproxReal> {
    need_positive(n)?;
    let sn: i64 = if sigma == -1 && n % 2 == 1 { -1 } else { 1 };
    let mut acc = Acc::new(cfg.bits);
    if sn != 1 {
        acc.add(&frac(sign(k as i64) * (sn - 1), n, k), &lambda_value(&[1], &[sigma], cfg)?);
    }
    let s = mhss(&Composition::signed(&[1], &[sigma]), n)?;
    acc.add_q(&(frac(-sign(k as i64) * sn, n, k) * s));
    for j in 1..k {
        acc.add(&frac(-sign(j as i64), n, j), &lambda_value(&[k + 1 - j], &[sigma], cfg)?);
    }
    Ok(acc.total())
}

/// Depth-two case: `∫_0^1 x^{n-1} λ_{k_1,k_2}(σ_1 x, σ_2 x) dx`. The sum of
/// `λ_{k_1+1-j}(σ_1) ζ★_n(j; σ_2)` carries `(−1)^{k_2}`.
pub fn cor_iil_closed(k1: u32, k2: u32, s1: i8, s2: i8, n: u64, cfg: &SeriesConfig) -> Result<ApproxReal> {
    need_positive(n)?;
    let s2n: i64 = if s2 == -1 && n % 2 == 1 { -1 } else { 1 };
    let star = |parts: &[u32], signs: &[i8]| mhss(&Composition::signed(parts, signs), n);
    let g = frac(s2n, n, k2);
    let mut acc = Acc::new(cfg.bits);
    for j in 1..k2 {
        acc.add(&frac(sign(j as i64 - 1), n, j), &lambda_value(&[k1, k2 + 1 - j], &[s1, s2], cfg)?);
    }
    for j in 1..k1 {
        let c = g.clone() * sign(k2 as i64 + j as i64) * star(&[j], &[s2])?;
        acc.add(&c, &lambda_value(&[k1 + 1 - j], &[s1], cfg)?);
    }
    if s2n != 1 {
        acc.add(&frac(sign(k2 as i64) * (s2n - 1), n, k2), &lambda_value(&[k1, 1], &[s1, s2], cfg)?);
    }
    let diff = star(&[k1], &[s2])? - star(&[k1], &[s2 * s1])?;
    if diff != 0 {
        acc.add(&(g.clone() * sign((k1 + k2) as i64) * diff), &lambda_value(&[1], &[s1], cfg)?);
    }
    acc.add_q(&(g * sign((k1 + k2) as i64) * star(&[1, k1], &[s1, s2 * s1])?));
    Ok(acc.total())
}

/// L(k) = 2^{-|k|} ζ(k).
pub fn l_value(k: &Composition, cfg: &SeriesConfig) -> Result<ApproxReal> {
    Ok(zeta(k, cfg)?.scale_rational(&pow2(-(k.weight() as i32))))
}

/// `∫_0^1 x^{2n-2} L(k; x) dx`.
pub fn int_x2n_l_closed(k: &Composition, n: u64, cfg: &SeriesConfig) -> Result<ApproxReal> {
    need_unsigned(k)?;
    need_positive(n)?;
    let r = k.depth();
    let k = k.parts();
    let kr = k[r - 1];
    let d = 2 * n - 1;
    let ts = |c: Composition| ths_t(&c, n, true);
    let mut acc = Acc::new(cfg.bits);
    for j in 1..kr {
        acc.add(&frac(sign(j as i64 - 1), d, j), &l_value(&cat(&k[..r - 1], kr + 1 - j), cfg)?);
    }
    acc.add_q(&(frac(sign(weight(k) - r as i64), d, kr) * ts(front(1, &k[..r - 1]))?));
    for l in 1..r {
        let kk = k[r - l - 1];
        let outer = sign(weight(tail(k, r, l)) - l as i64);
        for j in 1..kk {
            let c = frac(outer * sign(j as i64 - 1), d, kr) * ts(front(j, tail(k, r - 1, l - 1)))?;
            acc.add(&c, &l_value(&cat(&k[..r - l - 1], kk + 1 - j), cfg)?);
        }
    }
    for l in 0..r {
        let c = frac(-sign(weight(tail(k, r, l + 1)) - l as i64 - 1), d, kr) * ts(comp(tail(k, r - 1, l)))?;
        let sub = tail_integral(TailKind::L, &comp(&k[..r - l - 1]), 2, cfg)?.value;
        acc.add(&c, &sub);
    }
    Ok(acc.total())
}

/// `∫_0^1 x^{2n-2} t(k; x) dx`.
pub fn int_x2n_t_closed(k: &Composition, n: u64, cfg: &SeriesConfig) -> Result<ApproxReal> {
    need_unsigned(k)?;
    need_positive(n)?;
    let r = k.depth();
    let k = k.parts();
    let kr = k[r - 1];
    let d = 2 * n - 1;
    let hat = |c: Composition| aux_hat_t_star(&c, n);
    let mut acc = Acc::new(cfg.bits);
    for j in 1..kr {
        acc.add(&frac(sign(j as i64 - 1), d, j), &t_value(&cat(&k[..r - 1], kr + 1 - j), cfg)?);
    }
    acc.add_q(&(frac(sign(weight(k) - r as i64), d, kr) * aux_s_star(&front(1, &k[..r - 1]), n)?));
    for l in 1..r {
        let kk = k[r - l - 1];
        let outer = sign(weight(tail(k, r, l)) - l as i64);
        for j in 1..kk {
            let c = frac(outer * sign(j as i64 - 1), d, kr) * hat(front(j, tail(k, r - 1, l - 1)))?;
            acc.add(&c, &t_value(&cat(&k[..r - l - 1], kk + 1 - j), cfg)?);
        }
    }
    for l in 0..r {
        let c = frac(sign(weight(tail(k, r, l + 1)) - l as i64 - 1), d, kr) * hat(comp(tail(k, r - 1, l)))?;
        if c == 0 {
            continue;
        }
        let sub = tail_integral(TailKind::T, &comp(&k[..r - l - 1]), 0, cfg)?.value;
        acc.add(&c, &sub);
    }
    Ok(acc.total())
}

/// The exact polynomials in log 2 and ζ values for `∫_0^1 L({1}_r; x)/x² dx`,
/// `r = 1..=r_max`, from `1 − Σ_r I_r u^r = exp(Σ_n ζ(n̄) u^n / n)`.
pub fn l_ones_over_x2_polys(r_max: usize) -> Vec<ConstPoly> {
    // a_n = ζ(n̄)/n: ζ(1̄) = −log 2, ζ(n̄) = −(1 − 2^{1−n}) ζ(n).
    let a: Vec<ConstPoly> = (0..=r_max)
        .map(|n| match n {
            0 => ConstPoly::zero(),
            1 => ConstPoly::log2().scale(&Rational::from(-1)),
            _ => {
                let c = (Rational::from(1) - pow2(1 - n as i32)) / Rational::from(n as u64);
                ConstPoly::zeta(n).scale(&-c)
            }
        })
        .collect();
    // g = exp(A): n g_n = Σ_{k=1}^n k a_k g_{n−k}.
    let mut g = vec![ConstPoly::constant(Rational::from(1))];
    for n in 1..=r_max {
        let mut s = ConstPoly::zero();
        for kk in 1..=n {
            s = s.add(&a[kk].mul(&g[n - kk]).scale(&Rational::from(kk as u64)));
        }
        g.push(s.scale(&Rational::from((1, n as u64))));
    }
    g[1..].iter().map(|p| p.scale(&Rational::from(-1))).collect()
}

/// `∫_0^1 L({1}_r; x)/x² dx`.
pub fn l_ones_over_x2(r: usize, bits: u32) -> Result<ApproxReal> {
    if r == 0 {
        return Err(Error::Domain("r must be positive".into()));
    }
    Ok(l_ones_over_x2_polys(r)[r - 1].eval(bits))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TailKind {
    L,
    T,
}

/// Result of a tail integral and whether a closed formula produced it.
#[derive(Clone, Debug)]
pub struct TailIntegral {
    pub value: ApproxReal,
    pub closed: bool,
}

/// All `ε ∈ {±1}^r`.
fn sign_vectors(r: usize) -> Vec<Vec<i8>> {
    (0..1u32 << r).map(|m| (0..r).map(|j| if m >> j & 1 == 1 { -1 } else { 1 }).collect()).collect()
}

/// `∫_0^1 F(k, 1; x) / x^n dx` for `F = L` (`0 ≤ n ≤ 2r+2`) or `F = t`
/// (`0 ≤ n ≤ 2r+1`), `r = depth(k)`. Closed for `n = 2`, and for `n = 0`
/// when `k` has depth at most one; anything else uses the term-wise oracle.
pub fn tail_integral(kind: TailKind, k: &Composition, n: u32, cfg: &SeriesConfig) -> Result<TailIntegral> {
    if k.is_signed() {
        return Err(Error::Domain(format!("{k} must be unsigned")));
    }
    let r = k.depth();
    let limit = match kind {
        TailKind::L => 2 * r + 2,
        TailKind::T => 2 * r + 1,
    };
    if n as usize > limit {
        return Err(Error::Domain(format!("power {n} outside 0..={limit} for depth {r}")));
    }
    let bits = cfg.bits;
    let z = |parts: &[u32], signs: &[i8]| zeta(&Composition::signed(parts, signs), cfg);
    let closed = |value| Ok(TailIntegral { value, closed: true });
    let parts = k.parts();
    if n == 2 {
        let full = cat(parts, 1);
        let mut acc = Acc::new(bits);
        for eps in sign_vectors(r) {
            let prod: i64 = eps.iter().map(|&e| e as i64).product();
            // For t the sign is +Πε; the general display's leading minus
            // contradicts both its own depth-one example and the series.
            let c = match kind {
                TailKind::L => -1,
                TailKind::T => prod,
            };
            let mut signs = eps.clone();
            signs.push(-1);
            acc.add(&Rational::from(c), &z(full.parts(), &signs)?);
        }
        return closed(acc.total().scale_rational(&pow2(-(r as i32))));
    }
    if n == 0 && r <= 1 {
        let log2 = ApproxReal::log2(bits);
        match (kind, parts) {
            (TailKind::T, []) => return closed(log2),
            (TailKind::T, [1]) => {
                let mut acc = Acc::new(bits);
                acc.add(&Rational::from(2), &z(&[1, 1], &[-1, -1])?);
                acc.add(&Rational::from(-2), &z(&[1, 1], &[1, -1])?);
                acc.add(&Rational::from(4), &log2);
                return closed(acc.total().scale_rational(&Rational::from((1, 4))));
            }
            (_, &[kk]) if kk > 1 => {
                let sk = sign(kk as i64);
                let half = Rational::from((1, 2));
                let mut acc = Acc::new(bits);
                acc.add(&half, &z(&[kk, 1], &[-1, -1])?);
                for j in 2..=kk {
                    let s = sign((kk - j) as i64);
                    let zj = z(&[j], &[1])?;
                    let zbar = z(&[j], &[-1])?;
                    let inner = match kind {
                        TailKind::T => &zj - &zbar,
                        TailKind::L => &zj + &zbar,
                    };
                    acc.add(&(half.clone() * s), &inner);
                }
                match kind {
                    TailKind::T => {
                        acc.add(&-half, &z(&[kk, 1], &[1, -1])?);
                        acc.add(&Rational::from(-sk), &log2);
                    }
                    TailKind::L => {
                        acc.add(&half, &z(&[kk, 1], &[1, -1])?);
                        acc.add_q(&Rational::from(-sk));
                        acc.add(&Rational::from(sk), &log2);
                    }
                }
                return closed(acc.total());
            }
            _ => {}
        }
    }
    let f = match kind {
        TailKind::L => Termwise::L(cat(parts, 1)),
        TailKind::T => Termwise::T(cat(parts, 1)),
    };
    Ok(TailIntegral { value: termwise_integral(&f, -(n as i64), cfg)?, closed: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs_and_slices() {
        assert_eq!(sign(-3), -1);
        assert_eq!(sign(4), 1);
        assert_eq!(tail(&[1, 2, 3, 4], 3, 2), &[2, 3]);
        assert!(tail(&[1, 2], 1, 2).is_empty());
        assert_eq!(frac(-1, 3, 2), Rational::from((-1, 9)));
        assert_eq!(lambda_signs(&[1, -1, -1]), vec![-1, 1, -1]);
        assert_eq!(sigma_pairs(&[1, -1, -1], 2), vec![-1, 1]);
    }

    #[test]
    fn l_ones_polynomials() {
        let p = l_ones_over_x2_polys(3);
        assert_eq!(p[0].to_string(), "log(2)");
        assert_eq!(p[1].to_string(), "1/4*ζ(2) - 1/2*log(2)^2");
        assert_eq!(p[2].to_string(), "1/4*ζ(3) - 1/4*log(2)*ζ(2) + 1/6*log(2)^3");
    }

    #[test]
    fn variants_pick_by_parity() {
        assert_eq!(AVariant::for_integrand(2, false), AVariant::EvenDepthX2n2);
        assert_eq!(AVariant::for_integrand(3, true), AVariant::OddDepthX2n1);
        assert_eq!(AVariant::OddDepthX2n1.power(2), 3);
    }
}
