//! Identity registry: every verifiable evaluation or relation is an entry
//! with declared parameter domains and two independently evaluated sides.
//! Enumeration, validation and reporting are generic over the entries.

use std::fmt;

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Float, Rational};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::closed_forms::{
    cor_i2_closed, cor_ii_integral, int_a_ones, int_a_with_one, int_xn_li_closed, l_ones_over_x2, l_value,
    lambda_value, tail_integral, LogCase, TailKind,
};
use crate::composition::Composition;
use crate::convolution::{alt_ky, conv_t, ky_zeta, xi_value, ConvCase};
use crate::error::{Error, Result};
use crate::harmonic::{outer_sum, HarmonicFamily, Trunc};
use crate::nested::Level;
use crate::poset::{evaluate_poset, product_poset, psi_value, PosetLevel};
use crate::quadrature::{de_integrate, termwise_integral, Termwise};
use crate::real::{pow2, sum_all, ApproxReal};
use crate::series::{sum_series_cached, SeriesConfig};
use crate::values::{bar_zeta, big_s_value, big_t_value, li_multi, li_single, t_star_value, zeta, zeta_star};

/// Tolerance used when none is given.
pub const DEFAULT_TOL: f64 = 1e-6;

/// Evaluation settings shared by both sides of an identity.
#[derive(Clone, Debug)]
pub struct Ctx {
    pub cfg: SeriesConfig,
    pub tol: f64,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx { cfg: SeriesConfig::default(), tol: DEFAULT_TOL }
    }
}

impl Ctx {
    fn bits(&self) -> u32 {
        self.cfg.bits
    }

    fn z(&self, parts: &[u32]) -> Result<ApproxReal> {
        if parts.is_empty() {
            return Ok(self.one());
        }
        zeta(&Composition::from_slice(parts), &self.cfg)
    }

    fn zs(&self, parts: &[u32], signs: &[i8]) -> Result<ApproxReal> {
        zeta(&Composition::signed(parts, signs), &self.cfg)
    }

    fn zstar(&self, parts: &[u32]) -> Result<ApproxReal> {
        zeta_star(&Composition::from_slice(parts), &self.cfg)
    }

    fn t(&self, parts: &[u32]) -> Result<ApproxReal> {
        big_t_value(&Composition::from_slice(parts), &self.cfg)
    }

    /// T(k) with the regularization T(1) := 2 log 2.
    fn t_reg(&self, parts: &[u32]) -> Result<ApproxReal> {
        if parts == [1] {
            return Ok(ApproxReal::log2(self.bits()).scale_int(2));
        }
        self.t(parts)
    }

    fn lam(&self, parts: &[u32], sigma: &[i8]) -> Result<ApproxReal> {
        lambda_value(parts, sigma, &self.cfg)
    }

    fn li(&self, parts: &[u32], xs: &[i8], star: bool) -> Result<ApproxReal> {
        let xs: Vec<f64> = xs.iter().map(|&x| x as f64).collect();
        li_multi(&Composition::from_slice(parts), &xs, star, &self.cfg)
    }

    fn one(&self) -> ApproxReal {
        ApproxReal::from_int(self.bits(), 1)
    }

    /// Σ_n H_1(n)⋯H_m(n) / n^e.
    fn outer(&self, e: u32, factors: &[(HarmonicFamily, Composition, Trunc)]) -> Result<ApproxReal> {
        sum_series_cached(&outer_sum(Level::new(e), factors)?, &self.cfg)
    }

    fn quad<F>(&self, f: F) -> Result<ApproxReal>
    where
        F: Fn(&Float, &Float) -> Float,
    {
        de_integrate(f, 1e-18, self.bits())
    }
}

fn sgn(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn wt(k: &[u32]) -> i64 {
    k.iter().map(|&v| v as i64).sum()
}

fn cat(head: &[u32], last: u32) -> Vec<u32> {
    let mut v = head.to_vec();
    v.push(last);
    v
}

fn front(first: u32, rest: &[u32]) -> Vec<u32> {
    let mut v = vec![first];
    v.extend_from_slice(rest);
    v
}

/// The last `i` entries.
fn last(k: &[u32], i: usize) -> &[u32] {
    &k[k.len() - i..]
}

fn ones(r: usize) -> Composition {
    Composition::repeat(1, r)
}

/// Rational linear combination of values.
struct Lin {
    bits: u32,
    parts: Vec<ApproxReal>,
}

impl Lin {
    fn new(c: &Ctx) -> Self {
        Lin { bits: c.bits(), parts: Vec::new() }
    }

    fn add(&mut self, c: i64, x: ApproxReal) {
        self.parts.push(x.scale_int(c));
    }

    fn addq(&mut self, q: &Rational, x: ApproxReal) {
        self.parts.push(x.scale_rational(q));
    }

    fn total(self) -> ApproxReal {
        sum_all(self.bits, &self.parts)
    }
}

// ---------------------------------------------------------------- params

/// Named parameter values, kept as text in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params(Vec<(String, String)>);

impl Params {
    /// `name=value` pairs separated by `;` or whitespace, e.g. `k=1,2; l=3`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for tok in s.split(|c: char| c == ';' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let (name, value) = tok
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("parameter '{tok}' is not name=value")))?;
            if out.iter().any(|(n, _): &(String, String)| n == name) {
                return Err(Error::Parse(format!("parameter '{name}' given twice")));
            }
            out.push((name.to_string(), value.to_string()));
        }
        Ok(Params(out))
    }

    pub fn get(&self, name: &str) -> Result<&str> {
        self.0
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| Error::Parse(format!("missing parameter '{name}'")))
    }

    pub fn comp(&self, name: &str) -> Result<Composition> {
        let k: Composition = self.get(name)?.parse()?;
        if k.is_signed() {
            return Err(Error::Domain(format!("parameter '{name}' takes positive entries")));
        }
        if k.parts().contains(&0) {
            return Err(Error::Domain(format!("parameter '{name}' has a zero entry")));
        }
        Ok(k)
    }

    pub fn int(&self, name: &str) -> Result<u32> {
        let v = self.get(name)?;
        v.parse().map_err(|_| Error::Parse(format!("parameter '{name}'='{v}' is not an integer")))
    }

    pub fn sign(&self, name: &str) -> Result<i8> {
        match self.get(name)? {
            "1" | "+1" | "+" => Ok(1),
            "-1" | "-" => Ok(-1),
            v => Err(Error::Parse(format!("parameter '{name}'='{v}' is not ±1"))),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.0.iter().map(|(n, v)| (n.as_str(), v.as_str()))
    }

    fn push(&mut self, name: &str, value: String) {
        self.0.push((name.to_string(), value));
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{n}={v}")?;
        }
        Ok(())
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (n, v) in &self.0 {
            m.serialize_entry(n, v)?;
        }
        m.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    /// Nonempty composition of positive integers.
    Comp,
    /// Composition that may be empty, written `()`.
    CompOrEmpty,
    /// Integer in `min..=max`; without `max` the weight bound caps it.
    Int { min: u32, max: Option<u32> },
    Sign,
    Choice(&'static [&'static str]),
}

#[derive(Clone, Copy, Debug)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
}

const fn comp(name: &'static str) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::Comp }
}

const fn int(name: &'static str, min: u32, max: Option<u32>) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::Int { min, max } }
}

const fn sign(name: &'static str) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::Sign }
}

fn compositions_up_to(w: u32) -> Vec<Composition> {
    fn rec(left: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if !cur.is_empty() {
            out.push(Composition::from_slice(cur));
        }
        for v in 1..=left {
            cur.push(v);
            rec(left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(w, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| (a.weight(), a.depth(), a.parts()).cmp(&(b.weight(), b.depth(), b.parts())));
    out
}

fn show_comp(k: &Composition) -> String {
    if k.is_empty() {
        "()".into()
    } else {
        k.to_string()
    }
}

impl ParamSpec {
    fn domain(&self, max_weight: u32) -> Vec<String> {
        match self.kind {
            ParamKind::Comp => compositions_up_to(max_weight).iter().map(show_comp).collect(),
            ParamKind::CompOrEmpty => {
                let mut v = vec!["()".to_string()];
                v.extend(compositions_up_to(max_weight).iter().map(show_comp));
                v
            }
            ParamKind::Int { min, max } => (min..=max.unwrap_or(max_weight).max(min)).map(|i| i.to_string()).collect(),
            ParamKind::Sign => vec!["1".into(), "-1".into()],
            ParamKind::Choice(c) => c.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn check(&self, p: &Params) -> Result<()> {
        match self.kind {
            ParamKind::Comp => {
                if p.comp(self.name)?.is_empty() {
                    return Err(Error::Domain(format!("parameter '{}' must be nonempty", self.name)));
                }
            }
            ParamKind::CompOrEmpty => {
                p.comp(self.name)?;
            }
            ParamKind::Int { min, max } => {
                let v = p.int(self.name)?;
                if v < min || max.is_some_and(|m| v > m) {
                    return Err(Error::Domain(format!(
                        "parameter '{}'={v} outside {min}..={}",
                        self.name,
                        max.map_or("∞".to_string(), |m| m.to_string())
                    )));
                }
            }
            ParamKind::Sign => {
                p.sign(self.name)?;
            }
            ParamKind::Choice(c) => {
                let v = p.get(self.name)?;
                if !c.contains(&v) {
                    return Err(Error::Parse(format!("parameter '{}'='{v}' not one of {c:?}", self.name)));
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------- entries

type Side = fn(&Params, &Ctx) -> Result<ApproxReal>;

/// One registered identity.
pub struct Identity {
    pub id: &'static str,
    pub title: &'static str,
    pub params: &'static [ParamSpec],
    /// Parameters used by `verify <id>` when none are given.
    pub default_params: &'static str,
    weight: fn(&Params) -> Result<u32>,
    /// Hypotheses beyond the parameter domains.
    hypotheses: fn(&Params) -> Result<()>,
    lhs: Side,
    rhs: Side,
}

fn no_extra(_: &Params) -> Result<()> {
    Ok(())
}

impl Identity {
    pub fn validate(&self, p: &Params) -> Result<()> {
        for (n, _) in p.iter() {
            if !self.params.iter().any(|s| s.name == n) {
                return Err(Error::Parse(format!("{} takes no parameter '{n}'", self.id)));
            }
        }
        for s in self.params {
            s.check(p)?;
        }
        (self.hypotheses)(p)
    }

    pub fn default_params(&self) -> Params {
        Params::parse(self.default_params).expect("default parameters parse")
    }

    pub fn weight(&self, p: &Params) -> Result<u32> {
        (self.weight)(p)
    }

    /// Every parameter set inside the declared domains with weight at most
    /// `max_weight`. Entries without parameters always yield their one case.
    pub fn cases(&self, max_weight: u32) -> Vec<Params> {
        if self.params.is_empty() {
            return vec![Params::default()];
        }
        let mut sets = vec![Params::default()];
        for spec in self.params {
            let dom = spec.domain(max_weight);
            let mut next = Vec::with_capacity(sets.len() * dom.len());
            for p in &sets {
                for v in &dom {
                    let mut q = p.clone();
                    q.push(spec.name, v.clone());
                    next.push(q);
                }
            }
            // Prune early on partial weights where the entry allows it.
            sets = next;
        }
        sets.into_iter()
            .filter(|p| self.weight(p).is_ok_and(|w| w <= max_weight) && self.validate(p).is_ok())
            .collect()
    }

    pub fn verify(&self, p: &Params, ctx: &Ctx) -> Result<IdentityReport> {
        self.validate(p)?;
        let lhs = (self.lhs)(p, ctx)?;
        let rhs = (self.rhs)(p, ctx)?;
        Ok(IdentityReport::new(self.id, p, &lhs, &rhs, ctx.tol))
    }
}

/// Outcome of one identity check.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub params: Params,
    pub lhs: String,
    pub rhs: String,
    /// Combined error radius of both sides.
    pub radius: f64,
    pub diff: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl IdentityReport {
    fn new(id: &str, p: &Params, lhs: &ApproxReal, rhs: &ApproxReal, tol: f64) -> Self {
        let diff = lhs.distance(rhs);
        let radius = lhs.radius + rhs.radius;
        IdentityReport {
            id: id.into(),
            params: p.clone(),
            lhs: lhs.to_decimal(),
            rhs: rhs.to_decimal(),
            radius,
            diff,
            tol,
            pass: diff.is_finite() && diff <= tol + radius && radius <= tol,
            error: None,
        }
    }

    fn failed(id: &str, p: &Params, tol: f64, e: &Error) -> Self {
        IdentityReport {
            id: id.into(),
            params: p.clone(),
            lhs: String::new(),
            rhs: String::new(),
            radius: f64::INFINITY,
            diff: f64::INFINITY,
            tol,
            pass: false,
            error: Some(e.to_string()),
        }
    }
}

pub fn entries() -> &'static [Identity] {
    ENTRIES
}

pub fn find(id: &str) -> Result<&'static Identity> {
    ENTRIES
        .iter()
        .find(|e| e.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

/// Checks one identity at `params` (its defaults when `None`).
pub fn verify_identity(id: &str, params: Option<&Params>, ctx: &Ctx) -> Result<IdentityReport> {
    let e = find(id)?;
    let p = params.cloned().unwrap_or_else(|| e.default_params());
    e.verify(&p, ctx)
}

/// Runs every enumerated case of the given entries. Cases are independent
/// and run in parallel; the output order is that of the enumeration.
/// Evaluation errors become failed reports.
pub fn verify_all(selected: &[&'static Identity], max_weight: u32, ctx: &Ctx) -> Vec<IdentityReport> {
    let jobs: Vec<(&Identity, Params)> =
        selected.iter().flat_map(|e| e.cases(max_weight).into_iter().map(move |p| (*e, p))).collect();
    jobs.par_iter()
        .map(|(e, p)| e.verify(p, ctx).unwrap_or_else(|err| IdentityReport::failed(e.id, p, ctx.tol, &err)))
        .collect()
}

// ------------------------------------------------ Kaneko-Yamamoto family

fn ky_a2_side(k: &[u32], l: &[u32], c: &Ctx) -> Result<ApproxReal> {
    let (r, s) = (k.len(), l.len());
    let (kr, ls) = (k[r - 1], l[s - 1]);
    let lc = Composition::from_slice(l);
    let ky = |m: Vec<u32>| ky_zeta(&lc, &Composition::from_slice(&m), &c.cfg);
    let mut acc = Lin::new(c);
    for j in 1..kr {
        acc.add(sgn(j as i64 - 1), c.z(&cat(&k[..r - 1], kr + 1 - j))? * c.z(&cat(&l[..s - 1], ls + j))?);
    }
    acc.add(sgn(wt(k) - r as i64), ky(front(1, k))?);
    for i in 1..r {
        let g = sgn(wt(last(k, i)) - i as i64);
        let ki = k[r - i - 1];
        for j in 1..ki {
            acc.add(g * sgn(j as i64 - 1), c.z(&cat(&k[..r - i - 1], ki + 1 - j))? * ky(front(j, last(k, i)))?);
        }
    }
    Ok(acc.total())
}

fn kl_weight(p: &Params) -> Result<u32> {
    Ok(p.comp("k")?.weight() + p.comp("l")?.weight())
}

fn ky_a2_lhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    ky_a2_side(p.comp("k")?.parts(), p.comp("l")?.parts(), c)
}

fn ky_a2_rhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    ky_a2_side(p.comp("l")?.parts(), p.comp("k")?.parts(), c)
}

fn k1k2l(p: &Params) -> Result<(u32, u32, u32)> {
    Ok((p.int("k1")?, p.int("k2")?, p.int("l")?))
}

fn k1k2l_weight(p: &Params) -> Result<u32> {
    let (a, b, l) = k1k2l(p)?;
    Ok(a + b + l)
}

fn ky_a3_lhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let (k1, k2, l1) = k1k2l(p)?;
    let mut acc = Lin::new(c);
    for j in 1..k2 {
        acc.add(sgn(j as i64 - 1), c.z(&[k1, k2 + 1 - j])? * c.z(&[l1 + j])?);
    }
    acc.add(sgn((k1 + k2) as i64), c.zstar(&[1, k1, k2 + l1])?);
    // The inner sum runs to k1 − 1; the printed bound k2 − 1 reaches ζ(1).
    for j in 1..k1 {
        acc.add(sgn(k2 as i64 - 1) * sgn(j as i64 - 1), c.z(&[k1 + 1 - j])? * c.zstar(&[j, l1 + k2])?);
    }
    Ok(acc.total())
}

fn ky_a3_rhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let (k1, k2, l1) = k1k2l(p)?;
    let mut acc = Lin::new(c);
    for j in 1..l1 {
        acc.add(sgn(j as i64 - 1), c.z(&[l1 + 1 - j])? * c.z(&[k1, k2 + j])?);
    }
    let ky = ky_zeta(&Composition::from_slice(&[k1, k2]), &Composition::from_slice(&[1, l1]), &c.cfg)?;
    acc.add(sgn(l1 as i64 - 1), ky);
    Ok(acc.total())
}

fn ky_a4_lhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let (k1, k2, l1) = k1k2l(p)?;
    let mut acc = Lin::new(c);
    acc.add(sgn(l1 as i64 - 1) + sgn((k1 + k2) as i64 - 1), c.zstar(&[1, k1, k2 + l1])?);
    acc.add(sgn(l1 as i64 - 1), c.zstar(&[k1, 1, k2 + l1])?);
    Ok(acc.total())
}

fn ky_a4_rhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let (k1, k2, l1) = k1k2l(p)?;
    let mut acc = Lin::new(c);
    for j in 1..k2 {
        acc.add(sgn(j as i64 - 1), c.z(&[k1, k2 + 1 - j])? * c.z(&[l1 + j])?);
    }
    for j in 1..k1 {
        acc.add(-sgn(k2 as i64) * sgn(j as i64 - 1), c.z(&[k1 + 1 - j])? * c.zstar(&[j, l1 + k2])?);
    }
    for j in 1..l1 {
        acc.add(-sgn(j as i64 - 1), c.z(&[l1 + 1 - j])? * c.z(&[k1, k2 + j])?);
    }
    acc.add(sgn(l1 as i64 - 1), c.zstar(&[k1 + 1, k2 + l1])?);
    acc.add(sgn(l1 as i64 - 1), c.zstar(&[1, k1 + k2 + l1])?);
    Ok(acc.total())
}

// --------------------------------------------- T_n / S_n weighted sums

fn czt_weight(p: &Params) -> Result<u32> {
    Ok(p.comp("k")?.weight() + 2 * p.int("m")? + 1)
}

/// Left side of the T_n/S_n-weighted evaluation for k and m.
fn czt_lhs_of(k: &[u32], m: u32, c: &Ctx) -> Result<ApproxReal> {
    use HarmonicFamily::{S, Zeta, T};
    let r = k.len();
    let head = Composition::from_slice(&k[..r - 1]);
    let e = k[r - 1] + 1;
    let mut acc = Lin::new(c);
    for j in 0..m {
        let s = c.outer(e, &[(Zeta, head.clone(), Trunc::BeforeN), (T, ones(2 * j as usize + 1), Trunc::AtN)])?;
        acc.add(2, bar_zeta(2 * m - 1 - 2 * j, c.bits()) * s);
    }
    acc.add(1, c.outer(e, &[(Zeta, head, Trunc::BeforeN), (S, ones(2 * m as usize), Trunc::AtN)])?);
    Ok(acc.total())
}

fn tn_star(c: &Ctx, e: u32, m: u32, star: Vec<u32>) -> Result<ApproxReal> {
    c.outer(
        e,
        &[
            (HarmonicFamily::T, ones(2 * m as usize - 1), Trunc::AtN),
            (HarmonicFamily::ZetaStar, Composition::from_slice(&star), Trunc::AtN),
        ],
    )
}

fn t_ones_then(c: &Ctx, m: u32, j: u32) -> Result<ApproxReal> {
    c.t(&cat(ones(2 * m as usize - 1).parts(), j + 1))
}

fn czt_lhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    czt_lhs_of(p.comp("k")?.parts(), p.int("m")?, c)
}

fn czt_rhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let k = p.comp("k")?;
    let k = k.parts();
    let m = p.int("m")?;
    let r = k.len();
    let kr = k[r - 1];
    let mut acc = Lin::new(c);
    for j in 1..kr {
        let x = c.z(&cat(&k[..r - 1], kr + 1 - j))? * t_ones_then(c, m, j)?;
        acc.add(sgn(j as i64 - 1) << j, x);
    }
    acc.add(sgn(wt(k) - r as i64), tn_star(c, kr + 1, m, front(1, &k[..r - 1]))?);
    for l in 1..r {
        let g = sgn(wt(last(k, l)) - l as i64);
        let kl = k[r - l - 1];
        for j in 1..kl {
            let x = c.z(&cat(&k[..r - l - 1], kl + 1 - j))? * tn_star(c, kr + 1, m, front(j, &k[r - l..r - 1]))?;
            acc.add(g * sgn(j as i64 - 1), x);
        }
    }
    Ok(acc.total())
}

fn cztb_k(p: &Params) -> Result<Vec<u32>> {
    let (k, r) = (p.int("k")?, p.int("r")? as usize);
    Ok(cat(&vec![2; r - 1], k))
}

fn cztb_weight(p: &Params) -> Result<u32> {
    Ok(wt(&cztb_k(p)?) as u32 + 2 * p.int("m")? + 1)
}

fn cztb_lhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    czt_lhs_of(&cztb_k(p)?, p.int("m")?, c)
}

fn cztb_rhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let (k, m, r) = (p.int("k")?, p.int("m")?, p.int("r")? as usize);
    let mut acc = Lin::new(c);
    for j in 1..k {
        let x = c.z(&cat(&vec![2; r - 1], k + 1 - j))? * t_ones_then(c, m, j)?;
        acc.add(sgn(j as i64 - 1) << j, x);
    }
    // The printed ζ★_n(j, {2}_{l−1}) has no j in scope; it is j = 1.
    for l in 1..=r {
        let x = c.z(&vec![2; r - l])? * tn_star(c, k + 1, m, front(1, &vec![2; l - 1]))?;
        acc.add(sgn((l as u32 + k) as i64), x);
    }
    Ok(acc.total())
}

// ------------------------------------------------------ level-two values

fn kl(p: &Params) -> Result<(u32, u32)> {
    Ok((p.int("k")?, p.int("l")?))
}

fn s2t_weight(p: &Params) -> Result<u32> {
    let (k, l) = kl(p)?;
    Ok(k + l + 1)
}

fn s2t_lhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let (k, l) = kl(p)?;
    let coef = sgn(l as i64) - sgn(k as i64);
    Ok(big_s_value(&Composition::from_slice(&[1, k + l]), &c.cfg)?.scale_int(coef))
}

fn s2t_rhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let (k, l) = kl(p)?;
    let mut acc = Lin::new(c);
    for j in 1..=l {
        acc.add(sgn(j as i64 - 1), c.t_reg(&[l + 1 - j])? * c.t_reg(&[k + j])?);
    }
    for j in 1..=k {
        acc.add(sgn(j as i64), c.t_reg(&[k + 1 - j])? * c.t_reg(&[l + j])?);
    }
    Ok(acc.total())
}

fn tt_weight(p: &Params) -> Result<u32> {
    Ok(k1k2l_weight(p)? + 1)
}

fn tt2_lhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let (k1, k2, l) = k1k2l(p)?;
    let conv = conv_t(
        &Composition::from_slice(&[k1, k2]),
        &Composition::from_slice(&[1, l]),
        ConvCase::EvenEven,
        &c.cfg,
    )?;
    let mut acc = Lin::new(c);
    acc.add(sgn(l as i64 - 1), conv);
    acc.add(sgn((k1 + k2) as i64 - 1), c.t(&[1, k1, k2 + l])?);
    Ok(acc.total())
}

fn tt2_rhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let (k1, k2, l) = k1k2l(p)?;
    let mut acc = Lin::new(c);
    for j in 1..k2 {
        acc.add(sgn(j as i64 - 1), c.t(&[k1, k2 + 1 - j])? * c.t(&[l + j])?);
    }
    for j in 1..l {
        acc.add(-sgn(j as i64 - 1), c.t(&[l + 1 - j])? * c.t(&[k1, k2 + j])?);
    }
    for j in 1..k1 {
        let s = big_s_value(&Composition::from_slice(&[j, k2 + l]), &c.cfg)?;
        acc.add(-sgn(k2 as i64) * sgn(j as i64 - 1), c.t(&[k1 + 1 - j])? * s);
    }
    let (a, _) = int_a_with_one(&[k1], &c.cfg)?;
    acc.add(-sgn(k2 as i64), c.t(&[k2 + l])? * a);
    Ok(acc.total())
}

fn k1k2l1l2(p: &Params) -> Result<(u32, u32, u32, u32)> {
    Ok((p.int("k1")?, p.int("k2")?, p.int("l1")?, p.int("l2")?))
}

fn tt3_weight(p: &Params) -> Result<u32> {
    let (a, b, x, y) = k1k2l1l2(p)?;
    Ok(a + b + x + y + 1)
}

fn conv(c: &Ctx, k: &[u32], l: &[u32]) -> Result<ApproxReal> {
    let (k, l) = (Composition::from_slice(k), Composition::from_slice(l));
    conv_t(&k, &l, ConvCase::of(&k, &l), &c.cfg)
}

fn tt3_lhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let (k1, k2, l1, l2) = k1k2l1l2(p)?;
    let mut acc = Lin::new(c);
    acc.add(sgn((k1 + k2) as i64), conv(c, &[l1, l2], &[1, k1, k2])?);
    acc.add(-sgn((l1 + l2) as i64), conv(c, &[k1, k2], &[1, l1, l2])?);
    Ok(acc.total())
}

fn tt3_rhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let (k1, k2, l1, l2) = k1k2l1l2(p)?;
    let mut acc = Lin::new(c);
    for j in 1..k2 {
        acc.add(sgn(j as i64), c.t(&[k1, k2 + 1 - j])? * c.t(&[l1, l2 + j])?);
    }
    for j in 1..l2 {
        acc.add(-sgn(j as i64), c.t(&[l1, l2 + 1 - j])? * c.t(&[k1, k2 + j])?);
    }
    for j in 1..=k1 {
        acc.add(-sgn(k2 as i64) * sgn(j as i64), c.t_reg(&[k1 + 1 - j])? * conv(c, &[l1, l2], &[j, k2])?);
    }
    for j in 1..=l1 {
        acc.add(sgn(l2 as i64) * sgn(j as i64), c.t_reg(&[l1 + 1 - j])? * conv(c, &[k1, k2], &[j, l2])?);
    }
    Ok(acc.total())
}

// ------------------------------------------------------- alternating

fn kl_signs(p: &Params) -> Result<(u32, u32, i8, i8)> {
    Ok((p.int("k")?, p.int("l")?, p.sign("sigma")?, p.sign("eps")?))
}

fn alt1_lhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let (k, l, s, e) = kl_signs(p)?;
    let mut acc = Lin::new(c);
    acc.add(sgn(k as i64), c.li(&[1, k + l], &[s, s * e], true)?);
    acc.add(-sgn(l as i64), c.li(&[1, k + l], &[e, s * e], true)?);
    Ok(acc.total())
}

fn alt1_rhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let (k, l, s, e) = kl_signs(p)?;
    let lam = |a: u32, x: i8| c.lam(&[a], &[x]);
    let mut acc = Lin::new(c);
    for j in 1..k {
        acc.add(sgn(j as i64 - 1), lam(k + 1 - j, s)? * lam(l + j, e)?);
    }
    for j in 1..l {
        acc.add(-sgn(j as i64 - 1), lam(l + 1 - j, e)? * lam(k + j, s)?);
    }
    if e != 1 {
        acc.add(sgn(l as i64), lam(1, e)? * (lam(k + l, s)? - lam(k + l, s * e)?));
    }
    if s != 1 {
        acc.add(-sgn(k as i64), lam(1, s)? * (lam(k + l, e)? - lam(k + l, s * e)?));
    }
    Ok(acc.total())
}

struct C7 {
    k1: u32,
    k2: u32,
    l: u32,
    s1: i8,
    s2: i8,
    e: i8,
}

fn c7_params(p: &Params) -> Result<C7> {
    Ok(C7 {
        k1: p.int("k1")?,
        k2: p.int("k2")?,
        l: p.int("l")?,
        s1: p.sign("sigma1")?,
        s2: p.sign("sigma2")?,
        e: p.sign("eps")?,
    })
}

fn c7_weight(p: &Params) -> Result<u32> {
    let q = c7_params(p)?;
    Ok(q.k1 + q.k2 + q.l + 1)
}

/// Terms shared by the alternating depth-two relation and its corollary:
/// everything on the λ side, with the corollary's sign flip applied by the caller.
fn c7_lambda_side(q: &C7, c: &Ctx) -> Result<ApproxReal> {
    let C7 { k1, k2, l, s1, s2, e } = *q;
    let lam1 = |a: u32, x: i8| c.lam(&[a], &[x]);
    let mut acc = Lin::new(c);
    for j in 1..k2 {
        acc.add(sgn(j as i64 - 1), c.lam(&[k1, k2 + 1 - j], &[s1, s2])? * lam1(l + j, e)?);
    }
    for j in 1..k1 {
        let x = lam1(k1 + 1 - j, s1)? * c.li(&[j, k2 + l], &[s2, e * s2], true)?;
        acc.add(-sgn(k2 as i64) * sgn(j as i64 - 1), x);
    }
    // The printed λ_{k2} here is λ_{k2+l}: it comes from Σ_n ((εσ2)^n − ε^n)/n^{k2+l}.
    if s2 != 1 {
        let d = lam1(k2 + l, e)? - lam1(k2 + l, e * s2)?;
        acc.add(-sgn(k2 as i64), c.lam(&[k1, 1], &[s1, s2])? * d);
    }
    acc.add(sgn((k1 + k2) as i64), c.li(&[1, k1, k2 + l], &[s1, s2 * s1, s2 * e], true)?);
    if s1 != 1 {
        let d = c.li(&[k1, k2 + l], &[s2, e * s2], true)? - c.li(&[k1, k2 + l], &[s2 * s1, e * s2], true)?;
        acc.add(sgn((k1 + k2) as i64), lam1(1, s1)? * d);
    }
    Ok(acc.total())
}

fn c7_lhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let q = c7_params(p)?;
    let C7 { k1, k2, l, s1, s2, e } = q;
    let mut acc = Lin::new(c);
    for j in 1..l {
        acc.add(sgn(j as i64 - 1), c.lam(&[l + 1 - j], &[e])? * c.li(&[k1, k2 + j], &[s1 * s2, s2], false)?);
    }
    let ky = alt_ky(&Composition::signed(&[k1, k2], &[s1 * s2, s2]), &Composition::signed(&[1, l], &[e, e]), &c.cfg)?;
    acc.add(-sgn(l as i64), ky);
    if e != 1 {
        let d = c.li(&[k1, k2 + l], &[s1 * s2, s2], false)? - c.li(&[k1, k2 + l], &[s1 * s2, s2 * e], false)?;
        acc.add(-sgn(l as i64), c.lam(&[1], &[e])? * d);
    }
    Ok(acc.total())
}

fn c7_rhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    c7_lambda_side(&c7_params(p)?, c)
}

fn c8_lhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let C7 { k1, k2, l, s1, s2, e } = c7_params(p)?;
    let mut acc = Lin::new(c);
    acc.add(sgn(l as i64), c.li(&[k1, 1, k2 + l], &[s1 * s2, e, s2 * e], true)?);
    acc.add(sgn(l as i64), c.li(&[1, k1, k2 + l], &[e, s1 * s2, s2 * e], true)?);
    acc.add(sgn((k1 + k2) as i64), c.li(&[1, k1, k2 + l], &[s1, s2 * s1, s2 * e], true)?);
    Ok(acc.total())
}

fn c8_rhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let C7 { k1, k2, l, s1, s2, e } = c7_params(p)?;
    let lam1 = |a: u32, x: i8| c.lam(&[a], &[x]);
    let mut acc = Lin::new(c);
    for j in 1..k2 {
        acc.add(sgn(j as i64), c.lam(&[k1, k2 + 1 - j], &[s1, s2])? * lam1(l + j, e)?);
    }
    for j in 1..k1 {
        let x = lam1(k1 + 1 - j, s1)? * c.li(&[j, k2 + l], &[s2, e * s2], true)?;
        acc.add(-sgn(k2 as i64) * sgn(j as i64), x);
    }
    for j in 1..l {
        acc.add(-sgn(j as i64), lam1(l + 1 - j, e)? * c.li(&[k1, k2 + j], &[s1 * s2, s2], false)?);
    }
    if s2 != 1 {
        let d = lam1(k2 + l, e)? - lam1(k2 + l, e * s2)?;
        acc.add(sgn(k2 as i64), c.lam(&[k1, 1], &[s1, s2])? * d);
    }
    if s1 != 1 {
        let d = c.li(&[k1, k2 + l], &[s2, e * s2], true)? - c.li(&[k1, k2 + l], &[s2 * s1, e * s2], true)?;
        acc.add(-sgn((k1 + k2) as i64), lam1(1, s1)? * d);
    }
    if e != 1 {
        let d = c.li(&[k1, k2 + l], &[s1 * s2, s2], false)? - c.li(&[k1, k2 + l], &[s1 * s2, s2 * e], false)?;
        acc.add(-sgn(l as i64), lam1(1, e)? * d);
    }
    acc.add(sgn(l as i64), c.li(&[k1 + 1, k2 + l], &[s1 * s2 * e, s2 * e], true)?);
    acc.add(sgn(l as i64), c.li(&[1, k1 + k2 + l], &[e, s1 * e], true)?);
    Ok(acc.total())
}

fn alt_num_lhs(_: &Params, c: &Ctx) -> Result<ApproxReal> {
    let a = zeta_star(&Composition::signed(&[2, 1, 4], &[-1, -1, -1]), &c.cfg)?;
    let b = zeta_star(&Composition::signed(&[1, 2, 4], &[-1, -1, -1]), &c.cfg)?;
    Ok(a + b.scale_int(2))
}

fn alt_num_rhs(_: &Params, c: &Ctx) -> Result<ApproxReal> {
    let bits = c.bits();
    let li4 = li_single(&Composition::from_slice(&[4]), 0.5, &c.cfg)?;
    let pi = ApproxReal::pi(bits);
    let (z3, z5, z7) = (ApproxReal::riemann_zeta(bits, 3), ApproxReal::riemann_zeta(bits, 5), ApproxReal::riemann_zeta(bits, 7));
    let lg = ApproxReal::log2(bits);
    let q = |a: i64, b: i64| Rational::from((a, b));
    let mut acc = Lin::new(c);
    acc.addq(&q(3, 1), &li4 * &z3);
    acc.addq(&q(-7, 128), &pi.pow(4) * &z3);
    acc.addq(&q(61, 192), &pi.pow(2) * &z5);
    acc.addq(&q(-105, 128), z7);
    acc.addq(&q(1, 8), &z3 * &lg.pow(4));
    acc.addq(&q(-1, 8), &(&pi.pow(2) * &z3) * &lg.pow(2));
    acc.addq(&q(63, 16), &z3.pow(2) * &lg);
    acc.addq(&q(-61, 10080), &pi.pow(6) * &lg);
    Ok(acc.total())
}

fn s1s2(p: &Params) -> Result<(i8, i8)> {
    Ok((p.sign("sigma1")?, p.sign("sigma2")?))
}

fn poset522_lhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let (s1, s2) = s1s2(p)?;
    let (a, b) = (s1 * s2, s2);
    let mut acc = Lin::new(c);
    acc.add(2, c.lam(&[1, 1, 3], &[a, b, 1])?);
    acc.add(2, c.lam(&[1, 1, 3], &[a, 1, b])?);
    acc.add(2, c.lam(&[1, 1, 3], &[1, a, b])?);
    acc.add(1, c.lam(&[1, 2, 2], &[a, 1, b])?);
    acc.add(1, c.lam(&[1, 2, 2], &[1, a, b])?);
    acc.add(1, c.lam(&[2, 1, 2], &[1, a, b])?);
    Ok(acc.total())
}

fn poset522_rhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let (s1, s2) = s1s2(p)?;
    let mut acc = Lin::new(c);
    acc.add(1, c.zs(&[2, 1, 2], &[1, s1, s2])?);
    acc.add(1, c.zs(&[1, 2, 2], &[s1, 1, s2])?);
    acc.add(1, c.zs(&[3, 2], &[s1, s2])?);
    acc.add(1, c.zs(&[1, 4], &[s1, s2])?);
    Ok(acc.total())
}

// -------------------------------------------------- poset dualities

fn dual_weight(p: &Params) -> Result<u32> {
    Ok(kl_weight(p)? + p.int("p")?)
}

fn dual_lhs(p: &Params, c: &Ctx, level: PosetLevel) -> Result<ApproxReal> {
    let (k, l, n) = (p.comp("k")?, p.comp("l")?, p.int("p")?);
    let i = |a: &Composition, b: &Composition| -> Result<ApproxReal> {
        Ok(evaluate_poset(&product_poset(a, b, level)?, &c.cfg)?.value)
    };
    let mut acc = Lin::new(c);
    acc.add(1, i(&k.bump_last(n - 1), &l)?);
    acc.add(sgn(n as i64), i(&k, &l.bump_last(n - 1))?);
    Ok(acc.total())
}

fn dual_rhs(p: &Params, c: &Ctx, v: fn(&Composition, &SeriesConfig) -> Result<ApproxReal>) -> Result<ApproxReal> {
    let (k, l, n) = (p.comp("k")?, p.comp("l")?, p.int("p")?);
    let mut acc = Lin::new(c);
    for j in 1..n {
        acc.add(sgn(j as i64 - 1), v(&k.bump_last(n - j), &c.cfg)? * v(&l.bump_last(j), &c.cfg)?);
    }
    Ok(acc.total())
}

fn dual_l_lhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    dual_lhs(p, c, PosetLevel::One)
}

fn dual_l_rhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    dual_rhs(p, c, zeta)
}

fn dual_a_lhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    dual_lhs(p, c, PosetLevel::Two)
}

fn dual_a_rhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    dual_rhs(p, c, big_t_value)
}

fn rsp(p: &Params) -> Result<(usize, usize, u32)> {
    Ok((p.int("r")? as usize, p.int("s")? as usize, p.int("p")?))
}

fn rsp_weight(p: &Params) -> Result<u32> {
    let (r, s, n) = rsp(p)?;
    Ok(r as u32 + s as u32 + n)
}

fn ones_then(r: usize, last: u32) -> Composition {
    ones(r - 1).pushed(last, 1)
}

fn xi_dual_lhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let (r, s, n) = rsp(p)?;
    let mut acc = Lin::new(c);
    acc.add(1, xi_value(&ones_then(r, n), s + 1, &c.cfg)?);
    acc.add(sgn(n as i64), xi_value(&ones_then(s, n), r + 1, &c.cfg)?);
    Ok(acc.total())
}

fn psi_dual_lhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let (r, s, n) = rsp(p)?;
    let mut acc = Lin::new(c);
    acc.add(1, psi_value(&ones_then(r, n), s + 1, &c.cfg)?);
    acc.add(sgn(n as i64), psi_value(&ones_then(s, n), r + 1, &c.cfg)?);
    Ok(acc.total())
}

fn ones_dual_rhs(p: &Params, c: &Ctx, v: fn(&Composition, &SeriesConfig) -> Result<ApproxReal>) -> Result<ApproxReal> {
    let (r, s, n) = rsp(p)?;
    let mut acc = Lin::new(c);
    for j in 0..n.saturating_sub(1) {
        let a = v(&ones_then(r, n - j), &c.cfg)?;
        let b = v(&ones(j as usize).pushed(s as u32 + 1, 1), &c.cfg)?;
        acc.add(sgn(j as i64), a * b);
    }
    Ok(acc.total())
}

fn xi_dual_rhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    ones_dual_rhs(p, c, zeta)
}

fn psi_dual_rhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    ones_dual_rhs(p, c, big_t_value)
}

// ------------------------------------------------------ t and L values

fn t_final_lhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let (k1, k2, l) = k1k2l(p)?;
    let lv = |k: &[u32]| l_value(&Composition::from_slice(k), &c.cfg);
    let ts = |k: &[u32]| t_star_value(&Composition::from_slice(k), &c.cfg);
    let mut acc = Lin::new(c);
    for j in 1..k2 {
        acc.add(sgn(j as i64 - 1), lv(&[k1, k2 + 1 - j])? * c.t(&[l + j])?);
    }
    let tail = tail_integral(TailKind::L, &Composition::from_slice(&[k1]), 2, &c.cfg)?.value;
    acc.add(sgn(k2 as i64), c.t(&[k2 + l])? * tail);
    for j in 1..k1 {
        acc.add(-2 * sgn(k2 as i64) * sgn(j as i64 - 1), lv(&[k1 + 1 - j])? * ts(&[j, k2 + l])?);
    }
    acc.add(-2 * sgn((k1 + k2) as i64), ApproxReal::log2(c.bits()) * ts(&[k1, k2 + l])?);
    acc.add(2 * sgn((k1 + k2) as i64), ts(&[1, k1, k2 + l])?);
    Ok(acc.total())
}

fn t_final_rhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let (k1, k2, l) = k1k2l(p)?;
    let mut acc = Lin::new(c);
    for j in 1..l {
        let q = pow2(-((k1 + k2 + j) as i32)) * sgn(j as i64 - 1);
        acc.addq(&q, c.t(&[l + 1 - j])? * c.z(&[k1, k2 + j])?);
    }
    let s = c.outer(
        k2 + l,
        &[
            (HarmonicFamily::Zeta, Composition::from_slice(&[k1]), Trunc::BeforeN),
            (HarmonicFamily::T, ones(1), Trunc::AtN),
        ],
    )?;
    acc.addq(&(pow2(-((k1 + k2 + l) as i32)) * -sgn(l as i64)), s);
    Ok(acc.total())
}

fn r_weight(p: &Params) -> Result<u32> {
    p.int("r")
}

fn l1111_lhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    l_ones_over_x2(p.int("r")? as usize, c.bits())
}

fn l1111_rhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    termwise_integral(&Termwise::L(ones(p.int("r")? as usize)), -2, &c.cfg)
}

fn aones_lhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    int_a_ones(p.int("r")?, c.bits())
}

/// Quadrature of 2^{−r} A({1}_r; x) = artanh(x)^r / r!.
fn aones_rhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let r = p.int("r")?;
    let prec = c.bits() + 32;
    let fact = (1..=r).fold(Float::with_val(prec, 1), |a, i| a * i);
    c.quad(|x, omx| {
        let opx = Float::with_val(prec, 1 + x);
        let at = (opx.ln() - Float::with_val(prec, omx.ln_ref())) / 2u32;
        at.pow(r) / &fact
    })
}

fn corii_case(p: &Params) -> Result<(u64, u32, LogCase)> {
    Ok((p.int("n")? as u64, p.int("m")?, LogCase::parse(p.get("case")?)?))
}

fn corii_weight(p: &Params) -> Result<u32> {
    let (n, m, w) = corii_case(p)?;
    Ok(w.exponents(n, m).1)
}

fn corii_lhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let (n, m, w) = corii_case(p)?;
    cor_ii_integral(n, m, w, c.bits())
}

fn corii_rhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let (n, m, w) = corii_case(p)?;
    let (a, b) = w.exponents(n, m);
    let prec = c.bits() + 32;
    c.quad(|x, omx| {
        let lg = Float::with_val(prec, omx.ln_ref()) - Float::with_val(prec, 1 + x).ln();
        lg.pow(b) * Float::with_val(prec, x).pow(a as u32)
    })
}

fn a1_weight(p: &Params) -> Result<u32> {
    Ok(p.comp("k")?.weight())
}

fn a1_lhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    int_xn_li_closed(&p.comp("k")?, p.int("n")? as u64, &c.cfg)
}

fn a1_rhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    termwise_integral(&Termwise::Li(p.comp("k")?), p.int("n")? as i64 - 1, &c.cfg)
}

fn cor_i2_lhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    cor_i2_closed(p.int("r")?, p.int("n")? as u64, c.bits())
}

fn cor_i2_rhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let (r, n) = (p.int("r")?, p.int("n")?);
    let prec = c.bits() + 32;
    c.quad(|x, omx| Float::with_val(prec, omx.ln_ref()).pow(r) * Float::with_val(prec, x).pow(n - 1))
}

fn lt_case(p: &Params) -> Result<(TailKind, Composition, u32)> {
    let kind = match p.get("kind")? {
        "L" => TailKind::L,
        _ => TailKind::T,
    };
    Ok((kind, p.comp("k")?, p.int("n")?))
}

fn lt_weight(p: &Params) -> Result<u32> {
    Ok(p.comp("k")?.weight() + 1)
}

/// Only the closed cases: n = 2 in range, n = 0 for depth at most one.
fn lt_hypotheses(p: &Params) -> Result<()> {
    let (kind, k, n) = lt_case(p)?;
    let ok = match (n, kind) {
        (2, TailKind::L) => true,
        (2, TailKind::T) => !k.is_empty(),
        (0, TailKind::T) => k.depth() <= 1,
        (0, TailKind::L) => k.depth() == 1 && k.parts()[0] >= 2,
        _ => false,
    };
    if !ok {
        return Err(Error::Domain(format!("no closed formula for this tail integral (n={n}, k=({k}))")));
    }
    if k.depth() > 3 {
        return Err(Error::Domain("depth of k limited to 3".into()));
    }
    Ok(())
}

fn lt_lhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let (kind, k, n) = lt_case(p)?;
    Ok(tail_integral(kind, &k, n, &c.cfg)?.value)
}

fn lt_rhs(p: &Params, c: &Ctx) -> Result<ApproxReal> {
    let (kind, k, n) = lt_case(p)?;
    let f = k.pushed(1, 1);
    let f = match kind {
        TailKind::L => Termwise::L(f),
        TailKind::T => Termwise::T(f),
    };
    termwise_integral(&f, -(n as i64), &c.cfg)
}

const KL: &[ParamSpec] = &[comp("k"), comp("l")];
const K1K2L: &[ParamSpec] = &[int("k1", 1, None), int("k2", 1, None), int("l", 1, None)];
const C7P: &[ParamSpec] =
    &[int("k1", 1, None), int("k2", 1, None), int("l", 1, None), sign("sigma1"), sign("sigma2"), sign("eps")];
const DUALP: &[ParamSpec] = &[comp("k"), comp("l"), int("p", 1, None)];
const RSP: &[ParamSpec] = &[int("r", 1, None), int("s", 1, None), int("p", 1, None)];

static ENTRIES: &[Identity] = &[
    Identity {
        id: "KY-A2",
        title: "Kaneko-Yamamoto relation from the two expansions of I_L(k; l)",
        params: KL,
        default_params: "k=1,2; l=2",
        weight: kl_weight,
        hypotheses: no_extra,
        lhs: ky_a2_lhs,
        rhs: ky_a2_rhs,
    },
    Identity {
        id: "KY-A3",
        title: "Kaneko-Yamamoto relation for depths (2, 1)",
        params: K1K2L,
        default_params: "k1=1; k2=2; l=2",
        weight: k1k2l_weight,
        hypotheses: no_extra,
        lhs: ky_a3_lhs,
        rhs: ky_a3_rhs,
    },
    Identity {
        id: "KY-A4",
        title: "ζ★(1,k1,k2+l) and ζ★(k1,1,k2+l) in double zeta values",
        params: K1K2L,
        default_params: "k1=2; k2=2; l=1",
        weight: k1k2l_weight,
        hypotheses: no_extra,
        lhs: ky_a4_lhs,
        rhs: ky_a4_rhs,
    },
    Identity {
        id: "CZT",
        title: "T_n / S_n weighted sums against ζ(k) and T({1}_{2m-1}, j+1)",
        params: &[comp("k"), int("m", 1, Some(3))],
        default_params: "k=1,2; m=1",
        weight: czt_weight,
        hypotheses: no_extra,
        lhs: czt_lhs,
        rhs: czt_rhs,
    },
    Identity {
        id: "CZTB",
        title: "the weighted-sum relation at k = ({2}_{r-1}, k)",
        params: &[int("k", 1, None), int("m", 1, Some(3)), int("r", 1, None)],
        default_params: "k=2; m=1; r=2",
        weight: cztb_weight,
        hypotheses: no_extra,
        lhs: cztb_lhs,
        rhs: cztb_rhs,
    },
    Identity {
        id: "S2T",
        title: "((-1)^l - (-1)^k) S(1,k+l) as products of T values, T(1) := 2 log 2",
        params: &[int("k", 1, None), int("l", 1, None)],
        default_params: "k=1; l=2",
        weight: s2t_weight,
        hypotheses: no_extra,
        lhs: s2t_lhs,
        rhs: s2t_rhs,
    },
    Identity {
        id: "TT2",
        title: "T((k1,k2) ⊛ (1,l)) through I_A((k1,k2); (l))",
        params: K1K2L,
        default_params: "k1=1; k2=2; l=2",
        weight: tt_weight,
        hypotheses: no_extra,
        lhs: tt2_lhs,
        rhs: tt2_rhs,
    },
    Identity {
        id: "TT3",
        title: "T((l1,l2) ⊛ (1,k1,k2)) against T((k1,k2) ⊛ (1,l1,l2)), T(1) := 2 log 2",
        params: &[int("k1", 1, None), int("k2", 1, None), int("l1", 1, None), int("l2", 1, None)],
        default_params: "k1=1; k2=2; l1=2; l2=1",
        weight: tt3_weight,
        hypotheses: no_extra,
        lhs: tt3_lhs,
        rhs: tt3_rhs,
    },
    Identity {
        id: "ALT-DEPTH1",
        title: "alternating depth-one relation from I_λ((k;σ), (l;ε))",
        params: &[int("k", 1, None), int("l", 1, None), sign("sigma"), sign("eps")],
        default_params: "k=2; l=1; sigma=-1; eps=1",
        weight: s2t_weight,
        hypotheses: no_extra,
        lhs: alt1_lhs,
        rhs: alt1_rhs,
    },
    Identity {
        id: "ALT-C7",
        title: "alternating Kaneko-Yamamoto value ζ((k1,k2;σ1σ2,σ2) ⊛ (1,l;ε,ε)★)",
        params: C7P,
        default_params: "k1=1; k2=2; l=2; sigma1=-1; sigma2=1; eps=-1",
        weight: c7_weight,
        hypotheses: no_extra,
        lhs: c7_lhs,
        rhs: c7_rhs,
    },
    Identity {
        id: "ALT-C8",
        title: "star polylogarithms at ±1 in depth-two alternating relation",
        params: C7P,
        default_params: "k1=2; k2=2; l=2; sigma1=-1; sigma2=1; eps=-1",
        weight: c7_weight,
        hypotheses: no_extra,
        lhs: c8_lhs,
        rhs: c8_rhs,
    },
    Identity {
        id: "ALT-NUM",
        title: "ζ★(-2,-1,-4) + 2ζ★(-1,-2,-4) in Li4(1/2), π, ζ(3), ζ(5), ζ(7), log 2",
        params: &[],
        default_params: "",
        weight: |_| Ok(7),
        hypotheses: no_extra,
        lhs: alt_num_lhs,
        rhs: alt_num_rhs,
    },
    Identity {
        id: "DUAL-L",
        title: "I_L(k_{+(p-1)}; l) + (-1)^p I_L(k; l_{+(p-1)}) by the poset engine",
        params: DUALP,
        default_params: "k=1,2; l=1; p=3",
        weight: dual_weight,
        hypotheses: no_extra,
        lhs: dual_l_lhs,
        rhs: dual_l_rhs,
    },
    Identity {
        id: "DUAL-A",
        title: "I_A(k_{+(p-1)}; l) + (-1)^p I_A(k; l_{+(p-1)}) by the poset engine",
        params: DUALP,
        default_params: "k=1,2; l=1; p=3",
        weight: dual_weight,
        hypotheses: no_extra,
        lhs: dual_a_lhs,
        rhs: dual_a_rhs,
    },
    Identity {
        id: "XI-DUAL",
        title: "Arakawa-Kaneko duality ξ({1}_{r-1},p; s+1) + (-1)^p ξ({1}_{s-1},p; r+1)",
        params: RSP,
        default_params: "r=2; s=1; p=3",
        weight: rsp_weight,
        hypotheses: no_extra,
        lhs: xi_dual_lhs,
        rhs: xi_dual_rhs,
    },
    Identity {
        id: "PSI-DUAL",
        title: "Kaneko-Tsumura duality ψ({1}_{r-1},p; s+1) + (-1)^p ψ({1}_{s-1},p; r+1)",
        params: RSP,
        default_params: "r=2; s=1; p=3",
        weight: rsp_weight,
        hypotheses: no_extra,
        lhs: psi_dual_lhs,
        rhs: psi_dual_rhs,
    },
    Identity {
        id: "POSET-522",
        title: "weight-five alternating relation from the level-three zig-zag poset",
        params: &[sign("sigma1"), sign("sigma2")],
        default_params: "sigma1=1; sigma2=1",
        weight: |_| Ok(5),
        hypotheses: no_extra,
        lhs: poset522_lhs,
        rhs: poset522_rhs,
    },
    Identity {
        id: "T-FINAL",
        title: "L and t★ values against Σ ζ_{n-1}(k1) T_n(1) / n^{k2+l}",
        params: K1K2L,
        default_params: "k1=1; k2=2; l=2",
        weight: tt_weight,
        hypotheses: no_extra,
        lhs: t_final_lhs,
        rhs: t_final_rhs,
    },
    Identity {
        id: "L1111",
        title: "∫ L({1}_r; x)/x² dx from exp(Σ ζ(-n) u^n / n) against term-wise integration",
        params: &[int("r", 1, None)],
        default_params: "r=3",
        weight: r_weight,
        hypotheses: no_extra,
        lhs: l1111_lhs,
        rhs: l1111_rhs,
    },
    Identity {
        id: "AONES",
        title: "∫ 2^{-r} A({1}_r; x) dx = -2^{1-r} ζ(-r) against tanh-sinh quadrature",
        params: &[int("r", 1, None)],
        default_params: "r=3",
        weight: r_weight,
        hypotheses: no_extra,
        lhs: aones_lhs,
        rhs: aones_rhs,
    },
    Identity {
        id: "CORII",
        title: "∫ t^a log^b((1-t)/(1+t)) dt in ζ̄ and T_n, S_n against quadrature",
        params: &[int("n", 1, Some(3)), int("m", 1, Some(3)), ParamSpec { name: "case", kind: ParamKind::Choice(&["ee", "eo", "oe", "oo"]) }],
        default_params: "n=1; m=1; case=ee",
        weight: corii_weight,
        hypotheses: no_extra,
        lhs: corii_lhs,
        rhs: corii_rhs,
    },
    Identity {
        id: "A1",
        title: "∫ x^{n-1} Li_k(x) dx closed form against term-wise integration",
        params: &[comp("k"), int("n", 1, Some(4))],
        default_params: "k=1,2; n=2",
        weight: a1_weight,
        hypotheses: no_extra,
        lhs: a1_lhs,
        rhs: a1_rhs,
    },
    Identity {
        id: "COR-I2",
        title: "∫ x^{n-1} log^r(1-x) dx = (-1)^r r! ζ★_n({1}_r)/n against quadrature",
        params: &[int("r", 1, None), int("n", 1, Some(3))],
        default_params: "r=2; n=3",
        weight: r_weight,
        hypotheses: no_extra,
        lhs: cor_i2_lhs,
        rhs: cor_i2_rhs,
    },
    Identity {
        id: "LT-INT",
        title: "∫ L(k,1; x)/x^n and ∫ t(k,1; x)/x^n (n = 0, 2) against term-wise integration",
        params: &[
            ParamSpec { name: "kind", kind: ParamKind::Choice(&["L", "t"]) },
            ParamSpec { name: "k", kind: ParamKind::CompOrEmpty },
            ParamSpec { name: "n", kind: ParamKind::Choice(&["0", "2"]) },
        ],
        default_params: "kind=t; k=1; n=0",
        weight: lt_weight,
        hypotheses: lt_hypotheses,
        lhs: lt_lhs,
        rhs: lt_rhs,
    },
];
