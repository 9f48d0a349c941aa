//! Brute-force oracles and random inputs shared by the integration tests.
#![allow(dead_code)]

use mzv_core::harmonic::{HarmonicFamily, PrefixTable};
use mzv_core::poset::{LabeledPoset, PosetLevel, WordCounts};
use mzv_core::Composition;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rug::ops::Pow;
use rug::Rational;

/// All tuples 1 <= n_1..n_p <= n satisfying `ok`.
pub fn tuples(p: usize, n: u64, ok: &dyn Fn(&[u64]) -> bool) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![1u64; p];
    if p == 0 {
        return vec![vec![]];
    }
    loop {
        if ok(&cur) {
            out.push(cur.clone());
        }
        let mut i = 0;
        loop {
            if i == p {
                return out;
            }
            cur[i] += 1;
            if cur[i] <= n {
                break;
            }
            cur[i] = 1;
            i += 1;
        }
    }
}

pub fn sum_over(k: &[u32], ts: &[Vec<u64>], den: &dyn Fn(usize, u64) -> u64, sign: &dyn Fn(usize, u64) -> i64) -> Rational {
    let mut acc = Rational::new();
    for t in ts {
        let mut term = Rational::from(1);
        for (j, &nj) in t.iter().enumerate() {
            let d = rug::Integer::from(den(j, nj)).pow(k[j]);
            term *= Rational::from((sign(j, nj), d));
        }
        acc += term;
    }
    acc
}

/// Literal D_{n,p}: n_1 <= n_2 < n_3 <= n_4 < ... with the top bound
/// n_p <= n for odd p and n_p < n for even p.
pub fn brute_t(k: &[u32], n: u64) -> Rational {
    let p = k.len();
    let ok = |t: &[u64]| {
        for j in 0..p.saturating_sub(1) {
            let weak = j % 2 == 0; // position j+1 odd: n_{j+1} <= n_{j+2}
            if (weak && t[j] > t[j + 1]) || (!weak && t[j] >= t[j + 1]) {
                return false;
            }
        }
        p == 0 || if p % 2 == 1 { t[p - 1] <= n } else { t[p - 1] < n }
    };
    let ts = tuples(p, n, &ok);
    let den = |j: usize, nj: u64| if j % 2 == 0 { 2 * nj - 1 } else { 2 * nj };
    sum_over(k, &ts, &den, &|_, _| 1) * Rational::from(rug::Integer::from(1) << p as u32)
}

/// Literal E_{n,p}: 1 <= n_1 < n_2 <= n_3 < ... with the top bound
/// n_p < n for odd p and n_p <= n for even p.
pub fn brute_s(k: &[u32], n: u64) -> Rational {
    let p = k.len();
    let ok = |t: &[u64]| {
        for j in 0..p.saturating_sub(1) {
            let strict = j % 2 == 0;
            if (strict && t[j] >= t[j + 1]) || (!strict && t[j] > t[j + 1]) {
                return false;
            }
        }
        p == 0 || if p % 2 == 1 { t[p - 1] < n } else { t[p - 1] <= n }
    };
    let ts = tuples(p, n, &ok);
    let den = |j: usize, nj: u64| if j % 2 == 0 { 2 * nj } else { 2 * nj - 1 };
    sum_over(k, &ts, &den, &|_, _| 1) * Rational::from(rug::Integer::from(1) << p as u32)
}

pub fn chain_ok(t: &[u64], weak: bool) -> bool {
    t.windows(2).all(|w| if weak { w[0] <= w[1] } else { w[0] < w[1] })
}

pub fn brute_chain(k: &[u32], signs: &[i8], n: u64, weak: bool, den: &dyn Fn(usize, u64) -> u64, lo: u64) -> Rational {
    let ts = tuples(k.len(), n, &|t: &[u64]| chain_ok(t, weak) && t.iter().all(|&v| v >= lo));
    let sign = |j: usize, nj: u64| if signs[j] < 0 && nj % 2 == 1 { -1 } else { 1 };
    sum_over(k, &ts, den, &sign)
}

pub fn brute_s_star(k: &[u32], n: u64) -> Rational {
    let ts = tuples(k.len(), n, &|t: &[u64]| chain_ok(t, true) && t.iter().all(|&v| v >= 2));
    let den = |j: usize, nj: u64| if j == 0 { 2 * nj - 2 } else { 2 * nj - 1 };
    sum_over(k, &ts, &den, &|_, _| 1)
}

pub fn check_all(parts: &[u32], signs: &[i8]) {
    let n_max = 12;
    let k = Composition::with_signs(parts.to_vec(), signs.to_vec()).unwrap();
    let ku = k.unsigned();
    let ident = |_: usize, v: u64| v;
    let odd = |_: usize, v: u64| 2 * v - 1;
    let plus = vec![1i8; parts.len()];
    let tables = [
        (HarmonicFamily::Zeta, PrefixTable::build(HarmonicFamily::Zeta, &k, n_max).unwrap()),
        (HarmonicFamily::ZetaStar, PrefixTable::build(HarmonicFamily::ZetaStar, &k, n_max).unwrap()),
        (HarmonicFamily::T, PrefixTable::build(HarmonicFamily::T, &ku, n_max).unwrap()),
        (HarmonicFamily::S, PrefixTable::build(HarmonicFamily::S, &ku, n_max).unwrap()),
        (HarmonicFamily::SmallT, PrefixTable::build(HarmonicFamily::SmallT, &ku, n_max).unwrap()),
        (HarmonicFamily::SmallTStar, PrefixTable::build(HarmonicFamily::SmallTStar, &ku, n_max).unwrap()),
        (HarmonicFamily::HatTStar, PrefixTable::build(HarmonicFamily::HatTStar, &ku, n_max).unwrap()),
        (HarmonicFamily::SStar, PrefixTable::build(HarmonicFamily::SStar, &ku, n_max).unwrap()),
    ];
    for n in 1..=n_max {
        for (fam, table) in &tables {
            let expect = match fam {
                HarmonicFamily::Zeta => brute_chain(parts, signs, n, false, &ident, 1),
                HarmonicFamily::ZetaStar => brute_chain(parts, signs, n, true, &ident, 1),
                HarmonicFamily::T => brute_t(parts, n),
                HarmonicFamily::S => brute_s(parts, n),
                HarmonicFamily::SmallT => brute_chain(parts, &plus, n, false, &odd, 1),
                HarmonicFamily::SmallTStar => brute_chain(parts, &plus, n, true, &odd, 1),
                HarmonicFamily::HatTStar => brute_chain(parts, &plus, n, true, &odd, 2),
                HarmonicFamily::SStar => brute_s_star(parts, n),
                HarmonicFamily::Mixed => unreachable!(),
            };
            assert_eq!(table.at(n), &expect, "{fam:?} k={k} n={n}");
        }
    }
}

/// Random admissible poset with at least one incomparable pair.
pub fn random_poset(rng: &mut ChaCha8Rng, max_nodes: usize) -> LabeledPoset {
    loop {
        let n = rng.gen_range(3..=max_nodes);
        let level = *[PosetLevel::One, PosetLevel::Two, PosetLevel::Three].choose(rng).unwrap();
        let mut covers = Vec::new();
        for j in 1..n {
            for i in 0..j {
                if rng.gen_bool(0.3) {
                    covers.push((i, j));
                }
            }
        }
        let labels: Vec<i8> = (0..n)
            .map(|_| match level {
                PosetLevel::Three => rng.gen_range(-1..=1),
                _ => rng.gen_range(0..=1),
            })
            .collect();
        let ids = (0..n).map(|i| format!("v{i}")).collect();
        let x = LabeledPoset::new(level, ids, labels, covers).unwrap();
        if x.is_admissible() && !x.incomparable_pairs().is_empty() {
            return x;
        }
    }
}

pub fn merged(a: &WordCounts, b: &WordCounts) -> WordCounts {
    let mut out = a.clone();
    for (w, c) in b {
        *out.entry(w.clone()).or_insert(0) += c;
    }
    out
}
