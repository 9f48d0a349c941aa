//! Prefix tables against literal enumeration of the defining index sets.

mod common;

use common::check_all;
use mzv_core::harmonic::*;
use mzv_core::Composition;
use proptest::prelude::*;
use rug::Rational;

#[test]
fn exhaustive_small_compositions() {
    // Every composition with depth <= 4 and parts <= 2, plus mixed signs.
    for depth in 1..=4usize {
        for code in 0..(1u32 << depth) {
            let parts: Vec<u32> = (0..depth).map(|j| 1 + ((code >> j) & 1)).collect();
            let signs: Vec<i8> = (0..depth).map(|j| if (code >> ((j + 1) % depth)) & 1 == 1 { -1 } else { 1 }).collect();
            check_all(&parts, &signs);
        }
    }
}

#[test]
fn convention_zero_cases() {
    // T_n(k_{2m-1}) = 0 for n < m and T_n(k_{2m}) = 0 for n <= m; S_n zero
    // for n <= m in both parities.
    for m in 1..=3u64 {
        let odd = Composition::repeat(1, (2 * m - 1) as usize);
        let even = Composition::repeat(1, (2 * m) as usize);
        for n in 1..=6u64 {
            assert_eq!(mths_t(&odd, n).unwrap() == 0, n < m, "T odd m={m} n={n}");
            assert_eq!(mths_t(&even, n).unwrap() == 0, n <= m, "T even m={m} n={n}");
            assert_eq!(mshs_s(&odd, n).unwrap() == 0, n <= m, "S odd m={m} n={n}");
            assert_eq!(mshs_s(&even, n).unwrap() == 0, n <= m, "S even m={m} n={n}");
        }
    }
    assert_eq!(mths_t(&Composition::empty(), 3).unwrap(), 1);
    assert_eq!(mshs_s(&Composition::empty(), 3).unwrap(), 1);
}

proptest! {
    #[test]
    fn star_inclusion_exclusion(a in 1u32..=4, b in 1u32..=4) {
        let ab = PrefixTable::build(HarmonicFamily::ZetaStar, &Composition::from_slice(&[a, b]), 50).unwrap();
        let strict = PrefixTable::build(HarmonicFamily::Zeta, &Composition::from_slice(&[a, b]), 50).unwrap();
        let merged = PrefixTable::build(HarmonicFamily::Zeta, &Composition::from_slice(&[a + b]), 50).unwrap();
        for n in 0..=50u64 {
            let rhs = Rational::from(strict.at(n) + merged.at(n));
            prop_assert_eq!(ab.at(n), &rhs);
        }
    }

    #[test]
    fn monotone_for_positive_summands(parts in prop::collection::vec(1u32..4, 1..4)) {
        let k = Composition::from_slice(&parts);
        for fam in [HarmonicFamily::Zeta, HarmonicFamily::ZetaStar, HarmonicFamily::T, HarmonicFamily::S,
                    HarmonicFamily::SmallT, HarmonicFamily::SmallTStar, HarmonicFamily::HatTStar, HarmonicFamily::SStar] {
            let t = PrefixTable::build(fam, &k, 20).unwrap();
            for w in t.values.windows(2) {
                prop_assert!(w[0] <= w[1]);
            }
        }
    }
}
