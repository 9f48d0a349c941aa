use mzv_core::convolution::{
    allowable_path_check, conv_partial, ky_partial, schur_truncated, ConvCase, ConvKind, SchurDiagramModN,
};
use mzv_core::Composition;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(s: &str) -> Composition {
    s.parse().unwrap()
}

const BOUND: u32 = 50;

#[test]
fn ky_anti_hooks_exact_for_all_bounds() {
    for (k, l) in [("2", "2"), ("1,2", "1"), ("1,2", "2,1"), ("2,1,1", "3"), ("1", "1,1,2")] {
        let (k, l) = (c(k), c(l));
        let d = SchurDiagramModN::ky(&k, &l).unwrap();
        for b in 1..=BOUND {
            assert_eq!(schur_truncated(&d, b).unwrap(), ky_partial(&k, &l, b as u64).unwrap(), "{k} {l} B={b}");
        }
    }
}

#[test]
fn conv_anti_hooks_exact_for_all_bounds() {
    let cases = [
        (ConvKind::T, "1,2", "1,2", ConvCase::EvenEven),
        (ConvKind::T, "2", "3", ConvCase::OddOdd),
        (ConvKind::T, "1,1,2", "2", ConvCase::OddOdd),
        (ConvKind::T, "1,2", "2", ConvCase::EvenOdd),
        (ConvKind::T, "3", "1,1", ConvCase::OddEven),
        (ConvKind::S, "1,2", "2,1", ConvCase::EvenEven),
        (ConvKind::S, "2", "1,1,1", ConvCase::OddOdd),
    ];
    for (kind, k, l, case) in cases {
        let (k, l) = (c(k), c(l));
        let d = SchurDiagramModN::conv(kind, &k, &l, case).unwrap();
        for b in 1..=BOUND {
            assert_eq!(
                schur_truncated(&d, b).unwrap(),
                conv_partial(kind, &k, &l, case, b as u64).unwrap(),
                "{kind:?} {k} {l} {case:?} B={b}"
            );
        }
    }
}

#[test]
fn path_check_on_random_ky_anti_hooks() {
    // Every K-Y pair converges (the corner exponent is at least 2), and the
    // path condition agrees.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let r = rng.gen_range(1..=3);
        let s = rng.gen_range(1..=3);
        let k = Composition::new((0..r).map(|_| rng.gen_range(1..=3)).collect()).unwrap();
        let l = Composition::new((0..s).map(|_| rng.gen_range(1..=3)).collect()).unwrap();
        let admissible = k.last().unwrap() + l.last().unwrap() >= 2;
        let d = SchurDiagramModN::ky(&k, &l).unwrap();
        assert_eq!(allowable_path_check(&d).unwrap(), admissible, "{k} {l}");
    }
}
