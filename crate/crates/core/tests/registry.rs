use mzv_core::registry::{entries, find, verify_all, verify_identity, Ctx, Params};
use mzv_core::Error;

#[test]
fn every_default_case_holds() {
    let ctx = Ctx::default();
    let mut bad = Vec::new();
    for e in entries() {
        let r = verify_identity(e.id, None, &ctx).unwrap_or_else(|err| panic!("{}: {err}", e.id));
        println!("{:<11} {:<40} diff={:.2e} radius={:.2e}", r.id, r.params.to_string(), r.diff, r.radius);
        if !r.pass {
            bad.push(format!("{} [{}] lhs={} rhs={}", r.id, r.params, r.lhs, r.rhs));
        }
    }
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn enumerated_cases_hold_to_weight_seven() {
    let ctx = Ctx::default();
    let all: Vec<_> = entries().iter().collect();
    let reports = verify_all(&all, 7, &ctx);
    assert!(reports.len() > 2000, "{}", reports.len());
    let bad: Vec<_> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{} [{}] diff={:e} {:?}", r.id, r.params, r.diff, r.error))
        .collect();
    assert!(bad.is_empty(), "{} failures: {bad:#?}", bad.len());
}

#[test]
fn hypotheses_are_enforced() {
    let ctx = Ctx::default();
    let p = Params::parse("kind=L; k=1,2; n=0").unwrap();
    assert!(matches!(verify_identity("LT-INT", Some(&p), &ctx), Err(Error::Domain(_))));
    let p = Params::parse("k1=1; k2=1; l=1; sigma1=1; sigma2=-1; eps=1").unwrap();
    assert!(verify_identity("ALT-C7", Some(&p), &ctx).unwrap().pass);
    let p = Params::parse("k=1,2; m=4").unwrap();
    assert!(matches!(verify_identity("CZT", Some(&p), &ctx), Err(Error::Domain(_))));
    let p = Params::parse("k=1,2; q=4").unwrap();
    assert!(matches!(verify_identity("A1", Some(&p), &ctx), Err(Error::Parse(_))));
    assert!(matches!(find("XYZ"), Err(Error::UnknownId(_))));
}
