use chowkit_core::groebner::Budget;
use chowkit_core::pipeline::{FixtureSet, Mode, StageId, Workbench, EMBEDDED};
use chowkit_core::Error;

#[test]
fn prerequisites_run_on_demand() {
    let mut wb = Workbench::with_embedded_fixtures().unwrap();
    assert!(wb.run(StageId::Boundary).unwrap().passed());
    for s in [StageId::N, StageId::Q, StageId::Curve(1)] {
        assert!(wb.report(s).is_some(), "{s} did not run");
    }
    assert!(wb.report(StageId::MPlus).is_none());
}

#[test]
fn rings_by_name() {
    let mut wb = Workbench::with_embedded_fixtures().unwrap();
    let fl = wb.ring("Fl").unwrap();
    assert_eq!(fl.series().total(), 6);
    assert_eq!(wb.ring("C3").unwrap().top_degree(), 10);
    assert!(matches!(wb.ring("C0"), Err(Error::UnknownRing(_))));
    assert!(matches!(wb.ring("X"), Err(Error::UnknownRing(_))));
}

#[test]
fn registry_holds_one_entry_per_symbol() {
    let mut wb = Workbench::with_embedded_fixtures().unwrap();
    wb.run(StageId::Cycles).unwrap();
    let reg = wb.registry();
    let alpha = reg.get("M", "alpha").unwrap();
    assert_eq!(reg.get("M", "S").unwrap(), alpha);
    assert_eq!(reg.get("M", "L").unwrap(), &-reg.get("M", "beta").unwrap());
    assert!(reg.get("Mplus", "tau").is_some());
    assert!(reg.get("H3", "A").is_some());
}

#[test]
fn a_wrong_reference_value_fails_only_its_check() {
    let files: Vec<(&str, String)> = EMBEDDED
        .iter()
        .map(|&(name, text)| {
            if name != "presentations.txt" {
                return (name, text.to_string());
            }
            let body = text.split_once('\n').unwrap().1.replacen("@ N.pairing_solution\n0,-3,5", "@ N.pairing_solution\n0,-3,6", 1);
            (name, reseal(&body))
        })
        .collect();
    let fx = FixtureSet::from_texts(files.iter().map(|(n, t)| (*n, t.as_str()))).unwrap();
    let mut wb = Workbench::new(fx, Mode::Verification, Budget::unlimited());
    let report = wb.run(StageId::N).unwrap().clone();
    let failures: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
    assert_eq!(failures, ["pairing system solution"]);
    assert!(matches!(wb.run(StageId::Q), Err(Error::PrerequisiteFailed(_))));
}

#[test]
fn donaldson_requires_nothing_but_m() {
    let mut wb = Workbench::with_embedded_fixtures().unwrap();
    let q = wb.donaldson(2, 6).unwrap();
    assert_eq!(q.chi, 148.into());
    assert_eq!(q.class, wb.ring("M").unwrap().parse("-2*beta").unwrap());
    assert!(wb.report(StageId::Cycles).is_none());
}

fn reseal(body: &str) -> String {
    use sha2::{Digest, Sha256};
    let mut h = Sha256::new();
    h.update(body.trim_end_matches('\n').as_bytes());
    h.update(b"\n");
    let digest: String = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
    format!("# sha256 {digest}\n{body}")
}
