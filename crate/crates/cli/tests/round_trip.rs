//! Reports re-parse to exactly the values that produced them.

use conifold::equiv::{certify_distinct, DEFAULT_PRIMES};
use conifold::fourfold::Standard;
use conifold::transitions::{conifold_transition, mk_system};
use conifold::{FourManifold, InvariantSystem, RankTwoBundle};
use conifold_cli::schema::{CertificateDoc, ExplicitManifold, Report, SystemDoc};
use conifold_cli::{parse_input, run};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_base(rng: &mut ChaCha8Rng) -> FourManifold {
    let mut m = FourManifold::standard(Standard::S4);
    for _ in 0..rng.gen_range(0..=3) {
        let piece = Standard::ALL[rng.gen_range(0..4)];
        m = m.connected_sum(&FourManifold::standard(piece));
    }
    m
}

fn reparse(s: &InvariantSystem) -> InvariantSystem {
    let text = serde_json::to_string(&SystemDoc::from_system(s)).unwrap();
    let doc: SystemDoc = serde_json::from_str(&text).unwrap();
    doc.to_system().unwrap()
}

#[test]
fn systems_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let n = random_base(&mut rng);
        let c1: Vec<i64> = (0..n.rank()).map(|_| rng.gen_range(-3..=3)).collect();
        let e = RankTwoBundle::new(n.clone(), c1, rng.gen_range(-3..=3)).unwrap();
        let t = conifold_transition(&n, &e).unwrap();
        for s in [&t.z1, &t.z2] {
            assert_eq!(&reparse(s), s);
        }
        let m = ExplicitManifold::from_manifold(&n);
        let text = serde_json::to_string(&m).unwrap();
        let back: ExplicitManifold = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_manifold().unwrap(), n);
    }
    for k in [1, 2] {
        let s = mk_system(k).unwrap();
        assert_eq!(reparse(&s), s);
    }
}

#[test]
fn certificates_round_trip() {
    for which in Standard::ALL {
        let n = FourManifold::standard(which);
        let t = conifold_transition(&n, &RankTwoBundle::trivial(n.clone())).unwrap();
        let cert = certify_distinct(&t.z1, &t.z2, &DEFAULT_PRIMES).unwrap().unwrap();
        let doc = CertificateDoc::from_certificate(&cert);
        let text = serde_json::to_string(&doc).unwrap();
        let back: CertificateDoc = serde_json::from_str(&text).unwrap();
        let cert2 = back.to_certificate().unwrap();
        assert_eq!(cert2, cert);
        assert!(cert2.recheck(&t.z1, &t.z2).unwrap());
    }
}

#[test]
fn whole_reports_round_trip() {
    let jobs = [
        r#"{"command": "invariants", "base": "CP2 # 2 CP2bar", "bundle": {"c1": [1, 0, -1], "c2": 2}}"#,
        r#"{"command": "transition", "base": "S2xS2", "bundle": {"c1": [1, 1], "c2": 0}, "swap": true}"#,
        r#"{"command": "compare", "left": {"builtin": "M2"}, "right": {"base": "S4", "bundle": {"c2": -1}, "blowups": 1}}"#,
        r#"{"command": "compare", "left": {"base": "CP2", "side": "z1"}, "right": {"base": "CP2", "side": "z2"}}"#,
        r#"{"command": "verify-paper"}"#,
    ];
    for job in jobs {
        let outcome = run(&parse_input(job).unwrap()).unwrap();
        let text = outcome.report.to_json();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, outcome.report, "{job}");
        assert_eq!(back.to_json(), text);
        match back {
            Report::Invariants(r) => {
                let s = r.system.to_system().unwrap();
                assert_eq!(SystemDoc::from_system(&s), r.system);
            }
            Report::Compare(r) => {
                let (l, rr) = (r.left.to_system().unwrap(), r.right.to_system().unwrap());
                if let Some(c) = r.certificate {
                    assert!(c.to_certificate().unwrap().recheck(&l, &rr).unwrap());
                }
                if let Some(w) = r.witness {
                    assert!(conifold::equiv::verify_witness(&l, &rr, &w.matrix, false).unwrap());
                }
            }
            _ => {}
        }
    }
}

#[test]
fn inconsistent_documents_are_rejected() {
    let mut doc = SystemDoc::from_system(&mk_system(1).unwrap());
    doc.euler_characteristic = Some(7);
    assert!(doc.to_system().is_err());

    let mut doc = SystemDoc::from_system(&mk_system(1).unwrap());
    doc.mu.push(conifold_cli::schema::MuEntry {
        index: [1, 0, 0],
        value: 3,
    });
    assert!(doc.to_system().is_err());

    let mut doc = SystemDoc::from_system(&mk_system(1).unwrap());
    doc.w2 = vec![0, 2];
    assert!(doc.to_system().is_err());
}

#[test]
fn validation_names_the_invariant() {
    let msg = |job: &str| parse_input(job).unwrap_err().to_string();
    assert!(msg(r#"{"command": "invariants", "base": {"matrix": [[1]], "w2": [0]}}"#)
        .contains("w2 not characteristic"));
    assert!(msg(r#"{"command": "invariants", "base": {"matrix": [[0, 1], [2, 0]], "w2": [0, 0]}}"#)
        .contains("symmetric"));
    assert!(msg(r#"{"command": "invariants", "base": {"matrix": [[2]], "w2": [0]}}"#)
        .contains("unimodular"));
    assert!(msg(r#"{"command": "invariants", "base": "CP2", "bundle": {"c1": [1, 1]}}"#)
        .contains("dimension mismatch"));
    assert!(msg(r#"{"command": "invariants", "base": "CP2 # # S4"}"#).contains("column 7"));
}
