//! Plain-text rendering of reports.

use std::fmt::Write;

use crate::schema::{
    BundleReport, CertificateDoc, CompareReport, ExplicitManifold, Report, SystemDoc,
    TransitionReport, VerifyReport,
};

pub fn render(report: &Report) -> String {
    let mut out = String::new();
    match report {
        Report::Invariants(r) => system(&mut out, "system", &r.system),
        Report::Transition(r) => transition(&mut out, r),
        Report::Compare(r) => compare(&mut out, r),
        Report::Verify(r) => verify(&mut out, r),
    }
    out
}

fn labelled(basis: &[String], v: &[i64]) -> String {
    basis
        .iter()
        .zip(v)
        .map(|(b, x)| format!("{b}={x}"))
        .collect::<Vec<_>>()
        .join("  ")
}

fn system(out: &mut String, title: &str, s: &SystemDoc) {
    let _ = writeln!(out, "{title}: rank {}, basis ({})", s.rank, s.basis.join(", "));
    let _ = writeln!(out, "  mu:");
    for e in &s.mu {
        let [i, j, k] = e.index;
        let name = format!("{} {} {}", s.basis[i], s.basis[j], s.basis[k]);
        let _ = writeln!(out, "    {name:<16} {:>6}", e.value);
    }
    let _ = writeln!(out, "  p1: {}", labelled(&s.basis, &s.p1));
    let _ = writeln!(out, "  w2: {}", labelled(&s.basis, &s.w2));
    let _ = writeln!(out, "  b3: {}", s.b3);
    if let Some(chi) = s.euler_characteristic {
        let _ = writeln!(out, "  chi: {chi}");
    }
    match &s.c1_class {
        Some(c) => {
            let _ = writeln!(out, "  c1: {}", labelled(&s.basis, c));
        }
        None => {
            let _ = writeln!(out, "  c1: -");
        }
    }
    if !s.simply_connected {
        let _ = writeln!(out, "  (declared not simply connected)");
    }
}

fn manifold(out: &mut String, title: &str, m: &ExplicitManifold) {
    let label = m.label.as_deref().unwrap_or("-");
    let _ = writeln!(out, "{title}: {label}, rank {}", m.matrix.len());
    for row in &m.matrix {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        let _ = writeln!(out, "  [{} ]", cells.join(""));
    }
    let w2: Vec<String> = m.w2.iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "  w2: ({})", w2.join(", "));
}

fn bundle(out: &mut String, title: &str, b: &BundleReport) {
    let basis: Vec<String> = (0..b.c1.len()).map(|i| format!("y{}", i + 1)).collect();
    let label = b.base.label.as_deref().unwrap_or("-");
    let _ = writeln!(
        out,
        "{title}: over {label}, c1: {}, c2: {}",
        if b.c1.is_empty() {
            "0".to_string()
        } else {
            labelled(&basis, &b.c1)
        },
        b.c2
    );
}

fn transition(out: &mut String, r: &TransitionReport) {
    manifold(out, "base", &r.base);
    bundle(out, "E", &r.bundle);
    if r.swapped {
        let _ = writeln!(out, "(sides swapped)");
    }
    bundle(out, "E1", &r.e1);
    bundle(out, "E2", &r.e2);
    system(out, "Z1", &r.z1);
    system(out, "Z2", &r.z2);
}

fn matrix(out: &mut String, m: &[Vec<i64>]) {
    for row in m {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        let _ = writeln!(out, "  [{} ]", cells.join(""));
    }
}

fn compare(out: &mut String, r: &CompareReport) {
    system(out, "left", &r.left);
    system(out, "right", &r.right);
    let primes: Vec<String> = r.options.primes.iter().map(ToString::to_string).collect();
    let _ = writeln!(
        out,
        "options: bound {}, primes {{{}}}, check c1: {}",
        r.options.bound,
        primes.join(","),
        r.options.check_c1
    );
    let _ = writeln!(out, "verdict: {}", verdict_name(r));
    if let Some(w) = &r.witness {
        let _ = writeln!(
            out,
            "witness (columns are images of left basis vectors), c1 preserved: {}",
            w.preserves_c1
        );
        matrix(out, &w.matrix);
    }
    match &r.certificate {
        Some(CertificateDoc::Rank { left, right }) => {
            let _ = writeln!(out, "certificate: rank {left} vs {right}");
        }
        Some(CertificateDoc::B3 { left, right }) => {
            let _ = writeln!(out, "certificate: b3 {left} vs {right}");
        }
        Some(CertificateDoc::Fingerprint {
            prime,
            left_cubic_zeros,
            right_cubic_zeros,
            left,
            right,
        }) => {
            let _ = writeln!(
                out,
                "certificate: fingerprint mod {prime}, cubic zeros {left_cubic_zeros} vs {right_cubic_zeros}"
            );
            let _ = writeln!(out, "  (cube, p1, w2)   left  right");
            let mut keys: Vec<[u64; 3]> = left
                .iter()
                .chain(right)
                .map(|r| [r[0], r[1], r[2]])
                .collect();
            keys.sort_unstable();
            keys.dedup();
            for k in keys {
                let count = |rows: &[[u64; 4]]| {
                    rows.iter()
                        .find(|r| r[..3] == k)
                        .map_or(0, |r| r[3])
                };
                let (l, rr) = (count(left), count(right));
                let mark = if l == rr { "" } else { "  *" };
                let _ = writeln!(
                    out,
                    "  ({}, {}, {}){:>10}{:>7}{mark}",
                    k[0], k[1], k[2], l, rr
                );
            }
        }
        None => {}
    }
    if !r.classification_applies {
        let _ = writeln!(
            out,
            "note: an input is not simply connected; the verdict is about invariant systems only"
        );
    }
}

fn verdict_name(r: &CompareReport) -> &'static str {
    match r.verdict {
        crate::schema::Verdict::Isomorphic => "ISOMORPHIC",
        crate::schema::Verdict::Distinct => "DISTINCT",
        crate::schema::Verdict::Inconclusive => "INCONCLUSIVE",
    }
}

fn verify(out: &mut String, r: &VerifyReport) {
    let width = r.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &r.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{status}  {:<width$}  {}", c.name, c.detail);
    }
    let passed = r.checks.iter().filter(|c| c.passed).count();
    let _ = writeln!(out, "{passed}/{} checks passed", r.checks.len());
}
