//! The built-in verification suite: fixed instances whose invariants are
//! known in closed form, the local-model identifications, and the
//! distinctness of the two transition sides.

use conifold::equiv::{certify_distinct, find_isomorphism, verify_witness, SearchOptions};
use conifold::fourfold::Standard;
use conifold::transitions::{conifold_transition, mk_system};
use conifold::{FourManifold, InvariantSystem, RankTwoBundle, Result};

use crate::job::Options;
use crate::schema::CheckDoc;

fn std(which: Standard) -> FourManifold {
    FourManifold::standard(which)
}

fn mu_list(s: &InvariantSystem) -> Vec<i64> {
    s.mu().entries().map(|(_, &v)| v).collect()
}

/// Compares the sorted-triple μ list, p₁, w₂ and b₃ against expected values.
fn expect_system(
    s: &InvariantSystem,
    mu: &[i64],
    p1: &[i64],
    w2: &[u8],
) -> (bool, String) {
    let got = mu_list(s);
    let ok = got == mu && s.p1() == p1 && s.w2() == w2 && s.b3() == 0;
    (
        ok,
        format!(
            "basis {:?}: mu {:?}, p1 {:?}, w2 {:?}, b3 {}",
            s.basis(),
            got,
            s.p1(),
            s.w2(),
            s.b3()
        ),
    )
}

fn e1_prime() -> Result<InvariantSystem> {
    let bar = std(Standard::CP2bar);
    let e = RankTwoBundle::new(bar.clone(), vec![-1], -1)?;
    InvariantSystem::projectivize(&bar, &e)
}

fn e2_prime_blowup() -> Result<InvariantSystem> {
    let s4 = std(Standard::S4);
    let e = RankTwoBundle::new(s4.clone(), vec![], -1)?;
    Ok(InvariantSystem::projectivize(&s4, &e)?.blowup_point())
}

fn search_options(options: &Options, bound: u32, check_c1: bool) -> SearchOptions {
    SearchOptions {
        bound,
        check_c1,
        step_budget: options.step_budget,
        parallel: options.parallel,
    }
}

fn witness_check(
    m: &InvariantSystem,
    target: &InvariantSystem,
    a: &[Vec<i64>],
) -> Result<(bool, String)> {
    let ok = verify_witness(m, target, a, true)?;
    Ok((ok, format!("{a:?} onto basis {:?}, c1 transported", target.basis())))
}

fn search_check(
    m: &InvariantSystem,
    target: &InvariantSystem,
    options: &Options,
) -> Result<(bool, String)> {
    let found = find_isomorphism(m, target, &search_options(options, 3, true))?;
    Ok(match found {
        Some(w) => {
            let ok = verify_witness(m, target, &w.matrix, true)?;
            (ok, format!("bound 3 found {:?}", w.matrix))
        }
        None => (false, "no witness within bound 3".to_string()),
    })
}

fn distinct_check(base: Standard, options: &Options) -> Result<(bool, String)> {
    let n = std(base);
    let t = conifold_transition(&n, &RankTwoBundle::trivial(n.clone()))?;
    Ok(match certify_distinct(&t.z1, &t.z2, &options.primes)? {
        Some(cert) => {
            let ok = cert.prime().is_some() && cert.recheck(&t.z1, &t.z2)?;
            let p = cert.prime().map_or("-".to_string(), |p| p.to_string());
            (ok, format!("{} certificate at p = {p}", cert.kind()))
        }
        None => (false, "no certificate".to_string()),
    })
}

fn chern_transfer() -> Result<(bool, String)> {
    let n = std(Standard::CP2).connected_sum(&std(Standard::S2xS2));
    let e = RankTwoBundle::new(n.clone(), vec![1, 2, -1], 3)?;
    let t = conifold_transition(&n, &e)?;
    let ok = t.e1.c1() == [1, 2, -1, -1]
        && t.e2.c1() == [1, 2, -1]
        && *t.e1.c2() == 2
        && *t.e2.c2() == 2
        && t.e2.base() == &n;
    Ok((
        ok,
        format!(
            "e1 = ({:?}, {}), e2 = ({:?}, {}) over {}",
            t.e1.c1(),
            t.e1.c2(),
            t.e2.c1(),
            t.e2.c2(),
            n.label()
        ),
    ))
}

fn twist_sample(options: &Options) -> Result<(bool, String)> {
    let n = std(Standard::CP2).connected_sum(&std(Standard::CP2bar));
    let e = RankTwoBundle::new(n.clone(), vec![1, 0], 0)?;
    let l = [1, -1];
    let s = InvariantSystem::projectivize(&n, &e)?;
    let t = InvariantSystem::projectivize(&n, &e.twist(&l)?)?;
    // a ↦ a + l
    let a = vec![vec![1, 0, 0], vec![1, 1, 0], vec![-1, 0, 1]];
    let explicit = verify_witness(&s, &t, &a, true)?;
    let found = find_isomorphism(&s, &t, &search_options(options, 2, false))?;
    let searched = match &found {
        Some(w) => verify_witness(&s, &t, &w.matrix, false)?,
        None => false,
    };
    Ok((
        explicit && searched,
        format!(
            "twist by {l:?} on {}: substitution {}, search {}",
            n.label(),
            if explicit { "verifies" } else { "fails" },
            if searched { "finds a witness" } else { "fails" }
        ),
    ))
}

fn cp3bar_constants() -> (bool, String) {
    let s = InvariantSystem::cp3bar();
    let ok = mu_list(&s) == [-1] && s.p1() == [-4] && s.w2() == [0] && s.b3() == 0;
    (
        ok,
        format!("mu {:?}, p1 {:?}, w2 {:?}", mu_list(&s), s.p1(), s.w2()),
    )
}

fn check(name: &str, result: Result<(bool, String)>) -> CheckDoc {
    let (passed, detail) = match result {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    CheckDoc {
        name: name.to_string(),
        passed,
        detail,
    }
}

/// Runs every check. The result depends only on the build, not on thread
/// count.
pub fn run_suite(options: &Options) -> Vec<CheckDoc> {
    let cp2 = std(Standard::CP2);
    vec![
        check(
            "projectivize-cp2",
            RankTwoBundle::new(cp2.clone(), vec![1], 0)
                .and_then(|e| InvariantSystem::projectivize(&cp2, &e))
                .map(|s| expect_system(&s, &[1, -1, 1, 0], &[4, 0], &[0, 0])),
        ),
        check(
            "projectivize-cp2bar",
            e1_prime().map(|s| expect_system(&s, &[0, -1, -1, 0], &[0, 0], &[0, 0])),
        ),
        check(
            "projectivize-s4",
            InvariantSystem::projectivize(
                &std(Standard::S4),
                &RankTwoBundle::trivial(std(Standard::S4)),
            )
            .map(|s| expect_system(&s, &[0], &[0], &[0])),
        ),
        // basis (x, z): triples xxx, xxz, xzz, zzz
        check(
            "local-model-m1",
            mk_system(1).map(|s| expect_system(&s, &[0, 1, -1, 0], &[0, 0], &[0, 0])),
        ),
        check(
            "local-model-m2",
            mk_system(2).map(|s| expect_system(&s, &[0, 1, -1, 1], &[0, 4], &[0, 0])),
        ),
        check(
            "m1-witness",
            mk_system(1).and_then(|m| {
                // x ↦ a, z ↦ −y
                witness_check(&m, &e1_prime()?, &[vec![1, 0], vec![0, -1]])
            }),
        ),
        check(
            "m1-search",
            mk_system(1).and_then(|m| search_check(&m, &e1_prime()?, options)),
        ),
        check(
            "m2-witness",
            mk_system(2).and_then(|m| {
                // x ↦ a + z', z ↦ −z'
                witness_check(&m, &e2_prime_blowup()?, &[vec![1, 0], vec![1, -1]])
            }),
        ),
        check(
            "m2-search",
            mk_system(2).and_then(|m| search_check(&m, &e2_prime_blowup()?, options)),
        ),
        check("transition-sides-s4", distinct_check(Standard::S4, options)),
        check("transition-sides-cp2", distinct_check(Standard::CP2, options)),
        check("transition-chern-data", chern_transfer()),
        check("twist-invariance", twist_sample(options)),
        check("cp3bar-constants", Ok(cp3bar_constants())),
    ]
}
