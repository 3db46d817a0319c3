use conifold::equiv::{certify_distinct, find_isomorphism, SearchOptions};
use conifold::transitions::conifold_transition_ordered;

use crate::error::{ExitStatus, Result};
use crate::job::{Command, Format, JobSpec, Options};
use crate::schema::{
    BundleReport, CertificateDoc, CompareOptionsDoc, CompareReport, ExplicitManifold,
    InvariantsReport, Report, SystemDoc, TransitionReport, Verdict, VerifyReport, WitnessDoc,
    SCHEMA,
};
use crate::{table, verify};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub report: Report,
    pub status: ExitStatus,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.report.to_json(),
            Format::Table => table::render(&self.report),
        }
    }
}

fn search_options(o: &Options) -> SearchOptions {
    SearchOptions {
        bound: o.bound,
        check_c1: o.check_c1,
        step_budget: o.step_budget,
        parallel: o.parallel,
    }
}

pub fn run(job: &JobSpec) -> Result<Outcome> {
    let command = job.command.name().to_string();
    let o = &job.options;
    match &job.command {
        Command::Invariants(source) => {
            let s = source.system()?;
            Ok(Outcome {
                report: Report::Invariants(InvariantsReport {
                    schema: SCHEMA.into(),
                    command,
                    input: job.input.clone(),
                    system: SystemDoc::from_system(&s),
                }),
                status: ExitStatus::Success,
            })
        }
        Command::Transition { base, bundle, swap } => {
            let t = conifold_transition_ordered(base, bundle, *swap)?;
            Ok(Outcome {
                report: Report::Transition(TransitionReport {
                    schema: SCHEMA.into(),
                    command,
                    base: ExplicitManifold::from_manifold(&t.base),
                    bundle: BundleReport::from_bundle(&t.bundle),
                    swapped: t.swapped,
                    e1: BundleReport::from_bundle(&t.e1),
                    e2: BundleReport::from_bundle(&t.e2),
                    z1: SystemDoc::from_system(&t.z1),
                    z2: SystemDoc::from_system(&t.z2),
                }),
                status: ExitStatus::Success,
            })
        }
        Command::Compare { left, right } => {
            let (l, r) = (left.system()?, right.system()?);
            let certificate = certify_distinct(&l, &r, &o.primes)?;
            let witness = match certificate {
                Some(_) => None,
                None => find_isomorphism(&l, &r, &search_options(o))?,
            };
            let (verdict, status) = match (&witness, &certificate) {
                (Some(_), _) => (Verdict::Isomorphic, ExitStatus::Success),
                (None, Some(_)) => (Verdict::Distinct, ExitStatus::Success),
                (None, None) => (Verdict::Inconclusive, ExitStatus::Inconclusive),
            };
            Ok(Outcome {
                report: Report::Compare(CompareReport {
                    schema: SCHEMA.into(),
                    command,
                    options: CompareOptionsDoc {
                        bound: o.bound,
                        primes: o.primes.clone(),
                        check_c1: o.check_c1,
                    },
                    left: SystemDoc::from_system(&l),
                    right: SystemDoc::from_system(&r),
                    verdict,
                    witness: witness.as_ref().map(WitnessDoc::from_witness),
                    certificate: certificate.as_ref().map(CertificateDoc::from_certificate),
                    classification_applies: l.simply_connected() && r.simply_connected(),
                }),
                status,
            })
        }
        Command::VerifyPaper => {
            let checks = verify::run_suite(o);
            let passed = checks.iter().all(|c| c.passed);
            Ok(Outcome {
                report: Report::Verify(VerifyReport {
                    schema: SCHEMA.into(),
                    command,
                    checks,
                    passed,
                }),
                status: if passed {
                    ExitStatus::Success
                } else {
                    ExitStatus::VerificationFailed
                },
            })
        }
    }
}
