use std::io::{Read, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use conifold_cli::descriptor::{parse_expression, parse_int_list, Builtin, Side, SourceDoc};
use conifold_cli::job::{Command, Format, JobSpec, Options};
use conifold_cli::schema::{BundleDoc, ManifoldDoc};
use conifold_cli::{parse_input, run, CliError, Result, STEP_BUDGET_ENV};

#[derive(Parser)]
#[command(name = "conifold", version, about = "Invariants of conifold transitions")]
struct Cli {
    /// Output format (overrides a job file's `options.format`).
    #[arg(long, value_enum, global = true)]
    format: Option<FormatArg>,

    /// Node budget for the witness search.
    #[arg(long, env = STEP_BUDGET_ENV, global = true)]
    step_budget: Option<u64>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// Invariant system of P(E), optionally blown up or taken through a transition.
    Invariants {
        #[command(flatten)]
        input: BundleArgs,
        /// Point blowups applied afterwards.
        #[arg(long, default_value_t = 0)]
        blowups: u32,
        /// Report one side of the transition of (base, E) instead of P(E).
        #[arg(long, value_enum)]
        side: Option<SideArg>,
    },
    /// Both sides of the conifold transition of P(E).
    Transition {
        #[command(flatten)]
        input: BundleArgs,
        /// Exchange the two sides.
        #[arg(long)]
        swap: bool,
    },
    /// Decide whether two invariant systems are isomorphic.
    Compare {
        /// Source document (file), or a builtin: M1, M2, CP3bar, S6.
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, default_value_t = conifold::equiv::DEFAULT_BOUND)]
        bound: u32,
        /// Comma-separated primes for fingerprints.
        #[arg(long, default_value = "2,3,5")]
        primes: String,
        /// Require witnesses to transport c1.
        #[arg(long)]
        check_c1: bool,
        /// Run the search on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Run the built-in verification suite.
    VerifyPaper,
    /// Run a job document (`-` reads stdin).
    Run { job: String },
}

#[derive(Args)]
struct BundleArgs {
    /// Catalog name, connected-sum expression ("CP2 # 3 CP2bar") or manifold file.
    #[arg(long)]
    base: String,
    /// c1(E) in the base's basis, e.g. "1,-1" (default 0).
    #[arg(long, allow_hyphen_values = true)]
    c1: Option<String>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    c2: i64,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Z1,
    Z2,
}

fn read_file(path: &str) -> Result<String> {
    let mut text = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| CliError::Io {
        path: path.to_string(),
        message: e.to_string(),
    })?;
    Ok(text)
}

fn base_doc(arg: &str) -> Result<ManifoldDoc> {
    if Path::new(arg).is_file() {
        return Ok(serde_json::from_str(&read_file(arg)?)?);
    }
    parse_expression(arg).map_err(|e| e.into_cli())?;
    Ok(ManifoldDoc::Expression(arg.to_string()))
}

fn bundle_doc(args: &BundleArgs) -> Result<(ManifoldDoc, BundleDoc)> {
    let base = base_doc(&args.base)?;
    let c1 = match &args.c1 {
        Some(text) => Some(parse_int_list(text).map_err(|e| e.into_cli())?),
        None => None,
    };
    Ok((base, BundleDoc { c1, c2: args.c2 }))
}

fn source_doc(arg: &str) -> Result<SourceDoc> {
    if Path::new(arg).is_file() {
        return Ok(serde_json::from_str(&read_file(arg)?)?);
    }
    if Builtin::parse(arg).is_some() {
        return Ok(SourceDoc {
            builtin: Some(arg.to_string()),
            ..Default::default()
        });
    }
    Err(CliError::Io {
        path: arg.to_string(),
        message: "no such file, and not a builtin (M1, M2, CP3bar, S6)".into(),
    })
}

fn job(cli: &Cli) -> Result<JobSpec> {
    let mut spec = match &cli.command {
        Cmd::Run { job } => parse_input(&read_file(job)?)?,
        Cmd::Invariants {
            input,
            blowups,
            side,
        } => {
            let (base, bundle) = bundle_doc(input)?;
            let doc = SourceDoc {
                base: Some(base),
                bundle: Some(bundle),
                blowups: *blowups,
                side: side.map(|s| match s {
                    SideArg::Z1 => Side::Z1,
                    SideArg::Z2 => Side::Z2,
                }),
                ..Default::default()
            };
            JobSpec {
                command: Command::Invariants(doc.resolve()?),
                options: Options::default(),
                input: serde_json::to_value(&doc).expect("sources serialize"),
            }
        }
        Cmd::Transition { input, swap } => {
            let (base, bundle) = bundle_doc(input)?;
            let base = base.resolve()?;
            let bundle = bundle.resolve(&base)?;
            JobSpec {
                command: Command::Transition {
                    base,
                    bundle,
                    swap: *swap,
                },
                options: Options::default(),
                input: serde_json::Value::Null,
            }
        }
        Cmd::Compare {
            left,
            right,
            bound,
            primes,
            check_c1,
            sequential,
        } => {
            let primes = parse_int_list(primes)
                .map_err(|e| e.into_cli())?
                .into_iter()
                .map(|p| {
                    u32::try_from(p)
                        .map_err(|_| CliError::Validation(format!("unsupported prime {p}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let options = Options {
                bound: *bound,
                primes,
                check_c1: *check_c1,
                parallel: !*sequential,
                ..Options::default()
            };
            options.validate()?;
            JobSpec {
                command: Command::Compare {
                    left: source_doc(left)?.resolve()?,
                    right: source_doc(right)?.resolve()?,
                },
                options,
                input: serde_json::Value::Null,
            }
        }
        Cmd::VerifyPaper => JobSpec {
            command: Command::VerifyPaper,
            options: Options::default(),
            input: serde_json::Value::Null,
        },
    };
    if let Some(f) = cli.format {
        spec.options.format = match f {
            FormatArg::Json => Format::Json,
            FormatArg::Table => Format::Table,
        };
    }
    if let Some(b) = cli.step_budget {
        spec.options.step_budget = b;
    }
    Ok(spec)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = job(&cli).and_then(|spec| Ok((run(&spec)?, spec.options.format)));
    match result {
        Ok((outcome, format)) => {
            let text = outcome.render(format);
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(outcome.status.code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_status().code() as u8)
        }
    }
}
