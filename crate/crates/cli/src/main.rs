use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pcross::generate::{self, RandomParams, DEFAULT_EXHAUSTIVE_CAP};
use pcross::report::{self, to_json_string};
use pcross::simplicity::DEFAULT_ORACLE_CAP;
use pcross::{Error, FieldDescriptor, GroupDescriptor, Instance, OracleConfig, OracleMode};
use rayon::prelude::*;

#[derive(Parser)]
#[command(name = "pcross", version, about = "Twisted partial crossed products over finite split rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalOpts,
}

#[derive(Args, Clone)]
struct GlobalOpts {
    /// When to run the brute-force simplicity oracle.
    #[arg(long, global = true, value_enum, default_value_t = OracleArg::Auto)]
    oracle: OracleArg,
    /// Largest p^d the oracle enumerates.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_CAP)]
    cap: u128,
    /// Override the field of every instance (`q`, `f3`, `5`, ...).
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    Auto,
    Force,
    Off,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of each instance.
    Validate { files: Vec<PathBuf> },
    /// Full report: dynamics, algebra, simplicity and cross-checks.
    Analyze { files: Vec<PathBuf> },
    /// Orbits, minimality, envelope and the dynamics/simplicity conditions.
    Dynamics { files: Vec<PathBuf> },
    /// The enveloping global action.
    Globalize { files: Vec<PathBuf> },
    /// Emit instances as JSON Lines (or files with --out).
    Generate {
        #[arg(long, value_enum, default_value_t = Mode::Random)]
        mode: Mode,
        /// Comma-separated groups such as `C2,C3,C2xC2,S3`.
        #[arg(long, value_delimiter = ',')]
        groups: Vec<String>,
        /// Space sizes for exhaustive mode.
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Largest space for random instances.
        #[arg(long, default_value_t = 3)]
        max_points: usize,
        /// Random nontrivial cocycles.
        #[arg(long)]
        twisted: bool,
        /// Write one canonical file per instance into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Disagreement { .. } => 2,
        _ => 1,
    }
}

fn load(path: &Path, field: Option<FieldDescriptor>) -> pcross::Result<Instance> {
    let inst = Instance::from_path(path)?;
    match field {
        Some(f) => inst.with_field(f),
        None => Ok(inst),
    }
}

fn run_batch(
    files: &[PathBuf],
    field: Option<FieldDescriptor>,
    job: impl Fn(&Instance) -> pcross::Result<String> + Sync,
) -> u8 {
    let outputs: Vec<pcross::Result<String>> = files.par_iter().map(|p| load(p, field).and_then(|i| job(&i))).collect();
    let mut code = 0;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for (path, result) in files.iter().zip(outputs) {
        match result {
            Ok(text) => {
                let _ = out.write_all(text.as_bytes());
            }
            Err(e) => {
                eprintln!("pcross: {}: {e}", path.display());
                code = code.max(exit_code(&e));
            }
        }
    }
    code
}

fn parse_groups(names: &[String]) -> pcross::Result<Vec<GroupDescriptor>> {
    if names.is_empty() {
        return Ok(generate::default_groups());
    }
    names.iter().map(|n| n.parse()).collect()
}

fn run(cli: Cli) -> pcross::Result<u8> {
    let g = cli.global;
    let field: Option<FieldDescriptor> = g.field.as_deref().map(str::parse).transpose()?;
    let mode = match g.oracle {
        OracleArg::Auto => OracleMode::Auto,
        OracleArg::Force => OracleMode::Force,
        OracleArg::Off => OracleMode::Off,
    };
    let config = OracleConfig { mode, cap: g.cap, ..Default::default() };
    let json = g.format == Format::Json;
    Ok(match cli.command {
        Command::Validate { files } => run_batch(&files, field, |inst| {
            let sys = inst.system()?.validate();
            if json {
                Ok(to_json_string(&serde_json::json!({"name": inst.name, "valid": true, "dynamics": sys})))
            } else {
                Ok(format!("{}: valid\n", inst.name))
            }
        }),
        Command::Analyze { files } => run_batch(&files, field, |inst| {
            let r = report::analyze(inst, &config)?;
            Ok(if json { to_json_string(&r) } else { r.to_text() })
        }),
        Command::Dynamics { files } => run_batch(&files, field, |inst| {
            let r = report::dynamics_report(inst, &config)?;
            Ok(if json { to_json_string(&r) } else { r.to_text() })
        }),
        Command::Globalize { files } => run_batch(&files, field, |inst| {
            let env = inst.system()?.globalize()?;
            Ok(if json { to_json_string(&env) } else { report::enveloping_text(&inst.name, &env) })
        }),
        Command::Generate { mode, groups, sizes, seed, count, max_points, twisted, out } => {
            let groups = parse_groups(&groups)?;
            let field = field.unwrap_or(FieldDescriptor::Fp { p: 3 });
            let instances = match mode {
                Mode::Exhaustive => generate::exhaustive(&groups, &sizes, field, DEFAULT_EXHAUSTIVE_CAP)?,
                Mode::Random => generate::random(&RandomParams {
                    groups,
                    max_points,
                    field,
                    count,
                    seed,
                    twisted,
                    ..Default::default()
                })?,
            };
            match out {
                Some(dir) => {
                    fs::create_dir_all(&dir)?;
                    for inst in &instances {
                        fs::write(dir.join(format!("{}.json", inst.name)), inst.to_canonical_string())?;
                    }
                }
                None => {
                    let stdout = io::stdout();
                    let mut w = stdout.lock();
                    for inst in &instances {
                        writeln!(w, "{}", inst.to_json_line())?;
                    }
                }
            }
            0
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("pcross: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
