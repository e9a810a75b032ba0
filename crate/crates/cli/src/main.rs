//! `coincide`: compute and verify coincidence-class structure of instances
//! given as finite-group data.
//!
//! Exit codes: 0 success, 1 input or validation error, 2 verification
//! failure (a structural invariant or theorem check did not hold).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use coincidence_cli::generate::random_instance;
use coincidence_cli::instance::Instance;
use coincidence_cli::report::Report;
use coincidence_cli::verify::{describe_pair, verify_instance, VerifyOptions};
use coincidence_core::{
    double_orientable_cover, lift_report, nielsen_number, orientation_type,
};

#[derive(Parser)]
#[command(
    name = "coincide",
    about = "Coincidence-class calculator: Reidemeister classes, semi-index, covering lifts",
    version
)]
struct Cli {
    /// Append machine-readable `key = value` lines to the output.
    #[arg(long, global = true)]
    machine: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an instance file.
    Validate { file: PathBuf },
    /// List the Reidemeister classes of the pair.
    Classes { file: PathBuf },
    /// Print the orientation type of the first map.
    Type { file: PathBuf },
    /// Semi-indices of the configured classes and the essential count.
    Semiindex { file: PathBuf },
    /// Lifting data of the instance covering: fiber counts, lifted classes,
    /// product formula, and oracle values.
    Lift { file: PathBuf },
    /// Behavior under the two-fold orientable covering of the source.
    Doublecover { file: PathBuf },
    /// Run every applicable check; exit 2 on any violation.
    Verify {
        file: Option<PathBuf>,
        /// Print per-lifted-class oracle detail.
        #[arg(long)]
        oracle: bool,
        /// Verify every .inst file in a directory, in filename order.
        #[arg(long, value_name = "DIR")]
        batch: Option<PathBuf>,
    },
    /// Emit a deterministic random instance for a seed.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_order: usize,
    },
}

/// Input or validation failure: exit 1.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn load(path: &Path) -> Result<Instance, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Instance::parse(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(InputError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, InputError> {
    match cli.command {
        Command::Validate { file } => {
            let instance = load(&file)?;
            let mut report = Report::new();
            report.say(format!(
                "ok: groups of order {} and {}{}{}",
                instance.pair.source().order(),
                instance.pair.target().order(),
                if instance.covering.is_some() {
                    ", covering"
                } else {
                    ""
                },
                if instance.configs.is_some() {
                    ", configuration"
                } else {
                    ""
                }
            ));
            print!("{}", report.render(cli.machine));
            Ok(ExitCode::SUCCESS)
        }
        Command::Classes { file } => {
            let instance = load(&file)?;
            let mut report = Report::new();
            describe_pair(&instance.pair, &mut report);
            print!("{}", report.render(cli.machine));
            Ok(ExitCode::SUCCESS)
        }
        Command::Type { file } => {
            let instance = load(&file)?;
            let pair = &instance.pair;
            let map_type = orientation_type(pair.phi(), pair.w_source(), pair.w_target());
            let mut report = Report::new();
            report.say(format!(
                "map type {} ({})",
                map_type,
                if map_type.orientable() {
                    "orientable"
                } else {
                    "nonorientable"
                }
            ));
            report.kv("pair.type", map_type);
            print!("{}", report.render(cli.machine));
            Ok(ExitCode::SUCCESS)
        }
        Command::Semiindex { file } => {
            let instance = load(&file)?;
            let configs = instance
                .configs_for_all_classes()
                .ok_or_else(|| InputError("instance has no config section".into()))?;
            let mut report = Report::new();
            for config in &configs {
                let rep = config.class().representative();
                report.say(format!(
                    "class {}: {} points, semi-index {}",
                    rep,
                    config.len(),
                    config.semi_index()
                ));
                report.kv(format!("class.{rep}.semiindex"), config.semi_index());
            }
            let n = nielsen_number(&configs)?;
            report.say(format!("essential classes: {n}"));
            report.kv("nielsen.down", n);
            print!("{}", report.render(cli.machine));
            Ok(ExitCode::SUCCESS)
        }
        Command::Lift { file } => {
            let instance = load(&file)?;
            let cov = instance
                .covering
                .as_ref()
                .ok_or_else(|| InputError("instance has no covering section".into()))?;
            let configs = instance.configs_for_all_classes().unwrap_or_default();
            let lifts = lift_report(&instance.pair, cov, &configs);
            let mut report = Report::new();
            let mut mismatch = false;
            for lift in &lifts.classes {
                let rep = lift.representative;
                report.say(format!(
                    "class {}: fiber {}, {} lifted classes of {} copies, formula {:?}, oracle {:?}",
                    rep,
                    lift.fiber_count,
                    lift.num_classes,
                    lift.copies_per_class,
                    lift.formula,
                    lift.oracle
                ));
                report.kv(format!("class.{rep}.lift.T"), lift.fiber_count);
                report.kv(format!("class.{rep}.lift.k"), lift.copies_per_class);
                report.kv(format!("class.{rep}.lift.classes"), lift.num_classes);
                report.kv_list(format!("class.{rep}.lift.formula"), &lift.formula);
                report.kv_list(format!("class.{rep}.lift.oracle"), &lift.oracle);
                mismatch |= !lift.matches();
            }
            print!("{}", report.render(cli.machine));
            if mismatch {
                eprintln!("error: product formula disagrees with the oracle");
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Doublecover { file } => {
            let instance = load(&file)?;
            let configs = instance.configs_for_all_classes().unwrap_or_default();
            let (_, dc) = double_orientable_cover(&instance.pair, &configs)?;
            let mut report = Report::new();
            for class in &dc.classes {
                report.say(format!(
                    "class {}: {}, semi-index {}, {} lifted classes with values {:?}",
                    class.representative,
                    if class.defective {
                        "defective"
                    } else {
                        "non-defective"
                    },
                    class.semi_index,
                    class.num_classes,
                    class.lifted_values
                ));
                let rep = class.representative;
                report.kv(format!("class.{rep}.lift.classes"), class.num_classes);
                report.kv_list(format!("class.{rep}.lift.oracle"), &class.lifted_values);
            }
            report.say(format!(
                "nielsen down {}, up {}",
                dc.nielsen_down, dc.nielsen_up
            ));
            report.kv("nielsen.down", dc.nielsen_down);
            report.kv("nielsen.up", dc.nielsen_up);
            print!("{}", report.render(cli.machine));
            if !dc.pass() {
                eprintln!("error: double-cover checks failed");
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            file,
            oracle,
            batch,
        } => {
            let options = VerifyOptions {
                oracle_detail: oracle,
            };
            match (file, batch) {
                (Some(file), None) => {
                    let instance = load(&file)?;
                    let (report, verdict) = verify_instance(&instance, options);
                    print!("{}", report.render(cli.machine));
                    if verdict.ok() {
                        Ok(ExitCode::SUCCESS)
                    } else {
                        eprintln!("error: {} violation(s)", verdict.violations.len());
                        Ok(ExitCode::from(2))
                    }
                }
                (None, Some(dir)) => run_batch(&dir, options, cli.machine),
                _ => Err(InputError(
                    "verify needs exactly one of a file or --batch <dir>".into(),
                )),
            }
        }
        Command::Gen { seed, max_order } => {
            let text = random_instance(seed, max_order)?;
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_batch(dir: &Path, options: VerifyOptions, machine: bool) -> Result<ExitCode, InputError> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| InputError(format!("{}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "inst"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(InputError(format!(
            "no .inst files in {}",
            dir.display()
        )));
    }
    let mut merged = Report::new();
    let mut input_errors = 0usize;
    let mut violations = 0usize;
    for path in &files {
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        merged.say(format!("== {}", path.display()));
        match load(path) {
            Ok(instance) => {
                let (report, verdict) = verify_instance(&instance, options);
                violations += verdict.violations.len();
                merged.absorb(report.with_key_prefix(&stem));
            }
            Err(InputError(message)) => {
                merged.say(format!("input error: {message}"));
                input_errors += 1;
            }
        }
    }
    print!("{}", merged.render(machine));
    if violations > 0 {
        eprintln!("error: {violations} violation(s) across {} file(s)", files.len());
        Ok(ExitCode::from(2))
    } else if input_errors > 0 {
        eprintln!("error: {input_errors} file(s) failed to load");
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
