//! Command-line front end. Output is plain text with a fixed layout so runs
//! can be diffed.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse, usage, shape or
//! I/O error, 3 search budget exceeded.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::algebra::{parse_instance, EquationInstance, TableFun2};
use crate::families::family;
use crate::solver::{solve, SolveError, SolverConfig, DEFAULT_BUDGET};
use crate::verify::{
    analyze_instance, identity_checks, AnalysisConfig, AnalysisError, Check, DalembertMembership,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "involeq", version, about = "Solve and verify functional equations with involutions over finite semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct SearchArgs {
    /// Maximum number of search nodes
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Merge cells forced equal by the equation before searching
    #[arg(long)]
    seeded: bool,
}

impl SearchArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            budget: self.budget,
            seeded: self.seeded,
            ..SolverConfig::default()
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List every solution of an instance
    Solve {
        instance: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        /// Print only the solution count
        #[arg(long)]
        quiet: bool,
    },
    /// List the constructed solution family of an instance
    Family {
        instance: PathBuf,
        /// Build the d'Alembert family from characters over F_{q²}
        #[arg(long)]
        extension: bool,
        #[arg(long)]
        quiet: bool,
    },
    /// Check solution rows against an instance
    Verify {
        instance: PathBuf,
        solutions: PathBuf,
        /// Also check family membership, allowing witnesses over F_{q²}
        #[arg(long)]
        extension: bool,
        /// Print only failing rows and the summary
        #[arg(long)]
        quiet: bool,
    },
    /// Compare solver output with the family for every `*.inst` file in a directory
    Report {
        dir: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        /// Compare d'Alembert instances against the F_{q²} family
        #[arg(long)]
        extension: bool,
    },
}

/// Runs the command line `args` (including the program name), writing to
/// `out` and `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Solve { instance, search, quiet } => cmd_solve(&instance, search.config(), quiet, out),
        Command::Family { instance, extension, quiet } => cmd_family(&instance, extension, quiet, out),
        Command::Verify { instance, solutions, extension, quiet } => {
            cmd_verify(&instance, &solutions, extension, quiet, out)
        }
        Command::Report { dir, search, extension } => cmd_report(&dir, search.config(), extension, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::input(e.to_string())
    }
}

fn load_instance(path: &Path) -> Result<EquationInstance, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write_rows<'a>(out: &mut dyn Write, rows: impl IntoIterator<Item = &'a TableFun2>) -> std::io::Result<()> {
    for row in rows {
        writeln!(out, "{row}")?;
    }
    Ok(())
}

fn cmd_solve(path: &Path, config: SolverConfig, quiet: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let inst = load_instance(path)?;
    let outcome = solve(&inst, config).map_err(|e| Failure {
        code: EXIT_BUDGET,
        message: e.to_string(),
    })?;
    writeln!(out, "solutions: {}", outcome.solutions.len())?;
    if !quiet {
        write_rows(out, &outcome.solutions)?;
    }
    Ok(EXIT_OK)
}

fn cmd_family(path: &Path, extension: bool, quiet: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let inst = load_instance(path)?;
    let fam = family(&inst, extension).map_err(|e| Failure::input(e.to_string()))?;
    writeln!(out, "family: {}", fam.len())?;
    if !quiet {
        write_rows(out, &fam)?;
    }
    Ok(EXIT_OK)
}

/// Reads rows of whitespace-separated values, skipping blank lines, `#`
/// comments and `solutions:` / `family:` headers.
fn read_rows(path: &Path, inst: &EquationInstance) -> Result<Vec<TableFun2>, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let order = inst.carrier().order();
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("solutions:") || line.starts_with("family:") {
            continue;
        }
        let lineno = i + 1;
        let values = line
            .split_whitespace()
            .map(|t| t.parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Failure::input(format!("{}: line {lineno}: {e}", path.display())))?;
        if values.len() != inst.cells() {
            return Err(Failure::input(format!(
                "{}: line {lineno}: row has {} values, instance needs {}",
                path.display(),
                values.len(),
                inst.cells()
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v >= order) {
            return Err(Failure::input(format!(
                "{}: line {lineno}: value {v} is outside a carrier of order {order}",
                path.display()
            )));
        }
        rows.push(TableFun2::new(inst.side(), values).expect("length checked"));
    }
    Ok(rows)
}

fn cmd_verify(
    instance: &Path,
    solutions: &Path,
    extension: bool,
    quiet: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let inst = load_instance(instance)?;
    let rows = read_rows(solutions, &inst)?;
    let membership = (extension && inst.carrier().is_field())
        .then(|| DalembertMembership::new(&inst, true));
    let mut failed = 0;
    for (i, row) in rows.iter().enumerate() {
        let results = identity_checks(&inst, row, membership.as_ref());
        let ok = results.iter().all(|r| r.outcome != Check::Fail);
        if !ok {
            failed += 1;
        }
        if quiet && ok {
            continue;
        }
        write!(out, "row {i}: {}", if ok { "pass" } else { "FAIL" })?;
        for r in &results {
            write!(out, " {}={}", r.name, r.outcome)?;
            if let (Check::Fail, Some(detail)) = (r.outcome, &r.detail) {
                write!(out, " [{detail}]")?;
            }
        }
        writeln!(out)?;
    }
    writeln!(out, "verified: {} rows, {} failed", rows.len(), failed)?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn cmd_report(dir: &Path, solver: SolverConfig, extension: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "inst"))
        .collect();
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    let instances = files
        .iter()
        .map(|p| load_instance(p).map(|inst| (p, inst)))
        .collect::<Result<Vec<_>, _>>()?;

    let width = files
        .iter()
        .map(|p| p.file_name().unwrap_or_default().to_string_lossy().len())
        .max()
        .unwrap_or(8)
        .max(8);
    writeln!(
        out,
        "{:<width$} {:<10} {:>8} {:>8} {:>8} {:<13} {:>9} {:>8}",
        "instance", "equation", "brute", "family", "common", "relation", "extension", "failures"
    )?;
    let config = AnalysisConfig { solver, extension };
    let mut any_failure = false;
    for (path, inst) in &instances {
        let name = path.file_name().unwrap_or_default().to_string_lossy();
        let kind = inst.kind().to_string();
        match analyze_instance(inst, config) {
            Ok(r) => {
                let failures: usize = r.identities.iter().map(|t| t.fail).sum::<usize>()
                    + r.unwitnessed.unwrap_or(0);
                any_failure |= failures > 0;
                let ext = r.extension_witnesses.map_or("-".to_string(), |n| n.to_string());
                writeln!(
                    out,
                    "{name:<width$} {kind:<10} {:>8} {:>8} {:>8} {:<13} {ext:>9} {failures:>8}",
                    r.brute_force.len(),
                    r.family.len(),
                    r.intersection,
                    r.relation.to_string(),
                )?;
            }
            Err(AnalysisError::Solve(SolveError::BudgetExceeded { .. })) => {
                writeln!(out, "{name:<width$} {kind:<10} skipped")?;
            }
            Err(e) => return Err(Failure::input(format!("{}: {e}", path.display()))),
        }
    }
    Ok(if any_failure { EXIT_VERIFY_FAILED } else { EXIT_OK })
}
