use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use nilrep_core::catalog::CatalogName;
use nilrep_core::tables::{self, Column, RowReport, RunOptions, Status};
use nilrep_core::{
    algorithm_affine, algorithm_dual, algorithm_quotient, algorithm_regular, AffineConfig, AffineOutcome, AlgebraFile, Field,
    FieldKind, FieldSpec, LieAlgebra, PrimeField, Rationals, Representation, RepresentationFile,
};

const EXIT_VERIFY: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_AFFINE: u8 = 3;

#[derive(Parser)]
#[command(name = "nilrep", version, about = "Faithful representations of nilpotent Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    Regular,
    Quotient,
    Dual,
    Affine,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a faithful representation and print a JSON summary line.
    Compute {
        #[arg(long, value_enum)]
        alg: Algorithm,
        /// Algebra file, or `catalog:<name>` with name one of heisenberg,
        /// utri:N, freenilp:N,C, filiform:N.
        #[arg(long = "in")]
        input: String,
        /// Field for catalog algebras: Q, GF(p) or F_p.
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        retries: usize,
        /// Where to write the representation file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a representation file against an algebra.
    Verify {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Write a catalog algebra as an algebra file.
    Export {
        #[arg(long = "in")]
        input: String,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute a reference table and compare dimensions.
    Tables {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        /// Only the first N rows.
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        skip_affine: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        retries: usize,
        /// Rows computed concurrently.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

/// An input error, reported with exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CliResult<T> = Result<T, InputError>;

enum Source {
    Catalog(CatalogName, FieldSpec),
    File(AlgebraFile),
}

impl Source {
    fn parse(input: &str, field: &str) -> CliResult<Self> {
        if let Some(name) = input.strip_prefix("catalog:") {
            return Ok(Source::Catalog(name.parse()?, FieldSpec::parse(field)?));
        }
        let text = fs::read_to_string(input).map_err(|e| InputError(format!("{input}: {e}")))?;
        Ok(Source::File(AlgebraFile::from_json(&text)?))
    }

    fn field(&self) -> CliResult<FieldSpec> {
        match self {
            Source::Catalog(_, f) => Ok(*f),
            Source::File(file) => Ok(file.field_spec()?),
        }
    }

    fn family(&self) -> String {
        match self {
            Source::Catalog(name, _) => name.to_string(),
            Source::File(_) => "file".into(),
        }
    }

    fn build<F: Field>(&self, field: F) -> CliResult<LieAlgebra<F>> {
        let g = match self {
            Source::Catalog(name, _) => name.build(field)?,
            Source::File(file) => file.to_algebra(field)?,
        };
        g.nilpotency_class()?;
        Ok(g)
    }
}

/// Calls `$body` with `$g` bound to the algebra over its runtime field.
macro_rules! with_algebra {
    ($source:expr, |$g:ident| $body:expr) => {{
        let source = $source;
        match source.field()?.kind {
            FieldKind::Rationals => {
                let $g = source.build(Rationals)?;
                $body
            }
            FieldKind::PrimeField => {
                let $g = source.build(PrimeField::new(source.field()?.characteristic)?)?;
                $body
            }
        }
    }};
}

fn write_output(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn compute<F: Field>(
    g: &LieAlgebra<F>,
    family: &str,
    alg: Algorithm,
    config: &AffineConfig,
    out: Option<&Path>,
) -> CliResult<u8> {
    let start = Instant::now();
    let (name, rep) = match alg {
        Algorithm::Regular => ("regular", Some(algorithm_regular(g)?)),
        Algorithm::Quotient => ("quotient", Some(algorithm_quotient(g)?)),
        Algorithm::Dual => ("dual", Some(algorithm_dual(g)?)),
        Algorithm::Affine => match algorithm_affine(g, config)? {
            AffineOutcome::Success(rep) => ("affine", Some(rep)),
            AffineOutcome::Fail { deepest_step, attempts } => {
                let summary = json!({
                    "family": family,
                    "field": g.field().spec().to_string(),
                    "algebra_dim": g.dim(),
                    "algorithm": "affine",
                    "status": "FAIL",
                    "deepest_step": deepest_step,
                    "attempts": attempts,
                    "seed": config.seed,
                    "seconds": start.elapsed().as_secs_f64(),
                });
                println!("{summary}");
                return Ok(EXIT_AFFINE);
            }
        },
    };
    let rep = rep.expect("every branch above yields a representation");
    let seconds = start.elapsed().as_secs_f64();
    let verified = rep.is_homomorphism().is_ok() && rep.is_faithful();
    if let Some(path) = out {
        write_output(Some(path), &RepresentationFile::from_representation(&rep).to_json())?;
    }
    let summary = json!({
        "family": family,
        "field": g.field().spec().to_string(),
        "algebra_dim": g.dim(),
        "algorithm": name,
        "status": if verified { "OK" } else { "VERIFY-FAIL" },
        "dim": rep.dim(),
        "provenance": rep.provenance(),
        "seconds": seconds,
    });
    println!("{summary}");
    Ok(if verified { 0 } else { EXIT_VERIFY })
}

fn verify<F: Field>(g: &LieAlgebra<F>, rep_path: &Path) -> CliResult<u8> {
    let text = fs::read_to_string(rep_path).map_err(|e| InputError(format!("{}: {e}", rep_path.display())))?;
    let rep: Representation<F> = RepresentationFile::from_json(&text)?.to_representation(g)?;
    let homomorphism = match rep.is_homomorphism() {
        Ok(()) => json!("ok"),
        Err((i, j)) => json!({ "fail": [i + 1, j + 1] }),
    };
    let faithful = rep.is_faithful();
    let nilpotent = rep.matrices_nilpotent();
    let ok = rep.is_homomorphism().is_ok() && faithful && nilpotent;
    let report = json!({
        "dim": rep.dim(),
        "homomorphism": homomorphism,
        "faithful": faithful,
        "nilpotent_matrices": nilpotent,
    });
    println!("{report}");
    Ok(if ok { 0 } else { EXIT_VERIFY })
}

fn format_row(report: &RowReport) -> String {
    let mut line = format!("{:<24} dim {:>3}", report.row.label(), report.computed_algebra_dim);
    if report.computed_algebra_dim != report.row.algebra_dim {
        line.push_str(&format!(" DIFF({}, {})", report.computed_algebra_dim, report.row.algebra_dim));
    }
    for cell in &report.cells {
        let ours = cell.ours.map_or("-".to_string(), |d| d.to_string());
        line.push_str(&format!("  {} {} {}", cell.column, ours, cell.status));
        if !cell.verified {
            line.push_str(" UNVERIFIED");
        }
    }
    if let (Some(q), Some(d)) = (report.cell(Column::Quotient), report.cell(Column::Dual)) {
        line.push_str(if q.ours == d.ours { "  quotient=dual" } else { "  quotient!=dual" });
    }
    let total: f64 = report.cells.iter().map(|c| c.elapsed.as_secs_f64()).sum();
    line.push_str(&format!("  {total:.2}s"));
    line
}

fn run_tables(which: u8, rows: Option<usize>, options: &RunOptions, jobs: usize) -> CliResult<u8> {
    let mut reference = tables::reference_table(which)?;
    if let Some(n) = rows {
        reference.truncate(n);
    }
    let results: Vec<Mutex<Option<nilrep_core::Result<RowReport>>>> = reference.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs.max(1) {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::SeqCst);
                let Some(row) = reference.get(k) else { break };
                let report = tables::run_row(row, options);
                *results[k].lock().expect("no panics while holding the lock") = Some(report);
            });
        }
    });
    let mut diffs = 0;
    let mut unverified = 0;
    let mut affine_success = 0;
    for slot in results {
        let report = slot.into_inner().expect("worker finished").expect("every row was run")?;
        diffs += report.diff_count();
        unverified += usize::from(!report.all_verified());
        affine_success += report
            .cells
            .iter()
            .filter(|c| matches!(c.status, Status::AffineSuccess { .. }))
            .count();
        println!("{}", format_row(&report));
    }
    println!("table {which}: {} rows, {diffs} DIFF, {unverified} unverified", reference.len());
    if affine_success > 0 {
        println!("note: Affine succeeded on {affine_success} row(s) where the reference run failed");
    }
    Ok(if diffs == 0 && unverified == 0 { 0 } else { EXIT_VERIFY })
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Compute {
            alg,
            input,
            field,
            seed,
            retries,
            out,
        } => {
            let source = Source::parse(&input, &field)?;
            let family = source.family();
            let config = AffineConfig {
                seed,
                retries,
                ..AffineConfig::default()
            };
            with_algebra!(&source, |g| compute(&g, &family, alg, &config, out.as_deref()))
        }
        Command::Verify { algebra, rep, field } => {
            let source = Source::parse(&algebra, &field)?;
            with_algebra!(&source, |g| verify(&g, &rep))
        }
        Command::Export { input, field, out } => {
            let source = Source::parse(&input, &field)?;
            with_algebra!(&source, |g| {
                write_output(out.as_deref(), &AlgebraFile::from_algebra(&g).to_json())?;
                Ok(0)
            })
        }
        Command::Tables {
            which,
            rows,
            skip_affine,
            seed,
            retries,
            jobs,
        } => {
            let options = RunOptions {
                affine: AffineConfig {
                    seed,
                    retries,
                    ..AffineConfig::default()
                },
                skip_affine,
            };
            run_tables(which, rows, &options, jobs)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
