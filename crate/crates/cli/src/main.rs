use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use yamacalc::{evaluate, exit_status, load_catalog, output, resolve_witness, CliError, EvalOptions};
use yamacalc_core::lattice::{congruence, diagonalize_definite, DEFAULT_DIAGONALIZE_RANK};
use yamacalc_core::theorems::{check_quadruple, HypothesisFamily, QuadrupleWitness};
use yamacalc_core::{Error, IntersectionLattice};

#[derive(Parser)]
#[command(name = "yamacalc", version, about = "Exact curvature invariants of connected sums of 4-manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a connected-sum expression, e.g. "2*DC8 # S4".
    Eval {
        expr: String,
        /// Quadruple X1,X2,X3,X4 for the connected-sum rules.
        #[arg(long)]
        witness: Option<String>,
        /// How many witness blocks are summands (default: inferred).
        #[arg(long)]
        m: Option<usize>,
        /// Complete a witness from the surface summands, padding with K3.
        #[arg(long)]
        auto_witness: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Extra catalog file merged over the built-in blocks.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Append decimal hints (non-authoritative).
        #[arg(long)]
        approx: bool,
    },
    /// List catalog blocks.
    Blocks {
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check the quadruple hypotheses for four blocks.
    CheckQuadruple {
        blocks: String,
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Diagonalize a negative-definite unimodular form over the integers.
    Diagonalize {
        /// Whitespace-separated integer grid.
        #[arg(long)]
        gram: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DIAGONALIZE_RANK)]
        rank_limit: usize,
    },
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json renders"));
}

fn grid(rows: &[Vec<i64>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(|x| format!("{x:>3}")).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Eval { expr, witness, m, auto_witness, format, catalog, approx } => {
            let cat = load_catalog(catalog.as_deref())?;
            let report = evaluate(&expr, &cat, &EvalOptions { witness, m, auto_witness })?;
            match format {
                Format::Text => print!("{}", output::report_text(&report, approx)),
                Format::Structured => print_json(&output::report_json(&report, approx)),
            }
            Ok(exit_status(&report))
        }
        Command::Blocks { catalog, format } => {
            let cat = load_catalog(catalog.as_deref())?;
            match format {
                Format::Text => print!("{}", output::catalog_text(&cat)),
                Format::Structured => print_json(&output::catalog_json(&cat)),
            }
            Ok(0)
        }
        Command::CheckQuadruple { blocks, catalog, format } => {
            let cat = load_catalog(catalog.as_deref())?;
            let w = QuadrupleWitness::new(resolve_witness(&blocks, &cat)?, 4)?;
            let minimal = check_quadruple(&w, HypothesisFamily::MinimalSurfaces);
            let sw = check_quadruple(&w, HypothesisFamily::SeibergWitten);
            match format {
                Format::Text => {
                    print!("{}", output::checks_text("minimal complex surfaces", &minimal));
                    print!("{}", output::checks_text("non-zero mod-2 Seiberg-Witten invariant", &sw));
                }
                Format::Structured => print_json(&serde_json::json!({
                    "blocks": w.names(),
                    "minimal_surfaces": minimal,
                    "seiberg_witten": sw,
                })),
            }
            let all = |cs: &[yamacalc_core::theorems::HypothesisCheck]| cs.iter().all(|c| c.passed());
            Ok(if all(&minimal) || all(&sw) { 0 } else { 2 })
        }
        Command::Diagonalize { gram, rank_limit } => {
            let text = std::fs::read_to_string(&gram)
                .map_err(|e| CliError::Io { path: gram.display().to_string(), message: e.to_string() })?;
            let lattice = IntersectionLattice::parse_grid(&text)?;
            match diagonalize_definite(&lattice, rank_limit) {
                Ok(u) => {
                    println!("U (columns are the new basis):\n{}", grid(&u));
                    println!("U^T Q U:\n{}", grid(&congruence(lattice.gram(), &u)));
                    Ok(0)
                }
                Err(e @ Error::NotDiagonalizable(_)) => {
                    println!("{e}");
                    Ok(2)
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
