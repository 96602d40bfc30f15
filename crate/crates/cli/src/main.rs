use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use equising_cli::output::{result_cells, to_json, RESULT_COLUMNS};
use equising_cli::{exit, invariants_error_code, table, verdict_exit_code, InvariantsEnvelope, Meta};
use equising_cli::{ProblemFile, ReportEnvelope, SweepSpec};
use equising_core::invariants::{invariants_of, Alpha, Equivalence, Family, GammaValue, GermSpec, SearchBudget};

#[derive(Parser)]
#[command(
    name = "equising",
    version,
    about = "Singularity invariants and T-smoothness criteria for equisingular families of curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum EquivalenceArg {
    Topological,
    Analytic,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants τ, τ_ci and γ_α of a catalog type or an explicit germ.
    Invariants {
        /// Catalog family: A, D, E or M.
        #[arg(long = "type", value_name = "FAMILY", conflicts_with = "poly")]
        family: Option<String>,
        /// Index of A_k, D_k, E_k.
        #[arg(long)]
        k: Option<u32>,
        /// Multiplicity of the ordinary m-fold point M_m.
        #[arg(long)]
        m: Option<u32>,
        /// Explicit polynomial in x and y, e.g. "y^2 - x^3".
        #[arg(long)]
        poly: Option<String>,
        /// Defaults to topological for catalog types, analytic for polynomials.
        #[arg(long, value_enum)]
        equivalence: Option<EquivalenceArg>,
        /// α as p/q; repeatable (default: 0, 1/2, 1).
        #[arg(long = "alpha", value_name = "P/Q")]
        alphas: Vec<Alpha>,
        /// Candidate budget of the searches.
        #[arg(long)]
        budget: Option<usize>,
        /// Truncation cap of the colength kernel.
        #[arg(long)]
        cap: Option<u32>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Evaluates the criterion for a problem file.
    Check {
        problem: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluates a parameter sweep and writes one CSV row per grid point.
    Sweep {
        sweep: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Prints the closed-form γ_α table for a catalog family.
    Table {
        #[arg(long)]
        family: String,
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
        /// α as p/q; repeatable (default: 0, 1/2, 1).
        #[arg(long = "alpha", value_name = "P/Q")]
        alphas: Vec<Alpha>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn default_alphas(alphas: Vec<Alpha>) -> Vec<Alpha> {
    if alphas.is_empty() {
        ["0", "1/2", "1"]
            .iter()
            .map(|a| a.parse().expect("valid alpha"))
            .collect()
    } else {
        alphas
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn invariants(
    family: Option<String>,
    k: Option<u32>,
    m: Option<u32>,
    poly: Option<String>,
    equivalence: Option<EquivalenceArg>,
    alphas: Vec<Alpha>,
    budget: Option<usize>,
    cap: Option<u32>,
    format: Format,
) -> anyhow::Result<()> {
    let eq = equivalence.map(|e| match e {
        EquivalenceArg::Topological => Equivalence::Topological,
        EquivalenceArg::Analytic => Equivalence::Analytic,
    });
    let spec = match (family, poly) {
        (Some(f), None) => {
            let family: Family = f.parse()?;
            let index = match (family, k, m) {
                (_, Some(i), None) | (Family::M, None, Some(i)) => i,
                _ => bail!("type {family} needs exactly one index (--k, or --m for M)"),
            };
            GermSpec::catalog(family, index, eq.unwrap_or(Equivalence::Topological))?
        }
        (None, Some(p)) => {
            if k.is_some() || m.is_some() {
                bail!("--k/--m are not used with --poly");
            }
            GermSpec::explicit(&p, eq.unwrap_or(Equivalence::Analytic))?
        }
        _ => bail!("give either --type with --k/--m, or --poly"),
    };
    let mut search = SearchBudget::default();
    if let Some(b) = budget {
        search.max_candidates = b;
    }
    if let Some(c) = cap {
        search.cap = c;
    }
    let record = invariants_of(&spec, &default_alphas(alphas), &search)?;
    let text = match format {
        Format::Json | Format::Text => to_json(&InvariantsEnvelope {
            meta: Meta::default(),
            invariants: record,
        })?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["germ", "tau", "tau_ci", "alpha", "gamma", "provenance"])?;
            let tau = record.tau.map(|t| t.to_string()).unwrap_or_default();
            let tci = record.tau_ci.map(|t| t.value.to_string()).unwrap_or_default();
            for (alpha, g) in &record.gamma {
                let (value, prov) = match g {
                    GammaValue::Known { value, provenance } => (
                        value.to_string(),
                        serde_json::to_value(provenance)?
                            .as_str()
                            .unwrap_or_default()
                            .to_string(),
                    ),
                    GammaValue::Unavailable { unavailable } => (String::new(), format!("unavailable: {unavailable}")),
                };
                w.write_record([
                    record.germ.to_string(),
                    tau.clone(),
                    tci.clone(),
                    alpha.to_string(),
                    value,
                    prov,
                ])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
    };
    emit(&text, None)
}

fn check(path: PathBuf, format: Format, out: Option<PathBuf>) -> anyhow::Result<u8> {
    let problem = ProblemFile::load(&path)?;
    let report = problem.evaluate()?;
    let code = verdict_exit_code(report.verdict);
    let text = match format {
        Format::Json | Format::Text => to_json(&ReportEnvelope {
            meta: Meta::default(),
            invariants: problem.extra_invariants()?,
            report,
        })?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(RESULT_COLUMNS)?;
            w.write_record(result_cells(&report))?;
            String::from_utf8(w.into_inner()?)?
        }
    };
    emit(&text, out.as_ref())?;
    Ok(code)
}

fn sweep(path: PathBuf, out: PathBuf) -> anyhow::Result<()> {
    let spec = SweepSpec::load(&path)?;
    let rows = spec.run()?;
    let file = std::fs::File::create(&out).with_context(|| format!("creating {}", out.display()))?;
    spec.write_csv(&rows, std::io::BufWriter::new(file))
}

fn print_table(family: String, from: u32, to: u32, alphas: Vec<Alpha>, format: Format) -> anyhow::Result<()> {
    let family: Family = family.parse()?;
    let alphas = default_alphas(alphas);
    let rows = table::rows(family, from, to, &alphas);
    let text = match format {
        Format::Text => table::render_text(&rows, &alphas),
        Format::Json => table::render_json(&rows)?,
        Format::Csv => table::render_csv(&rows, &alphas)?,
    };
    emit(&text, None)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Invariants {
            family,
            k,
            m,
            poly,
            equivalence,
            alphas,
            budget,
            cap,
            format,
        } => invariants(family, k, m, poly, equivalence, alphas, budget, cap, format)
            .map(|_| exit::OK)
            .map_err(|e| {
                let code = invariants_error_code(&e);
                (e, code)
            }),
        Command::Check { problem, format, out } => check(problem, format, out).map_err(|e| (e, exit::INVALID)),
        Command::Sweep { sweep: path, out } => sweep(path, out).map(|_| exit::OK).map_err(|e| (e, exit::INVALID)),
        Command::Table {
            family,
            from,
            to,
            alphas,
            format,
        } => print_table(family, from, to, alphas, format)
            .map(|_| exit::OK)
            .map_err(|e| (e, exit::INVALID)),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err((e, code)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}
