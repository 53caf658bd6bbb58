//! hyperspec: exact spectral invariants of uniform hypergraphs.

mod families;

use clap::{Parser, Subcommand, ValueEnum};
use hyperspec_core::eigenvariety::{self, Operator};
use hyperspec_core::macaulay;
use hyperspec_core::multiplicity::{self, VerificationReport};
use hyperspec_core::tensor::{
    adjacency_tensor, laplacian_tensor, signless_laplacian_tensor,
};
use hyperspec_core::{corpus, Error, Hypergraph, Int, Limits, Rat, RatPoly, RatTensor};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Exit code for size-guard refusals, distinct from ordinary failures so
/// corpus scripts can tell "skipped" from "failed".
const EXIT_GUARD: u8 = 3;

#[derive(Parser)]
#[command(
    name = "hyperspec",
    version,
    about = "Exact characteristic polynomials, eigenvariety cardinalities, and \
             algebraic multiplicities for uniform hypergraph tensors"
)]
struct Cli {
    /// Macaulay basis cap: refuse instances with more than this many monomials
    #[arg(long, global = true, env = "HYPERSPEC_GUARD", default_value_t = Limits::DEFAULT_MONOMIAL_CAP)]
    guard: usize,

    /// Brute-force enumeration cap on the k^n phase state space
    #[arg(long, global = true, default_value_t = Limits::DEFAULT_ENUM_CAP)]
    enum_cap: u64,

    /// Numeric tolerance for the floating-point pipeline
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OperatorArg {
    /// Adjacency tensor
    Adj,
    /// Laplacian tensor
    Lap,
    /// Signless Laplacian tensor
    Slap,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize a hypergraph file: k, n, m, degrees, connectivity
    Info { input: PathBuf },

    /// Exact characteristic polynomial of a hypergraph tensor
    Charpoly {
        input: PathBuf,
        #[arg(long, value_enum)]
        op: OperatorArg,
    },

    /// Algebraic multiplicities at the spectral radius and at zero
    Multiplicity { input: PathBuf },

    /// Eigenvariety invariants, rank, cardinality, and group shape
    Eigenvariety {
        input: PathBuf,
        /// Also list every phase vector (certified coordinates)
        #[arg(long)]
        enumerate: bool,
    },

    /// Verify the four-way multiplicity/cardinality equality
    Verify {
        /// Hypergraph file (omit with --corpus or --family)
        input: Option<PathBuf>,
        /// Run the built-in corpus
        #[arg(long, conflicts_with_all = ["input", "family"])]
        corpus: bool,
        /// Generate a named family: NAME key=value... (see `generate`)
        #[arg(long, num_args = 1.., value_name = "NAME ARGS", conflicts_with = "input")]
        family: Option<Vec<String>>,
    },

    /// Generate a family instance as hypergraph JSON
    Generate {
        /// Family name and arguments, e.g. `squid k=3 t=2`
        #[arg(num_args = 1.., value_name = "NAME ARGS")]
        spec: Vec<String>,
        /// Output file (stdout when omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    // behave like a normal pipeline citizen when stdout closes early
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let limits = Limits::new(cli.guard, cli.enum_cap);
    let result = match &cli.command {
        Command::Info { input } => cmd_info(input, cli.format),
        Command::Charpoly { input, op } => cmd_charpoly(input, *op, &limits, cli.format),
        Command::Multiplicity { input } => cmd_multiplicity(input, &limits, cli.format),
        Command::Eigenvariety { input, enumerate } => {
            cmd_eigenvariety(input, *enumerate, &limits, cli.format)
        }
        Command::Verify {
            input,
            corpus,
            family,
        } => cmd_verify(
            input.as_deref(),
            *corpus,
            family.as_deref(),
            &limits,
            cli.tol,
            cli.format,
        ),
        Command::Generate { spec, output } => cmd_generate(spec, output.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::SizeGuard { .. } => ExitCode::from(EXIT_GUARD),
                _ => ExitCode::FAILURE,
            }
        }
    }
}

fn load(input: &Path) -> hyperspec_core::Result<Hypergraph> {
    let text = std::fs::read_to_string(input)?;
    Hypergraph::from_json(&text)
}

fn cmd_info(input: &Path, format: Format) -> hyperspec_core::Result<ExitCode> {
    let h = load(input)?;
    let connected = h.is_connected();
    match format {
        Format::Text => {
            println!("k={} n={} m={} connected={}", h.k(), h.n(), h.m(), connected);
            let degrees: Vec<String> = h.degrees().iter().map(usize::to_string).collect();
            println!("degrees: [{}]", degrees.join(", "));
            if !connected {
                println!(
                    "warning: hypergraph is disconnected; multiplicity and eigenvariety \
                     commands require a connected input"
                );
            }
        }
        Format::Json => {
            let value = serde_json::json!({
                "k": h.k(),
                "n": h.n(),
                "m": h.m(),
                "connected": connected,
                "degrees": h.degrees(),
            });
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn tensor_for(h: &Hypergraph, op: OperatorArg) -> RatTensor {
    match op {
        OperatorArg::Adj => adjacency_tensor(h),
        OperatorArg::Lap => laplacian_tensor(h),
        OperatorArg::Slap => signless_laplacian_tensor(h),
    }
}

fn cmd_charpoly(
    input: &Path,
    op: OperatorArg,
    limits: &Limits,
    format: Format,
) -> hyperspec_core::Result<ExitCode> {
    let h = load(input)?;
    let tensor = tensor_for(&h, op);
    let phi = macaulay::tensor_charpoly(&tensor, limits.monomial_cap)?;
    print_charpoly(&phi, op, format)?;
    Ok(ExitCode::SUCCESS)
}

fn print_charpoly(phi: &RatPoly, op: OperatorArg, format: Format) -> hyperspec_core::Result<()> {
    let op_name = match op {
        OperatorArg::Adj => "adjacency",
        OperatorArg::Lap => "laplacian",
        OperatorArg::Slap => "signless-laplacian",
    };
    let degree = phi.degree().map_or(0, |d| d);
    match format {
        Format::Text => {
            println!("operator: {op_name}");
            println!("degree: {degree}");
            println!("trailing_zeros: {}", phi.trailing_zero_count());
            for (i, c) in phi.coeffs().iter().enumerate() {
                println!("coeff[{i}] = {c}");
            }
        }
        Format::Json => {
            let coeffs: Vec<String> = phi.coeffs().iter().map(Rat::to_string).collect();
            let value = serde_json::json!({
                "operator": op_name,
                "degree": degree,
                "trailing_zeros": phi.trailing_zero_count(),
                "coefficients": coeffs,
            });
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
    }
    Ok(())
}

fn cmd_multiplicity(
    input: &Path,
    limits: &Limits,
    format: Format,
) -> hyperspec_core::Result<ExitCode> {
    let h = load(input)?;
    let am_rho = multiplicity::spectral_radius_multiplicity(&h, limits.monomial_cap)?;
    let am_zero = multiplicity::zero_laplacian_multiplicity(&h, limits.monomial_cap)?;
    let precision = Rat::new(Int::from(1), Int::from(100_000_000));
    let (lo, hi) = multiplicity::spectral_radius_interval(&h, limits.monomial_cap, &precision)?;
    match format {
        Format::Text => {
            println!("am(rho, adjacency) = {am_rho}");
            println!("am(0, laplacian) = {am_zero}");
            println!(
                "rho in [{lo}, {hi}] ~ {:.9}",
                (lo.to_f64().unwrap_or(f64::NAN) + hi.to_f64().unwrap_or(f64::NAN)) / 2.0
            );
        }
        Format::Json => {
            let value = serde_json::json!({
                "am_rho": am_rho,
                "am_zero_laplacian": am_zero,
                "rho_interval": [lo.to_string(), hi.to_string()],
            });
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_eigenvariety(
    input: &Path,
    enumerate: bool,
    limits: &Limits,
    format: Format,
) -> hyperspec_core::Result<ExitCode> {
    let h = load(input)?;
    let description = eigenvariety::describe(&h)?;
    let phases = if enumerate {
        Some(eigenvariety::enumerate_phases(&h, limits)?)
    } else {
        None
    };
    let cardinality_json = description
        .cardinality_int()
        .to_u64()
        .map(|v| serde_json::json!(v))
        .unwrap_or_else(|| serde_json::json!(description.cardinality));
    let mut value = serde_json::json!({
        "invariants": description.invariants,
        "r": description.rank,
        "cardinality": cardinality_json,
        "group": description.group,
    });
    if let Some(phases) = &phases {
        value["phases"] = serde_json::json!(phases
            .iter()
            .map(|p| p.residues.clone())
            .collect::<Vec<_>>());
    }
    match format {
        Format::Text => {
            println!("invariants: {:?}", description.invariants);
            println!("r: {}", description.rank);
            println!("cardinality: {}", description.cardinality);
            println!("group: {:?}", description.group);
            if let Some(phases) = &phases {
                for p in phases {
                    let certified = eigenvariety::verify_phase(&h, &p.residues, Operator::Adjacency)
                        && eigenvariety::verify_phase(&h, &p.residues, Operator::Laplacian);
                    println!("phase {:?} certified={certified}", p.residues);
                }
            }
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(&value)?),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    input: Option<&Path>,
    run_corpus: bool,
    family: Option<&[String]>,
    limits: &Limits,
    tol: f64,
    format: Format,
) -> hyperspec_core::Result<ExitCode> {
    let mut targets: Vec<(String, Hypergraph)> = Vec::new();
    let mut oracle: Option<Int> = None;
    if run_corpus {
        for entry in corpus::default_corpus() {
            targets.push((entry.name.to_string(), entry.hypergraph));
        }
    } else if let Some(args) = family {
        let spec = families::parse(args).map_err(Error::UnknownFamily)?;
        oracle = Some(spec.oracle()?);
        targets.push((spec.describe(), spec.build()?));
    } else if let Some(path) = input {
        targets.push((path.display().to_string(), load(path)?));
    } else {
        return Err(Error::InvalidParameter(
            "verify needs an input file, --corpus, or --family".into(),
        ));
    }

    let reports: Vec<hyperspec_core::Result<(VerificationReport, bool)>> = targets
        .par_iter()
        .map(|(name, h)| {
            let report = multiplicity::verify_main_theorem(h, Some(name), limits)?;
            let radius_ok = numeric_radius_check(h, limits, tol)?;
            Ok((report, radius_ok))
        })
        .collect();

    let mut ok = 0usize;
    let mut failed = 0usize;
    let mut out = Vec::new();
    for report in reports {
        let (report, radius_ok) = report?;
        let mut pass = report.all_equal && radius_ok;
        if let Some(expected) = &oracle {
            pass = pass && report.ev_cardinality == expected.to_string();
        }
        if pass {
            ok += 1;
        } else {
            failed += 1;
        }
        out.push((pass, report));
    }

    match format {
        Format::Text => {
            for (pass, report) in &out {
                let verdict = if *pass { "ok" } else { "MISMATCH" };
                println!(
                    "{verdict} {}: card={} phases={} am_rho={} am_zero={} nullity={}{}",
                    report.name.as_deref().unwrap_or("?"),
                    report.ev_cardinality,
                    opt(report.phase_count),
                    opt(report.am_rho),
                    opt(report.am_zero_laplacian),
                    opt(report.macaulay_nullity),
                    if report.skipped.is_empty() {
                        String::new()
                    } else {
                        format!(" skipped={}", report.skipped.join("+"))
                    }
                );
            }
            if let Some(expected) = &oracle {
                println!("family oracle: {expected}");
            }
            println!("{ok}/{} equalities hold", ok + failed);
        }
        Format::Json => {
            let value = serde_json::json!({
                "reports": out.iter().map(|(_, r)| r).collect::<Vec<_>>(),
                "oracle": oracle.map(|v| v.to_string()),
                "passed": ok,
                "total": ok + failed,
            });
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
    }
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn opt(v: Option<u64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

/// Power-iteration radius must land within 1e-6 of the exact isolating
/// interval whenever the charpoly path is open. Skipped past the guard.
fn numeric_radius_check(
    h: &Hypergraph,
    limits: &Limits,
    tol: f64,
) -> hyperspec_core::Result<bool> {
    if !matches!(
        macaulay::basis_size(h.n(), h.k()),
        Some(s) if s <= limits.monomial_cap as u128
    ) {
        return Ok(true);
    }
    let perron =
        hyperspec_core::spectral::adjacency_perron(h, tol, hyperspec_core::spectral::DEFAULT_MAX_ITER)?;
    let precision = Rat::new(Int::from(1), Int::from(100_000_000));
    let (lo, hi) = multiplicity::spectral_radius_interval(h, limits.monomial_cap, &precision)?;
    let lo = lo.to_f64().unwrap_or(f64::NEG_INFINITY);
    let hi = hi.to_f64().unwrap_or(f64::INFINITY);
    Ok(perron.rho >= lo - 1e-6 && perron.rho <= hi + 1e-6)
}

fn cmd_generate(spec: &[String], output: Option<&Path>) -> hyperspec_core::Result<ExitCode> {
    let spec = families::parse(spec).map_err(Error::UnknownFamily)?;
    let h = spec.build()?;
    let text = h.to_json();
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}
