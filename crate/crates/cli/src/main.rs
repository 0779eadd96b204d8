//! Command line driver: compute a q-expansion basis of S_k(Gamma_0(N), chi),
//! sweep (N, k) grids with stage timings, or census Hecke matrix set sizes.

use std::io::Write;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use cuspidal::arith::{BigRat, CycloNum, Field};
use cuspidal::bench::{
    census_to_csv, fit_exponents, hecke_set_census, records_to_csv, run_timed, sweep, Axis,
    SweepConfig, TimedRun,
};
use cuspidal::chars::CharSpec;

#[derive(Parser)]
#[command(
    name = "cuspidal",
    about = "Exact q-expansion bases of cusp form spaces via cohomology",
    args_conflicts_with_subcommands = true
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    #[command(flatten)]
    basis: BasisArgs,
}

#[derive(Args, Default)]
struct BasisArgs {
    /// Level N of Gamma_0(N)
    #[arg(long)]
    level: Option<u64>,
    /// Weight k >= 2
    #[arg(long)]
    weight: Option<u32>,
    /// Character: trivial, kronecker, or gens:g1=e1,g2=e2,...
    #[arg(long, default_value = "trivial")]
    char: String,
    /// q-expansion precision; raised to the Sturm bound when lower
    #[arg(long)]
    prec: Option<u64>,
    /// Basis search mode
    #[arg(long, default_value = "probe", value_parser = ["probe", "exact"])]
    mode: String,
    /// Output format
    #[arg(long, default_value = "text", value_parser = ["text", "json", "csv"])]
    format: String,
    /// Append per-stage wall times to the output
    #[arg(long)]
    time: bool,
    /// Prime factorization of the level as p^e,p^e (e.g. 2^2,3); checked
    /// against --level
    #[arg(long)]
    factors: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the pipeline over a (level, weight) grid and emit timing CSV
    Sweep {
        /// Inclusive level range, e.g. 10..60
        #[arg(long)]
        levels: String,
        /// Comma separated weights, e.g. 2,4,6
        #[arg(long)]
        weights: String,
        /// Character specification applied at every point
        #[arg(long, default_value = "trivial")]
        char: String,
        /// Skip points with mu*(k-1) above this cap
        #[arg(long, default_value_t = 2000)]
        cap: usize,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// Report fitted log-log growth exponents per stage
        #[arg(long)]
        fit: bool,
    },
    /// Tabulate |H_n|, |S_n|, |S_n'| and sigma(n)
    Census {
        /// Largest determinant n
        #[arg(long, default_value_t = 300)]
        max_n: u64,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Some(Command::Sweep {
            levels,
            weights,
            char,
            cap,
            out,
            fit,
        }) => run_sweep(&levels, &weights, &char, cap, out.as_deref(), fit),
        Some(Command::Census { max_n, out }) => run_census(max_n, out.as_deref()),
        None => run_basis(&cli.basis),
    };
    if let Err(e) = result {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run_basis(args: &BasisArgs) -> anyhow::Result<()> {
    let Some(level) = args.level else {
        bail!("--level is required (or use a subcommand; see --help)")
    };
    let Some(weight) = args.weight else {
        bail!("--weight is required")
    };
    if level < 1 {
        bail!("--level must be >= 1");
    }
    if weight < 2 {
        bail!("--weight must be >= 2");
    }
    if let Some(f) = &args.factors {
        check_factors(level, f)?;
    }
    let spec = CharSpec::parse(&args.char).context("parsing --char")?;
    let exact = args.mode == "exact";
    let order = spec
        .order(level)
        .with_context(|| format!("building character {spec} mod {level}"))?;

    // characters of order <= 2 run over plain rationals
    if order <= 2 {
        let run = run_timed::<BigRat>(level, weight, &spec, args.prec, exact)
            .context("pipeline failed")?;
        emit(args, level, weight, &spec, &run)
    } else {
        let run = run_timed::<CycloNum>(level, weight, &spec, args.prec, exact)
            .context("pipeline failed")?;
        emit(args, level, weight, &spec, &run)
    }
}

fn check_factors(level: u64, spec: &str) -> anyhow::Result<()> {
    let mut product = 1u64;
    for part in spec.split(',') {
        let (p, e) = match part.split_once('^') {
            Some((p, e)) => (
                p.trim().parse::<u64>().context("bad prime")?,
                e.trim().parse::<u32>().context("bad exponent")?,
            ),
            None => (part.trim().parse::<u64>().context("bad prime")?, 1),
        };
        if p < 2 {
            bail!("factor {p} is not a prime");
        }
        product = product
            .checked_mul(p.checked_pow(e).context("factor overflow")?)
            .context("factor overflow")?;
    }
    if product != level {
        bail!("--factors multiply to {product}, not the level {level}");
    }
    Ok(())
}

fn emit<F: Field>(
    args: &BasisArgs,
    level: u64,
    weight: u32,
    spec: &CharSpec,
    run: &TimedRun<F>,
) -> anyhow::Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match args.format.as_str() {
        "text" => {
            writeln!(out, "level {level}  weight {weight}  character {spec}")?;
            writeln!(
                out,
                "mu = {}  cusps = {}  nullity = {}  plus = {}  dimension = {}  precision = {}",
                run.mu, run.num_cusps, run.nullity, run.plus_dim, run.dimension, run.precision
            )?;
            for form in &run.basis.forms {
                writeln!(out, "{}", pretty_q_expansion(form))?;
            }
            if args.time {
                for (name, ns) in run.timings.stages() {
                    writeln!(out, "t_{name}_ns = {ns}")?;
                }
                writeln!(out, "t_total_ns = {}", run.timings.total_ns)?;
            }
        }
        "json" => {
            let basis: Vec<Vec<String>> = run
                .basis
                .forms
                .iter()
                .map(|f| f.iter().map(|c| c.to_string()).collect())
                .collect();
            let mut doc = serde_json::json!({
                "level": level,
                "weight": weight,
                "character": spec.to_string(),
                "mu": run.mu,
                "num_cusps": run.num_cusps,
                "nullity": run.nullity,
                "plus_dim": run.plus_dim,
                "dimension": run.dimension,
                "precision": run.precision,
                "basis": basis,
            });
            if args.time {
                let timings: serde_json::Map<String, serde_json::Value> = run
                    .timings
                    .stages()
                    .iter()
                    .map(|(n, v)| (n.to_string(), serde_json::json!(*v as u64)))
                    .chain(std::iter::once((
                        "total".to_string(),
                        serde_json::json!(run.timings.total_ns as u64),
                    )))
                    .collect();
                doc["timings_ns"] = serde_json::Value::Object(timings);
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        "csv" => {
            let header: Vec<String> = std::iter::once("n".to_string())
                .chain((1..=run.precision).map(|n| n.to_string()))
                .collect();
            writeln!(out, "{}", header.join(","))?;
            for (i, form) in run.basis.forms.iter().enumerate() {
                let row: Vec<String> = std::iter::once((i + 1).to_string())
                    .chain(form.iter().map(|c| c.to_string()))
                    .collect();
                writeln!(out, "{}", row.join(","))?;
            }
            if args.time {
                for (name, ns) in run.timings.stages() {
                    writeln!(out, "# t_{name}_ns = {ns}")?;
                }
            }
        }
        other => bail!("unknown format {other}"),
    }
    Ok(())
}

/// Render a coefficient vector as "q + a2*q^2 + ...".
fn pretty_q_expansion<F: Field>(form: &[F]) -> String {
    let mut s = String::new();
    let one = F::one();
    let minus_one = one.neg();
    for (i, c) in form.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let n = i + 1;
        let term = if n == 1 { "q".to_string() } else { format!("q^{n}") };
        let (sign, mag) = if *c == minus_one {
            ("-", term)
        } else if *c == one {
            ("+", term)
        } else {
            let cs = c.to_string();
            match cs.strip_prefix('-') {
                Some(rest) => ("-", format!("{rest}*{term}")),
                None => ("+", format!("{cs}*{term}")),
            }
        };
        if s.is_empty() {
            if sign == "-" {
                s.push('-');
            }
            s.push_str(&mag);
        } else {
            s.push_str(&format!(" {sign} {mag}"));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn parse_levels(spec: &str) -> anyhow::Result<Vec<u64>> {
    if let Some((a, b)) = spec.split_once("..") {
        let a: u64 = a.trim().parse().context("bad range start")?;
        let b: u64 = b.trim().trim_start_matches('=').parse().context("bad range end")?;
        if a > b || a < 1 {
            bail!("bad level range {spec}");
        }
        Ok((a..=b).collect())
    } else {
        spec.split(',')
            .map(|s| s.trim().parse::<u64>().context("bad level"))
            .collect()
    }
}

fn run_sweep(
    levels: &str,
    weights: &str,
    char_spec: &str,
    cap: usize,
    out: Option<&std::path::Path>,
    fit: bool,
) -> anyhow::Result<()> {
    let levels = parse_levels(levels)?;
    let weights: Vec<u32> = weights
        .split(',')
        .map(|s| s.trim().parse::<u32>().context("bad weight"))
        .collect::<anyhow::Result<_>>()?;
    let mut config = SweepConfig::new(levels, weights.clone());
    config.char_spec = CharSpec::parse(char_spec).context("parsing --char")?;
    config.dim_cap = cap;

    let result = sweep(&config).context("sweep failed")?;
    for note in &result.skipped {
        eprintln!("skipped: {note}");
    }
    let csv = records_to_csv(&result.records);
    match out {
        Some(path) => std::fs::write(path, &csv).with_context(|| format!("writing {path:?}"))?,
        None => print!("{csv}"),
    }

    if fit {
        for &w in &weights {
            let slice: Vec<_> = result
                .records
                .iter()
                .filter(|r| r.weight == w)
                .cloned()
                .collect();
            match fit_exponents(&slice, Axis::Level) {
                Ok(report) => {
                    eprintln!("fit (k = {w}, {} points): total slope {:.3}", report.points, report.total_slope);
                    for (stage, slope) in &report.stage_slopes {
                        eprintln!("  {stage:<10} slope {slope:.3}");
                    }
                }
                Err(e) => eprintln!("fit (k = {w}): {e}"),
            }
        }
    }
    Ok(())
}

fn run_census(max_n: u64, out: Option<&std::path::Path>) -> anyhow::Result<()> {
    let rows = hecke_set_census(max_n);
    let csv = census_to_csv(&rows);
    match out {
        Some(path) => std::fs::write(path, &csv).with_context(|| format!("writing {path:?}"))?,
        None => print!("{csv}"),
    }
    Ok(())
}
