use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use qgraph::sweep::format_sig12;
use qgraph::{
    compare_with, entanglement_analytic, entanglement_exact, run_protocol, run_sweep, write_csv,
    Exec, GraphStateSpec, ShotConfig, SweepSpec, SweepTarget,
};

#[derive(Parser)]
#[command(
    name = "qgraph",
    version,
    about = "Entanglement of RXX graph states on directed weighted networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form entanglement, Bloch vector and neighbourhood of one qubit.
    Analytic(Target),
    /// Shot-based estimate next to the exact and closed-form values.
    Simulate {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        shots: Shots,
    },
    /// Evaluate a 1-D or 2-D parameter grid and write CSV.
    Sweep(SweepArgs),
    /// Cross-check all three evaluation paths; exit status 0 iff they agree.
    Compare {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        shots: Shots,
        /// Added to the closed-form value before comparing (harness self-test).
        #[arg(long, hide = true, default_value_t = 0.0, allow_hyphen_values = true)]
        analytic_offset: f64,
    },
}

#[derive(Args)]
struct Target {
    /// Graph file.
    #[arg(long)]
    graph: PathBuf,
    /// Qubit (vertex) index, 0-based.
    #[arg(long)]
    qubit: usize,
}

#[derive(Args)]
struct Shots {
    /// Shots per measured axis.
    #[arg(long, default_value_t = qgraph::protocol::DEFAULT_SHOTS,
          value_parser = clap::value_parser!(u64).range(1..))]
    shots: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    target: Target,
    /// Parameter to vary: arc:i:j, alpha:k, theta:k, alpha:* or theta:* (at most twice).
    #[arg(long = "vary", required = true)]
    vary: Vec<String>,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    from: String,
    #[arg(long, default_value = "pi", allow_hyphen_values = true)]
    to: String,
    #[arg(long, default_value = "pi/16")]
    step: String,
    /// Add shot estimates with this many shots per axis.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    shots: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load(path: &Path) -> Result<GraphStateSpec> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    GraphStateSpec::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn neighbours(list: impl Iterator<Item = String>) -> String {
    let items: Vec<String> = list.collect();
    if items.is_empty() {
        "-".into()
    } else {
        items.join(" ")
    }
}

fn cmd_analytic(t: &Target) -> Result<()> {
    let spec = load(&t.graph)?;
    let k = t.qubit;
    let e = entanglement_analytic(&spec, k)?;
    let b = qgraph::bloch_vector_analytic(&spec, k)?;
    let c = spec.classify_neighbors(k)?;
    let (din, dout) = spec.degrees(k)?;

    let mut out = io::stdout().lock();
    writeln!(out, "qubit       {k} of {}", spec.num_qubits())?;
    writeln!(out, "E           {}", format_sig12(e.value))?;
    writeln!(
        out,
        "bloch       {} {} {}",
        format_sig12(b.sx),
        format_sig12(b.sy),
        format_sig12(b.sz)
    )?;
    writeln!(out, "indegree    {din}")?;
    writeln!(out, "outdegree   {dout}")?;
    writeln!(
        out,
        "ingoing     {}",
        neighbours(
            c.ingoing
                .iter()
                .map(|n| format!("{}:{}", n.vertex, format_sig12(n.weight)))
        )
    )?;
    writeln!(
        out,
        "outgoing    {}",
        neighbours(
            c.outgoing
                .iter()
                .map(|n| format!("{}:{}", n.vertex, format_sig12(n.weight)))
        )
    )?;
    writeln!(
        out,
        "bidirected  {}",
        neighbours(c.bidirected.iter().map(|n| format!(
            "{}:{}/{}",
            n.vertex,
            format_sig12(n.weight_in),
            format_sig12(n.weight_out)
        )))
    )?;
    Ok(())
}

fn cmd_simulate(t: &Target, s: &Shots) -> Result<()> {
    let spec = load(&t.graph)?;
    let k = t.qubit;
    let outcome = run_protocol(&spec, k, s.shots, s.seed)?;
    let exact = entanglement_exact(&spec, k)?;
    let analytic = entanglement_analytic(&spec, k)?;

    let mut out = io::stdout().lock();
    writeln!(out, "qubit       {k} of {}", spec.num_qubits())?;
    writeln!(out, "shots       {} per axis, seed {}", s.shots, s.seed)?;
    for (axis, m) in ["x", "y", "z"].iter().zip(&outcome.means) {
        writeln!(
            out,
            "<sigma_{axis}>   {} +- {}",
            format_sig12(m.mean),
            format_sig12(m.stderr)
        )?;
    }
    let note = if outcome.stderr_unreliable {
        "  (stderr unreliable near maximal entanglement)"
    } else {
        ""
    };
    writeln!(
        out,
        "E_shots     {} +- {}{note}",
        format_sig12(outcome.estimate.value),
        format_sig12(outcome.estimate.stderr.unwrap_or(0.0))
    )?;
    writeln!(out, "E_exact     {}", format_sig12(exact.value))?;
    writeln!(out, "E_analytic  {}", format_sig12(analytic.value))?;
    Ok(())
}

fn cmd_sweep(a: &SweepArgs) -> Result<()> {
    let spec = load(&a.target.graph)?;
    let targets = a
        .vary
        .iter()
        .map(|v| SweepTarget::parse(v))
        .collect::<qgraph::Result<Vec<_>>>()?;
    let sweep = SweepSpec::parse_range(targets, &a.from, &a.to, &a.step)?;
    let shots = a.shots.map(|shots| ShotConfig {
        shots,
        seed: a.seed,
    });
    let rows = run_sweep(&spec, a.target.qubit, &sweep, shots, Exec::default())?;

    match &a.out {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            write_csv(&mut w, &rows)?;
            w.flush()?;
            eprintln!("wrote {} rows to {}", rows.len(), path.display());
        }
        None => {
            let stdout = io::stdout().lock();
            let mut w = BufWriter::new(stdout);
            write_csv(&mut w, &rows)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn cmd_compare(t: &Target, s: &Shots, offset: f64) -> Result<()> {
    let spec = load(&t.graph)?;
    let report = compare_with(&spec, t.qubit, s.shots, s.seed, |spec, k| {
        Ok(entanglement_analytic(spec, k)?.value + offset)
    })?;
    let estimate = report.shots.estimate;

    let mut out = io::stdout().lock();
    writeln!(out, "E_analytic  {}", format_sig12(report.e_analytic))?;
    writeln!(out, "E_exact     {}", format_sig12(report.e_exact))?;
    writeln!(
        out,
        "E_shots     {} +- {}",
        format_sig12(estimate.value),
        format_sig12(estimate.stderr.unwrap_or(0.0))
    )?;
    let verdict = |ok: bool| if ok { "ok" } else { "FAIL" };
    writeln!(
        out,
        "analytic vs exact  |diff| = {:e} (tol {:e})  {}",
        (report.e_analytic - report.e_exact).abs(),
        qgraph::sweep::ANALYTIC_EXACT_TOL,
        verdict(report.analytic_ok)
    )?;
    writeln!(
        out,
        "shots vs exact     |diff| = {} (tol {})  {}",
        format_sig12((estimate.value - report.e_exact).abs()),
        format_sig12(report.shot_tolerance),
        verdict(report.shots_ok)
    )?;
    if !report.passed() {
        bail!("evaluation paths disagree");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analytic(t) => cmd_analytic(t),
        Command::Simulate { target, shots } => cmd_simulate(target, shots),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Compare {
            target,
            shots,
            analytic_offset,
        } => cmd_compare(target, shots, *analytic_offset),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
