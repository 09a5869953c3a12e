mod report;
mod svg;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use equisplit::closed_form::asymptotic_bracket;
use equisplit::constructions::{construct, validate_split};
use equisplit::hexpack::{
    pack_hexagons_best_offset, ratio_series, ratio_series_parallel, HexPackResult,
};
use equisplit::optimizer::{
    arc_property_check, case_catalog, optimize, parse_topology, write_partition, CatalogId,
    InnerSolver, OptimizedPartition, OptimizerConfig, TopologySpec,
};
use equisplit::parallel::{ordered_map, worker_count};
use equisplit::verify;

use report::{sig10, ReportRow};

#[derive(Parser)]
#[command(
    name = "equisplit",
    version,
    about = "Shortest cuts dividing a regular polygon into equal areas"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Known bounds for l(m, n) over a grid of part and vertex counts.
    Bounds(BoundsArgs),
    /// Validate a shipped construction and optionally draw it.
    Construct(ConstructArgs),
    /// Minimize cut length for a topology file or a case catalog.
    Optimize(OptimizeArgs),
    /// Hexagon packing estimates for a series of part counts.
    Hexpack(HexpackArgs),
    /// Run the built-in self checks.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Args)]
struct BoundsArgs {
    /// Part count, or an inclusive range such as 2..6.
    #[arg(long)]
    m: String,
    /// Vertex count, or an inclusive range.
    #[arg(long)]
    n: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Also run the optimizer catalogs where one exists.
    #[arg(long)]
    optimize: bool,
}

#[derive(Args)]
struct ConstructArgs {
    /// corner-arc, y-split, three-arcs, median-arc, t-split, cross or annulus:<n>.
    #[arg(long = "case")]
    case_id: String,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Area tolerance for validation.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Solver {
    Lbfgs,
    Gd,
}

#[derive(Args)]
struct OptimizeArgs {
    #[arg(long, conflicts_with = "catalog", required_unless_present = "catalog")]
    topology: Option<PathBuf>,
    /// 3.1 (halves of the triangle) or 3.2 (thirds).
    #[arg(long)]
    catalog: Option<CatalogId>,
    /// Write the optimized partition here (topology mode only).
    #[arg(long, requires = "topology")]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 64)]
    points_per_edge: usize,
    #[arg(long, default_value_t = 10.0)]
    penalty_init: f64,
    #[arg(long, default_value_t = 2.0)]
    penalty_growth: f64,
    #[arg(long, default_value_t = 1e-8)]
    constraint_tol: f64,
    #[arg(long, default_value_t = 1e-6)]
    gradient_tol: f64,
    #[arg(long, default_value_t = 40)]
    max_outer: usize,
    #[arg(long, default_value_t = 20_000)]
    max_inner: usize,
    #[arg(long, value_enum, default_value = "lbfgs")]
    solver: Solver,
    #[arg(long, default_value_t = 12)]
    memory: usize,
    #[arg(long, default_value_t = 1e-3)]
    jitter: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Relative circle-fit tolerance for the arc check.
    #[arg(long, default_value_t = 1e-3)]
    arc_tol: f64,
    /// Run catalog cases on several threads.
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct HexpackArgs {
    #[arg(long)]
    n: usize,
    /// Comma-separated ascending part counts.
    #[arg(long, value_delimiter = ',', required = true)]
    series: Vec<u64>,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Try a grid of lattice offsets and keep the densest.
    #[arg(long)]
    best_offset: bool,
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only this check (1-based).
    #[arg(long)]
    only: Option<usize>,
}

/// Failure classes mapped to exit codes.
enum Failure {
    Io(anyhow::Error),
    Invalid(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Invalid(e)
    }
}

impl From<equisplit::Error> for Failure {
    fn from(e: equisplit::Error) -> Self {
        Failure::Invalid(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn io<T, E: Into<anyhow::Error>>(
    r: Result<T, E>,
    what: impl FnOnce() -> String,
) -> Result<T, Failure> {
    r.map_err(|e| Failure::Io(e.into().context(what())))
}

fn write_file(path: &Path, text: &str) -> Outcome {
    io(fs::write(path, text), || {
        format!("cannot write {}", path.display())
    })
}

fn range(s: &str) -> anyhow::Result<Vec<usize>> {
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse::<usize>()?, b.trim().parse::<usize>()?),
        None => {
            let v = s.trim().parse::<usize>()?;
            (v, v)
        }
    };
    if lo > hi {
        bail!("empty range {s}");
    }
    Ok((lo..=hi).collect())
}

fn catalog_length(m: usize, n: usize) -> Option<f64> {
    let th = match (m, n) {
        (2, 3) => CatalogId::Halves,
        (3, 3) => CatalogId::Thirds,
        _ => return None,
    };
    let cfg = OptimizerConfig::default();
    let runs = ordered_map(&case_catalog(th), worker_count(), |c| {
        optimize(&c.spec, &cfg).ok()
    });
    runs.into_iter()
        .flatten()
        .map(|p| p.total_length)
        .reduce(f64::min)
}

fn cmd_bounds(a: BoundsArgs) -> Outcome {
    let ms = range(&a.m).with_context(|| format!("bad --m '{}'", a.m))?;
    let ns = range(&a.n).with_context(|| format!("bad --n '{}'", a.n))?;
    let mut rows = Vec::new();
    for &n in &ns {
        for &m in &ms {
            let opt = if a.optimize {
                catalog_length(m, n)
            } else {
                None
            };
            rows.push(ReportRow::new(m, n, opt)?);
        }
    }
    let out = io::stdout().lock();
    let r = match a.format {
        Format::Text => report::write_text(&rows, out),
        Format::Csv => report::write_csv(&rows, out),
    };
    io(r, || "cannot write to standard output".into())
}

fn cmd_construct(a: ConstructArgs) -> Outcome {
    let split = construct(&a.case_id)?;
    let rep = validate_split(&split, a.tol);
    println!("{rep}");
    if let Some(path) = &a.svg {
        write_file(path, &svg::render(&split))?;
        println!("svg               {}", path.display());
    }
    if rep.passed() {
        Ok(())
    } else {
        Err(Failure::Invalid(anyhow!("validation failed")))
    }
}

fn config(a: &OptimizeArgs) -> OptimizerConfig {
    OptimizerConfig {
        points_per_edge: a.points_per_edge,
        penalty_init: a.penalty_init,
        penalty_growth: a.penalty_growth,
        constraint_tol: a.constraint_tol,
        gradient_tol: a.gradient_tol,
        max_outer: a.max_outer,
        max_inner: a.max_inner,
        inner_solver: match a.solver {
            Solver::Lbfgs => InnerSolver::Lbfgs { memory: a.memory },
            Solver::Gd => InnerSolver::GradientDescent,
        },
        jitter: a.jitter,
        seed: a.seed,
        ..OptimizerConfig::default()
    }
}

fn describe(p: &OptimizedPartition, arc_tol: f64) -> String {
    let fmt = |v: &[f64]| {
        v.iter()
            .map(|x| format!("{x:.6e}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let arcs = arc_property_check(p, arc_tol);
    format!(
        "length            {:.10}\nconverged         {} ({} outer, {} inner iterations)\nstationarity      {:.3e}\nresiduals         {}\nmultipliers       {}\narc check         {}\n{}",
        p.total_length,
        p.converged,
        p.outer_iterations,
        p.inner_iterations,
        p.stationarity,
        fmt(&p.constraint_residuals),
        fmt(&p.multiplier_estimates),
        if arcs.passed() { "pass" } else { "FAIL" },
        arcs.to_string().lines().map(|l| format!("  {l}\n")).collect::<String>()
    )
}

fn cmd_optimize(a: OptimizeArgs) -> Outcome {
    let cfg = config(&a);
    cfg.validate()?;
    if let Some(path) = &a.topology {
        // An unreadable topology is a usage problem, like a malformed one.
        let text =
            fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        let spec = parse_topology(&text).with_context(|| format!("{}", path.display()))?;
        let p = optimize(&spec, &cfg)?;
        println!("topology          {}", spec.label);
        print!("{}", describe(&p, a.arc_tol));
        if let Some(out) = &a.output {
            write_file(out, &write_partition(&spec, &p))?;
        }
        return Ok(());
    }
    let th = a.catalog.expect("clap requires --topology or --catalog");
    let cases = case_catalog(th);
    let threads = if a.parallel { worker_count() } else { 1 };
    let run = |spec: &TopologySpec| optimize(spec, &cfg);
    let specs: Vec<TopologySpec> = cases.iter().map(|c| c.spec.clone()).collect();
    let results = ordered_map(&specs, threads, run);
    let mut best: Option<(&str, f64)> = None;
    for (case, res) in cases.iter().zip(results) {
        let p = res?;
        println!("case ({}) {}", case.id, case.description);
        print!("{}", describe(&p, a.arc_tol));
        if best.map_or(true, |(_, l)| p.total_length < l) {
            best = Some((case.id, p.total_length));
        }
    }
    let (id, len) = best.expect("catalogs are nonempty");
    println!("winner: case ({id}) length {len:.10}");
    Ok(())
}

fn hex_csv<W: Write>(n: usize, rows: &[HexPackResult], out: W) -> anyhow::Result<()> {
    let b = asymptotic_bracket(n)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "m",
        "h",
        "c",
        "t",
        "l_t",
        "perimeter_B",
        "L",
        "ratio",
        "lower_const",
        "upper_const",
    ])?;
    for r in rows {
        w.write_record([
            r.m.to_string(),
            sig10(r.hex_side),
            r.embedded_count.to_string(),
            r.t.to_string(),
            sig10(r.l_t),
            sig10(r.perimeter_b),
            sig10(r.total_length_estimate),
            sig10(r.ratio),
            sig10(b.lower_const),
            sig10(b.upper_const),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_hexpack(a: HexpackArgs) -> Outcome {
    let bracket = asymptotic_bracket(a.n)?;
    let rows = if a.best_offset {
        if a.series.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Failure::Invalid(anyhow!(
                "--series must be strictly ascending"
            )));
        }
        let f = |&m: &u64| pack_hexagons_best_offset(a.n, m);
        let threads = if a.parallel { worker_count() } else { 1 };
        ordered_map(&a.series, threads, f)
            .into_iter()
            .collect::<Result<Vec<_>, _>>()?
    } else if a.parallel {
        ratio_series_parallel(a.n, &a.series, worker_count())?
    } else {
        ratio_series(a.n, &a.series)?
    };
    let last = rows.last().expect("series is nonempty");
    let summary = format!(
        "n={} m={} ratio {} bracket [{}, {}] ratio/upper {:.6}{}",
        a.n,
        last.m,
        sig10(last.ratio),
        sig10(bracket.lower_const),
        sig10(bracket.upper_const),
        last.ratio / bracket.upper_const,
        if last.ratio >= bracket.lower_const {
            ""
        } else {
            " (below lower constant)"
        }
    );
    match &a.csv {
        Some(path) => {
            let mut buf = Vec::new();
            hex_csv(a.n, &rows, &mut buf)?;
            write_file(path, &String::from_utf8(buf).expect("csv output is ASCII"))?;
            println!("{summary}");
        }
        None => {
            io(hex_csv(a.n, &rows, io::stdout().lock()), || {
                "cannot write to standard output".into()
            })?;
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    let outcomes = match a.only {
        Some(id) => match verify::run_check(id) {
            Some(o) => vec![o],
            None => {
                return Err(Failure::Invalid(anyhow!(
                    "no check {id}; there are {}",
                    verify::check_count()
                )))
            }
        },
        None => verify::run_all(),
    };
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    for o in &outcomes {
        println!("{o}");
    }
    println!(
        "{} of {} checks passed",
        outcomes.len() - failed,
        outcomes.len()
    );
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Invalid(anyhow!("{failed} checks failed")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bounds(a) => cmd_bounds(a),
        Command::Construct(a) => cmd_construct(a),
        Command::Optimize(a) => cmd_optimize(a),
        Command::Hexpack(a) => cmd_hexpack(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
