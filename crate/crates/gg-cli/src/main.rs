//! `gg`: command-line front end for guardgraph.
//!
//! Exit codes: 0 success, 1 parse error, 2 validation failure, 3 polygon
//! not x-monotone, 4 verification found a violation. The log level is read
//! from the `GG_LOG` environment variable.

mod io;
mod render;

use std::fmt::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use guardgraph::diag_dominate::{diag_2dominate_contraction, diag_2dominate_linear, diag_bound};
use guardgraph::edge_dominate::{edge_2dominate_linear, edge_2dominate_quadratic, edge_bound, edge_bound_linear};
use guardgraph::geometry::{
    build_constrained_triangulation, guard_piecewise_convex, verify_guard_set, Guard, GuardSet,
    PiecewiseConvexPolygon, Strategy,
};
use guardgraph::lowerbounds::{
    gen_diag_lb, gen_edge_lb, gen_edge_lb_glued, gen_fan_polygon, gen_monotone_lb, gen_spike_polygon,
};
use guardgraph::monotone::{decompose, guards_from_decomposition, is_x_monotone};
use guardgraph::oracle::check_bound_exhaustive;
use guardgraph::trigraph::{random_triangulation, DominatingSet, Mode, TriangulationGraph};
use io::{emit, load, parse_json, read_text, to_json, Failure};
use serde_json::json;

#[derive(Parser)]
#[command(name = "gg", version, about = "2-dominating sets of triangulation graphs and guards of piecewise-convex polygons")]
struct Cli {
    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed of every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a 2-dominating set of a triangulation graph.
    Dominate {
        /// Graph JSON file.
        input: PathBuf,
        #[arg(long, value_enum)]
        algo: Algo,
        /// Also draw the graph and the set to this SVG file.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Compute a guard set of a piecewise-convex polygon.
    Guard {
        /// Polygon JSON file.
        input: PathBuf,
        #[arg(long, value_enum)]
        strategy: GuardStrategy,
        /// Also draw the polygon and the guards to this SVG file.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Generate a lower-bound instance.
    Genlb {
        #[command(subcommand)]
        family: Family,
    },
    /// Check algorithms exhaustively or check a guard set by sampling.
    Verify {
        /// Polygon JSON file followed by guard set JSON file.
        inputs: Vec<PathBuf>,
        /// Run over every triangulation of the convex n-gon.
        #[arg(long, value_name = "N")]
        exhaustive: Option<usize>,
        /// Set kind of the exhaustive run.
        #[arg(long, value_enum, default_value_t = ModeArg::Diag)]
        mode: ModeArg,
        /// Algorithm of the exhaustive run; defaults to the first one of the mode.
        #[arg(long, value_enum)]
        algo: Option<Algo>,
        /// Sample grid resolution per axis.
        #[arg(long, default_value_t = 50)]
        density: usize,
    },
    /// Draw a graph or polygon, optionally with a set or guard set, as SVG.
    Render {
        /// Graph or polygon JSON file.
        input: PathBuf,
        /// Dominating set or guard set JSON file.
        result: Option<PathBuf>,
    },
    /// Print the sorted vertex sequence of an x-monotone polygon and its guards.
    Monotone {
        /// Polygon JSON file.
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum Family {
    /// The seven-vertex graph needing three edges.
    Gamma7,
    /// Copies of the seven-vertex graph glued together, n = 5m + 2.
    Glued {
        #[arg(long)]
        m: usize,
    },
    /// Graph needing floor((n+1)/3) diagonals, n = 3m + variant - 1.
    Diag {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        variant: usize,
    },
    /// Graph needing floor((2n+1)/5) edges, n = 5(m+1) + residue.
    Edge {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        residue: usize,
    },
    /// Polygon with k spikes needing k mobile guards.
    Spikes {
        #[arg(long)]
        k: usize,
    },
    /// Polygon needing many edge guards.
    Fan {
        #[arg(long)]
        n: usize,
    },
    /// Monotone polygon needing ceil((n+1)/4) edge guards.
    Monotone {
        #[arg(long)]
        variant: usize,
        #[arg(long)]
        m: usize,
    },
    /// Random triangulation graph drawn with the global seed.
    Random {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    DiagLinear,
    DiagContract,
    EdgeQuadratic,
    EdgeLinear,
}

impl Algo {
    fn run(self, t: &TriangulationGraph) -> DominatingSet {
        match self {
            Algo::DiagLinear => diag_2dominate_linear(t),
            Algo::DiagContract => diag_2dominate_contraction(t),
            Algo::EdgeQuadratic => edge_2dominate_quadratic(t),
            Algo::EdgeLinear => edge_2dominate_linear(t),
        }
    }

    fn bound(self, n: usize) -> usize {
        match self {
            Algo::DiagLinear | Algo::DiagContract => diag_bound(n),
            Algo::EdgeQuadratic => edge_bound(n),
            Algo::EdgeLinear => edge_bound_linear(n),
        }
    }

    fn mode(self) -> Mode {
        match self {
            Algo::DiagLinear | Algo::DiagContract => Mode::DiagonalAllowed,
            Algo::EdgeQuadratic | Algo::EdgeLinear => Mode::EdgeOnly,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Algo::DiagLinear => "diag-linear",
            Algo::DiagContract => "diag-contract",
            Algo::EdgeQuadratic => "edge-quadratic",
            Algo::EdgeLinear => "edge-linear",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GuardStrategy {
    MobileN3,
    EdgeQ,
    EdgeLinear,
    Monotone,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Diag,
    Edge,
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Invalid(e.to_string())
}

fn write_svg(path: Option<&Path>, svg: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, svg).map_err(|e| invalid(format!("{}: {e}", p.display()))),
        None => Ok(()),
    }
}

fn dominate(cli: &Cli, input: &Path, algo: Algo, svg: Option<&Path>) -> Result<(), Failure> {
    let t: TriangulationGraph = load(input)?;
    let set = algo.run(&t);
    log::info!("{}: n = {}, {} members, bound {}", algo.name(), t.n(), set.len(), algo.bound(t.n()));
    write_svg(svg, &render::graph_svg(&t, Some(&set)))?;
    emit(&to_json(&set), cli.out.as_deref())
}

fn monotone_guards(p: &PiecewiseConvexPolygon) -> Result<(guardgraph::monotone::MonotoneDecomposition, GuardSet), Failure> {
    if !is_x_monotone(p) {
        return Err(Failure::NotMonotone("the polygon is not x-monotone".into()));
    }
    let d = decompose(p).map_err(|e| Failure::NotMonotone(e.to_string()))?;
    let g = guards_from_decomposition(&d);
    Ok((d, g))
}

fn guard(cli: &Cli, input: &Path, strategy: GuardStrategy, svg: Option<&Path>) -> Result<(), Failure> {
    let p: PiecewiseConvexPolygon = load(input)?;
    let g = match strategy {
        GuardStrategy::Monotone => monotone_guards(&p)?.1,
        GuardStrategy::MobileN3 => guard_piecewise_convex(&p, Strategy::MobileN3).map_err(invalid)?,
        GuardStrategy::EdgeQ => guard_piecewise_convex(&p, Strategy::EdgeQ).map_err(invalid)?,
        GuardStrategy::EdgeLinear => guard_piecewise_convex(&p, Strategy::EdgeLinear).map_err(invalid)?,
    };
    log::info!("n = {}, {} guards", p.n(), g.len());
    if svg.is_some() {
        let ct = build_constrained_triangulation(&p).ok();
        write_svg(svg, &render::polygon_svg(&p, ct.as_ref(), Some(&g)))?;
    }
    emit(&to_json(&g), cli.out.as_deref())
}

fn genlb(cli: &Cli, family: &Family) -> Result<(), Failure> {
    let text = match *family {
        Family::Gamma7 => to_json(&gen_edge_lb_glued(1).map_err(invalid)?),
        Family::Glued { m } => to_json(&gen_edge_lb_glued(m).map_err(invalid)?),
        Family::Diag { m, variant } => to_json(&gen_diag_lb(m, variant).map_err(invalid)?),
        Family::Edge { m, residue } => to_json(&gen_edge_lb(m, residue).map_err(invalid)?),
        Family::Random { n } => to_json(&random_triangulation(n, cli.seed).map_err(invalid)?),
        Family::Spikes { k } => gen_spike_polygon(k).map_err(invalid)?.to_json_string() + "\n",
        Family::Fan { n } => gen_fan_polygon(n).map_err(invalid)?.to_json_string() + "\n",
        Family::Monotone { variant, m } => gen_monotone_lb(variant, m).map_err(invalid)?.to_json_string() + "\n",
    };
    emit(&text, cli.out.as_deref())
}

fn verify_exhaustive(cli: &Cli, n: usize, mode: ModeArg, algo: Option<Algo>) -> Result<(), Failure> {
    let algo = algo.unwrap_or(match mode {
        ModeArg::Diag => Algo::DiagLinear,
        ModeArg::Edge => Algo::EdgeQuadratic,
    });
    let wanted = match mode {
        ModeArg::Diag => Mode::DiagonalAllowed,
        ModeArg::Edge => Mode::EdgeOnly,
    };
    if algo.mode() != wanted {
        return Err(Failure::Parse(format!("--algo {} does not produce sets of the requested --mode", algo.name())));
    }
    let report = check_bound_exhaustive(n, algo.mode(), |t| algo.run(t), |n| algo.bound(n)).map_err(invalid)?;
    let text = if cli.json {
        let violations: Vec<_> = report
            .violations
            .iter()
            .map(|v| json!({"diagonals": v.diagonals, "size": v.size, "bound": v.bound, "optimum": v.optimum, "reason": v.reason}))
            .collect();
        to_json(&json!({
            "n": n,
            "mode": report.mode,
            "algo": algo.name(),
            "bound": algo.bound(n),
            "instances": report.instances,
            "max_size": report.max_size,
            "violations": violations,
        }))
    } else {
        format!(
            "{} violations / {} triangulations ({}, n = {n}, max size {}, bound {})\n",
            report.violations.len(),
            report.instances,
            algo.name(),
            report.max_size,
            algo.bound(n)
        )
    };
    emit(&text, cli.out.as_deref())?;
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(Failure::Violation(format!("violation on diagonals {:?}: {}", v.diagonals, v.reason))),
    }
}

fn check_guard_indices(p: &PiecewiseConvexPolygon, g: &GuardSet) -> Result<(), Failure> {
    let n = p.n();
    for guard in &g.guards {
        let ok = match *guard {
            Guard::Arc { index } => index < n,
            Guard::Diagonal { a, b } => a < n && b < n && a != b,
        };
        if !ok {
            return Err(invalid(format!("guard {guard:?} does not fit a polygon with {n} vertices")));
        }
    }
    Ok(())
}

fn verify_guards(cli: &Cli, inputs: &[PathBuf], density: usize) -> Result<(), Failure> {
    let [poly, guards] = inputs else {
        return Err(Failure::Parse("verify needs a polygon file and a guard set file, or --exhaustive N".into()));
    };
    if density == 0 {
        return Err(Failure::Parse("--density must be positive".into()));
    }
    let p: PiecewiseConvexPolygon = load(poly)?;
    let g: GuardSet = load(guards)?;
    check_guard_indices(&p, &g)?;
    let r = verify_guard_set(&p, &g, density);
    let text = if cli.json {
        to_json(&r)
    } else {
        format!("covered={} ({} samples, {} uncovered witnesses)\n", r.covered, r.samples, r.witnesses.len())
    };
    emit(&text, cli.out.as_deref())?;
    match r.witnesses.first() {
        None => Ok(()),
        Some(w) => Err(Failure::Violation(format!("point ({}, {}) is seen by no guard", w[0], w[1]))),
    }
}

fn render_cmd(cli: &Cli, input: &Path, result: Option<&Path>) -> Result<(), Failure> {
    let origin = input.display().to_string();
    let value: serde_json::Value = parse_json(&read_text(input)?, &origin)?;
    let svg = if value.get("vertices").is_some() {
        let p: PiecewiseConvexPolygon = serde_json::from_value(value).map_err(|e| invalid(format!("{origin}: {e}")))?;
        let g: Option<GuardSet> = result.map(load).transpose()?;
        if let Some(g) = &g {
            check_guard_indices(&p, g)?;
        }
        let ct = build_constrained_triangulation(&p).ok();
        render::polygon_svg(&p, ct.as_ref(), g.as_ref())
    } else {
        let t: TriangulationGraph = serde_json::from_value(value).map_err(|e| invalid(format!("{origin}: {e}")))?;
        let set: Option<DominatingSet> = result.map(load).transpose()?;
        if let Some(s) = &set {
            if let Some(&(a, b)) = s.members.iter().find(|&&(a, b)| !t.has_edge(a, b)) {
                return Err(invalid(format!("member ({a}, {b}) is not an edge of the graph")));
            }
        }
        render::graph_svg(&t, set.as_ref())
    };
    emit(&svg, cli.out.as_deref())
}

fn monotone_cmd(cli: &Cli, input: &Path) -> Result<(), Failure> {
    let p: PiecewiseConvexPolygon = load(input)?;
    let (d, g) = monotone_guards(&p)?;
    let text = if cli.json {
        to_json(&json!({"decomposition": d, "guards": g}))
    } else {
        let cell = |e: Option<usize>| e.map_or_else(|| "-".to_string(), |v| v.to_string());
        let mut s = String::from("j\tx\ty\tvertex\tsigma\tleft\tright\topposite\n");
        for (j, u) in d.points.iter().enumerate() {
            let _ = writeln!(
                s,
                "{j}\t{:.6}\t{:.6}\t{}\t{}\t{}\t{}\t{}",
                u.point[0],
                u.point[1],
                cell(u.vertex),
                u.sigma,
                cell(u.left_edge),
                cell(u.right_edge),
                cell(u.opposite_edge)
            );
        }
        let arcs: Vec<String> = g
            .guards
            .iter()
            .map(|x| match *x {
                Guard::Arc { index } => index.to_string(),
                Guard::Diagonal { a, b } => format!("{a}-{b}"),
            })
            .collect();
        let _ = writeln!(s, "guards ({}): arcs {}", g.len(), arcs.join(" "));
        s
    };
    emit(&text, cli.out.as_deref())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Dominate { input, algo, svg } => dominate(cli, input, *algo, svg.as_deref()),
        Command::Guard { input, strategy, svg } => guard(cli, input, *strategy, svg.as_deref()),
        Command::Genlb { family } => genlb(cli, family),
        Command::Verify { inputs, exhaustive, mode, algo, density } => match exhaustive {
            Some(n) if inputs.is_empty() => verify_exhaustive(cli, *n, *mode, *algo),
            Some(_) => Err(Failure::Parse("--exhaustive takes no input files".into())),
            None => verify_guards(cli, inputs, *density),
        },
        Command::Render { input, result } => render_cmd(cli, input, result.as_deref()),
        Command::Monotone { input } => monotone_cmd(cli, input),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("GG_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code() as u8)
        }
    }
}
