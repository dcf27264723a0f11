use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use swarm_wilson::config::Configuration;
use swarm_wilson::graph::VertexSet;
use swarm_wilson::oracle::{default_max_states, explore_with, shortest_plan_with, SearchOptions};
use swarm_wilson::planner::relocate;
use swarm_wilson::verify::{self, Family, Outcome};
use swarm_wilson::wg::{parse_plan, parse_wg, write_plan};
use swarm_wilson::wilson::{decide_reachable, exchange_analysis, orbits, weakness, wilson_group};
use swarm_wilson::{ConfigError, FormatError, PlanError, SearchError};

#[derive(Parser)]
#[command(name = "swarm-wilson", version, about = "Reachability of labelled connected swarms on graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct SearchArgs {
    /// State budget for exhaustive search [default: $SWARM_WILSON_MAX_STATES or 2000000]
    #[arg(long)]
    max_states: Option<usize>,
    /// Worker threads for exhaustive search
    #[arg(long)]
    threads: Option<usize>,
}

impl SearchArgs {
    fn options(self) -> SearchOptions {
        SearchOptions { max_states: self.max_states.unwrap_or_else(default_max_states), threads: self.threads }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Block structure and symbolic Wilson group of a configuration
    Analyze { file: PathBuf },
    /// Whether the target configuration is reachable from the start
    Decide {
        file: PathBuf,
        target: PathBuf,
        /// Replay this plan from the start and check that it lands on the target
        #[arg(long)]
        plan: Option<PathBuf>,
    },
    /// A move sequence onto the target support, or onto the exact target with --exact
    Plan {
        file: PathBuf,
        target: PathBuf,
        #[arg(long)]
        exact: bool,
        /// Write the plan here instead of standard output
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Exhaustive search from a configuration
    Oracle {
        file: PathBuf,
        /// Also print a shortest plan to this configuration
        target: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Compare predicted and exhaustive group orders over a family of instances
    Verify {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        search: SearchArgs,
    },
}

/// A failure with its machine-readable code and exit status.
struct Failure {
    code: &'static str,
    message: String,
    status: u8,
}

impl Failure {
    fn input(code: &'static str, message: impl Into<String>) -> Failure {
        Failure { code, message: message.into(), status: 2 }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::input(e.code(), e.to_string())
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::input(e.code(), e.to_string())
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        let status = if matches!(e, SearchError::BudgetExceeded { .. }) { 3 } else { 2 };
        Failure { code: e.code(), message: e.to_string(), status }
    }
}

impl From<PlanError> for Failure {
    fn from(e: PlanError) -> Self {
        match e {
            PlanError::Search(s) => s.into(),
            other => Failure::input(other.code(), other.to_string()),
        }
    }
}

type Report = Result<(String, u8), Failure>;

fn load(path: &Path) -> Result<Configuration, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input("Io", format!("{}: {e}", path.display())))?;
    let file = parse_wg(&text).map_err(|e| {
        let f: Failure = e.into();
        Failure { message: format!("{}: {}", path.display(), f.message), ..f }
    })?;
    Ok(file.require_config()?.clone())
}

fn load_pair(file: &Path, target: &Path) -> Result<(Configuration, Configuration), Failure> {
    let (a, b) = (load(file)?, load(target)?);
    if a.graph() != b.graph() {
        return Err(ConfigError::GraphMismatch.into());
    }
    if a.k() != b.k() {
        return Err(ConfigError::LabelCountMismatch { left: a.k(), right: b.k() }.into());
    }
    Ok((a, b))
}

fn set_str(s: &VertexSet) -> String {
    let parts: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn analyze(file: &Path) -> Report {
    let c = load(file)?;
    let g = c.graph();
    let mut out = String::new();
    let name = if g.name().is_empty() { "G" } else { g.name() };
    writeln!(out, "graph {name}: {} vertices, {} edges", g.vertex_count(), g.edge_count()).unwrap();
    writeln!(out, "configuration {c}").unwrap();
    writeln!(
        out,
        "robots {} of {}, saturated {}",
        c.k(),
        g.vertex_count(),
        if c.is_saturated() { "yes" } else { "no" }
    )
    .unwrap();
    let partition = g.edge_blocks();
    let bridges: Vec<String> = partition.bridges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
    writeln!(out, "bridges {}", if bridges.is_empty() { "none".into() } else { bridges.join(" ") }).unwrap();
    for (i, block) in partition.blocks.iter().enumerate() {
        let mut line = format!("block {i} {}", set_str(block));
        if block.len() > 1 {
            let w = weakness(g, block);
            let yn = |b: bool| if b { "yes" } else { "no" };
            write!(line, " weak {} all-odd {}", yn(w.is_weak), yn(w.all_odd)).unwrap();
        }
        writeln!(out, "{line}").unwrap();
    }
    let tree = g.block_tree(&partition);
    let tree_edges: Vec<String> =
        tree.edges.iter().map(|e| format!("{}-{} via {}-{}", e.a, e.b, e.bridge.0, e.bridge.1)).collect();
    writeln!(out, "block tree {}", if tree_edges.is_empty() { "single node".into() } else { tree_edges.join(", ") })
        .unwrap();
    if !c.is_saturated() {
        let analysis = exchange_analysis(&c);
        for cs in &analysis.centers {
            writeln!(out, "c-set block {} {}", cs.class, set_str(&cs.set)).unwrap();
        }
        for cs in &analysis.merged {
            writeln!(out, "merged block {} {}", cs.class, set_str(&cs.set)).unwrap();
        }
    }
    let d = wilson_group(&c);
    writeln!(out, "group {d}").unwrap();
    writeln!(out, "order {}", d.order()).unwrap();
    writeln!(out, "label-group order {}", d.label_order()).unwrap();
    let orbit_strs: Vec<String> = orbits(&d).iter().map(set_str).collect();
    writeln!(out, "orbits {}", orbit_strs.join(" ")).unwrap();
    Ok((out, 0))
}

fn decide(file: &Path, target: &Path, plan: Option<&Path>) -> Report {
    let (f0, goal) = load_pair(file, target)?;
    let mut out = String::new();
    if let Some(plan_path) = plan {
        let text = std::fs::read_to_string(plan_path)
            .map_err(|e| Failure::input("Io", format!("{}: {e}", plan_path.display())))?;
        let seq = parse_plan(&text, &f0)?;
        let (end, _) = seq.apply().map_err(|e| Failure::input(e.code(), e.to_string()))?;
        let verdict = if end == goal {
            "reaches target"
        } else if end.is_similar(&goal)? {
            "reaches target support"
        } else {
            "misses target"
        };
        writeln!(out, "plan replays {} moves, {verdict}", seq.len()).unwrap();
    }
    let d = decide_reachable(&f0, &goal)?;
    if d.reachable {
        writeln!(out, "REACHABLE witness {}", d.residual).unwrap();
    } else {
        writeln!(out, "UNREACHABLE residual {} not in {}", d.residual, d.group).unwrap();
    }
    Ok((out, 0))
}

fn plan(file: &Path, target: &Path, exact: bool, output: Option<&Path>, search: SearchArgs) -> Report {
    let (f0, goal) = load_pair(file, target)?;
    let seq = if exact {
        match shortest_plan_with(&f0, &goal, search.options())? {
            Some(seq) => seq,
            None => return Ok(("UNREACHABLE\n".into(), 0)),
        }
    } else {
        relocate(&f0, &goal.occupied())?
    };
    let text = write_plan(&seq);
    match output {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Failure::input("Io", format!("{}: {e}", path.display())))?;
            Ok((format!("wrote {} moves to {}\n", seq.len(), path.display()), 0))
        }
        None => Ok((text, 0)),
    }
}

fn oracle(file: &Path, target: Option<&Path>, search: SearchArgs) -> Report {
    let f0 = load(file)?;
    let space = explore_with(&f0, search.options())?;
    let group = space.label_group();
    let mut out = String::new();
    writeln!(out, "states {}", space.len()).unwrap();
    writeln!(out, "label-group order {}", group.len()).unwrap();
    for p in &group {
        writeln!(out, "element {p}").unwrap();
    }
    if let Some(t) = target {
        let (_, goal) = load_pair(file, t)?;
        match shortest_plan_with(&f0, &goal, search.options())? {
            Some(seq) => out.push_str(&write_plan(&seq)),
            None => out.push_str("UNREACHABLE\n"),
        }
    }
    Ok((out, 0))
}

fn run_verify(family: &str, max_n: usize, seed: u64, search: SearchArgs) -> Report {
    let family = Family::parse(family).ok_or_else(|| {
        let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
        Failure::input("UnknownFamily", format!("unknown family {family:?}; expected one of {}", names.join(", ")))
    })?;
    let rows = verify::run(family, max_n, seed, search.options());
    let mut out = String::new();
    writeln!(out, "instance\tpredicted\toracle\toutcome\tgroup").unwrap();
    for r in &rows {
        writeln!(out, "{r}").unwrap();
    }
    let tally: Vec<String> = verify::tally(&rows).iter().map(|(k, v)| format!("{k} {v}")).collect();
    writeln!(out, "total {}: {}", rows.len(), tally.join(", ")).unwrap();
    let status = if rows.iter().any(|r| r.outcome == Outcome::Mismatch) { 1 } else { 0 };
    Ok((out, status))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze { file } => analyze(file),
        Command::Decide { file, target, plan } => decide(file, target, plan.as_deref()),
        Command::Plan { file, target, exact, output, search } => plan(file, target, *exact, output.as_deref(), *search),
        Command::Oracle { file, target, search } => oracle(file, target.as_deref(), *search),
        Command::Verify { family, max_n, seed, search } => run_verify(family, *max_n, *seed, *search),
    };
    match result {
        Ok((text, status)) => {
            print!("{text}");
            ExitCode::from(status)
        }
        Err(f) => {
            eprintln!("error: {}", f.code);
            eprintln!("{}", f.message);
            ExitCode::from(f.status)
        }
    }
}
