//! Command-line front end: solving, verification, sweeps, topology
//! construction and export, and one-command reproduction of the case
//! studies.
//!
//! Exit codes: 0 success, 1 usage or I/O failure, 2 verification mismatch,
//! 3 resource limit. `NETGAME_THREADS` caps the worker pool. Parameters
//! come from flags or a `key=value` config file, with flags winning.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{GraphError, OracleError, PlanError, SpeError};
use crate::game::GameParams;
use crate::graph::{self, Graph};
use crate::oracle::{self, solve_exhaustive, verify_grid, DEFAULT_LIMIT_N};
use crate::planning::{
    attack_timing, attacker_optimum, cost_ratio_sweep, joint_sweep, plan_resilience,
    timing_bound_diagnostic, GameBase, ResilienceCost,
};
use crate::rational::{format_frac, frac, parse_frac, to_f64, Frac};
use crate::spe::{solve, OutcomeRow, Situation, OUTCOME_CSV_HEADER};

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
    Mismatch(String),
    Resource(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Mismatch(_) => 2,
            CliError::Resource(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Mismatch(m) | CliError::Resource(m) => m,
        }
    }
}

impl From<SpeError> for CliError {
    fn from(e: SpeError) -> CliError {
        match &e {
            SpeError::Graph(GraphError::ResourceBudget(_)) => CliError::Resource(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> CliError {
        match &e {
            OracleError::TooLarge(_) => CliError::Resource(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<PlanError> for CliError {
    fn from(e: PlanError) -> CliError {
        CliError::Usage(e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> CliError {
        match &e {
            GraphError::ResourceBudget(_) => CliError::Resource(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "netgame", version, about = "Three-stage network protection and recovery game toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Parameter flags shared by the solving and sweeping commands. Any field
/// may instead come from `--config`; explicit flags win.
#[derive(Args, Debug, Clone, Default)]
struct ParamArgs {
    /// Node count.
    #[arg(long)]
    n: Option<usize>,
    /// Defender unit link cost, `p/q` or decimal.
    #[arg(long = "c_D")]
    c_d: Option<String>,
    /// Attacker unit removal cost, `p/q` or decimal.
    #[arg(long = "c_A")]
    c_a: Option<String>,
    /// Attack time fraction.
    #[arg(long)]
    tau: Option<String>,
    /// Recovery delay fraction.
    #[arg(long = "tau_R")]
    tau_r: Option<String>,
    /// Line-based key=value parameter file.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Output format: csv or text.
    #[arg(long, default_value = "csv")]
    format: String,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form equilibrium at one parameter point.
    Solve {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exhaustive ground-truth equilibrium (small n).
    Oracle {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Node-count ceiling for the exhaustive search.
        #[arg(long = "limit-n", default_value_t = DEFAULT_LIMIT_N)]
        limit_n: usize,
    },
    /// Compare the closed form against the oracle on a parameter grid.
    Verify {
        /// Node count for the grid.
        #[arg(long)]
        n: Option<usize>,
        /// Grid spec: `default` or `random:<count>`.
        #[arg(long, default_value = "default")]
        grid: String,
        /// Seed for randomized grids.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Boundary classification tolerance.
        #[arg(long, default_value_t = 1e-9)]
        eps: f64,
        #[arg(long = "limit-n", default_value_t = DEFAULT_LIMIT_N)]
        limit_n: usize,
        /// Report CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the recovery delay at fixed attack time.
    #[command(name = "sweep-tauR")]
    SweepTauR {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value = "1/200")]
        step: String,
        /// Sweep upper bound (defaults to the horizon).
        #[arg(long)]
        hi: Option<String>,
    },
    /// Optimize the recovery delay against a resilience cost.
    Plan {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value = "1/200")]
        step: String,
        /// Resilience cost: quartic or zero.
        #[arg(long, default_value = "quartic")]
        cost: String,
    },
    /// Sweep the attack time at fixed recovery delay.
    SweepAttack {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value = "1/200")]
        step: String,
    },
    /// Sweep the attacker/defender cost ratio with joint optimization.
    SweepCostRatio {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value = "1/200")]
        step: String,
        #[arg(long = "ratio-lo", default_value = "1")]
        ratio_lo: String,
        #[arg(long = "ratio-hi", default_value = "3")]
        ratio_hi: String,
        #[arg(long = "ratio-step", default_value = "1/200")]
        ratio_step: String,
        #[arg(long = "tau-lo", default_value = "103/200")]
        tau_lo: String,
        #[arg(long = "tau-hi", default_value = "3/5")]
        tau_hi: String,
    },
    /// Build a named topology and export it.
    Construct {
        /// Harary graph: n and degree.
        #[arg(long, num_args = 2, value_names = ["N", "D"])]
        harary: Option<Vec<usize>>,
        /// Ring on n nodes.
        #[arg(long)]
        ring: Option<usize>,
        /// Path tree on n nodes.
        #[arg(long)]
        tree: Option<usize>,
        /// Ring-plus-chords witness: n and k.
        #[arg(long, num_args = 2, value_names = ["N", "K"])]
        case4: Option<Vec<usize>>,
        /// DOT output path.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Edge-list output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce a canned case study.
    Casestudy {
        /// One of fig6, fig7, fig9, fig10.
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Grid step for the sweeps.
        #[arg(long, default_value = "1/200")]
        step: String,
    },
}

/// Runs the CLI against the given argument list and returns the process
/// exit code. Split from `main` so integration tests can drive it.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    configure_threads();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version with success codes.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("netgame: {}", e.message());
            e.code()
        }
    }
}

fn configure_threads() {
    if let Ok(v) = std::env::var("NETGAME_THREADS") {
        if let Ok(threads) = v.parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve { params, output } => {
            let p = resolve_params(&params, true)?;
            let outcome = solve(&p)?;
            let row = OutcomeRow::new(&p, &outcome);
            let body = match output.format.as_str() {
                "csv" => format!("{OUTCOME_CSV_HEADER}\n{}\n", row.to_csv()),
                "text" => format!("{}\n", row.to_record()),
                other => return Err(CliError::Usage(format!("unknown format {other:?}"))),
            };
            write_out(&output.out, &body)
        }
        Command::Oracle { params, output, limit_n } => {
            let p = resolve_params(&params, true)?;
            let r = solve_exhaustive(&p, limit_n)?;
            let body = match output.format.as_str() {
                "csv" => {
                    let mut s = String::from("n,c_D,c_A,tau,tau_R,situation,e1,eA,e2,u_D,u_A,ties,evaluations\n");
                    s.push_str(&format!(
                        "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                        p.n,
                        format_frac(p.c_d),
                        format_frac(p.c_a),
                        format_frac(p.tau),
                        format_frac(p.tau_r),
                        r.situation.token(),
                        r.e1_count,
                        r.ea_count,
                        r.e2_count,
                        to_f64(r.u_d),
                        to_f64(r.u_a),
                        r.best_triples.len(),
                        r.evaluations
                    ));
                    s
                }
                "text" => format!(
                    "oracle {{ situation: {}, e1: {}, eA: {}, e2: {}, u_D: {}, u_A: {}, ties: {}, evaluations: {} }}\n",
                    r.situation.token(),
                    r.e1_count,
                    r.ea_count,
                    r.e2_count,
                    to_f64(r.u_d),
                    to_f64(r.u_a),
                    r.best_triples.len(),
                    r.evaluations
                ),
                other => return Err(CliError::Usage(format!("unknown format {other:?}"))),
            };
            write_out(&output.out, &body)
        }
        Command::Verify { n, grid, seed, eps, limit_n, out } => {
            let n = n.ok_or_else(|| CliError::Usage("verify requires --n".into()))?;
            let points = build_grid(n, &grid, seed)?;
            let report = verify_grid(&points, eps, limit_n)?;
            let mut body = report.to_csv();
            body.push_str(&report.summary_line());
            body.push('\n');
            write_out(&out, &body)?;
            if report.mismatch > 0 {
                return Err(CliError::Mismatch(report.summary_line()));
            }
            Ok(())
        }
        Command::SweepTauR { params, output, step, hi } => {
            let (base, tau, _) = resolve_base(&params, true)?;
            let step = parse_frac_arg(&step, "step")?;
            let hi = match hi {
                Some(h) => parse_frac_arg(&h, "hi")?,
                None => Frac::from_integer(1),
            };
            let mut body = param_comment(&base, Some(&tau), None);
            body.push_str("tau_R,regime,situation,e1,eA,e2,u_D,u_A\n");
            let mut tau_r = Frac::from_integer(0);
            while tau_r <= hi && tau_r + tau < Frac::from_integer(1) {
                let p = GameParams::new(base.n, base.c_d, base.c_a, tau, tau_r)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                let o = solve(&p)?;
                body.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    format_frac(tau_r),
                    o.regime.token(),
                    o.situation.token(),
                    o.e1_count,
                    o.ea_count,
                    o.e2_count,
                    to_f64(o.u_d),
                    to_f64(o.u_a)
                ));
                tau_r += step;
            }
            let _ = output.format;
            write_out(&output.out, &body)
        }
        Command::Plan { params, output, step, cost } => {
            let (base, tau, _) = resolve_base(&params, true)?;
            let step = parse_frac_arg(&step, "step")?;
            let cost = parse_cost(&cost)?;
            let plan = plan_resilience(&base, tau, &cost, step)?;
            let mut body = param_comment(&base, Some(&tau), None);
            body.push_str(&format!(
                "# best_tau_R={} f_D={}\n",
                plan.best_tau_r.map(format_frac).unwrap_or_else(|| "none".into()),
                to_f64(plan.f_d)
            ));
            let intervals: Vec<String> = plan
                .infeasible_intervals
                .iter()
                .map(|(lo, hi)| format!("[{},{}]", format_frac(*lo), format_frac(*hi)))
                .collect();
            body.push_str(&format!("# infeasible={}\n", intervals.join(" ")));
            body.push_str("tau_R,regime,situation,u_D,u_A,f_D\n");
            for pt in &plan.curve {
                body.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    format_frac(pt.tau_r),
                    pt.regime.token(),
                    pt.situation.token(),
                    to_f64(pt.u_d),
                    to_f64(pt.u_a),
                    to_f64(pt.f_d)
                ));
            }
            let _ = output.format;
            write_out(&output.out, &body)
        }
        Command::SweepAttack { params, output, step } => {
            let (base, _, tau_r) = resolve_base(&params, false)?;
            let tau_r = tau_r.ok_or_else(|| CliError::Usage("sweep-attack requires --tau_R".into()))?;
            let step = parse_frac_arg(&step, "step")?;
            let timing = attack_timing(&base, tau_r, step)?;
            let diag = timing_bound_diagnostic(&base, tau_r, step)?;
            let mut body = param_comment(&base, None, Some(&tau_r));
            body.push_str(&format!(
                "# best_tau={} u_A={}\n",
                timing.best_tau.map(format_frac).unwrap_or_else(|| "none".into()),
                to_f64(timing.u_a)
            ));
            body.push_str(&format!(
                "# s3_first={} regime_bound={} ratio_form_bound={} consistent={}\n",
                diag.grid_first_s3.map(format_frac).unwrap_or_else(|| "none".into()),
                to_f64(diag.regime_bound),
                to_f64(diag.ratio_form_bound),
                diag.consistent
            ));
            body.push_str("tau,tau_R,situation,u_D,u_A\n");
            for pt in &timing.curve {
                body.push_str(&format!(
                    "{},{},{},{},{}\n",
                    format_frac(pt.tau),
                    format_frac(pt.tau_r),
                    pt.situation.token(),
                    to_f64(pt.u_d),
                    to_f64(pt.u_a)
                ));
            }
            let _ = output.format;
            write_out(&output.out, &body)
        }
        Command::SweepCostRatio {
            params,
            output,
            step,
            ratio_lo,
            ratio_hi,
            ratio_step,
            tau_lo,
            tau_hi,
        } => {
            let (base, _, _) = resolve_base(&params, false)?;
            let step = parse_frac_arg(&step, "step")?;
            let records = cost_ratio_sweep(
                base.n,
                base.c_d,
                (parse_frac_arg(&ratio_lo, "ratio-lo")?, parse_frac_arg(&ratio_hi, "ratio-hi")?),
                parse_frac_arg(&ratio_step, "ratio-step")?,
                &ResilienceCost::Quartic,
                (parse_frac_arg(&tau_lo, "tau-lo")?, parse_frac_arg(&tau_hi, "tau-hi")?),
                step,
            )?;
            let mut body = format!("# n={} c_D={}\n", base.n, format_frac(base.c_d));
            body.push_str("ratio,c_A,tau_star,tau_R_star,situation,u_D,u_A\n");
            for rec in &records {
                body.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    format_frac(rec.ratio),
                    format_frac(rec.c_a),
                    rec.tau_star.map(format_frac).unwrap_or_else(|| "none".into()),
                    rec.tau_r_star.map(format_frac).unwrap_or_else(|| "none".into()),
                    rec.situation.map(Situation::token).unwrap_or("none"),
                    to_f64(rec.u_d),
                    to_f64(rec.u_a)
                ));
            }
            let _ = output.format;
            write_out(&output.out, &body)
        }
        Command::Construct { harary, ring: ring_n, tree: tree_n, case4, dot, out } => {
            let (g, note) = build_topology(harary, ring_n, tree_n, case4)?;
            if let Some(path) = &dot {
                fs::write(path, graph::to_dot(&g)).map_err(|e| CliError::Io(e.to_string()))?;
            }
            let mut body = String::new();
            if let Some(note) = note {
                body.push_str(&note);
            }
            body.push_str(&graph::to_edge_list(&g));
            write_out(&out, &body)
        }
        Command::Casestudy { name, out, step } => {
            let step = parse_frac_arg(&step, "step")?;
            let body = casestudy(&name, step)?;
            write_out(&out, &body)
        }
    }
}

fn parse_frac_arg(text: &str, what: &str) -> Result<Frac, CliError> {
    parse_frac(text).map_err(|e| CliError::Usage(format!("bad {what}: {e}")))
}

fn parse_cost(name: &str) -> Result<ResilienceCost, CliError> {
    match name {
        "quartic" => Ok(ResilienceCost::Quartic),
        "zero" => Ok(ResilienceCost::Zero),
        other => Err(CliError::Usage(format!("unknown cost {other:?} (use quartic or zero)"))),
    }
}

/// Merges a config file (if any) under the explicit flags and produces the
/// full parameter set.
fn resolve_params(args: &ParamArgs, need_tau_r: bool) -> Result<GameParams, CliError> {
    let (base, tau, tau_r) = resolve_base(args, true)?;
    let tau_r = if need_tau_r {
        tau_r.ok_or_else(|| CliError::Usage("missing --tau_R".into()))?
    } else {
        tau_r.unwrap_or_else(|| Frac::from_integer(0))
    };
    GameParams::new(base.n, base.c_d, base.c_a, tau, tau_r).map_err(|e| CliError::Usage(e.to_string()))
}

fn resolve_base(
    args: &ParamArgs,
    need_tau: bool,
) -> Result<(GameBase, Frac, Option<Frac>), CliError> {
    let mut n = args.n;
    let mut c_d = args.c_d.clone();
    let mut c_a = args.c_a.clone();
    let mut tau = args.tau.clone();
    let mut tau_r = args.tau_r.clone();
    if let Some(path) = &args.config {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line is not key=value: {line:?}")))?;
            let value = value.trim().to_string();
            match key.trim() {
                "n" => {
                    if n.is_none() {
                        n = Some(value.parse().map_err(|_| CliError::Usage(format!("bad n: {value:?}")))?);
                    }
                }
                "c_D" => {
                    c_d.get_or_insert(value);
                }
                "c_A" => {
                    c_a.get_or_insert(value);
                }
                "tau" => {
                    tau.get_or_insert(value);
                }
                "tau_R" => {
                    tau_r.get_or_insert(value);
                }
                other => return Err(CliError::Usage(format!("unknown config key {other:?}"))),
            }
        }
    }
    let n = n.ok_or_else(|| CliError::Usage("missing --n".into()))?;
    let c_d = parse_frac_arg(&c_d.ok_or_else(|| CliError::Usage("missing --c_D".into()))?, "c_D")?;
    let c_a = parse_frac_arg(&c_a.ok_or_else(|| CliError::Usage("missing --c_A".into()))?, "c_A")?;
    let tau = match tau {
        Some(t) => parse_frac_arg(&t, "tau")?,
        None if need_tau => return Err(CliError::Usage("missing --tau".into())),
        None => Frac::from_integer(0),
    };
    let tau_r = match tau_r {
        Some(t) => Some(parse_frac_arg(&t, "tau_R")?),
        None => None,
    };
    Ok((GameBase::new(n, c_d, c_a), tau, tau_r))
}

fn param_comment(base: &GameBase, tau: Option<&Frac>, tau_r: Option<&Frac>) -> String {
    let mut s = format!(
        "# n={} c_D={} c_A={}",
        base.n,
        format_frac(base.c_d),
        format_frac(base.c_a)
    );
    if let Some(t) = tau {
        s.push_str(&format!(" tau={}", format_frac(*t)));
    }
    if let Some(t) = tau_r {
        s.push_str(&format!(" tau_R={}", format_frac(*t)));
    }
    s.push('\n');
    s
}

fn write_out(path: &Option<PathBuf>, body: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, body).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn build_topology(
    harary: Option<Vec<usize>>,
    ring_n: Option<usize>,
    tree_n: Option<usize>,
    case4: Option<Vec<usize>>,
) -> Result<(Graph, Option<String>), CliError> {
    let chosen = [harary.is_some(), ring_n.is_some(), tree_n.is_some(), case4.is_some()]
        .iter()
        .filter(|b| **b)
        .count();
    if chosen != 1 {
        return Err(CliError::Usage(
            "construct needs exactly one of --harary, --ring, --tree, --case4".into(),
        ));
    }
    if let Some(args) = harary {
        return Ok((graph::harary(args[0], args[1])?, None));
    }
    if let Some(n) = ring_n {
        return Ok((graph::ring(n)?, None));
    }
    if let Some(n) = tree_n {
        return Ok((graph::tree(n)?, None));
    }
    let args = case4.expect("one flag chosen");
    let (n, k) = (args[0], args[1]);
    let g = graph::case4_witness(n, k)?;
    let formula = graph::case4_formula_count(n, k)?;
    let note = format!(
        "# constructed_edges={} formula_edges={}\n",
        g.edge_count(),
        formula
    );
    Ok((g, Some(note)))
}

/// Deterministic interior parameter lattice used by `verify --grid default`
/// and the acceptance run. Boundary points are filtered out, so every
/// surviving point must match the oracle exactly.
pub fn default_verification_grid(n: usize) -> Vec<GameParams> {
    let c_ds = [frac(1, 25), frac(1, 11), frac(2, 13), frac(8, 35), frac(2, 7)];
    let c_as = [frac(1, 23), frac(1, 13), frac(2, 17), frac(1, 6), frac(2, 7), frac(5, 9)];
    let taus = [frac(1, 7), frac(2, 7), frac(3, 7), frac(4, 7), frac(5, 7)];
    let tau_rs = [frac(1, 17), frac(2, 17), frac(4, 17), frac(6, 17), frac(8, 17)];
    let eps = frac(1, 1_000_000_000);
    let mut out = Vec::new();
    for c_d in &c_ds {
        for c_a in &c_as {
            for tau in &taus {
                for tau_r in &tau_rs {
                    if let Ok(p) =
                        GameParams::new(n, *c_d, *c_a, *tau, *tau_r)
                    {
                        if !oracle::is_boundary_point(&p, &eps) {
                            out.push(p);
                        }
                    }
                }
            }
        }
    }
    out
}

fn build_grid(n: usize, spec: &str, seed: u64) -> Result<Vec<GameParams>, CliError> {
    if spec == "default" {
        return Ok(default_verification_grid(n));
    }
    if let Some(count) = spec.strip_prefix("random:") {
        let count: usize = count
            .parse()
            .map_err(|_| CliError::Usage(format!("bad random grid count in {spec:?}")))?;
        return Ok(random_grid(n, count, seed));
    }
    Err(CliError::Usage(format!("unknown grid spec {spec:?} (use default or random:<count>)")))
}

/// Seeded random rational parameters, filtered to interior points.
fn random_grid(n: usize, count: usize, seed: u64) -> Vec<GameParams> {
    let mut state = seed.wrapping_add(0x9e3779b97f4a7c15);
    let mut next = move || {
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    };
    let eps = frac(1, 1_000_000_000);
    let mut out = Vec::new();
    let mut guard = 0usize;
    while out.len() < count && guard < count * 1000 {
        guard += 1;
        let den = |v: u64| 11 + (v % 40) as i128;
        let d1 = den(next());
        let c_d = frac(1 + (next() % (d1 as u64 / 4).max(1)) as i128, d1);
        let d2 = den(next());
        let c_a = frac(1 + (next() % (d2 as u64 / 2).max(1)) as i128, d2);
        let d3 = den(next());
        let tau = frac((next() % (d3 as u64 * 3 / 4).max(1)) as i128, d3);
        let d4 = den(next());
        let tau_r = frac((next() % (d4 as u64 / 2).max(1)) as i128, d4);
        if let Ok(p) = GameParams::new(n, c_d, c_a, tau, tau_r) {
            if !oracle::is_boundary_point(&p, &eps) {
                out.push(p);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Case studies
// ---------------------------------------------------------------------------

fn casestudy(name: &str, step: Frac) -> Result<String, CliError> {
    match name {
        "fig6" => casestudy_fig6(step, false),
        "fig7" => casestudy_fig6(step, true),
        "fig9" => casestudy_fig9(step),
        "fig10" => casestudy_fig10(step),
        other => Err(CliError::Usage(format!(
            "unknown case study {other:?} (use fig6, fig7, fig9 or fig10)"
        ))),
    }
}

/// Recovery-delay sweep for the ten-node team with `c_D = 1/20`,
/// `c_A = 1/8`, attack at `τ = 0.3`. With `with_cost` the quartic
/// resilience cost and net payoff column are added.
fn casestudy_fig6(step: Frac, with_cost: bool) -> Result<String, CliError> {
    let base = GameBase::new(10, frac(1, 20), frac(1, 8));
    let tau = frac(3, 10);
    let hi = frac(3, 5);
    let cost = ResilienceCost::Quartic;
    let mut body = param_comment(&base, Some(&tau), None);
    if with_cost {
        let plan = plan_resilience(&base, tau, &cost, step)?;
        body.push_str(&format!(
            "# best_tau_R={} f_D={}\n",
            plan.best_tau_r.map(format_frac).unwrap_or_else(|| "none".into()),
            to_f64(plan.f_d)
        ));
        // Intervals windowed to the plotted range.
        let intervals: Vec<String> = plan
            .infeasible_intervals
            .iter()
            .filter(|(lo, _)| *lo <= hi)
            .map(|(lo, ihi)| {
                let capped = if *ihi > hi { hi } else { *ihi };
                format!("[{},{}]", format_frac(*lo), format_frac(capped))
            })
            .collect();
        body.push_str(&format!("# infeasible={}\n", intervals.join(" ")));
        body.push_str("tau_R,u_D,u_A,situation,f_D\n");
        for pt in plan.curve.iter().filter(|pt| pt.tau_r <= hi) {
            body.push_str(&format!(
                "{},{},{},{},{}\n",
                format_frac(pt.tau_r),
                to_f64(pt.u_d),
                to_f64(pt.u_a),
                pt.situation.token(),
                to_f64(pt.f_d)
            ));
        }
    } else {
        body.push_str("tau_R,u_D,u_A,situation\n");
        let mut tau_r = Frac::from_integer(0);
        while tau_r <= hi {
            let p = GameParams::new(base.n, base.c_d, base.c_a, tau, tau_r)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let o = solve(&p)?;
            body.push_str(&format!(
                "{},{},{},{}\n",
                format_frac(tau_r),
                to_f64(o.u_d),
                to_f64(o.u_a),
                o.situation.token()
            ));
            tau_r += step;
        }
    }
    Ok(body)
}

/// Joint attack-time sweep with per-time recovery planning for the
/// `c_D = 1/30`, `c_A = 1/20` team.
fn casestudy_fig9(step: Frac) -> Result<String, CliError> {
    let base = GameBase::new(10, frac(1, 30), frac(1, 20));
    let records = joint_sweep(&base, &ResilienceCost::Quartic, (frac(2, 5), frac(3, 5)), step)?;
    let best = attacker_optimum(&records);
    let mut body = param_comment(&base, None, None);
    if let Some(b) = best {
        body.push_str(&format!(
            "# best_tau={} u_A={}\n",
            format_frac(b.tau),
            to_f64(b.u_a)
        ));
    }
    body.push_str("tau,tau_R_star,situation,u_D,u_A,f_D\n");
    for rec in &records {
        body.push_str(&format!(
            "{},{},{},{},{},{}\n",
            format_frac(rec.tau),
            rec.tau_r_star.map(format_frac).unwrap_or_else(|| "none".into()),
            rec.situation.map(Situation::token).unwrap_or("none"),
            to_f64(rec.u_d),
            to_f64(rec.u_a),
            to_f64(rec.f_d)
        ));
    }
    Ok(body)
}

/// Cost-ratio sweep at `c_D = 1/30` with per-ratio joint optimization. The
/// attack-time range continues the joint sweep's broken-for-good region,
/// where per-time planning is insensitive to the ratio.
fn casestudy_fig10(step: Frac) -> Result<String, CliError> {
    let records = cost_ratio_sweep(
        10,
        frac(1, 30),
        (Frac::from_integer(1), Frac::from_integer(3)),
        frac(1, 200),
        &ResilienceCost::Quartic,
        (frac(103, 200), frac(3, 5)),
        step,
    )?;
    let mut body = String::from("# n=10 c_D=1/30\n");
    body.push_str("ratio,c_A,tau_star,tau_R_star,situation,u_D,u_A\n");
    for rec in &records {
        body.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            format_frac(rec.ratio),
            format_frac(rec.c_a),
            rec.tau_star.map(format_frac).unwrap_or_else(|| "none".into()),
            rec.tau_r_star.map(format_frac).unwrap_or_else(|| "none".into()),
            rec.situation.map(Situation::token).unwrap_or("none"),
            to_f64(rec.u_d),
            to_f64(rec.u_a)
        ));
    }
    Ok(body)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_is_interior_and_nonempty() {
        let grid = default_verification_grid(4);
        assert!(grid.len() >= 250, "got {}", grid.len());
        let eps = frac(1, 1_000_000_000);
        for p in &grid {
            assert!(!oracle::is_boundary_point(p, &eps));
        }
    }

    #[test]
    fn random_grid_is_deterministic() {
        let a = random_grid(4, 20, 42);
        let b = random_grid(4, 20, 42);
        assert_eq!(a.len(), 20);
        assert!(a.iter().zip(&b).all(|(x, y)| x == y));
    }
}
