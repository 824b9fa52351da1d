//! `wsweave`: generate, check and transform symmetric maximal weakly
//! separated collections from the command line.
//!
//! Exit codes: 0 success, 1 infeasible parameters, 2 failed validation,
//! 3 malformed input or usage.

use std::fs;
use std::io::Write as _;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use wsweave::generator::{generate_with_trace, oracle_enumerate, OracleMode, OracleOptions};
use wsweave::io::{load_artifact, Artifact, ArtifactKind, Envelope, JobSpec};
use wsweave::plabic::{rotational_symmetry_certificate, PlabicGraph};
use wsweave::render::{render, Format, RenderOptions};
use wsweave::weave::{boundary_braid, validate_ngraph};
use wsweave::{
    build_tiling, build_weave, cliques, dual_plabic_graph, feasibility, generate, is_maximal, is_rho_symmetric,
    is_ws_collection, make_trivalent, symmetric_weave_pipeline, t_shift, BraidWord, Collection, Error,
    OrbitOrder, Params, ResolutionPolicy,
};

#[derive(Parser)]
#[command(name = "wsweave", version, about = "Symmetric weakly separated collections, plabic graphs and weaves")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// json (default), text for collections, svg or tikz for render.
    #[arg(long, global = true)]
    format: Option<String>,

    /// Omit timings and refuse anything whose result depends on scheduling.
    #[arg(long, global = true)]
    seedless: bool,
}

#[derive(Args, Clone, Default)]
struct Inst {
    #[arg(short)]
    k: Option<u32>,
    #[arg(short)]
    n: Option<u32>,
    /// Rotation step: the collection is closed under `I ↦ I + ell`.
    #[arg(short = 'l', long = "ell")]
    ell: Option<u32>,
    /// Orbit representatives, e.g. `3,2,1`.
    #[arg(long)]
    order: Option<String>,
}

#[derive(Args, Clone, Default)]
struct Source {
    #[command(flatten)]
    inst: Inst,
    /// A JSON artifact: envelope or bare payload.
    #[arg(long, short = 'i')]
    input: Option<PathBuf>,
    /// Members as text, e.g. "123 234 345"; needs -n and -k.
    #[arg(long)]
    collection: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a symmetric maximal collection exists.
    Feasible(Inst),
    /// Build a symmetric maximal collection.
    Generate {
        #[command(flatten)]
        inst: Inst,
        /// Include the stage-by-stage trace.
        #[arg(long)]
        trace: bool,
    },
    /// Check separation, maximality and (with -l) symmetry.
    Verify(Source),
    /// White and black cliques.
    Cliques {
        #[command(flatten)]
        src: Source,
        /// Include trivial cliques.
        #[arg(long)]
        all: bool,
    },
    /// The plabic tiling.
    Tiling(Source),
    /// The dual plabic graph.
    Dual(Source),
    /// One T-shift of the trivalent resolution.
    Tshift(Source),
    /// The weave of the trivalent resolution.
    Weave(Source),
    /// Everything from generation to the weave, with certificates.
    Pipeline {
        #[command(flatten)]
        inst: Inst,
        /// Grid "kmin..kmax,nmin..nmax,lmin..lmax".
        #[arg(long)]
        sweep: Option<String>,
    },
    /// Exhaustive enumeration at small sizes.
    Oracle {
        #[command(flatten)]
        inst: Inst,
        #[arg(long)]
        sweep: Option<String>,
        /// Stop at the first collection found.
        #[arg(long)]
        first: bool,
        /// Largest accepted k(n-k).
        #[arg(long, default_value_t = 16)]
        budget: u32,
    },
    /// Draw an artifact as SVG or TikZ.
    Render {
        #[arg(long, short = 'i')]
        input: PathBuf,
        #[arg(long)]
        scale: Option<f64>,
        /// Comma-separated `#rrggbb` colors for weave layers.
        #[arg(long, value_delimiter = ',')]
        layer_colors: Vec<String>,
    },
}

enum Failure {
    Infeasible(String),
    Validation(String),
    Malformed(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Infeasible(_) => 1,
            Failure::Validation(_) => 2,
            Failure::Malformed(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Infeasible(m) | Failure::Validation(m) | Failure::Malformed(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Infeasible { .. } => Failure::Infeasible(e.to_string()),
            _ => Failure::Malformed(e.to_string()),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

/// A finished command: its document and, if the checks it ran failed, why.
struct Done {
    text: String,
    failure: Option<Failure>,
}

struct Ctx {
    job: JobSpec,
    seedless: bool,
    started: Instant,
}

impl Ctx {
    fn envelope<T: Serialize>(&self, kind: ArtifactKind, payload: T, certificates: Option<Value>) -> Outcome<String> {
        let mut env = Envelope::new(kind, self.job.clone(), payload);
        env.certificates = certificates;
        if !self.seedless {
            env.timing_ms = Some(self.started.elapsed().as_millis() as u64);
        }
        Ok(env.to_json()? + "\n")
    }
}

fn need(x: Option<u32>, flag: &str) -> Outcome<u32> {
    x.ok_or_else(|| Failure::Malformed(format!("missing -{flag}")))
}

fn order_of(inst: &Inst, ell: u32) -> Outcome<Option<OrbitOrder>> {
    Ok(match &inst.order {
        Some(s) => Some(OrbitOrder::parse(s, ell)?),
        None => None,
    })
}

fn generated(inst: &Inst) -> Outcome<Collection> {
    let (k, n, ell) = (need(inst.k, "k")?, need(inst.n, "n")?, need(inst.ell, "l")?);
    let order = order_of(inst, ell)?;
    Ok(generate(k, n, ell, order.as_ref())?)
}

fn read(path: &PathBuf) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

enum Input {
    Collection(Collection),
    Graph(PlabicGraph),
}

fn input_of(src: &Source) -> Outcome<Input> {
    if let Some(path) = &src.input {
        return Ok(match load_artifact(&read(path)?)? {
            Artifact::Collection(d) => Input::Collection(d),
            Artifact::Tiling(t) => Input::Collection(t.collection()),
            Artifact::Pipeline(p) => Input::Collection(p.collection),
            Artifact::Graph(g) => Input::Graph(g),
            Artifact::Weave(_) => return Err(Failure::Malformed("a weave cannot be used as input here".into())),
        });
    }
    if let Some(text) = &src.collection {
        let (n, k) = (need(src.inst.n, "n")?, need(src.inst.k, "k")?);
        return Ok(Input::Collection(Collection::parse(text, n, k)?));
    }
    generated(&src.inst).map(Input::Collection)
}

fn collection_of(src: &Source) -> Outcome<Collection> {
    match input_of(src)? {
        Input::Collection(d) => Ok(d),
        Input::Graph(g) => Ok(Collection::new(g.n(), g.rank()?, g.face_labels()?)?),
    }
}

/// The equivariant policy for `-l`, or the identity rotation without it.
fn policy_of(src: &Source, n: u32) -> ResolutionPolicy {
    ResolutionPolicy::equivariant(src.inst.ell.unwrap_or(n))
}

fn trivalent_of(src: &Source) -> Outcome<PlabicGraph> {
    let g = match input_of(src)? {
        Input::Collection(d) => dual_plabic_graph(&build_tiling(&d)?)?,
        Input::Graph(g) => g,
    };
    let policy = policy_of(src, g.n());
    Ok(make_trivalent(&g, policy)?.graph)
}

fn parse_range(s: &str) -> Outcome<RangeInclusive<u32>> {
    let bad = || Failure::Malformed(format!("bad range {s:?}"));
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
    match s.split_once("..") {
        Some((a, b)) => Ok(num(a)?..=num(b.trim_start_matches('='))?),
        None => {
            let x = num(s)?;
            Ok(x..=x)
        }
    }
}

/// Valid parameter triples of the grid "kmin..kmax,nmin..nmax,lmin..lmax".
fn parse_sweep(s: &str) -> Outcome<Vec<(u32, u32, u32)>> {
    let parts: Vec<&str> = s.split(',').collect();
    let [ks, ns, ls] = parts.as_slice() else {
        return Err(Failure::Malformed(format!("sweep {s:?} needs three ranges")));
    };
    let (ks, ns, ls) = (parse_range(ks)?, parse_range(ns)?, parse_range(ls)?);
    let mut grid = Vec::new();
    for n in ns {
        for k in ks.clone() {
            for ell in ls.clone() {
                if Params::new(k, n, ell).is_ok() {
                    grid.push((k, n, ell));
                }
            }
        }
    }
    Ok(grid)
}

fn cmd_feasible(ctx: &Ctx, inst: &Inst) -> Outcome<Done> {
    let f = feasibility(need(inst.k, "k")?, need(inst.n, "n")?, need(inst.ell, "l")?)?;
    let failure = (!f.feasible).then(|| Failure::Infeasible(format!("k mod d = {} with d = {}", f.k % f.d, f.d)));
    let text = if ctx.job.format.as_deref() == Some("text") {
        match (f.r, f.c) {
            (Some(r), Some(c)) => format!("feasible: g={} d={} r={r} c={c}\n", f.g, f.d),
            _ => format!("infeasible: g={} d={} k mod d = {}\n", f.g, f.d, f.k % f.d),
        }
    } else {
        ctx.envelope(ArtifactKind::Feasibility, &f, None)?
    };
    Ok(Done { text, failure })
}

fn cmd_generate(ctx: &Ctx, inst: &Inst, trace: bool) -> Outcome<Done> {
    let (k, n, ell) = (need(inst.k, "k")?, need(inst.n, "n")?, need(inst.ell, "l")?);
    let order = order_of(inst, ell)?;
    let (d, tr) = generate_with_trace(k, n, ell, order.as_ref())?;
    let text = if ctx.job.format.as_deref() == Some("text") {
        d.to_text() + "\n"
    } else if trace {
        ctx.envelope(ArtifactKind::Trace, json!({ "collection": d, "trace": tr }), None)?
    } else {
        ctx.envelope(ArtifactKind::Collection, &d, None)?
    };
    Ok(Done { text, failure: None })
}

fn cmd_verify(ctx: &Ctx, src: &Source) -> Outcome<Done> {
    let d = collection_of(src)?;
    let pairs = is_ws_collection(&d);
    let maximal = if pairs.separated { Some(is_maximal(&d)?) } else { None };
    let symmetry = src.inst.ell.map(|l| is_rho_symmetric(&d, l as i64));
    let mut problems = Vec::new();
    if !pairs.separated {
        problems.push(format!("{} pairs are not weakly separated", pairs.failing_pairs.len()));
    }
    if let Some(m) = &maximal {
        if !m.maximal {
            problems.push(format!("size {} but a maximal collection has {}", m.size, m.expected_size));
        }
    }
    if let Some(s) = &symmetry {
        if !s.symmetric {
            problems.push(format!("{} members leave the collection under the rotation", s.violators.len()));
        }
    }
    let payload = json!({
        "n": d.n(),
        "k": d.k(),
        "size": d.len(),
        "separation": pairs,
        "maximality": maximal,
        "symmetry": symmetry,
        "valid": problems.is_empty(),
    });
    let text = ctx.envelope(ArtifactKind::Verification, payload, None)?;
    let failure = (!problems.is_empty()).then(|| Failure::Validation(problems.join("; ")));
    Ok(Done { text, failure })
}

fn cmd_cliques(ctx: &Ctx, src: &Source, all: bool) -> Outcome<Done> {
    let d = collection_of(src)?;
    let cs: Vec<_> = cliques(&d).into_iter().filter(|c| all || c.is_nontrivial()).collect();
    Ok(Done { text: ctx.envelope(ArtifactKind::Cliques, cs, None)?, failure: None })
}

fn cmd_tiling(ctx: &Ctx, src: &Source) -> Outcome<Done> {
    let t = build_tiling(&collection_of(src)?)?;
    let cert = src.inst.ell.map(|l| json!({ "rotation": rotational_symmetry_certificate(&t, l) }));
    Ok(Done { text: ctx.envelope(ArtifactKind::Tiling, &t, cert)?, failure: None })
}

fn cmd_dual(ctx: &Ctx, src: &Source) -> Outcome<Done> {
    let d = collection_of(src)?;
    let g = dual_plabic_graph(&build_tiling(&d)?)?;
    let labels = g.face_labels()?;
    let matches = labels.iter().eq(d.iter());
    let mut cert = json!({ "labels_match": matches });
    if let Some(l) = src.inst.ell {
        cert["rotation"] = json!(rotational_symmetry_certificate(&g, l));
    }
    let failure = (!matches).then(|| Failure::Validation("face labels differ from the collection".into()));
    Ok(Done { text: ctx.envelope(ArtifactKind::Graph, &g, Some(cert))?, failure })
}

fn cmd_tshift(ctx: &Ctx, src: &Source) -> Outcome<Done> {
    let g = trivalent_of(src)?;
    let s = t_shift(&g, policy_of(src, g.n()))?;
    let before = g.rank()?;
    let after = s.graph.rank()?;
    let payload = json!({ "graph": s.graph, "provenance": s.provenance, "sites": s.sites });
    let cert = json!({ "rank_before": before, "rank_after": after });
    let failure = (after + 1 != before).then(|| Failure::Validation(format!("rank went from {before} to {after}")));
    Ok(Done { text: ctx.envelope(ArtifactKind::Shift, payload, Some(cert))?, failure })
}

fn cmd_weave(ctx: &Ctx, src: &Source) -> Outcome<Done> {
    let g = trivalent_of(src)?;
    let w = build_weave(&g, policy_of(src, g.n()))?;
    let violations = validate_ngraph(&w);
    let braid = boundary_braid(&w)?;
    let expected = BraidWord::torus(w.k, w.n);
    let mut problems = violations.clone();
    if braid != expected {
        problems.push(format!("boundary braid {braid} is not {expected}"));
    }
    let cert = json!({ "violations": violations, "braid": braid, "braid_ok": braid == expected });
    let failure = (!problems.is_empty()).then(|| Failure::Validation(problems.join("; ")));
    Ok(Done { text: ctx.envelope(ArtifactKind::Weave, &w, Some(cert))?, failure })
}

#[derive(Serialize)]
struct PipelineSummary {
    k: u32,
    n: u32,
    ell: u32,
    feasible: bool,
    ok: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    ranks: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    braid: Option<BraidWord>,
    violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificates: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn certificate_summary(r: &wsweave::PipelineReport) -> (Value, Vec<String>) {
    let c = &r.certificates;
    let weave = c.weave.as_ref().map(|w| w.holds());
    let mut problems = Vec::new();
    let mut check = |ok: bool, what: &str| {
        if !ok {
            problems.push(format!("{what} failed"));
        }
    };
    check(c.tiling.is_symmetric(), "tiling certificate");
    check(c.graph.is_symmetric(), "graph certificate");
    check(c.trivalent.is_symmetric(), "trivalent certificate");
    check(weave.unwrap_or(true), "weave certificate");
    let expected: Vec<u32> = (1..=r.k).rev().collect();
    check(r.ranks == expected, "rank sequence");
    check(r.violations.is_empty(), "weave validation");
    if let Some(b) = &r.braid {
        check(*b == BraidWord::torus(r.k, r.n), "boundary braid");
    }
    let summary = json!({
        "tiling": c.tiling.is_symmetric(),
        "graph": c.graph.is_symmetric(),
        "trivalent_exact": c.trivalent_exact.is_symmetric(),
        "trivalent": c.trivalent.is_symmetric(),
        "weave_exact": c.weave.as_ref().map(|w| w.exact),
        "weave": weave,
        "ok": problems.is_empty(),
    });
    (summary, problems)
}

fn cmd_pipeline(ctx: &Ctx, inst: &Inst, sweep: Option<&str>) -> Outcome<Done> {
    if let Some(s) = sweep {
        let grid = parse_sweep(s)?;
        let rows: Vec<PipelineSummary> = grid
            .par_iter()
            .map(|&(k, n, ell)| {
                let feasible = feasibility(k, n, ell).map(|f| f.feasible).unwrap_or(false);
                let mut row = PipelineSummary {
                    k,
                    n,
                    ell,
                    feasible,
                    ok: !feasible,
                    ranks: Vec::new(),
                    braid: None,
                    violations: 0,
                    certificates: None,
                    error: None,
                };
                if !feasible {
                    return row;
                }
                match symmetric_weave_pipeline(k, n, ell, None) {
                    Ok(r) => {
                        let (summary, problems) = certificate_summary(&r);
                        row.ok = problems.is_empty();
                        row.violations = r.violations.len();
                        row.ranks = r.ranks;
                        row.braid = r.braid;
                        row.certificates = Some(summary);
                    }
                    Err(e) => row.error = Some(e.to_string()),
                }
                row
            })
            .collect();
        let bad = rows.iter().filter(|r| !r.ok).count();
        let text = ctx.envelope(ArtifactKind::Sweep, &rows, Some(json!({ "instances": rows.len(), "failed": bad })))?;
        let failure = (bad > 0).then(|| Failure::Validation(format!("{bad} instances failed")));
        return Ok(Done { text, failure });
    }
    let (k, n, ell) = (need(inst.k, "k")?, need(inst.n, "n")?, need(inst.ell, "l")?);
    let order = order_of(inst, ell)?;
    let r = symmetric_weave_pipeline(k, n, ell, order.as_ref())?;
    let (summary, problems) = certificate_summary(&r);
    let text = ctx.envelope(ArtifactKind::Pipeline, &r, Some(summary))?;
    let failure = (!problems.is_empty()).then(|| Failure::Validation(problems.join("; ")));
    Ok(Done { text, failure })
}

fn cmd_oracle(ctx: &Ctx, inst: &Inst, sweep: Option<&str>, first: bool, budget: u32) -> Outcome<Done> {
    if let Some(s) = sweep {
        // Only existence is reported, so stopping early is safe here.
        let grid: Vec<_> = parse_sweep(s)?.into_iter().filter(|&(k, n, _)| 2 * k <= n).collect();
        let rows: Vec<Value> = grid
            .par_iter()
            .map(|&(k, n, ell)| {
                let feasible = feasibility(k, n, ell).map(|f| f.feasible).unwrap_or(false);
                let opts = OracleOptions { budget, first_only: true };
                match oracle_enumerate(k, n, OracleMode::Symmetric { ell }, opts) {
                    Ok(found) => json!({
                        "k": k, "n": n, "ell": ell, "feasible": feasible,
                        "found": !found.is_empty(), "agrees": feasible == !found.is_empty(),
                    }),
                    Err(e) => json!({ "k": k, "n": n, "ell": ell, "feasible": feasible, "error": e.to_string() }),
                }
            })
            .collect();
        let bad = rows.iter().filter(|r| r.get("agrees") != Some(&json!(true))).count();
        let text = ctx.envelope(ArtifactKind::Sweep, &rows, Some(json!({ "instances": rows.len(), "disagreements": bad })))?;
        let failure = (bad > 0).then(|| Failure::Validation(format!("{bad} instances disagree with the congruence")));
        return Ok(Done { text, failure });
    }
    if first && ctx.seedless {
        return Err(Failure::Malformed("--first picks whichever collection a worker finds first; not allowed with --seedless".into()));
    }
    let (k, n) = (need(inst.k, "k")?, need(inst.n, "n")?);
    let mode = match inst.ell {
        Some(ell) => OracleMode::Symmetric { ell },
        None => OracleMode::All,
    };
    let found = oracle_enumerate(k, n, mode, OracleOptions { budget, first_only: first })?;
    let payload = json!({ "k": k, "n": n, "mode": mode, "count": found.len(), "collections": found });
    Ok(Done { text: ctx.envelope(ArtifactKind::Oracle, payload, None)?, failure: None })
}

fn cmd_render(ctx: &Ctx, input: &PathBuf, scale: Option<f64>, colors: &[String]) -> Outcome<Done> {
    let format: Format = ctx.job.format.as_deref().unwrap_or("svg").parse()?;
    let mut opts = RenderOptions::default();
    if let Some(s) = scale {
        opts.scale = s;
    }
    if !colors.is_empty() {
        opts.layer_colors = colors.to_vec();
    }
    let artifact = load_artifact(&read(input)?)?;
    Ok(Done { text: render(&artifact, format, &opts)?, failure: None })
}

fn job_of(cli: &Cli) -> JobSpec {
    let mut job = JobSpec {
        out: cli.out.as_ref().map(|p| p.display().to_string()),
        format: cli.format.clone(),
        seedless: cli.seedless,
        ..JobSpec::default()
    };
    let mut take = |command: &str, inst: &Inst| {
        job.command = command.into();
        job.k = inst.k;
        job.n = inst.n;
        job.ell = inst.ell;
        job.order = inst.order.clone();
    };
    let src_path = |src: &Source| src.input.as_ref().map(|p| p.display().to_string());
    match &cli.command {
        Command::Feasible(i) => take("feasible", i),
        Command::Generate { inst, .. } => take("generate", inst),
        Command::Verify(s) => take("verify", &s.inst),
        Command::Cliques { src, .. } => take("cliques", &src.inst),
        Command::Tiling(s) => take("tiling", &s.inst),
        Command::Dual(s) => take("dual", &s.inst),
        Command::Tshift(s) => take("tshift", &s.inst),
        Command::Weave(s) => take("weave", &s.inst),
        Command::Pipeline { inst, sweep } => {
            take("pipeline", inst);
            job.sweep = sweep.clone();
        }
        Command::Oracle { inst, sweep, .. } => {
            take("oracle", inst);
            job.sweep = sweep.clone();
        }
        Command::Render { input, scale, layer_colors } => {
            job.command = "render".into();
            job.input = Some(input.display().to_string());
            job.scale = *scale;
            job.layer_colors = layer_colors.clone();
        }
    }
    if let Command::Verify(s) | Command::Cliques { src: s, .. } | Command::Tiling(s) | Command::Dual(s) | Command::Tshift(s) | Command::Weave(s) =
        &cli.command
    {
        job.input = src_path(s);
    }
    job
}

fn run(cli: &Cli) -> Outcome<Done> {
    let ctx = Ctx { job: job_of(cli), seedless: cli.seedless, started: Instant::now() };
    let fmt = cli.format.as_deref().unwrap_or("json");
    let allowed: &[&str] = match &cli.command {
        Command::Render { .. } => &["svg", "tikz", "tex"],
        Command::Feasible(_) | Command::Generate { .. } => &["json", "text"],
        _ => &["json"],
    };
    if cli.format.is_some() && !allowed.contains(&fmt) {
        return Err(Failure::Malformed(format!("--format {fmt} is not available here; use one of {}", allowed.join(", "))));
    }
    match &cli.command {
        Command::Feasible(i) => cmd_feasible(&ctx, i),
        Command::Generate { inst, trace } => cmd_generate(&ctx, inst, *trace),
        Command::Verify(s) => cmd_verify(&ctx, s),
        Command::Cliques { src, all } => cmd_cliques(&ctx, src, *all),
        Command::Tiling(s) => cmd_tiling(&ctx, s),
        Command::Dual(s) => cmd_dual(&ctx, s),
        Command::Tshift(s) => cmd_tshift(&ctx, s),
        Command::Weave(s) => cmd_weave(&ctx, s),
        Command::Pipeline { inst, sweep } => cmd_pipeline(&ctx, inst, sweep.as_deref()),
        Command::Oracle { inst, sweep, first, budget } => cmd_oracle(&ctx, inst, sweep.as_deref(), *first, *budget),
        Command::Render { input, scale, layer_colors } => cmd_render(&ctx, input, *scale, layer_colors),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let done = match run(&cli) {
        Ok(d) => d,
        Err(f) => {
            eprintln!("error: {}", f.message());
            return ExitCode::from(f.code());
        }
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &done.text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(done.text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(3);
    }
    match done.failure {
        Some(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
        None => ExitCode::SUCCESS,
    }
}
