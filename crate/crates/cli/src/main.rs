//! `doublejump`: seeded experiments with JSON-lines output.
//!
//! Exit codes: 0 success, 1 capability or runtime error, 2 usage or input error.

mod args;
mod output;

use args::*;
use clap::{CommandFactory, Parser};
use doublejump::closed_form::{self, builtin_examples, ClosedForm};
use doublejump::equivalence::transfer_harness;
use doublejump::graph::{
    components, parse_edge_list, read_edge_list, sample_gnp, write_edge_list, ComponentKind,
    GnpParams, Graph,
};
use doublejump::local_limit::{census_vs_poisson, CensusOptions};
use doublejump::logic::{load_sentence, named_sentence, CheckOptions, Sentence};
use doublejump::moments::{compute_recurrences, constraint_summary, HSpec};
use doublejump::montecarlo::{estimate_probability, run_trials, trial_graph, ProbabilityEstimate};
use doublejump::subcritical::{
    component_census, decide, DecideOptions, DEFAULT_MREP, DEFAULT_SMAX,
};
use doublejump::supercritical::{
    build_ctk, build_h, build_h_by_w1, detect_ctk, nonconvergence_demo, verify_arithmetization,
    CtkOutcome, HGraph, HMetadata, NonconvergenceOptions,
};
use doublejump::Error;
use output::{RunConfig, Sink, VERSION};
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::io::Read;
use std::process::ExitCode;

/// Failure of a run, already classified by exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parameter(_)
            | Error::Syntax { .. }
            | Error::Unbound { .. }
            | Error::Type(_)
            | Error::EdgeList { .. }
            | Error::Hypothesis { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(format!("io error: {e}"))
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            if !e.use_stderr() {
                return ExitCode::SUCCESS;
            }
            eprintln!("\n{}", usage_help());
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

/// Help of the subcommand named on the command line, or the top-level help.
fn usage_help() -> String {
    let mut cmd = Cli::command();
    cmd.build();
    let named = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    match named.and_then(|n| cmd.find_subcommand_mut(&n).cloned()) {
        Some(mut sub) => sub.render_help().to_string(),
        None => cmd.render_help().to_string(),
    }
}

struct Ctx<'a> {
    global: &'a Global,
    sink: Sink,
}

impl Ctx<'_> {
    fn threads(&self) -> Option<usize> {
        Some(self.global.threads)
    }

    fn emit<P: Serialize, R: Serialize>(
        &mut self,
        command: &str,
        params: &P,
        result: &R,
    ) -> Outcome {
        let run = RunConfig {
            command,
            version: VERSION,
            seed: self.global.seed,
            threads: self.global.threads,
            params,
        };
        Ok(self.sink.record(&run, result)?)
    }

    fn note(&self, msg: impl AsRef<str>) {
        if !self.global.quiet {
            eprintln!("{}", msg.as_ref());
        }
    }

    /// `# key value` header lines for text outputs.
    fn header(&self, command: &str) -> String {
        format!(
            "# command {command}\n# version {VERSION}\n# seed {}\n",
            self.global.seed
        )
    }
}

fn run(cli: &Cli) -> Outcome {
    let mut ctx = Ctx {
        global: &cli.global,
        sink: Sink::open(cli.global.out.as_deref())?,
    };
    let name = cli.command.name();
    match &cli.command {
        Command::Sample(a) => sample(&mut ctx, name, a)?,
        Command::Census(a) => census(&mut ctx, name, a)?,
        Command::McProb(a) => mc_prob(&mut ctx, name, a)?,
        Command::Decide(a) => decide_cmd(&mut ctx, name, a)?,
        Command::BuildH(a) => build_h_cmd(&mut ctx, name, a)?,
        Command::VerifyH(a) => verify_h(&mut ctx, name, a)?,
        Command::Nonconv(a) => nonconv(&mut ctx, name, a)?,
        Command::Ctk(a) => ctk(&mut ctx, name, a)?,
        Command::Moments(a) => moments(&mut ctx, name, a)?,
        Command::Closedform(a) => closedform(&mut ctx, name, a)?,
        Command::Transfer(a) => transfer(&mut ctx, name, a)?,
    }
    Ok(ctx.sink.finish()?)
}

/// Builtin sentence names accepted wherever a sentence is expected.
const SENTENCE_BUILTINS: [&str; 5] = [
    "triangle",
    "isolated_triangle",
    "unspiked_triangle",
    "cycle",
    "two_cycle_component",
];

/// A builtin name, a file, or sentence text; builtins with a known limit
/// return it too.
fn resolve_sentence(arg: &str) -> Result<(Sentence, Option<ClosedForm>), Failure> {
    if let Some(ex) = builtin_examples().remove(arg) {
        return Ok((ex.sentence, Some(ex.limit)));
    }
    match named_sentence(arg) {
        Some(s) => Ok((s, None)),
        None => Ok((load_sentence(arg)?, None)),
    }
}

#[derive(Serialize)]
struct GraphSummary {
    n: usize,
    edges: usize,
    trees: usize,
    unicyclic: usize,
    complex: usize,
    largest_component: usize,
}

fn summarize(g: &Graph) -> GraphSummary {
    let comps = components(g);
    let count = |k: ComponentKind| comps.iter().filter(|c| c.kind == k).count();
    GraphSummary {
        n: g.n(),
        edges: g.edge_count(),
        trees: count(ComponentKind::Tree),
        unicyclic: count(ComponentKind::Unicyclic),
        complex: count(ComponentKind::Complex),
        largest_component: comps.iter().map(|c| c.vertices.len()).max().unwrap_or(0),
    }
}

fn sample(ctx: &mut Ctx, name: &str, a: &SampleArgs) -> Outcome {
    let g = sample_gnp(&GnpParams::new(a.n, a.c, ctx.global.seed)?)?;
    let s = summarize(&g);
    ctx.note(format!(
        "G({}, {}/{}): {} edges, {} trees, {} unicyclic, {} complex, largest component {}",
        a.n, a.c, a.n, s.edges, s.trees, s.unicyclic, s.complex, s.largest_component
    ));
    match a.format {
        GraphFormat::Json => ctx.emit(name, a, &json!({ "summary": s, "edges": g.edges() })),
        GraphFormat::Edges => {
            let text = ctx.header(name) + &write_edge_list(&g);
            Ok(ctx.sink.raw(&text)?)
        }
    }
}

fn census(ctx: &mut Ctx, name: &str, a: &CensusArgs) -> Outcome {
    match a.kind {
        CensusKind::Cycles => {
            let opts = CensusOptions {
                convention: a.convention.into(),
                multiplier: a.multiplier,
                threads: ctx.threads(),
                ..CensusOptions::default()
            };
            let rep = census_vs_poisson(a.c, a.radius, a.n, a.trials, ctx.global.seed, &opts)?;
            for row in &rep.rows {
                let verdict = match row.pass {
                    Some(true) => "pass",
                    Some(false) => "FAIL",
                    None => "-",
                };
                ctx.note(format!(
                    "{:<40} λ {:>10.6}  mean {:>10.6}  se {:>9.6}  {verdict}",
                    row.class_id, row.lambda_predicted, row.mean_empirical, row.stderr
                ));
            }
            ctx.emit(name, a, &rep)
        }
        CensusKind::Components => {
            let rep = component_census(
                a.n,
                a.c,
                a.trials,
                ctx.global.seed,
                a.max_size,
                ctx.threads(),
            )?;
            for (key, m) in &rep.unicyclic {
                ctx.note(format!(
                    "{key:<40} mean {:>10.6}  se {:>9.6}",
                    m.mean(),
                    m.stderr()
                ));
            }
            ctx.emit(name, a, &rep)
        }
    }
}

#[derive(Serialize)]
struct McProbResult {
    sentence: String,
    successes: u64,
    trials: u64,
    estimate: f64,
    stderr: f64,
    /// Wilson score interval at 95%.
    ci: (f64, f64),
    /// Known limit of the probability for builtin sentences.
    limit: Option<f64>,
}

fn mc_prob(ctx: &mut Ctx, name: &str, a: &McProbArgs) -> Outcome {
    let (sentence, limit) = resolve_sentence(&a.sentence)?;
    let est = estimate_probability(
        &sentence,
        a.n,
        a.c,
        a.trials,
        ctx.global.seed,
        ctx.threads(),
        &CheckOptions::default(),
    )?;
    let limit = limit.map(|f| f.evaluate(a.c)).transpose()?;
    ctx.note(format!(
        "Pr ≈ {:.4} ± {:.4} (95% CI [{:.4}, {:.4}]){}",
        est.estimate,
        est.stderr,
        est.wilson.0,
        est.wilson.1,
        limit.map_or(String::new(), |l| format!(", limit {l:.4}"))
    ));
    let result = McProbResult {
        sentence: sentence.to_string(),
        successes: est.successes,
        trials: est.trials,
        estimate: est.estimate,
        stderr: est.stderr,
        ci: est.wilson,
        limit,
    };
    ctx.emit(name, a, &result)
}

fn decide_cmd(ctx: &mut Ctx, name: &str, a: &DecideArgs) -> Outcome {
    let (sentence, _) = resolve_sentence(&a.sentence)?;
    // set quantifiers are evaluated by brute force, so keep the background small
    let (mrep, smax) = if sentence.has_set_quantifier() {
        (1, 2)
    } else {
        (DEFAULT_MREP, DEFAULT_SMAX)
    };
    let params = DecideResolved {
        sentence: &a.sentence,
        c: a.c,
        eps: a.eps,
        mrep: a.mrep.unwrap_or(mrep),
        smax: a.smax.unwrap_or(smax),
    };
    let opts = DecideOptions {
        mrep: params.mrep,
        smax: params.smax,
        threads: ctx.threads(),
        ..DecideOptions::default()
    };
    let r = decide(&sentence, a.c, a.eps, &opts)?;
    ctx.note(format!(
        "limit in [{:.5}, {:.5}] ({} profiles, {} types{})",
        r.lo,
        r.hi,
        r.profiles.len(),
        r.k,
        if r.stable { "" } else { ", UNSTABLE" }
    ));
    ctx.emit(name, &params, &r)
}

/// Graph plus metadata, as written by `build-h` and read by `verify-h`.
#[derive(Serialize, Deserialize)]
struct StoredH {
    n: usize,
    edges: Vec<(usize, usize)>,
    meta: HMetadata,
}

fn build_h_cmd(ctx: &mut Ctx, name: &str, a: &BuildHArgs) -> Outcome {
    let h = match (a.w1, a.n) {
        (Some(w1), _) => build_h_by_w1(a.big_k, w1)?,
        (None, Some(n)) => build_h(a.k1, a.big_k, n, a.log_base.into())?,
        (None, None) => return Err(Failure::Usage("one of --w1 or --n is required".into())),
    };
    ctx.note(format!(
        "H: K={} w1={} w={} l={}: {} vertices, {} edges",
        h.meta.big_k,
        h.meta.w1,
        h.meta.w,
        h.meta.l,
        h.graph.n(),
        h.graph.edge_count()
    ));
    match a.format {
        GraphFormat::Json => ctx.emit(
            name,
            a,
            &StoredH {
                n: h.graph.n(),
                edges: h.graph.edges(),
                meta: h.meta,
            },
        ),
        GraphFormat::Edges => {
            let text = ctx.header(name) + &write_edge_list(&h.graph);
            Ok(ctx.sink.raw(&text)?)
        }
    }
}

fn read_input(path: Option<&std::path::Path>) -> Result<String, Failure> {
    match path {
        Some(p) => {
            std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
        }
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn load_h(a: &VerifyHArgs) -> Result<HGraph, Failure> {
    let text = read_input(a.input.as_deref())?;
    let bad = |e: serde_json::Error| Failure::Usage(format!("invalid H input: {e}"));
    if let Some(meta_path) = &a.meta {
        let graph = parse_edge_list(&text)?;
        let meta: HMetadata = serde_json::from_str(&read_input(Some(meta_path))?).map_err(bad)?;
        return Ok(HGraph::from_parts(graph, meta)?);
    }
    // a `build-h` record: the stored graph is under `result`
    let line = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .ok_or_else(|| Failure::Usage("empty H input".into()))?;
    let value: serde_json::Value = serde_json::from_str(line).map_err(bad)?;
    let stored: StoredH =
        serde_json::from_value(value.get("result").cloned().unwrap_or(value)).map_err(bad)?;
    let graph = Graph::from_edges(stored.n, &stored.edges)?;
    Ok(HGraph::from_parts(graph, stored.meta)?)
}

fn verify_h(ctx: &mut Ctx, name: &str, a: &VerifyHArgs) -> Outcome {
    let h = load_h(a)?;
    let rep = verify_arithmetization(&h);
    let failed = rep.failed();
    ctx.note(if rep.pass {
        format!(
            "all {} arithmetization checks pass (w1 = {})",
            rep.checks.len(),
            rep.w1
        )
    } else {
        format!("FAILED checks: {}", failed.join(", "))
    });
    ctx.emit(name, a, &rep)
}

fn nonconv(ctx: &mut Ctx, name: &str, a: &NonconvArgs) -> Outcome {
    let mut opts = NonconvergenceOptions {
        k1: a.k1,
        base: a.log_base.into(),
        exhaustive_max_vertices: a.exhaustive_max,
        budget: a.budget,
        ..NonconvergenceOptions::default()
    };
    if !a.log_n.is_empty() {
        opts.log_n = a.log_n.clone();
    }
    let rep = nonconvergence_demo(a.c, a.big_k, &opts)?;
    for row in &rep.rows {
        let show = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        ctx.note(format!(
            "log n {:>6.2}  w {:>4}  w1 {:>5}  wow⁻¹ {:>3}  predicted {:>5}  planted {:>7}  exhaustive {:>7}",
            row.log_n,
            row.w,
            show(row.w1.map(|x| x.to_string())),
            show(row.wow_inv.map(|x| x.to_string())),
            show(row.predicted.map(|x| x.to_string())),
            show(row.planted.map(|x| format!("{x:?}").to_lowercase())),
            show(row.exhaustive.map(|x| format!("{x:?}").to_lowercase())),
        ));
    }
    ctx.emit(name, a, &rep)
}

fn ctk(ctx: &mut Ctx, name: &str, a: &CtkArgs) -> Outcome {
    if let Some(w) = a.w {
        let g = build_ctk(a.k, w)?;
        ctx.note(format!(
            "CTK_{} with paths of length {w}: {} vertices, {} edges",
            a.k,
            g.n(),
            g.edge_count()
        ));
        return match a.format {
            GraphFormat::Json => ctx.emit(name, a, &json!({ "n": g.n(), "edges": g.edges() })),
            GraphFormat::Edges => {
                let text = ctx.header(name) + &write_edge_list(&g);
                Ok(ctx.sink.raw(&text)?)
            }
        };
    }
    if let Some(path) = &a.input {
        let g = read_edge_list(path)?;
        let out = detect_ctk(&g, a.k, a.budget)?;
        ctx.note(match &out {
            CtkOutcome::Found(w) => {
                format!("found CTK_{} with branch vertices {:?}", a.k, w.branch)
            }
            CtkOutcome::Absent => format!("no CTK_{}", a.k),
            CtkOutcome::Unknown { steps } => format!("undecided after {steps} steps"),
        });
        return ctx.emit(name, a, &out);
    }
    let (n, c) = match (a.n, a.c) {
        (Some(n), Some(c)) => (n, c),
        _ => {
            return Err(Failure::Usage(
                "one of --w, --input or --n with --c is required".into(),
            ))
        }
    };
    let seed = ctx.global.seed;
    let outcomes = run_trials(seed, a.trials, ctx.threads(), |i, _| {
        let g = trial_graph(n, c, seed, i)?;
        detect_ctk(&g, a.k, a.budget)
    })?
    .into_iter()
    .collect::<doublejump::Result<Vec<_>>>()?;
    let found = outcomes.iter().filter(|o| o.is_found()).count() as u64;
    let unknown = outcomes
        .iter()
        .filter(|o| matches!(o, CtkOutcome::Unknown { .. }))
        .count() as u64;
    let est = ProbabilityEstimate::from_counts(found, a.trials);
    ctx.note(format!(
        "CTK_{} hit rate in G({n}, {c}/{n}): {:.3} ({unknown} undecided)",
        a.k, est.estimate
    ));
    ctx.emit(name, a, &json!({ "hit_rate": est, "undecided": unknown }))
}

fn moments(ctx: &mut Ctx, name: &str, a: &MomentsArgs) -> Outcome {
    if let (Some(m), Some(s_max)) = (a.m, a.s_max) {
        let table = compute_recurrences(a.n, m, a.c / a.n, s_max)?;
        ctx.note(match table.first_failure() {
            None => format!("bound chain holds for s ≤ {s_max}"),
            Some(s) => format!("bound chain first fails at s = {s}"),
        });
        if a.csv {
            let seed = ctx.global.seed;
            let mut text = ctx.header(name);
            for (i, line) in table.to_csv().lines().enumerate() {
                let extra = if i == 0 {
                    ",seed,version".to_string()
                } else {
                    format!(",{seed},{VERSION}")
                };
                text.push_str(line);
                text.push_str(&extra);
                text.push('\n');
            }
            return Ok(ctx.sink.raw(&text)?);
        }
        return ctx.emit(name, a, &table);
    }
    let spec = match (a.big_k, a.ctk, a.w) {
        (Some(k), _, _) => HSpec::for_h(a.k1, k, a.n, a.log_base.into())?,
        (None, Some(k), Some(w)) => HSpec::for_ctk(k, w)?,
        _ => {
            return Err(Failure::Usage(
                "one of --K, --ctk with --w, or --m with --s-max is required".into(),
            ))
        }
    };
    let s = constraint_summary(&spec, a.n, a.c)?;
    ctx.note(format!(
        "v={} e={} l={}: ln E = {:.3}, exponent {:.3}, overlap condition {}, bound chain {}",
        spec.v,
        spec.e,
        spec.l,
        s.expectation.ln_exact,
        s.expectation.exponent,
        s.overlap.condition,
        s.bound_chain
    ));
    ctx.emit(name, a, &s)
}

#[derive(Serialize)]
struct ClosedformRow {
    name: Option<String>,
    expr: String,
    c: f64,
    value: f64,
    derivative: Option<f64>,
}

fn closedform(ctx: &mut Ctx, name: &str, a: &ClosedformArgs) -> Outcome {
    let forms: Vec<(Option<String>, ClosedForm)> = match (&a.expr, &a.example) {
        (Some(e), _) => vec![(None, closed_form::parse(e)?)],
        (None, Some(ex)) => {
            let f = builtin_examples().remove(ex.as_str()).ok_or_else(|| {
                Failure::Usage(format!(
                    "unknown example `{ex}`; builtins: {}",
                    SENTENCE_BUILTINS[..3].join(", ")
                ))
            })?;
            vec![(Some(ex.clone()), f.limit)]
        }
        (None, None) => builtin_examples()
            .into_iter()
            .map(|(k, v)| (Some(k.to_string()), v.limit))
            .collect(),
    };
    let mut rows = Vec::new();
    for (label, f) in &forms {
        let d = a.derivative.then(|| f.differentiate());
        for &c in &a.c {
            let row = ClosedformRow {
                name: label.clone(),
                expr: f.to_string(),
                c,
                value: f.evaluate(c)?,
                derivative: d.as_ref().map(|d| d.evaluate(c)).transpose()?,
            };
            ctx.note(format!(
                "{:<20} c = {c:<6} {:.7}",
                label.as_deref().unwrap_or("expr"),
                row.value
            ));
            rows.push(row);
        }
    }
    ctx.emit(name, a, &rows)
}

fn transfer(ctx: &mut Ctx, name: &str, a: &TransferArgs) -> Outcome {
    let rep = transfer_harness(a.radius, a.trials, ctx.global.seed, ctx.threads())?;
    ctx.note(format!(
        "R={} rank {}: {} pairs tested, {} violations",
        rep.r,
        rep.rank,
        rep.pairs_tested,
        rep.violations.len()
    ));
    ctx.emit(name, a, &rep)
}
