use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::time::Duration;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use cubefree_core::constructions::{
    alternating_chain_set, block_partition, chain_decomposition, interval_construction,
    layer_decomposition, matrix_coord, residue_construction, LayerContext,
};
use cubefree_core::search::{solve, Violation};
use cubefree_core::{Ambient, DenseSet, Method, Problem, ProblemKind, SearchConfig};

use crate::args::{
    CacheAction, CheckArgs, Cli, Command, ConstructArgs, ConstructionName, GlobalArgs, MaxArgs,
    MethodArg, ProblemArgs, SearchArgs, VerifyArgs,
};
use crate::cache::{self, Cache, RunRecord};
use crate::claims::{self, Claim, ParamLists, Point, Verdict, CATALOG};
use crate::parse;

/// Whether a command's subject passed (free set, all verdicts hold).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

impl Format {
    fn resolve(global: &GlobalArgs, default: Format) -> Format {
        if global.json {
            Format::Json
        } else if global.csv {
            Format::Csv
        } else {
            default
        }
    }
}

fn sink(global: &GlobalArgs) -> Result<Box<dyn Write>> {
    Ok(match &global.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn cache_of(global: &GlobalArgs) -> Option<Cache> {
    if global.no_cache {
        return None;
    }
    Some(Cache::new(
        global
            .cache
            .clone()
            .unwrap_or_else(|| cache::DEFAULT_PATH.into()),
    ))
}

pub fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Check(args) => check(&cli.global, args),
        Command::Max(args) => max(&cli.global, args),
        Command::Verify(args) => verify(&cli.global, args),
        Command::Construct(args) => construct(&cli.global, args),
        Command::Cache { action } => cache_cmd(&cli.global, *action),
    }
}

fn problem_from(args: &ProblemArgs) -> Result<Problem> {
    let ambient = match (args.cyclic, args.interval) {
        (Some(n), None) => Ambient::cyclic(n)?,
        (None, Some(n)) => Ambient::interval(n)?,
        _ => bail!("give exactly one of --cyclic N or --interval N"),
    };
    let kind = match (args.d.or(args.cube), args.pair, args.diag, args.diag0) {
        (Some(d), None, None, None) => ProblemKind::CubeFree(d),
        (None, Some(d), None, None) => ProblemKind::PairFree(d),
        (None, None, Some(d), None) => ProblemKind::DiagonalFree(d),
        (None, None, None, Some(d)) => ProblemKind::DiagonalFreeWithZero(d),
        _ => bail!("give exactly one of --d, --cube, --pair, --diag or --diag0"),
    };
    Ok(Problem::new(kind, ambient)?)
}

fn search_config(args: &SearchArgs, time_limit: Option<f64>) -> Result<SearchConfig> {
    let mut config = SearchConfig {
        force: args.force,
        ..SearchConfig::default()
    };
    if let Some(cap) = args.cap {
        config.brute_force_cap = cap;
        config.branch_and_bound_cap = cap;
    }
    if let Some(secs) = time_limit {
        if !secs.is_finite() || secs < 0.0 {
            bail!("--time-limit must be a nonnegative number of seconds");
        }
        config.time_limit = Some(Duration::from_secs_f64(secs));
    }
    Ok(config)
}

fn ambient_flag(ambient: Ambient) -> &'static str {
    if ambient.is_cyclic() {
        "cyclic"
    } else {
        "interval"
    }
}

fn joined(values: impl IntoIterator<Item = u32>) -> String {
    values
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn violation_elements(v: &Violation) -> Vec<u32> {
    match v {
        Violation::Cube(w) => w.generator.entries().to_vec(),
        Violation::Diagonal { elements, .. } => elements.clone(),
        Violation::Pair { x, image } => vec![*x, *image],
    }
}

fn check(global: &GlobalArgs, args: &CheckArgs) -> Result<Outcome> {
    let problem = problem_from(&args.problem)?;
    let elements = parse::set_spec(&args.set)?;
    let set = DenseSet::from_elements(problem.ambient, elements)?;
    let violation = problem.violation(&set)?;
    let mut out = sink(global)?;
    match Format::resolve(global, Format::Json) {
        Format::Csv => {
            writeln!(out, "problem,ambient,N,d,size,free,witness")?;
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                problem.kind.name(),
                ambient_flag(problem.ambient),
                problem.order(),
                problem.kind.d(),
                set.len(),
                violation.is_none(),
                violation
                    .as_ref()
                    .map(|v| joined(violation_elements(v)))
                    .unwrap_or_default()
            )?;
        }
        Format::Json | Format::Text => {
            let doc = json!({
                "problem": problem.kind.name(),
                "ambient": ambient_flag(problem.ambient),
                "N": problem.order(),
                "d": problem.kind.d(),
                "set": set,
                "free": violation.is_none(),
                "witness": violation,
            });
            writeln!(out, "{doc}")?;
        }
    }
    out.flush()?;
    Ok(if violation.is_none() {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

fn method_of(arg: MethodArg) -> Option<Method> {
    match arg {
        MethodArg::Auto => None,
        MethodArg::Brute => Some(Method::BruteForce),
        MethodArg::Bnb => Some(Method::BranchAndBound),
        MethodArg::Chain => Some(Method::ChainDp),
        MethodArg::Graph => Some(Method::FunctionalGraphDp),
    }
}

/// Runs `compute` unless the cache already holds a payload for this
/// canonical command. Payloads are cached only when `cacheable` says so.
fn cached_run(
    global: &GlobalArgs,
    command: String,
    canonical: Value,
    compute: impl FnOnce() -> Result<Value>,
    cacheable: impl FnOnce(&Value) -> bool,
) -> Result<(Value, bool)> {
    let cache = cache_of(global);
    let fp = cache::fingerprint(&canonical);
    if let Some(cache) = &cache {
        if let Some(record) = cache.lookup(&fp)? {
            return Ok((record.payload, true));
        }
    }
    let payload = compute()?;
    if let Some(cache) = &cache {
        if cacheable(&payload) {
            cache.append(&RunRecord::new(command, fp, payload.clone()))?;
        }
    }
    Ok((payload, false))
}

fn max(global: &GlobalArgs, args: &MaxArgs) -> Result<Outcome> {
    let problem = problem_from(&args.problem)?;
    let config = search_config(&args.search, args.time_limit)?;
    let method = method_of(args.method);
    let method_name = method.map_or("auto", |m| m.name());
    let mut command = format!(
        "max --{} {} --{} {} --method {method_name}",
        ambient_flag(problem.ambient),
        problem.order(),
        problem.kind.name(),
        problem.kind.d()
    );
    if let Some(cap) = args.search.cap {
        command.push_str(&format!(" --cap {cap}"));
    }
    if args.search.force {
        command.push_str(" --force");
    }
    if let Some(t) = args.time_limit {
        command.push_str(&format!(" --time-limit {t}"));
    }
    let canonical = json!({
        "command": "max",
        "ambient": ambient_flag(problem.ambient),
        "N": problem.order(),
        "problem": problem.kind.name(),
        "d": problem.kind.d(),
        "method": method_name,
        "cap": args.search.cap,
        "force": args.search.force,
        "time_limit": args.time_limit,
    });
    let (mut payload, cached) = cached_run(
        global,
        command,
        canonical,
        || Ok(serde_json::to_value(solve(&problem, method, &config)?)?),
        |p| p["optimal"] == json!(true),
    )?;
    payload["cached"] = json!(cached);

    let mut out = sink(global)?;
    match Format::resolve(global, Format::Json) {
        Format::Csv => {
            writeln!(
                out,
                "problem,ambient,N,d,max,method,explored,elapsed_ms,optimal,cached,witness"
            )?;
            let witness: Vec<String> = payload["witness"]
                .as_array()
                .map(|w| w.iter().map(|v| v.to_string()).collect())
                .unwrap_or_default();
            let field = |k: &str| match &payload[k] {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                field("problem"),
                field("ambient"),
                field("N"),
                field("d"),
                field("max"),
                field("method"),
                field("explored"),
                field("elapsed_ms"),
                field("optimal"),
                field("cached"),
                witness.join(";")
            )?;
        }
        Format::Json | Format::Text => writeln!(out, "{payload}")?,
    }
    out.flush()?;
    Ok(Outcome::Pass)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
struct Summary {
    claims: Vec<String>,
    points: usize,
    pass: usize,
    fail: usize,
    skipped: usize,
    cached: bool,
    status: &'static str,
}

impl Summary {
    fn line(&self) -> String {
        format!(
            "summary claims={} points={} pass={} fail={} skipped={} cached={} status={}",
            self.claims.join(","),
            self.points,
            self.pass,
            self.fail,
            self.skipped,
            self.cached,
            self.status
        )
    }
}

const TEXT_HEADER: &str = "claim              params               observed  cmp  bound        pass  method               note";
const CSV_HEADER: &str = "claim,params,observed,comparator,bound,pass,method,note";

fn verdict_row(v: &Verdict, format: Format) -> String {
    match format {
        Format::Csv => format!(
            "{},{},{},{},{},{},{},{}",
            v.claim,
            csv_field(&v.params.to_string()),
            v.observed,
            v.comparator.symbol(),
            v.bound,
            v.pass,
            v.method,
            csv_field(&v.note)
        ),
        _ => format!(
            "{:<18} {:<20} {:>8}  {:<3}  {:<11}  {:<4}  {:<19}  {}",
            v.claim,
            v.params.to_string(),
            v.observed,
            v.comparator.symbol(),
            v.bound,
            if v.pass { "PASS" } else { "FAIL" },
            v.method,
            v.note
        )
        .trim_end()
        .to_string(),
    }
}

fn param_lists(args: &VerifyArgs) -> Result<ParamLists> {
    let range = |s: &Option<String>| s.as_deref().map(parse::range).transpose();
    Ok(ParamLists {
        n: range(&args.n)?,
        d: range(&args.d)?,
        p: range(&args.p)?,
        l: range(&args.l)?,
        pairs: args
            .pairs
            .as_deref()
            .map(|s| parse::tuples(s, 2))
            .transpose()?,
        triples: args
            .triples
            .as_deref()
            .map(|s| parse::tuples(s, 3))
            .transpose()?,
    })
}

fn list_claims(global: &GlobalArgs) -> Result<Outcome> {
    let mut out = sink(global)?;
    match Format::resolve(global, Format::Text) {
        Format::Json => {
            let rows: Vec<Value> = CATALOG
                .iter()
                .map(|c| {
                    json!({
                        "id": c.id,
                        "aliases": c.aliases,
                        "statement": c.statement,
                        "comparator": c.comparator,
                    })
                })
                .collect();
            writeln!(out, "{}", Value::Array(rows))?;
        }
        Format::Csv => {
            writeln!(out, "id,aliases,comparator,statement")?;
            for c in CATALOG {
                writeln!(
                    out,
                    "{},{},{},{}",
                    c.id,
                    c.aliases.join(";"),
                    c.comparator.symbol(),
                    csv_field(c.statement)
                )?;
            }
        }
        Format::Text => {
            for c in CATALOG {
                writeln!(out, "{:<18} {}", c.id, c.statement)?;
            }
        }
    }
    out.flush()?;
    Ok(Outcome::Pass)
}

fn verify(global: &GlobalArgs, args: &VerifyArgs) -> Result<Outcome> {
    if args.list {
        return list_claims(global);
    }
    let id = args.claim.as_deref().expect("clap requires a claim");
    let lists = param_lists(args)?;
    let selected: Vec<&Claim> = if id == "all" {
        if args.n.is_some()
            || args.d.is_some()
            || args.p.is_some()
            || args.l.is_some()
            || args.pairs.is_some()
            || args.triples.is_some()
        {
            bail!(
                "`verify all` runs every claim at its default parameters; drop the parameter flags"
            );
        }
        CATALOG.iter().collect()
    } else {
        vec![claims::lookup(id)?]
    };
    let config = search_config(&args.search, None)?;

    let mut plan: Vec<(&Claim, Vec<Point>, usize)> = Vec::new();
    for claim in selected {
        let (run, skipped) = claim.points(&lists)?;
        plan.push((claim, run, skipped.len()));
    }
    let claim_ids: Vec<String> = plan.iter().map(|(c, _, _)| c.id.to_string()).collect();
    let points: Vec<Value> = plan
        .iter()
        .map(|(c, run, _)| json!({"claim": c.id, "points": run}))
        .collect();
    let canonical = json!({
        "command": "verify",
        "plan": points,
        "cap": args.search.cap,
        "force": args.search.force,
    });
    let command = format!("verify {id}");

    let format = Format::resolve(global, Format::Text);
    let mut out = sink(global)?;
    match format {
        Format::Text => writeln!(out, "{TEXT_HEADER}")?,
        Format::Csv => writeln!(out, "{CSV_HEADER}")?,
        Format::Json => {}
    }
    out.flush()?;

    // Rows stream batch by batch when computed; a cache hit replays them.
    let batch = rayon::current_num_threads().max(1);
    let stream = format != Format::Json;
    let (payload, cached) = cached_run(
        global,
        command,
        canonical,
        || {
            let mut verdicts = Vec::new();
            for (claim, run, _) in &plan {
                for chunk in run.chunks(batch) {
                    let rows = chunk
                        .par_iter()
                        .map(|pt| claims::evaluate(claim, pt, &config))
                        .collect::<Result<Vec<_>>>()?;
                    if stream {
                        for v in &rows {
                            writeln!(out, "{}", verdict_row(v, format))?;
                        }
                        out.flush()?;
                    }
                    verdicts.extend(rows);
                }
            }
            Ok(serde_json::to_value(verdicts)?)
        },
        |_| true,
    )?;
    let verdicts: Vec<Verdict> = serde_json::from_value(payload).context("cached verdicts")?;
    if cached && stream {
        for v in &verdicts {
            writeln!(out, "{}", verdict_row(v, format))?;
        }
    }

    let pass = verdicts.iter().filter(|v| v.pass).count();
    let fail = verdicts.len() - pass;
    let summary = Summary {
        claims: claim_ids,
        points: verdicts.len(),
        pass,
        fail,
        skipped: plan.iter().map(|(_, _, s)| s).sum(),
        cached,
        status: if fail == 0 { "pass" } else { "fail" },
    };
    match format {
        Format::Text => writeln!(out, "{}", summary.line())?,
        Format::Csv => eprintln!("{}", summary.line()),
        Format::Json => writeln!(out, "{}", json!({"verdicts": verdicts, "summary": summary}))?,
    }
    out.flush()?;
    Ok(if fail == 0 {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

fn need<T: Copy>(value: Option<T>, flag: &str, name: ConstructionName) -> Result<T> {
    value.ok_or_else(|| anyhow::anyhow!("construct {name:?} needs --{flag}"))
}

fn emit_set(out: &mut dyn Write, set: &DenseSet, format: Format) -> Result<()> {
    if format == Format::Csv {
        writeln!(out, "element")?;
        for e in set {
            writeln!(out, "{e}")?;
        }
    } else {
        writeln!(out, "{}", serde_json::to_string(set)?)?;
    }
    Ok(())
}

fn construct(global: &GlobalArgs, args: &ConstructArgs) -> Result<Outcome> {
    use ConstructionName as C;
    let name = args.name;
    let format = Format::resolve(global, Format::Json);
    let mut out = sink(global)?;
    match name {
        C::Residue => {
            let set = residue_construction(need(args.n, "N", name)?, need(args.d, "d", name)?)?;
            emit_set(&mut out, &set, format)?;
        }
        C::Interval => {
            let n = need(args.n, "N", name)?;
            let ambient = if args.cyclic {
                Ambient::cyclic(n)?
            } else {
                Ambient::interval(n)?
            };
            emit_set(&mut out, &interval_construction(ambient)?, format)?;
        }
        C::Alternating => {
            let set = alternating_chain_set(need(args.n, "N", name)?, need(args.d, "d", name)?)?;
            emit_set(&mut out, &set, format)?;
        }
        C::Chains => {
            let chains = chain_decomposition(need(args.n, "N", name)?, need(args.d, "d", name)?)?;
            if format == Format::Csv {
                writeln!(out, "starter,length,elements")?;
                for c in &chains.chains {
                    let elems: Vec<String> = c.elements.iter().map(u64::to_string).collect();
                    writeln!(
                        out,
                        "{},{},{}",
                        c.starter,
                        c.elements.len(),
                        elems.join(";")
                    )?;
                }
            } else {
                writeln!(out, "{}", serde_json::to_string(&chains)?)?;
            }
        }
        C::Layers => {
            let context = match (args.p, args.l, args.n) {
                (Some(p), Some(l), None) => LayerContext::PrimePower { p, l },
                (None, None, Some(n)) => LayerContext::Integers {
                    n,
                    d: need(args.d, "d", name)?,
                },
                _ => bail!("construct layers needs either --p and --l, or --N and --d"),
            };
            let layers = layer_decomposition(context)?;
            if format == Format::Csv {
                writeln!(out, "layer,element")?;
                for (i, layer) in layers.layers.iter().enumerate() {
                    for e in layer {
                        writeln!(out, "{},{e}", i + 1)?;
                    }
                }
            } else {
                writeln!(out, "{}", serde_json::to_string(&layers)?)?;
            }
        }
        C::Blocks => {
            let blocks = block_partition(
                need(args.p, "p", name)?,
                need(args.l, "l", name)?,
                need(args.d, "d", name)? as u32,
            )?;
            if format == Format::Csv {
                writeln!(out, "block,first_layer,last_layer,size,elements")?;
                for (i, b) in blocks.blocks.iter().enumerate() {
                    writeln!(
                        out,
                        "{},{},{},{},{}",
                        i + 1,
                        b.first_layer,
                        b.last_layer,
                        b.elements.len(),
                        joined(b.elements.iter())
                    )?;
                }
            } else {
                writeln!(out, "{}", serde_json::to_string(&blocks)?)?;
            }
        }
        C::Matrix => {
            let d = need(args.d, "d", name)?;
            let upto = need(args.upto, "upto", name)?;
            if upto > 10_000_000 {
                bail!("--upto is limited to 10^7");
            }
            let rows = (1..=upto)
                .map(|m| matrix_coord(m, d).map(|(row, col)| (m, row, col)))
                .collect::<cubefree_core::Result<Vec<_>>>()?;
            if format == Format::Csv {
                writeln!(out, "m,row,col")?;
                for (m, row, col) in rows {
                    writeln!(out, "{m},{row},{col}")?;
                }
            } else {
                let doc: Vec<Value> = rows
                    .into_iter()
                    .map(|(m, row, col)| json!({"m": m, "row": row, "col": col}))
                    .collect();
                writeln!(out, "{}", Value::Array(doc))?;
            }
        }
    }
    out.flush()?;
    Ok(Outcome::Pass)
}

fn cache_cmd(global: &GlobalArgs, action: CacheAction) -> Result<Outcome> {
    let cache = Cache::new(
        global
            .cache
            .clone()
            .unwrap_or_else(|| cache::DEFAULT_PATH.into()),
    );
    let mut out = sink(global)?;
    match action {
        CacheAction::Path => writeln!(out, "{}", cache.path().display())?,
        CacheAction::Clear => {
            if cache.clear()? {
                writeln!(out, "removed {}", cache.path().display())?;
            } else {
                writeln!(out, "no cache at {}", cache.path().display())?;
            }
        }
        CacheAction::Show => {
            let (records, corrupt) = cache.records()?;
            match Format::resolve(global, Format::Text) {
                Format::Json => writeln!(out, "{}", serde_json::to_string(&records)?)?,
                Format::Csv => {
                    writeln!(out, "timestamp,fingerprint,tool_version,command")?;
                    for r in &records {
                        writeln!(
                            out,
                            "{},{},{},{}",
                            r.timestamp,
                            r.fingerprint,
                            r.tool_version,
                            csv_field(&r.command)
                        )?;
                    }
                }
                Format::Text => {
                    for r in &records {
                        writeln!(
                            out,
                            "{}  {}  {}",
                            r.timestamp,
                            r.fingerprint.get(..12).unwrap_or(&r.fingerprint),
                            r.command
                        )?;
                    }
                    writeln!(
                        out,
                        "{} records, {} corrupt lines skipped",
                        records.len(),
                        corrupt
                    )?;
                }
            }
        }
    }
    out.flush()?;
    Ok(Outcome::Pass)
}
