//! `cpw`: a workbench for sumset, isoperimetric and critical-pair structure
//! computations on finite abelian groups.
//!
//! Exit codes: 0 success; 1 counterexample or missing witness/matching;
//! 2 parse and configuration errors; 3 mathematical precondition failures.

mod cache;

use cache::{content_key, Cache};
use clap::{Parser, Subcommand};
use cpw_core::graph::{self, Digraph};
use cpw_core::iso::{self, IsoConfig};
use cpw_core::verify::{self, CheckOutcome, LemmaInstance, SweepOptions, TheoremId};
use cpw_core::{
    enumerate_group_types, AbelianGroup, Error, GroupSubset, Subgroup, DEFAULT_ORDER_CAP,
};
use std::path::PathBuf;
use std::process::ExitCode;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "cpw",
    version,
    about = "Critical-pair workbench: sumsets, isoperimetric profiles, and exhaustive \
             verification sweeps on finite abelian groups"
)]
struct Cli {
    /// Cap on group order (the CPW_ORDER_CAP environment variable overrides
    /// the built-in default; this flag overrides both)
    #[arg(long, global = true)]
    order_cap: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Isoperimetric profile of a generating subset: connectivities,
    /// fragments, atoms, hyper-atoms
    Profile {
        /// Group spec, e.g. Z6 or Z2xZ4
        group: String,
        /// Subset literal, e.g. "{0,1,3}" or "{(0,0),(1,2)}"
        s: String,
        #[arg(long)]
        json: bool,
        /// Cap on the fragment lists
        #[arg(long, default_value_t = 100_000)]
        fragment_cap: usize,
    },
    /// Classify an extremal pair (S, T) by its witness subgroup and case
    Classify {
        group: String,
        s: String,
        t: String,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustively verify one statement over groups or a range of orders
    Sweep {
        #[arg(long)]
        theorem: String,
        /// Group specs (repeatable); alternative to --orders
        #[arg(long = "group")]
        groups: Vec<String>,
        /// Inclusive order range, e.g. 2..10
        #[arg(long)]
        orders: Option<String>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Write the JSON report here
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the CSV summary here
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Cache directory for sweep reports
        #[arg(long)]
        cache: Option<PathBuf>,
        /// With --cache: recompute and compare against the cached report
        #[arg(long)]
        verify_cache: bool,
    },
    /// Strong isoperimetric matching on a digraph (from a file or seeded)
    GraphSipg {
        /// Digraph text file: first line the vertex count, then "u v" arcs
        #[arg(long, conflicts_with = "random")]
        file: Option<PathBuf>,
        /// Generate a seeded pseudo-random digraph with this many vertices
        #[arg(long)]
        random: Option<usize>,
        /// LCG seed for --random
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Arc density percentage for --random
        #[arg(long, default_value_t = 35)]
        density: u32,
        /// Vertex set literal, e.g. "{0,2}"
        x: String,
        #[arg(long)]
        json: bool,
    },
    /// Check one lemma/theorem statement on one explicit instance
    LemmaCheck {
        #[arg(long)]
        lemma: String,
        group: String,
        /// Set literals in the order the statement expects
        sets: Vec<String>,
        /// Subgroup literal, where the statement needs one
        #[arg(long)]
        subgroup: Option<String>,
        /// Distinguished element index (difference for apc, vertex for sip2)
        #[arg(long)]
        element: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

type CmdResult = Result<ExitCode, (u8, String)>;

fn classify_error(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::Io(_)
        | Error::UnknownTheorem(_)
        | Error::EmptyFactors
        | Error::FactorBelowTwo(_)
        | Error::OrderCapExceeded { .. }
        | Error::GraphTooLarge(_) => 2,
        Error::NoWitnessFound | Error::MatchingShortfall { .. } => 1,
        _ => 3,
    }
}

fn fail(e: Error) -> (u8, String) {
    (classify_error(&e), e.to_string())
}

fn effective_cap(flag: Option<u64>) -> Result<u64, (u8, String)> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var("CPW_ORDER_CAP") {
        Ok(v) => v
            .parse::<u64>()
            .map_err(|_| (2u8, format!("CPW_ORDER_CAP is not an integer: {v:?}"))),
        Err(_) => Ok(DEFAULT_ORDER_CAP),
    }
}

fn parse_group(spec: &str, cap: u64) -> Result<AbelianGroup, (u8, String)> {
    AbelianGroup::parse_spec_with_cap(spec, cap).map_err(fail)
}

fn parse_set(g: &AbelianGroup, lit: &str) -> Result<GroupSubset, (u8, String)> {
    g.parse_subset(lit).map_err(fail)
}

fn run(cli: Cli) -> CmdResult {
    let cap = effective_cap(cli.order_cap)?;
    match cli.cmd {
        Cmd::Profile {
            group,
            s,
            json,
            fragment_cap,
        } => cmd_profile(&group, &s, cap, json, fragment_cap),
        Cmd::Classify { group, s, t, json } => cmd_classify(&group, &s, &t, cap, json),
        Cmd::Sweep {
            theorem,
            groups,
            orders,
            workers,
            json,
            csv,
            cache,
            verify_cache,
        } => cmd_sweep(
            &theorem,
            &groups,
            orders.as_deref(),
            workers,
            cap,
            json,
            csv,
            cache,
            verify_cache,
        ),
        Cmd::GraphSipg {
            file,
            random,
            seed,
            density,
            x,
            json,
        } => cmd_graph_sipg(file, random, seed, density, &x, json),
        Cmd::LemmaCheck {
            lemma,
            group,
            sets,
            subgroup,
            element,
            k,
            json,
        } => cmd_lemma_check(&lemma, &group, &sets, subgroup, element, k, cap, json),
    }
}

fn subset_json(s: &GroupSubset) -> serde_json::Value {
    serde_json::json!({
        "set": s.to_string(),
        "indices": s.indices(),
        "cardinality": s.card(),
    })
}

fn cmd_profile(group: &str, s: &str, cap: u64, json: bool, fragment_cap: usize) -> CmdResult {
    let g = parse_group(group, cap)?;
    let s = parse_set(&g, s)?;
    let profile = iso::iso_profile_with(&s, &IsoConfig { fragment_cap }).map_err(fail)?;
    let facet_json = |f: &iso::KFacet| {
        serde_json::json!({
            "separable": f.separable,
            "kappa": f.kappa,
            "fragment_count": f.fragments.len(),
            "fragments_sample": f.fragments.iter().take(8).map(|x| x.to_string()).collect::<Vec<_>>(),
            "atom_count": f.atoms.len(),
            "atoms": f.atoms.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        })
    };
    if json {
        let out = serde_json::json!({
            "schema_version": 1,
            "group": g.spec_string(),
            "s": subset_json(&s),
            "k1": facet_json(&profile.k1),
            "k2": facet_json(&profile.k2),
            "hyper_atoms": profile.hyper_atoms.iter().map(|h| h.set().to_string()).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("group      {}", g.spec_string());
        println!("S          {} (|S| = {})", s, s.card());
        for (k, f) in [(1, &profile.k1), (2, &profile.k2)] {
            match f.kappa {
                Some(kap) => println!(
                    "kappa_{k}    {kap}   fragments {} (sample {})   atoms {}",
                    f.fragments.len(),
                    f.fragments
                        .iter()
                        .take(4)
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(" "),
                    f.atoms
                        .iter()
                        .take(6)
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                ),
                None => println!("kappa_{k}    undefined (not {k}-separable)"),
            }
        }
        println!(
            "hyper-atoms {}",
            profile
                .hyper_atoms
                .iter()
                .map(|h| h.set().to_string())
                .collect::<Vec<_>>()
                .join(" ")
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn verdict_json(v: &verify::CaseVerdict) -> serde_json::Value {
    serde_json::json!({
        "case": v.case.to_string(),
        "all_cases": v.all_cases.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "witness_subgroup": v.subgroup.set().to_string(),
        "s_empty": v.s_empty.to_string(),
        "t_empty": v.t_empty.to_string(),
        "reconstructed_sum": v.checks.reconstructed_sum,
    })
}

fn cmd_classify(group: &str, s: &str, t: &str, cap: u64, json: bool) -> CmdResult {
    let g = parse_group(group, cap)?;
    let s = parse_set(&g, s)?;
    let t = parse_set(&g, t)?;
    let v = verify::classify_extremal_pair(&s, &t).map_err(fail)?;
    if json {
        let out = serde_json::json!({
            "schema_version": 1,
            "group": g.spec_string(),
            "s": subset_json(&s),
            "t": subset_json(&t),
            "verdict": verdict_json(&v),
            "self_certified": v.recheck(&s, &t),
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("group   {}", g.spec_string());
        println!("S       {}", s);
        println!("T       {}", t);
        println!("case    ({})  [all holding: {}]",
            v.case,
            v.all_cases
                .iter()
                .map(|c| format!("({c})"))
                .collect::<Vec<_>>()
                .join(" ")
        );
        println!("H       {} (order {})", v.subgroup.set(), v.subgroup.card());
        println!("S_0     {}", v.s_empty);
        println!("T_0     {}", v.t_empty);
        println!(
            "checks  self-certified: {}; |S+T| from witnesses: {} = |S|+|T|-1",
            v.recheck(&s, &t),
            v.checks.reconstructed_sum
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_orders(spec: &str) -> Result<(u64, u64), (u8, String)> {
    let body = spec.replace("..=", "..");
    let mut it = body.splitn(2, "..");
    let lo = it
        .next()
        .and_then(|x| x.trim().parse::<u64>().ok())
        .ok_or_else(|| (2u8, format!("bad order range {spec:?}")))?;
    let hi = it
        .next()
        .and_then(|x| x.trim().parse::<u64>().ok())
        .ok_or_else(|| (2u8, format!("bad order range {spec:?}")))?;
    if lo < 2 || hi < lo {
        return Err((2, format!("bad order range {spec:?}")));
    }
    Ok((lo, hi))
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    theorem: &str,
    group_specs: &[String],
    orders: Option<&str>,
    workers: usize,
    cap: u64,
    json_path: Option<PathBuf>,
    csv_path: Option<PathBuf>,
    cache_dir: Option<PathBuf>,
    verify_cache: bool,
) -> CmdResult {
    let id: TheoremId = theorem.parse().map_err(fail)?;
    let mut groups = Vec::new();
    if let Some(spec) = orders {
        let (lo, hi) = parse_orders(spec)?;
        if hi > cap {
            return Err(fail(Error::OrderCapExceeded {
                order: hi,
                cap,
            }));
        }
        groups.extend(
            enumerate_group_types(hi, cap)
                .map_err(fail)?
                .into_iter()
                .filter(|g| g.order() as u64 >= lo),
        );
    }
    for spec in group_specs {
        groups.push(parse_group(spec, cap)?);
    }
    if groups.is_empty() {
        return Err((2, "no groups given; use --group or --orders".into()));
    }
    let opts = SweepOptions {
        workers,
        order_cap: cap,
        ..Default::default()
    };

    let cache = match cache_dir {
        Some(dir) => Some(Cache::open(&dir).map_err(|e| (2u8, format!("cache: {e}")))?),
        None => None,
    };
    let key = content_key(&[
        VERSION,
        "sweep",
        id.name(),
        &groups
            .iter()
            .map(|g| g.spec_string())
            .collect::<Vec<_>>()
            .join(","),
        &format!("cap={cap}"),
    ]);

    let mut cached_hit = false;
    let report = match cache.as_ref().and_then(|c| c.lookup(key)) {
        Some(cached) if !verify_cache => {
            cached_hit = true;
            cached
        }
        Some(cached) => {
            let fresh = verify::sweep(id, &groups, &opts).map_err(fail)?;
            if !fresh.eq_modulo_timing(&cached) {
                return Err((2, "cache verification failed: cached report differs".into()));
            }
            println!("cache verified: recomputation matches the stored report");
            fresh
        }
        None => {
            let fresh = verify::sweep(id, &groups, &opts).map_err(fail)?;
            if let Some(c) = &cache {
                c.store(key, &fresh)
                    .map_err(|e| (2u8, format!("cache write: {e}")))?;
            }
            fresh
        }
    };

    if let Some(path) = &json_path {
        std::fs::write(path, report.to_json()).map_err(|e| (2u8, format!("write json: {e}")))?;
    }
    if let Some(path) = &csv_path {
        std::fs::write(path, report.to_csv()).map_err(|e| (2u8, format!("write csv: {e}")))?;
    }
    println!(
        "theorem {}  groups {}  instances {}  verified {}  counterexamples {}{}",
        report.theorem,
        report.groups.join(","),
        report.hypothesis_count,
        report.verified_count,
        report.counterexamples.len(),
        if cached_hit { "  (cached)" } else { "" }
    );
    for note in &report.notes {
        println!("note: {note}");
    }
    for cex in report.counterexamples.iter().take(10) {
        println!(
            "counterexample: group {} S={} T={} ({})",
            cex.group, cex.s, cex.t, cex.detail
        );
    }
    if report.counterexamples.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn parse_vertex_set(lit: &str, n: u32) -> Result<u64, (u8, String)> {
    let inner = lit
        .trim()
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| (2u8, format!("vertex set literal must be braced, got {lit:?}")))?;
    let mut bits = 0u64;
    for item in inner.split(',') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let v: u32 = item
            .parse()
            .map_err(|_| (2u8, format!("bad vertex {item:?}")))?;
        if v >= n {
            return Err((3, format!("vertex {v} out of range (graph has {n})")));
        }
        bits |= 1u64 << v;
    }
    Ok(bits)
}

fn cmd_graph_sipg(
    file: Option<PathBuf>,
    random: Option<usize>,
    seed: u64,
    density: u32,
    x: &str,
    json: bool,
) -> CmdResult {
    let d: Digraph = match (file, random) {
        (Some(path), None) => {
            let text =
                std::fs::read_to_string(&path).map_err(|e| (2u8, format!("read graph: {e}")))?;
            Digraph::from_text(&text).map_err(fail)?
        }
        (None, Some(n)) => graph::seeded_digraph(n, density, seed).map_err(fail)?,
        _ => return Err((2, "give exactly one of --file or --random".into())),
    };
    let x_mask = parse_vertex_set(x, d.vertex_count())?;
    let kappa = graph::graph_kappa1(&d);
    let matching = graph::sipg_matching(&d, x_mask).map_err(fail)?;
    let valid = graph::validate_matching(&d, x_mask, &matching);
    if json {
        let out = serde_json::json!({
            "schema_version": 1,
            "vertices": d.vertex_count(),
            "kappa_1": kappa,
            "x": x,
            "pairs": matching.pairs,
            "validated": valid,
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("vertices {}  kappa_1 {:?}", d.vertex_count(), kappa);
        for (c, b) in &matching.pairs {
            println!("{c} -> {b}");
        }
        println!("validated: {valid}");
    }
    if valid {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_lemma_check(
    lemma: &str,
    group: &str,
    set_lits: &[String],
    subgroup: Option<String>,
    element: Option<u32>,
    k: Option<u32>,
    cap: u64,
    json: bool,
) -> CmdResult {
    let id: TheoremId = lemma.parse().map_err(fail)?;
    let g = parse_group(group, cap)?;
    let mut sets = Vec::new();
    for lit in set_lits {
        sets.push(parse_set(&g, lit)?);
    }
    let mut inst = LemmaInstance::new(g.clone(), sets);
    if let Some(lit) = subgroup {
        let set = parse_set(&g, &lit)?;
        inst.subgroup = Some(Subgroup::try_from_set(set).map_err(fail)?);
    }
    inst.element = element;
    inst.k = k;
    let rep = verify::check_lemma(id, &inst).map_err(fail)?;
    let (word, code) = match &rep.outcome {
        CheckOutcome::Verified => ("verified", 0u8),
        CheckOutcome::NotApplicable => ("hypotheses not met (vacuous)", 0),
        CheckOutcome::Violated(_) => ("VIOLATED", 1),
    };
    if json {
        let out = serde_json::json!({
            "schema_version": 1,
            "lemma": id.name(),
            "group": g.spec_string(),
            "outcome": word,
            "detail": match &rep.outcome {
                CheckOutcome::Violated(d) => Some(d.clone()),
                _ => None,
            },
            "notes": rep.notes,
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("{}: {word}", id.name());
        if let CheckOutcome::Violated(d) = &rep.outcome {
            println!("detail: {d}");
        }
        for note in &rep.notes {
            println!("note: {note}");
        }
    }
    Ok(ExitCode::from(code))
}
