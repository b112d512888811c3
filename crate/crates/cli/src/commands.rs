use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use plexus_core::array::{Array, IndexSet};
use plexus_core::evaluator::order_from_ids;
use plexus_core::rewrite::{enumerate_compositions, multiway, semantic_confluence, verdict_of, CompositionParams, Motif, SemanticVerdict, Variant};
use plexus_core::ternary::{
    biunit_pair_by_fish, biunit_pair_search, check_isotropy_biinvariance, close_under_fish, constellation, cyclic_group, fish, fish_units_check,
    flat_fish_equiv, heapoid_check, partial_identity, semiheap_law_arrays, tridentity, Action, ArrayCounterexample, ArrayLawVerdict, FishVariant,
    HeapoidReport, TableVerdict, TernaryTable, CARRIER_CAP,
};
use plexus_core::{evaluate, Semiring};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};

use crate::error::CliError;
use crate::input::{self, array_json, diagram_or_standard, load_array_file, load_bindings, load_diagram, parse_semiring, read_json, BindingsFile};
use crate::selftest;

#[derive(Debug, Parser)]
#[command(name = "plexus", version, about = "Semiring array algebra, plex diagrams, rewriting and fish-product laws")]
pub struct Cli {
    /// emit machine-readable JSON
    #[arg(long, global = true)]
    pub json: bool,
    /// seed for every random draw
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a diagram under array bindings
    Eval(EvalArgs),
    /// Explore all rewrites of a host diagram by a motif
    Rewrite(RewriteArgs),
    /// Count compositions of equal-order edges up to isomorphism
    Enumerate(EnumerateArgs),
    /// Fish product of three 3-arrays
    Fish(FishArgs),
    /// Run a law suite
    Laws(LawsArgs),
    /// Graphviz output for a diagram or its multiway graph
    ExportDot(ExportDotArgs),
    /// Run the acceptance suite
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// diagram file, or a workspace file
    pub diagram: PathBuf,
    /// edge arrays for a plain diagram file
    #[arg(long)]
    pub bindings: Option<PathBuf>,
    /// which workspace diagram to evaluate
    #[arg(long = "diagram")]
    pub name: Option<String>,
    /// free vertex ids indexing the result, comma separated
    #[arg(long, value_delimiter = ',')]
    pub order: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct RewriteArgs {
    /// host diagram file or standard name (zee, long_fish, chain(5), ...)
    pub host: String,
    /// motif diagram file or standard name
    #[arg(long)]
    pub motif: String,
    /// index set size for standard diagrams
    #[arg(long, default_value_t = 2)]
    pub size: usize,
    /// also check every rewrite sequence numerically over this semiring
    #[arg(long)]
    pub semantic: Option<String>,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    /// append the multiway graph in DOT
    #[arg(long)]
    pub dot: bool,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long, default_value_t = 3)]
    pub edges: usize,
    #[arg(long, default_value_t = 3)]
    pub order: usize,
    #[arg(long, default_value_t = 3)]
    pub free: usize,
    /// default, strict, leaf or loose
    #[arg(long, default_value = "default")]
    pub variant: String,
}

#[derive(Debug, Args)]
pub struct FishArgs {
    pub a: PathBuf,
    pub b: PathBuf,
    pub c: PathBuf,
    /// IJK, JIK, KIJ, IKJ, JKI or KJI
    #[arg(long, default_value = "IJK")]
    pub variant: String,
    #[arg(long)]
    pub twist: bool,
    /// semiring for files that do not declare one
    #[arg(long)]
    pub semiring: Option<String>,
}

#[derive(Debug, Args)]
pub struct LawsArgs {
    /// semiheap, heap, units, biunit, flatfish, isotropy or heapoid
    #[arg(long)]
    pub suite: String,
    #[arg(long)]
    pub semiring: Option<String>,
    /// index set sizes i,j,k
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long)]
    pub variant: Option<String>,
    #[arg(long)]
    pub twist: bool,
    /// for the heap suite: group:N, vector:M,D, bijection:N or relation:A,B
    #[arg(long)]
    pub table: Option<String>,
}

#[derive(Debug, Args)]
pub struct ExportDotArgs {
    /// diagram file or standard name
    pub diagram: String,
    #[arg(long, default_value_t = 2)]
    pub size: usize,
    /// export the multiway graph under this motif instead
    #[arg(long)]
    pub motif: Option<String>,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// run only these criteria
    #[arg(long, value_delimiter = ',')]
    pub only: Option<Vec<u8>>,
    /// include elapsed times (output is then not reproducible)
    #[arg(long)]
    pub timings: bool,
}

/// A finished command: exit code plus both renderings.
#[derive(Debug, Clone)]
pub struct Report {
    pub code: i32,
    pub text: String,
    pub json: Json,
}

impl Report {
    fn pass(text: String, json: Json) -> Self {
        Self { code: 0, text, json }
    }

    fn verdict(ok: bool, text: String, json: Json) -> Self {
        Self {
            code: if ok { 0 } else { 1 },
            text,
            json,
        }
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    match &cli.command {
        Command::Eval(a) => eval(a),
        Command::Rewrite(a) => rewrite(a, &mut rng),
        Command::Enumerate(a) => enumerate(a),
        Command::Fish(a) => fish_cmd(a),
        Command::Laws(a) => laws(a, &mut rng),
        Command::ExportDot(a) => export_dot(a),
        Command::Selftest(a) => selftest_cmd(a, cli.seed),
    }
}

fn eval(args: &EvalArgs) -> Result<Report, CliError> {
    let path = args.diagram.display().to_string();
    let text = input::read_text(&args.diagram)?;
    let raw: Json = input::parse_json(&path, &text)?;
    let (d, b) = if raw.get("diagrams").is_some() {
        let ws = input::load_workspace_text(&path, &text)?;
        let name = match &args.name {
            Some(n) => n.clone(),
            None if ws.diagrams.len() == 1 => ws.diagrams.keys().next().cloned().unwrap_or_default(),
            None => return Err(CliError::argument("--diagram", "workspace has several diagrams; name one")),
        };
        let d = ws
            .diagrams
            .get(&name)
            .cloned()
            .ok_or_else(|| CliError::new(crate::error::ErrorCode::BadReference, "--diagram", format!("no diagram named `{name}`")))?;
        let b = match &args.bindings {
            Some(p) => load_bindings(&d, &read_json::<BindingsFile>(p)?, &format!("{}:$", p.display()))?,
            None => ws
                .bindings
                .get(&name)
                .cloned()
                .ok_or_else(|| CliError::new(crate::error::ErrorCode::BadReference, format!("$.bindings.{name}"), "no bindings for this diagram"))?,
        };
        (d, b)
    } else {
        let json: plexus_core::diagram::DiagramJson = input::parse_json(&path, &text)?;
        let d = load_diagram(&json, &HashMap::new(), "$")?;
        let p = args.bindings.as_ref().ok_or_else(|| CliError::argument("--bindings", "a plain diagram file needs --bindings"))?;
        let b = load_bindings(&d, &read_json::<BindingsFile>(p)?, &format!("{}:$", p.display()))?;
        (d, b)
    };
    let order = match &args.order {
        Some(ids) => {
            let ids: Vec<&str> = ids.iter().map(String::as_str).collect();
            Some(order_from_ids(&d, &ids).map_err(|e| CliError::from_eval("--order", e))?)
        }
        None => None,
    };
    let result = evaluate(&d, &b, order.as_deref()).map_err(|e| CliError::from_eval("$", e))?;
    let j = array_json(&result);
    Ok(Report::pass(pretty(&j), j))
}

fn motif_from(arg: &str, size: usize) -> Result<Motif, CliError> {
    let d = diagram_or_standard(arg, size)?;
    Motif::from_diagram(d).map_err(|e| CliError::from_rewrite("--motif", e))
}

fn rewrite(args: &RewriteArgs, rng: &mut ChaCha8Rng) -> Result<Report, CliError> {
    let host = diagram_or_standard(&args.host, args.size)?;
    let motif = motif_from(&args.motif, args.size)?;
    let g = multiway(&host, &motif).map_err(|e| CliError::from_rewrite("$", e))?;
    let v = verdict_of(&g);
    let mut labels: Vec<&String> = g.terminal_states().iter().flat_map(|&k| g.states[k].labels.iter()).collect();
    labels.sort();
    let mut text = String::new();
    let _ = writeln!(text, "initial matches: {}", v.initial_matches);
    let _ = writeln!(text, "states: {}", v.states);
    let _ = writeln!(text, "transitions: {}", g.transitions.len());
    let _ = writeln!(text, "terminals: {}", v.terminals);
    let _ = writeln!(text, "terminal labels: {}", labels.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(" "));
    let _ = writeln!(
        text,
        "confluent: {}, regular: {}, overlapping: {}, concurrent: {}",
        v.confluent, v.regular, v.overlapping, v.concurrent
    );
    let mut j = json!({
        "initial_matches": v.initial_matches,
        "states": v.states,
        "transitions": g.transitions.iter().map(|t| json!({"from": t.from, "to": t.to, "label": t.label})).collect::<Vec<_>>(),
        "terminals": v.terminals,
        "terminal_labels": labels,
        "confluent": v.confluent,
        "regular": v.regular,
        "overlapping": v.overlapping,
        "concurrent": v.concurrent,
    });
    let mut ok = true;
    if let Some(sr) = &args.semantic {
        let s = parse_semiring(sr, "--semantic")?;
        let verdict = semantic_confluence(&host, &motif, s, args.trials, 0, rng).map_err(|e| CliError::from_rewrite("--semantic", e))?;
        match &verdict {
            SemanticVerdict::Pass { trials, sequences } => {
                let _ = writeln!(text, "semantic: pass ({trials} trials, {sequences} sequences)");
                j["semantic"] = json!({"pass": true, "trials": trials, "sequences": sequences});
            }
            SemanticVerdict::Counterexample {
                trial,
                sequence,
                expected,
                found,
            } => {
                ok = false;
                let _ = writeln!(text, "semantic: FAIL in trial {trial} along {}", sequence.join(" "));
                j["semantic"] = json!({
                    "pass": false,
                    "trial": trial,
                    "sequence": sequence,
                    "expected": array_json(expected),
                    "found": array_json(found),
                });
            }
        }
    }
    if args.dot {
        text.push_str(&g.to_dot());
        j["dot"] = json!(g.to_dot());
    }
    Ok(Report::verdict(ok, text, j))
}

fn enumerate(args: &EnumerateArgs) -> Result<Report, CliError> {
    let variant: Variant = args.variant.parse().map_err(|e: String| CliError::argument("--variant", e))?;
    let params = CompositionParams {
        edges: args.edges,
        order: args.order,
        free: args.free,
        variant,
    };
    let set = IndexSet::new("I", 2).map_err(|e| CliError::from_array("--size", e))?;
    let c = enumerate_compositions(&params, &set);
    let mut text = String::new();
    for (k, cert) in c.certificates.iter().enumerate() {
        let mark = if c.symmetric.contains(&k) { " *" } else { "" };
        let _ = writeln!(text, "{k:>3}  {cert}{mark}");
    }
    let _ = writeln!(text, "count: {}, symmetric: {}", c.diagrams.len(), c.symmetric.len());
    let j = json!({
        "variant": variant.to_string(),
        "count": c.diagrams.len(),
        "symmetric": c.symmetric.len(),
        "certificates": c.certificates.iter().map(|x| x.as_str()).collect::<Vec<_>>(),
        "symmetric_positions": c.symmetric,
    });
    Ok(Report::pass(text, j))
}

fn parse_variant(text: Option<&str>, default: FishVariant, twist: bool) -> Result<FishVariant, CliError> {
    let v = match text {
        Some(t) => t.parse().map_err(|e| CliError::argument("--variant", e))?,
        None => default,
    };
    Ok(if twist { v.twisted() } else { v })
}

fn fish_cmd(args: &FishArgs) -> Result<Report, CliError> {
    let v = parse_variant(Some(&args.variant), FishVariant::IJK, args.twist)?;
    let s = args.semiring.as_deref().map(|t| parse_semiring(t, "--semiring")).transpose()?;
    let a = load_array_file(&args.a, s)?;
    let b = load_array_file(&args.b, s)?;
    let c = load_array_file(&args.c, s)?;
    let result = fish(&a, &b, &c, v).map_err(|e| CliError::from_ternary("$", e))?;
    let j = array_json(&result);
    Ok(Report::pass(pretty(&j), j))
}

fn sizes3(sizes: &Option<Vec<usize>>, default: [usize; 3]) -> Result<[usize; 3], CliError> {
    match sizes {
        None => Ok(default),
        Some(v) => <[usize; 3]>::try_from(v.as_slice()).map_err(|_| CliError::argument("--sizes", "expected three sizes i,j,k")),
    }
}

fn counterexample_json(c: &ArrayCounterexample) -> Json {
    json!({
        "law": c.law,
        "inputs": c.inputs.iter().map(array_json).collect::<Vec<_>>(),
        "left": array_json(&c.left),
        "right": array_json(&c.right),
    })
}

fn table_verdict_json(v: &TableVerdict) -> Json {
    match v {
        TableVerdict::Pass { checked } => json!({"pass": true, "checked": checked}),
        TableVerdict::Fail { law, elements } => json!({"pass": false, "law": law, "elements": elements}),
    }
}

fn parse_table(name: &str) -> Result<TernaryTable, CliError> {
    let bad = || CliError::argument("--table", format!("cannot read `{name}`"));
    let (kind, params) = name.split_once(':').ok_or_else(bad)?;
    let nums = params.split(',').map(|x| x.trim().parse::<usize>()).collect::<Result<Vec<_>, _>>().map_err(|_| bad())?;
    let table = match (kind, nums.as_slice()) {
        ("group", [n]) => TernaryTable::group_heap(&cyclic_group(*n)),
        ("vector", [m, d]) => TernaryTable::vector_heap(*m, *d),
        ("bijection", [n]) => TernaryTable::bijection_heap(*n),
        ("relation", [a, b]) => TernaryTable::relation_semiheap(*a, *b),
        _ => return Err(bad()),
    };
    table.map_err(|e| CliError::from_ternary("--table", e))
}

fn laws(args: &LawsArgs, rng: &mut ChaCha8Rng) -> Result<Report, CliError> {
    let semiring = args.semiring.as_deref().map(|t| parse_semiring(t, "--semiring")).transpose()?.unwrap_or(Semiring::Boolean);
    let ternary = |e| CliError::from_ternary("--suite", e);
    match args.suite.as_str() {
        "semiheap" => {
            let v = parse_variant(args.variant.as_deref(), FishVariant::IJK, args.twist)?;
            let sizes = sizes3(&args.sizes, [2, 2, 2])?;
            let verdict = semiheap_law_arrays(v, semiring, sizes, args.trials, 3, rng).map_err(ternary)?;
            Ok(array_law_report("semiheap", &format!("{v} over {semiring}, sizes {sizes:?}"), &verdict))
        }
        "flatfish" => {
            let v = parse_variant(args.variant.as_deref(), FishVariant::IJK, false)?;
            let sizes = sizes3(&args.sizes, [2, 2, 2])?;
            let axes = constellation(sizes).map_err(ternary)?;
            for trial in 0..args.trials {
                let [a, b, c] = [0, 1, 2].map(|_| Array::random(axes.clone(), semiring, 3, rng));
                if !flat_fish_equiv(&a, &b, &c, v).map_err(ternary)? {
                    let j = json!({"suite": "flatfish", "pass": false, "trial": trial, "inputs": [array_json(&a), array_json(&b), array_json(&c)]});
                    return Ok(Report::verdict(false, format!("flatfish: FAIL in trial {trial}\n"), j));
                }
            }
            let text = format!("flatfish: pass ({} trials, {v} over {semiring}, sizes {sizes:?})\n", args.trials);
            Ok(Report::pass(text, json!({"suite": "flatfish", "pass": true, "trials": args.trials})))
        }
        "units" => {
            let n = sizes3(&args.sizes, [2, 2, 2])?[0];
            let axes = constellation([n; 3]).map_err(ternary)?;
            let mut right_only = 0;
            for trial in 0..args.trials {
                let a = Array::random(axes.clone(), semiring, 3, rng);
                let v = fish_units_check(&a).map_err(ternary)?;
                if !v.passed() {
                    let j = json!({"suite": "units", "pass": false, "trial": trial, "att": v.att, "aut": v.aut, "atu": v.atu, "input": array_json(&a)});
                    return Ok(Report::verdict(false, format!("units: FAIL in trial {trial}: {v:?}\n"), j));
                }
                right_only += usize::from(!v.tta);
            }
            let text = format!(
                "units: pass ({} trials): (att) = (aut) = (atu) = a; (tta) ≠ a in {right_only}, so δ₃ is a right biunit\n",
                args.trials
            );
            Ok(Report::pass(text, json!({"suite": "units", "pass": true, "trials": args.trials, "tta_failures": right_only})))
        }
        "biunit" => {
            let v = parse_variant(args.variant.as_deref(), FishVariant::JKI, false)?;
            let sizes = sizes3(&args.sizes, [4, 2, 2])?;
            let axes = vec![
                IndexSet::new("I", sizes[0]).map_err(|e| CliError::from_array("--sizes", e))?,
                IndexSet::new("J", sizes[1]).map_err(|e| CliError::from_array("--sizes", e))?,
                IndexSet::new("K", sizes[2]).map_err(|e| CliError::from_array("--sizes", e))?,
            ];
            let pairs = biunit_pair_search(&axes, v).map_err(ternary)?;
            let mut ok = true;
            for (e, e2) in &pairs {
                ok &= biunit_pair_by_fish(e, e2, v).map_err(ternary)?;
            }
            let self_paired = pairs.iter().filter(|(e, e2)| e == e2).count();
            let text = format!(
                "biunit: {} pairs for {v} on sizes {sizes:?} ({self_paired} with e = e'); fish-level check {}\n",
                pairs.len(),
                if ok { "pass" } else { "FAIL" }
            );
            let j = json!({
                "suite": "biunit",
                "pass": ok,
                "pairs": pairs.iter().map(|(e, e2)| json!([array_json(e), array_json(e2)])).collect::<Vec<_>>(),
            });
            Ok(Report::verdict(ok, text, j))
        }
        "isotropy" => {
            let ns: Vec<usize> = match &args.sizes {
                Some(v) => v.clone(),
                None => vec![2, 3],
            };
            let mut text = String::new();
            let mut results = Vec::new();
            let mut ok = true;
            for n in ns {
                let v = check_isotropy_biinvariance(n, Action::Correct).map_err(ternary)?;
                ok &= v.passed();
                let _ = writeln!(text, "isotropy |A| = |B| = {n}: {v}");
                results.push(json!({"size": n, "verdict": table_verdict_json(&v)}));
            }
            Ok(Report::verdict(ok, text, json!({"suite": "isotropy", "pass": ok, "results": results})))
        }
        "heap" => {
            let tables: Vec<(String, TernaryTable)> = match &args.table {
                Some(name) => vec![(name.clone(), parse_table(name)?)],
                None => ["group:2", "group:3", "vector:3,1", "bijection:2", "bijection:3"]
                    .iter()
                    .map(|name| Ok((name.to_string(), parse_table(name)?)))
                    .collect::<Result<_, CliError>>()?,
            };
            let mut text = String::new();
            let mut results = Vec::new();
            let mut ok = true;
            for (name, t) in &tables {
                let v = t.check_heap();
                ok &= v.is_heap() && v.consistent();
                let _ = writeln!(
                    text,
                    "{name}: para-associative {}; malcev {}; semiheap {}; heap: {}",
                    v.para_associative,
                    v.malcev,
                    v.semiheap,
                    v.is_heap()
                );
                results.push(json!({
                    "table": name,
                    "para_associative": table_verdict_json(&v.para_associative),
                    "malcev": table_verdict_json(&v.malcev),
                    "semiheap": table_verdict_json(&v.semiheap),
                    "heap": v.is_heap(),
                    "biunits": t.find_biunits(),
                }));
            }
            Ok(Report::verdict(ok, text, json!({"suite": "heap", "pass": ok, "results": results})))
        }
        "heapoid" => heapoid_suite(args),
        other => Err(CliError::argument(
            "--suite",
            format!("unknown suite `{other}` (semiheap, heap, units, biunit, flatfish, isotropy, heapoid)"),
        )),
    }
}

fn array_law_report(suite: &str, what: &str, v: &ArrayLawVerdict) -> Report {
    match v {
        ArrayLawVerdict::Pass { checked } => Report::pass(
            format!("{suite}: pass ({checked} trials, {what})\n"),
            json!({"suite": suite, "pass": true, "trials": checked}),
        ),
        ArrayLawVerdict::Fail(c) => Report::verdict(
            false,
            format!("{suite}: FAIL ({what}): {}\n{}\n", c.law, pretty(&counterexample_json(c))),
            json!({"suite": suite, "pass": false, "counterexample": counterexample_json(c)}),
        ),
    }
}

fn heapoid_json(name: &str, r: &HeapoidReport) -> Json {
    json!({
        "carrier": name,
        "size": r.size,
        "semiheapoid": table_verdict_json(&r.semiheapoid),
        "heapoid": r.heapoid,
        "malcev": r.malcev,
        "fish_category": r.fish_category,
        "partners": r.partners,
    })
}

fn heapoid_suite(args: &LawsArgs) -> Result<Report, CliError> {
    let ternary = |e| CliError::from_ternary("--suite", e);
    let sizes = sizes3(&args.sizes, [4, 2, 2])?;
    let s = Semiring::Boolean;
    let mut carriers: Vec<(String, Vec<Array>, FishVariant)> = Vec::new();
    let axes = vec![
        IndexSet::new("I", sizes[0]).map_err(|e| CliError::from_array("--sizes", e))?,
        IndexSet::new("J", sizes[1]).map_err(|e| CliError::from_array("--sizes", e))?,
        IndexSet::new("K", sizes[2]).map_err(|e| CliError::from_array("--sizes", e))?,
    ];
    let perms: Vec<Array> = biunit_pair_search(&axes, FishVariant::JKI).map_err(ternary)?.into_iter().map(|(e, _)| e).collect();
    if !perms.is_empty() {
        carriers.push(("biunit arrays".into(), perms, FishVariant::JKI));
    }
    let n = IndexSet::new("N", sizes[1]).map_err(|e| CliError::from_array("--sizes", e))?;
    let t = tridentity(&n, s).map_err(ternary)?;
    let u = partial_identity(&n, s).map_err(ternary)?;
    carriers.push(("tridentity".into(), vec![t.clone()], FishVariant::IJK));
    let closure = close_under_fish(&[t, u], FishVariant::IJK, CARRIER_CAP).map_err(ternary)?;
    carriers.push(("closure of tridentity and partial identity".into(), closure, FishVariant::IJK));

    let mut text = String::new();
    let mut results = Vec::new();
    let mut ok = true;
    for (name, carrier, v) in &carriers {
        let r = heapoid_check(carrier, *v).map_err(ternary)?;
        ok &= r.semiheapoid.passed();
        let category = match r.fish_category {
            Some(b) => b.to_string(),
            None => "n/a".into(),
        };
        let _ = writeln!(
            text,
            "{name} ({} arrays, {v}): semiheapoid {}; heapoid {}; malcev {}; fish category {category}",
            r.size, r.semiheapoid, r.heapoid, r.malcev
        );
        results.push(heapoid_json(name, &r));
    }
    Ok(Report::verdict(ok, text, json!({"suite": "heapoid", "pass": ok, "results": results})))
}

fn export_dot(args: &ExportDotArgs) -> Result<Report, CliError> {
    let d = diagram_or_standard(&args.diagram, args.size)?;
    let dot = match &args.motif {
        None => d.to_dot(&graph_name(&args.diagram)),
        Some(m) => {
            let motif = motif_from(m, args.size)?;
            multiway(&d, &motif).map_err(|e| CliError::from_rewrite("$", e))?.to_dot()
        }
    };
    Ok(Report::pass(dot.clone(), json!({ "dot": dot })))
}

fn graph_name(arg: &str) -> String {
    let stem = Path::new(arg).file_stem().map(|s| s.to_string_lossy().to_string()).unwrap_or_else(|| arg.to_string());
    stem.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect()
}

fn selftest_cmd(args: &SelftestArgs, seed: u64) -> Result<Report, CliError> {
    let mut text = String::new();
    let mut outcomes = Vec::new();
    for c in selftest::criteria() {
        if args.only.as_ref().is_some_and(|only| !only.contains(&c.id)) {
            continue;
        }
        let o = selftest::run(&c, seed);
        let _ = writeln!(text, "{}", o.line(args.timings));
        outcomes.push(o);
    }
    let passed = outcomes.iter().filter(|o| o.ok()).count();
    let _ = writeln!(text, "{passed}/{} criteria passed", outcomes.len());
    let ok = passed == outcomes.len();
    let rows: Vec<Json> = outcomes
        .iter()
        .map(|o| {
            let mut row = json!({"id": o.id, "name": o.name, "pass": o.ok(), "detail": o.detail});
            if args.timings {
                row["elapsed_ms"] = json!(o.elapsed_ms);
                row["bound_ms"] = json!(o.bound_ms);
            }
            row
        })
        .collect();
    Ok(Report::verdict(ok, text, json!({"pass": ok, "criteria": rows})))
}

fn pretty(j: &Json) -> String {
    let mut s = serde_json::to_string_pretty(j).unwrap_or_default();
    s.push('\n');
    s
}

/// Parse arguments, run, print. Returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).unwrap_or_default());
            } else {
                print!("{}", report.text);
            }
            report.code
        }
        Err(e) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&json!({ "error": e })).unwrap_or_default());
            } else {
                eprintln!("error: {e}");
            }
            2
        }
    }
}
