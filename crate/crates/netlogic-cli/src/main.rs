//! Command-line front end: parse nets and formulas, route them to a
//! checking engine, explore state spaces, build gadget nets, classify
//! formulas, and decide arithmetic sentences.
//!
//! Exit codes: 0 the property holds, 1 it fails, 2 the check was
//! inconclusive, 3 and above for usage, parse, or engine errors.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use netlogic::engines::{
    check, explicit_fo, explicit_ml, mc_exists_fo, mc_fo_one_var, mc_fo_semilinear, mc_fo_ug,
    mc_ml_backward, mc_ml_forward, route, ug_eval_guarded, val_paml_forward, CheckVerdict,
    Query, RunConfig, Structure, Verdict,
};
use netlogic::gadgets::{
    build_budget_reduction, build_drown_net, build_drown_net_bounded, build_drown_net_rooted,
    build_lambda_augment, build_nonreach_gadget, build_pileup, build_qbf_net,
    build_reach_gadget, build_star_union_net, build_ug_gadget, build_union_net, GadgetFormula,
    GadgetInstance, Qbf, QbfExpr,
};
use netlogic::logic::{classify, parse_fo_sentence, parse_ml, FoFormula, MlFormula};
use netlogic::net::{parse_net, Marking, PetriNet};
use netlogic::presburger::{
    decide_with_budget, eliminate_with_budget, parse_presburger, PresError, PresFormula,
    DEFAULT_BUDGET,
};
use netlogic::statespace::{explore, is_bounded, transitive_closure, Boundedness, DEFAULT_CAP};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "netlogic", version, about = "Model checking on Petri net graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a formula against a net's reachability graph (or the full
    /// marking grid)
    Check(CheckArgs),
    /// Explore the reachability graph and report boundedness
    Explore(ExploreArgs),
    /// Build a net-plus-formula gadget and write its files
    Gadget(GadgetArgs),
    /// Report which syntactic fragments a formula falls into
    Classify(ClassifyArgs),
    /// Decide or simplify a linear-arithmetic formula
    Presburger(PresArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Graph {
    /// The reachability graph: only markings reachable from the initial one
    Urg,
    /// The unrestricted graph over all markings
    Ug,
}

#[derive(Args)]
struct CheckArgs {
    /// Net file
    net: PathBuf,
    /// Formula file (first-order or modal; detected by parsing)
    formula: PathBuf,
    /// Which graph the formula is interpreted on
    #[arg(long, value_enum, default_value = "urg")]
    structure: Graph,
    /// Node cap for explicit exploration and capped searches
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Force a specific engine instead of routing
    #[arg(long)]
    engine: Option<String>,
    /// Arithmetic description of the reachable set (file, over place names)
    #[arg(long)]
    reach_formula: Option<PathBuf>,
    /// Arithmetic description of `->*` (file, places unprimed = source,
    /// primed = target)
    #[arg(long)]
    star_formula: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct ExploreArgs {
    /// Net file
    net: PathBuf,
    /// Node cap for the exploration
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct GadgetArgs {
    #[command(subcommand)]
    which: GadgetCmd,
}

#[derive(Args)]
struct GadgetCommon {
    /// Directory the net, formula, and contract files are written to
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum GadgetCmd {
    /// Two-branch union: reach-set equality becomes a fixed sentence
    Union {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        common: GadgetCommon,
    },
    /// Union variant paired with the `->*`-only equality sentence
    StarUnion {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        common: GadgetCommon,
    },
    /// Add a 3-place token ring so every marking lies on a 3-cycle
    Lambda {
        net: PathBuf,
        #[command(flatten)]
        common: GadgetCommon,
    },
    /// Compile a quantified boolean formula, e.g. "E p1 A p2 (p1 | !p2)"
    Qbf {
        formula: String,
        #[command(flatten)]
        common: GadgetCommon,
    },
    /// Marking-to-marking reachability as a modal check
    Reach {
        net: PathBuf,
        /// Start marking, comma-separated token counts
        #[arg(long)]
        m1: String,
        /// Target marking, comma-separated token counts
        #[arg(long)]
        m2: String,
        #[command(flatten)]
        common: GadgetCommon,
    },
    /// Zero-marking unreachability as validity of `dia top`
    Nonreach {
        net: PathBuf,
        #[command(flatten)]
        common: GadgetCommon,
    },
    /// Zero-marking reachability as a one-variable sentence over a budget
    /// place
    Budget {
        net: PathBuf,
        #[command(flatten)]
        common: GadgetCommon,
    },
    /// Flood the reach set while keeping an anchored copy of the graph
    Drown {
        net: PathBuf,
        /// Draw scrambler tokens from a finite reservoir of this size
        #[arg(long)]
        reservoir: Option<u64>,
        /// Make the initial marking structurally identifiable
        #[arg(long)]
        rooted: bool,
        #[command(flatten)]
        common: GadgetCommon,
    },
    /// Doubly-rooted embedding into the unrestricted marking grid
    Ug {
        net: PathBuf,
        #[command(flatten)]
        common: GadgetCommon,
    },
    /// Star union, flooded, then doubly rooted; equality over the full grid
    Pileup {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        common: GadgetCommon,
    },
}

#[derive(Args)]
struct ClassifyArgs {
    /// Formula file (first-order or modal)
    formula: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct PresArgs {
    /// Formula file
    formula: PathBuf,
    /// Print a quantifier-free equivalent instead of deciding
    #[arg(long)]
    eliminate: bool,
    /// Work budget for quantifier elimination
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(3);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.cmd {
        Cmd::Check(a) => cmd_check(a),
        Cmd::Explore(a) => cmd_explore(a),
        Cmd::Gadget(a) => cmd_gadget(a),
        Cmd::Classify(a) => cmd_classify(a),
        Cmd::Presburger(a) => cmd_presburger(a),
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_net(path: &Path) -> Result<PetriNet, String> {
    parse_net(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

/// A first-order sentence or a modal formula, whichever parses.
fn load_query(path: &Path) -> Result<Query, String> {
    let text = read(path)?;
    let fo_err = match parse_fo_sentence(&text) {
        Ok(f) => return Ok(Query::Fo(f)),
        Err(e) => e,
    };
    let ml_err = match parse_ml(&text) {
        Ok(f) => return Ok(Query::Ml(f)),
        Err(e) => e,
    };
    Err(format!(
        "{}: not a first-order sentence ({fo_err}) and not a modal formula ({ml_err})",
        path.display()
    ))
}

fn load_pres(path: &Path) -> Result<PresFormula, String> {
    parse_presburger(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn exit_code(v: Verdict) -> u8 {
    match v {
        Verdict::Holds => 0,
        Verdict::Fails => 1,
        Verdict::Inconclusive => 2,
    }
}

fn cmd_check(a: CheckArgs) -> Result<u8, String> {
    if a.format == Format::Dot {
        return Err("dot output only applies to `explore`".to_string());
    }
    let net = load_net(&a.net)?;
    let q = load_query(&a.formula)?;
    let structure = match a.structure {
        Graph::Urg => Structure::Urg,
        Graph::Ug => Structure::Ug,
    };
    let cfg = RunConfig {
        cap: a.cap,
        node_budget: a.cap,
        reach: a.reach_formula.as_deref().map(load_pres).transpose()?,
        star: a.star_formula.as_deref().map(load_pres).transpose()?,
    };
    let (verdict, routed) = match &a.engine {
        Some(name) => (run_engine(name, &net, &q, &cfg)?, None),
        None => {
            let r = route(&net, &q, structure, &cfg);
            let v = check(&net, &q, structure, &cfg).map_err(|e| e.to_string())?;
            (v, r)
        }
    };
    match a.format {
        Format::Text => {
            if let Some(r) = &routed {
                println!("route {}: {}", r.engine.as_str(), r.why);
            }
            println!("{}", verdict.line());
        }
        Format::Json => {
            let out = json!({
                "verdict": verdict_str(verdict.verdict),
                "engine": verdict.engine,
                "reason": verdict.reason,
                "witness": verdict.witness,
                "truncated": verdict.truncated,
                "route": routed.map(|r| json!({
                    "engine": r.engine.as_str(),
                    "why": r.why,
                })),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Dot => unreachable!(),
    }
    Ok(exit_code(verdict.verdict))
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
        Verdict::Inconclusive => "inconclusive",
    }
}

/// Dispatches an explicitly requested engine, bypassing the router.
fn run_engine(
    name: &str,
    net: &PetriNet,
    q: &Query,
    cfg: &RunConfig,
) -> Result<CheckVerdict, String> {
    let need_fo = || -> Result<&FoFormula, String> {
        match q {
            Query::Fo(f) => Ok(f),
            Query::Ml(_) => Err(format!("engine {name} takes a first-order formula")),
        }
    };
    let need_ml = || -> Result<&MlFormula, String> {
        match q {
            Query::Ml(f) => Ok(f),
            Query::Fo(_) => Err(format!("engine {name} takes a modal formula")),
        }
    };
    let explicit = |f: &dyn Fn(&netlogic::statespace::ReachGraph) -> Result<CheckVerdict, String>|
     -> Result<CheckVerdict, String> {
        let g = explore(net, cfg.cap);
        if !g.complete {
            return Ok(CheckVerdict::inconclusive(
                "explicit",
                "cap-exceeded while building the graph",
            ));
        }
        f(&g)
    };
    let out = match name {
        "explicit_fo" => {
            let f = need_fo()?;
            explicit(&|g| {
                let c = transitive_closure(g).map_err(|e| e.to_string())?;
                explicit_fo(g, &c, f).map_err(|e| e.to_string())
            })?
        }
        "explicit_ml" => {
            let f = need_ml()?;
            explicit(&|g| explicit_ml(g, net, f, g.initial).map_err(|e| e.to_string()))?
        }
        "mc_ml_forward" => mc_ml_forward(net, need_ml()?).map_err(|e| e.to_string())?,
        "mc_ml_backward" => {
            mc_ml_backward(net, need_ml()?, cfg.cap).map_err(|e| e.to_string())?
        }
        "val_paml_forward" => {
            val_paml_forward(net, need_ml()?, cfg.cap).map_err(|e| e.to_string())?
        }
        "mc_exists_fo" => mc_exists_fo(net, need_fo()?, cfg.cap).map_err(|e| e.to_string())?,
        "mc_fo_one_var" => {
            mc_fo_one_var(net, need_fo()?, cfg.cap).map_err(|e| e.to_string())?
        }
        "mc_fo_ug" => mc_fo_ug(net, need_fo()?).map_err(|e| e.to_string())?,
        "mc_fo_semilinear" => {
            let reach = cfg
                .reach
                .as_ref()
                .ok_or("mc_fo_semilinear needs --reach-formula")?;
            mc_fo_semilinear(net, need_fo()?, reach, cfg.star.as_ref())
                .map_err(|e| e.to_string())?
        }
        "ug_eval_guarded" => {
            ug_eval_guarded(net, need_fo()?, net.initial(), cfg.cap)
                .map_err(|e| e.to_string())?
        }
        other => {
            return Err(format!(
                "unknown engine `{other}`; known: explicit_fo explicit_ml mc_ml_forward \
                 mc_ml_backward val_paml_forward mc_exists_fo mc_fo_one_var mc_fo_ug \
                 mc_fo_semilinear ug_eval_guarded"
            ))
        }
    };
    Ok(out)
}

fn marking_json(m: &Marking) -> Value {
    Value::Array(
        m.0.iter()
            .map(|k| match u64::try_from(k) {
                Ok(n) => json!(n),
                Err(_) => json!(k.to_string()),
            })
            .collect(),
    )
}

fn boundedness_json(b: &Boundedness) -> Value {
    match b {
        Boundedness::Bounded(n) => json!({ "bounded": true, "nodes": n }),
        Boundedness::Unbounded => json!({ "bounded": false }),
        Boundedness::Inconclusive => json!({ "bounded": Value::Null }),
    }
}

fn cmd_explore(a: ExploreArgs) -> Result<u8, String> {
    let net = load_net(&a.net)?;
    let g = explore(&net, a.cap);
    let b = is_bounded(&net, a.cap);
    match a.format {
        Format::Text => {
            println!(
                "{}: {} nodes, {} edges, {}",
                net.name,
                g.len(),
                g.edges.iter().map(Vec::len).sum::<usize>(),
                if g.complete { "complete" } else { "truncated" }
            );
            println!(
                "boundedness: {}",
                match b {
                    Boundedness::Bounded(n) => format!("bounded ({n} nodes)"),
                    Boundedness::Unbounded => "unbounded".to_string(),
                    Boundedness::Inconclusive => "inconclusive".to_string(),
                }
            );
        }
        Format::Dot => {
            println!("// complete: {}, boundedness: {b:?}", g.complete);
            print!("{}", g.to_dot(&net.name));
        }
        Format::Json => {
            let out = json!({
                "net": net.name,
                "places": net.places(),
                "nodes": g.nodes.iter().map(marking_json).collect::<Vec<_>>(),
                "edges": g.edges,
                "initial": g.initial,
                "complete": g.complete,
                "boundedness": boundedness_json(&b),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
    }
    Ok(0)
}

fn parse_marking(s: &str) -> Result<Marking, String> {
    let counts: Vec<u64> = s
        .split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|e| format!("marking `{s}`: {e}")))
        .collect::<Result<_, _>>()?;
    Ok(Marking::from_u64s(&counts))
}

fn write_instance(g: &GadgetInstance, kind: &str, out: &Path) -> Result<u8, String> {
    g.validate().map_err(|e| e.to_string())?;
    std::fs::create_dir_all(out).map_err(|e| format!("{}: {e}", out.display()))?;
    let base = out.join(&g.net.name);
    let wr = |ext: &str, text: String| -> Result<PathBuf, String> {
        let p = base.with_extension(ext);
        std::fs::write(&p, text).map_err(|e| format!("{}: {e}", p.display()))?;
        Ok(p)
    };
    let net_file = wr("net", g.net.serialize())?;
    let (formula_kind, formula_text) = match &g.formula {
        GadgetFormula::Fo(f) => ("fo", f.to_string()),
        GadgetFormula::Ml(f) => ("ml", f.to_string()),
    };
    let formula_file = wr("formula", format!("{formula_text}\n"))?;
    let contract = json!({
        "gadget": kind,
        "net_file": net_file.file_name().unwrap().to_str(),
        "formula_file": formula_file.file_name().unwrap().to_str(),
        "formula_kind": formula_kind,
        "contract": g.contract,
        "place_map": g.place_map,
    });
    let json_file = wr("json", serde_json::to_string_pretty(&contract).unwrap() + "\n")?;
    for p in [&net_file, &formula_file, &json_file] {
        println!("wrote {}", p.display());
    }
    Ok(0)
}

fn cmd_gadget(a: GadgetArgs) -> Result<u8, String> {
    use GadgetCmd::*;
    let err = |e: netlogic::gadgets::GadgetError| e.to_string();
    match a.which {
        Union { a, b, common } => {
            let g = build_union_net(&load_net(&a)?, &load_net(&b)?).map_err(err)?;
            write_instance(&g, "union", &common.out)
        }
        StarUnion { a, b, common } => {
            let g = build_star_union_net(&load_net(&a)?, &load_net(&b)?).map_err(err)?;
            write_instance(&g, "star-union", &common.out)
        }
        Lambda { net, common } => {
            let aug = build_lambda_augment(&load_net(&net)?).map_err(err)?;
            let p = common.out.join(format!("{}_ring.net", aug.name));
            std::fs::write(&p, aug.serialize()).map_err(|e| format!("{}: {e}", p.display()))?;
            println!("wrote {}", p.display());
            Ok(0)
        }
        Qbf { formula, common } => {
            let q = parse_qbf(&formula)?;
            let g = build_qbf_net(&q).map_err(err)?;
            write_instance(&g, "qbf", &common.out)
        }
        Reach { net, m1, m2, common } => {
            let n = load_net(&net)?;
            let g = build_reach_gadget(&n, &parse_marking(&m1)?, &parse_marking(&m2)?)
                .map_err(err)?;
            write_instance(&g, "reach", &common.out)
        }
        Nonreach { net, common } => {
            let g = build_nonreach_gadget(&load_net(&net)?).map_err(err)?;
            write_instance(&g, "nonreach", &common.out)
        }
        Budget { net, common } => {
            let (_, g) = build_budget_reduction(&load_net(&net)?).map_err(err)?;
            write_instance(&g, "budget", &common.out)
        }
        Drown { net, reservoir, rooted, common } => {
            let n = load_net(&net)?;
            let g = match (reservoir, rooted) {
                (Some(k), false) => build_drown_net_bounded(&n, k),
                (None, false) => build_drown_net(&n),
                (None, true) => build_drown_net_rooted(&n),
                (Some(_), true) => {
                    return Err("--reservoir and --rooted are mutually exclusive".to_string())
                }
            }
            .map_err(err)?;
            write_instance(&g, "drown", &common.out)
        }
        Ug { net, common } => {
            let g = build_ug_gadget(&load_net(&net)?).map_err(err)?;
            write_instance(&g, "ug", &common.out)
        }
        Pileup { a, b, common } => {
            let g = build_pileup(&load_net(&a)?, &load_net(&b)?).map_err(err)?;
            write_instance(&g, "pileup", &common.out)
        }
    }
}

/// Parses "E p1 A p2 ... (matrix)" into a quantified boolean formula: a
/// strictly alternating prefix starting with E over p1..p2n in order, then
/// a boolean expression over those variables with `& | !` and parentheses.
fn parse_qbf(text: &str) -> Result<Qbf, String> {
    let mut toks = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' => {
                chars.next();
            }
            '(' | ')' | '&' | '|' | '!' => {
                toks.push(c.to_string());
                chars.next();
            }
            c if c.is_ascii_alphanumeric() => {
                let mut w = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() {
                        w.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(w);
            }
            other => return Err(format!("unexpected character `{other}`")),
        }
    }
    let mut pos = 0usize;
    let mut vars = 0usize;
    while pos + 1 < toks.len() && (toks[pos] == "E" || toks[pos] == "A") {
        let want = if vars % 2 == 0 { "E" } else { "A" };
        if toks[pos] != want {
            return Err(format!("quantifier {} must be `{want}`", vars + 1));
        }
        let expect = format!("p{}", vars + 1);
        if toks[pos + 1] != expect {
            return Err(format!("variable {} must be `{expect}`", vars + 1));
        }
        vars += 1;
        pos += 2;
    }
    if vars == 0 {
        return Err("expected a quantifier prefix like `E p1 A p2`".to_string());
    }
    let (matrix, rest) = parse_qbf_or(&toks, pos, vars)?;
    if rest != toks.len() {
        return Err(format!("trailing input after the matrix: `{}`", toks[rest..].join(" ")));
    }
    Qbf::new(vars, matrix).map_err(|e| e.to_string())
}

fn parse_qbf_or(toks: &[String], mut pos: usize, vars: usize) -> Result<(QbfExpr, usize), String> {
    let (mut lhs, p) = parse_qbf_and(toks, pos, vars)?;
    pos = p;
    while pos < toks.len() && toks[pos] == "|" {
        let (rhs, p) = parse_qbf_and(toks, pos + 1, vars)?;
        lhs = QbfExpr::Or(Box::new(lhs), Box::new(rhs));
        pos = p;
    }
    Ok((lhs, pos))
}

fn parse_qbf_and(toks: &[String], mut pos: usize, vars: usize) -> Result<(QbfExpr, usize), String> {
    let (mut lhs, p) = parse_qbf_atom(toks, pos, vars)?;
    pos = p;
    while pos < toks.len() && toks[pos] == "&" {
        let (rhs, p) = parse_qbf_atom(toks, pos + 1, vars)?;
        lhs = QbfExpr::And(Box::new(lhs), Box::new(rhs));
        pos = p;
    }
    Ok((lhs, pos))
}

fn parse_qbf_atom(toks: &[String], pos: usize, vars: usize) -> Result<(QbfExpr, usize), String> {
    match toks.get(pos).map(String::as_str) {
        Some("!") => {
            let (e, p) = parse_qbf_atom(toks, pos + 1, vars)?;
            Ok((QbfExpr::Not(Box::new(e)), p))
        }
        Some("(") => {
            let (e, p) = parse_qbf_or(toks, pos + 1, vars)?;
            if toks.get(p).map(String::as_str) != Some(")") {
                return Err("missing `)`".to_string());
            }
            Ok((e, p + 1))
        }
        Some(w) if w.starts_with('p') => {
            let i: usize = w[1..].parse().map_err(|_| format!("bad variable `{w}`"))?;
            if i == 0 || i > vars {
                return Err(format!("variable `{w}` is outside p1..p{vars}"));
            }
            Ok((QbfExpr::Var(i), pos + 1))
        }
        Some(w) => Err(format!("unexpected token `{w}`")),
        None => Err("unexpected end of input".to_string()),
    }
}

fn cmd_classify(a: ClassifyArgs) -> Result<u8, String> {
    let q = load_query(&a.formula)?;
    let out = match &q {
        Query::Fo(f) => {
            let r = classify(f);
            json!({
                "logic": "fo",
                "variable_count": r.variable_count,
                "predicates_used": r.predicates_used.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "is_existential": r.is_existential,
                "is_positive": r.is_positive,
                "is_forward": r.is_forward,
            })
        }
        Query::Ml(f) => json!({
            "logic": "ml",
            "modal_degree": f.modal_degree(),
            "has_inverse": f.has_inverse(),
            "has_constraints": f.has_paml(),
            "constraint_places": f.paml_places(),
        }),
    };
    match a.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out).unwrap()),
        _ => {
            let obj = out.as_object().unwrap();
            for (k, v) in obj {
                println!("{k}: {v}");
            }
        }
    }
    Ok(0)
}

fn cmd_presburger(a: PresArgs) -> Result<u8, String> {
    let f = load_pres(&a.formula)?;
    if a.eliminate {
        match eliminate_with_budget(&f, a.budget) {
            Ok(g) => {
                match a.format {
                    Format::Json => println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({ "eliminated": g.to_string() }))
                            .unwrap()
                    ),
                    _ => println!("{g}"),
                }
                Ok(0)
            }
            Err(PresError::ResourceExceeded(_)) => {
                eprintln!("inconclusive: elimination budget exceeded");
                Ok(2)
            }
            Err(e) => Err(e.to_string()),
        }
    } else {
        match decide_with_budget(&f, a.budget) {
            Ok(b) => {
                match a.format {
                    Format::Json => println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({ "verdict": b })).unwrap()
                    ),
                    _ => println!("{b}"),
                }
                Ok(if b { 0 } else { 1 })
            }
            Err(PresError::ResourceExceeded(_)) => {
                eprintln!("inconclusive: decision budget exceeded");
                Ok(2)
            }
            Err(e) => Err(e.to_string()),
        }
    }
}
