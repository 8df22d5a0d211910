//! Fragment-driven engine selection. Decidable fragments get their
//! dedicated engine; bounded nets fall back to explicit-state checking for
//! anything else; what remains is honestly inconclusive.

use super::{
    explicit_fo, explicit_ml, mc_exists_fo, mc_fo_one_var, mc_fo_semilinear, mc_fo_ug,
    mc_ml_backward, mc_ml_forward, CheckVerdict, EngineError, Verdict,
};
use crate::logic::{classify, modal_to_fo, FoFormula, MlFormula, Pred};
use crate::net::PetriNet;
use crate::presburger::PresFormula;
use crate::statespace::{explore, is_bounded, transitive_closure, Boundedness, DEFAULT_CAP};

/// Which graph the formula is interpreted on: the reachability graph with
/// only the reachable markings, or the unrestricted graph over all of N^n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    Urg,
    Ug,
}

/// A formula of either logic.
#[derive(Clone, Debug)]
pub enum Query {
    Fo(FoFormula),
    Ml(MlFormula),
}

/// Knobs shared by all engines.
#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Node cap for explicit exploration and capped reachability searches.
    pub cap: usize,
    /// Node budget for the boundedness (coverability tree) probe.
    pub node_budget: usize,
    /// Arithmetic description of the reachability set, if the caller has one.
    pub reach: Option<PresFormula>,
    /// Arithmetic description of `->*` (places unprimed = source, primed =
    /// target), if the caller has one.
    pub star: Option<PresFormula>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { cap: DEFAULT_CAP, node_budget: DEFAULT_CAP, reach: None, star: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EngineName {
    ExplicitFo,
    ExplicitMl,
    MlForward,
    MlBackward,
    PamlValForward,
    ExistsFo,
    OneVar,
    FoUg,
    FoSemilinear,
    UgGuarded,
}

impl EngineName {
    pub fn as_str(self) -> &'static str {
        match self {
            EngineName::ExplicitFo => "explicit_fo",
            EngineName::ExplicitMl => "explicit_ml",
            EngineName::MlForward => "mc_ml_forward",
            EngineName::MlBackward => "mc_ml_backward",
            EngineName::PamlValForward => "val_paml_forward",
            EngineName::ExistsFo => "mc_exists_fo",
            EngineName::OneVar => "mc_fo_one_var",
            EngineName::FoUg => "mc_fo_ug",
            EngineName::FoSemilinear => "mc_fo_semilinear",
            EngineName::UgGuarded => "ug_eval_guarded",
        }
    }
}

/// A routing decision and the reason it applies.
#[derive(Clone, Debug)]
pub struct EngineRoute {
    pub engine: EngineName,
    pub why: String,
}

fn pick(engine: EngineName, why: impl Into<String>) -> Option<EngineRoute> {
    Some(EngineRoute { engine, why: why.into() })
}

/// Chooses an engine whose precondition the query satisfies, or `None` when
/// no implemented fragment covers it.
pub fn route(
    net: &PetriNet,
    q: &Query,
    structure: Structure,
    cfg: &RunConfig,
) -> Option<EngineRoute> {
    match (structure, q) {
        (Structure::Urg, Query::Ml(f)) => {
            if !f.has_inverse() {
                pick(EngineName::MlForward, "forward modal formula: depth-bounded and definitive")
            } else {
                pick(
                    EngineName::MlBackward,
                    "converse modalities: backward candidates filtered by reachability",
                )
            }
        }
        (Structure::Ug, Query::Ml(f)) => {
            if f.has_paml() {
                None
            } else {
                pick(
                    EngineName::FoUg,
                    "modal formula over N^n: translated to first order and decided",
                )
            }
        }
        (Structure::Ug, Query::Fo(f)) => {
            let preds = f.predicates_used();
            if preds.iter().all(|p| matches!(p, Pred::Init | Pred::Edge | Pred::Eq)) {
                pick(EngineName::FoUg, "first order over N^n without closures: decidable")
            } else {
                None
            }
        }
        (Structure::Urg, Query::Fo(f)) => {
            let preds = f.predicates_used();
            if cfg.reach.is_some() {
                let needs_star =
                    preds.iter().any(|p| matches!(p, Pred::Star | Pred::Plus));
                if !needs_star || cfg.star.is_some() {
                    return pick(
                        EngineName::FoSemilinear,
                        "arithmetic descriptions supplied: decided by elimination",
                    );
                }
            }
            if preds.iter().all(|p| matches!(p, Pred::Edge)) && fits_one_var(f) {
                return pick(
                    EngineName::OneVar,
                    "one-variable clauses over ->: self-loop coverability",
                );
            }
            if preds.iter().all(|p| matches!(p, Pred::Edge | Pred::Eq)) && fits_exists_fo(f) {
                return pick(
                    EngineName::ExistsFo,
                    "existential clauses over -> and =: product-net reachability",
                );
            }
            if let Boundedness::Bounded(_) = is_bounded(net, cfg.node_budget) {
                return pick(EngineName::ExplicitFo, "bounded net: exhaustive evaluation");
            }
            None
        }
    }
}

/// Runs the routed engine; when it is inconclusive and the graph fits under
/// the cap anyway, falls back to explicit checking.
pub fn check(
    net: &PetriNet,
    q: &Query,
    structure: Structure,
    cfg: &RunConfig,
) -> Result<CheckVerdict, EngineError> {
    let v = match route(net, q, structure, cfg) {
        Some(r) => dispatch(net, q, r.engine, cfg)?,
        None => CheckVerdict::inconclusive("route", "no decidable route for this fragment"),
    };
    if v.verdict == Verdict::Inconclusive && structure == Structure::Urg {
        let g = explore(net, cfg.cap);
        if g.complete {
            return match q {
                Query::Fo(f) => {
                    let c = transitive_closure(&g)?;
                    explicit_fo(&g, &c, f)
                }
                Query::Ml(f) => explicit_ml(&g, net, f, g.initial),
            };
        }
    }
    Ok(v)
}

fn dispatch(
    net: &PetriNet,
    q: &Query,
    engine: EngineName,
    cfg: &RunConfig,
) -> Result<CheckVerdict, EngineError> {
    match (engine, q) {
        (EngineName::MlForward, Query::Ml(f)) => mc_ml_forward(net, f),
        (EngineName::MlBackward, Query::Ml(f)) => mc_ml_backward(net, f, cfg.cap),
        (EngineName::FoUg, Query::Ml(f)) => {
            // interpret the modal formula at the initial point of N^n
            let fo = modal_to_fo(f, "x", "y")?;
            let sentence = FoFormula::Exists(
                "x".into(),
                Box::new(FoFormula::And(
                    Box::new(FoFormula::Init("x".into())),
                    Box::new(fo),
                )),
            );
            mc_fo_ug(net, &sentence)
        }
        (EngineName::FoUg, Query::Fo(f)) => mc_fo_ug(net, f),
        (EngineName::OneVar, Query::Fo(f)) => mc_fo_one_var(net, f, cfg.cap),
        (EngineName::ExistsFo, Query::Fo(f)) => mc_exists_fo(net, f, cfg.cap),
        (EngineName::FoSemilinear, Query::Fo(f)) => mc_fo_semilinear(
            net,
            f,
            cfg.reach.as_ref().expect("routed with a reach formula"),
            cfg.star.as_ref(),
        ),
        (EngineName::ExplicitFo, Query::Fo(f)) => {
            let g = explore(net, cfg.cap);
            if !g.complete {
                return Ok(CheckVerdict::inconclusive(
                    "explicit_fo",
                    "cap-exceeded while building the graph",
                ));
            }
            let c = transitive_closure(&g)?;
            explicit_fo(&g, &c, f)
        }
        (EngineName::ExplicitMl, Query::Ml(f)) => {
            let g = explore(net, cfg.cap);
            if !g.complete {
                return Ok(CheckVerdict::inconclusive(
                    "explicit_ml",
                    "cap-exceeded while building the graph",
                ));
            }
            explicit_ml(&g, net, f, g.initial)
        }
        _ => Err(EngineError::fragment(
            engine.as_str(),
            "engine does not accept this kind of formula",
        )),
    }
}

/// Does the sentence decompose into one-variable clauses whose atoms are
/// all `v -> v`?
fn fits_one_var(f: &FoFormula) -> bool {
    use FoFormula::*;
    fn body(f: &FoFormula, v: &str) -> bool {
        match f {
            Edge(x, y) => x == v && y == v,
            Not(g) => body(g, v),
            And(a, b) | Or(a, b) | Implies(a, b) => body(a, v) && body(b, v),
            _ => false,
        }
    }
    match f {
        And(a, b) | Or(a, b) | Implies(a, b) if a.is_sentence() && b.is_sentence() => {
            fits_one_var(a) && fits_one_var(b)
        }
        Not(g) => fits_one_var(g),
        Forall(v, g) | Exists(v, g) => body(g, v),
        _ => false,
    }
}

/// Does the sentence decompose into clauses that are (possibly negated)
/// existential sentences?
fn fits_exists_fo(f: &FoFormula) -> bool {
    use FoFormula::*;
    match f {
        And(a, b) | Or(a, b) | Implies(a, b) if a.is_sentence() && b.is_sentence() => {
            fits_exists_fo(a) && fits_exists_fo(b)
        }
        Not(g) => classify(f).is_existential || fits_exists_fo(g),
        Exists(_, _) => classify(f).is_existential,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse_fo_sentence, parse_ml};
    use crate::net::parse_net;

    fn fo(s: &str) -> Query {
        Query::Fo(parse_fo_sentence(s).unwrap())
    }

    fn ml(s: &str) -> Query {
        Query::Ml(parse_ml(s).unwrap())
    }

    #[test]
    fn modal_routing() {
        let net = parse_net("net a\nplace p init 0\ntrans t\nout p:1").unwrap();
        let cfg = RunConfig::default();
        let r = route(&net, &ml("box dia top"), Structure::Urg, &cfg).unwrap();
        assert_eq!(r.engine, EngineName::MlForward);
        let r = route(&net, &ml("diainv top"), Structure::Urg, &cfg).unwrap();
        assert_eq!(r.engine, EngineName::MlBackward);
        let r = route(&net, &ml("box bot"), Structure::Ug, &cfg).unwrap();
        assert_eq!(r.engine, EngineName::FoUg);
    }

    #[test]
    fn fo_routing_on_unbounded_nets() {
        let net = parse_net("net a\nplace p init 0\ntrans t\nout p:1").unwrap();
        let cfg = RunConfig::default();
        let r = route(&net, &fo("exists x . x -> x"), Structure::Urg, &cfg).unwrap();
        assert_eq!(r.engine, EngineName::OneVar);
        let r =
            route(&net, &fo("exists x . exists y . x -> y & !(x = y)"), Structure::Urg, &cfg)
                .unwrap();
        assert_eq!(r.engine, EngineName::ExistsFo);
        // two-variable universal sentence over an unbounded net: no route
        assert!(route(&net, &fo("forall x . forall y . x -> y"), Structure::Urg, &cfg)
            .is_none());
        // same sentence with an arithmetic description: routed
        let cfg = RunConfig {
            reach: Some(crate::presburger::parse_presburger("p >= 0").unwrap()),
            ..RunConfig::default()
        };
        let r = route(&net, &fo("forall x . forall y . x -> y"), Structure::Urg, &cfg).unwrap();
        assert_eq!(r.engine, EngineName::FoSemilinear);
    }

    #[test]
    fn bounded_nets_route_to_explicit() {
        let net = parse_net("net a\nplace p init 3\ntrans t\nin p:1").unwrap();
        let cfg = RunConfig::default();
        let q = fo("forall x . exists y . x ->* y & forall z . !(y -> z)");
        let r = route(&net, &q, Structure::Urg, &cfg).unwrap();
        assert_eq!(r.engine, EngineName::ExplicitFo);
        let v = check(&net, &q, Structure::Urg, &cfg).unwrap();
        assert_eq!(v.verdict, Verdict::Holds);
    }

    #[test]
    fn no_route_is_inconclusive_not_wrong() {
        let net = parse_net("net a\nplace p init 0\ntrans t\nout p:1").unwrap();
        let cfg = RunConfig::default();
        let q = fo("forall x . exists y . x ->* y");
        let v = check(&net, &q, Structure::Urg, &cfg).unwrap();
        assert_eq!(v.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn ug_modal_checking_via_translation() {
        // at the initial point 0 of the pump, a step exists and none comes in
        let net = parse_net("net a\nplace p init 0\ntrans t\nout p:1").unwrap();
        let cfg = RunConfig::default();
        let v = check(&net, &ml("dia top & boxinv bot"), Structure::Ug, &cfg).unwrap();
        assert_eq!(v.verdict, Verdict::Holds);
        let v = check(&net, &ml("diainv top"), Structure::Ug, &cfg).unwrap();
        assert_eq!(v.verdict, Verdict::Fails);
    }

    #[test]
    fn ug_closures_have_no_route() {
        let net = parse_net("net a\nplace p init 0\ntrans t\nout p:1").unwrap();
        let cfg = RunConfig::default();
        assert!(route(&net, &fo("forall x . x ->* x"), Structure::Ug, &cfg).is_none());
        let v = check(&net, &fo("forall x . x ->* x"), Structure::Ug, &cfg).unwrap();
        assert_eq!(v.verdict, Verdict::Inconclusive);
    }
}
