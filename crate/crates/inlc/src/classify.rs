//! Sahlqvist tier classification.
//!
//! A Sahlqvist formula is an implication whose consequent is positive and
//! whose antecedent matches one of three grammars of increasing generality:
//!
//! * very simple: `p | bot | top | phi & phi | Delta | Box(..; p)`
//! * simple: as above with pseudo-boxed atoms in place of bare variables
//! * full: additionally negative subformulas, disjunction and `Box(..; gamma)`
//!
//! `Delta` stands for a box whose universal coordinate is pure (no
//! propositional variables); its instantial coordinates recurse into the
//! same tier grammar.  Classification reports the lowest tier that matches
//! and a role-tagged decomposition of the antecedent for the correspondence
//! engine.  Ambiguities resolve to the lowest tier, and within a tier to
//! the first grammar clause above; in particular a pure universal
//! coordinate is always read as a `Delta` even though pure formulas are
//! also negative.  Implication and equivalence inside the antecedent are
//! matched through their or/not expansions.

use crate::formula::Formula;
use crate::print::{print_inl, Format};
use serde::Serialize;
use serde_json::{json, Value};

/// Classification outcome, ordered from most to least restrictive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    VerySimple,
    Simple,
    Full,
    NotSahlqvist,
}

/// Antecedent decomposition.  Each node records the grammar role it was
/// matched under; `Zeta`, `Gamma` and the box variants carry the concrete
/// subformula filling that role.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AntNode {
    Prop(String),
    Bot,
    Top,
    /// A pseudo-boxed atom.
    Zeta(Formula),
    /// A negative formula.
    Gamma(Formula),
    And(Box<AntNode>, Box<AntNode>),
    Or(Box<AntNode>, Box<AntNode>),
    /// Box with a pure universal coordinate.
    Delta { theta: Formula, inst: Vec<AntNode> },
    /// Box whose universal coordinate is a pseudo-boxed atom.
    BoxZeta { zeta: Formula, inst: Vec<AntNode> },
    /// Box whose universal coordinate is a negative formula.
    BoxGamma { gamma: Formula, inst: Vec<AntNode> },
}

/// Result of classification.  `antecedent` and `consequent` are present
/// exactly when the verdict is a Sahlqvist tier; `reason` explains a
/// `NotSahlqvist` verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SahlqvistClass {
    pub verdict: Verdict,
    pub antecedent: Option<AntNode>,
    pub consequent: Option<Formula>,
    pub reason: Option<String>,
}

impl SahlqvistClass {
    fn rejected(reason: &str) -> Self {
        SahlqvistClass {
            verdict: Verdict::NotSahlqvist,
            antecedent: None,
            consequent: None,
            reason: Some(reason.to_string()),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut out = json!({ "verdict": self.verdict });
        let obj = out.as_object_mut().unwrap();
        if let Some(ant) = &self.antecedent {
            obj.insert("antecedent".into(), ant.to_json());
        }
        if let Some(cons) = &self.consequent {
            obj.insert("consequent".into(), Value::String(render(cons)));
        }
        if let Some(reason) = &self.reason {
            obj.insert("reason".into(), Value::String(reason.clone()));
        }
        out
    }
}

fn render(f: &Formula) -> String {
    print_inl(f, Format::Text)
}

impl AntNode {
    pub fn to_json(&self) -> Value {
        match self {
            AntNode::Prop(p) => json!({ "role": "prop", "name": p }),
            AntNode::Bot => json!({ "role": "bot" }),
            AntNode::Top => json!({ "role": "top" }),
            AntNode::Zeta(z) => {
                json!({ "role": "pseudo_boxed_atom", "formula": render(z) })
            }
            AntNode::Gamma(g) => json!({ "role": "negative", "formula": render(g) }),
            AntNode::And(a, b) => {
                json!({ "role": "and", "lhs": a.to_json(), "rhs": b.to_json() })
            }
            AntNode::Or(a, b) => {
                json!({ "role": "or", "lhs": a.to_json(), "rhs": b.to_json() })
            }
            AntNode::Delta { theta, inst } => json!({
                "role": "delta",
                "theta": render(theta),
                "inst": inst.iter().map(AntNode::to_json).collect::<Vec<_>>(),
            }),
            AntNode::BoxZeta { zeta, inst } => json!({
                "role": "box_zeta",
                "zeta": render(zeta),
                "inst": inst.iter().map(AntNode::to_json).collect::<Vec<_>>(),
            }),
            AntNode::BoxGamma { gamma, inst } => json!({
                "role": "box_gamma",
                "gamma": render(gamma),
                "inst": inst.iter().map(AntNode::to_json).collect::<Vec<_>>(),
            }),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Tier {
    VerySimple,
    Simple,
    Full,
}

/// Matches `phi` (already expanded) against the antecedent grammar of
/// `tier`; returns the decomposition on success.
fn match_antecedent(phi: &Formula, tier: Tier) -> Option<AntNode> {
    // Clause order mirrors the grammars: leaf roles first, then the
    // propositional closures, then the box clauses.
    if tier >= Tier::Simple && phi.is_pseudo_boxed_atom() {
        return Some(AntNode::Zeta(phi.clone()));
    }
    if tier == Tier::Full && phi.is_negative() {
        return Some(AntNode::Gamma(phi.clone()));
    }
    match phi {
        Formula::Var(p) => Some(AntNode::Prop(p.clone())),
        Formula::Bot => Some(AntNode::Bot),
        Formula::Top => Some(AntNode::Top),
        Formula::And(a, b) => {
            let left = match_antecedent(a, tier)?;
            let right = match_antecedent(b, tier)?;
            Some(AntNode::And(Box::new(left), Box::new(right)))
        }
        Formula::Or(a, b) if tier == Tier::Full => {
            let left = match_antecedent(a, tier)?;
            let right = match_antecedent(b, tier)?;
            Some(AntNode::Or(Box::new(left), Box::new(right)))
        }
        Formula::Box { inst, univ } => {
            let coords = inst
                .iter()
                .map(|c| match_antecedent(c, tier))
                .collect::<Option<Vec<_>>>()?;
            if univ.is_pure() {
                return Some(AntNode::Delta { theta: (**univ).clone(), inst: coords });
            }
            let zeta_ok = match tier {
                Tier::VerySimple => matches!(**univ, Formula::Var(_)),
                Tier::Simple | Tier::Full => univ.is_pseudo_boxed_atom(),
            };
            if zeta_ok {
                return Some(AntNode::BoxZeta { zeta: (**univ).clone(), inst: coords });
            }
            if tier == Tier::Full && univ.is_negative() {
                return Some(AntNode::BoxGamma { gamma: (**univ).clone(), inst: coords });
            }
            None
        }
        _ => None,
    }
}

/// True iff `phi` matches the very simple antecedent grammar; the
/// decomposition is returned for the correspondence engine.
pub fn is_very_simple_antecedent(phi: &Formula) -> Option<AntNode> {
    match_antecedent(&phi.expand(), Tier::VerySimple)
}

/// True iff `phi` matches the simple antecedent grammar.
pub fn is_simple_antecedent(phi: &Formula) -> Option<AntNode> {
    match_antecedent(&phi.expand(), Tier::Simple)
}

/// True iff `phi` matches the unrestricted Sahlqvist antecedent grammar.
pub fn is_sahlqvist_antecedent(phi: &Formula) -> Option<AntNode> {
    match_antecedent(&phi.expand(), Tier::Full)
}

/// Classifies a formula against the Sahlqvist hierarchy.  The verdict is
/// the lowest tier whose antecedent grammar matches.
pub fn classify(phi: &Formula) -> SahlqvistClass {
    let Formula::Implies(ant, cons) = phi else {
        return SahlqvistClass::rejected("formula is not an implication");
    };
    if !cons.is_positive() {
        return SahlqvistClass::rejected("consequent is not positive");
    }
    let expanded = ant.expand();
    for (tier, verdict) in [
        (Tier::VerySimple, Verdict::VerySimple),
        (Tier::Simple, Verdict::Simple),
        (Tier::Full, Verdict::Full),
    ] {
        if let Some(node) = match_antecedent(&expanded, tier) {
            return SahlqvistClass {
                verdict,
                antecedent: Some(node),
                consequent: Some((**cons).clone()),
                reason: None,
            };
        }
    }
    SahlqvistClass::rejected("antecedent matches no Sahlqvist tier")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_inl;
    use proptest::prelude::*;

    fn verdict_of(text: &str) -> Verdict {
        classify(&parse_inl(text).unwrap()).verdict
    }

    #[test]
    fn antecedent_tier_examples() {
        let vs = |s: &str| is_very_simple_antecedent(&parse_inl(s).unwrap()).is_some();
        let si = |s: &str| is_simple_antecedent(&parse_inl(s).unwrap()).is_some();
        let fu = |s: &str| is_sahlqvist_antecedent(&parse_inl(s).unwrap()).is_some();

        assert!(vs("Box(p; q)"));
        assert!(vs("Box(p; top)"));
        assert!(!vs("Box(p; q & q)"));
        assert!(si("Box(p; q & q)"));
        assert!(si("~Box(~p; top)"));
        assert!(!si("Box(p; ~q)"));
        assert!(fu("Box(p; ~q)"));
        assert!(fu("p | Box(q; top)"));
        assert!(!fu("Box(p; Box(q; top))"));
    }

    #[test]
    fn verdict_is_the_lowest_matching_tier() {
        assert_eq!(verdict_of("Box(p; top) -> p"), Verdict::VerySimple);
        // The universal coordinate is a bare variable, so the very simple
        // Box clause applies even though p is also a pseudo-boxed atom.
        assert_eq!(verdict_of("Box(p; p) -> Box(; p)"), Verdict::VerySimple);
        assert_eq!(verdict_of("Box(p; q & q) -> p"), Verdict::Simple);
        assert_eq!(verdict_of("Box(p; ~q) -> p"), Verdict::Full);
        assert_eq!(verdict_of("p -> ~p"), Verdict::NotSahlqvist);
        assert_eq!(verdict_of("Box(p; Box(q; top)) -> p"), Verdict::NotSahlqvist);
    }

    #[test]
    fn rejections_carry_a_reason() {
        let c = classify(&parse_inl("p & q").unwrap());
        assert_eq!(c.verdict, Verdict::NotSahlqvist);
        assert_eq!(c.reason.as_deref(), Some("formula is not an implication"));
        assert!(c.antecedent.is_none() && c.consequent.is_none());

        let c = classify(&parse_inl("p -> ~p").unwrap());
        assert_eq!(c.reason.as_deref(), Some("consequent is not positive"));

        let c = classify(&parse_inl("Box(p; Box(q; top)) -> p").unwrap());
        assert_eq!(c.reason.as_deref(), Some("antecedent matches no Sahlqvist tier"));
    }

    #[test]
    fn antecedent_implication_is_matched_through_its_expansion() {
        // (p -> q) expands to ~p | q: a negative leaf or-ed with an atom.
        assert_eq!(verdict_of("(p -> q) -> q"), Verdict::Full);
        let c = classify(&parse_inl("(p -> q) -> q").unwrap());
        match c.antecedent.unwrap() {
            AntNode::Or(l, r) => {
                assert!(matches!(*l, AntNode::Gamma(_)));
                assert!(matches!(*r, AntNode::Zeta(_)));
            }
            other => panic!("expected an or-node, got {other:?}"),
        }
    }

    #[test]
    fn pure_universal_coordinate_is_a_delta_node() {
        // A pure universal coordinate keeps the box in the very simple
        // tier no matter how complex the pure formula is.
        let c = classify(&parse_inl("Box(p; Box(; bot)) -> p").unwrap());
        assert_eq!(c.verdict, Verdict::VerySimple);
        match c.antecedent.unwrap() {
            AntNode::Delta { theta, inst } => {
                assert_eq!(theta, parse_inl("Box(; bot)").unwrap());
                assert_eq!(inst.len(), 1);
            }
            other => panic!("expected a delta node, got {other:?}"),
        }
    }

    #[test]
    fn full_tier_wraps_maximal_negative_subformulas() {
        // ~p & ~q is negative as a whole, so it becomes one Gamma leaf
        // rather than a conjunction of two.
        let c = classify(&parse_inl("~p & ~q -> r").unwrap());
        assert_eq!(c.verdict, Verdict::Full);
        assert!(matches!(c.antecedent.unwrap(), AntNode::Gamma(_)));
    }

    #[test]
    fn nested_nabla_chains_are_pseudo_boxed_atoms() {
        let c = classify(&parse_inl("~Box(~~Box(~p; top); Box(; bot)) -> p").unwrap());
        assert_eq!(c.verdict, Verdict::Simple);
        assert!(matches!(c.antecedent.unwrap(), AntNode::Zeta(_)));
    }

    #[test]
    fn decomposition_json_tags_roles() {
        let c = classify(&parse_inl("Box(p; top) & ~q -> p").unwrap());
        let v = c.to_json();
        assert_eq!(v["verdict"], "full");
        assert_eq!(v["antecedent"]["role"], "and");
        assert_eq!(v["antecedent"]["lhs"]["role"], "delta");
        assert_eq!(v["antecedent"]["lhs"]["theta"], "top");
        assert_eq!(v["antecedent"]["rhs"]["role"], "negative");
        assert_eq!(v["consequent"], "p");
    }

    proptest! {
        #[test]
        fn tiers_are_nested(phi in crate::formula::tests::arb_formula()) {
            if is_very_simple_antecedent(&phi).is_some() {
                prop_assert!(is_simple_antecedent(&phi).is_some());
            }
            if is_simple_antecedent(&phi).is_some() {
                prop_assert!(is_sahlqvist_antecedent(&phi).is_some());
            }
        }

        #[test]
        fn pseudo_boxed_atoms_are_simple_antecedents(
            phi in crate::formula::tests::arb_formula()
        ) {
            if phi.is_pseudo_boxed_atom() {
                prop_assert!(is_simple_antecedent(&phi).is_some());
            }
        }
    }
}
