//! Formula AST for instantial neighbourhood logic and the syntactic
//! predicates (polarity, purity, pseudo-boxed atoms) the Sahlqvist
//! machinery is built on.

use std::collections::{BTreeMap, BTreeSet};

/// A formula of instantial neighbourhood logic.
///
/// `Box { inst, univ }` is the (n+1)-ary instantial modality: it holds at a
/// world when some neighbourhood makes `univ` true at every member and each
/// formula in `inst` true at some member.  The empty neighbourhood satisfies
/// the universal part vacuously and no instantial part.
///
/// `Implies` and `Iff` are definable abbreviations kept as nodes so parsed
/// input round-trips; every syntactic predicate treats them through their
/// `~a | b` expansion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Var(String),
    Bot,
    Top,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Box { inst: Vec<Formula>, univ: Box<Formula> },
}

/// Polarity of a variable in a formula: the sign of its occurrences after
/// expanding `Implies`/`Iff`, where an occurrence is positive when it sits
/// under an even number of negations.  All box coordinates are positive
/// positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Polarity {
    Positive,
    Negative,
    Both,
    Absent,
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Self {
        Formula::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn boxed(inst: Vec<Formula>, univ: Formula) -> Self {
        Formula::Box { inst, univ: Box::new(univ) }
    }

    /// The derived unary modality `∇` with pure guard `theta`:
    /// `nabla(theta, f) = ~Box(~f; theta)`.
    pub fn nabla(theta: Formula, f: Formula) -> Self {
        Self::not(Self::boxed(vec![Self::not(f)], theta))
    }

    /// Variables occurring in the formula, in sorted order.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(p) => {
                out.insert(p.clone());
            }
            Formula::Bot | Formula::Top => {}
            Formula::Not(f) => f.collect_vars(out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Box { inst, univ } => {
                for f in inst {
                    f.collect_vars(out);
                }
                univ.collect_vars(out);
            }
        }
    }

    /// Rewrites `Implies(a, b)` to `~a | b` and `Iff(a, b)` to
    /// `(~a | b) & (~b | a)` throughout.
    pub fn expand(&self) -> Formula {
        match self {
            Formula::Var(_) | Formula::Bot | Formula::Top => self.clone(),
            Formula::Not(f) => Formula::not(f.expand()),
            Formula::And(a, b) => Formula::and(a.expand(), b.expand()),
            Formula::Or(a, b) => Formula::or(a.expand(), b.expand()),
            Formula::Implies(a, b) => Formula::or(Formula::not(a.expand()), b.expand()),
            Formula::Iff(a, b) => {
                let (a, b) = (a.expand(), b.expand());
                Formula::and(
                    Formula::or(Formula::not(a.clone()), b.clone()),
                    Formula::or(Formula::not(b), a),
                )
            }
            Formula::Box { inst, univ } => {
                Formula::boxed(inst.iter().map(Formula::expand).collect(), univ.expand())
            }
        }
    }

    /// Polarity of `p` in the formula.
    pub fn polarity(&self, p: &str) -> Polarity {
        let mut seen = (false, false);
        self.occurrences(p, true, &mut seen);
        match seen {
            (false, false) => Polarity::Absent,
            (true, false) => Polarity::Positive,
            (false, true) => Polarity::Negative,
            (true, true) => Polarity::Both,
        }
    }

    fn occurrences(&self, p: &str, positive: bool, seen: &mut (bool, bool)) {
        match self {
            Formula::Var(q) => {
                if q == p {
                    if positive {
                        seen.0 = true;
                    } else {
                        seen.1 = true;
                    }
                }
            }
            Formula::Bot | Formula::Top => {}
            Formula::Not(f) => f.occurrences(p, !positive, seen),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.occurrences(p, positive, seen);
                b.occurrences(p, positive, seen);
            }
            Formula::Implies(a, b) => {
                a.occurrences(p, !positive, seen);
                b.occurrences(p, positive, seen);
            }
            Formula::Iff(a, b) => {
                // `a <-> b` expands so that both sides occur in both signs.
                a.occurrences(p, positive, seen);
                a.occurrences(p, !positive, seen);
                b.occurrences(p, positive, seen);
                b.occurrences(p, !positive, seen);
            }
            Formula::Box { inst, univ } => {
                for f in inst {
                    f.occurrences(p, positive, seen);
                }
                univ.occurrences(p, positive, seen);
            }
        }
    }

    /// True when every occurring variable is positive.  A variable-free
    /// formula is both positive and negative.
    pub fn is_positive(&self) -> bool {
        self.vars().iter().all(|p| self.polarity(p) == Polarity::Positive)
    }

    /// True when every occurring variable is negative.
    pub fn is_negative(&self) -> bool {
        self.vars().iter().all(|p| self.polarity(p) == Polarity::Negative)
    }

    /// True when no propositional variable occurs at all.
    pub fn is_pure(&self) -> bool {
        match self {
            Formula::Var(_) => false,
            Formula::Bot | Formula::Top => true,
            Formula::Not(f) => f.is_pure(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => a.is_pure() && b.is_pure(),
            Formula::Box { inst, univ } => inst.iter().all(Formula::is_pure) && univ.is_pure(),
        }
    }

    /// A pseudo-boxed atom is built from variables, `top` and `bot` by
    /// conjunction and the derived modality `∇` with pure guard, i.e. the
    /// pattern `~Box(~z; theta)` with `theta` pure and `z` again a
    /// pseudo-boxed atom.
    pub fn is_pseudo_boxed_atom(&self) -> bool {
        match self {
            Formula::Var(_) | Formula::Bot | Formula::Top => true,
            Formula::And(a, b) => a.is_pseudo_boxed_atom() && b.is_pseudo_boxed_atom(),
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Box { inst, univ } if inst.len() == 1 && univ.is_pure() => {
                    match &inst[0] {
                        Formula::Not(z) => z.is_pseudo_boxed_atom(),
                        _ => false,
                    }
                }
                _ => false,
            },
            _ => false,
        }
    }

    /// Simultaneous replacement of propositional variables.  Variables not
    /// named in the binding are left alone.
    pub fn substitute_props(&self, binding: &BTreeMap<String, Formula>) -> Formula {
        match self {
            Formula::Var(p) => binding.get(p).cloned().unwrap_or_else(|| self.clone()),
            Formula::Bot | Formula::Top => self.clone(),
            Formula::Not(f) => Formula::not(f.substitute_props(binding)),
            Formula::And(a, b) => {
                Formula::and(a.substitute_props(binding), b.substitute_props(binding))
            }
            Formula::Or(a, b) => {
                Formula::or(a.substitute_props(binding), b.substitute_props(binding))
            }
            Formula::Implies(a, b) => {
                Formula::implies(a.substitute_props(binding), b.substitute_props(binding))
            }
            Formula::Iff(a, b) => {
                Formula::iff(a.substitute_props(binding), b.substitute_props(binding))
            }
            Formula::Box { inst, univ } => Formula::boxed(
                inst.iter().map(|f| f.substitute_props(binding)).collect(),
                univ.substitute_props(binding),
            ),
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p() -> Formula {
        Formula::var("p")
    }

    fn q() -> Formula {
        Formula::var("q")
    }

    #[test]
    fn polarity_basics() {
        assert_eq!(p().polarity("p"), Polarity::Positive);
        assert_eq!(Formula::not(p()).polarity("p"), Polarity::Negative);
        // p occurs positively as a box coordinate and negatively under ~ in
        // the universal slot.
        let both = Formula::boxed(vec![p()], Formula::not(p()));
        assert_eq!(both.polarity("p"), Polarity::Both);
        assert_eq!(Formula::and(p(), q()).polarity("r"), Polarity::Absent);
    }

    #[test]
    fn polarity_through_implication() {
        let f = Formula::implies(p(), q());
        assert_eq!(f.polarity("p"), Polarity::Negative);
        assert_eq!(f.polarity("q"), Polarity::Positive);
        let g = Formula::iff(p(), q());
        assert_eq!(g.polarity("p"), Polarity::Both);
        assert_eq!(g.polarity("q"), Polarity::Both);
    }

    #[test]
    fn positivity() {
        let f = Formula::and(p(), Formula::boxed(vec![q()], q()));
        assert!(f.is_positive());
        assert!(!f.is_negative());
        let g = Formula::or(Formula::not(p()), Formula::not(q()));
        assert!(g.is_negative());
        assert!(!g.is_positive());
        // Variable-free formulas are both.
        assert!(Formula::Top.is_positive());
        assert!(Formula::Top.is_negative());
    }

    #[test]
    fn purity() {
        assert!(Formula::boxed(vec![Formula::Top], Formula::Bot).is_pure());
        assert!(!p().is_pure());
        assert!(Formula::boxed(vec![], Formula::boxed(vec![], Formula::Top)).is_pure());
    }

    #[test]
    fn pseudo_boxed_atoms() {
        assert!(Formula::and(p(), q()).is_pseudo_boxed_atom());
        assert!(Formula::nabla(Formula::Top, p()).is_pseudo_boxed_atom());
        // Nested nabla with a non-trivial pure guard.
        let nested = Formula::nabla(
            Formula::boxed(vec![], Formula::Top),
            Formula::nabla(Formula::Bot, Formula::and(p(), q())),
        );
        assert!(nested.is_pseudo_boxed_atom());
        // Guard with a variable is not pure, so this is not a nabla form.
        assert!(!Formula::not(Formula::boxed(vec![Formula::not(p())], q()))
            .is_pseudo_boxed_atom());
        assert!(!Formula::or(p(), q()).is_pseudo_boxed_atom());
        assert!(!Formula::boxed(vec![p()], q()).is_pseudo_boxed_atom());
    }

    #[test]
    fn substitution() {
        let binding: BTreeMap<String, Formula> =
            [("p".to_string(), Formula::Top)].into_iter().collect();
        let f = Formula::boxed(vec![p()], q());
        assert_eq!(
            f.substitute_props(&binding),
            Formula::boxed(vec![Formula::Top], q())
        );
        let g = Formula::and(p(), p());
        assert_eq!(
            g.substitute_props(&binding),
            Formula::and(Formula::Top, Formula::Top)
        );
        assert_eq!(q().substitute_props(&binding), q());
    }

    pub(crate) fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            Just(Formula::var("p")),
            Just(Formula::var("q")),
            Just(Formula::Top),
            Just(Formula::Bot),
        ];
        leaf.prop_recursive(3, 24, 4, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)),
                (proptest::collection::vec(inner.clone(), 0..3), inner)
                    .prop_map(|(inst, univ)| Formula::boxed(inst, univ)),
            ]
        })
    }

    proptest! {
        #[test]
        fn negation_flips_polarity(f in arb_formula()) {
            for v in ["p", "q"] {
                let expected = match f.polarity(v) {
                    Polarity::Positive => Polarity::Negative,
                    Polarity::Negative => Polarity::Positive,
                    other => other,
                };
                prop_assert_eq!(Formula::not(f.clone()).polarity(v), expected);
            }
        }

        #[test]
        fn polarity_stable_under_expansion(f in arb_formula()) {
            for v in ["p", "q"] {
                prop_assert_eq!(f.polarity(v), f.expand().polarity(v));
            }
        }

        #[test]
        fn pure_formulas_are_positive_and_negative(f in arb_formula()) {
            if f.is_pure() {
                prop_assert!(f.is_positive() && f.is_negative());
            }
        }

        #[test]
        fn pseudo_boxed_atoms_are_positive(f in arb_formula()) {
            if f.is_pseudo_boxed_atom() {
                prop_assert!(f.is_positive());
            }
        }
    }
}
