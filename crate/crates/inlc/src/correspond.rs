//! Direct minimal-valuation correspondence.
//!
//! Given a classified Sahlqvist implication `ant -> psi`, the standard
//! translation of the antecedent is massaged into a disjunction of shapes
//! `exists Xbar ybar (REL & AT & NEG)` where REL collects predicate-free
//! integrity atoms (neighbourhood steps, membership steps, pure-theta
//! guards), AT collects the atomic requirements on predicates, and NEG the
//! translations of negative parts.  Reading the AT occurrences of each
//! disjunct off as a minimal valuation and substituting it into
//! `~NEG | st(psi)` eliminates all predicates; the result
//!
//! `forall Xbar ybar (REL -> ~NEG | st(psi))[sigma]`
//!
//! conjoined over the disjuncts is the local frame correspondent in the
//! free world variable `x`.

use crate::classify::{classify, AntNode};
use crate::fo::{
    rename_world_var, simplify_fo, substitute_predicate, FoFormula, PredicateDescriptor,
    VarGen,
};
use crate::formula::Formula;
use crate::st::st_with;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CorrespondError {
    #[error("not a Sahlqvist formula: {reason}")]
    NotSahlqvist { reason: String },
    /// An invariant the classifier is supposed to guarantee failed inside
    /// the correspondence engine.
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("malformed decomposition: {0}")]
pub struct MalformedDecomposition(pub String);

/// One atomic requirement on a predicate within a disjunct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtOcc {
    /// The predicate must hold at a specific world variable.
    Point { pred: String, world: String },
    /// The predicate must hold at every world satisfying `guard`, a
    /// predicate-free formula with free world variable `hole`.
    Set { pred: String, hole: String, guard: FoFormula },
}

/// A variable of the existential prefix, in binding order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrefixVar {
    World(String),
    Set(String),
}

/// One disjunct `exists vars (REL & AT & NEG)` of the antecedent's
/// translation.  `rel` entries contain no predicate atoms; `neg` entries
/// are negative in every predicate.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Disjunct {
    pub vars: Vec<PrefixVar>,
    pub rel: Vec<FoFormula>,
    pub at: Vec<AtOcc>,
    pub neg: Vec<FoFormula>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntecedentNormalForm {
    pub disjuncts: Vec<Disjunct>,
}

/// Context a pseudo-boxed atom is flattened under: either a single point,
/// or every world satisfying a guard.
enum ZetaCtx {
    Point(String),
    Chain { hole: String, guard: FoFormula },
}

/// Computes the normal form of a decomposed antecedent at world variable
/// `w`.  Fresh variables come from `gen`; every box node contributes its
/// subset variable, then one witness per instantial coordinate, then the
/// universal-part material, so the generated names follow the textual
/// order of the formula.
pub fn antecedent_normal_form(
    node: &AntNode,
    w: &str,
    gen: &mut VarGen,
) -> Result<AntecedentNormalForm, MalformedDecomposition> {
    Ok(AntecedentNormalForm { disjuncts: build(node, w, gen)? })
}

pub(crate) fn cross(a: Vec<Disjunct>, b: Vec<Disjunct>) -> Vec<Disjunct> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for da in &a {
        for db in &b {
            let mut d = da.clone();
            d.vars.extend(db.vars.iter().cloned());
            d.rel.extend(db.rel.iter().cloned());
            d.at.extend(db.at.iter().cloned());
            d.neg.extend(db.neg.iter().cloned());
            out.push(d);
        }
    }
    out
}

fn build(
    node: &AntNode,
    w: &str,
    gen: &mut VarGen,
) -> Result<Vec<Disjunct>, MalformedDecomposition> {
    match node {
        AntNode::Prop(p) => Ok(vec![Disjunct {
            at: vec![AtOcc::Point { pred: p.clone(), world: w.to_string() }],
            ..Disjunct::default()
        }]),
        AntNode::Bot => Ok(vec![Disjunct {
            rel: vec![FoFormula::False],
            ..Disjunct::default()
        }]),
        AntNode::Top => Ok(vec![Disjunct::default()]),
        AntNode::Zeta(z) => {
            let mut d = Disjunct::default();
            flatten_zeta(z, &ZetaCtx::Point(w.to_string()), gen, &mut d.rel, &mut d.at)?;
            Ok(vec![d])
        }
        AntNode::Gamma(g) => {
            if !g.is_negative() {
                return Err(MalformedDecomposition(format!(
                    "negative-role formula {g:?} is not negative"
                )));
            }
            Ok(vec![Disjunct {
                neg: vec![st_with(g, w, gen)],
                ..Disjunct::default()
            }])
        }
        AntNode::And(a, b) => Ok(cross(build(a, w, gen)?, build(b, w, gen)?)),
        AntNode::Or(a, b) => {
            let mut out = build(a, w, gen)?;
            out.extend(build(b, w, gen)?);
            Ok(out)
        }
        AntNode::Delta { theta, inst } => {
            if !theta.is_pure() {
                return Err(MalformedDecomposition(format!(
                    "delta coordinate {theta:?} is not pure"
                )));
            }
            box_node(inst, gen, w, |set, rel, _at, gen| {
                let yg = gen.fresh_world();
                rel.push(FoFormula::forall_world(
                    yg.clone(),
                    FoFormula::implies(
                        FoFormula::rel_ni(set, yg.clone()),
                        st_with(theta, &yg, gen),
                    ),
                ));
                Ok(())
            })
        }
        AntNode::BoxZeta { zeta, inst } => {
            if !zeta.is_pseudo_boxed_atom() {
                return Err(MalformedDecomposition(format!(
                    "universal coordinate {zeta:?} is not a pseudo-boxed atom"
                )));
            }
            box_node(inst, gen, w, |set, rel, at, gen| {
                let hole = gen.fresh_world();
                let guard = FoFormula::rel_ni(set, hole.clone());
                flatten_zeta(zeta, &ZetaCtx::Chain { hole, guard }, gen, rel, at)
            })
        }
        AntNode::BoxGamma { gamma, inst } => {
            if !gamma.is_negative() {
                return Err(MalformedDecomposition(format!(
                    "negative-role formula {gamma:?} is not negative"
                )));
            }
            let mut neg_guard = None;
            let mut out = box_node(inst, gen, w, |set, _rel, _at, gen| {
                let yg = gen.fresh_world();
                neg_guard = Some(FoFormula::forall_world(
                    yg.clone(),
                    FoFormula::implies(
                        FoFormula::rel_ni(set, yg.clone()),
                        st_with(gamma, &yg, gen),
                    ),
                ));
                Ok(())
            })?;
            let neg = neg_guard.expect("universal part built exactly once");
            for d in &mut out {
                d.neg.push(neg.clone());
            }
            Ok(out)
        }
    }
}

/// Shared skeleton of the three box clauses: introduces the subset
/// variable and the witness steps, lets `universal` contribute the
/// universal-part material, then crosses in the coordinate recursions.
fn box_node(
    inst: &[AntNode],
    gen: &mut VarGen,
    w: &str,
    universal: impl FnOnce(
        String,
        &mut Vec<FoFormula>,
        &mut Vec<AtOcc>,
        &mut VarGen,
    ) -> Result<(), MalformedDecomposition>,
) -> Result<Vec<Disjunct>, MalformedDecomposition> {
    let set = gen.fresh_set();
    let mut base = Disjunct {
        vars: vec![PrefixVar::Set(set.clone())],
        rel: vec![FoFormula::rel_n(w, set.clone())],
        ..Disjunct::default()
    };
    let mut witnesses = Vec::with_capacity(inst.len());
    for coord in inst {
        let yi = gen.fresh_world();
        base.vars.push(PrefixVar::World(yi.clone()));
        base.rel.push(FoFormula::rel_ni(set.clone(), yi.clone()));
        witnesses.push((yi, coord));
    }
    universal(set, &mut base.rel, &mut base.at, gen)?;
    let mut out = vec![base];
    for (yi, coord) in witnesses {
        out = cross(out, build(coord, &yi, gen)?);
    }
    Ok(out)
}

/// Flattens a pseudo-boxed atom into guarded AT occurrences.  Each nabla
/// layer `~Box(~z; theta)` asserts that every world reachable through a
/// theta-respecting neighbourhood satisfies `z`, so it extends the guard
/// by one neighbourhood-plus-membership step.
fn flatten_zeta(
    z: &Formula,
    ctx: &ZetaCtx,
    gen: &mut VarGen,
    rel: &mut Vec<FoFormula>,
    at: &mut Vec<AtOcc>,
) -> Result<(), MalformedDecomposition> {
    match z {
        Formula::Var(p) => {
            match ctx {
                ZetaCtx::Point(w) => at.push(AtOcc::Point {
                    pred: p.clone(),
                    world: w.clone(),
                }),
                ZetaCtx::Chain { hole, guard } => at.push(AtOcc::Set {
                    pred: p.clone(),
                    hole: hole.clone(),
                    guard: guard.clone(),
                }),
            }
            Ok(())
        }
        Formula::Top => Ok(()),
        Formula::Bot => {
            // The requirement "bot throughout the guarded region" is the
            // predicate-free statement that the region is empty.
            match ctx {
                ZetaCtx::Point(_) => rel.push(FoFormula::False),
                ZetaCtx::Chain { hole, guard } => rel.push(FoFormula::forall_world(
                    hole.clone(),
                    FoFormula::implies(guard.clone(), FoFormula::False),
                )),
            }
            Ok(())
        }
        Formula::And(a, b) => {
            flatten_zeta(a, ctx, gen, rel, at)?;
            flatten_zeta(b, ctx, gen, rel, at)
        }
        Formula::Not(boxed) => {
            let Formula::Box { inst, univ } = boxed.as_ref() else {
                return Err(MalformedDecomposition(format!(
                    "{z:?} is not a pseudo-boxed atom"
                )));
            };
            let [Formula::Not(inner)] = inst.as_slice() else {
                return Err(MalformedDecomposition(format!(
                    "{z:?} is not a pseudo-boxed atom"
                )));
            };
            if !univ.is_pure() {
                return Err(MalformedDecomposition(format!(
                    "nabla index {univ:?} is not pure"
                )));
            }
            let set = gen.fresh_set();
            let next_hole = gen.fresh_world();
            let yg = gen.fresh_world();
            let theta_every = FoFormula::forall_world(
                yg.clone(),
                FoFormula::implies(
                    FoFormula::rel_ni(set.clone(), yg.clone()),
                    st_with(univ, &yg, gen),
                ),
            );
            let step = |from: &str| {
                FoFormula::exists_set(
                    set.clone(),
                    FoFormula::and_all([
                        FoFormula::rel_n(from, set.clone()),
                        FoFormula::rel_ni(set.clone(), next_hole.clone()),
                        theta_every.clone(),
                    ]),
                )
            };
            let guard = match ctx {
                ZetaCtx::Point(w) => step(w),
                ZetaCtx::Chain { hole, guard } => FoFormula::exists_world(
                    hole.clone(),
                    FoFormula::and(guard.clone(), step(hole)),
                ),
            };
            flatten_zeta(inner, &ZetaCtx::Chain { hole: next_hole, guard }, gen, rel, at)
        }
        _ => Err(MalformedDecomposition(format!("{z:?} is not a pseudo-boxed atom"))),
    }
}

/// The minimal valuation for `pred` in one disjunct: the union of its
/// point occurrences and guarded set occurrences, or the empty set when
/// the disjunct does not constrain the predicate.
pub fn minimal_valuation(
    nf: &AntecedentNormalForm,
    disjunct: usize,
    pred: &str,
    gen: &mut VarGen,
) -> PredicateDescriptor {
    let d = &nf.disjuncts[disjunct];
    let hole = gen.fresh_world();
    let mut parts = Vec::new();
    for occ in &d.at {
        if let AtOcc::Point { pred: p, world } = occ {
            if p == pred {
                parts.push(FoFormula::eq(hole.clone(), world.clone()));
            }
        }
    }
    for occ in &d.at {
        if let AtOcc::Set { pred: p, hole: h, guard } = occ {
            if p == pred {
                parts.push(rename_world_var(guard, h, &hole, gen));
            }
        }
    }
    let body = if parts.is_empty() {
        FoFormula::not(FoFormula::eq(hole.clone(), hole.clone()))
    } else {
        FoFormula::or_all(parts)
    };
    PredicateDescriptor { hole, body }
}

/// Instantiates the minimal valuations and assembles the correspondent:
/// one conjunct `forall vars (REL -> ~NEG | pos)` per disjunct, with the
/// substitution applied to both NEG and `pos`.
pub(crate) fn assemble_correspondent(
    nf: &AntecedentNormalForm,
    pos_base: &FoFormula,
    preds: &BTreeSet<String>,
    gen: &mut VarGen,
) -> FoFormula {
    let mut conjuncts = Vec::new();
    for (i, d) in nf.disjuncts.iter().enumerate() {
        let mut pos = if d.neg.is_empty() {
            pos_base.clone()
        } else {
            FoFormula::or(
                FoFormula::not(FoFormula::and_all(d.neg.iter().cloned())),
                pos_base.clone(),
            )
        };
        for p in preds {
            let sigma = minimal_valuation(nf, i, p, gen);
            pos = substitute_predicate(&pos, p, &sigma, gen);
        }
        let body = if d.rel.is_empty() {
            pos
        } else {
            FoFormula::implies(FoFormula::and_all(d.rel.iter().cloned()), pos)
        };
        let closed = d.vars.iter().rev().fold(body, |acc, v| match v {
            PrefixVar::World(y) => FoFormula::forall_world(y.clone(), acc),
            PrefixVar::Set(x) => FoFormula::forall_set(x.clone(), acc),
        });
        conjuncts.push(closed);
    }
    simplify_fo(&FoFormula::and_all(conjuncts))
}

/// Computes the local first-order frame correspondent of a Sahlqvist
/// formula by the minimal-valuation method.  The result has `x` as its
/// only free variable and contains no predicate atoms.
pub fn correspondent_direct(phi: &Formula) -> Result<FoFormula, CorrespondError> {
    let class = classify(phi);
    let (Some(ant), Some(cons)) = (&class.antecedent, &class.consequent) else {
        return Err(CorrespondError::NotSahlqvist {
            reason: class
                .reason
                .unwrap_or_else(|| "no antecedent decomposition".to_string()),
        });
    };
    let mut gen = VarGen::new();
    let nf = antecedent_normal_form(ant, "x", &mut gen)
        .map_err(|e| CorrespondError::Internal(e.to_string()))?;
    let pos_base = st_with(cons, "x", &mut gen);
    Ok(assemble_correspondent(&nf, &pos_base, &phi.vars(), &mut gen))
}
