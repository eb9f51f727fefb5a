//! Reduction to two-sorted normal bimodal logic.
//!
//! A neighbourhood frame induces a birelational structure over two sorts,
//! worlds and subsets, related by membership and by the neighbourhood
//! assignment.  The translation `tau` maps each instantial box to a
//! diamond over the neighbourhood relation whose body pairs one membership
//! diamond per instantial coordinate with a membership box for the
//! universal coordinate:
//!
//! `tau(Box(phi1, .., phin; phi))
//!    = <N>( <ni>tau(phi1) & .. & <ni>tau(phin) & [ni]tau(phi) )`.
//!
//! Propositional variables live at the world sort only, and the subset
//! sort ranges over the full powerset, not just the neighbourhoods in N.
//! On this language the classical Sahlqvist machinery applies sort by
//! sort, giving an independent route to the frame correspondent.

use crate::correspond::{
    assemble_correspondent, cross, AtOcc, CorrespondError, Disjunct, PrefixVar,
};
use crate::classify::classify;
use crate::fo::{FoFormula, VarGen};
use crate::formula::Formula;
use crate::semantics::{Frame, Valuation, WorldSet};
use std::collections::BTreeMap;
use thiserror::Error;

/// Formulas evaluated at worlds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WorldFormula {
    Var(String),
    Bot,
    Top,
    Not(Box<WorldFormula>),
    And(Box<WorldFormula>, Box<WorldFormula>),
    Or(Box<WorldFormula>, Box<WorldFormula>),
    DiamondN(Box<SubsetFormula>),
    BoxN(Box<SubsetFormula>),
}

/// Formulas evaluated at subsets.  The subset sort has no variables or
/// constants of its own; every branch passes through a membership modality
/// back to the world sort.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubsetFormula {
    Not(Box<SubsetFormula>),
    And(Box<SubsetFormula>, Box<SubsetFormula>),
    Or(Box<SubsetFormula>, Box<SubsetFormula>),
    DiamondNi(Box<WorldFormula>),
    BoxNi(Box<WorldFormula>),
}

/// A formula of either sort.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BimodalFormula {
    World(WorldFormula),
    Subset(SubsetFormula),
}

/// An evaluation point of either sort.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BiPoint {
    World(usize),
    Subset(WorldSet),
}

impl WorldFormula {
    pub fn var(name: impl Into<String>) -> Self {
        WorldFormula::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: WorldFormula) -> Self {
        WorldFormula::Not(Box::new(f))
    }

    pub fn and(a: WorldFormula, b: WorldFormula) -> Self {
        WorldFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: WorldFormula, b: WorldFormula) -> Self {
        WorldFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn diamond_n(s: SubsetFormula) -> Self {
        WorldFormula::DiamondN(Box::new(s))
    }

    pub fn box_n(s: SubsetFormula) -> Self {
        WorldFormula::BoxN(Box::new(s))
    }
}

impl SubsetFormula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: SubsetFormula) -> Self {
        SubsetFormula::Not(Box::new(f))
    }

    pub fn and(a: SubsetFormula, b: SubsetFormula) -> Self {
        SubsetFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: SubsetFormula, b: SubsetFormula) -> Self {
        SubsetFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn diamond_ni(w: WorldFormula) -> Self {
        SubsetFormula::DiamondNi(Box::new(w))
    }

    pub fn box_ni(w: WorldFormula) -> Self {
        SubsetFormula::BoxNi(Box::new(w))
    }
}

/// Translates an instantial-neighbourhood formula to the world sort.
/// Implication and equivalence are expanded through or/not, matching the
/// connective inventory of the bimodal language.
pub fn tau(phi: &Formula) -> WorldFormula {
    match phi {
        Formula::Var(p) => WorldFormula::var(p.clone()),
        Formula::Bot => WorldFormula::Bot,
        Formula::Top => WorldFormula::Top,
        Formula::Not(f) => WorldFormula::not(tau(f)),
        Formula::And(a, b) => WorldFormula::and(tau(a), tau(b)),
        Formula::Or(a, b) => WorldFormula::or(tau(a), tau(b)),
        Formula::Implies(a, b) => {
            WorldFormula::or(WorldFormula::not(tau(a)), tau(b))
        }
        Formula::Iff(a, b) => {
            let ta = tau(a);
            let tb = tau(b);
            WorldFormula::and(
                WorldFormula::or(WorldFormula::not(ta.clone()), tb.clone()),
                WorldFormula::or(WorldFormula::not(tb), ta),
            )
        }
        Formula::Box { inst, univ } => {
            let mut parts: Vec<SubsetFormula> =
                inst.iter().map(|f| SubsetFormula::diamond_ni(tau(f))).collect();
            parts.push(SubsetFormula::box_ni(tau(univ)));
            let mut it = parts.into_iter();
            let first = it.next().expect("at least the universal conjunct");
            WorldFormula::diamond_n(it.fold(first, SubsetFormula::and))
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BimodalError {
    #[error("point sort does not match formula sort")]
    SortMismatch,
    #[error("world {0} is not in the frame")]
    UnknownWorld(usize),
    #[error("subset contains worlds outside the frame")]
    InvalidSubset,
}

/// Evaluates a bimodal formula at a point of the induced two-sorted
/// structure.  Subset modalities range over the full powerset.
pub fn bimodal_satisfies(
    frame: &Frame,
    valuation: &Valuation,
    point: BiPoint,
    chi: &BimodalFormula,
) -> Result<bool, BimodalError> {
    match (point, chi) {
        (BiPoint::World(w), BimodalFormula::World(f)) => {
            if w >= frame.num_worlds() {
                return Err(BimodalError::UnknownWorld(w));
            }
            Ok(eval_w(frame, valuation, w, f))
        }
        (BiPoint::Subset(s), BimodalFormula::Subset(f)) => {
            if s.0 >> frame.num_worlds() != 0 {
                return Err(BimodalError::InvalidSubset);
            }
            Ok(eval_s(frame, valuation, s, f))
        }
        _ => Err(BimodalError::SortMismatch),
    }
}

fn eval_w(frame: &Frame, val: &Valuation, w: usize, f: &WorldFormula) -> bool {
    match f {
        WorldFormula::Var(p) => val.get(p).contains(w),
        WorldFormula::Bot => false,
        WorldFormula::Top => true,
        WorldFormula::Not(g) => !eval_w(frame, val, w, g),
        WorldFormula::And(a, b) => {
            eval_w(frame, val, w, a) && eval_w(frame, val, w, b)
        }
        WorldFormula::Or(a, b) => eval_w(frame, val, w, a) || eval_w(frame, val, w, b),
        WorldFormula::DiamondN(s) => frame
            .subsets()
            .any(|x| frame.rel_n(w, x) && eval_s(frame, val, x, s)),
        WorldFormula::BoxN(s) => frame
            .subsets()
            .all(|x| !frame.rel_n(w, x) || eval_s(frame, val, x, s)),
    }
}

fn eval_s(frame: &Frame, val: &Valuation, set: WorldSet, f: &SubsetFormula) -> bool {
    match f {
        SubsetFormula::Not(g) => !eval_s(frame, val, set, g),
        SubsetFormula::And(a, b) => {
            eval_s(frame, val, set, a) && eval_s(frame, val, set, b)
        }
        SubsetFormula::Or(a, b) => {
            eval_s(frame, val, set, a) || eval_s(frame, val, set, b)
        }
        SubsetFormula::DiamondNi(w) => set
            .members(frame.num_worlds())
            .any(|y| eval_w(frame, val, y, w)),
        SubsetFormula::BoxNi(w) => set
            .members(frame.num_worlds())
            .all(|y| eval_w(frame, val, y, w)),
    }
}

fn occurrences_w(f: &WorldFormula, positive: bool, out: &mut BTreeMap<String, (bool, bool)>) {
    match f {
        WorldFormula::Var(p) => {
            let e = out.entry(p.clone()).or_insert((false, false));
            if positive {
                e.0 = true;
            } else {
                e.1 = true;
            }
        }
        WorldFormula::Bot | WorldFormula::Top => {}
        WorldFormula::Not(g) => occurrences_w(g, !positive, out),
        WorldFormula::And(a, b) | WorldFormula::Or(a, b) => {
            occurrences_w(a, positive, out);
            occurrences_w(b, positive, out);
        }
        WorldFormula::DiamondN(s) | WorldFormula::BoxN(s) => {
            occurrences_s(s, positive, out)
        }
    }
}

fn occurrences_s(f: &SubsetFormula, positive: bool, out: &mut BTreeMap<String, (bool, bool)>) {
    match f {
        SubsetFormula::Not(g) => occurrences_s(g, !positive, out),
        SubsetFormula::And(a, b) | SubsetFormula::Or(a, b) => {
            occurrences_s(a, positive, out);
            occurrences_s(b, positive, out);
        }
        SubsetFormula::DiamondNi(w) | SubsetFormula::BoxNi(w) => {
            occurrences_w(w, positive, out)
        }
    }
}

fn is_positive_w(f: &WorldFormula) -> bool {
    let mut occ = BTreeMap::new();
    occurrences_w(f, true, &mut occ);
    occ.values().all(|(_, neg)| !neg)
}

fn is_negative_w(f: &WorldFormula) -> bool {
    let mut occ = BTreeMap::new();
    occurrences_w(f, true, &mut occ);
    occ.values().all(|(pos, _)| !pos)
}

fn is_negative_s(f: &SubsetFormula) -> bool {
    let mut occ = BTreeMap::new();
    occurrences_s(f, true, &mut occ);
    occ.values().all(|(pos, _)| !pos)
}

/// Negation normal form at the world sort; `positive = false` computes the
/// normal form of the negation.  In the result, negation appears only
/// directly on variables.
pub fn nnf_w(f: &WorldFormula, positive: bool) -> WorldFormula {
    match (f, positive) {
        (WorldFormula::Var(_), true) => f.clone(),
        (WorldFormula::Var(_), false) => WorldFormula::not(f.clone()),
        (WorldFormula::Bot, true) | (WorldFormula::Top, false) => WorldFormula::Bot,
        (WorldFormula::Top, true) | (WorldFormula::Bot, false) => WorldFormula::Top,
        (WorldFormula::Not(g), _) => nnf_w(g, !positive),
        (WorldFormula::And(a, b), true) => {
            WorldFormula::and(nnf_w(a, true), nnf_w(b, true))
        }
        (WorldFormula::And(a, b), false) => {
            WorldFormula::or(nnf_w(a, false), nnf_w(b, false))
        }
        (WorldFormula::Or(a, b), true) => {
            WorldFormula::or(nnf_w(a, true), nnf_w(b, true))
        }
        (WorldFormula::Or(a, b), false) => {
            WorldFormula::and(nnf_w(a, false), nnf_w(b, false))
        }
        (WorldFormula::DiamondN(s), true) => WorldFormula::diamond_n(nnf_s(s, true)),
        (WorldFormula::DiamondN(s), false) => WorldFormula::box_n(nnf_s(s, false)),
        (WorldFormula::BoxN(s), true) => WorldFormula::box_n(nnf_s(s, true)),
        (WorldFormula::BoxN(s), false) => WorldFormula::diamond_n(nnf_s(s, false)),
    }
}

fn nnf_s(f: &SubsetFormula, positive: bool) -> SubsetFormula {
    match (f, positive) {
        (SubsetFormula::Not(g), _) => nnf_s(g, !positive),
        (SubsetFormula::And(a, b), true) => {
            SubsetFormula::and(nnf_s(a, true), nnf_s(b, true))
        }
        (SubsetFormula::And(a, b), false) => {
            SubsetFormula::or(nnf_s(a, false), nnf_s(b, false))
        }
        (SubsetFormula::Or(a, b), true) => {
            SubsetFormula::or(nnf_s(a, true), nnf_s(b, true))
        }
        (SubsetFormula::Or(a, b), false) => {
            SubsetFormula::and(nnf_s(a, false), nnf_s(b, false))
        }
        (SubsetFormula::DiamondNi(w), true) => SubsetFormula::diamond_ni(nnf_w(w, true)),
        (SubsetFormula::DiamondNi(w), false) => SubsetFormula::box_ni(nnf_w(w, false)),
        (SubsetFormula::BoxNi(w), true) => SubsetFormula::box_ni(nnf_w(w, true)),
        (SubsetFormula::BoxNi(w), false) => SubsetFormula::diamond_ni(nnf_w(w, false)),
    }
}

/// Standard translation of a world-sort formula at world variable `v`.
pub fn st_w(f: &WorldFormula, v: &str, gen: &mut VarGen) -> FoFormula {
    match f {
        WorldFormula::Var(p) => FoFormula::pred(p.clone(), v),
        WorldFormula::Bot => FoFormula::False,
        WorldFormula::Top => FoFormula::True,
        WorldFormula::Not(g) => FoFormula::not(st_w(g, v, gen)),
        WorldFormula::And(a, b) => FoFormula::and(st_w(a, v, gen), st_w(b, v, gen)),
        WorldFormula::Or(a, b) => FoFormula::or(st_w(a, v, gen), st_w(b, v, gen)),
        WorldFormula::DiamondN(s) => {
            let x = gen.fresh_set();
            FoFormula::exists_set(
                x.clone(),
                FoFormula::and(FoFormula::rel_n(v, x.clone()), st_s(s, &x, gen)),
            )
        }
        WorldFormula::BoxN(s) => {
            let x = gen.fresh_set();
            FoFormula::forall_set(
                x.clone(),
                FoFormula::implies(FoFormula::rel_n(v, x.clone()), st_s(s, &x, gen)),
            )
        }
    }
}

/// Standard translation of a subset-sort formula at subset variable `v`.
pub fn st_s(f: &SubsetFormula, v: &str, gen: &mut VarGen) -> FoFormula {
    match f {
        SubsetFormula::Not(g) => FoFormula::not(st_s(g, v, gen)),
        SubsetFormula::And(a, b) => FoFormula::and(st_s(a, v, gen), st_s(b, v, gen)),
        SubsetFormula::Or(a, b) => FoFormula::or(st_s(a, v, gen), st_s(b, v, gen)),
        SubsetFormula::DiamondNi(w) => {
            let y = gen.fresh_world();
            FoFormula::exists_world(
                y.clone(),
                FoFormula::and(FoFormula::rel_ni(v, y.clone()), st_w(w, &y, gen)),
            )
        }
        SubsetFormula::BoxNi(w) => {
            let y = gen.fresh_world();
            FoFormula::forall_world(
                y.clone(),
                FoFormula::implies(FoFormula::rel_ni(v, y.clone()), st_w(w, &y, gen)),
            )
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("antecedent is not bimodal Sahlqvist: {0}")]
pub struct NotBimodalSahlqvist(String);

/// A box chain under analysis: every world (or subset) satisfying `guard`
/// at the hole variable must satisfy the remaining body.
struct ChainCtx {
    hole: String,
    guard: FoFormula,
}

/// Decomposes an NNF world-sort antecedent at world variable `v` into
/// disjuncts of relational atoms, AT occurrences and negative parts,
/// mirroring the direct route's normal form.
fn analyse_w(
    f: &WorldFormula,
    v: &str,
    gen: &mut VarGen,
) -> Result<Vec<Disjunct>, NotBimodalSahlqvist> {
    match f {
        WorldFormula::Top => Ok(vec![Disjunct::default()]),
        WorldFormula::Bot => Ok(vec![Disjunct {
            rel: vec![FoFormula::False],
            ..Disjunct::default()
        }]),
        WorldFormula::Var(p) => Ok(vec![Disjunct {
            at: vec![AtOcc::Point { pred: p.clone(), world: v.to_string() }],
            ..Disjunct::default()
        }]),
        f if is_negative_w(f) => Ok(vec![Disjunct {
            neg: vec![st_w(f, v, gen)],
            ..Disjunct::default()
        }]),
        WorldFormula::And(a, b) => {
            Ok(cross(analyse_w(a, v, gen)?, analyse_w(b, v, gen)?))
        }
        WorldFormula::Or(a, b) => {
            let mut out = analyse_w(a, v, gen)?;
            out.extend(analyse_w(b, v, gen)?);
            Ok(out)
        }
        WorldFormula::DiamondN(s) => {
            let x = gen.fresh_set();
            let base = Disjunct {
                vars: vec![PrefixVar::Set(x.clone())],
                rel: vec![FoFormula::rel_n(v, x.clone())],
                ..Disjunct::default()
            };
            Ok(cross(vec![base], analyse_s(s, &x, gen)?))
        }
        WorldFormula::BoxN(s) => {
            let hole = gen.fresh_set();
            let guard = FoFormula::rel_n(v, hole.clone());
            let mut d = Disjunct::default();
            flatten_s(s, &ChainCtx { hole, guard }, gen, &mut d)?;
            Ok(vec![d])
        }
        WorldFormula::Not(_) => Err(NotBimodalSahlqvist(format!(
            "negation of a non-negative formula in antecedent position: {f:?}"
        ))),
    }
}

fn analyse_s(
    f: &SubsetFormula,
    v: &str,
    gen: &mut VarGen,
) -> Result<Vec<Disjunct>, NotBimodalSahlqvist> {
    match f {
        f if is_negative_s(f) => Ok(vec![Disjunct {
            neg: vec![st_s(f, v, gen)],
            ..Disjunct::default()
        }]),
        SubsetFormula::And(a, b) => {
            Ok(cross(analyse_s(a, v, gen)?, analyse_s(b, v, gen)?))
        }
        SubsetFormula::Or(a, b) => {
            let mut out = analyse_s(a, v, gen)?;
            out.extend(analyse_s(b, v, gen)?);
            Ok(out)
        }
        SubsetFormula::DiamondNi(w) => {
            let y = gen.fresh_world();
            let base = Disjunct {
                vars: vec![PrefixVar::World(y.clone())],
                rel: vec![FoFormula::rel_ni(v, y.clone())],
                ..Disjunct::default()
            };
            Ok(cross(vec![base], analyse_w(w, &y, gen)?))
        }
        SubsetFormula::BoxNi(w) => {
            let hole = gen.fresh_world();
            let guard = FoFormula::rel_ni(v, hole.clone());
            let mut d = Disjunct::default();
            flatten_w(w, &ChainCtx { hole, guard }, gen, &mut d)?;
            Ok(vec![d])
        }
        SubsetFormula::Not(_) => Err(NotBimodalSahlqvist(format!(
            "negation of a non-negative formula in antecedent position: {f:?}"
        ))),
    }
}

/// Inside a box chain, world sort: the body must hold at every world
/// satisfying the guard.
fn flatten_w(
    f: &WorldFormula,
    ctx: &ChainCtx,
    gen: &mut VarGen,
    d: &mut Disjunct,
) -> Result<(), NotBimodalSahlqvist> {
    match f {
        WorldFormula::Top => Ok(()),
        WorldFormula::Bot => {
            d.rel.push(FoFormula::forall_world(
                ctx.hole.clone(),
                FoFormula::implies(ctx.guard.clone(), FoFormula::False),
            ));
            Ok(())
        }
        WorldFormula::Var(p) => {
            d.at.push(AtOcc::Set {
                pred: p.clone(),
                hole: ctx.hole.clone(),
                guard: ctx.guard.clone(),
            });
            Ok(())
        }
        f if is_negative_w(f) => {
            d.neg.push(FoFormula::forall_world(
                ctx.hole.clone(),
                FoFormula::implies(ctx.guard.clone(), st_w(f, &ctx.hole, gen)),
            ));
            Ok(())
        }
        WorldFormula::And(a, b) => {
            flatten_w(a, ctx, gen, d)?;
            flatten_w(b, ctx, gen, d)
        }
        WorldFormula::Or(a, b) => {
            // A box distributes over a disjunction only when one side is
            // pure: that side folds into the guard as an exception.
            if is_negative_w(a) && is_positive_w(a) {
                let guard = FoFormula::and(
                    ctx.guard.clone(),
                    FoFormula::not(st_w(a, &ctx.hole, gen)),
                );
                flatten_w(b, &ChainCtx { hole: ctx.hole.clone(), guard }, gen, d)
            } else if is_negative_w(b) && is_positive_w(b) {
                let guard = FoFormula::and(
                    ctx.guard.clone(),
                    FoFormula::not(st_w(b, &ctx.hole, gen)),
                );
                flatten_w(a, &ChainCtx { hole: ctx.hole.clone(), guard }, gen, d)
            } else {
                Err(NotBimodalSahlqvist(format!(
                    "disjunction without a pure side under a box: {f:?}"
                )))
            }
        }
        WorldFormula::BoxN(s) => {
            let next = gen.fresh_set();
            let guard = FoFormula::exists_world(
                ctx.hole.clone(),
                FoFormula::and(
                    ctx.guard.clone(),
                    FoFormula::rel_n(ctx.hole.clone(), next.clone()),
                ),
            );
            flatten_s(s, &ChainCtx { hole: next, guard }, gen, d)
        }
        WorldFormula::DiamondN(_) | WorldFormula::Not(_) => Err(NotBimodalSahlqvist(
            format!("positive non-atom under a box: {f:?}"),
        )),
    }
}

/// Inside a box chain, subset sort.
fn flatten_s(
    f: &SubsetFormula,
    ctx: &ChainCtx,
    gen: &mut VarGen,
    d: &mut Disjunct,
) -> Result<(), NotBimodalSahlqvist> {
    match f {
        f if is_negative_s(f) => {
            d.neg.push(FoFormula::forall_set(
                ctx.hole.clone(),
                FoFormula::implies(ctx.guard.clone(), st_s(f, &ctx.hole, gen)),
            ));
            Ok(())
        }
        SubsetFormula::And(a, b) => {
            flatten_s(a, ctx, gen, d)?;
            flatten_s(b, ctx, gen, d)
        }
        SubsetFormula::Or(a, b) => {
            if is_negative_s(a) && is_positive_s(a) {
                let guard = FoFormula::and(
                    ctx.guard.clone(),
                    FoFormula::not(st_s(a, &ctx.hole, gen)),
                );
                flatten_s(b, &ChainCtx { hole: ctx.hole.clone(), guard }, gen, d)
            } else if is_negative_s(b) && is_positive_s(b) {
                let guard = FoFormula::and(
                    ctx.guard.clone(),
                    FoFormula::not(st_s(b, &ctx.hole, gen)),
                );
                flatten_s(a, &ChainCtx { hole: ctx.hole.clone(), guard }, gen, d)
            } else {
                Err(NotBimodalSahlqvist(format!(
                    "disjunction without a pure side under a box: {f:?}"
                )))
            }
        }
        SubsetFormula::BoxNi(w) => {
            let next = gen.fresh_world();
            let guard = FoFormula::exists_set(
                ctx.hole.clone(),
                FoFormula::and(
                    ctx.guard.clone(),
                    FoFormula::rel_ni(ctx.hole.clone(), next.clone()),
                ),
            );
            flatten_w(w, &ChainCtx { hole: next, guard }, gen, d)
        }
        SubsetFormula::DiamondNi(_) | SubsetFormula::Not(_) => Err(NotBimodalSahlqvist(
            format!("positive non-atom under a box: {f:?}"),
        )),
    }
}

fn is_positive_s(f: &SubsetFormula) -> bool {
    let mut occ = BTreeMap::new();
    occurrences_s(f, true, &mut occ);
    occ.values().all(|(_, neg)| !neg)
}

/// Splits an implication-shaped world formula `~a | b` into antecedent and
/// consequent.
fn implication_parts(chi: &WorldFormula) -> Option<(&WorldFormula, &WorldFormula)> {
    let WorldFormula::Or(l, r) = chi else {
        return None;
    };
    let WorldFormula::Not(ant) = l.as_ref() else {
        return None;
    };
    Some((ant, r))
}

/// True iff `chi` is a Sahlqvist implication of the bimodal language: an
/// implication (in the form `~a | b`) with positive consequent whose
/// antecedent decomposes into boxed atoms, negative formulas, bottom and
/// top under conjunction, disjunction and diamonds.
pub fn is_bimodal_sahlqvist(chi: &WorldFormula) -> bool {
    let Some((ant, cons)) = implication_parts(chi) else {
        return false;
    };
    if !is_positive_w(cons) {
        return false;
    }
    analyse_w(&nnf_w(ant, true), "x", &mut VarGen::new()).is_ok()
}

/// Computes the frame correspondent of a Sahlqvist formula by translating
/// to the bimodal language and running the classical algorithm there.
/// Shares the minimal-valuation instantiation and assembly with the direct
/// route, so any divergence between the routes lies in the antecedent
/// analysis.
pub fn correspondent_via_bimodal(phi: &Formula) -> Result<FoFormula, CorrespondError> {
    let class = classify(phi);
    if class.antecedent.is_none() {
        return Err(CorrespondError::NotSahlqvist {
            reason: class
                .reason
                .unwrap_or_else(|| "no antecedent decomposition".to_string()),
        });
    }
    let chi = tau(phi);
    let (ant, cons) = implication_parts(&chi)
        .expect("translation of an implication is implication-shaped");
    let mut gen = VarGen::new();
    let disjuncts = analyse_w(&nnf_w(ant, true), "x", &mut gen).map_err(|e| {
        CorrespondError::Internal(format!(
            "{e}; the translation of a classified formula must be bimodal Sahlqvist"
        ))
    })?;
    let nf = crate::correspond::AntecedentNormalForm { disjuncts };
    let pos_base = st_w(cons, "x", &mut gen);
    Ok(assemble_correspondent(&nf, &pos_base, &phi.vars(), &mut gen))
}
