//! Two-sorted first-order frame language.
//!
//! A neighbourhood frame induces a two-sorted structure: world elements,
//! subset elements (all of the powerset), the membership relation `R_ni`
//! from subsets to worlds and the neighbourhood relation `R_N` from worlds
//! to subsets.  Formulas here speak about that structure with one unary
//! predicate per propositional variable.  Terms are variables only; the
//! constants `true`/`false` coexist with their `x = x` / `~(x = x)`
//! encodings, and the simplifier folds the latter into the former.

use crate::semantics::{Frame, Valuation, WorldSet};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Sort of a first-order variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sort {
    World,
    Set,
}

/// A formula of the two-sorted frame language.  Variable sorts are fixed by
/// position: `Pred`, `EqWorld` and the `world` fields take world variables,
/// `set` fields take subset variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoFormula {
    /// `P(x)`: the predicate for a propositional variable holds at a world.
    Pred { name: String, arg: String },
    /// `R_ni(X, y)`: world `y` is a member of subset `X`.
    RelNi { set: String, world: String },
    /// `R_N(x, X)`: subset `X` is a neighbourhood of world `x`.
    RelN { world: String, set: String },
    EqWorld(String, String),
    True,
    False,
    Not(Box<FoFormula>),
    And(Box<FoFormula>, Box<FoFormula>),
    Or(Box<FoFormula>, Box<FoFormula>),
    Implies(Box<FoFormula>, Box<FoFormula>),
    ForallWorld(String, Box<FoFormula>),
    ExistsWorld(String, Box<FoFormula>),
    ForallSet(String, Box<FoFormula>),
    ExistsSet(String, Box<FoFormula>),
}

impl FoFormula {
    pub fn pred(name: impl Into<String>, arg: impl Into<String>) -> Self {
        FoFormula::Pred { name: name.into(), arg: arg.into() }
    }

    pub fn rel_ni(set: impl Into<String>, world: impl Into<String>) -> Self {
        FoFormula::RelNi { set: set.into(), world: world.into() }
    }

    pub fn rel_n(world: impl Into<String>, set: impl Into<String>) -> Self {
        FoFormula::RelN { world: world.into(), set: set.into() }
    }

    pub fn eq(a: impl Into<String>, b: impl Into<String>) -> Self {
        FoFormula::EqWorld(a.into(), b.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: FoFormula) -> Self {
        FoFormula::Not(Box::new(f))
    }

    pub fn and(a: FoFormula, b: FoFormula) -> Self {
        FoFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: FoFormula, b: FoFormula) -> Self {
        FoFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: FoFormula, b: FoFormula) -> Self {
        FoFormula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall_world(v: impl Into<String>, f: FoFormula) -> Self {
        FoFormula::ForallWorld(v.into(), Box::new(f))
    }

    pub fn exists_world(v: impl Into<String>, f: FoFormula) -> Self {
        FoFormula::ExistsWorld(v.into(), Box::new(f))
    }

    pub fn forall_set(v: impl Into<String>, f: FoFormula) -> Self {
        FoFormula::ForallSet(v.into(), Box::new(f))
    }

    pub fn exists_set(v: impl Into<String>, f: FoFormula) -> Self {
        FoFormula::ExistsSet(v.into(), Box::new(f))
    }

    /// Left-nested conjunction of all parts; `true` when empty.
    pub fn and_all(parts: impl IntoIterator<Item = FoFormula>) -> FoFormula {
        let mut it = parts.into_iter();
        match it.next() {
            None => FoFormula::True,
            Some(first) => it.fold(first, FoFormula::and),
        }
    }

    /// Left-nested disjunction of all parts; `false` when empty.
    pub fn or_all(parts: impl IntoIterator<Item = FoFormula>) -> FoFormula {
        let mut it = parts.into_iter();
        match it.next() {
            None => FoFormula::False,
            Some(first) => it.fold(first, FoFormula::or),
        }
    }

    /// Free variables with the sorts they are used at.  A variable used at
    /// both sorts appears twice.
    pub fn free_vars(&self) -> BTreeSet<(String, Sort)> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<(String, Sort)>) {
        let mut note = |name: &str, sort: Sort, bound: &[String]| {
            if !bound.iter().any(|b| b == name) {
                out.insert((name.to_string(), sort));
            }
        };
        match self {
            FoFormula::Pred { arg, .. } => note(arg, Sort::World, bound),
            FoFormula::RelNi { set, world } => {
                note(set, Sort::Set, bound);
                note(world, Sort::World, bound);
            }
            FoFormula::RelN { world, set } => {
                note(world, Sort::World, bound);
                note(set, Sort::Set, bound);
            }
            FoFormula::EqWorld(a, b) => {
                note(a, Sort::World, bound);
                note(b, Sort::World, bound);
            }
            FoFormula::True | FoFormula::False => {}
            FoFormula::Not(f) => f.collect_free(bound, out),
            FoFormula::And(a, b) | FoFormula::Or(a, b) | FoFormula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            FoFormula::ForallWorld(v, f)
            | FoFormula::ExistsWorld(v, f)
            | FoFormula::ForallSet(v, f)
            | FoFormula::ExistsSet(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// True when `name` occurs free, at either sort.
    pub fn has_free(&self, name: &str) -> bool {
        self.free_vars().iter().any(|(v, _)| v == name)
    }

    /// Predicate names occurring in the formula.
    pub fn pred_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        fn walk(f: &FoFormula, out: &mut BTreeSet<String>) {
            match f {
                FoFormula::Pred { name, .. } => {
                    out.insert(name.clone());
                }
                FoFormula::RelNi { .. }
                | FoFormula::RelN { .. }
                | FoFormula::EqWorld(..)
                | FoFormula::True
                | FoFormula::False => {}
                FoFormula::Not(a) => walk(a, out),
                FoFormula::And(a, b) | FoFormula::Or(a, b) | FoFormula::Implies(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                FoFormula::ForallWorld(_, a)
                | FoFormula::ExistsWorld(_, a)
                | FoFormula::ForallSet(_, a)
                | FoFormula::ExistsSet(_, a) => walk(a, out),
            }
        }
        walk(self, &mut out);
        out
    }
}

/// Source of globally fresh variable names.  One counter serves both sorts
/// so every generated name in a run is distinct: world variables are
/// `y0, y1, ..`, subset variables `X0, X1, ..`.
#[derive(Debug, Default)]
pub struct VarGen {
    next: usize,
}

impl VarGen {
    pub fn new() -> Self {
        VarGen { next: 0 }
    }

    pub fn fresh_world(&mut self) -> String {
        let k = self.next;
        self.next += 1;
        format!("y{k}")
    }

    pub fn fresh_set(&mut self) -> String {
        let k = self.next;
        self.next += 1;
        format!("X{k}")
    }

    pub fn fresh(&mut self, sort: Sort) -> String {
        match sort {
            Sort::World => self.fresh_world(),
            Sort::Set => self.fresh_set(),
        }
    }
}

/// The two-sorted structure induced by a neighbourhood frame: world
/// elements, every subset of the worlds, and the two relations.
#[derive(Clone, Copy, Debug)]
pub struct TwoSortedFrame<'a> {
    frame: &'a Frame,
}

impl<'a> TwoSortedFrame<'a> {
    pub fn new(frame: &'a Frame) -> Self {
        TwoSortedFrame { frame }
    }

    pub fn worlds(&self) -> impl Iterator<Item = usize> {
        self.frame.worlds()
    }

    pub fn subsets(&self) -> impl Iterator<Item = WorldSet> {
        self.frame.subsets()
    }

    /// Membership: `R_ni(X, w)` holds iff `w ∈ X`.
    pub fn rel_ni(&self, set: WorldSet, w: usize) -> bool {
        set.contains(w)
    }

    /// Neighbourhood: `R_N(w, X)` holds iff `X ∈ N(w)`.
    pub fn rel_n(&self, w: usize, set: WorldSet) -> bool {
        self.frame.rel_n(w, set)
    }
}

/// A sorted value for a first-order variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SortedValue {
    World(usize),
    Set(WorldSet),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FoEvalError {
    #[error("variable '{var}' is used at the wrong sort")]
    UnsortedVariable { var: String },
    #[error("no value assigned to free variable '{var}'")]
    MissingAssignment { var: String },
}

/// Evaluates `alpha` over the two-sorted structure of `frame`, reading each
/// `Pred` from the valuation (absent names denote the empty set) and free
/// variables from `assignment`.  Subset quantifiers range over the full
/// powerset of the worlds.
pub fn eval_fo(
    frame: &Frame,
    predicates: &Valuation,
    assignment: &BTreeMap<String, SortedValue>,
    alpha: &FoFormula,
) -> Result<bool, FoEvalError> {
    let structure = TwoSortedFrame::new(frame);
    let mut env: Vec<(&str, SortedValue)> =
        assignment.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    eval(&structure, predicates, &mut env, alpha)
}

fn lookup(env: &[(&str, SortedValue)], var: &str) -> Result<SortedValue, FoEvalError> {
    env.iter()
        .rev()
        .find(|(name, _)| *name == var)
        .map(|(_, v)| *v)
        .ok_or_else(|| FoEvalError::MissingAssignment { var: var.to_string() })
}

fn world_of(env: &[(&str, SortedValue)], var: &str) -> Result<usize, FoEvalError> {
    match lookup(env, var)? {
        SortedValue::World(w) => Ok(w),
        SortedValue::Set(_) => Err(FoEvalError::UnsortedVariable { var: var.to_string() }),
    }
}

fn set_of(env: &[(&str, SortedValue)], var: &str) -> Result<WorldSet, FoEvalError> {
    match lookup(env, var)? {
        SortedValue::Set(s) => Ok(s),
        SortedValue::World(_) => Err(FoEvalError::UnsortedVariable { var: var.to_string() }),
    }
}

fn eval<'a>(
    structure: &TwoSortedFrame<'_>,
    predicates: &Valuation,
    env: &mut Vec<(&'a str, SortedValue)>,
    alpha: &'a FoFormula,
) -> Result<bool, FoEvalError> {
    match alpha {
        FoFormula::Pred { name, arg } => {
            let w = world_of(env, arg)?;
            Ok(predicates.get(name).contains(w))
        }
        FoFormula::RelNi { set, world } => {
            Ok(structure.rel_ni(set_of(env, set)?, world_of(env, world)?))
        }
        FoFormula::RelN { world, set } => {
            Ok(structure.rel_n(world_of(env, world)?, set_of(env, set)?))
        }
        FoFormula::EqWorld(a, b) => Ok(world_of(env, a)? == world_of(env, b)?),
        FoFormula::True => Ok(true),
        FoFormula::False => Ok(false),
        FoFormula::Not(f) => Ok(!eval(structure, predicates, env, f)?),
        FoFormula::And(a, b) => {
            Ok(eval(structure, predicates, env, a)? && eval(structure, predicates, env, b)?)
        }
        FoFormula::Or(a, b) => {
            Ok(eval(structure, predicates, env, a)? || eval(structure, predicates, env, b)?)
        }
        FoFormula::Implies(a, b) => {
            Ok(!eval(structure, predicates, env, a)? || eval(structure, predicates, env, b)?)
        }
        FoFormula::ForallWorld(v, f) => {
            quantify_world(structure, predicates, env, v, f, true)
        }
        FoFormula::ExistsWorld(v, f) => {
            quantify_world(structure, predicates, env, v, f, false)
        }
        FoFormula::ForallSet(v, f) => quantify_set(structure, predicates, env, v, f, true),
        FoFormula::ExistsSet(v, f) => quantify_set(structure, predicates, env, v, f, false),
    }
}

fn quantify_world<'a>(
    structure: &TwoSortedFrame<'_>,
    predicates: &Valuation,
    env: &mut Vec<(&'a str, SortedValue)>,
    v: &'a str,
    body: &'a FoFormula,
    universal: bool,
) -> Result<bool, FoEvalError> {
    env.push((v, SortedValue::World(0)));
    let mut out = universal;
    for w in structure.worlds() {
        env.last_mut().unwrap().1 = SortedValue::World(w);
        match eval(structure, predicates, env, body) {
            Ok(b) if b != universal => {
                out = b;
                break;
            }
            Ok(_) => {}
            Err(e) => {
                env.pop();
                return Err(e);
            }
        }
    }
    env.pop();
    Ok(out)
}

fn quantify_set<'a>(
    structure: &TwoSortedFrame<'_>,
    predicates: &Valuation,
    env: &mut Vec<(&'a str, SortedValue)>,
    v: &'a str,
    body: &'a FoFormula,
    universal: bool,
) -> Result<bool, FoEvalError> {
    env.push((v, SortedValue::Set(WorldSet::EMPTY)));
    let mut out = universal;
    for s in structure.subsets() {
        env.last_mut().unwrap().1 = SortedValue::Set(s);
        match eval(structure, predicates, env, body) {
            Ok(b) if b != universal => {
                out = b;
                break;
            }
            Ok(_) => {}
            Err(e) => {
                env.pop();
                return Err(e);
            }
        }
    }
    env.pop();
    Ok(out)
}

/// A unary predicate given as a formula with one designated free world
/// variable, `λ hole. body`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateDescriptor {
    pub hole: String,
    pub body: FoFormula,
}

/// Replaces each free occurrence of world variable `from` with `to`.
/// Binders that would capture `to` are renamed first.
pub fn rename_world_var(
    alpha: &FoFormula,
    from: &str,
    to: &str,
    gen: &mut VarGen,
) -> FoFormula {
    let swap = |v: &str| -> String {
        if v == from {
            to.to_string()
        } else {
            v.to_string()
        }
    };
    match alpha {
        FoFormula::Pred { name, arg } => FoFormula::pred(name.clone(), swap(arg)),
        FoFormula::RelNi { set, world } => FoFormula::rel_ni(set.clone(), swap(world)),
        FoFormula::RelN { world, set } => FoFormula::rel_n(swap(world), set.clone()),
        FoFormula::EqWorld(a, b) => FoFormula::eq(swap(a), swap(b)),
        FoFormula::True | FoFormula::False => alpha.clone(),
        FoFormula::Not(f) => FoFormula::not(rename_world_var(f, from, to, gen)),
        FoFormula::And(a, b) => FoFormula::and(
            rename_world_var(a, from, to, gen),
            rename_world_var(b, from, to, gen),
        ),
        FoFormula::Or(a, b) => FoFormula::or(
            rename_world_var(a, from, to, gen),
            rename_world_var(b, from, to, gen),
        ),
        FoFormula::Implies(a, b) => FoFormula::implies(
            rename_world_var(a, from, to, gen),
            rename_world_var(b, from, to, gen),
        ),
        FoFormula::ForallWorld(v, f)
        | FoFormula::ExistsWorld(v, f)
        | FoFormula::ForallSet(v, f)
        | FoFormula::ExistsSet(v, f) => {
            let sort = match alpha {
                FoFormula::ForallWorld(..) | FoFormula::ExistsWorld(..) => Sort::World,
                _ => Sort::Set,
            };
            let rebuild = |v: String, f: FoFormula| match alpha {
                FoFormula::ForallWorld(..) => FoFormula::forall_world(v, f),
                FoFormula::ExistsWorld(..) => FoFormula::exists_world(v, f),
                FoFormula::ForallSet(..) => FoFormula::forall_set(v, f),
                _ => FoFormula::exists_set(v, f),
            };
            if v == from {
                // `from` is shadowed below this binder.
                rebuild(v.clone(), f.as_ref().clone())
            } else if v == to {
                // The binder would capture `to`: rename it out of the way.
                let v2 = gen.fresh(sort);
                let f2 = rename_bound_occurrences(f, v, &v2);
                rebuild(v2, rename_world_var(&f2, from, to, gen))
            } else {
                rebuild(v.clone(), rename_world_var(f, from, to, gen))
            }
        }
    }
}

/// Renames occurrences of variable `v` (either sort) bound by an enclosing
/// binder, stopping at shadowing binders.
fn rename_bound_occurrences(f: &FoFormula, v: &str, v2: &str) -> FoFormula {
    let swap = |name: &str| -> String {
        if name == v {
            v2.to_string()
        } else {
            name.to_string()
        }
    };
    match f {
        FoFormula::Pred { name, arg } => FoFormula::pred(name.clone(), swap(arg)),
        FoFormula::RelNi { set, world } => FoFormula::rel_ni(swap(set), swap(world)),
        FoFormula::RelN { world, set } => FoFormula::rel_n(swap(world), swap(set)),
        FoFormula::EqWorld(a, b) => FoFormula::eq(swap(a), swap(b)),
        FoFormula::True | FoFormula::False => f.clone(),
        FoFormula::Not(a) => FoFormula::not(rename_bound_occurrences(a, v, v2)),
        FoFormula::And(a, b) => FoFormula::and(
            rename_bound_occurrences(a, v, v2),
            rename_bound_occurrences(b, v, v2),
        ),
        FoFormula::Or(a, b) => FoFormula::or(
            rename_bound_occurrences(a, v, v2),
            rename_bound_occurrences(b, v, v2),
        ),
        FoFormula::Implies(a, b) => FoFormula::implies(
            rename_bound_occurrences(a, v, v2),
            rename_bound_occurrences(b, v, v2),
        ),
        FoFormula::ForallWorld(u, a) => {
            if u == v {
                f.clone()
            } else {
                FoFormula::forall_world(u.clone(), rename_bound_occurrences(a, v, v2))
            }
        }
        FoFormula::ExistsWorld(u, a) => {
            if u == v {
                f.clone()
            } else {
                FoFormula::exists_world(u.clone(), rename_bound_occurrences(a, v, v2))
            }
        }
        FoFormula::ForallSet(u, a) => {
            if u == v {
                f.clone()
            } else {
                FoFormula::forall_set(u.clone(), rename_bound_occurrences(a, v, v2))
            }
        }
        FoFormula::ExistsSet(u, a) => {
            if u == v {
                f.clone()
            } else {
                FoFormula::exists_set(u.clone(), rename_bound_occurrences(a, v, v2))
            }
        }
    }
}

/// Replaces every atom `P(t)` for predicate `name` with `sigma.body[hole := t]`,
/// capture-free: binders in `alpha` that collide with free variables of the
/// descriptor body are renamed to fresh variables first.
pub fn substitute_predicate(
    alpha: &FoFormula,
    name: &str,
    sigma: &PredicateDescriptor,
    gen: &mut VarGen,
) -> FoFormula {
    let mut avoid: BTreeSet<String> =
        sigma.body.free_vars().into_iter().map(|(v, _)| v).collect();
    avoid.remove(&sigma.hole);
    subst_pred(alpha, name, sigma, &avoid, gen)
}

fn subst_pred(
    alpha: &FoFormula,
    name: &str,
    sigma: &PredicateDescriptor,
    avoid: &BTreeSet<String>,
    gen: &mut VarGen,
) -> FoFormula {
    match alpha {
        FoFormula::Pred { name: n, arg } if n == name => {
            rename_world_var(&sigma.body, &sigma.hole, arg, gen)
        }
        FoFormula::Pred { .. }
        | FoFormula::RelNi { .. }
        | FoFormula::RelN { .. }
        | FoFormula::EqWorld(..)
        | FoFormula::True
        | FoFormula::False => alpha.clone(),
        FoFormula::Not(f) => FoFormula::not(subst_pred(f, name, sigma, avoid, gen)),
        FoFormula::And(a, b) => FoFormula::and(
            subst_pred(a, name, sigma, avoid, gen),
            subst_pred(b, name, sigma, avoid, gen),
        ),
        FoFormula::Or(a, b) => FoFormula::or(
            subst_pred(a, name, sigma, avoid, gen),
            subst_pred(b, name, sigma, avoid, gen),
        ),
        FoFormula::Implies(a, b) => FoFormula::implies(
            subst_pred(a, name, sigma, avoid, gen),
            subst_pred(b, name, sigma, avoid, gen),
        ),
        FoFormula::ForallWorld(v, f)
        | FoFormula::ExistsWorld(v, f)
        | FoFormula::ForallSet(v, f)
        | FoFormula::ExistsSet(v, f) => {
            let sort = match alpha {
                FoFormula::ForallWorld(..) | FoFormula::ExistsWorld(..) => Sort::World,
                _ => Sort::Set,
            };
            let rebuild = |v: String, f: FoFormula| match alpha {
                FoFormula::ForallWorld(..) => FoFormula::forall_world(v, f),
                FoFormula::ExistsWorld(..) => FoFormula::exists_world(v, f),
                FoFormula::ForallSet(..) => FoFormula::forall_set(v, f),
                _ => FoFormula::exists_set(v, f),
            };
            if avoid.contains(v) {
                // This binder would capture a free variable of the inserted
                // body; rename it before descending.
                let v2 = gen.fresh(sort);
                let f2 = rename_bound_occurrences(f, v, &v2);
                rebuild(v2, subst_pred(&f2, name, sigma, avoid, gen))
            } else {
                rebuild(v.clone(), subst_pred(f, name, sigma, avoid, gen))
            }
        }
    }
}

/// Equivalence-preserving cleanup: folds `x = x` to `true`, applies unit
/// laws for the connectives, removes double negation and vacuous
/// quantifiers, and widens the scope of an existential on the left of a
/// conjunction (`(exists y A) & B` to `exists y (A & B)` when `y` is not
/// free in `B`).  World and subset domains are never empty, so dropping a
/// vacuous quantifier is sound.
pub fn simplify_fo(alpha: &FoFormula) -> FoFormula {
    match alpha {
        FoFormula::EqWorld(a, b) if a == b => FoFormula::True,
        FoFormula::Pred { .. }
        | FoFormula::RelNi { .. }
        | FoFormula::RelN { .. }
        | FoFormula::EqWorld(..)
        | FoFormula::True
        | FoFormula::False => alpha.clone(),
        FoFormula::Not(f) => match simplify_fo(f) {
            FoFormula::True => FoFormula::False,
            FoFormula::False => FoFormula::True,
            FoFormula::Not(inner) => *inner,
            g => FoFormula::not(g),
        },
        FoFormula::And(a, b) => match (simplify_fo(a), simplify_fo(b)) {
            (FoFormula::False, _) | (_, FoFormula::False) => FoFormula::False,
            (FoFormula::True, g) => g,
            (g, FoFormula::True) => g,
            (FoFormula::ExistsWorld(v, f), g) if !g.has_free(&v) => {
                simplify_fo(&FoFormula::exists_world(v, FoFormula::and(*f, g)))
            }
            (FoFormula::ExistsSet(v, f), g) if !g.has_free(&v) => {
                simplify_fo(&FoFormula::exists_set(v, FoFormula::and(*f, g)))
            }
            (f, g) => FoFormula::and(f, g),
        },
        FoFormula::Or(a, b) => match (simplify_fo(a), simplify_fo(b)) {
            (FoFormula::True, _) | (_, FoFormula::True) => FoFormula::True,
            (FoFormula::False, g) => g,
            (g, FoFormula::False) => g,
            (f, g) => FoFormula::or(f, g),
        },
        FoFormula::Implies(a, b) => match (simplify_fo(a), simplify_fo(b)) {
            (FoFormula::False, _) => FoFormula::True,
            (_, FoFormula::True) => FoFormula::True,
            (FoFormula::True, g) => g,
            (f, FoFormula::False) => match f {
                FoFormula::Not(inner) => *inner,
                f => FoFormula::not(f),
            },
            (f, g) => FoFormula::implies(f, g),
        },
        FoFormula::ForallWorld(v, f)
        | FoFormula::ExistsWorld(v, f)
        | FoFormula::ForallSet(v, f)
        | FoFormula::ExistsSet(v, f) => {
            let body = simplify_fo(f);
            match body {
                // Both domains are nonempty, so a constant body decides the
                // quantifier outright.
                FoFormula::True => FoFormula::True,
                FoFormula::False => FoFormula::False,
                body if !body.has_free(v) => body,
                body => match alpha {
                    FoFormula::ForallWorld(..) => FoFormula::forall_world(v.clone(), body),
                    FoFormula::ExistsWorld(..) => FoFormula::exists_world(v.clone(), body),
                    FoFormula::ForallSet(..) => FoFormula::forall_set(v.clone(), body),
                    _ => FoFormula::exists_set(v.clone(), body),
                },
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::enumerate_frames;
    use FoFormula as F;

    fn frame2() -> Frame {
        // N(0) = {{0,1}}, N(1) = {{}, {1}}
        Frame::new(
            2,
            vec![
                vec![WorldSet(0b11)],
                vec![WorldSet::EMPTY, WorldSet(0b10)],
            ],
        )
        .unwrap()
    }

    fn assign(pairs: &[(&str, SortedValue)]) -> BTreeMap<String, SortedValue> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn eval_atoms_and_relations() {
        let frame = frame2();
        let mut val = Valuation::default();
        val.set("p", WorldSet(0b01));
        let a = assign(&[
            ("x", SortedValue::World(0)),
            ("y", SortedValue::World(1)),
            ("X", SortedValue::Set(WorldSet(0b11))),
        ]);

        assert_eq!(eval_fo(&frame, &val, &a, &F::pred("p", "x")), Ok(true));
        assert_eq!(eval_fo(&frame, &val, &a, &F::pred("p", "y")), Ok(false));
        // Unknown predicate name denotes the empty set.
        assert_eq!(eval_fo(&frame, &val, &a, &F::pred("q", "x")), Ok(false));
        assert_eq!(eval_fo(&frame, &val, &a, &F::rel_ni("X", "y")), Ok(true));
        assert_eq!(eval_fo(&frame, &val, &a, &F::rel_n("x", "X")), Ok(true));
        assert_eq!(eval_fo(&frame, &val, &a, &F::rel_n("y", "X")), Ok(false));
        assert_eq!(eval_fo(&frame, &val, &a, &F::eq("x", "x")), Ok(true));
        assert_eq!(eval_fo(&frame, &val, &a, &F::eq("x", "y")), Ok(false));
    }

    #[test]
    fn eval_quantifiers() {
        let frame = frame2();
        let val = Valuation::default();
        let a = assign(&[("x", SortedValue::World(1))]);

        // Every world has some neighbourhood in this frame.
        let every_has_nbhd =
            F::forall_world("w", F::exists_set("X", F::rel_n("w", "X")));
        assert_eq!(eval_fo(&frame, &val, &a, &every_has_nbhd), Ok(true));

        // x = 1 has the empty neighbourhood: a set with no members.
        let has_empty_nbhd = F::exists_set(
            "X",
            F::and(
                F::rel_n("x", "X"),
                F::forall_world("w", F::not(F::rel_ni("X", "w"))),
            ),
        );
        assert_eq!(eval_fo(&frame, &val, &a, &has_empty_nbhd), Ok(true));
        let a0 = assign(&[("x", SortedValue::World(0))]);
        assert_eq!(eval_fo(&frame, &val, &a0, &has_empty_nbhd), Ok(false));
    }

    #[test]
    fn eval_inner_binding_shadows_outer() {
        let frame = frame2();
        let mut val = Valuation::default();
        val.set("p", WorldSet(0b01));
        let a = assign(&[("y", SortedValue::World(1))]);
        // The bound y ranges over all worlds regardless of the outer y.
        let phi = F::exists_world("y", F::pred("p", "y"));
        assert_eq!(eval_fo(&frame, &val, &a, &phi), Ok(true));
    }

    #[test]
    fn eval_reports_missing_and_missorted_variables() {
        let frame = frame2();
        let val = Valuation::default();
        assert_eq!(
            eval_fo(&frame, &val, &BTreeMap::new(), &F::pred("p", "x")),
            Err(FoEvalError::MissingAssignment { var: "x".into() })
        );
        let a = assign(&[("x", SortedValue::Set(WorldSet::EMPTY))]);
        assert_eq!(
            eval_fo(&frame, &val, &a, &F::pred("p", "x")),
            Err(FoEvalError::UnsortedVariable { var: "x".into() })
        );
        let a = assign(&[("X", SortedValue::World(0)), ("y", SortedValue::World(0))]);
        assert_eq!(
            eval_fo(&frame, &val, &a, &F::rel_ni("X", "y")),
            Err(FoEvalError::UnsortedVariable { var: "X".into() })
        );
    }

    #[test]
    fn empty_connective_folds() {
        assert_eq!(F::and_all([]), F::True);
        assert_eq!(F::or_all([]), F::False);
        assert_eq!(
            F::and_all([F::True, F::False]),
            F::and(F::True, F::False)
        );
    }

    #[test]
    fn free_vars_respect_binders() {
        let phi = F::exists_set(
            "X",
            F::and(F::rel_n("x", "X"), F::forall_world("y", F::rel_ni("X", "y"))),
        );
        let fv = phi.free_vars();
        assert!(fv.contains(&("x".to_string(), Sort::World)));
        assert!(!fv.iter().any(|(v, _)| v == "X" || v == "y"));
    }

    #[test]
    fn substitution_reaches_all_occurrences() {
        let mut gen = VarGen::new();
        let alpha = F::and(F::pred("p", "x"), F::exists_world("z", F::pred("p", "z")));
        let sigma = PredicateDescriptor {
            hole: "u".into(),
            body: F::eq("u", "w"),
        };
        let out = substitute_predicate(&alpha, "p", &sigma, &mut gen);
        assert_eq!(
            out,
            F::and(F::eq("x", "w"), F::exists_world("z", F::eq("z", "w")))
        );
    }

    #[test]
    fn substitution_avoids_capture_by_renaming_the_binder() {
        // Substituting lambda u. u = y for P inside forall y P(y) must not
        // let the binder capture the free y of the body.
        let mut gen = VarGen::new();
        let alpha = F::forall_world("y", F::pred("p", "y"));
        let sigma = PredicateDescriptor {
            hole: "u".into(),
            body: F::eq("u", "y"),
        };
        let out = substitute_predicate(&alpha, "p", &sigma, &mut gen);
        assert_eq!(out, F::forall_world("y0", F::eq("y0", "y")));
    }

    #[test]
    fn substitution_leaves_other_predicates_alone() {
        let mut gen = VarGen::new();
        let alpha = F::and(F::pred("p", "x"), F::pred("q", "x"));
        let sigma = PredicateDescriptor { hole: "u".into(), body: F::False };
        let out = substitute_predicate(&alpha, "p", &sigma, &mut gen);
        assert_eq!(out, F::and(F::False, F::pred("q", "x")));
    }

    #[test]
    fn rename_respects_shadowing() {
        let mut gen = VarGen::new();
        let phi = F::forall_world("y", F::pred("p", "y"));
        assert_eq!(rename_world_var(&phi, "y", "x", &mut gen), phi);
    }

    #[test]
    fn simplify_folds_constants() {
        assert_eq!(simplify_fo(&F::eq("x", "x")), F::True);
        assert_eq!(simplify_fo(&F::not(F::eq("x", "x"))), F::False);
        assert_eq!(simplify_fo(&F::not(F::not(F::pred("p", "x")))), F::pred("p", "x"));
        assert_eq!(
            simplify_fo(&F::and(F::eq("x", "x"), F::pred("p", "x"))),
            F::pred("p", "x")
        );
        assert_eq!(
            simplify_fo(&F::implies(F::pred("p", "x"), F::False)),
            F::not(F::pred("p", "x"))
        );
        assert_eq!(
            simplify_fo(&F::forall_world("y", F::eq("y", "y"))),
            F::True
        );
        // Vacuous quantifier over a contingent body.
        assert_eq!(
            simplify_fo(&F::exists_world("y", F::pred("p", "x"))),
            F::pred("p", "x")
        );
    }

    #[test]
    fn simplify_widens_existential_scope() {
        let phi = F::and(
            F::exists_world("y", F::rel_ni("X", "y")),
            F::pred("p", "x"),
        );
        assert_eq!(
            simplify_fo(&phi),
            F::exists_world("y", F::and(F::rel_ni("X", "y"), F::pred("p", "x")))
        );
        // Not applied when the variable occurs on the right.
        let phi = F::and(F::exists_world("y", F::rel_ni("X", "y")), F::pred("p", "y"));
        assert_eq!(simplify_fo(&phi), phi);
    }

    #[test]
    fn simplify_preserves_truth_on_small_frames() {
        let cases = vec![
            F::implies(F::eq("x", "x"), F::pred("p", "x")),
            F::and(F::not(F::not(F::pred("p", "x"))), F::eq("x", "x")),
            F::or(F::not(F::eq("x", "x")), F::pred("p", "x")),
            F::exists_set(
                "X",
                F::and(F::rel_n("x", "X"), F::implies(F::False, F::rel_ni("X", "x"))),
            ),
            F::forall_set(
                "X",
                F::implies(
                    F::rel_n("x", "X"),
                    F::and(
                        F::exists_world("y", F::rel_ni("X", "y")),
                        F::pred("p", "x"),
                    ),
                ),
            ),
            F::forall_world("y", F::or(F::pred("p", "y"), F::not(F::pred("p", "y")))),
            F::exists_world("y", F::and(F::eq("y", "y"), F::pred("p", "y"))),
        ];
        for n in 1..=2 {
            for frame in enumerate_frames(n) {
                for pmask in 0..(1u64 << n) {
                    let mut val = Valuation::default();
                    val.set("p", WorldSet(pmask));
                    for w in 0..n {
                        let a = assign(&[("x", SortedValue::World(w))]);
                        for phi in &cases {
                            let before = eval_fo(&frame, &val, &a, phi).unwrap();
                            let after =
                                eval_fo(&frame, &val, &a, &simplify_fo(phi)).unwrap();
                            assert_eq!(before, after, "simplify changed {phi:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn var_gen_names_are_distinct_across_sorts() {
        let mut gen = VarGen::new();
        assert_eq!(gen.fresh_world(), "y0");
        assert_eq!(gen.fresh_set(), "X1");
        assert_eq!(gen.fresh_world(), "y2");
    }
}
