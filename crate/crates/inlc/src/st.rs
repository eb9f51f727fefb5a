//! Standard translation of modal formulas into the two-sorted frame
//! language.  `st(phi, x)` produces a formula whose only free variable is
//! the world variable `x`, satisfied at exactly the points where `phi`
//! holds.
//!
//! The box clause introduces one subset variable for the neighbourhood,
//! one universally quantified member for the universal part and one
//! existential witness per instantial coordinate:
//!
//! `Box(phi1, .., phin; phi)` at `x` becomes
//! `exists X (R_N(x, X) & forall y (R_ni(X, y) -> st(phi, y))
//!                      & exists y1 (R_ni(X, y1) & st(phi1, y1)) & ..)`.
//!
//! With no instantial coordinates only the universal conjunct remains, so
//! the empty set witnesses `Box(; phi)` vacuously.

use crate::fo::{FoFormula, VarGen};
use crate::formula::Formula;

/// Translates `phi` with designated free world variable `x`.
pub fn st(phi: &Formula, x: &str) -> FoFormula {
    st_with(phi, x, &mut VarGen::new())
}

/// As [`st`], drawing bound variables from a caller-owned generator so
/// several translations can share one namespace.
pub fn st_with(phi: &Formula, x: &str, gen: &mut VarGen) -> FoFormula {
    match phi {
        Formula::Var(p) => FoFormula::pred(p.clone(), x),
        Formula::Bot => FoFormula::not(FoFormula::eq(x, x)),
        Formula::Top => FoFormula::eq(x, x),
        Formula::Not(f) => FoFormula::not(st_with(f, x, gen)),
        Formula::And(a, b) => {
            FoFormula::and(st_with(a, x, gen), st_with(b, x, gen))
        }
        Formula::Or(a, b) => FoFormula::or(st_with(a, x, gen), st_with(b, x, gen)),
        Formula::Implies(a, b) => {
            let ta = st_with(a, x, gen);
            let tb = st_with(b, x, gen);
            FoFormula::or(FoFormula::not(ta), tb)
        }
        Formula::Iff(a, b) => {
            let ta = st_with(a, x, gen);
            let tb = st_with(b, x, gen);
            let ta2 = st_with(a, x, gen);
            let tb2 = st_with(b, x, gen);
            FoFormula::and(
                FoFormula::or(FoFormula::not(ta), tb),
                FoFormula::or(FoFormula::not(tb2), ta2),
            )
        }
        Formula::Box { inst, univ } => {
            let set = gen.fresh_set();
            let y = gen.fresh_world();
            let mut parts = vec![
                FoFormula::rel_n(x, set.clone()),
                FoFormula::forall_world(
                    y.clone(),
                    FoFormula::implies(
                        FoFormula::rel_ni(set.clone(), y.clone()),
                        st_with(univ, &y, gen),
                    ),
                ),
            ];
            for phi_i in inst {
                let yi = gen.fresh_world();
                parts.push(FoFormula::exists_world(
                    yi.clone(),
                    FoFormula::and(
                        FoFormula::rel_ni(set.clone(), yi.clone()),
                        st_with(phi_i, &yi, gen),
                    ),
                ));
            }
            FoFormula::exists_set(set, FoFormula::and_all(parts))
        }
    }
}
