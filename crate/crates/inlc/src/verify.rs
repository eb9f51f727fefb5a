//! Finite-frame oracle harness.
//!
//! Every semantic claim the crate makes (translation correctness,
//! correspondence, route agreement, box monotonicity) is checkable by
//! brute force on small frames.  The checks here sweep every frame with
//! one or two worlds and a seeded random sample of larger frames,
//! compare the two sides of each claim on every valuation and world,
//! and return a [`CheckReport`] listing any counterexamples.
//!
//! Reports are deterministic: a fixed seed reproduces the run instance
//! for instance, and the random stream for each frame size is keyed by
//! the size, so raising `max_worlds` extends a sweep without perturbing
//! the smaller sizes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bimodal::{bimodal_satisfies, correspondent_via_bimodal, tau, BiPoint, BimodalFormula};
use crate::correspond::{correspondent_direct, CorrespondError};
use crate::fo::{eval_fo, FoFormula, SortedValue};
use crate::formula::Formula;
use crate::print::{print_inl, Format};
use crate::semantics::{
    all_valuations, enumerate_frames, random_frame_from, satisfies, valid_at, Frame, FrameFile,
    Valuation,
};
use crate::st::st;

/// Counterexamples retained per report.  A broken property on a full
/// sweep can falsify millions of instances; the sweep aborts once this
/// many are recorded, so `instances` then undercounts the full space.
const MAX_RETAINED: usize = 32;

/// One falsifying instance: a frame, a valuation over the formula's
/// variables, and a world at which the two sides of the property
/// disagree.  World names follow the frame-file convention `w0, w1, …`.
#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub frame: FrameFile,
    pub valuation: BTreeMap<String, Vec<String>>,
    pub world: String,
    pub formula: String,
    pub expected: bool,
    pub actual: bool,
}

/// Outcome of one property check.  `instances` counts the comparisons
/// performed; the report passes iff both counterexample lists are empty.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub property: String,
    pub instances: u64,
    pub counterexamples: Vec<Counterexample>,
    /// Populated only by [`check_correspondence`] under [`Route::Both`]:
    /// instances where the two routes disagree with each other.  There
    /// `expected` holds the direct route's value and `actual` the
    /// bimodal route's.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub route_disagreements: Vec<Counterexample>,
    pub elapsed_ms: u64,
    pub seed: u64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty() && self.route_disagreements.is_empty()
    }
}

/// Which correspondence construction a check exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Direct,
    Bimodal,
    Both,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Direct => "direct",
            Route::Bimodal => "bimodal",
            Route::Both => "both",
        })
    }
}

impl FromStr for Route {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "direct" => Ok(Route::Direct),
            "bimodal" => Ok(Route::Bimodal),
            "both" => Ok(Route::Both),
            other => Err(format!("unknown route '{other}' (expected direct, bimodal or both)")),
        }
    }
}

/// Visits the shared frame sweep: every frame on one and two worlds
/// (capped by `max_worlds`), then `samples` random frames for each size
/// from three to `max_worlds`.  The visitor returns `false` to abort.
fn sweep_frames(
    max_worlds: usize,
    samples: usize,
    seed: u64,
    mut visit: impl FnMut(&Frame) -> bool,
) {
    assert!(max_worlds >= 1);
    for n in 1..=max_worlds.min(2) {
        for frame in enumerate_frames(n) {
            if !visit(&frame) {
                return;
            }
        }
    }
    for n in 3..=max_worlds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(n as u64);
        for _ in 0..samples {
            if !visit(&random_frame_from(n, &mut rng)) {
                return;
            }
        }
    }
}

fn counterexample(
    frame: &Frame,
    valuation: &Valuation,
    world: usize,
    formula: String,
    expected: bool,
    actual: bool,
) -> Counterexample {
    let n = frame.num_worlds();
    Counterexample {
        frame: FrameFile::from_model(frame, &Valuation::new()),
        valuation: valuation
            .0
            .iter()
            .map(|(p, s)| (p.clone(), s.members(n).map(|w| format!("w{w}")).collect()))
            .collect(),
        world: format!("w{world}"),
        formula,
        expected,
        actual,
    }
}

/// Checks `satisfies = eval_fo ∘ st` for every corpus formula, on every
/// valuation of its variables and every world of each swept frame.
pub fn check_st_correctness(
    corpus: &[Formula],
    max_worlds: usize,
    samples: usize,
    seed: u64,
) -> CheckReport {
    let start = Instant::now();
    let prepared: Vec<(Vec<String>, FoFormula, String)> = corpus
        .iter()
        .map(|phi| {
            (
                phi.vars().into_iter().collect(),
                st(phi, "x"),
                print_inl(phi, Format::Text),
            )
        })
        .collect();
    let mut assignment = BTreeMap::new();
    assignment.insert("x".to_string(), SortedValue::World(0));
    let mut instances = 0u64;
    let mut counterexamples = Vec::new();
    sweep_frames(max_worlds, samples, seed, |frame| {
        for ((vars, alpha, text), phi) in prepared.iter().zip(corpus) {
            for v in all_valuations(vars, frame.num_worlds()) {
                for w in frame.worlds() {
                    let direct = satisfies(frame, &v, w, phi).expect("world is in range");
                    *assignment.get_mut("x").expect("seeded above") = SortedValue::World(w);
                    let translated = eval_fo(frame, &v, &assignment, alpha)
                        .expect("st output is closed apart from x");
                    instances += 1;
                    if direct != translated {
                        counterexamples
                            .push(counterexample(frame, &v, w, text.clone(), direct, translated));
                        if counterexamples.len() >= MAX_RETAINED {
                            return false;
                        }
                    }
                }
            }
        }
        true
    });
    CheckReport {
        property: "st-correctness".to_string(),
        instances,
        counterexamples,
        route_disagreements: Vec::new(),
        elapsed_ms: start.elapsed().as_millis() as u64,
        seed,
    }
}

/// Checks `satisfies = bimodal_satisfies ∘ tau` over the same sweep as
/// [`check_st_correctness`].
pub fn check_tau_correctness(
    corpus: &[Formula],
    max_worlds: usize,
    samples: usize,
    seed: u64,
) -> CheckReport {
    let start = Instant::now();
    let prepared: Vec<(Vec<String>, BimodalFormula, String)> = corpus
        .iter()
        .map(|phi| {
            (
                phi.vars().into_iter().collect(),
                BimodalFormula::World(tau(phi)),
                print_inl(phi, Format::Text),
            )
        })
        .collect();
    let mut instances = 0u64;
    let mut counterexamples = Vec::new();
    sweep_frames(max_worlds, samples, seed, |frame| {
        for ((vars, chi, text), phi) in prepared.iter().zip(corpus) {
            for v in all_valuations(vars, frame.num_worlds()) {
                for w in frame.worlds() {
                    let direct = satisfies(frame, &v, w, phi).expect("world is in range");
                    let translated = bimodal_satisfies(frame, &v, BiPoint::World(w), chi)
                        .expect("world is in range");
                    instances += 1;
                    if direct != translated {
                        counterexamples
                            .push(counterexample(frame, &v, w, text.clone(), direct, translated));
                        if counterexamples.len() >= MAX_RETAINED {
                            return false;
                        }
                    }
                }
            }
        }
        true
    });
    CheckReport {
        property: "tau-correctness".to_string(),
        instances,
        counterexamples,
        route_disagreements: Vec::new(),
        elapsed_ms: start.elapsed().as_millis() as u64,
        seed,
    }
}

/// Checks that the first-order correspondent of `phi` defines exactly
/// the frame-validity of `phi`: at every world of every swept frame,
/// `valid_at` agrees with `eval_fo` of the correspondent.  Under
/// [`Route::Both`] the two correspondents are also compared with each
/// other, into `route_disagreements`.
pub fn check_correspondence(
    phi: &Formula,
    route: Route,
    max_worlds: usize,
    samples: usize,
    seed: u64,
) -> Result<CheckReport, CorrespondError> {
    let start = Instant::now();
    let direct = match route {
        Route::Direct | Route::Both => Some(correspondent_direct(phi)?),
        Route::Bimodal => None,
    };
    let bimodal = match route {
        Route::Bimodal | Route::Both => Some(correspondent_via_bimodal(phi)?),
        Route::Direct => None,
    };
    let text = print_inl(phi, Format::Text);
    let no_predicates = Valuation::new();
    let mut assignment = BTreeMap::new();
    assignment.insert("x".to_string(), SortedValue::World(0));
    let mut instances = 0u64;
    let mut counterexamples = Vec::new();
    let mut route_disagreements = Vec::new();
    sweep_frames(max_worlds, samples, seed, |frame| {
        for w in frame.worlds() {
            let expected = valid_at(frame, w, phi).expect("world is in range");
            *assignment.get_mut("x").expect("seeded above") = SortedValue::World(w);
            let mut eval = |alpha: &FoFormula| {
                eval_fo(frame, &no_predicates, &assignment, alpha)
                    .expect("correspondent is closed apart from x")
            };
            let direct_value = direct.as_ref().map(&mut eval);
            let bimodal_value = bimodal.as_ref().map(&mut eval);
            instances += 1;
            for actual in [direct_value, bimodal_value].into_iter().flatten() {
                if actual != expected {
                    counterexamples.push(counterexample(
                        frame,
                        &no_predicates,
                        w,
                        text.clone(),
                        expected,
                        actual,
                    ));
                    if counterexamples.len() >= MAX_RETAINED {
                        return false;
                    }
                }
            }
            if let (Some(d), Some(b)) = (direct_value, bimodal_value) {
                if d != b {
                    route_disagreements
                        .push(counterexample(frame, &no_predicates, w, text.clone(), d, b));
                    if route_disagreements.len() >= MAX_RETAINED {
                        return false;
                    }
                }
            }
        }
        true
    });
    Ok(CheckReport {
        property: format!("correspondence-{route} {text}"),
        instances,
        counterexamples,
        route_disagreements,
        elapsed_ms: start.elapsed().as_millis() as u64,
        seed,
    })
}

/// Checks the two semantic properties of the box on atoms
/// `Box(p1, …, pn; p)` for arities 0 through 3:
///
/// 1. truth is preserved when any variable's extension grows (checked
///    over single-point enlargements, which compose to the general
///    case), and
/// 2. truth is completely additive in each instantial coordinate:
///    `Box` holds under `V` iff it holds under some `V_{i,v}` that
///    shrinks coordinate `i`'s extension to a single point `v ∈ V(pi)`.
///
/// For monotonicity counterexamples the recorded valuation is the
/// enlarged one (where truth was lost); for additivity it is `V`.
pub fn check_lemma_monotonicity(max_worlds: usize, samples: usize, seed: u64) -> CheckReport {
    let start = Instant::now();
    let shapes: Vec<(Formula, Vec<String>, String)> = (0..=3usize)
        .map(|arity| {
            let vars: Vec<String> = std::iter::once("p".to_string())
                .chain((1..=arity).map(|i| format!("p{i}")))
                .collect();
            let inst = (1..=arity).map(|i| Formula::var(format!("p{i}"))).collect();
            let boxf = Formula::boxed(inst, Formula::var("p"));
            let text = print_inl(&boxf, Format::Text);
            (boxf, vars, text)
        })
        .collect();
    let mut instances = 0u64;
    let mut counterexamples = Vec::new();
    sweep_frames(max_worlds, samples, seed, |frame| {
        let nw = frame.num_worlds();
        let point_mask = (1usize << nw) - 1;
        for (boxf, vars, text) in &shapes {
            let arity = vars.len() - 1;
            let vals: Vec<Valuation> = all_valuations(vars, nw).collect();
            for w in frame.worlds() {
                let cache: Vec<bool> = vals
                    .iter()
                    .map(|v| satisfies(frame, v, w, boxf).expect("world is in range"))
                    .collect();
                // Item 1: raising any single variable-world bit of the
                // valuation must not lose truth.
                let bits = vars.len() * nw;
                for idx in 0..vals.len() {
                    for b in (0..bits).filter(|b| idx >> b & 1 == 0) {
                        instances += 1;
                        if cache[idx] && !cache[idx | 1 << b] {
                            counterexamples.push(counterexample(
                                frame,
                                &vals[idx | 1 << b],
                                w,
                                text.clone(),
                                true,
                                false,
                            ));
                            if counterexamples.len() >= MAX_RETAINED {
                                return false;
                            }
                        }
                    }
                }
                // Item 2: agreement with the best singleton shrink of
                // each instantial coordinate.  Variable `pi` occupies
                // bit block `i` of the valuation index (block 0 is the
                // universal variable `p`).
                for idx in 0..vals.len() {
                    for i in 1..=arity {
                        instances += 1;
                        let block = idx >> (i * nw) & point_mask;
                        let cleared = idx & !(point_mask << (i * nw));
                        let shrunk = (0..nw)
                            .filter(|v| block >> v & 1 == 1)
                            .any(|v| cache[cleared | 1 << (i * nw + v)]);
                        if cache[idx] != shrunk {
                            counterexamples.push(counterexample(
                                frame,
                                &vals[idx],
                                w,
                                text.clone(),
                                cache[idx],
                                shrunk,
                            ));
                            if counterexamples.len() >= MAX_RETAINED {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    });
    CheckReport {
        property: "box-monotonicity-additivity".to_string(),
        instances,
        counterexamples,
        route_disagreements: Vec::new(),
        elapsed_ms: start.elapsed().as_millis() as u64,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_inl;
    use crate::semantics::WorldSet;

    fn p() -> Formula {
        Formula::var("p")
    }

    #[test]
    fn st_check_on_one_world_counts_all_instances() {
        // 4 one-world frames, 2 valuations of p, 1 world each.
        let report = check_st_correctness(&[p()], 1, 0, 1);
        assert!(report.passed());
        assert_eq!(report.instances, 8);
        assert_eq!(report.property, "st-correctness");
    }

    #[test]
    fn st_check_covers_nullary_box() {
        let phi = parse_inl("Box(; bot)").unwrap();
        assert!(check_st_correctness(&[phi], 2, 0, 1).passed());
    }

    #[test]
    fn tau_check_on_two_worlds_counts_all_instances() {
        // 4 frames × 2 valuations × 1 world, then 256 × 4 × 2.
        let report = check_tau_correctness(&[p()], 2, 0, 1);
        assert!(report.passed());
        assert_eq!(report.instances, 8 + 2048);
    }

    #[test]
    fn correspondence_check_counts_worlds() {
        let phi = parse_inl("Box(p; top) -> p").unwrap();
        let report = check_correspondence(&phi, Route::Direct, 2, 0, 1).unwrap();
        assert!(report.passed());
        assert_eq!(report.instances, 4 + 512);
    }

    #[test]
    fn trivially_valid_formula_passes_both_routes() {
        let phi = parse_inl("p -> p").unwrap();
        let report = check_correspondence(&phi, Route::Both, 2, 8, 1).unwrap();
        assert!(report.passed());
        assert!(report.route_disagreements.is_empty());
    }

    #[test]
    fn nabla_formula_routes_agree() {
        let phi = parse_inl("~Box(~p; top) -> p").unwrap();
        let report = check_correspondence(&phi, Route::Both, 2, 0, 1).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn correspondence_check_rejects_non_sahlqvist() {
        let phi = parse_inl("p -> ~p").unwrap();
        assert!(matches!(
            check_correspondence(&phi, Route::Direct, 2, 0, 1),
            Err(CorrespondError::NotSahlqvist { .. })
        ));
    }

    #[test]
    fn single_frame_correspondence_instance() {
        // N(w0) = {∅} validates the antecedent of Box(;p) -> Box(p; top)
        // vacuously and never its consequent, so neither the formula nor
        // its correspondent holds at w0.
        let phi = parse_inl("Box(; p) -> Box(p; top)").unwrap();
        let frame = Frame::new(1, vec![vec![WorldSet::EMPTY]]).unwrap();
        assert!(!valid_at(&frame, 0, &phi).unwrap());
        let alpha = correspondent_direct(&phi).unwrap();
        let mut assignment = BTreeMap::new();
        assignment.insert("x".to_string(), SortedValue::World(0));
        assert!(!eval_fo(&frame, &Valuation::new(), &assignment, &alpha).unwrap());
    }

    #[test]
    fn monotonicity_check_passes_exhaustively() {
        let report = check_lemma_monotonicity(2, 0, 1);
        assert!(report.passed());
        assert!(report.instances > 0);
        assert_eq!(report.property, "box-monotonicity-additivity");
    }

    #[test]
    fn sweep_is_deterministic_and_prefix_stable() {
        let fingerprint = |max: usize| {
            let mut seen = Vec::new();
            sweep_frames(max, 3, 9, |frame| {
                seen.push(format!("{frame:?}"));
                true
            });
            seen
        };
        let three = fingerprint(3);
        assert_eq!(three, fingerprint(3));
        // Raising max_worlds appends larger sizes without reordering.
        assert_eq!(fingerprint(4)[..three.len()], three[..]);
    }

    #[test]
    fn reports_serialize_with_frame_file_schema() {
        let frame = Frame::new(2, vec![vec![WorldSet(0b11)], vec![]]).unwrap();
        let mut v = Valuation::new();
        v.set("p", WorldSet(0b10));
        let cex = counterexample(&frame, &v, 1, "p".to_string(), true, false);
        let json = serde_json::to_value(&cex).unwrap();
        assert_eq!(json["world"], "w1");
        assert_eq!(json["valuation"]["p"][0], "w1");
        assert_eq!(json["frame"]["N"]["w0"][0][1], "w1");
        // The frame entry carries no valuation of its own.
        assert!(json["frame"].get("V").is_none());
        let report = check_st_correctness(&[p()], 1, 0, 3);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["seed"], 3);
        assert!(json.get("route_disagreements").is_none());
    }

    #[test]
    fn seed_is_reproducible_instance_for_instance() {
        let a = check_st_correctness(&[p()], 3, 10, 42);
        let b = check_st_correctness(&[p()], 3, 10, 42);
        assert_eq!(a.instances, b.instances);
        assert!(a.passed() && b.passed());
    }
}
