//! Finite neighbourhood frames, models and brute-force model checking.
//!
//! Worlds are dense indices `0..n` internally; named worlds exist only at
//! the JSON file-format boundary.  Subsets of the world set are bitmasks, so
//! everything here is exact and enumerable.

use crate::formula::Formula;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// A subset of the worlds of a frame, as a bitmask.  Worlds beyond 63 are
/// unsupported, which is far past where exhaustive checking is feasible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct WorldSet(pub u64);

impl WorldSet {
    pub const EMPTY: WorldSet = WorldSet(0);

    pub fn singleton(w: usize) -> Self {
        WorldSet(1 << w)
    }

    pub fn contains(self, w: usize) -> bool {
        self.0 >> w & 1 == 1
    }

    pub fn with(self, w: usize) -> Self {
        WorldSet(self.0 | 1 << w)
    }

    pub fn is_subset_of(self, other: WorldSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members below `n`, ascending.
    pub fn members(self, n: usize) -> impl Iterator<Item = usize> {
        (0..n).filter(move |&w| self.contains(w))
    }
}

#[derive(Debug, Error)]
pub enum SemanticsError {
    #[error("unknown world {world}")]
    UnknownWorld { world: String },
    #[error("frame is malformed: {0}")]
    MalformedFrame(String),
}

/// A neighbourhood frame: a nonempty finite set of worlds `0..n` and, for
/// each world, a finite collection of subsets of the worlds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    n: usize,
    nbhd: Vec<Vec<WorldSet>>,
}

impl Frame {
    /// Builds a frame, sorting and deduplicating each neighbourhood
    /// collection so equal frames compare equal.
    pub fn new(n: usize, mut nbhd: Vec<Vec<WorldSet>>) -> Result<Self, SemanticsError> {
        if n == 0 {
            return Err(SemanticsError::MalformedFrame("no worlds".to_string()));
        }
        if n > 63 {
            return Err(SemanticsError::MalformedFrame(format!("{n} worlds is too many")));
        }
        if nbhd.len() != n {
            return Err(SemanticsError::MalformedFrame(format!(
                "{} neighbourhood collections for {n} worlds",
                nbhd.len()
            )));
        }
        let full = (1u64 << n) - 1;
        for sets in &mut nbhd {
            for s in sets.iter() {
                if s.0 & !full != 0 {
                    return Err(SemanticsError::MalformedFrame(
                        "neighbourhood contains an unknown world".to_string(),
                    ));
                }
            }
            sets.sort();
            sets.dedup();
        }
        Ok(Frame { n, nbhd })
    }

    pub fn num_worlds(&self) -> usize {
        self.n
    }

    pub fn worlds(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// The neighbourhoods of `w`, sorted ascending by bitmask.
    pub fn neighbourhoods(&self, w: usize) -> &[WorldSet] {
        &self.nbhd[w]
    }

    /// All subsets of the world set, ascending by bitmask.
    pub fn subsets(&self) -> impl Iterator<Item = WorldSet> {
        (0u64..1 << self.n).map(WorldSet)
    }

    /// True when `s` is a neighbourhood of `w`.
    pub fn rel_n(&self, w: usize, s: WorldSet) -> bool {
        self.nbhd[w].binary_search(&s).is_ok()
    }
}

/// Assignment of a subset of worlds to each propositional variable.
/// Variables absent from the map denote the empty set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Valuation(pub BTreeMap<String, WorldSet>);

impl Valuation {
    pub fn new() -> Self {
        Valuation(BTreeMap::new())
    }

    pub fn get(&self, var: &str) -> WorldSet {
        self.0.get(var).copied().unwrap_or(WorldSet::EMPTY)
    }

    pub fn set(&mut self, var: impl Into<String>, s: WorldSet) {
        self.0.insert(var.into(), s);
    }
}

/// A frame together with a valuation.
#[derive(Clone, Debug)]
pub struct Model {
    pub frame: Frame,
    pub valuation: Valuation,
}

impl Model {
    pub fn satisfies(&self, w: usize, phi: &Formula) -> Result<bool, SemanticsError> {
        satisfies(&self.frame, &self.valuation, w, phi)
    }
}

/// Truth of `phi` at world `w`.
pub fn satisfies(
    frame: &Frame,
    valuation: &Valuation,
    w: usize,
    phi: &Formula,
) -> Result<bool, SemanticsError> {
    if w >= frame.num_worlds() {
        return Err(SemanticsError::UnknownWorld { world: w.to_string() });
    }
    Ok(sat(frame, valuation, w, phi))
}

fn sat(frame: &Frame, v: &Valuation, w: usize, phi: &Formula) -> bool {
    match phi {
        Formula::Var(p) => v.get(p).contains(w),
        Formula::Bot => false,
        Formula::Top => true,
        Formula::Not(f) => !sat(frame, v, w, f),
        Formula::And(a, b) => sat(frame, v, w, a) && sat(frame, v, w, b),
        Formula::Or(a, b) => sat(frame, v, w, a) || sat(frame, v, w, b),
        Formula::Implies(a, b) => !sat(frame, v, w, a) || sat(frame, v, w, b),
        Formula::Iff(a, b) => sat(frame, v, w, a) == sat(frame, v, w, b),
        Formula::Box { inst, univ } => {
            let n = frame.num_worlds();
            frame.neighbourhoods(w).iter().any(|&s| {
                s.members(n).all(|u| sat(frame, v, u, univ))
                    && inst
                        .iter()
                        .all(|fi| s.members(n).any(|u| sat(frame, v, u, fi)))
            })
        }
    }
}

/// All valuations of `vars` over a frame with `n` worlds.  The first listed
/// variable varies fastest.
pub fn all_valuations<'a>(
    vars: &'a [String],
    n: usize,
) -> impl Iterator<Item = Valuation> + 'a {
    let bits = n * vars.len();
    assert!(bits < 63, "valuation space too large to enumerate");
    let mask = (1u64 << n) - 1;
    (0u64..1 << bits).map(move |idx| {
        Valuation(
            vars.iter()
                .enumerate()
                .map(|(i, v)| (v.clone(), WorldSet(idx >> (n * i) & mask)))
                .collect(),
        )
    })
}

/// Frame validity of `phi` at `w`: truth under every valuation of the
/// variables occurring in `phi`.
pub fn valid_at(frame: &Frame, w: usize, phi: &Formula) -> Result<bool, SemanticsError> {
    if w >= frame.num_worlds() {
        return Err(SemanticsError::UnknownWorld { world: w.to_string() });
    }
    let vars: Vec<String> = phi.vars().into_iter().collect();
    let valid = all_valuations(&vars, frame.num_worlds()).all(|v| sat(frame, &v, w, phi));
    Ok(valid)
}

/// Every frame on worlds `0..n`, in a fixed order: each world's
/// neighbourhood collection is encoded as a number over the `2^n` subset
/// bitmasks, and the encoding for world 0 varies fastest.  The first frame
/// gives every world the empty collection of neighbourhoods.
pub fn enumerate_frames(n: usize) -> impl Iterator<Item = Frame> {
    assert!((1..=4).contains(&n), "frame enumeration is only feasible for 1..=4 worlds");
    let subsets = 1usize << n;
    let per_world = 1u64 << subsets;
    let mut odometer = vec![0u64; n];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let nbhd = odometer
            .iter()
            .map(|&enc| {
                (0..subsets)
                    .filter(|j| enc >> j & 1 == 1)
                    .map(|j| WorldSet(j as u64))
                    .collect()
            })
            .collect();
        let frame = Frame::new(n, nbhd).expect("enumerated frame is well-formed");
        done = true;
        for digit in odometer.iter_mut() {
            *digit += 1;
            if *digit < per_world {
                done = false;
                break;
            }
            *digit = 0;
        }
        Some(frame)
    })
}

/// A random frame on `n` worlds: each subset is a neighbourhood of each
/// world independently with probability 1/2.  Deterministic in the seed.
pub fn random_frame(n: usize, seed: u64) -> Frame {
    random_frame_from(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// As [`random_frame`], drawing from a caller-supplied generator.
pub fn random_frame_from(n: usize, rng: &mut impl Rng) -> Frame {
    assert!((1..=16).contains(&n));
    let nbhd = (0..n)
        .map(|_| {
            (0..1u64 << n)
                .filter(|_| rng.gen_bool(0.5))
                .map(WorldSet)
                .collect()
        })
        .collect();
    Frame::new(n, nbhd).expect("random frame is well-formed")
}

/// A random formula over `vars`, drawn uniformly over grammar productions
/// with box arity at most 3, to the given connective depth.  Deterministic
/// in the seed.
pub fn random_formula(depth: usize, vars: &[String], seed: u64) -> Formula {
    random_formula_from(depth, vars, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// As [`random_formula`], drawing from a caller-supplied generator.
pub fn random_formula_from(depth: usize, vars: &[String], rng: &mut impl Rng) -> Formula {
    if depth == 0 {
        // Leaves: a variable, top or bot.
        let k = rng.gen_range(0..vars.len() + 2);
        return match k {
            0 => Formula::Top,
            1 => Formula::Bot,
            _ => Formula::var(vars[k - 2].clone()),
        };
    }
    let n_productions = if vars.is_empty() { 8 } else { 9 };
    match rng.gen_range(0..n_productions) {
        0 => Formula::Top,
        1 => Formula::Bot,
        2 => Formula::not(random_formula_from(depth - 1, vars, rng)),
        3 => Formula::and(
            random_formula_from(depth - 1, vars, rng),
            random_formula_from(depth - 1, vars, rng),
        ),
        4 => Formula::or(
            random_formula_from(depth - 1, vars, rng),
            random_formula_from(depth - 1, vars, rng),
        ),
        5 => Formula::implies(
            random_formula_from(depth - 1, vars, rng),
            random_formula_from(depth - 1, vars, rng),
        ),
        6 => Formula::iff(
            random_formula_from(depth - 1, vars, rng),
            random_formula_from(depth - 1, vars, rng),
        ),
        7 => {
            let arity = rng.gen_range(0..=3);
            let inst = (0..arity)
                .map(|_| random_formula_from(depth - 1, vars, rng))
                .collect();
            Formula::boxed(inst, random_formula_from(depth - 1, vars, rng))
        }
        _ => Formula::var(vars[rng.gen_range(0..vars.len())].clone()),
    }
}

/// JSON file form of a model: named worlds, neighbourhoods as lists of
/// lists of world names, and an optional valuation.
///
/// ```json
/// {"worlds": ["w0", "w1"],
///  "N": {"w0": [["w0", "w1"], []], "w1": []},
///  "V": {"p": ["w1"]}}
/// ```
///
/// Worlds missing from `"N"` have no neighbourhoods; variables missing from
/// `"V"` are false everywhere.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FrameFile {
    pub worlds: Vec<String>,
    #[serde(rename = "N", default)]
    pub neighbourhoods: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(rename = "V", default, skip_serializing_if = "BTreeMap::is_empty")]
    pub valuation: BTreeMap<String, Vec<String>>,
}

impl FrameFile {
    /// Resolves names to a model plus the world-name table.
    pub fn into_model(self) -> Result<(Model, Vec<String>), SemanticsError> {
        let n = self.worlds.len();
        if n == 0 {
            return Err(SemanticsError::MalformedFrame("no worlds".to_string()));
        }
        if n > 63 {
            return Err(SemanticsError::MalformedFrame(format!("{n} worlds is too many")));
        }
        let index: BTreeMap<&str, usize> = self
            .worlds
            .iter()
            .enumerate()
            .map(|(i, w)| (w.as_str(), i))
            .collect();
        if index.len() != n {
            return Err(SemanticsError::MalformedFrame("duplicate world name".to_string()));
        }
        let resolve = |name: &str| -> Result<usize, SemanticsError> {
            index
                .get(name)
                .copied()
                .ok_or_else(|| SemanticsError::UnknownWorld { world: name.to_string() })
        };
        let mut nbhd = vec![Vec::new(); n];
        for (w, sets) in &self.neighbourhoods {
            let wi = resolve(w)?;
            for set in sets {
                let mut mask = WorldSet::EMPTY;
                for member in set {
                    mask = mask.with(resolve(member)?);
                }
                nbhd[wi].push(mask);
            }
        }
        let mut valuation = Valuation::new();
        for (var, members) in &self.valuation {
            let mut mask = WorldSet::EMPTY;
            for member in members {
                mask = mask.with(resolve(member)?);
            }
            valuation.set(var.clone(), mask);
        }
        Ok((Model { frame: Frame::new(n, nbhd)?, valuation }, self.worlds))
    }

    /// File form of a model, naming world `i` as `w{i}`.
    pub fn from_model(frame: &Frame, valuation: &Valuation) -> FrameFile {
        let n = frame.num_worlds();
        let name = |w: usize| format!("w{w}");
        FrameFile {
            worlds: frame.worlds().map(name).collect(),
            neighbourhoods: frame
                .worlds()
                .map(|w| {
                    (
                        name(w),
                        frame
                            .neighbourhoods(w)
                            .iter()
                            .map(|s| s.members(n).map(name).collect())
                            .collect(),
                    )
                })
                .collect(),
            valuation: valuation
                .0
                .iter()
                .map(|(var, s)| (var.clone(), s.members(n).map(name).collect()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_inl;
    use proptest::prelude::*;

    fn frame1(sets: &[u64]) -> Frame {
        Frame::new(1, vec![sets.iter().map(|&s| WorldSet(s)).collect()]).unwrap()
    }

    #[test]
    fn box_at_empty_neighbourhood() {
        // The empty set satisfies the universal part vacuously and no
        // instantial part.
        let f = frame1(&[0b0]);
        let v = Valuation::new();
        let nullary = parse_inl("Box(; bot)").unwrap();
        assert!(satisfies(&f, &v, 0, &nullary).unwrap());
        let unary = parse_inl("Box(top; top)").unwrap();
        assert!(!satisfies(&f, &v, 0, &unary).unwrap());
    }

    #[test]
    fn box_needs_witnesses_and_universal_truth() {
        // W = {0, 1}, N(0) = {{0, 1}}.
        let f = Frame::new(2, vec![vec![WorldSet(0b11)], vec![]]).unwrap();
        let mut v = Valuation::new();
        v.set("p", WorldSet(0b01));
        v.set("q", WorldSet(0b11));
        let phi = parse_inl("Box(p; q)").unwrap();
        assert!(satisfies(&f, &v, 0, &phi).unwrap());
        // Universal part fails once q is false somewhere in the set.
        v.set("q", WorldSet(0b01));
        assert!(!satisfies(&f, &v, 0, &phi).unwrap());
        // Witness for p disappears when p is false everywhere.
        v.set("q", WorldSet(0b11));
        v.set("p", WorldSet(0b00));
        assert!(!satisfies(&f, &v, 0, &phi).unwrap());
    }

    #[test]
    fn unknown_world_is_an_error() {
        let f = frame1(&[]);
        assert!(satisfies(&f, &Valuation::new(), 1, &Formula::Top).is_err());
        assert!(valid_at(&f, 1, &Formula::Top).is_err());
    }

    #[test]
    fn validity_examples() {
        // W = {0}, N(0) = {{0}}: p -> Box(p; top) is valid at 0.
        let f = frame1(&[0b1]);
        let phi = parse_inl("p -> Box(p; top)").unwrap();
        assert!(valid_at(&f, 0, &phi).unwrap());
        // W = {0}, N(0) = {{}}: Box(; p) -> Box(p; top) fails at 0 because
        // the empty neighbourhood has no witness for p.
        let g = frame1(&[0b0]);
        let psi = parse_inl("Box(; p) -> Box(p; top)").unwrap();
        assert!(!valid_at(&g, 0, &psi).unwrap());
        assert!(valid_at(&f, 0, &psi).unwrap());
    }

    #[test]
    fn frame_enumeration_counts() {
        let one: Vec<Frame> = enumerate_frames(1).collect();
        assert_eq!(one.len(), 4);
        // First frame: no neighbourhoods anywhere.
        assert_eq!(one[0].neighbourhoods(0), &[] as &[WorldSet]);
        assert_eq!(enumerate_frames(2).count(), 256);
        // Frames are pairwise distinct.
        let two: Vec<Frame> = enumerate_frames(2).collect();
        for (i, f) in two.iter().enumerate() {
            assert!(two[i + 1..].iter().all(|g| g != f));
        }
    }

    #[test]
    fn valuation_enumeration_counts() {
        let vars = vec!["p".to_string(), "q".to_string()];
        assert_eq!(all_valuations(&vars, 2).count(), 16);
        assert_eq!(all_valuations(&[], 2).count(), 1);
    }

    #[test]
    fn random_generation_is_deterministic() {
        assert_eq!(random_frame(3, 7), random_frame(3, 7));
        assert_ne!(random_frame(3, 7), random_frame(3, 8));
        let vars = vec!["p".to_string()];
        assert_eq!(random_formula(3, &vars, 5), random_formula(3, &vars, 5));
        for seed in 0..20 {
            match random_formula(0, &vars, seed) {
                Formula::Var(_) | Formula::Top | Formula::Bot => {}
                other => panic!("depth-0 formula is not a leaf: {other:?}"),
            }
        }
    }

    #[test]
    fn frame_file_roundtrip() {
        let text = r#"{"worlds": ["a", "b"],
                       "N": {"a": [["a", "b"], []], "b": []},
                       "V": {"p": ["b"]}}"#;
        let file: FrameFile = serde_json::from_str(text).unwrap();
        let (model, names) = file.into_model().unwrap();
        assert_eq!(names, vec!["a", "b"]);
        assert_eq!(model.frame.neighbourhoods(0), &[WorldSet(0b00), WorldSet(0b11)]);
        assert_eq!(model.frame.neighbourhoods(1), &[] as &[WorldSet]);
        assert_eq!(model.valuation.get("p"), WorldSet(0b10));
        let back = FrameFile::from_model(&model.frame, &model.valuation);
        let (model2, _) = back.into_model().unwrap();
        assert_eq!(model.frame, model2.frame);
        assert_eq!(model.valuation, model2.valuation);
    }

    #[test]
    fn frame_file_rejects_unknown_worlds() {
        let text = r#"{"worlds": ["a"], "N": {"a": [["zzz"]]}}"#;
        let file: FrameFile = serde_json::from_str(text).unwrap();
        assert!(file.into_model().is_err());
        let text = r#"{"worlds": ["a", "a"]}"#;
        let file: FrameFile = serde_json::from_str(text).unwrap();
        assert!(file.into_model().is_err());
    }

    proptest! {
        /// Formulas without negation-like connectives are positive, and
        /// satisfaction of positive formulas is monotone in the valuation.
        #[test]
        fn positive_formulas_are_monotone(
            seed in 0u64..500,
            frame_seed in 0u64..500,
            var in 0usize..2,
            world_bit in 0usize..2,
        ) {
            fn negation_free(f: &Formula) -> bool {
                match f {
                    Formula::Var(_) | Formula::Top | Formula::Bot => true,
                    Formula::Not(_) | Formula::Implies(..) | Formula::Iff(..) => false,
                    Formula::And(a, b) | Formula::Or(a, b) => {
                        negation_free(a) && negation_free(b)
                    }
                    Formula::Box { inst, univ } => {
                        inst.iter().all(negation_free) && negation_free(univ)
                    }
                }
            }
            let vars = vec!["p".to_string(), "q".to_string()];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // Redraw until negation-free; such formulas are positive.
            let phi = loop {
                let f = random_formula_from(2, &vars, &mut rng);
                if negation_free(&f) {
                    break f;
                }
            };
            prop_assert!(phi.is_positive());
            let frame = random_frame(2, frame_seed);
            let var = &vars[var];
            for val in all_valuations(&vars, 2) {
                if val.get(var).contains(world_bit) {
                    continue;
                }
                let mut bigger = val.clone();
                bigger.set(var.clone(), val.get(var).with(world_bit));
                for w in frame.worlds() {
                    let before = satisfies(&frame, &val, w, &phi).unwrap();
                    let after = satisfies(&frame, &bigger, w, &phi).unwrap();
                    prop_assert!(!before || after, "monotonicity failed for {phi:?}");
                }
            }
        }
    }
}
