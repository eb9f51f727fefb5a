//! Fixed formula corpora shared by the verification suites and the
//! acceptance tests.
//!
//! Three collections with distinct contracts:
//!
//! * [`edge_corpus`]: grammar-edge formulas for translation checks
//!   (nullary boxes, nested instantial nabla chains, pure universal
//!   coordinates, every connective in every slot).
//! * [`sahlqvist_corpus`]: implications spanning all three Sahlqvist
//!   tiers; every entry classifies below `NotSahlqvist`.
//! * [`classifier_ground_truth`]: twelve hand-labelled formulas, four
//!   per tier boundary, pinning the classifier's verdicts.
//! * [`non_sahlqvist_controls`]: formulas the correspondence routines
//!   must reject.

use crate::classify::Verdict;
use crate::formula::Formula;
use crate::parser::parse_inl;

/// Parses a corpus entry. Corpus sources are fixed strings, so a parse
/// failure is a bug in this module, not an input error.
fn f(src: &str) -> Formula {
    match parse_inl(src) {
        Ok(phi) => phi,
        Err(e) => panic!("corpus entry {src:?} failed to parse: {e}"),
    }
}

/// Hand-written formulas exercising the corners of the INL grammar that
/// random generation rarely reaches: nullary boxes, nabla chains with
/// modal pure bounds, boxes in both coordinate slots, and the defined
/// connectives. Used by the standard-translation and bimodal-translation
/// equivalence checks.
pub fn edge_corpus() -> Vec<Formula> {
    [
        // Nullary boxes: the instantial block is empty, only the
        // universal conjunct survives.
        "Box(; top)",
        "Box(; bot)",
        "Box(; p)",
        // Nabla shapes, including a chain and a modal pure bound.
        "~Box(~p; top)",
        "~Box(~(p & q); Box(; top))",
        "~Box(~~Box(~p; bot); top)",
        // Wide and nested instantial blocks.
        "Box(p, q, r; s)",
        "Box(Box(; p), q; r)",
        "Box(Box(p; q); Box(; r))",
        // Boxes in the universal slot.
        "Box(p; Box(q; r))",
        "Box(p; ~Box(q; ~p))",
        // Constants in both slots.
        "Box(top; top)",
        "Box(bot; p)",
        "Box(~p; ~q)",
        // Defined connectives, inside and outside boxes.
        "p -> Box(p; top)",
        "Box(p; q) -> Box(q; p)",
        "p <-> ~~p",
        "(p -> q) -> Box(; p -> q)",
        "Box(p & q, p | q; p -> q)",
        "p & ~q | r",
        "bot <-> ~top",
    ]
    .into_iter()
    .map(f)
    .collect()
}

/// Sahlqvist implications spanning all three tiers. Invariant: every
/// entry classifies strictly below `NotSahlqvist`, so the corpus is
/// usable for correspondence, route-agreement, and preservation checks
/// without filtering.
pub fn sahlqvist_corpus() -> Vec<Formula> {
    [
        // Very simple tier, including the three formulas whose
        // correspondents are pinned in the correspondence tests.
        "Box(p; top) -> p",
        "p -> Box(p; top)",
        "Box(; p) -> Box(p; top)",
        "Box(p; q) -> p",
        "Box(p, q; r) -> Box(q, p; r)",
        "p & Box(q; top) -> Box(p & q, q; top)",
        "Box(p; bot) -> p",
        "bot -> p",
        "top -> Box(; top)",
        "Box(p; p) -> Box(; p)",
        "Box(Box(p; top); q) -> q",
        // Simple tier: pseudo-boxed atoms in antecedent and universal
        // positions, including a genuine nabla chain.
        "~Box(~p; top) -> p",
        "~Box(~~Box(~p; top); top) -> p",
        "Box(p; p & q) -> p",
        "Box(q; ~Box(~p; top)) -> p",
        "~Box(~(p & q); Box(; top)) -> p",
        "Box(p, ~Box(~q; top); r & r) -> p & q",
        "Box(q; ~Box(~p; bot)) -> Box(p, q; top)",
        // Full tier: disjunction and negative parts.
        "Box(p; ~q) -> p",
        "p | Box(q; top) -> Box(p | q; top)",
        "Box(p, ~q; r) -> r",
        "p | Box(q, ~r; s) -> Box(p | q; top)",
        "~p -> q",
        "Box(~p; top) -> Box(top; top)",
    ]
    .into_iter()
    .map(f)
    .collect()
}

/// Twelve hand-labelled classification cases, four per tier boundary.
/// Each quadruple straddles one boundary; the negative side of each
/// boundary reuses the false cases from the classifier's own contract
/// (`Box(p; q & q)` fails very simple, `Box(p; ~q)` fails simple,
/// `Box(p; Box(q; top))` fails every tier).
pub fn classifier_ground_truth() -> Vec<(Formula, Verdict)> {
    use Verdict::*;
    [
        // Boundary: very simple / simple.
        ("Box(p; q) -> p", VerySimple),
        ("Box(p; top) -> p", VerySimple),
        ("Box(p; q & q) -> p", Simple),
        ("~Box(~p; top) -> p", Simple),
        // Boundary: simple / full.
        ("Box(p; p & q) -> p", Simple),
        ("Box(q; ~Box(~p; top)) -> p", Simple),
        ("Box(p; ~q) -> p", Full),
        ("p | Box(q; top) -> p", Full),
        // Boundary: full / not Sahlqvist.
        ("Box(p, ~q; r) -> r", Full),
        ("Box(p; Box(q; top)) -> p", NotSahlqvist),
        ("p -> ~p", NotSahlqvist),
        ("Box(p; p | q) -> p", NotSahlqvist),
    ]
    .into_iter()
    .map(|(src, verdict)| (f(src), verdict))
    .collect()
}

/// Formulas outside every Sahlqvist tier: a box nested in the universal
/// slot, a diamond-like double negation in the universal slot, and a
/// non-positive consequent. The correspondence routines must reject all
/// of them.
pub fn non_sahlqvist_controls() -> Vec<Formula> {
    ["Box(p; Box(q; top)) -> p", "Box(; ~Box(; ~p)) -> p", "p -> ~p"]
        .into_iter()
        .map(f)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;
    use crate::print::{print_inl, Format};
    use std::collections::BTreeSet;

    fn rendered(corpus: &[Formula]) -> Vec<String> {
        corpus.iter().map(|phi| print_inl(phi, Format::Text)).collect()
    }

    #[test]
    fn corpora_have_no_duplicates() {
        for corpus in [edge_corpus(), sahlqvist_corpus(), non_sahlqvist_controls()] {
            let texts = rendered(&corpus);
            let distinct: BTreeSet<&String> = texts.iter().collect();
            assert_eq!(distinct.len(), texts.len(), "duplicate in {texts:?}");
        }
    }

    #[test]
    fn edge_corpus_covers_required_shapes() {
        let texts = rendered(&edge_corpus());
        assert!(texts.len() >= 20);
        // Nullary box, nabla chain, and modal pure bound are the shapes
        // random generation misses; keep them pinned by name.
        assert!(texts.iter().any(|t| t == "Box(; top)"));
        assert!(texts.iter().any(|t| t == "~Box(~~Box(~p; bot); top)"));
        assert!(texts.iter().any(|t| t == "~Box(~(p & q); Box(; top))"));
    }

    #[test]
    fn sahlqvist_corpus_is_sahlqvist_and_spans_tiers() {
        let corpus = sahlqvist_corpus();
        assert!(corpus.len() >= 20);
        let mut seen = BTreeSet::new();
        for phi in &corpus {
            let class = classify(phi);
            assert_ne!(
                class.verdict,
                Verdict::NotSahlqvist,
                "corpus entry {} must be Sahlqvist: {:?}",
                print_inl(phi, Format::Text),
                class.reason,
            );
            seen.insert(class.verdict);
        }
        for tier in [Verdict::VerySimple, Verdict::Simple, Verdict::Full] {
            assert!(seen.contains(&tier), "no corpus entry classifies as {tier:?}");
        }
    }

    #[test]
    fn ground_truth_has_twelve_entries_across_all_verdicts() {
        let truth = classifier_ground_truth();
        assert_eq!(truth.len(), 12);
        let mut counts = std::collections::BTreeMap::new();
        for (_, verdict) in &truth {
            *counts.entry(*verdict).or_insert(0u32) += 1;
        }
        for verdict in [
            Verdict::VerySimple,
            Verdict::Simple,
            Verdict::Full,
            Verdict::NotSahlqvist,
        ] {
            assert!(counts[&verdict] >= 2, "fewer than two {verdict:?} labels");
        }
    }

    #[test]
    fn controls_are_rejected_by_the_classifier() {
        let controls = non_sahlqvist_controls();
        assert_eq!(controls.len(), 3);
        for phi in &controls {
            assert_eq!(classify(phi).verdict, Verdict::NotSahlqvist);
        }
    }
}
