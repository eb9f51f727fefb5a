//! Printers for the three formula languages in text, JSON and LaTeX.
//!
//! Text output of modal formulas re-parses to the same AST; the other
//! languages are produced, never consumed, so their text forms only need
//! to be unambiguous.  Equal ASTs always print identically.  JSON output
//! is a faithful tagged encoding of the AST with alphabetically ordered
//! keys.

use crate::bimodal::{SubsetFormula, WorldFormula};
use crate::fo::FoFormula;
use crate::formula::Formula;
use serde_json::{json, Value};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Latex,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "latex" => Ok(Format::Latex),
            other => Err(format!("unknown format '{other}' (expected text, json or latex)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Latex => "latex",
        })
    }
}

/// Renders a variable name for LaTeX, moving a trailing digit run into a
/// subscript: `y12` becomes `y_{12}`.
fn latex_name(name: &str) -> String {
    let split = name.len() - name.chars().rev().take_while(|c| c.is_ascii_digit()).count();
    if split == name.len() || split == 0 {
        name.to_string()
    } else {
        format!("{}_{{{}}}", &name[..split], &name[split..])
    }
}

pub fn print_inl(phi: &Formula, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            inl_text(phi, 1, &mut out);
            out
        }
        Format::Latex => {
            let mut out = String::new();
            inl_latex(phi, 1, &mut out);
            out
        }
        Format::Json => inl_json(phi).to_string(),
    }
}

fn inl_prec(phi: &Formula) -> u8 {
    match phi {
        Formula::Iff(..) => 1,
        Formula::Implies(..) => 2,
        Formula::Or(..) => 3,
        Formula::And(..) => 4,
        Formula::Not(..) => 5,
        _ => 6,
    }
}

fn inl_text(phi: &Formula, min: u8, out: &mut String) {
    let wrap = inl_prec(phi) < min;
    if wrap {
        out.push('(');
    }
    match phi {
        Formula::Var(name) => out.push_str(name),
        Formula::Bot => out.push_str("bot"),
        Formula::Top => out.push_str("top"),
        Formula::Not(f) => {
            out.push('~');
            inl_text(f, 5, out);
        }
        Formula::And(a, b) => {
            inl_text(a, 4, out);
            out.push_str(" & ");
            inl_text(b, 5, out);
        }
        Formula::Or(a, b) => {
            inl_text(a, 3, out);
            out.push_str(" | ");
            inl_text(b, 4, out);
        }
        Formula::Implies(a, b) => {
            inl_text(a, 3, out);
            out.push_str(" -> ");
            inl_text(b, 2, out);
        }
        Formula::Iff(a, b) => {
            inl_text(a, 1, out);
            out.push_str(" <-> ");
            inl_text(b, 2, out);
        }
        Formula::Box { inst, univ } => {
            out.push_str("Box(");
            for (i, f) in inst.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                inl_text(f, 1, out);
            }
            out.push_str("; ");
            inl_text(univ, 1, out);
            out.push(')');
        }
    }
    if wrap {
        out.push(')');
    }
}

fn inl_latex(phi: &Formula, min: u8, out: &mut String) {
    let wrap = inl_prec(phi) < min;
    if wrap {
        out.push('(');
    }
    match phi {
        Formula::Var(name) => out.push_str(&latex_name(name)),
        Formula::Bot => out.push_str("\\bot"),
        Formula::Top => out.push_str("\\top"),
        Formula::Not(f) => {
            out.push_str("\\neg ");
            inl_latex(f, 5, out);
        }
        Formula::And(a, b) => {
            inl_latex(a, 4, out);
            out.push_str(" \\land ");
            inl_latex(b, 5, out);
        }
        Formula::Or(a, b) => {
            inl_latex(a, 3, out);
            out.push_str(" \\lor ");
            inl_latex(b, 4, out);
        }
        Formula::Implies(a, b) => {
            inl_latex(a, 3, out);
            out.push_str(" \\to ");
            inl_latex(b, 2, out);
        }
        Formula::Iff(a, b) => {
            inl_latex(a, 1, out);
            out.push_str(" \\leftrightarrow ");
            inl_latex(b, 2, out);
        }
        Formula::Box { inst, univ } => {
            out.push_str(&format!("\\Box_{{{}}}(", inst.len()));
            for (i, f) in inst.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                inl_latex(f, 1, out);
            }
            out.push_str("; ");
            inl_latex(univ, 1, out);
            out.push(')');
        }
    }
    if wrap {
        out.push(')');
    }
}

fn inl_json(phi: &Formula) -> Value {
    match phi {
        Formula::Var(name) => json!({ "op": "var", "name": name }),
        Formula::Bot => json!({ "op": "bot" }),
        Formula::Top => json!({ "op": "top" }),
        Formula::Not(f) => json!({ "op": "not", "arg": inl_json(f) }),
        Formula::And(a, b) => json!({ "op": "and", "lhs": inl_json(a), "rhs": inl_json(b) }),
        Formula::Or(a, b) => json!({ "op": "or", "lhs": inl_json(a), "rhs": inl_json(b) }),
        Formula::Implies(a, b) => {
            json!({ "op": "implies", "lhs": inl_json(a), "rhs": inl_json(b) })
        }
        Formula::Iff(a, b) => json!({ "op": "iff", "lhs": inl_json(a), "rhs": inl_json(b) }),
        Formula::Box { inst, univ } => json!({
            "op": "box",
            "inst": inst.iter().map(inl_json).collect::<Vec<_>>(),
            "univ": inl_json(univ),
        }),
    }
}

pub fn print_fo(alpha: &FoFormula, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            fo_text(alpha, 1, &mut out);
            out
        }
        Format::Latex => {
            let mut out = String::new();
            fo_latex(alpha, 1, &mut out);
            out
        }
        Format::Json => fo_json(alpha).to_string(),
    }
}

/// Display form of a predicate name: first character uppercased, so the
/// propositional variable `p` appears as the predicate `P`.
fn pred_display(name: &str) -> String {
    let mut chars = name.chars();
    match chars.next() {
        Some(first) => first.to_ascii_uppercase().to_string() + chars.as_str(),
        None => String::new(),
    }
}

fn fo_prec(alpha: &FoFormula) -> u8 {
    match alpha {
        FoFormula::Implies(..) => 2,
        FoFormula::Or(..) => 3,
        FoFormula::And(..) => 4,
        FoFormula::Not(..) => 5,
        FoFormula::EqWorld(..) => 6,
        _ => 7,
    }
}

fn quantifier_prefix(alpha: &FoFormula) -> Option<(&'static str, &String, &FoFormula)> {
    match alpha {
        FoFormula::ForallWorld(v, f) | FoFormula::ForallSet(v, f) => {
            Some(("forall", v, f))
        }
        FoFormula::ExistsWorld(v, f) | FoFormula::ExistsSet(v, f) => {
            Some(("exists", v, f))
        }
        _ => None,
    }
}

fn fo_text(alpha: &FoFormula, min: u8, out: &mut String) {
    if let Some((word, var, mut body)) = quantifier_prefix(alpha) {
        // Chains of quantifiers share one parenthesized body.
        out.push_str(word);
        out.push(' ');
        out.push_str(var);
        while let Some((word, var, inner)) = quantifier_prefix(body) {
            out.push(' ');
            out.push_str(word);
            out.push(' ');
            out.push_str(var);
            body = inner;
        }
        out.push_str(" (");
        fo_text(body, 1, out);
        out.push(')');
        return;
    }
    let wrap = fo_prec(alpha) < min;
    if wrap {
        out.push('(');
    }
    match alpha {
        FoFormula::Pred { name, arg } => {
            out.push_str(&pred_display(name));
            out.push('(');
            out.push_str(arg);
            out.push(')');
        }
        FoFormula::RelNi { set, world } => {
            out.push_str("R_ni(");
            out.push_str(set);
            out.push(',');
            out.push_str(world);
            out.push(')');
        }
        FoFormula::RelN { world, set } => {
            out.push_str("R_N(");
            out.push_str(world);
            out.push(',');
            out.push_str(set);
            out.push(')');
        }
        FoFormula::EqWorld(a, b) => {
            out.push_str(a);
            out.push_str(" = ");
            out.push_str(b);
        }
        FoFormula::True => out.push_str("true"),
        FoFormula::False => out.push_str("false"),
        FoFormula::Not(f) => {
            out.push('~');
            fo_text(f, 7, out);
        }
        FoFormula::And(a, b) => {
            fo_text(a, 4, out);
            out.push_str(" & ");
            fo_text(b, 5, out);
        }
        FoFormula::Or(a, b) => {
            fo_text(a, 3, out);
            out.push_str(" | ");
            fo_text(b, 4, out);
        }
        FoFormula::Implies(a, b) => {
            fo_text(a, 3, out);
            out.push_str(" -> ");
            fo_text(b, 2, out);
        }
        FoFormula::ForallWorld(..)
        | FoFormula::ExistsWorld(..)
        | FoFormula::ForallSet(..)
        | FoFormula::ExistsSet(..) => unreachable!("handled as a quantifier prefix"),
    }
    if wrap {
        out.push(')');
    }
}

fn fo_latex(alpha: &FoFormula, min: u8, out: &mut String) {
    if let Some((_, _, _)) = quantifier_prefix(alpha) {
        let mut body = alpha;
        while let Some((word, var, inner)) = quantifier_prefix(body) {
            out.push_str(if word == "forall" { "\\forall " } else { "\\exists " });
            out.push_str(&latex_name(var));
            out.push(' ');
            body = inner;
        }
        out.push('(');
        fo_latex(body, 1, out);
        out.push(')');
        return;
    }
    let wrap = fo_prec(alpha) < min;
    if wrap {
        out.push('(');
    }
    match alpha {
        FoFormula::Pred { name, arg } => {
            out.push_str(&latex_name(&pred_display(name)));
            out.push_str(&latex_name(arg));
        }
        FoFormula::RelNi { set, world } => {
            out.push_str("R_{\\ni}");
            out.push_str(&latex_name(set));
            out.push_str(&latex_name(world));
        }
        FoFormula::RelN { world, set } => {
            out.push_str("R_{N}");
            out.push_str(&latex_name(world));
            out.push_str(&latex_name(set));
        }
        FoFormula::EqWorld(a, b) => {
            out.push_str(&latex_name(a));
            out.push_str(" = ");
            out.push_str(&latex_name(b));
        }
        FoFormula::True => out.push_str("\\top"),
        FoFormula::False => out.push_str("\\bot"),
        FoFormula::Not(f) => {
            out.push_str("\\neg ");
            fo_latex(f, 7, out);
        }
        FoFormula::And(a, b) => {
            fo_latex(a, 4, out);
            out.push_str(" \\land ");
            fo_latex(b, 5, out);
        }
        FoFormula::Or(a, b) => {
            fo_latex(a, 3, out);
            out.push_str(" \\lor ");
            fo_latex(b, 4, out);
        }
        FoFormula::Implies(a, b) => {
            fo_latex(a, 3, out);
            out.push_str(" \\to ");
            fo_latex(b, 2, out);
        }
        FoFormula::ForallWorld(..)
        | FoFormula::ExistsWorld(..)
        | FoFormula::ForallSet(..)
        | FoFormula::ExistsSet(..) => unreachable!("handled as a quantifier prefix"),
    }
    if wrap {
        out.push(')');
    }
}

fn fo_json(alpha: &FoFormula) -> Value {
    match alpha {
        FoFormula::Pred { name, arg } => json!({ "op": "pred", "name": name, "arg": arg }),
        FoFormula::RelNi { set, world } => {
            json!({ "op": "rel_ni", "set": set, "world": world })
        }
        FoFormula::RelN { world, set } => {
            json!({ "op": "rel_n", "world": world, "set": set })
        }
        FoFormula::EqWorld(a, b) => json!({ "op": "eq", "lhs": a, "rhs": b }),
        FoFormula::True => json!({ "op": "true" }),
        FoFormula::False => json!({ "op": "false" }),
        FoFormula::Not(f) => json!({ "op": "not", "arg": fo_json(f) }),
        FoFormula::And(a, b) => json!({ "op": "and", "lhs": fo_json(a), "rhs": fo_json(b) }),
        FoFormula::Or(a, b) => json!({ "op": "or", "lhs": fo_json(a), "rhs": fo_json(b) }),
        FoFormula::Implies(a, b) => {
            json!({ "op": "implies", "lhs": fo_json(a), "rhs": fo_json(b) })
        }
        FoFormula::ForallWorld(v, f) => {
            json!({ "op": "forall_w", "var": v, "body": fo_json(f) })
        }
        FoFormula::ExistsWorld(v, f) => {
            json!({ "op": "exists_w", "var": v, "body": fo_json(f) })
        }
        FoFormula::ForallSet(v, f) => {
            json!({ "op": "forall_s", "var": v, "body": fo_json(f) })
        }
        FoFormula::ExistsSet(v, f) => {
            json!({ "op": "exists_s", "var": v, "body": fo_json(f) })
        }
    }
}

pub fn print_bimodal(chi: &WorldFormula, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            bi_w_text(chi, 1, &mut out);
            out
        }
        Format::Latex => {
            let mut out = String::new();
            bi_w_latex(chi, 1, &mut out);
            out
        }
        Format::Json => bi_w_json(chi).to_string(),
    }
}

fn bi_w_prec(chi: &WorldFormula) -> u8 {
    match chi {
        WorldFormula::Or(..) => 3,
        WorldFormula::And(..) => 4,
        WorldFormula::Not(..) | WorldFormula::DiamondN(..) | WorldFormula::BoxN(..) => 5,
        _ => 6,
    }
}

fn bi_s_prec(chi: &SubsetFormula) -> u8 {
    match chi {
        SubsetFormula::Or(..) => 3,
        SubsetFormula::And(..) => 4,
        _ => 5,
    }
}

fn bi_w_text(chi: &WorldFormula, min: u8, out: &mut String) {
    let wrap = bi_w_prec(chi) < min;
    if wrap {
        out.push('(');
    }
    match chi {
        WorldFormula::Var(name) => out.push_str(name),
        WorldFormula::Bot => out.push_str("bot"),
        WorldFormula::Top => out.push_str("top"),
        WorldFormula::Not(f) => {
            out.push('~');
            bi_w_text(f, 5, out);
        }
        WorldFormula::And(a, b) => {
            bi_w_text(a, 4, out);
            out.push_str(" & ");
            bi_w_text(b, 5, out);
        }
        WorldFormula::Or(a, b) => {
            bi_w_text(a, 3, out);
            out.push_str(" | ");
            bi_w_text(b, 4, out);
        }
        WorldFormula::DiamondN(s) => {
            out.push_str("<N>");
            bi_s_text(s, 5, out);
        }
        WorldFormula::BoxN(s) => {
            out.push_str("[N]");
            bi_s_text(s, 5, out);
        }
    }
    if wrap {
        out.push(')');
    }
}

fn bi_s_text(chi: &SubsetFormula, min: u8, out: &mut String) {
    let wrap = bi_s_prec(chi) < min;
    if wrap {
        out.push('(');
    }
    match chi {
        SubsetFormula::Not(f) => {
            out.push('~');
            bi_s_text(f, 5, out);
        }
        SubsetFormula::And(a, b) => {
            bi_s_text(a, 4, out);
            out.push_str(" & ");
            bi_s_text(b, 5, out);
        }
        SubsetFormula::Or(a, b) => {
            bi_s_text(a, 3, out);
            out.push_str(" | ");
            bi_s_text(b, 4, out);
        }
        SubsetFormula::DiamondNi(w) => {
            out.push_str("<ni>");
            bi_w_text(w, 5, out);
        }
        SubsetFormula::BoxNi(w) => {
            out.push_str("[ni]");
            bi_w_text(w, 5, out);
        }
    }
    if wrap {
        out.push(')');
    }
}

fn bi_w_latex(chi: &WorldFormula, min: u8, out: &mut String) {
    let wrap = bi_w_prec(chi) < min;
    if wrap {
        out.push('(');
    }
    match chi {
        WorldFormula::Var(name) => out.push_str(&latex_name(name)),
        WorldFormula::Bot => out.push_str("\\bot"),
        WorldFormula::Top => out.push_str("\\top"),
        WorldFormula::Not(f) => {
            out.push_str("\\neg ");
            bi_w_latex(f, 5, out);
        }
        WorldFormula::And(a, b) => {
            bi_w_latex(a, 4, out);
            out.push_str(" \\land ");
            bi_w_latex(b, 5, out);
        }
        WorldFormula::Or(a, b) => {
            bi_w_latex(a, 3, out);
            out.push_str(" \\lor ");
            bi_w_latex(b, 4, out);
        }
        WorldFormula::DiamondN(s) => {
            out.push_str("\\Diamond_{N}");
            bi_s_latex(s, 5, out);
        }
        WorldFormula::BoxN(s) => {
            out.push_str("\\Box_{N}");
            bi_s_latex(s, 5, out);
        }
    }
    if wrap {
        out.push(')');
    }
}

fn bi_s_latex(chi: &SubsetFormula, min: u8, out: &mut String) {
    let wrap = bi_s_prec(chi) < min;
    if wrap {
        out.push('(');
    }
    match chi {
        SubsetFormula::Not(f) => {
            out.push_str("\\neg ");
            bi_s_latex(f, 5, out);
        }
        SubsetFormula::And(a, b) => {
            bi_s_latex(a, 4, out);
            out.push_str(" \\land ");
            bi_s_latex(b, 5, out);
        }
        SubsetFormula::Or(a, b) => {
            bi_s_latex(a, 3, out);
            out.push_str(" \\lor ");
            bi_s_latex(b, 4, out);
        }
        SubsetFormula::DiamondNi(w) => {
            out.push_str("\\Diamond_{\\ni}");
            bi_w_latex(w, 5, out);
        }
        SubsetFormula::BoxNi(w) => {
            out.push_str("\\Box_{\\ni}");
            bi_w_latex(w, 5, out);
        }
    }
    if wrap {
        out.push(')');
    }
}

fn bi_w_json(chi: &WorldFormula) -> Value {
    match chi {
        WorldFormula::Var(name) => json!({ "op": "var", "name": name }),
        WorldFormula::Bot => json!({ "op": "bot" }),
        WorldFormula::Top => json!({ "op": "top" }),
        WorldFormula::Not(f) => json!({ "op": "not", "arg": bi_w_json(f) }),
        WorldFormula::And(a, b) => {
            json!({ "op": "and", "lhs": bi_w_json(a), "rhs": bi_w_json(b) })
        }
        WorldFormula::Or(a, b) => {
            json!({ "op": "or", "lhs": bi_w_json(a), "rhs": bi_w_json(b) })
        }
        WorldFormula::DiamondN(s) => json!({ "op": "dia_n", "arg": bi_s_json(s) }),
        WorldFormula::BoxN(s) => json!({ "op": "box_n", "arg": bi_s_json(s) }),
    }
}

fn bi_s_json(chi: &SubsetFormula) -> Value {
    match chi {
        SubsetFormula::Not(f) => json!({ "op": "not", "arg": bi_s_json(f) }),
        SubsetFormula::And(a, b) => {
            json!({ "op": "and", "lhs": bi_s_json(a), "rhs": bi_s_json(b) })
        }
        SubsetFormula::Or(a, b) => {
            json!({ "op": "or", "lhs": bi_s_json(a), "rhs": bi_s_json(b) })
        }
        SubsetFormula::DiamondNi(w) => json!({ "op": "dia_ni", "arg": bi_w_json(w) }),
        SubsetFormula::BoxNi(w) => json!({ "op": "box_ni", "arg": bi_w_json(w) }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_inl;
    use FoFormula as G;

    fn roundtrip(text: &str) -> String {
        print_inl(&parse_inl(text).unwrap(), Format::Text)
    }

    #[test]
    fn inl_text_examples() {
        assert_eq!(roundtrip("Box(p; q)"), "Box(p; q)");
        assert_eq!(roundtrip("top"), "top");
        assert_eq!(roundtrip("Box(; top)"), "Box(; top)");
        assert_eq!(roundtrip("~p & q | r -> s"), "~p & q | r -> s");
        assert_eq!(roundtrip("p -> (q -> r)"), "p -> q -> r");
        assert_eq!(roundtrip("(p -> q) -> r"), "(p -> q) -> r");
        assert_eq!(roundtrip("p & (q | r)"), "p & (q | r)");
        assert_eq!(roundtrip("~(p & q)"), "~(p & q)");
        assert_eq!(roundtrip("p <-> q <-> r"), "p <-> q <-> r");
        assert_eq!(
            roundtrip("Box(p | q, ~r; s -> t)"),
            "Box(p | q, ~r; s -> t)"
        );
    }

    #[test]
    fn inl_latex_examples() {
        let phi = parse_inl("Box(p, q; r)").unwrap();
        assert_eq!(print_inl(&phi, Format::Latex), "\\Box_{2}(p, q; r)");
        let phi = parse_inl("~p1 & top -> bot").unwrap();
        assert_eq!(
            print_inl(&phi, Format::Latex),
            "\\neg p_{1} \\land \\top \\to \\bot"
        );
    }

    #[test]
    fn inl_json_is_a_tagged_tree() {
        let phi = parse_inl("Box(p; q) -> r").unwrap();
        let v: Value = serde_json::from_str(&print_inl(&phi, Format::Json)).unwrap();
        assert_eq!(v["op"], "implies");
        assert_eq!(v["lhs"]["op"], "box");
        assert_eq!(v["lhs"]["inst"][0]["op"], "var");
        assert_eq!(v["lhs"]["univ"]["name"], "q");
        assert_eq!(v["rhs"]["name"], "r");
    }

    #[test]
    fn fo_text_examples() {
        let alpha = G::exists_set("X", G::rel_n("x", "X"));
        assert_eq!(print_fo(&alpha, Format::Text), "exists X (R_N(x,X))");
        assert_eq!(print_fo(&G::pred("p", "x"), Format::Text), "P(x)");
        assert_eq!(
            print_fo(&G::not(G::eq("x", "x")), Format::Text),
            "~(x = x)"
        );
        let alpha = G::forall_set(
            "X0",
            G::forall_world(
                "y1",
                G::implies(
                    G::and(G::rel_n("x", "X0"), G::rel_ni("X0", "y1")),
                    G::eq("x", "y1"),
                ),
            ),
        );
        assert_eq!(
            print_fo(&alpha, Format::Text),
            "forall X0 forall y1 (R_N(x,X0) & R_ni(X0,y1) -> x = y1)"
        );
    }

    #[test]
    fn fo_latex_examples() {
        let alpha = G::exists_set("X0", G::and(G::rel_n("x", "X0"), G::pred("p", "y1")));
        assert_eq!(
            print_fo(&alpha, Format::Latex),
            "\\exists X_{0} (R_{N}xX_{0} \\land Py_{1})"
        );
        assert_eq!(
            print_fo(&G::rel_ni("X0", "y1"), Format::Latex),
            "R_{\\ni}X_{0}y_{1}"
        );
    }

    #[test]
    fn fo_json_tags() {
        let alpha = G::forall_world("y", G::implies(G::rel_ni("X", "y"), G::pred("p", "y")));
        let v: Value = serde_json::from_str(&print_fo(&alpha, Format::Json)).unwrap();
        assert_eq!(v["op"], "forall_w");
        assert_eq!(v["var"], "y");
        assert_eq!(v["body"]["op"], "implies");
        assert_eq!(v["body"]["lhs"]["op"], "rel_ni");
        assert_eq!(v["body"]["rhs"]["op"], "pred");
    }

    #[test]
    fn bimodal_text_examples() {
        use crate::bimodal::tau;
        let chi = tau(&parse_inl("Box(p, q; r)").unwrap());
        assert_eq!(
            print_bimodal(&chi, Format::Text),
            "<N>(<ni>p & <ni>q & [ni]r)"
        );
        let chi = tau(&parse_inl("Box(; p)").unwrap());
        assert_eq!(print_bimodal(&chi, Format::Text), "<N>[ni]p");
        let chi = tau(&parse_inl("~Box(~p; top)").unwrap());
        assert_eq!(print_bimodal(&chi, Format::Text), "~<N>(<ni>~p & [ni]top)");
    }

    #[test]
    fn bimodal_latex_and_json() {
        use crate::bimodal::tau;
        let chi = tau(&parse_inl("Box(p; r)").unwrap());
        assert_eq!(
            print_bimodal(&chi, Format::Latex),
            "\\Diamond_{N}(\\Diamond_{\\ni}p \\land \\Box_{\\ni}r)"
        );
        let v: Value =
            serde_json::from_str(&print_bimodal(&chi, Format::Json)).unwrap();
        assert_eq!(v["op"], "dia_n");
        assert_eq!(v["arg"]["op"], "and");
        assert_eq!(v["arg"]["lhs"]["op"], "dia_ni");
        assert_eq!(v["arg"]["rhs"]["op"], "box_ni");
    }

    #[test]
    fn determinism() {
        let phi = parse_inl("Box(p | q; ~r) -> p").unwrap();
        for format in [Format::Text, Format::Json, Format::Latex] {
            assert_eq!(print_inl(&phi, format), print_inl(&phi, format));
        }
    }
}
