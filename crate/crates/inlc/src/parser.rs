//! Recursive-descent parser for the formula language.
//!
//! Grammar, loosest to tightest: `<->` (left), `->` (right), `|`, `&`, `~`,
//! then atoms `top`, `bot`, identifiers, `Box(a1, .., an; c)` and
//! parenthesised formulas.  `Box(; c)` is the nullary modality.

use crate::formula::Formula;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

/// Half-open range of character offsets into the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("parse error at {}..{}: {message}", span.start, span.end)]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Top,
    Bot,
    BoxKw,
    Tilde,
    Amp,
    Pipe,
    Arrow,
    DArrow,
    LParen,
    RParen,
    Comma,
    Semi,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier '{s}'"),
            Tok::Top => write!(f, "'top'"),
            Tok::Bot => write!(f, "'bot'"),
            Tok::BoxKw => write!(f, "'Box'"),
            Tok::Tilde => write!(f, "'~'"),
            Tok::Amp => write!(f, "'&'"),
            Tok::Pipe => write!(f, "'|'"),
            Tok::Arrow => write!(f, "'->'"),
            Tok::DArrow => write!(f, "'<->'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::Comma => write!(f, "','"),
            Tok::Semi => write!(f, "';'"),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
            }
            '(' | ')' | ',' | ';' | '~' | '&' | '|' => {
                let tok = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    '~' => Tok::Tilde,
                    '&' => Tok::Amp,
                    _ => Tok::Pipe,
                };
                i += 1;
                toks.push((tok, SourceSpan { start, end: i }));
            }
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    i += 2;
                    toks.push((Tok::Arrow, SourceSpan { start, end: i }));
                } else {
                    return Err(ParseError {
                        span: SourceSpan { start, end: start + 1 },
                        message: "expected '->'".to_string(),
                    });
                }
            }
            '<' => {
                if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') {
                    i += 3;
                    toks.push((Tok::DArrow, SourceSpan { start, end: i }));
                } else {
                    return Err(ParseError {
                        span: SourceSpan { start, end: start + 1 },
                        message: "expected '<->'".to_string(),
                    });
                }
            }
            c if c.is_ascii_alphabetic() => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let tok = match word.as_str() {
                    "top" => Tok::Top,
                    "bot" => Tok::Bot,
                    "Box" => Tok::BoxKw,
                    _ => Tok::Ident(word),
                };
                toks.push((tok, SourceSpan { start, end: i }));
            }
            c => {
                return Err(ParseError {
                    span: SourceSpan { start, end: start + 1 },
                    message: format!("unexpected character '{c}'"),
                });
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
    input_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> SourceSpan {
        match self.toks.get(self.pos) {
            Some((_, s)) => *s,
            None => SourceSpan { start: self.input_len, end: self.input_len },
        }
    }

    fn found(&self) -> String {
        match self.toks.get(self.pos) {
            Some((t, _)) => t.to_string(),
            None => "end of input".to_string(),
        }
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        self.pos += 1;
        t
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if self.peek() == Some(want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, want: &Tok) -> Result<(), ParseError> {
        if self.eat(want) {
            Ok(())
        } else {
            Err(self.err(format!("expected {want}, found {}", self.found())))
        }
    }

    fn err(&self, message: String) -> ParseError {
        ParseError { span: self.here(), message }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.implication()?;
        while self.eat(&Tok::DArrow) {
            let rhs = self.implication()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.implication()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Tok::Pipe) {
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.negation()?;
        while self.eat(&Tok::Amp) {
            let rhs = self.negation()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn negation(&mut self) -> Result<Formula, ParseError> {
        if self.eat(&Tok::Tilde) {
            Ok(Formula::not(self.negation()?))
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Top) => {
                self.bump();
                Ok(Formula::Top)
            }
            Some(Tok::Bot) => {
                self.bump();
                Ok(Formula::Bot)
            }
            Some(Tok::Ident(_)) => {
                let Tok::Ident(name) = self.bump() else { unreachable!() };
                Ok(Formula::Var(name))
            }
            Some(Tok::BoxKw) => {
                self.bump();
                self.expect(&Tok::LParen)?;
                let mut inst = Vec::new();
                if self.peek() != Some(&Tok::Semi) {
                    inst.push(self.formula()?);
                    loop {
                        if self.eat(&Tok::Comma) {
                            inst.push(self.formula()?);
                        } else if self.peek() == Some(&Tok::Semi) {
                            break;
                        } else {
                            return Err(
                                self.err(format!("expected ',' or ';', found {}", self.found()))
                            );
                        }
                    }
                }
                self.expect(&Tok::Semi)?;
                let univ = self.formula()?;
                self.expect(&Tok::RParen)?;
                Ok(Formula::boxed(inst, univ))
            }
            Some(Tok::LParen) => {
                self.bump();
                let f = self.formula()?;
                self.expect(&Tok::RParen)?;
                Ok(f)
            }
            _ => Err(self.err(format!("expected a formula, found {}", self.found()))),
        }
    }
}

/// Parses a formula from text.
pub fn parse_inl(input: &str) -> Result<Formula, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser { toks, pos: 0, input_len: input.chars().count() };
    let f = p.formula()?;
    if p.peek().is_some() {
        return Err(p.err(format!("expected end of input, found {}", p.found())));
    }
    Ok(f)
}
