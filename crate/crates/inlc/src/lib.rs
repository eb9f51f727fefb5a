//! Correspondence toolkit for instantial neighbourhood logic (INL).
//!
//! INL is modal logic over neighbourhood frames with an (n+1)-ary modality
//! `Box(a1, .., an; c)`: true at a world `w` when some neighbourhood `S` of
//! `w` satisfies `c` at every member and each `ai` at some member.  This
//! crate provides:
//!
//! * the formula language with parser and printers ([`formula`], [`parser`],
//!   [`print`]),
//! * finite neighbourhood frames and model checking ([`semantics`]),
//! * the two-sorted first-order frame language and its standard translation
//!   ([`fo`], [`st`]),
//! * a classifier for the Sahlqvist fragment ([`classify`]) and two
//!   independent first-order correspondence routes: direct minimal valuation
//!   ([`correspond`]) and reduction to a normal bimodal logic ([`bimodal`]),
//! * a brute-force verification harness that checks every translation and
//!   correspondence claim against finite frames ([`verify`]).

pub mod bimodal;
pub mod classify;
pub mod corpus;
pub mod correspond;
pub mod fo;
pub mod formula;
pub mod parser;
pub mod print;
pub mod semantics;
pub mod st;
pub mod verify;

pub use classify::{classify, SahlqvistClass, Verdict};
pub use correspond::{correspondent_direct, CorrespondError};
pub use formula::{Formula, Polarity};
pub use parser::parse_inl;
pub use print::Format;
pub use semantics::{Frame, Model, Valuation};
pub use st::st;
