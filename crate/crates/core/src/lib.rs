//! Symbolic decision procedures for first-order linear arithmetic over the
//! reals with an integer predicate.
//!
//! The headline operation decides, exactly, whether a relation definable in
//! ⟨ℝ,+,<,ℤ⟩ is already definable in ⟨ℝ,+,<,1⟩ — and, when it is not,
//! synthesizes a formula defining ℤ from the relation. Around it sit the
//! building blocks: exact rational arithmetic, a formula language with
//! parser and printer, quantifier elimination for the pure-order theory,
//! for Presburger arithmetic, and for the mixed theory, polyhedral local
//! geometry (strata, singular points, face census), one-dimensional
//! periodicity analysis, and a brute-force oracle used by the test suite.

pub mod definability;
pub mod eval;
pub mod formula;
pub mod geometry;
pub mod interval;
pub mod linalg;
pub mod oracle;
pub mod parse;
pub mod periodicity;
pub mod plot;
pub mod print;
pub mod qe;
pub mod rat;
pub mod simplify;
pub mod term;

pub use eval::{evaluate, Assignment};
pub use formula::{Atom, CmpOp, Formula, Sort};
pub use parse::{parse, ParseError};
pub use print::render;
pub use rat::Rat;
pub use term::{LinearTerm, TermVar};
