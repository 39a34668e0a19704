//! Quantifier-elimination engines.
//!
//! Three theories share one interface and are selected by name at runtime
//! (`ss`, `presburger`, `lira`): the dense order with addition and 1, pure
//! Presburger arithmetic, and the mixed real/integer theory.

pub mod int;
pub mod lira;
pub mod real;

use crate::formula::{Formula, Sort};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QeError {
    #[error("unsupported atom for this theory: {0}")]
    UnsupportedAtom(String),
    #[error("non-integer coefficient or constant in: {0}")]
    NonInteger(String),
    #[error("free variables present: {0}")]
    FreeVars(String),
    #[error("quantified input where quantifier-free was required")]
    NotQuantifierFree,
    #[error("unsatisfiable input")]
    Unsat,
    #[error("{0}")]
    Other(String),
}

/// A quantifier-elimination strategy for one theory.
pub trait QeEngine: Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    /// Rewrites to an equivalent quantifier-free formula.
    fn eliminate(&self, f: &Formula) -> Result<Formula, QeError>;
    /// Decides a closed sentence.
    fn decide(&self, f: &Formula) -> Result<bool, QeError>;
}

struct SsEngine;

impl QeEngine for SsEngine {
    fn name(&self) -> &'static str {
        "ss"
    }
    fn describe(&self) -> &'static str {
        "linear real arithmetic with order and 1 (comparison atoms only)"
    }
    fn eliminate(&self, f: &Formula) -> Result<Formula, QeError> {
        real::eliminate_real(f)
    }
    fn decide(&self, f: &Formula) -> Result<bool, QeError> {
        real::decide_ss(f)
    }
}

struct PresburgerEngine;

impl QeEngine for PresburgerEngine {
    fn name(&self) -> &'static str {
        "presburger"
    }
    fn describe(&self) -> &'static str {
        "integer arithmetic with order (all variables range over the integers)"
    }
    fn eliminate(&self, f: &Formula) -> Result<Formula, QeError> {
        int::eliminate_int(&retag_int(f))
    }
    fn decide(&self, f: &Formula) -> Result<bool, QeError> {
        int::decide_int(&retag_int(f))
    }
}

struct LiraEngine;

impl QeEngine for LiraEngine {
    fn name(&self) -> &'static str {
        "lira"
    }
    fn describe(&self) -> &'static str {
        "mixed linear real/integer arithmetic (the full input language)"
    }
    fn eliminate(&self, f: &Formula) -> Result<Formula, QeError> {
        lira::eliminate_ls(f)
    }
    fn decide(&self, f: &Formula) -> Result<bool, QeError> {
        lira::decide_ls(f)
    }
}

static ENGINES: [&'static dyn QeEngine; 3] = [&SsEngine, &PresburgerEngine, &LiraEngine];

pub fn engines() -> &'static [&'static dyn QeEngine] {
    &ENGINES
}

pub fn engine(name: &str) -> Option<&'static dyn QeEngine> {
    ENGINES.iter().copied().find(|e| e.name() == name)
}

/// Reinterprets every quantifier as integer-sorted; used when a formula in
/// the surface language (which has only real-sorted quantifiers) is read as
/// a Presburger formula.
pub fn retag_int(f: &Formula) -> Formula {
    match f {
        Formula::True | Formula::False | Formula::Atom(_) => f.clone(),
        Formula::Not(g) => Formula::not(retag_int(g)),
        Formula::And(gs) => Formula::and(gs.iter().map(retag_int).collect()),
        Formula::Or(gs) => Formula::or(gs.iter().map(retag_int).collect()),
        Formula::Exists(v, _, g) => Formula::exists(v, Sort::Int, retag_int(g)),
        Formula::Forall(v, _, g) => Formula::forall(v, Sort::Int, retag_int(g)),
    }
}
