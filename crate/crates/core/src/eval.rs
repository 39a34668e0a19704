//! Direct evaluation of quantifier-free, predicate-free formulas at a
//! rational point.

use crate::formula::{Atom, Formula};
use crate::rat::Rat;
use num::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

pub type Assignment = BTreeMap<String, Rat>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("unassigned free variable {0}")]
    Unassigned(String),
    #[error("cannot evaluate a quantified formula")]
    Quantifier,
    #[error("cannot evaluate predicate application {0}")]
    Pred(String),
}

pub fn assignment(pairs: &[(&str, Rat)]) -> Assignment {
    pairs
        .iter()
        .map(|(n, v)| (n.to_string(), v.clone()))
        .collect()
}

/// Standard semantics. `Int(t)` holds iff the value of `t` is an integer;
/// `m | t` holds iff the value of `t` is an integer divisible by `m`.
pub fn evaluate(f: &Formula, assign: &Assignment) -> Result<bool, EvalError> {
    match f {
        Formula::True => Ok(true),
        Formula::False => Ok(false),
        Formula::Atom(a) => eval_atom(a, assign),
        Formula::Not(g) => Ok(!evaluate(g, assign)?),
        Formula::And(gs) => {
            for g in gs {
                if !evaluate(g, assign)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Or(gs) => {
            for g in gs {
                if evaluate(g, assign)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Formula::Exists(..) | Formula::Forall(..) => Err(EvalError::Quantifier),
    }
}

fn eval_atom(a: &Atom, assign: &Assignment) -> Result<bool, EvalError> {
    let value = |t: &crate::term::LinearTerm| {
        t.eval(assign).ok_or_else(|| {
            let missing = t
                .vars()
                .map(|v| v.name().to_string())
                .find(|n| !assign.contains_key(n))
                .unwrap_or_default();
            EvalError::Unassigned(missing)
        })
    };
    match a {
        Atom::Cmp(t, op) => Ok(op.holds(&value(t)?)),
        Atom::Int(t) => Ok(value(t)?.is_integer()),
        Atom::Div(m, t) => {
            let v = value(t)?;
            match v.to_integer() {
                Some(n) => Ok((n % m).is_zero()),
                None => Ok(false),
            }
        }
        Atom::Pred(name, _) => Err(EvalError::Pred(name.clone())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::bigint::BigInt;
    use crate::parse::parse;

    #[test]
    fn int_predicate() {
        let f = parse("Int(x)").unwrap();
        assert!(evaluate(&f, &assignment(&[("x", Rat::from_int(3))])).unwrap());
        assert!(!evaluate(&f, &assignment(&[("x", Rat::new(1, 2))])).unwrap());
    }

    #[test]
    fn conjunction() {
        let f = parse("2*x < 3 and Int(x)").unwrap();
        assert!(evaluate(&f, &assignment(&[("x", Rat::from_int(1))])).unwrap());
        assert!(!evaluate(&f, &assignment(&[("x", Rat::from_int(2))])).unwrap());
    }

    #[test]
    fn unassigned_and_quantified() {
        let f = parse("x < 1").unwrap();
        assert_eq!(
            evaluate(&f, &assignment(&[])),
            Err(EvalError::Unassigned("x".into()))
        );
        let g = parse("E y. y < x").unwrap();
        assert_eq!(
            evaluate(&g, &assignment(&[("x", Rat::zero())])),
            Err(EvalError::Quantifier)
        );
    }

    #[test]
    fn divisibility() {
        use crate::formula::Formula as F;
        use crate::term::LinearTerm;
        let f = F::Atom(Atom::Div(BigInt::from(2), LinearTerm::var("x")));
        assert!(evaluate(&f, &assignment(&[("x", Rat::from_int(4))])).unwrap());
        assert!(!evaluate(&f, &assignment(&[("x", Rat::from_int(3))])).unwrap());
        assert!(!evaluate(&f, &assignment(&[("x", Rat::new(1, 2))])).unwrap());
    }
}
