//! Quantifier elimination and decision for the ordered additive reals with
//! the constant 1 (comparison atoms only).
//!
//! Elimination is innermost-first by test-point substitution: for `∃x φ`
//! with atoms solved for `x`, it suffices to test the two infinities and
//! the midpoints `(r+s)/2` of every pair of atom roots (pairs include
//! `r = r`, so the roots themselves are tested). An equality conjunct is
//! used as an exact substitution shortcut first.

use crate::eval::evaluate;
use crate::formula::{Atom, CmpOp, Formula, Sort};
use crate::qe::QeError;
use crate::rat::Rat;
use crate::simplify::{simplify, to_nnf};
use crate::term::{LinearTerm, TermVar};
use std::collections::BTreeMap;

/// Checks that every atom is a comparison (no Int, divisibility, or
/// predicate atoms). Other unknowns (including floors of unquantified
/// variables) are treated as opaque.
fn check_cmp_only(f: &Formula) -> Result<(), QeError> {
    let mut bad: Option<String> = None;
    f.visit_atoms(&mut |a| {
        if bad.is_none() && !matches!(a, Atom::Cmp(..)) {
            bad = Some(crate::print::render(&Formula::Atom(a.clone())));
        }
    });
    match bad {
        Some(b) => Err(QeError::UnsupportedAtom(b)),
        None => Ok(()),
    }
}

/// Eliminates every quantifier; the result has the same (or fewer) free
/// variables, comparison atoms only, and is equivalent over ℝ.
pub fn eliminate_real(f: &Formula) -> Result<Formula, QeError> {
    check_cmp_only(f)?;
    let g = elim(&f.alpha_rename())?;
    Ok(simplify(&g))
}

fn elim(f: &Formula) -> Result<Formula, QeError> {
    match f {
        Formula::True | Formula::False | Formula::Atom(_) => Ok(f.clone()),
        Formula::Not(g) => Ok(Formula::not(elim(g)?)),
        Formula::And(gs) => Ok(Formula::and(
            gs.iter().map(elim).collect::<Result<_, _>>()?,
        )),
        Formula::Or(gs) => Ok(Formula::or(gs.iter().map(elim).collect::<Result<_, _>>()?)),
        Formula::Exists(v, Sort::Real, g) => {
            let body = elim(g)?;
            Ok(exists_real(v, body))
        }
        Formula::Forall(v, Sort::Real, g) => {
            let body = elim(g)?;
            Ok(forall_real(v, body))
        }
        Formula::Exists(_, Sort::Int, _) | Formula::Forall(_, Sort::Int, _) => Err(
            QeError::Other("integer-sorted quantifier in a real-only formula".into()),
        ),
    }
}

/// `∃v body` for quantifier-free `body`; public for reuse by the mixed
/// theory, where `body` may additionally contain atoms not mentioning `v`
/// of any kind (they are opaque here).
pub fn exists_real(v: &str, body: Formula) -> Formula {
    let body = simplify(&body);
    if !body.free_vars().contains(v) {
        return body;
    }
    debug_assert!(
        body.is_quantifier_free(),
        "exists_real expects a quantifier-free body"
    );
    match body {
        Formula::Or(gs) => Formula::or(gs.into_iter().map(|g| exists_real(v, g)).collect()),
        Formula::And(gs) => {
            let (with, without): (Vec<_>, Vec<_>) =
                gs.into_iter().partition(|g| g.free_vars().contains(v));
            let inner = exists_core(v, Formula::and(with));
            if without.is_empty() {
                inner
            } else {
                let mut parts = without;
                parts.push(inner);
                simplify(&Formula::and(parts))
            }
        }
        b => exists_core(v, b),
    }
}

pub fn forall_real(v: &str, body: Formula) -> Formula {
    Formula::not(exists_real(v, to_nnf(&Formula::not(body))))
}

fn exists_core(v: &str, body: Formula) -> Formula {
    // equality shortcut: ∃v (v = r ∧ ψ) ⟺ ψ[v := r]
    if let Some(result) = equality_shortcut(v, &body) {
        return result;
    }
    let body = to_nnf(&body);
    // negation elimination may surface a disjunction; distribute again
    if let Formula::Or(gs) = body {
        return simplify(&Formula::or(
            gs.into_iter().map(|g| exists_real(v, g)).collect(),
        ));
    }
    let key = TermVar::Var(v.to_string());
    // collect roots of atoms mentioning v, each solved for v
    let mut roots: Vec<LinearTerm> = Vec::new();
    body.visit_atoms(&mut |a| {
        if let Atom::Cmp(t, _) = a {
            let c = t.coeff(&key);
            if !c.is_zero() {
                let mut rest = t.clone();
                rest.set_coeff(key.clone(), Rat::zero());
                let root = rest.scale(&(-c.recip()));
                if !roots.contains(&root) {
                    roots.push(root);
                }
            }
        }
    });
    let mut disjuncts: Vec<Formula> = Vec::new();
    disjuncts.push(subst_infinity(&body, v, false));
    disjuncts.push(subst_infinity(&body, v, true));
    let half = Rat::new(1, 2);
    for i in 0..roots.len() {
        for j in i..roots.len() {
            let mid = (roots[i].clone() + roots[j].clone()).scale(&half);
            disjuncts.push(simplify(&body.subst_var(v, &mid)));
        }
    }
    simplify(&Formula::or(disjuncts))
}

fn equality_shortcut(v: &str, body: &Formula) -> Option<Formula> {
    let key = TermVar::Var(v.to_string());
    let solve = |t: &LinearTerm| -> Option<LinearTerm> {
        let c = t.coeff(&key);
        if c.is_zero() {
            return None;
        }
        let mut rest = t.clone();
        rest.set_coeff(key.clone(), Rat::zero());
        Some(rest.scale(&(-c.recip())))
    };
    match body {
        Formula::Atom(Atom::Cmp(t, CmpOp::Eq)) => {
            solve(t).map(|_| Formula::True) // ∃v (a·v + r = 0) with a ≠ 0
        }
        Formula::And(gs) => {
            for g in gs {
                if let Formula::Atom(Atom::Cmp(t, CmpOp::Eq)) = g {
                    if let Some(r) = solve(t) {
                        let rest: Vec<Formula> =
                            gs.iter().map(|h| h.subst_var(v, &r)).collect();
                        return Some(simplify(&Formula::and(rest)));
                    }
                }
            }
            None
        }
        _ => None,
    }
}

/// Substitutes `v := -∞` (or `+∞`): atoms containing `v` take their limit
/// truth value.
fn subst_infinity(f: &Formula, v: &str, plus: bool) -> Formula {
    let key = TermVar::Var(v.to_string());
    let g = map_atoms(f, &mut |a| match a {
        Atom::Cmp(t, op) => {
            let c = t.coeff(&key);
            if c.is_zero() {
                return Formula::Atom(a.clone());
            }
            // the term tends to +∞ when (c > 0) == plus
            let to_plus = c.is_positive() == plus;
            match (op, to_plus) {
                (CmpOp::Eq, _) => Formula::False,
                (_, true) => Formula::False, // t → +∞, t<0 / t≤0 false
                (_, false) => Formula::True,
            }
        }
        other => Formula::Atom(other.clone()),
    });
    simplify(&g)
}

fn map_atoms(f: &Formula, m: &mut impl FnMut(&Atom) -> Formula) -> Formula {
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Atom(a) => m(a),
        Formula::Not(g) => Formula::not(map_atoms(g, m)),
        Formula::And(gs) => Formula::and(gs.iter().map(|g| map_atoms(g, m)).collect()),
        Formula::Or(gs) => Formula::or(gs.iter().map(|g| map_atoms(g, m)).collect()),
        Formula::Exists(v, s, g) => Formula::exists(v, *s, map_atoms(g, m)),
        Formula::Forall(v, s, g) => Formula::forall(v, *s, map_atoms(g, m)),
    }
}

/// Decides a closed sentence over comparison atoms.
pub fn decide_ss(f: &Formula) -> Result<bool, QeError> {
    let frees = f.free_vars();
    if !frees.is_empty() {
        return Err(QeError::FreeVars(
            frees.into_iter().collect::<Vec<_>>().join(", "),
        ));
    }
    let g = eliminate_real(f)?;
    match g {
        Formula::True => Ok(true),
        Formula::False => Ok(false),
        other => evaluate(&other, &BTreeMap::new())
            .map_err(|e| QeError::Other(format!("residual formula not ground: {}", e))),
    }
}

/// A rational point satisfying a satisfiable quantifier-free formula over
/// comparison atoms, found variable by variable.
pub fn rational_witness(f: &Formula) -> Result<crate::eval::Assignment, QeError> {
    check_cmp_only(f)?;
    if !f.is_quantifier_free() {
        return Err(QeError::NotQuantifierFree);
    }
    let mut assign = BTreeMap::new();
    let mut g = f.clone();
    loop {
        let frees = g.free_vars();
        let Some(x) = frees.iter().next().cloned() else {
            break;
        };
        // project everything else away to get a one-variable formula
        let mut proj = g.clone();
        for y in frees.iter().filter(|y| **y != x) {
            proj = exists_real(y, proj);
        }
        let val = sat_value_1d(&proj, &x).ok_or(QeError::Unsat)?;
        g = simplify(&g.subst_var(&x, &LinearTerm::constant(val.clone())));
        assign.insert(x, val);
    }
    match evaluate(&g, &BTreeMap::new()) {
        Ok(true) => Ok(assign),
        _ => Err(QeError::Unsat),
    }
}

/// A satisfying value of a one-variable quantifier-free comparison formula.
fn sat_value_1d(f: &Formula, x: &str) -> Option<Rat> {
    let key = TermVar::Var(x.to_string());
    let mut roots: Vec<Rat> = Vec::new();
    f.visit_atoms(&mut |a| {
        if let Atom::Cmp(t, _) = a {
            let c = t.coeff(&key);
            if !c.is_zero() {
                if let Some(rest) = {
                    let mut r = t.clone();
                    r.set_coeff(key.clone(), Rat::zero());
                    r.as_constant().cloned()
                } {
                    let root = -(rest * c.recip());
                    if !roots.contains(&root) {
                        roots.push(root);
                    }
                }
            }
        }
    });
    roots.sort();
    let mut candidates: Vec<Rat> = Vec::new();
    if roots.is_empty() {
        candidates.push(Rat::zero());
    } else {
        candidates.push(roots[0].clone() - Rat::one());
        for i in 0..roots.len() {
            candidates.push(roots[i].clone());
            if i + 1 < roots.len() {
                let mid = (roots[i].clone() + roots[i + 1].clone()) * Rat::new(1, 2);
                candidates.push(mid);
            }
        }
        candidates.push(roots[roots.len() - 1].clone() + Rat::one());
    }
    for cand in candidates {
        let a = crate::eval::assignment(&[(x, cand.clone())]);
        if evaluate(f, &a) == Ok(true) {
            return Some(cand);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    #[test]
    fn density_forces_bound() {
        // ∃y (x < y ∧ y < 1) ⟺ x < 1
        let f = parse("E y. (x < y and y < 1)").unwrap();
        let g = eliminate_real(&f).unwrap();
        assert!(g.is_quantifier_free());
        let target = parse("x < 1").unwrap();
        for k in -12..=12 {
            let a = crate::eval::assignment(&[("x", Rat::new(k, 4))]);
            assert_eq!(
                evaluate(&g, &a).unwrap(),
                evaluate(&target, &a).unwrap(),
                "x={}",
                Rat::new(k, 4)
            );
        }
    }

    #[test]
    fn empty_open_interval() {
        let f = parse("E x. (x < 0 and 0 < x)").unwrap();
        assert_eq!(eliminate_real(&f).unwrap(), Formula::False);
    }

    #[test]
    fn equality_gaussian_step() {
        // ∃y (2y = x ∧ y ≥ 0) ⟺ x ≥ 0
        let f = parse("E y. (2*y = x and y >= 0)").unwrap();
        let g = eliminate_real(&f).unwrap();
        let target = parse("x >= 0").unwrap();
        for k in -8..=8 {
            let a = crate::eval::assignment(&[("x", Rat::new(k, 4))]);
            assert_eq!(evaluate(&g, &a).unwrap(), evaluate(&target, &a).unwrap());
        }
    }

    #[test]
    fn decide_closed_sentences() {
        assert!(decide_ss(&parse("A x. E y. y < x").unwrap()).unwrap());
        assert!(!decide_ss(&parse("E x. (x < 0 and 0 < x)").unwrap()).unwrap());
        assert!(decide_ss(&parse("A x. (x < 1 or 1 <= x)").unwrap()).unwrap());
        assert!(decide_ss(&parse("E x. x = 1/2").unwrap()).unwrap());
        let e = decide_ss(&parse("x < 1").unwrap());
        assert!(matches!(e, Err(QeError::FreeVars(_))));
    }

    #[test]
    fn rejects_int_atoms() {
        let f = parse("E x. Int(x)").unwrap();
        assert!(matches!(
            eliminate_real(&f),
            Err(QeError::UnsupportedAtom(_))
        ));
    }

    #[test]
    fn witnesses() {
        let w = rational_witness(&parse("x < 1").unwrap()).unwrap();
        assert!(w["x"] < Rat::one());
        let w = rational_witness(&parse("x < y and y < x + 1/2").unwrap()).unwrap();
        assert!(w["x"] < w["y"]);
        assert!(w["y"].clone() < w["x"].clone() + Rat::new(1, 2));
        let w = rational_witness(&parse("2*x = 1").unwrap()).unwrap();
        assert_eq!(w["x"], Rat::new(1, 2));
        assert!(matches!(
            rational_witness(&parse("x < 0 and 0 < x").unwrap()),
            Err(QeError::Unsat)
        ));
    }

    #[test]
    fn forall_via_negation() {
        let f = parse("A x. (x < y or y < x or x = y)").unwrap();
        let g = eliminate_real(&f).unwrap();
        assert_eq!(g, Formula::True);
    }
}
