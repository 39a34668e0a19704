//! Cooper-style quantifier elimination for integer-sorted variables
//! (Presburger arithmetic with divisibility atoms), plus extraction of
//! eventual-periodicity data for one-variable formulas.

use crate::eval::evaluate;
use crate::formula::{Atom, CmpOp, Formula, Sort};
use crate::qe::QeError;
use crate::rat::{lcm_big, Rat};
use crate::simplify::{simplify, to_nnf};
use crate::term::{LinearTerm, TermVar};
use num::bigint::BigInt;
use num::Signed;
use std::collections::{BTreeMap, BTreeSet};

fn check_int_formula(f: &Formula) -> Result<(), QeError> {
    let mut bad: Option<QeError> = None;
    f.visit_atoms(&mut |a| {
        if bad.is_some() {
            return;
        }
        match a {
            Atom::Cmp(t, _) | Atom::Div(_, t) => {
                if !t.all_integer() {
                    bad = Some(QeError::NonInteger(t.to_string()));
                } else if t.has_floor() {
                    bad = Some(QeError::UnsupportedAtom(t.to_string()));
                }
            }
            other => {
                bad = Some(QeError::UnsupportedAtom(crate::print::render(
                    &Formula::Atom(other.clone()),
                )))
            }
        }
    });
    if let Some(e) = bad {
        return Err(e);
    }
    // all quantifiers must be integer-sorted
    fn sorts_ok(f: &Formula) -> bool {
        match f {
            Formula::True | Formula::False | Formula::Atom(_) => true,
            Formula::Not(g) => sorts_ok(g),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().all(sorts_ok),
            Formula::Exists(_, s, g) | Formula::Forall(_, s, g) => {
                *s == Sort::Int && sorts_ok(g)
            }
        }
    }
    if !sorts_ok(f) {
        return Err(QeError::Other(
            "real-sorted quantifier in an integer formula".into(),
        ));
    }
    Ok(())
}

/// Eliminates all quantifiers of an integer formula; the output is an
/// equivalent quantifier-free formula over ℤ, possibly with new
/// divisibility atoms.
pub fn eliminate_int(f: &Formula) -> Result<Formula, QeError> {
    check_int_formula(f)?;
    let g = elim(&f.alpha_rename());
    Ok(simplify(&g))
}

fn elim(f: &Formula) -> Formula {
    match f {
        Formula::True | Formula::False | Formula::Atom(_) => f.clone(),
        Formula::Not(g) => Formula::not(elim(g)),
        Formula::And(gs) => Formula::and(gs.iter().map(elim).collect()),
        Formula::Or(gs) => Formula::or(gs.iter().map(elim).collect()),
        Formula::Exists(v, _, g) => {
            let body = elim(g);
            exists_int(v, body)
        }
        Formula::Forall(v, _, g) => {
            let body = elim(g);
            forall_int(v, body)
        }
    }
}

pub fn forall_int(v: &str, body: Formula) -> Formula {
    Formula::not(exists_int(v, to_nnf(&Formula::not(body))))
}

/// `∃v body` over ℤ for quantifier-free `body`. Atoms not mentioning `v`
/// (of any kind) are opaque.
pub fn exists_int(v: &str, body: Formula) -> Formula {
    let body = simplify(&body);
    if !body.free_vars().contains(v) {
        return body;
    }
    match body {
        Formula::Or(gs) => Formula::or(gs.into_iter().map(|g| exists_int(v, g)).collect()),
        Formula::And(gs) => {
            let (with, without): (Vec<_>, Vec<_>) =
                gs.into_iter().partition(|g| g.free_vars().contains(v));
            let inner = cooper(v, Formula::and(with));
            if without.is_empty() {
                inner
            } else {
                let mut parts = without;
                parts.push(inner);
                simplify(&Formula::and(parts))
            }
        }
        b => cooper(v, b),
    }
}

/// Normalizes comparison literals that mention the eliminated variable to
/// the strict form `t < 0`, valid because those atoms are integer-valued:
/// `t ≤ 0 ⟺ t-1 < 0`, `t = 0 ⟺ t-1 < 0 ∧ -t-1 < 0`. Atoms without the
/// variable are opaque to Cooper's method and may range over the reals, so
/// they are left untouched.
fn strictify_for(key: &TermVar, f: &Formula) -> Formula {
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Atom(Atom::Cmp(t, op)) => {
            if t.coeff(key).is_zero() {
                return f.clone();
            }
            let one = LinearTerm::constant(Rat::one());
            match op {
                CmpOp::Lt => f.clone(),
                CmpOp::Le => Formula::cmp(t.clone() - one, CmpOp::Lt),
                CmpOp::Eq => Formula::and(vec![
                    Formula::cmp(t.clone() - one.clone(), CmpOp::Lt),
                    Formula::cmp(-t.clone() - one, CmpOp::Lt),
                ]),
            }
        }
        Formula::Atom(_) => f.clone(),
        Formula::Not(g) => Formula::not(strictify_for(key, g)),
        Formula::And(gs) => Formula::and(gs.iter().map(|g| strictify_for(key, g)).collect()),
        Formula::Or(gs) => Formula::or(gs.iter().map(|g| strictify_for(key, g)).collect()),
        Formula::Exists(v, s, g) => Formula::exists(v, *s, strictify_for(key, g)),
        Formula::Forall(v, s, g) => Formula::forall(v, *s, strictify_for(key, g)),
    }
}

fn cooper(v: &str, body: Formula) -> Formula {
    let body = to_nnf(&body);
    if let Formula::Or(gs) = body {
        return simplify(&Formula::or(
            gs.into_iter().map(|g| exists_int(v, g)).collect(),
        ));
    }
    let key = TermVar::Var(v.to_string());
    let body = strictify_for(&key, &body);

    // δ = lcm of |coefficients| of v
    let mut delta = BigInt::from(1);
    body.visit_atoms(&mut |a| {
        if let Atom::Cmp(t, _) | Atom::Div(_, t) = a {
            let c = t.coeff(&key);
            if !c.is_zero() {
                delta = lcm_big(&delta, &c.numer().abs());
            }
        }
    });

    // scale each atom so v's coefficient is ±δ, then read it as an atom in
    // u = δ·v; conjoin δ | u
    let delta_rat = Rat::from_bigint(delta.clone());
    let scaled = map_atoms(&body, &mut |a| match a {
        Atom::Cmp(t, op) => {
            let c = t.coeff(&key);
            if c.is_zero() {
                return Formula::Atom(a.clone());
            }
            let m = delta_rat.clone() * c.abs().recip();
            Formula::cmp(t.scale(&m), *op)
        }
        Atom::Div(d, t) => {
            let c = t.coeff(&key);
            if c.is_zero() {
                return Formula::Atom(a.clone());
            }
            let m = delta_rat.clone() * c.abs().recip();
            let d2 = d * m.numer(); // m is integral here (δ/|c|)
            Formula::divides(d2, t.scale(&m))
        }
        other => Formula::Atom(other.clone()),
    });
    let unit = map_atoms(&scaled, &mut |a| match a {
        Atom::Cmp(t, op) => Formula::cmp(replace_scaled(t, &key, &delta_rat), *op),
        Atom::Div(d, t) => Formula::divides(d.clone(), replace_scaled(t, &key, &delta_rat)),
        other => Formula::Atom(other.clone()),
    });
    let with_div = Formula::and(vec![
        unit,
        Formula::divides(delta.clone(), LinearTerm::var(v)),
    ]);

    // collect literals on u: lower bounds L < u, upper bounds u < U,
    // divisibility moduli
    let mut lowers: Vec<LinearTerm> = Vec::new();
    let mut uppers: Vec<LinearTerm> = Vec::new();
    let mut m = BigInt::from(1);
    with_div.visit_atoms(&mut |a| match a {
        Atom::Cmp(t, CmpOp::Lt) => {
            let c = t.coeff(&key);
            if c.is_zero() {
                return;
            }
            let mut rest = t.clone();
            rest.set_coeff(key.clone(), Rat::zero());
            if c.is_positive() {
                // u + rest < 0  ⟺  u < -rest
                let b = -rest;
                if !uppers.contains(&b) {
                    uppers.push(b);
                }
            } else {
                // -u + rest < 0  ⟺  rest < u
                if !lowers.contains(&rest) {
                    lowers.push(rest);
                }
            }
        }
        Atom::Div(d, t) => {
            if !t.coeff(&key).is_zero() {
                m = lcm_big(&m, d);
            }
        }
        _ => {}
    });

    // choose the side with fewer bound atoms
    let use_lower = lowers.len() <= uppers.len();
    let mut disjuncts: Vec<Formula> = Vec::new();
    let mut j = BigInt::from(1);
    while j <= m {
        let jr = Rat::from_bigint(j.clone());
        if use_lower {
            // φ_{-∞}(j)
            disjuncts.push(subst_int_infinity(&with_div, &key, false, &jr));
            for b in &lowers {
                let point = b.clone() + LinearTerm::constant(jr.clone());
                disjuncts.push(simplify(&with_div.subst_var(v, &point)));
            }
        } else {
            // φ_{+∞}(-j)
            disjuncts.push(subst_int_infinity(&with_div, &key, true, &(-jr.clone())));
            for b in &uppers {
                let point = b.clone() - LinearTerm::constant(jr.clone());
                disjuncts.push(simplify(&with_div.subst_var(v, &point)));
            }
        }
        j += 1;
    }
    simplify(&Formula::or(disjuncts))
}

/// Replaces `±δ·v` by `±1·v` in a term (the u = δ·v change of variable).
fn replace_scaled(t: &LinearTerm, key: &TermVar, delta: &Rat) -> LinearTerm {
    let c = t.coeff(key);
    if c.is_zero() {
        return t.clone();
    }
    debug_assert!(c.abs() == *delta);
    let mut out = t.clone();
    out.set_coeff(
        key.clone(),
        if c.is_positive() {
            Rat::one()
        } else {
            -Rat::one()
        },
    );
    out
}

/// The limit formula of Cooper's method: inequality atoms containing `u`
/// take their limit truth value, divisibility atoms get `u := j`.
fn subst_int_infinity(f: &Formula, key: &TermVar, plus: bool, j: &Rat) -> Formula {
    let g = map_atoms(f, &mut |a| match a {
        Atom::Cmp(t, op) => {
            let c = t.coeff(key);
            if c.is_zero() {
                return Formula::Atom(a.clone());
            }
            debug_assert_eq!(*op, CmpOp::Lt);
            let to_plus = c.is_positive() == plus;
            if to_plus {
                Formula::False
            } else {
                Formula::True
            }
        }
        Atom::Div(d, t) => {
            let c = t.coeff(key);
            if c.is_zero() {
                return Formula::Atom(a.clone());
            }
            let mut t2 = t.clone();
            t2.set_coeff(key.clone(), Rat::zero());
            Formula::divides(d.clone(), t2 + LinearTerm::constant(j.clone() * c))
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

/// Decides a closed integer sentence.
pub fn decide_int(f: &Formula) -> Result<bool, QeError> {
    let frees = f.free_vars();
    if !frees.is_empty() {
        return Err(QeError::FreeVars(
            frees.into_iter().collect::<Vec<_>>().join(", "),
        ));
    }
    let g = eliminate_int(f)?;
    match g {
        Formula::True => Ok(true),
        Formula::False => Ok(false),
        other => evaluate(&other, &BTreeMap::new())
            .map_err(|e| QeError::Other(format!("residual formula not ground: {}", e))),
    }
}

/// Satisfiability of a quantifier-free integer formula (existential closure).
pub fn int_satisfiable(f: &Formula) -> Result<bool, QeError> {
    let mut g = f.clone();
    for v in f.free_vars() {
        g = Formula::exists(&v, Sort::Int, g);
    }
    decide_int(&g)
}

/// Eventual-periodicity data of a one-variable integer formula on one side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntTail {
    /// Beyond this point (towards the tail) membership is periodic.
    pub threshold: BigInt,
    /// A (not necessarily minimal) period.
    pub period: BigInt,
    /// Residues mod `period` that belong to the set, as `x mod period`.
    pub residues: BTreeSet<BigInt>,
}

/// Computes `(right, left)` tail data for a quantifier-free formula in one
/// integer variable: for `x ≥ right.threshold`, `x ∈ φ ⟺ x mod p ∈
/// residues`, and symmetrically for `x ≤ left.threshold`. The period is the
/// lcm of all divisibility moduli and of the variable's coefficients; it is
/// not minimized here.
pub fn ultimate_period_int(f: &Formula, var: &str) -> Result<(IntTail, IntTail), QeError> {
    check_int_formula(f)?;
    if !f.is_quantifier_free() {
        return Err(QeError::NotQuantifierFree);
    }
    let frees = f.free_vars();
    if frees.iter().any(|x| x != var) {
        return Err(QeError::FreeVars(
            frees
                .into_iter()
                .filter(|x| x != var)
                .collect::<Vec<_>>()
                .join(", "),
        ));
    }
    let key = TermVar::Var(var.to_string());
    let mut p = BigInt::from(1);
    let mut hi: Option<BigInt> = None; // right threshold
    let mut lo: Option<BigInt> = None; // left threshold
    f.visit_atoms(&mut |a| match a {
        Atom::Cmp(t, _) => {
            let c = t.coeff(&key);
            if c.is_zero() {
                return;
            }
            p = lcm_big(&p, &c.numer().abs());
            // breakpoint at -const/c
            let beta = -(t.const_part().clone()) * c.recip();
            let up = beta.floor_int() + BigInt::from(1);
            let down = beta.ceil_int() - BigInt::from(1);
            hi = Some(match &hi {
                None => up.clone(),
                Some(h) => h.clone().max(up),
            });
            lo = Some(match &lo {
                None => down.clone(),
                Some(l) => l.clone().min(down),
            });
        }
        Atom::Div(d, t) => {
            if !t.coeff(&key).is_zero() {
                p = lcm_big(&p, d);
            }
        }
        _ => {}
    });
    let right_threshold = hi.unwrap_or_else(|| BigInt::from(0));
    let left_threshold = lo.unwrap_or_else(|| BigInt::from(0));

    let sample = |start: &BigInt, step: i64| -> Result<BTreeSet<BigInt>, QeError> {
        let mut out = BTreeSet::new();
        let mut x = start.clone();
        let mut count = BigInt::from(0);
        while count < p {
            let a = crate::eval::assignment(&[(var, Rat::from_bigint(x.clone()))]);
            let holds = evaluate(f, &a).map_err(|e| QeError::Other(e.to_string()))?;
            if holds {
                let r = ((x.clone() % &p) + &p) % &p;
                out.insert(r);
            }
            x += step;
            count += 1;
        }
        Ok(out)
    };
    let right = IntTail {
        threshold: right_threshold.clone(),
        period: p.clone(),
        residues: sample(&right_threshold, 1)?,
    };
    let left = IntTail {
        threshold: left_threshold.clone(),
        period: p.clone(),
        residues: sample(&left_threshold, -1)?,
    };
    Ok((right, left))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use crate::qe::retag_int;

    fn brute_force_int(f: &Formula, vars: &[&str], lo: i64, hi: i64) -> Vec<Vec<i64>> {
        fn rec(
            f: &Formula,
            vars: &[&str],
            lo: i64,
            hi: i64,
            cur: &mut Vec<i64>,
            out: &mut Vec<Vec<i64>>,
        ) {
            if cur.len() == vars.len() {
                let assign: crate::eval::Assignment = vars
                    .iter()
                    .zip(cur.iter())
                    .map(|(n, v)| (n.to_string(), Rat::from_int(*v)))
                    .collect();
                if brute_eval(f, &assign, lo, hi) {
                    out.push(cur.clone());
                }
                return;
            }
            for v in lo..=hi {
                cur.push(v);
                rec(f, vars, lo, hi, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(f, vars, lo, hi, &mut Vec::new(), &mut out);
        out
    }

    /// Quantifiers enumerated over a window (only valid when bounds confine
    /// the matrix, which the chosen test formulas do).
    fn brute_eval(f: &Formula, assign: &crate::eval::Assignment, lo: i64, hi: i64) -> bool {
        match f {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(_) => evaluate(f, assign).unwrap(),
            Formula::Not(g) => !brute_eval(g, assign, lo, hi),
            Formula::And(gs) => gs.iter().all(|g| brute_eval(g, assign, lo, hi)),
            Formula::Or(gs) => gs.iter().any(|g| brute_eval(g, assign, lo, hi)),
            Formula::Exists(v, _, g) => (lo..=hi).any(|k| {
                let mut a2 = assign.clone();
                a2.insert(v.clone(), Rat::from_int(k));
                brute_eval(g, &a2, lo, hi)
            }),
            Formula::Forall(v, _, g) => (lo..=hi).all(|k| {
                let mut a2 = assign.clone();
                a2.insert(v.clone(), Rat::from_int(k));
                brute_eval(g, &a2, lo, hi)
            }),
        }
    }

    #[test]
    fn divisibility_definition() {
        // ∃y x = 2y ⟺ 2 | x
        let f = retag_int(&parse("E y. x = 2*y").unwrap());
        let g = eliminate_int(&f).unwrap();
        assert!(g.is_quantifier_free());
        for x in -8..=8i64 {
            let a = crate::eval::assignment(&[("x", Rat::from_int(x))]);
            assert_eq!(evaluate(&g, &a).unwrap(), x % 2 == 0, "x={} in {}", x, g);
        }
    }

    #[test]
    fn no_integer_strictly_between() {
        let f = retag_int(&parse("E y. (y > x and y < x + 1)").unwrap());
        let g = eliminate_int(&f).unwrap();
        for x in -5..=5i64 {
            let a = crate::eval::assignment(&[("x", Rat::from_int(x))]);
            assert!(!evaluate(&g, &a).unwrap(), "x={}", x);
        }
    }

    #[test]
    fn mod_three_window() {
        // ∃y (3y ≤ x ∧ x ≤ 3y+1) ⟺ x mod 3 ∈ {0,1}
        let f = retag_int(&parse("E y. (3*y <= x and x <= 3*y + 1)").unwrap());
        let g = eliminate_int(&f).unwrap();
        for x in -6..=6i64 {
            let a = crate::eval::assignment(&[("x", Rat::from_int(x))]);
            let expect = x.rem_euclid(3) == 0 || x.rem_euclid(3) == 1;
            assert_eq!(evaluate(&g, &a).unwrap(), expect, "x={}", x);
        }
    }

    #[test]
    fn forall_and_decide() {
        assert!(
            decide_int(&retag_int(&parse("A x. E y. (x = 2*y or x = 2*y + 1)").unwrap())).unwrap()
        );
        assert!(!decide_int(&retag_int(&parse("A x. E y. x = 2*y").unwrap())).unwrap());
        assert!(decide_int(&retag_int(&parse("E x. (0 < x and x < 2)").unwrap())).unwrap());
        assert!(!decide_int(&retag_int(&parse("E x. (0 < x and x < 1)").unwrap())).unwrap());
    }

    #[test]
    fn bounded_formulas_match_brute_force() {
        let cases = [
            ("E y. (y <= x and x <= y + 2 and -3 <= y and y <= 3)", vec!["x"]),
            ("E y. (2*y = x and -6 <= y and y <= 6)", vec!["x"]),
            ("E y. (y < x and 3*y > x - 5 and -6 <= y and y <= 6)", vec!["x"]),
            (
                "E z. (z <= x + y and 2*z >= x - y and -6 <= z and z <= 6)",
                vec!["x", "y"],
            ),
        ];
        for (src, vars) in cases {
            let f = retag_int(&parse(src).unwrap());
            let g = eliminate_int(&f).unwrap();
            let varrefs: Vec<&str> = vars.clone();
            let expect = brute_force_int(&f, &varrefs, -6, 6);
            let got = brute_force_int(&g, &varrefs, -6, 6);
            assert_eq!(expect, got, "formula {}", src);
        }
    }

    #[test]
    fn period_of_divisibility() {
        let f = Formula::Atom(Atom::Div(BigInt::from(2), LinearTerm::var("x")));
        let (r, l) = ultimate_period_int(&f, "x").unwrap();
        assert_eq!(r.threshold, BigInt::from(0));
        assert_eq!(r.period, BigInt::from(2));
        assert_eq!(r.residues, BTreeSet::from([BigInt::from(0)]));
        assert_eq!(l.residues, BTreeSet::from([BigInt::from(0)]));
    }

    #[test]
    fn period_of_halfline() {
        let f = parse("x > 3").unwrap();
        let (r, l) = ultimate_period_int(&f, "x").unwrap();
        assert_eq!(r.threshold, BigInt::from(4));
        assert_eq!(r.period, BigInt::from(1));
        assert_eq!(r.residues, BTreeSet::from([BigInt::from(0)]));
        assert!(l.residues.is_empty());
    }

    #[test]
    fn period_of_point() {
        let f = parse("x = 5").unwrap();
        let (r, l) = ultimate_period_int(&f, "x").unwrap();
        assert_eq!(r.threshold, BigInt::from(6));
        assert_eq!(r.period, BigInt::from(1));
        assert!(r.residues.is_empty());
        assert_eq!(l.threshold, BigInt::from(4));
        assert!(l.residues.is_empty());
    }

    #[test]
    fn tail_contract_brute_force() {
        let formulas = [
            "E y. (x = 2*y and x >= 0) or x = 3",
            "E y. (3*y <= x and x <= 3*y + 1)",
            "x > 2 and E y. x = 2*y",
        ];
        for src in formulas {
            let f = eliminate_int(&retag_int(&parse(src).unwrap())).unwrap();
            let (r, l) = ultimate_period_int(&f, "x").unwrap();
            let p: i64 = r.period.to_string().parse().unwrap();
            let t: i64 = r.threshold.to_string().parse().unwrap();
            for x in t..=t + 3 * p {
                let a = crate::eval::assignment(&[("x", Rat::from_int(x))]);
                let holds = evaluate(&f, &a).unwrap();
                let r_in = r.residues.contains(&BigInt::from(x.rem_euclid(p)));
                assert_eq!(holds, r_in, "{} at x={}", src, x);
            }
            let t: i64 = l.threshold.to_string().parse().unwrap();
            for x in (t - 3 * p..=t).rev() {
                let a = crate::eval::assignment(&[("x", Rat::from_int(x))]);
                let holds = evaluate(&f, &a).unwrap();
                let l_in = l.residues.contains(&BigInt::from(x.rem_euclid(p)));
                assert_eq!(holds, l_in, "{} at x={}", src, x);
            }
        }
    }
}
