//! Normal forms and formula simplification.
//!
//! The quantifier-elimination passes substitute many test points into the
//! same body, so intermediate formulas are dominated by flat And/Or nodes
//! full of comparison literals over a handful of directions. The simplifier
//! merges those into the strongest (resp. weakest) bounds per direction,
//! folds atoms whose value range is forced, and drops subsumed siblings.

use crate::formula::{Atom, CmpOp, Formula};
use crate::rat::Rat;
use crate::term::{LinearTerm, TermVar};
use itertools::Itertools;
use std::collections::BTreeMap;

/// Negation normal form. Comparison literals absorb negation outright:
/// `¬(t<0) = -t≤0`, `¬(t≤0) = -t<0`, `¬(t=0) = t<0 ∨ -t<0`. Negations of
/// `Int`, divisibility and predicate atoms stay as negated literals.
pub fn to_nnf(f: &Formula) -> Formula {
    nnf(f, false)
}

fn nnf(f: &Formula, neg: bool) -> Formula {
    match f {
        Formula::True => {
            if neg {
                Formula::False
            } else {
                Formula::True
            }
        }
        Formula::False => {
            if neg {
                Formula::True
            } else {
                Formula::False
            }
        }
        Formula::Atom(a) => {
            if !neg {
                return f.clone();
            }
            match a {
                Atom::Cmp(t, CmpOp::Lt) => Formula::cmp(-t.clone(), CmpOp::Le),
                Atom::Cmp(t, CmpOp::Le) => Formula::cmp(-t.clone(), CmpOp::Lt),
                Atom::Cmp(t, CmpOp::Eq) => Formula::or(vec![
                    Formula::cmp(t.clone(), CmpOp::Lt),
                    Formula::cmp(-t.clone(), CmpOp::Lt),
                ]),
                _ => Formula::not(f.clone()),
            }
        }
        Formula::Not(g) => nnf(g, !neg),
        Formula::And(gs) => {
            let parts = gs.iter().map(|g| nnf(g, neg)).collect();
            if neg {
                Formula::or(parts)
            } else {
                Formula::and(parts)
            }
        }
        Formula::Or(gs) => {
            let parts = gs.iter().map(|g| nnf(g, neg)).collect();
            if neg {
                Formula::and(parts)
            } else {
                Formula::or(parts)
            }
        }
        Formula::Exists(v, s, g) => {
            if neg {
                Formula::forall(v, *s, nnf(g, true))
            } else {
                Formula::exists(v, *s, nnf(g, false))
            }
        }
        Formula::Forall(v, s, g) => {
            if neg {
                Formula::exists(v, *s, nnf(g, true))
            } else {
                Formula::forall(v, *s, nnf(g, false))
            }
        }
    }
}

/// Streams the disjuncts of the disjunctive normal form of a
/// quantifier-free formula, each as a list of literals. The full DNF may be
/// exponential; consuming this lazily keeps memory bounded.
pub fn dnf_iter(f: &Formula) -> Result<Box<dyn Iterator<Item = Vec<Formula>>>, String> {
    if !f.is_quantifier_free() {
        return Err("DNF of a quantified formula".into());
    }
    Ok(dnf_stream(&to_nnf(f)))
}

fn dnf_stream(f: &Formula) -> Box<dyn Iterator<Item = Vec<Formula>>> {
    match f {
        Formula::True => Box::new(std::iter::once(Vec::new())),
        Formula::False => Box::new(std::iter::empty()),
        Formula::Atom(_) | Formula::Not(_) => Box::new(std::iter::once(vec![f.clone()])),
        Formula::Or(gs) => {
            let streams: Vec<_> = gs.clone();
            Box::new(streams.into_iter().flat_map(|g| dnf_stream(&g)))
        }
        Formula::And(gs) => {
            let factors: Vec<Vec<Vec<Formula>>> = gs.iter().map(|g| dnf_stream(g).collect()).collect();
            Box::new(
                factors
                    .into_iter()
                    .multi_cartesian_product()
                    .map(|parts| parts.into_iter().flatten().collect()),
            )
        }
        Formula::Exists(..) | Formula::Forall(..) => unreachable!("checked quantifier-free"),
    }
}

/// Full DNF as a formula.
pub fn to_dnf(f: &Formula) -> Result<Formula, String> {
    let disjuncts: Vec<Formula> = dnf_iter(f)?.map(Formula::and).collect();
    Ok(simplify(&Formula::or(disjuncts)))
}

// ---------------------------------------------------------------------------
// value-range analysis for fractional-part combinations

/// Bounds of a term value assuming only `x - floor(x) ∈ [0,1)` for every
/// variable whose plain and floor coefficients cancel. Returns
/// `(lo, lo_attained, hi, hi_attained)`; `None` when unbounded.
fn term_range(t: &LinearTerm) -> Option<(Rat, bool, Rat, bool)> {
    let mut lo = t.const_part().clone();
    let mut hi = t.const_part().clone();
    let mut lo_att = true;
    let mut hi_att = true;
    let mut seen: BTreeMap<&str, Rat> = BTreeMap::new();
    for (v, c) in t.iter() {
        match v {
            TermVar::Var(n) => {
                let fc = t.coeff(&TermVar::Floor(n.clone()));
                if fc != -c.clone() {
                    return None;
                }
                seen.insert(n.as_str(), c.clone());
            }
            TermVar::Floor(n) => {
                // must be matched by a plain coefficient
                if t.coeff(&TermVar::Var(n.clone())) != -c.clone() {
                    return None;
                }
            }
        }
    }
    for (_, c) in seen {
        // contribution c * frac(x), frac(x) ∈ [0,1)
        if c.is_positive() {
            hi = hi + c; // approached, not attained
            hi_att = false;
        } else {
            lo = lo + c;
            lo_att = false;
        }
    }
    Some((lo, lo_att, hi, hi_att))
}

/// Folds an atom whose truth is forced by the fractional-part range.
fn fold_atom_by_range(a: &Atom) -> Option<bool> {
    let t = match a {
        Atom::Cmp(t, _) | Atom::Int(t) => t,
        _ => return None,
    };
    if t.is_constant() || !t.has_floor() {
        return None;
    }
    let (lo, lo_att, hi, hi_att) = term_range(t)?;
    match a {
        Atom::Cmp(_, CmpOp::Lt) => {
            if hi.is_negative() || (hi.is_zero() && !hi_att) {
                Some(true)
            } else if !lo.is_negative() {
                Some(false)
            } else {
                None
            }
        }
        Atom::Cmp(_, CmpOp::Le) => {
            if !hi.is_positive() {
                Some(true)
            } else if lo.is_positive() || (lo.is_zero() && !lo_att) {
                Some(false)
            } else {
                None
            }
        }
        Atom::Cmp(_, CmpOp::Eq) => {
            if lo.is_positive() || hi.is_negative() || (lo.is_zero() && !lo_att) || (hi.is_zero() && !hi_att) {
                Some(false)
            } else if lo.is_zero() && hi.is_zero() {
                Some(true)
            } else {
                None
            }
        }
        Atom::Int(_) => {
            // no integer strictly inside the range => false
            let first = if lo_att { lo.ceil() } else { lo.floor() + Rat::one() };
            let last = if hi_att { hi.floor() } else { hi.ceil() - Rat::one() };
            if first > last {
                Some(false)
            } else if lo == hi && lo.is_integer() {
                Some(true)
            } else {
                None
            }
        }
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// bound absorption

#[derive(Clone, Debug, PartialEq, Eq)]
enum Bound {
    Lower(Rat, bool), // value, strict
    Upper(Rat, bool),
    Equal(Rat),
}

/// Splits a comparison literal into a canonical direction (integer coprime
/// coefficients, positive leading coefficient, zero constant) and a bound.
fn literal_bound(t: &LinearTerm, op: CmpOp) -> (LinearTerm, Bound) {
    let mut dir = t.clone();
    dir.set_const(Rat::zero());
    let l = dir.coeff_denom_lcm();
    let mut scale = Rat::from_bigint(l);
    let mut scaled = dir.scale(&scale);
    let g = scaled.coeff_gcd();
    if g > num::BigInt::from(1) {
        let inv = Rat::from_big(num::BigInt::from(1), g);
        scaled = scaled.scale(&inv);
        scale = scale * inv;
    }
    let flip = scaled.leading_coeff().map_or(false, |c| c.is_negative());
    // t ◁ 0  ⟺  scale·t ◁ 0  ⟺  scaled + scale·c ◁ 0
    let c = t.const_part().clone() * &scale;
    if flip {
        let dir = -scaled;
        // -dir + c ◁ 0 ⟺ dir ▷ c
        let b = match op {
            CmpOp::Lt => Bound::Lower(c, true),
            CmpOp::Le => Bound::Lower(c, false),
            CmpOp::Eq => Bound::Equal(c),
        };
        (dir, b)
    } else {
        let b = match op {
            CmpOp::Lt => Bound::Upper(-c, true),
            CmpOp::Le => Bound::Upper(-c, false),
            CmpOp::Eq => Bound::Equal(-c),
        };
        (scaled, b)
    }
}

fn bound_to_formula(dir: &LinearTerm, b: &Bound) -> Formula {
    match b {
        Bound::Upper(v, strict) => Formula::cmp(
            dir.clone() - LinearTerm::constant(v.clone()),
            if *strict { CmpOp::Lt } else { CmpOp::Le },
        ),
        Bound::Lower(v, strict) => Formula::cmp(
            LinearTerm::constant(v.clone()) - dir.clone(),
            if *strict { CmpOp::Lt } else { CmpOp::Le },
        ),
        Bound::Equal(v) => Formula::cmp(dir.clone() - LinearTerm::constant(v.clone()), CmpOp::Eq),
    }
}

#[derive(Default)]
struct ConjBounds {
    lower: Option<(Rat, bool)>,
    upper: Option<(Rat, bool)>,
    equal: Option<Rat>,
    contradictory: bool,
}

impl ConjBounds {
    fn add(&mut self, b: Bound) {
        match b {
            Bound::Lower(v, s) => {
                let better = match &self.lower {
                    None => true,
                    Some((cur, cs)) => v > *cur || (v == *cur && s && !cs),
                };
                if better {
                    self.lower = Some((v, s));
                }
            }
            Bound::Upper(v, s) => {
                let better = match &self.upper {
                    None => true,
                    Some((cur, cs)) => v < *cur || (v == *cur && s && !cs),
                };
                if better {
                    self.upper = Some((v, s));
                }
            }
            Bound::Equal(v) => match &self.equal {
                None => self.equal = Some(v),
                Some(cur) => {
                    if *cur != v {
                        self.contradictory = true;
                    }
                }
            },
        }
    }

    fn emit(&self, dir: &LinearTerm) -> Option<Vec<Formula>> {
        if self.contradictory {
            return None;
        }
        if let Some(e) = &self.equal {
            if let Some((lo, s)) = &self.lower {
                if e < lo || (e == lo && *s) {
                    return None;
                }
            }
            if let Some((hi, s)) = &self.upper {
                if e > hi || (e == hi && *s) {
                    return None;
                }
            }
            return Some(vec![bound_to_formula(dir, &Bound::Equal(e.clone()))]);
        }
        if let (Some((lo, ls)), Some((hi, hs))) = (&self.lower, &self.upper) {
            if lo > hi || (lo == hi && (*ls || *hs)) {
                return None;
            }
            if lo == hi {
                return Some(vec![bound_to_formula(dir, &Bound::Equal(lo.clone()))]);
            }
        }
        let mut out = Vec::new();
        if let Some((lo, s)) = &self.lower {
            out.push(bound_to_formula(dir, &Bound::Lower(lo.clone(), *s)));
        }
        if let Some((hi, s)) = &self.upper {
            out.push(bound_to_formula(dir, &Bound::Upper(hi.clone(), *s)));
        }
        Some(out)
    }
}

#[derive(Default)]
struct DisjBounds {
    lower: Option<(Rat, bool)>,
    upper: Option<(Rat, bool)>,
    equals: Vec<Rat>,
}

impl DisjBounds {
    fn add(&mut self, b: Bound) {
        match b {
            Bound::Lower(v, s) => {
                let better = match &self.lower {
                    None => true,
                    Some((cur, cs)) => v < *cur || (v == *cur && !s && *cs),
                };
                if better {
                    self.lower = Some((v, s));
                }
            }
            Bound::Upper(v, s) => {
                let better = match &self.upper {
                    None => true,
                    Some((cur, cs)) => v > *cur || (v == *cur && !s && *cs),
                };
                if better {
                    self.upper = Some((v, s));
                }
            }
            Bound::Equal(v) => self.equals.push(v),
        }
    }

    /// None means the disjunction of these bounds covers all reals.
    fn emit(&self, dir: &LinearTerm) -> Option<Vec<Formula>> {
        let mut lower = self.lower.clone();
        let mut upper = self.upper.clone();
        let mut points = Vec::new();
        for e in &self.equals {
            let covered_upper = upper
                .as_ref()
                .map_or(false, |(hi, s)| e < hi || (e == hi && !*s));
            let covered_lower = lower
                .as_ref()
                .map_or(false, |(lo, s)| e > lo || (e == lo && !*s));
            if covered_upper || covered_lower {
                continue;
            }
            // a point can close an adjacent strict bound
            if let Some((hi, s)) = &upper {
                if e == hi && *s {
                    upper = Some((hi.clone(), false));
                    continue;
                }
            }
            if let Some((lo, s)) = &lower {
                if e == lo && *s {
                    lower = Some((lo.clone(), false));
                    continue;
                }
            }
            if !points.contains(e) {
                points.push(e.clone());
            }
        }
        if let (Some((lo, ls)), Some((hi, hs))) = (&lower, &upper) {
            // dir > lo ∨ dir < hi covers ℝ when the intervals overlap
            if hi > lo || (hi == lo && (!*ls || !*hs)) {
                return None;
            }
        }
        let mut out = Vec::new();
        if let Some((hi, s)) = &upper {
            out.push(bound_to_formula(dir, &Bound::Upper(hi.clone(), *s)));
        }
        if let Some((lo, s)) = &lower {
            out.push(bound_to_formula(dir, &Bound::Lower(lo.clone(), *s)));
        }
        for e in points {
            out.push(bound_to_formula(dir, &Bound::Equal(e)));
        }
        Some(out)
    }
}

// ---------------------------------------------------------------------------
// the simplifier

pub fn simplify(f: &Formula) -> Formula {
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Atom(a) => simplify_atom(a),
        Formula::Not(g) => Formula::not(simplify(g)),
        Formula::And(gs) => {
            let parts: Vec<Formula> = gs.iter().map(simplify).collect();
            simp_conj(parts)
        }
        Formula::Or(gs) => {
            let parts: Vec<Formula> = gs.iter().map(simplify).collect();
            simp_disj(parts)
        }
        Formula::Exists(v, s, g) => Formula::exists(v, *s, simplify(g)),
        Formula::Forall(v, s, g) => Formula::forall(v, *s, simplify(g)),
    }
}

fn simplify_atom(a: &Atom) -> Formula {
    match fold_atom_by_range(a) {
        Some(true) => return Formula::True,
        Some(false) => return Formula::False,
        None => {}
    }
    match a {
        Atom::Cmp(t, op) => Formula::cmp(t.clone(), *op),
        Atom::Int(t) => Formula::int_pred(t.clone()),
        Atom::Div(m, t) => Formula::divides(m.clone(), t.clone()),
        Atom::Pred(..) => Formula::Atom(a.clone()),
    }
}

fn simp_conj(parts: Vec<Formula>) -> Formula {
    let mut groups: BTreeMap<LinearTerm, ConjBounds> = BTreeMap::new();
    let mut others: Vec<Formula> = Vec::new();
    let mut order: Vec<LinearTerm> = Vec::new();
    let flat = Formula::and(parts);
    let parts = match flat {
        Formula::And(ps) => ps,
        other => return other,
    };
    for p in parts {
        match &p {
            Formula::Atom(Atom::Cmp(t, op)) => {
                let (dir, b) = literal_bound(t, *op);
                if !groups.contains_key(&dir) {
                    order.push(dir.clone());
                }
                groups.entry(dir).or_default().add(b);
            }
            _ => {
                // a ∧ ¬a
                let negp = Formula::not(p.clone());
                if others.contains(&negp) {
                    return Formula::False;
                }
                if !others.contains(&p) {
                    others.push(p);
                }
            }
        }
    }
    let mut merged: Vec<Formula> = Vec::new();
    for dir in order {
        let cb = &groups[&dir];
        match cb.emit(&dir) {
            None => return Formula::False,
            Some(fs) => merged.extend(fs),
        }
    }
    merged.extend(others);
    // equality pinning: substitute single-variable equalities into siblings
    if let Some(pinned) = pin_equalities(&merged) {
        return pinned;
    }
    // drop subsumed disjunction clauses: keep C, drop C' when C ⊆ C'
    drop_superset_clauses(&mut merged, /*clauses_are_or=*/ true);
    Formula::and(merged)
}

fn simp_disj(parts: Vec<Formula>) -> Formula {
    let flat = Formula::or(parts);
    let parts = match flat {
        Formula::Or(ps) => ps,
        other => return other,
    };
    let mut groups: BTreeMap<LinearTerm, DisjBounds> = BTreeMap::new();
    let mut order: Vec<LinearTerm> = Vec::new();
    let mut others: Vec<Formula> = Vec::new();
    for p in parts {
        match &p {
            Formula::Atom(Atom::Cmp(t, op)) => {
                let (dir, b) = literal_bound(t, *op);
                if !groups.contains_key(&dir) {
                    order.push(dir.clone());
                }
                groups.entry(dir).or_default().add(b);
            }
            _ => {
                let negp = Formula::not(p.clone());
                if others.contains(&negp) {
                    return Formula::True;
                }
                if !others.contains(&p) {
                    others.push(p);
                }
            }
        }
    }
    let mut merged: Vec<Formula> = Vec::new();
    for dir in order {
        let db = &groups[&dir];
        match db.emit(&dir) {
            None => return Formula::True,
            Some(fs) => merged.extend(fs),
        }
    }
    merged.extend(others);
    drop_superset_clauses(&mut merged, /*clauses_are_or=*/ false);
    Formula::or(merged)
}

/// In a conjunction: for each equality pinning a single variable to a
/// constant, substitute it into the other conjuncts.
fn pin_equalities(parts: &[Formula]) -> Option<Formula> {
    for (i, p) in parts.iter().enumerate() {
        if let Formula::Atom(Atom::Cmp(t, CmpOp::Eq)) = p {
            let vars: Vec<_> = t.iter().collect();
            if vars.len() != 1 {
                continue;
            }
            let (v, c) = (&vars[0].0, &vars[0].1);
            let name = match v {
                TermVar::Var(n) => n.clone(),
                TermVar::Floor(_) => continue,
            };
            // value = -const / c; substituting a constant is safe even
            // under floor occurrences (floor of a constant is a constant)
            let value = -(t.const_part().clone()) * (*c).clone().recip();
            let by = LinearTerm::constant(value);
            let mut changed = false;
            let mut out: Vec<Formula> = Vec::with_capacity(parts.len());
            for (j, q) in parts.iter().enumerate() {
                if j == i {
                    out.push(q.clone());
                    continue;
                }
                if q.free_vars().contains(&name) {
                    changed = true;
                    out.push(q.subst_var(&name, &by));
                } else {
                    out.push(q.clone());
                }
            }
            if changed {
                return Some(simplify(&Formula::and(out)));
            }
        }
    }
    None
}

/// Literal multiset of a pure clause, or None if not a flat clause of the
/// expected polarity.
fn clause_literals(f: &Formula, or_clause: bool) -> Option<Vec<Formula>> {
    match f {
        Formula::Atom(_) | Formula::Not(_) | Formula::True | Formula::False => {
            Some(vec![f.clone()])
        }
        Formula::Or(gs) if or_clause => {
            if gs.iter().all(|g| matches!(g, Formula::Atom(_) | Formula::Not(_))) {
                Some(gs.clone())
            } else {
                None
            }
        }
        Formula::And(gs) if !or_clause => {
            if gs.iter().all(|g| matches!(g, Formula::Atom(_) | Formula::Not(_))) {
                Some(gs.clone())
            } else {
                None
            }
        }
        _ => None,
    }
}

/// In an And of Or-clauses (or Or of And-cubes), a clause whose literal set
/// contains another clause's is implied by it and dropped.
fn drop_superset_clauses(parts: &mut Vec<Formula>, clauses_are_or: bool) {
    let lits: Vec<Option<Vec<Formula>>> = parts
        .iter()
        .map(|p| clause_literals(p, clauses_are_or))
        .collect();
    let mut keep = vec![true; parts.len()];
    for i in 0..parts.len() {
        if !keep[i] {
            continue;
        }
        let Some(li) = &lits[i] else { continue };
        for j in 0..parts.len() {
            if i == j || !keep[j] || !keep[i] {
                continue;
            }
            let Some(lj) = &lits[j] else { continue };
            // li ⊆ lj: drop j
            if li.len() < lj.len() && li.iter().all(|l| lj.contains(l)) {
                keep[j] = false;
            }
        }
    }
    let mut idx = 0;
    parts.retain(|_| {
        let k = keep[idx];
        idx += 1;
        k
    });
}

// ---------------------------------------------------------------------------
// miniscoping

/// Pushes a quantifier as deep as possible before elimination:
/// `∃x (A ∨ B) = ∃xA ∨ ∃xB`, `∃x (A ∧ B) = A ∧ ∃xB` when `x ∉ A`
/// (dually for ∀). The argument is the body; returns the minimized formula.
pub fn push_quantifier(exists: bool, var: &str, sort: crate::formula::Sort, body: Formula) -> Formula {
    if !body.free_vars().contains(var) {
        return body;
    }
    match (exists, body) {
        (true, Formula::Or(gs)) => {
            Formula::or(gs.into_iter().map(|g| push_quantifier(true, var, sort, g)).collect())
        }
        (false, Formula::And(gs)) => {
            Formula::and(gs.into_iter().map(|g| push_quantifier(false, var, sort, g)).collect())
        }
        (ex, Formula::And(gs)) if ex => {
            let (with, without): (Vec<_>, Vec<_>) =
                gs.into_iter().partition(|g| g.free_vars().contains(var));
            if without.is_empty() {
                Formula::exists(var, sort, Formula::and(with))
            } else {
                let mut parts = without;
                parts.push(push_quantifier(true, var, sort, Formula::and(with)));
                Formula::and(parts)
            }
        }
        (ex, Formula::Or(gs)) if !ex => {
            let (with, without): (Vec<_>, Vec<_>) =
                gs.into_iter().partition(|g| g.free_vars().contains(var));
            if without.is_empty() {
                Formula::forall(var, sort, Formula::or(with))
            } else {
                let mut parts = without;
                parts.push(push_quantifier(false, var, sort, Formula::or(with)));
                Formula::or(parts)
            }
        }
        (true, b) => Formula::exists(var, sort, b),
        (false, b) => Formula::forall(var, sort, b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{assignment, evaluate};
    use crate::parse::parse;

    #[test]
    fn nnf_de_morgan() {
        let f = parse("not (Int(x) and Int(y))").unwrap();
        let g = to_nnf(&f);
        match g {
            Formula::Or(parts) => {
                assert_eq!(parts.len(), 2);
                assert!(parts.iter().all(|p| matches!(p, Formula::Not(_))));
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn nnf_eliminates_cmp_negation() {
        let f = parse("not x < 1").unwrap();
        let g = to_nnf(&f);
        // ¬(x-1<0) = 1-x ≤ 0
        assert!(matches!(g, Formula::Atom(Atom::Cmp(_, CmpOp::Le))));
    }

    #[test]
    fn dnf_distributes() {
        let f = parse("(Int(x) or Int(y)) and x < 1").unwrap();
        let d = to_dnf(&f).unwrap();
        match d {
            Formula::Or(parts) => assert_eq!(parts.len(), 2),
            other => panic!("unexpected {:?}", other),
        }
        assert!(to_dnf(&parse("E x. x < 1").unwrap()).is_err());
    }

    #[test]
    fn dnf_streaming_is_lazy() {
        // 2^20 disjuncts; taking 3 must be fast
        let mut clauses = Vec::new();
        for i in 0..20 {
            clauses.push(format!("(x{} < 1 or x{} > 2)", i, i));
        }
        let f = parse(&clauses.join(" and ")).unwrap();
        let mut it = dnf_iter(&f).unwrap();
        for _ in 0..3 {
            assert!(it.next().is_some());
        }
    }

    #[test]
    fn conj_bounds_merge() {
        let f = parse("x < 3 and x < 1 and x <= 1 and 0 <= x").unwrap();
        let s = simplify(&f);
        // x < 1 ∧ 0 ≤ x
        match &s {
            Formula::And(parts) => assert_eq!(parts.len(), 2),
            other => panic!("unexpected {:?}", other),
        }
        let contradiction = parse("x < 1 and x > 1").unwrap();
        assert_eq!(simplify(&contradiction), Formula::False);
        let pointed = parse("x <= 1 and x >= 1").unwrap();
        assert!(matches!(
            simplify(&pointed),
            Formula::Atom(Atom::Cmp(_, CmpOp::Eq))
        ));
    }

    #[test]
    fn disj_bounds_merge() {
        let f = parse("x < 1 or x > 0").unwrap();
        assert_eq!(simplify(&f), Formula::True);
        let g = parse("x < 1 or x = 1").unwrap();
        assert!(matches!(
            simplify(&g),
            Formula::Atom(Atom::Cmp(_, CmpOp::Le))
        ));
        let h = parse("x < 1 or x > 1").unwrap();
        assert!(matches!(simplify(&h), Formula::Or(_)));
    }

    #[test]
    fn fractional_range_folding() {
        // 0 ≤ x - floor(x) is always true; x - floor(x) < 1 likewise
        let f = parse("0 <= x - floor(x)").unwrap();
        assert_eq!(simplify(&f), Formula::True);
        let g = parse("x - floor(x) < 1").unwrap();
        assert_eq!(simplify(&g), Formula::True);
        let h = parse("x - floor(x) = 3/2").unwrap();
        assert_eq!(simplify(&h), Formula::False);
    }

    #[test]
    fn equality_pinning() {
        let f = parse("x = 2 and x < 1").unwrap();
        assert_eq!(simplify(&f), Formula::False);
        let g = parse("x = 2 and y < x").unwrap();
        let s = simplify(&g);
        // y < 2 remains along with the pin
        assert!(matches!(s, Formula::And(_)));
    }

    #[test]
    fn preserves_semantics_on_samples() {
        let fs = [
            "x < 1 and x < 2 or x = 3",
            "not (x <= 1 or x >= 2)",
            "Int(x) and (x < 1 or x > 0)",
            "x = 1 and y < x and x <= 1",
        ];
        let grid: Vec<Rat> = (-8..=8).map(|k| Rat::new(k, 2)).collect();
        for s in fs {
            let f = parse(s).unwrap();
            let g = simplify(&f);
            for vx in &grid {
                for vy in &grid {
                    let a = assignment(&[("x", vx.clone()), ("y", vy.clone())]);
                    assert_eq!(
                        evaluate(&f, &a).unwrap(),
                        evaluate(&g, &a).unwrap(),
                        "{} vs {} at {:?}",
                        f,
                        g,
                        a
                    );
                }
            }
        }
    }

    use crate::rat::Rat;
}
