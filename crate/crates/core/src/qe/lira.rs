//! The mixed real/integer layer: variable splitting `x = b + f`, full
//! quantifier elimination and decision for the reals with an integer
//! predicate, the unique integer/fractional decomposition, and bounded
//! restriction.
//!
//! Every variable `x` is split into an integer part `b` (integer-sorted)
//! and a fractional part `f ∈ [0,1)`. A mixed comparison `h + g ◁ 0` with
//! `h` integer-valued and `g` a fractional-part combination is replaced by
//! a case split over `k = ⌊g⌋`, which ranges over a finite interval; each
//! case is a conjunction of a purely fractional condition and a purely
//! integer one. Fractional quantifiers are then eliminated by the real
//! engine, integer ones by Cooper's method. For free variables the integer
//! part is projected back as `floor(x)`.

use crate::formula::{Atom, CmpOp, Formula, Sort};
use crate::qe::{int, real, QeError};
use crate::rat::Rat;
use crate::simplify::{simplify, to_nnf};
use crate::term::{LinearTerm, TermVar};
use num::bigint::BigInt;
use std::collections::{BTreeMap, BTreeSet};

/// Variable-splitting context: original name -> (integer-part name,
/// fractional-part name).
#[derive(Clone, Debug, Default)]
pub struct VarSplit {
    pub pairs: BTreeMap<String, (String, String)>,
    frac_names: BTreeSet<String>,
}

impl VarSplit {
    fn alloc(&mut self, x: &str, avoid: &mut BTreeSet<String>) -> (String, String) {
        if let Some(p) = self.pairs.get(x) {
            return p.clone();
        }
        let b = crate::formula::fresh_name(&format!("{}_i", x), avoid);
        avoid.insert(b.clone());
        let f = crate::formula::fresh_name(&format!("{}_f", x), avoid);
        avoid.insert(f.clone());
        self.pairs.insert(x.to_string(), (b.clone(), f.clone()));
        self.frac_names.insert(f.clone());
        (b, f)
    }
}

fn check_no_pred(f: &Formula) -> Result<(), QeError> {
    let mut bad: Option<String> = None;
    f.visit_atoms(&mut |a| {
        if let Atom::Pred(name, _) = a {
            bad.get_or_insert_with(|| name.clone());
        }
    });
    match bad {
        Some(b) => Err(QeError::UnsupportedAtom(format!("{}(..)", b))),
        None => Ok(()),
    }
}

/// Rewrites a formula over the original variables into one over split
/// variables with purely-integer and purely-fractional atoms. Real
/// quantifiers become paired int/frac quantifiers with the side constraint
/// `0 ≤ f < 1`; `Int(t)` with non-integer coefficients introduces (and
/// immediately eliminates) an auxiliary integer existential.
fn split_transform(f: &Formula, split: &mut VarSplit, avoid: &mut BTreeSet<String>) -> Formula {
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Atom(a) => split_atom(a, split, avoid),
        Formula::Not(g) => Formula::not(split_transform(g, split, avoid)),
        Formula::And(gs) => Formula::and(
            gs.iter()
                .map(|g| split_transform(g, split, avoid))
                .collect(),
        ),
        Formula::Or(gs) => Formula::or(
            gs.iter()
                .map(|g| split_transform(g, split, avoid))
                .collect(),
        ),
        Formula::Exists(v, Sort::Real, g) => {
            let (b, fr) = split.alloc(v, avoid);
            let body = split_transform(g, split, avoid);
            let body = Formula::and(vec![frac_range(&fr), body]);
            Formula::exists(&b, Sort::Int, Formula::exists(&fr, Sort::Real, body))
        }
        Formula::Forall(v, Sort::Real, g) => {
            let (b, fr) = split.alloc(v, avoid);
            let body = split_transform(g, split, avoid);
            let body = Formula::implies(frac_range(&fr), body);
            Formula::forall(&b, Sort::Int, Formula::forall(&fr, Sort::Real, body))
        }
        Formula::Exists(v, Sort::Int, g) => {
            Formula::exists(v, Sort::Int, split_transform(g, split, avoid))
        }
        Formula::Forall(v, Sort::Int, g) => {
            Formula::forall(v, Sort::Int, split_transform(g, split, avoid))
        }
    }
}

/// `0 ≤ f ∧ f < 1`.
fn frac_range(f: &str) -> Formula {
    let fv = LinearTerm::var(f);
    Formula::and(vec![
        Formula::cmp(-fv.clone(), CmpOp::Le),
        Formula::cmp(fv - LinearTerm::constant(Rat::one()), CmpOp::Lt),
    ])
}

/// Applies the pair substitution inside a term: `x ↦ b + f`,
/// `floor(x) ↦ b`. Every variable of the source formula is pre-registered
/// for splitting; anything unregistered is an internal integer auxiliary
/// and passes through.
fn split_term(t: &LinearTerm, split: &mut VarSplit, avoid: &mut BTreeSet<String>) -> LinearTerm {
    let mut out = LinearTerm::constant(t.const_part().clone());
    for (v, c) in t.iter() {
        match v {
            TermVar::Var(n) => {
                if let Some((b, fr)) = split.pairs.get(n).cloned() {
                    let term = (LinearTerm::var(&b) + LinearTerm::var(&fr)).scale(c);
                    out = out + term;
                } else {
                    let e = out.coeff(v) + c.clone();
                    out.set_coeff(v.clone(), e);
                }
            }
            TermVar::Floor(n) => {
                let (b, _) = split.alloc(n, avoid);
                let e = out.coeff(&TermVar::Var(b.clone())) + c.clone();
                out.set_coeff(TermVar::Var(b), e);
            }
        }
    }
    out
}

fn split_atom(a: &Atom, split: &mut VarSplit, avoid: &mut BTreeSet<String>) -> Formula {
    match a {
        Atom::Cmp(t, op) => {
            let t2 = split_term(t, split, avoid);
            split_cmp(&t2, *op, split)
        }
        Atom::Int(t) => {
            let t2 = split_term(t, split, avoid);
            purify_int(&t2, split, avoid)
        }
        // m | t over the reals means t ∈ mℤ, i.e. Int(t/m)
        Atom::Div(m, t) => {
            let t2 = split_term(t, split, avoid).scale(&Rat::from_big(
                BigInt::from(1),
                m.clone(),
            ));
            purify_int(&t2, split, avoid)
        }
        Atom::Pred(..) => unreachable!("checked before splitting"),
    }
}

/// Is this unknown a fractional-part variable?
fn is_frac(v: &TermVar, split: &VarSplit) -> bool {
    matches!(v, TermVar::Var(n) if split.frac_names.contains(n))
}

/// Separates a split term into its integer-valued part `h` (integer-part
/// and auxiliary integer variables) and fractional part `g` (fractional
/// variables plus the constant).
fn separate(t: &LinearTerm, split: &VarSplit) -> (LinearTerm, LinearTerm) {
    let mut h = LinearTerm::zero();
    let mut g = LinearTerm::constant(t.const_part().clone());
    for (v, c) in t.iter() {
        if is_frac(v, split) {
            g.set_coeff(v.clone(), c.clone());
        } else {
            h.set_coeff(v.clone(), c.clone());
        }
    }
    (h, g)
}

/// Attainable-value bounds of a fractional part `g = Σ cᵢ fᵢ + d` with
/// every `fᵢ ∈ [0,1)`: `g ∈ [d + Σ min(cᵢ,0), d + Σ max(cᵢ,0)]` (outer
/// bounds, endpoints not necessarily attained).
fn frac_bounds(g: &LinearTerm) -> (Rat, Rat) {
    let mut lo = g.const_part().clone();
    let mut hi = g.const_part().clone();
    for (_, c) in g.iter() {
        if c.is_negative() {
            lo = lo + c.clone();
        } else {
            hi = hi + c.clone();
        }
    }
    (lo, hi)
}

/// `h + g ◁ 0` with `h` integer-valued: case split on `k = ⌊g⌋`.
/// For each feasible `k` (with the fractional guard `k ≤ g < k+1`):
///   `<` :  `h + k + 1 ≤ 0`
///   `≤` :  `h + k + 1 ≤ 0  ∨  (h + k = 0 ∧ g = k)`
///   `=` :  `h + k = 0 ∧ g = k`
fn split_cmp(t: &LinearTerm, op: CmpOp, split: &VarSplit) -> Formula {
    // scale so integer-part coefficients are integers
    let (h0, _) = separate(t, split);
    let scale = h0.coeff_denom_lcm();
    let t = t.scale(&Rat::from_bigint(scale));
    let (h, g) = separate(&t, split);

    if h.is_constant() && h.const_part().is_zero() {
        // purely fractional
        return Formula::cmp(g, op);
    }
    if g.is_constant() {
        // purely integer, but the constant may be rational: tighten
        return tighten_int_cmp(&h, g.const_part(), op);
    }
    let (lo, hi) = frac_bounds(&g);
    let mut k = lo.floor_int();
    let k_hi = hi.floor_int();
    let mut cases = Vec::new();
    while k <= k_hi {
        let kr = Rat::from_bigint(k.clone());
        let guard_lo = Formula::cmp(
            LinearTerm::constant(kr.clone()) - g.clone(),
            CmpOp::Le,
        ); // k ≤ g
        let guard_hi = Formula::cmp(
            g.clone() - LinearTerm::constant(kr.clone() + Rat::one()),
            CmpOp::Lt,
        ); // g < k+1
        let h_plus_k = h.clone() + LinearTerm::constant(kr.clone());
        let strict_cond = Formula::cmp(
            h_plus_k.clone() + LinearTerm::constant(Rat::one()),
            CmpOp::Le,
        ); // h + k + 1 ≤ 0
        let eq_int = Formula::cmp(h_plus_k, CmpOp::Eq);
        let eq_frac = Formula::cmp(g.clone() - LinearTerm::constant(kr.clone()), CmpOp::Eq);
        let int_cond = match op {
            CmpOp::Lt => strict_cond,
            CmpOp::Le => Formula::or(vec![
                strict_cond,
                Formula::and(vec![eq_int, eq_frac]),
            ]),
            CmpOp::Eq => Formula::and(vec![eq_int, eq_frac]),
        };
        cases.push(Formula::and(vec![guard_lo, guard_hi, int_cond]));
        k += 1;
    }
    simplify(&Formula::or(cases))
}

/// `h + c ◁ 0` over integers with rational `c`: turn into an
/// integer-constant comparison.
fn tighten_int_cmp(h: &LinearTerm, c: &Rat, op: CmpOp) -> Formula {
    match op {
        // h < -c  ⟺  h ≤ ceil(-c) - 1
        CmpOp::Lt => {
            let bound = if c.is_integer() {
                -c.clone() - Rat::one()
            } else {
                (-c.clone()).floor()
            };
            Formula::cmp(h.clone() - LinearTerm::constant(bound), CmpOp::Le)
        }
        // h ≤ -c  ⟺  h ≤ floor(-c)
        CmpOp::Le => Formula::cmp(
            h.clone() - LinearTerm::constant((-c.clone()).floor()),
            CmpOp::Le,
        ),
        CmpOp::Eq => {
            if c.is_integer() {
                Formula::cmp(h.clone() + LinearTerm::constant(c.clone()), CmpOp::Eq)
            } else {
                Formula::False
            }
        }
    }
}

/// `Int(t)` for a split term. When the integer-valued part has integer
/// coefficients, `Int(h+g) ⟺ g ∈ ℤ`, a finite fractional disjunction.
/// Otherwise introduce `w ∈ ℤ` with `t = w` and eliminate `w` by Cooper.
fn purify_int(t: &LinearTerm, split: &VarSplit, avoid: &mut BTreeSet<String>) -> Formula {
    let (h, g) = separate(t, split);
    if h.coeffs_integer() {
        // g must be an integer: enumerate the attainable ones
        let (lo, hi) = frac_bounds(&g);
        let mut j = lo.ceil_int();
        let j_hi = hi.floor_int();
        let mut cases = Vec::new();
        while j <= j_hi {
            cases.push(Formula::cmp(
                g.clone() - LinearTerm::constant(Rat::from_bigint(j.clone())),
                CmpOp::Eq,
            ));
            j += 1;
        }
        return simplify(&Formula::or(cases));
    }
    let w = crate::formula::fresh_name("w_int", avoid);
    avoid.insert(w.clone());
    let eq = split_cmp(&(t.clone() - LinearTerm::var(&w)), CmpOp::Eq, split);
    int::exists_int(&w, eq)
}

// ---------------------------------------------------------------------------
// elimination pipeline

/// Eliminates all quantifiers of a pure (split) formula, fractional
/// variables by the real engine and integer ones by Cooper, innermost
/// first.
fn eliminate_pure(f: &Formula) -> Formula {
    match f {
        Formula::True | Formula::False | Formula::Atom(_) => f.clone(),
        Formula::Not(g) => Formula::not(eliminate_pure(g)),
        Formula::And(gs) => Formula::and(gs.iter().map(eliminate_pure).collect()),
        Formula::Or(gs) => Formula::or(gs.iter().map(eliminate_pure).collect()),
        Formula::Exists(v, s, g) => {
            let body = eliminate_pure(g);
            match s {
                Sort::Real => real::exists_real(v, body),
                Sort::Int => int::exists_int(v, body),
            }
        }
        Formula::Forall(v, s, g) => {
            let body = eliminate_pure(g);
            match s {
                Sort::Real => real::forall_real(v, body),
                Sort::Int => int::forall_int(v, body),
            }
        }
    }
}

/// The fully processed form of a formula: quantifier-free, over pure atoms
/// in the split variables of its free variables.
pub struct PureForm {
    pub formula: Formula,
    pub split: VarSplit,
}

/// Splits, purifies and eliminates quantifiers. The result is
/// quantifier-free over the integer/fractional parts of the free variables;
/// interpreting `b = ⌊x⌋, f = x - ⌊x⌋` recovers the source relation.
pub fn to_pure(f: &Formula) -> Result<PureForm, QeError> {
    check_no_pred(f)?;
    let f = f.alpha_rename();
    let mut avoid = f.all_var_names();
    let mut split = VarSplit::default();
    // pre-register every variable (free and bound) for splitting
    for v in &avoid.clone() {
        split.alloc(v, &mut avoid);
    }
    let mut g = split_transform(&f, &mut split, &mut avoid);
    // assume the side constraints of free fractional variables during
    // elimination; they are consequences of the interpretation
    let frees = f.free_vars();
    let mut guards = Vec::new();
    for x in &frees {
        let (_, fr) = split.pairs[x].clone();
        guards.push(frac_range(&fr));
    }
    if !guards.is_empty() {
        guards.push(g);
        g = Formula::and(guards);
    }
    let g = eliminate_pure(&simplify(&g));
    Ok(PureForm {
        formula: simplify(&g),
        split,
    })
}

/// Public variable-splitting operation: rewrites a formula over the split
/// variables with purely-integer and purely-fractional atoms. Quantifiers
/// of the input remain (as paired quantifiers); the integer existentials
/// introduced for `Int` atoms with non-integer coefficients are eliminated
/// on the spot.
pub fn split_variables(f: &Formula) -> Result<(Formula, VarSplit), QeError> {
    check_no_pred(f)?;
    let f = f.alpha_rename();
    let mut avoid = f.all_var_names();
    let mut split = VarSplit::default();
    for v in &avoid.clone() {
        split.alloc(v, &mut avoid);
    }
    let g = split_transform(&f, &mut split, &mut avoid);
    Ok((simplify(&g), split))
}

/// Replaces the split variables of free variables back by `floor(x)` and
/// `x - floor(x)`, and rewrites divisibility atoms as `Int(t/m)` so the
/// output stays in the surface language (plus `floor`).
fn unsplit(f: &Formula, split: &VarSplit) -> Formula {
    let mut out = f.clone();
    for (x, (b, fr)) in &split.pairs {
        let floor_term = LinearTerm::floor_var(x);
        let frac_term = LinearTerm::var(x) - LinearTerm::floor_var(x);
        out = out.subst_var(b, &floor_term);
        out = out.subst_var(fr, &frac_term);
    }
    let out = rewrite_div_as_int(&out);
    simplify(&defloor(&simplify(&out)))
}

fn rewrite_div_as_int(f: &Formula) -> Formula {
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Atom(Atom::Div(m, t)) => Formula::int_pred(
            t.scale(&Rat::from_big(BigInt::from(1), m.clone())),
        ),
        Formula::Atom(_) => f.clone(),
        Formula::Not(g) => Formula::not(rewrite_div_as_int(g)),
        Formula::And(gs) => Formula::and(gs.iter().map(rewrite_div_as_int).collect()),
        Formula::Or(gs) => Formula::or(gs.iter().map(rewrite_div_as_int).collect()),
        Formula::Exists(v, s, g) => Formula::exists(v, *s, rewrite_div_as_int(g)),
        Formula::Forall(v, s, g) => Formula::forall(v, *s, rewrite_div_as_int(g)),
    }
}

/// Cosmetic rewriting of floor atoms back into `Int` form where possible:
/// `a·x - a·floor(x) + d = 0` (a single fractional part pinned to a
/// constant) becomes `Int(x + d/a)` or `false`.
fn defloor(f: &Formula) -> Formula {
    match f {
        Formula::Atom(Atom::Cmp(t, CmpOp::Eq)) => {
            let pairs: Vec<(&TermVar, &Rat)> = t.iter().collect();
            if pairs.len() == 2 {
                if let (TermVar::Var(n1), TermVar::Floor(n2)) = (pairs[0].0, pairs[1].0) {
                    if n1 == n2 && *pairs[1].1 == -pairs[0].1.clone() {
                        let a = pairs[0].1.clone();
                        // a·frac(x) + d = 0  ⟺  frac(x) = -d/a
                        let q = -(t.const_part().clone()) * a.recip();
                        if !q.is_negative() && q < Rat::one() {
                            return Formula::int_pred(
                                LinearTerm::var(n1) - LinearTerm::constant(q),
                            );
                        }
                        return Formula::False;
                    }
                }
            }
            f.clone()
        }
        Formula::True | Formula::False | Formula::Atom(_) => f.clone(),
        Formula::Not(g) => Formula::not(defloor(g)),
        Formula::And(gs) => Formula::and(gs.iter().map(defloor).collect()),
        Formula::Or(gs) => Formula::or(gs.iter().map(defloor).collect()),
        Formula::Exists(v, s, g) => Formula::exists(v, *s, defloor(g)),
        Formula::Forall(v, s, g) => Formula::forall(v, *s, defloor(g)),
    }
}

/// Full quantifier elimination for the mixed theory. Output is
/// quantifier-free over comparison and `Int` atoms in the original
/// variables and their integer parts (`floor(x)`).
pub fn eliminate_ls(f: &Formula) -> Result<Formula, QeError> {
    let pure = to_pure(f)?;
    Ok(unsplit(&pure.formula, &pure.split))
}

/// Decides a closed sentence of the mixed theory.
pub fn decide_ls(f: &Formula) -> Result<bool, QeError> {
    let frees = f.free_vars();
    if !frees.is_empty() {
        return Err(QeError::FreeVars(
            frees.into_iter().collect::<Vec<_>>().join(", "),
        ));
    }
    let pure = to_pure(f)?;
    match pure.formula {
        Formula::True => Ok(true),
        Formula::False => Ok(false),
        other => crate::eval::evaluate(&other, &BTreeMap::new())
            .map_err(|e| QeError::Other(format!("residual formula not ground: {}", e))),
    }
}

// ---------------------------------------------------------------------------
// decomposition (integer + fractional parts)

/// One part of the unique decomposition: an integer region and a
/// fractional tile in `[0,1)^n`.
#[derive(Clone, Debug)]
pub struct DecompPart {
    /// Presburger formula over the integer-part variables `b1..bn`.
    pub int_part: Formula,
    /// Order formula over the fractional-part variables `f1..fn`,
    /// implying `0 ≤ fi < 1`.
    pub frac_part: Formula,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    /// Original variables in axis order.
    pub vars: Vec<String>,
    pub int_vars: Vec<String>,
    pub frac_vars: Vec<String>,
    pub parts: Vec<DecompPart>,
}

impl Decomposition {
    /// Reassembles `⋃ₖ (intPartₖ + fracPartₖ)` as a formula over the
    /// original variables, for equivalence checking.
    pub fn to_formula(&self) -> Formula {
        let mut avoid: BTreeSet<String> = self.vars.iter().cloned().collect();
        for p in &self.parts {
            avoid.extend(p.int_part.all_var_names());
            avoid.extend(p.frac_part.all_var_names());
        }
        let witnesses: Vec<String> = (1..=self.vars.len())
            .map(|i| {
                let name = crate::formula::fresh_name(&format!("u{}", i), &avoid);
                avoid.insert(name.clone());
                name
            })
            .collect();
        let mut disjuncts = Vec::new();
        for part in &self.parts {
            let mut body_int = part.int_part.clone();
            let mut body_frac = part.frac_part.clone();
            let mut guards = Vec::new();
            for (i, x) in self.vars.iter().enumerate() {
                let u = &witnesses[i];
                body_int = body_int.subst_var(&self.int_vars[i], &LinearTerm::var(u));
                body_frac = body_frac.subst_var(
                    &self.frac_vars[i],
                    &(LinearTerm::var(x) - LinearTerm::var(u)),
                );
                guards.push(Formula::int_pred(LinearTerm::var(u)));
            }
            let mut body = Formula::and(
                guards
                    .into_iter()
                    .chain([rewrite_div_as_int(&body_int), body_frac])
                    .collect(),
            );
            for u in witnesses.iter().rev() {
                body = Formula::exists(u, Sort::Real, body);
            }
            disjuncts.push(body);
        }
        Formula::or(disjuncts)
    }
}

/// Partitions the literals of a pure disjunct into integer-side and
/// fractional-side conjunctions.
fn partition_literals(
    lits: &[Formula],
    split: &VarSplit,
) -> Result<(Vec<Formula>, Vec<Formula>), QeError> {
    let mut int_side = Vec::new();
    let mut frac_side = Vec::new();
    for l in lits {
        let atom = match l {
            Formula::Atom(a) => a,
            Formula::Not(inner) => match &**inner {
                Formula::Atom(a) => a,
                _ => return Err(QeError::Other(format!("unexpected literal {}", l))),
            },
            _ => return Err(QeError::Other(format!("unexpected literal {}", l))),
        };
        let term = match atom {
            Atom::Cmp(t, _) | Atom::Div(_, t) | Atom::Int(t) => t,
            Atom::Pred(..) => unreachable!(),
        };
        let has_frac = term.vars().any(|v| is_frac(v, split));
        let has_int = term.vars().any(|v| !is_frac(v, split));
        if has_frac && has_int {
            return Err(QeError::Other(format!("mixed literal {}", l)));
        }
        if has_frac {
            frac_side.push(l.clone());
        } else {
            int_side.push(l.clone());
        }
    }
    Ok((int_side, frac_side))
}

/// The unique decomposition of a relation into integer and fractional
/// parts: integer parts pairwise disjoint, fractional tiles pairwise
/// inequivalent, parts in a canonical order (sorted by the rendered
/// fractional formula).
pub fn decompose(f: &Formula, vars: &[String]) -> Result<Decomposition, QeError> {
    let frees = f.free_vars();
    for v in &frees {
        if !vars.contains(v) {
            return Err(QeError::FreeVars(format!(
                "free variable {} not among {:?}",
                v, vars
            )));
        }
    }
    let pure = to_pure(f)?;
    let n = vars.len();
    // canonical part-variable names, kept clear of any source names
    let mut avoid: BTreeSet<String> = pure.formula.all_var_names();
    avoid.extend(vars.iter().cloned());
    let int_vars: Vec<String> = (1..=n)
        .map(|i| {
            let name = crate::formula::fresh_name(&format!("b{}", i), &avoid);
            avoid.insert(name.clone());
            name
        })
        .collect();
    let frac_vars: Vec<String> = (1..=n)
        .map(|i| {
            let name = crate::formula::fresh_name(&format!("f{}", i), &avoid);
            avoid.insert(name.clone());
            name
        })
        .collect();
    // rename split pairs to canonical names
    let mut body = pure.formula.clone();
    for (i, x) in vars.iter().enumerate() {
        if let Some((b, fr)) = pure.split.pairs.get(x) {
            body = body.subst_var(b, &LinearTerm::var(&int_vars[i]));
            body = body.subst_var(fr, &LinearTerm::var(&frac_vars[i]));
        }
    }
    let mut canon_split = VarSplit::default();
    for (i, x) in vars.iter().enumerate() {
        canon_split
            .pairs
            .insert(x.clone(), (int_vars[i].clone(), frac_vars[i].clone()));
        canon_split.frac_names.insert(frac_vars[i].clone());
    }

    // cube guard for the fractional side
    let cube: Vec<Formula> = frac_vars.iter().map(|fv| frac_range(fv)).collect();
    let cube_formula = Formula::and(cube.clone());

    // DNF into (int, frac) pairs
    let mut raw_parts: Vec<(Formula, Formula)> = Vec::new();
    for lits in crate::simplify::dnf_iter(&body).map_err(QeError::Other)? {
        let (int_side, frac_side) = partition_literals(&lits, &canon_split)?;
        let ip = simplify(&Formula::and(int_side));
        let fp = simplify(&Formula::and(
            frac_side.into_iter().chain(cube.iter().cloned()).collect(),
        ));
        if fp == Formula::False {
            continue;
        }
        if !int::int_satisfiable(&ip)? {
            continue;
        }
        // fractional side must be satisfiable inside the cube
        let sat = real::decide_ss(&close_exists(&fp, &frac_vars))?;
        if !sat {
            continue;
        }
        raw_parts.push((ip, fp));
    }

    // group by fractional equivalence
    let mut groups: Vec<(Formula, Vec<Formula>)> = Vec::new(); // (frac, int disjuncts)
    'outer: for (ip, fp) in raw_parts {
        for (gf, gints) in groups.iter_mut() {
            if frac_equiv(gf, &fp, &frac_vars, &cube_formula)? {
                gints.push(ip);
                continue 'outer;
            }
        }
        groups.push((fp, vec![ip]));
    }
    let grouped: Vec<(Formula, Formula)> = groups
        .into_iter()
        .map(|(fp, ints)| (fp, simplify(&Formula::or(ints))))
        .collect();

    // make the integer parts pairwise disjoint: intersect/differentiate by
    // membership pattern over the groups
    let k = grouped.len();
    let mut final_parts: Vec<(Formula, Formula)> = Vec::new();
    let patterns = 1usize << k;
    for mask in 1..patterns {
        let mut int_conj = Vec::new();
        for (i, (_, ip)) in grouped.iter().enumerate() {
            if mask & (1 << i) != 0 {
                int_conj.push(ip.clone());
            } else {
                int_conj.push(to_nnf(&Formula::not(ip.clone())));
            }
        }
        let region = simplify(&Formula::and(int_conj));
        if region == Formula::False || !int::int_satisfiable(&region)? {
            continue;
        }
        let tiles: Vec<Formula> = grouped
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, (fp, _))| fp.clone())
            .collect();
        let tile = simplify(&Formula::or(tiles));
        final_parts.push((region, tile));
    }

    // merge regions whose union tiles coincide semantically
    let mut merged: Vec<(Formula, Formula)> = Vec::new();
    'outer2: for (region, tile) in final_parts {
        for (mr, mt) in merged.iter_mut() {
            if frac_equiv(mt, &tile, &frac_vars, &cube_formula)? {
                *mr = simplify(&Formula::or(vec![mr.clone(), region]));
                continue 'outer2;
            }
        }
        merged.push((region, tile));
    }

    let mut parts: Vec<DecompPart> = merged
        .into_iter()
        .map(|(region, tile)| DecompPart {
            int_part: region,
            frac_part: tile,
        })
        .collect();
    parts.sort_by_key(|p| crate::print::render(&p.frac_part));
    Ok(Decomposition {
        vars: vars.to_vec(),
        int_vars,
        frac_vars,
        parts,
    })
}

fn close_exists(f: &Formula, vars: &[String]) -> Formula {
    let mut g = f.clone();
    for v in vars.iter().rev() {
        g = Formula::exists(v, Sort::Real, g.clone());
    }
    g
}

fn frac_equiv(
    a: &Formula,
    b: &Formula,
    vars: &[String],
    cube: &Formula,
) -> Result<bool, QeError> {
    let body = Formula::implies(cube.clone(), Formula::iff(a.clone(), b.clone()));
    let mut g = body;
    for v in vars.iter().rev() {
        g = Formula::forall(v, Sort::Real, g);
    }
    real::decide_ss(&g)
}

// ---------------------------------------------------------------------------
// bounded restriction

/// Restriction of a relation to a rational closed box, with all integer
/// structure resolved by enumerating the integer points of the box. The
/// output contains comparison atoms only.
pub fn restrict_to_box(f: &Formula, vars: &[String], box_: &[(Rat, Rat)]) -> Result<Formula, QeError> {
    if vars.len() != box_.len() {
        return Err(QeError::Other("box arity mismatch".into()));
    }
    if box_.iter().any(|(a, b)| a > b) {
        return Ok(Formula::False);
    }
    let frees = f.free_vars();
    for v in &frees {
        if !vars.contains(v) {
            return Err(QeError::FreeVars(format!(
                "free variable {} not among {:?}",
                v, vars
            )));
        }
    }
    let pure = to_pure(f)?;
    // integer-part ranges: b ∈ [⌊a⌋, ⌊b⌋]
    let ranges: Vec<(BigInt, BigInt)> = box_
        .iter()
        .map(|(a, b)| (a.floor_int(), b.floor_int()))
        .collect();
    let mut disjuncts = Vec::new();
    let mut tuple: Vec<BigInt> = ranges.iter().map(|(lo, _)| lo.clone()).collect();
    loop {
        // substitute this integer tuple
        let mut g = pure.formula.clone();
        for (i, x) in vars.iter().enumerate() {
            if let Some((b, _)) = pure.split.pairs.get(x) {
                g = g.subst_var(b, &LinearTerm::constant(Rat::from_bigint(tuple[i].clone())));
            }
        }
        let mut g = simplify(&g);
        // substitute fractional parts f := x - b
        for (i, x) in vars.iter().enumerate() {
            if let Some((_, fr)) = pure.split.pairs.get(x) {
                let term = LinearTerm::var(x)
                    - LinearTerm::constant(Rat::from_bigint(tuple[i].clone()));
                g = g.subst_var(fr, &term);
            }
        }
        if g != Formula::False {
            let mut guards = vec![g];
            for (i, x) in vars.iter().enumerate() {
                let xv = LinearTerm::var(x);
                let b = Rat::from_bigint(tuple[i].clone());
                // max(aᵢ, bᵢ) ≤ x ≤ min(bᵢ, b+1)
                guards.push(Formula::cmp(
                    LinearTerm::constant(box_[i].0.clone()) - xv.clone(),
                    CmpOp::Le,
                ));
                guards.push(Formula::cmp(
                    xv.clone() - LinearTerm::constant(box_[i].1.clone()),
                    CmpOp::Le,
                ));
                guards.push(Formula::cmp(
                    LinearTerm::constant(b.clone()) - xv.clone(),
                    CmpOp::Le,
                ));
                guards.push(Formula::cmp(
                    xv - LinearTerm::constant(b + Rat::one()),
                    CmpOp::Lt,
                ));
            }
            disjuncts.push(simplify(&Formula::and(guards)));
        }
        // advance the tuple
        let mut pos = 0;
        loop {
            if pos == tuple.len() {
                return Ok(simplify(&Formula::or(disjuncts)));
            }
            tuple[pos] += 1;
            if tuple[pos] <= ranges[pos].1 {
                break;
            }
            tuple[pos] = ranges[pos].0.clone();
            pos += 1;
        }
    }
}
