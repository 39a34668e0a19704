//! First-order formulas over linear atoms: comparisons with zero, the
//! integer predicate, divisibility (internal), and named predicate
//! applications.

use crate::rat::Rat;
use crate::term::{LinearTerm, TermVar};
use num::bigint::BigInt;
use num::Signed;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CmpOp {
    Lt,
    Le,
    Eq,
}

impl CmpOp {
    pub fn holds(&self, v: &Rat) -> bool {
        match self {
            CmpOp::Lt => v.is_negative(),
            CmpOp::Le => !v.is_positive(),
            CmpOp::Eq => v.is_zero(),
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Eq => "=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// `term op 0`.
    Cmp(LinearTerm, CmpOp),
    /// `term ∈ ℤ`.
    Int(LinearTerm),
    /// `modulus | term`; only with integer coefficients, internal to
    /// integer quantifier elimination.
    Div(BigInt, LinearTerm),
    /// Application of a named relation symbol.
    Pred(String, Vec<LinearTerm>),
}

impl Atom {
    /// Scales comparison atoms so the coefficients have no common factor and
    /// (for equations) the leading coefficient is positive.
    pub fn normalize(self) -> Atom {
        match self {
            Atom::Cmp(t, op) => {
                if t.is_constant() {
                    return Atom::Cmp(t, op);
                }
                let l = t.coeff_denom_lcm();
                let mut t = t.scale(&Rat::from_bigint(l));
                let g = t.coeff_gcd();
                if g > BigInt::from(1) {
                    t = t.scale(&Rat::from_big(BigInt::from(1), g));
                }
                if op == CmpOp::Eq && t.leading_coeff().map_or(false, |c| c.is_negative()) {
                    t = -t;
                }
                Atom::Cmp(t, op)
            }
            other => other,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sort {
    Real,
    /// Internal: ranges over ℤ. Never produced by the parser.
    Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Exists(String, Sort, Box<Formula>),
    Forall(String, Sort, Box<Formula>),
}

impl Formula {
    pub fn atom(a: Atom) -> Formula {
        Formula::Atom(a)
    }

    pub fn cmp(t: LinearTerm, op: CmpOp) -> Formula {
        match t.as_constant() {
            Some(c) => {
                if op.holds(c) {
                    Formula::True
                } else {
                    Formula::False
                }
            }
            None => Formula::Atom(Atom::Cmp(t, op)),
        }
    }

    pub fn int_pred(t: LinearTerm) -> Formula {
        match t.as_constant() {
            Some(c) => {
                if c.is_integer() {
                    Formula::True
                } else {
                    Formula::False
                }
            }
            None => Formula::Atom(Atom::Int(t)),
        }
    }

    pub fn divides(m: BigInt, t: LinearTerm) -> Formula {
        debug_assert!(m.is_positive());
        if m == BigInt::from(1) {
            return Formula::True;
        }
        match t.as_constant() {
            Some(c) => match c.to_integer() {
                Some(n) => {
                    if (n % &m) == BigInt::from(0) {
                        Formula::True
                    } else {
                        Formula::False
                    }
                }
                None => Formula::False,
            },
            None => Formula::Atom(Atom::Div(m, t)),
        }
    }

    pub fn not(f: Formula) -> Formula {
        match f {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::Not(g) => *g,
            g => Formula::Not(Box::new(g)),
        }
    }

    pub fn and(fs: Vec<Formula>) -> Formula {
        let mut out: Vec<Formula> = Vec::new();
        for f in fs {
            match f {
                Formula::True => {}
                Formula::False => return Formula::False,
                Formula::And(inner) => {
                    for g in inner {
                        if g == Formula::False {
                            return Formula::False;
                        }
                        if g != Formula::True && !out.contains(&g) {
                            out.push(g);
                        }
                    }
                }
                g => {
                    if !out.contains(&g) {
                        out.push(g)
                    }
                }
            }
        }
        match out.len() {
            0 => Formula::True,
            1 => out.pop().unwrap(),
            _ => Formula::And(out),
        }
    }

    pub fn or(fs: Vec<Formula>) -> Formula {
        let mut out: Vec<Formula> = Vec::new();
        for f in fs {
            match f {
                Formula::False => {}
                Formula::True => return Formula::True,
                Formula::Or(inner) => {
                    for g in inner {
                        if g == Formula::True {
                            return Formula::True;
                        }
                        if g != Formula::False && !out.contains(&g) {
                            out.push(g);
                        }
                    }
                }
                g => {
                    if !out.contains(&g) {
                        out.push(g)
                    }
                }
            }
        }
        match out.len() {
            0 => Formula::False,
            1 => out.pop().unwrap(),
            _ => Formula::Or(out),
        }
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::or(vec![Formula::not(a), b])
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::or(vec![
            Formula::and(vec![a.clone(), b.clone()]),
            Formula::and(vec![Formula::not(a), Formula::not(b)]),
        ])
    }

    pub fn exists(v: &str, sort: Sort, body: Formula) -> Formula {
        match body {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            b => Formula::Exists(v.to_string(), sort, Box::new(b)),
        }
    }

    pub fn forall(v: &str, sort: Sort, body: Formula) -> Formula {
        match body {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            b => Formula::Forall(v.to_string(), sort, Box::new(b)),
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().all(|f| f.is_quantifier_free()),
            Formula::Exists(..) | Formula::Forall(..) => false,
        }
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.visit_atoms(&mut |a| out.push(a));
        out
    }

    pub fn visit_atoms<'a>(&'a self, f: &mut impl FnMut(&'a Atom)) {
        match self {
            Formula::Atom(a) => f(a),
            Formula::Not(g) => g.visit_atoms(f),
            Formula::And(gs) | Formula::Or(gs) => {
                for g in gs {
                    g.visit_atoms(f)
                }
            }
            Formula::Exists(_, _, g) | Formula::Forall(_, _, g) => g.visit_atoms(f),
            Formula::True | Formula::False => {}
        }
    }

    /// Free plain-variable names (a `floor(x)` occurrence makes `x` free).
    pub fn free_vars(&self) -> BTreeSet<String> {
        fn walk(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
            match f {
                Formula::True | Formula::False => {}
                Formula::Atom(a) => {
                    let mut add = |t: &LinearTerm| {
                        for v in t.vars() {
                            let n = v.name();
                            if !bound.iter().any(|b| b == n) {
                                out.insert(n.to_string());
                            }
                        }
                    };
                    match a {
                        Atom::Cmp(t, _) | Atom::Int(t) | Atom::Div(_, t) => add(t),
                        Atom::Pred(_, args) => args.iter().for_each(add),
                    }
                }
                Formula::Not(g) => walk(g, bound, out),
                Formula::And(gs) | Formula::Or(gs) => {
                    for g in gs {
                        walk(g, bound, out)
                    }
                }
                Formula::Exists(v, _, g) | Formula::Forall(v, _, g) => {
                    bound.push(v.clone());
                    walk(g, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    /// All variable names occurring anywhere (free or bound).
    pub fn all_var_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        fn walk(f: &Formula, out: &mut BTreeSet<String>) {
            match f {
                Formula::True | Formula::False => {}
                Formula::Atom(a) => {
                    let mut add = |t: &LinearTerm| {
                        for v in t.vars() {
                            out.insert(v.name().to_string());
                        }
                    };
                    match a {
                        Atom::Cmp(t, _) | Atom::Int(t) | Atom::Div(_, t) => add(t),
                        Atom::Pred(_, args) => args.iter().for_each(add),
                    }
                }
                Formula::Not(g) => walk(g, out),
                Formula::And(gs) | Formula::Or(gs) => {
                    for g in gs {
                        walk(g, out)
                    }
                }
                Formula::Exists(v, _, g) | Formula::Forall(v, _, g) => {
                    out.insert(v.clone());
                    walk(g, out);
                }
            }
        }
        walk(self, &mut out);
        out
    }

    /// Node count (atoms, connectives, quantifiers; terms not counted).
    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => 1,
            Formula::Not(g) => 1 + g.size(),
            Formula::And(gs) | Formula::Or(gs) => 1 + gs.iter().map(|g| g.size()).sum::<usize>(),
            Formula::Exists(_, _, g) | Formula::Forall(_, _, g) => 1 + g.size(),
        }
    }

    /// Capture-avoiding substitution of a term for a free plain variable.
    /// `floor(name)` occurrences are substituted with `⌊by⌋` when `by` is a
    /// plain variable or a constant; otherwise the caller must run
    /// [`lower_floors`] first (this panics on such inputs).
    pub fn subst_var(&self, name: &str, by: &LinearTerm) -> Formula {
        let floor_by = floor_of_term(by).unwrap_or_else(|| {
            LinearTerm::var("\u{0}invalid") // placeholder; only used if a floor occurs
        });
        self.subst_var_inner(name, by, &floor_by)
    }

    fn subst_var_inner(&self, name: &str, by: &LinearTerm, floor_by: &LinearTerm) -> Formula {
        let on_term = |t: &LinearTerm| -> LinearTerm {
            if t.mentions(&TermVar::Floor(name.to_string())) {
                assert!(
                    !floor_by.mentions(&TermVar::Var("\u{0}invalid".into())),
                    "substituting a non-variable term under floor; lower floors first"
                );
            }
            t.subst_var_and_floor(name, by, floor_by)
        };
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Atom(a) => match a {
                Atom::Cmp(t, op) => Formula::cmp(on_term(t), *op),
                Atom::Int(t) => Formula::int_pred(on_term(t)),
                Atom::Div(m, t) => Formula::divides(m.clone(), on_term(t)),
                Atom::Pred(p, args) => {
                    Formula::Atom(Atom::Pred(p.clone(), args.iter().map(on_term).collect()))
                }
            },
            Formula::Not(g) => Formula::not(g.subst_var_inner(name, by, floor_by)),
            Formula::And(gs) => Formula::and(
                gs.iter()
                    .map(|g| g.subst_var_inner(name, by, floor_by))
                    .collect(),
            ),
            Formula::Or(gs) => Formula::or(
                gs.iter()
                    .map(|g| g.subst_var_inner(name, by, floor_by))
                    .collect(),
            ),
            Formula::Exists(v, s, g) | Formula::Forall(v, s, g) => {
                let is_exists = matches!(self, Formula::Exists(..));
                if v == name {
                    // shadowed
                    return self.clone();
                }
                // capture-avoid when the binder collides with vars of `by`
                let needs_rename = by.vars().any(|tv| tv.name() == v);
                let (v2, g2) = if needs_rename {
                    let mut avoid = g.all_var_names();
                    for tv in by.vars() {
                        avoid.insert(tv.name().to_string());
                    }
                    avoid.insert(name.to_string());
                    let fresh = fresh_name(v, &avoid);
                    let renamed = g.subst_var(v, &LinearTerm::var(&fresh));
                    (fresh, renamed)
                } else {
                    (v.clone(), (**g).clone())
                };
                let body = g2.subst_var_inner(name, by, floor_by);
                if is_exists {
                    Formula::exists(&v2, *s, body)
                } else {
                    Formula::forall(&v2, *s, body)
                }
            }
        }
    }

    /// Replaces every application `name(t₁..tₖ)` by `definition` with its
    /// distinguished variables (in order) replaced by the argument terms,
    /// capture-avoiding.
    pub fn substitute_pred(
        &self,
        name: &str,
        params: &[String],
        definition: &Formula,
    ) -> Result<Formula, String> {
        match self {
            Formula::True | Formula::False => Ok(self.clone()),
            Formula::Atom(Atom::Pred(p, args)) if p == name => {
                if args.len() != params.len() {
                    return Err(format!(
                        "predicate {} applied to {} arguments, expected {}",
                        p,
                        args.len(),
                        params.len()
                    ));
                }
                let mut body = definition.clone();
                // substitute parameters simultaneously: first move them to
                // fresh placeholders to avoid clashes between params and args
                let avoid: BTreeSet<String> = body
                    .all_var_names()
                    .into_iter()
                    .chain(args.iter().flat_map(|t| {
                        t.vars().map(|v| v.name().to_string()).collect::<Vec<_>>()
                    }))
                    .chain(params.iter().cloned())
                    .collect();
                let mut placeholders = Vec::new();
                let mut avoid2 = avoid.clone();
                for p in params {
                    let ph = fresh_name(&format!("{}_arg", p), &avoid2);
                    avoid2.insert(ph.clone());
                    placeholders.push(ph);
                }
                for (p, ph) in params.iter().zip(&placeholders) {
                    body = body.subst_var(p, &LinearTerm::var(ph));
                }
                for (ph, arg) in placeholders.iter().zip(args) {
                    body = body.subst_var(ph, arg);
                }
                Ok(body)
            }
            Formula::Atom(_) => Ok(self.clone()),
            Formula::Not(g) => Ok(Formula::not(g.substitute_pred(name, params, definition)?)),
            Formula::And(gs) => Ok(Formula::and(
                gs.iter()
                    .map(|g| g.substitute_pred(name, params, definition))
                    .collect::<Result<_, _>>()?,
            )),
            Formula::Or(gs) => Ok(Formula::or(
                gs.iter()
                    .map(|g| g.substitute_pred(name, params, definition))
                    .collect::<Result<_, _>>()?,
            )),
            Formula::Exists(v, s, g) => {
                // alpha-rename the binder if it collides with the definition's free vars
                let def_free = definition.free_vars();
                if def_free.contains(v) || params.contains(v) {
                    let mut avoid = g.all_var_names();
                    avoid.extend(def_free.iter().cloned());
                    avoid.extend(params.iter().cloned());
                    let fresh = fresh_name(v, &avoid);
                    let renamed = g.subst_var(v, &LinearTerm::var(&fresh));
                    Ok(Formula::exists(
                        &fresh,
                        *s,
                        renamed.substitute_pred(name, params, definition)?,
                    ))
                } else {
                    Ok(Formula::exists(
                        v,
                        *s,
                        g.substitute_pred(name, params, definition)?,
                    ))
                }
            }
            Formula::Forall(v, s, g) => {
                let def_free = definition.free_vars();
                if def_free.contains(v) || params.contains(v) {
                    let mut avoid = g.all_var_names();
                    avoid.extend(def_free.iter().cloned());
                    avoid.extend(params.iter().cloned());
                    let fresh = fresh_name(v, &avoid);
                    let renamed = g.subst_var(v, &LinearTerm::var(&fresh));
                    Ok(Formula::forall(
                        &fresh,
                        *s,
                        renamed.substitute_pred(name, params, definition)?,
                    ))
                } else {
                    Ok(Formula::forall(
                        v,
                        *s,
                        g.substitute_pred(name, params, definition)?,
                    ))
                }
            }
        }
    }

    /// Renames binders so that every bound variable is distinct from every
    /// free variable and from every other binder.
    pub fn alpha_rename(&self) -> Formula {
        let mut used = self.free_vars();
        fn walk(f: &Formula, used: &mut BTreeSet<String>) -> Formula {
            match f {
                Formula::True | Formula::False | Formula::Atom(_) => f.clone(),
                Formula::Not(g) => Formula::not(walk(g, used)),
                Formula::And(gs) => Formula::and(gs.iter().map(|g| walk(g, used)).collect()),
                Formula::Or(gs) => Formula::or(gs.iter().map(|g| walk(g, used)).collect()),
                Formula::Exists(v, s, g) | Formula::Forall(v, s, g) => {
                    let is_exists = matches!(f, Formula::Exists(..));
                    let (v2, body) = if used.contains(v) {
                        let fresh = fresh_name(v, used);
                        used.insert(fresh.clone());
                        (fresh.clone(), g.subst_var(v, &LinearTerm::var(&fresh)))
                    } else {
                        used.insert(v.clone());
                        (v.clone(), (**g).clone())
                    };
                    let body = walk(&body, used);
                    if is_exists {
                        Formula::exists(&v2, *s, body)
                    } else {
                        Formula::forall(&v2, *s, body)
                    }
                }
            }
        }
        walk(self, &mut used)
    }

    /// Structural equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        fn canon(f: &Formula, counter: &mut usize) -> Formula {
            match f {
                Formula::True | Formula::False | Formula::Atom(_) => f.clone(),
                Formula::Not(g) => Formula::Not(Box::new(canon(g, counter))),
                Formula::And(gs) => Formula::And(gs.iter().map(|g| canon(g, counter)).collect()),
                Formula::Or(gs) => Formula::Or(gs.iter().map(|g| canon(g, counter)).collect()),
                Formula::Exists(v, s, g) | Formula::Forall(v, s, g) => {
                    let nv = format!("\u{1}b{}", counter);
                    *counter += 1;
                    let body = g.subst_var(v, &LinearTerm::var(&nv));
                    let body = canon(&body, counter);
                    if matches!(f, Formula::Exists(..)) {
                        Formula::Exists(nv, *s, Box::new(body))
                    } else {
                        Formula::Forall(nv, *s, Box::new(body))
                    }
                }
            }
        }
        canon(self, &mut 0) == canon(other, &mut 0)
    }
}

/// `⌊t⌋` as a term, when representable: constants, plain variables, floors.
fn floor_of_term(t: &LinearTerm) -> Option<LinearTerm> {
    if let Some(c) = t.as_constant() {
        return Some(LinearTerm::constant(c.floor()));
    }
    // single plain variable with coefficient 1 and integer constant shift:
    // floor(x + k) = floor(x) + k
    let vars: Vec<_> = t.iter().collect();
    if vars.len() == 1 {
        let (v, c) = vars[0];
        if *c == Rat::one() && t.const_part().is_integer() {
            let base = match v {
                TermVar::Var(n) => LinearTerm::floor_var(n),
                TermVar::Floor(n) => LinearTerm::floor_var(n), // floor is idempotent on floors
            };
            return Some(base + LinearTerm::constant(t.const_part().clone()));
        }
    }
    None
}

/// A name based on `base` not present in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    if !avoid.contains(base) {
        return base.to_string();
    }
    // strip any existing _N suffix to avoid runaway growth
    let stem = match base.rfind('_') {
        Some(i) if base[i + 1..].chars().all(|c| c.is_ascii_digit()) && i > 0 => &base[..i],
        _ => base,
    };
    let mut k = 1usize;
    loop {
        let cand = format!("{}_{}", stem, k);
        if !avoid.contains(&cand) {
            return cand;
        }
        k += 1;
    }
}

/// Rewrites away `floor(x)` occurrences of the given variables by introducing
/// guarded integer-sorted existentials: `φ(⌊x⌋)` becomes
/// `∃w (Int-sorted w ∧ w ≤ x < w+1 ∧ φ(w))`.
pub fn lower_floors(f: &Formula) -> Formula {
    let mut floored: BTreeSet<String> = BTreeSet::new();
    f.visit_atoms(&mut |a| {
        let mut scan = |t: &LinearTerm| {
            for v in t.vars() {
                if let TermVar::Floor(n) = v {
                    floored.insert(n.clone());
                }
            }
        };
        match a {
            Atom::Cmp(t, _) | Atom::Int(t) | Atom::Div(_, t) => scan(t),
            Atom::Pred(_, args) => args.iter().for_each(scan),
        }
    });
    if floored.is_empty() {
        return f.clone();
    }
    // Only free-variable floors are expected here; bound variables never
    // carry floors in this crate's pipelines.
    let mut avoid = f.all_var_names();
    let mut out = f.clone();
    let mut guards = Vec::new();
    let mut binders = Vec::new();
    for x in floored {
        let w = fresh_name(&format!("{}_ip", x), &avoid);
        avoid.insert(w.clone());
        out = replace_floor(&out, &x, &LinearTerm::var(&w));
        let wx = LinearTerm::var(&w);
        let xv = LinearTerm::var(&x);
        guards.push(Formula::cmp(wx.clone() - xv.clone(), CmpOp::Le)); // w ≤ x
        guards.push(Formula::cmp(
            xv - wx - LinearTerm::constant(Rat::one()),
            CmpOp::Lt,
        )); // x < w + 1
        binders.push(w);
    }
    let mut body = Formula::and(guards.into_iter().chain(std::iter::once(out)).collect());
    for w in binders.into_iter().rev() {
        body = Formula::exists(&w, Sort::Int, body);
    }
    body
}

/// Replaces `floor(name)` (not the plain variable) by a term.
pub fn replace_floor(f: &Formula, name: &str, by: &LinearTerm) -> Formula {
    let on_term = |t: &LinearTerm| t.subst(&TermVar::Floor(name.to_string()), by);
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Atom(a) => match a {
            Atom::Cmp(t, op) => Formula::cmp(on_term(t), *op),
            Atom::Int(t) => Formula::int_pred(on_term(t)),
            Atom::Div(m, t) => Formula::divides(m.clone(), on_term(t)),
            Atom::Pred(p, args) => {
                Formula::Atom(Atom::Pred(p.clone(), args.iter().map(on_term).collect()))
            }
        },
        Formula::Not(g) => Formula::not(replace_floor(g, name, by)),
        Formula::And(gs) => Formula::and(gs.iter().map(|g| replace_floor(g, name, by)).collect()),
        Formula::Or(gs) => Formula::or(gs.iter().map(|g| replace_floor(g, name, by)).collect()),
        Formula::Exists(v, s, g) => Formula::exists(v, *s, replace_floor(g, name, by)),
        Formula::Forall(v, s, g) => Formula::forall(v, *s, replace_floor(g, name, by)),
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::print::render(self))
    }
}
