//! Local polyhedral geometry of quantifier-free order-definable relations:
//! cones, local neighborhoods, strata subspaces with rational bases,
//! singular points, the face census, and rational sections and lines.

use crate::formula::{lower_floors, Atom, CmpOp, Formula, Sort};
use crate::linalg;
use crate::qe::real::{decide_ss, rational_witness};
use crate::qe::QeError;
use crate::rat::Rat;
use crate::simplify::simplify;
use crate::term::{LinearTerm, TermVar};
use std::collections::BTreeSet;

/// `normal(x) op offset`, with a homogeneous normal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: LinearTerm,
    pub offset: Rat,
    pub op: CmpOp,
}

/// An intersection of homogeneous halfspaces about an apex; the empty
/// condition list is all of ℝⁿ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub apex: Vec<Rat>,
    pub conditions: Vec<Halfspace>,
}

/// A finite union of cones with apex the origin, recorded both as a
/// formula (over the relation's variables read as offsets `t` from the
/// point) and as explicit cones.
#[derive(Clone, Debug)]
pub struct LocalNeighborhood {
    pub formula: Formula,
    pub cones: Vec<Cone>,
}

/// A rational basis of the strata subspace at a point; empty basis means
/// the point is singular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataSubspace {
    pub basis: Vec<Vec<Rat>>,
}

impl StrataSubspace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

fn check_cmp_only(f: &Formula) -> Result<(), QeError> {
    if !f.is_quantifier_free() {
        return Err(QeError::NotQuantifierFree);
    }
    let mut bad = false;
    f.visit_atoms(&mut |a| match a {
        Atom::Cmp(t, _) => bad |= t.has_floor(),
        _ => bad = true,
    });
    if bad {
        Err(QeError::UnsupportedAtom(
            "relation must be quantifier-free over comparison atoms".into(),
        ))
    } else {
        Ok(())
    }
}

fn point_assignment(vars: &[String], xi: &[Rat]) -> crate::eval::Assignment {
    vars.iter()
        .cloned()
        .zip(xi.iter().cloned())
        .collect()
}

/// Value of the variable part of `t` at the point.
fn normal_value(t: &LinearTerm, vars: &[String], xi: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (v, c) in t.iter() {
        if let TermVar::Var(n) = v {
            if let Some(i) = vars.iter().position(|w| w == n) {
                acc = acc + xi[i].clone() * c.clone();
            }
        }
    }
    acc
}

/// The homogeneous variable part of an atom term (constant dropped).
fn variable_part(t: &LinearTerm) -> LinearTerm {
    let mut u = t.clone();
    u.set_const(Rat::zero());
    u
}

/// The defining formula of the local neighborhood of the relation at a
/// rational point: each atom `u(x) ◁ b` becomes `u(t) ◁ 0` when the
/// hyperplane passes through the point, `true` when the point strictly
/// satisfies it, `false` otherwise.
pub fn local_neighborhood_at(
    f: &Formula,
    vars: &[String],
    xi: &[Rat],
) -> Result<LocalNeighborhood, QeError> {
    check_cmp_only(f)?;
    if vars.len() != xi.len() {
        return Err(QeError::Other("point arity mismatch".into()));
    }
    let theta = replace_atoms_at(f, vars, xi);
    let cones = cones_of(&theta, xi.len())?;
    Ok(LocalNeighborhood {
        formula: theta,
        cones,
    })
}

fn replace_atoms_at(f: &Formula, vars: &[String], xi: &[Rat]) -> Formula {
    let g = map_atoms(f, &mut |a| {
        let Atom::Cmp(t, op) = a else { unreachable!() };
        let u = variable_part(t);
        // u(ξ) + c vs 0
        let val = normal_value(&u, vars, xi) + t.const_part().clone();
        if val.is_zero() {
            Formula::cmp(u, *op)
        } else if op.holds(&val) {
            Formula::True
        } else {
            Formula::False
        }
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

/// Explicit cones of a homogeneous neighborhood formula (its DNF
/// disjuncts), apex at the origin.
fn cones_of(theta: &Formula, n: usize) -> Result<Vec<Cone>, QeError> {
    let apex = vec![Rat::zero(); n];
    match theta {
        Formula::True => {
            return Ok(vec![Cone {
                apex,
                conditions: Vec::new(),
            }])
        }
        Formula::False => return Ok(Vec::new()),
        _ => {}
    }
    let theta = crate::simplify::to_nnf(theta);
    let mut cones = Vec::new();
    for lits in crate::simplify::dnf_iter(&theta).map_err(QeError::Other)? {
        let mut conditions = Vec::new();
        for l in lits {
            match l {
                Formula::Atom(Atom::Cmp(t, op)) => conditions.push(Halfspace {
                    normal: variable_part(&t),
                    offset: -(t.const_part().clone()),
                    op,
                }),
                other => {
                    return Err(QeError::Other(format!(
                        "unexpected literal in neighborhood: {}",
                        other
                    )))
                }
            }
        }
        cones.push(Cone {
            apex: apex.clone(),
            conditions,
        });
    }
    Ok(cones)
}

/// Semantic equality of two local neighborhoods over the offset variables.
pub fn neighborhoods_equal(
    a: &LocalNeighborhood,
    b: &LocalNeighborhood,
    vars: &[String],
) -> Result<bool, QeError> {
    let body = Formula::iff(a.formula.clone(), b.formula.clone());
    let mut g = body;
    for v in vars.iter().rev() {
        g = Formula::forall(v, Sort::Real, g);
    }
    decide_ss(&g)
}

/// Distinct hyperplanes (canonical normal, offset) met by the atoms of a
/// formula. Canonical: integer coprime coefficients, positive leading one.
fn hyperplanes_of(f: &Formula, only_active_at: Option<(&[String], &[Rat])>) -> Vec<(LinearTerm, Rat)> {
    let mut out: Vec<(LinearTerm, Rat)> = Vec::new();
    f.visit_atoms(&mut |a| {
        let Atom::Cmp(t, _) = a else { return };
        let u = variable_part(t);
        if u.is_constant() {
            return;
        }
        let b = -(t.const_part().clone());
        // canonicalize (u, b) up to positive scaling and sign
        let l = u.coeff_denom_lcm();
        let mut s = Rat::from_bigint(l);
        let mut cu = u.scale(&s);
        let g = cu.coeff_gcd();
        if g > num::BigInt::from(1) {
            let inv = Rat::from_big(num::BigInt::from(1), g);
            cu = cu.scale(&inv);
            s = s * inv;
        }
        let mut cb = b * s;
        if cu.leading_coeff().map_or(false, |c| c.is_negative()) {
            cu = -cu;
            cb = -cb;
        }
        if let Some((vars, xi)) = only_active_at {
            if normal_value(&cu, vars, xi) != cb {
                return;
            }
        }
        if !out.contains(&(cu.clone(), cb.clone())) {
            out.push((cu, cb));
        }
    });
    out
}

/// Same-side condition for two points `y`, `z` w.r.t. the homogeneous
/// hyperplane `u = 0`: both negative, both zero, or both positive.
fn same_sign(u: &LinearTerm, yvars: &[String], zvars: &[String], vars: &[String]) -> Formula {
    let at = |names: &[String]| -> LinearTerm {
        let mut t = LinearTerm::zero();
        for (v, c) in u.iter() {
            if let TermVar::Var(n) = v {
                let i = vars.iter().position(|w| w == n).unwrap();
                let e = t.coeff(&TermVar::Var(names[i].clone())) + c.clone();
                t.set_coeff(TermVar::Var(names[i].clone()), e);
            }
        }
        t
    };
    let uy = at(yvars);
    let uz = at(zvars);
    Formula::or(vec![
        Formula::and(vec![
            Formula::cmp(uy.clone(), CmpOp::Lt),
            Formula::cmp(uz.clone(), CmpOp::Lt),
        ]),
        Formula::and(vec![
            Formula::cmp(uy.clone(), CmpOp::Eq),
            Formula::cmp(uz.clone(), CmpOp::Eq),
        ]),
        Formula::and(vec![
            Formula::cmp(-uy, CmpOp::Lt),
            Formula::cmp(-uz, CmpOp::Lt),
        ]),
    ])
}

/// A rational basis of the strata subspace at a rational point: the
/// intersection of an inclusion-minimal set of active hyperplanes that
/// still defines the local neighborhood.
pub fn strata_at(f: &Formula, vars: &[String], xi: &[Rat]) -> Result<StrataSubspace, QeError> {
    let nb = local_neighborhood_at(f, vars, xi)?;
    let n = vars.len();
    let theta = &nb.formula;
    // hyperplanes occurring in θ (already homogeneous, offset 0)
    let mut hs: Vec<LinearTerm> = hyperplanes_of(theta, None)
        .into_iter()
        .map(|(u, _)| u)
        .collect();
    // greedy inclusion-minimization: drop a hyperplane when θ is a union
    // of sign cells of the remaining ones
    let mut avoid: BTreeSet<String> = theta.all_var_names();
    avoid.extend(vars.iter().cloned());
    let mut fresh = |base: String| {
        let name = crate::formula::fresh_name(&base, &avoid);
        avoid.insert(name.clone());
        name
    };
    let yvars: Vec<String> = (0..n).map(|i| fresh(format!("sy{}", i))).collect();
    let zvars: Vec<String> = (0..n).map(|i| fresh(format!("sz{}", i))).collect();
    let theta_at = |names: &[String]| -> Formula {
        let mut g = theta.clone();
        for (i, v) in vars.iter().enumerate() {
            g = g.subst_var(v, &LinearTerm::var(&names[i]));
        }
        g
    };
    let cell_definable = |subset: &[LinearTerm]| -> Result<bool, QeError> {
        let same: Vec<Formula> = subset
            .iter()
            .map(|u| same_sign(u, &yvars, &zvars, vars))
            .collect();
        let body = Formula::implies(
            Formula::and(same),
            Formula::iff(theta_at(&yvars), theta_at(&zvars)),
        );
        let mut g = body;
        for v in yvars.iter().chain(zvars.iter()).rev() {
            g = Formula::forall(v, Sort::Real, g);
        }
        decide_ss(&g)
    };
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..hs.len() {
            let mut rest = hs.clone();
            rest.remove(i);
            if cell_definable(&rest)? {
                hs = rest;
                changed = true;
                break;
            }
        }
    }
    // Str(ξ) = intersection of the minimal hyperplanes = kernel of normals
    let rows: Vec<Vec<Rat>> = hs
        .iter()
        .map(|u| {
            vars.iter()
                .map(|v| u.coeff(&TermVar::Var(v.clone())))
                .collect()
        })
        .collect();
    let basis = linalg::kernel_basis(&rows, n);
    Ok(StrataSubspace { basis })
}

pub fn is_singular(f: &Formula, vars: &[String], xi: &[Rat]) -> Result<bool, QeError> {
    Ok(strata_at(f, vars, xi)?.dimension() == 0)
}

/// All singular points of the relation: candidates are intersections of
/// `n` atom hyperplanes with independent normals, filtered by
/// `is_singular`. Points are returned sorted lexicographically.
pub fn singular_points(f: &Formula, vars: &[String]) -> Result<Vec<Vec<Rat>>, QeError> {
    check_cmp_only(f)?;
    let n = vars.len();
    let hs = hyperplanes_of(f, None);
    let mut candidates: Vec<Vec<Rat>> = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    if hs.len() >= n && n > 0 {
        loop {
            let rows: Vec<Vec<Rat>> = idx
                .iter()
                .map(|&i| {
                    vars.iter()
                        .map(|v| hs[i].0.coeff(&TermVar::Var(v.clone())))
                        .collect()
                })
                .collect();
            let rhs: Vec<Rat> = idx.iter().map(|&i| hs[i].1.clone()).collect();
            if let Some(p) = linalg::solve_unique(&rows, &rhs) {
                if !candidates.contains(&p) {
                    candidates.push(p);
                }
            }
            // next n-combination of hyperplane indices
            let mut i = n;
            loop {
                if i == 0 {
                    idx.clear();
                    break;
                }
                i -= 1;
                if idx[i] + 1 <= hs.len() - (n - i) {
                    idx[i] += 1;
                    for j in i + 1..n {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
            if idx.is_empty() {
                break;
            }
        }
    }
    let mut out = Vec::new();
    for p in candidates {
        if is_singular(f, vars, &p)? {
            out.push(p);
        }
    }
    out.sort();
    Ok(out)
}

/// The finite census of local neighborhoods realized by some point:
/// enumerate the sign cells of the atom hyperplanes, keep satisfiable
/// ones, map each to its neighborhood formula, and deduplicate up to
/// semantic equivalence.
pub fn face_census(f: &Formula, vars: &[String]) -> Result<Vec<LocalNeighborhood>, QeError> {
    check_cmp_only(f)?;
    let n = vars.len();
    let hs = hyperplanes_of(f, None);
    let h = hs.len();
    let mut census: Vec<LocalNeighborhood> = Vec::new();
    let mut signs = vec![0i8; h]; // 0: =, 1: <, 2: >
    loop {
        // cell formula and atom replacement for this sign vector
        let mut cell = Vec::new();
        for (i, (u, b)) in hs.iter().enumerate() {
            let t = u.clone() - LinearTerm::constant(b.clone());
            match signs[i] {
                0 => cell.push(Formula::cmp(t, CmpOp::Eq)),
                1 => cell.push(Formula::cmp(t, CmpOp::Lt)),
                _ => cell.push(Formula::cmp(-t, CmpOp::Lt)),
            }
        }
        let cell = simplify(&Formula::and(cell));
        let feasible = cell != Formula::False
            && match rational_witness(&cell) {
                Ok(_) => true,
                Err(QeError::Unsat) => false,
                Err(e) => return Err(e),
            };
        if feasible {
            let theta = map_atoms(f, &mut |a| {
                let Atom::Cmp(t, op) = a else { unreachable!() };
                let u = variable_part(t);
                if u.is_constant() {
                    // ground atom
                    return if op.holds(t.const_part()) {
                        Formula::True
                    } else {
                        Formula::False
                    };
                }
                // find the canonical hyperplane of this atom
                let (cu, cb, flipped) = canonical_with_flip(&u, &-(t.const_part().clone()));
                let i = hs.iter().position(|(a, b)| *a == cu && *b == cb).unwrap();
                let sign = match (signs[i], flipped) {
                    (0, _) => 0i8,
                    (s, false) => s,
                    (1, true) => 2,
                    (2, true) => 1,
                    _ => unreachable!(),
                };
                match sign {
                    0 => Formula::cmp(u, *op), // on the hyperplane
                    1 => {
                        // u(ξ) < b: the atom holds strictly
                        Formula::True
                    }
                    _ => Formula::False,
                }
            });
            let theta = simplify(&theta);
            let nb = LocalNeighborhood {
                cones: cones_of(&theta, n)?,
                formula: theta,
            };
            let mut dup = false;
            for existing in &census {
                if neighborhoods_equal(existing, &nb, vars)? {
                    dup = true;
                    break;
                }
            }
            if !dup {
                census.push(nb);
            }
        }
        // next sign vector
        let mut i = 0;
        loop {
            if i == h {
                // order deterministically by the rendered formula
                census.sort_by_key(|nb| crate::print::render(&nb.formula));
                return Ok(census);
            }
            signs[i] += 1;
            if signs[i] <= 2 {
                break;
            }
            signs[i] = 0;
            i += 1;
        }
        if h == 0 {
            census.sort_by_key(|nb| crate::print::render(&nb.formula));
            return Ok(census);
        }
    }
}

/// Canonicalizes `(u, b)` like `hyperplanes_of` and reports whether the
/// sign was flipped.
fn canonical_with_flip(u: &LinearTerm, b: &Rat) -> (LinearTerm, Rat, bool) {
    let l = u.coeff_denom_lcm();
    let mut s = Rat::from_bigint(l);
    let mut cu = u.scale(&s);
    let g = cu.coeff_gcd();
    if g > num::BigInt::from(1) {
        let inv = Rat::from_big(num::BigInt::from(1), g);
        cu = cu.scale(&inv);
        s = s * inv;
    }
    let mut cb = b.clone() * s;
    let flipped = cu.leading_coeff().map_or(false, |c| c.is_negative());
    if flipped {
        cu = -cu;
        cb = -cb;
    }
    (cu, cb, flipped)
}

/// The section of the relation with variable `axis` frozen to `c`,
/// over the remaining variables.
pub fn rational_section(
    f: &Formula,
    vars: &[String],
    axis: usize,
    c: &Rat,
) -> Result<Formula, QeError> {
    if axis >= vars.len() {
        return Err(QeError::Other(format!(
            "axis {} out of range for arity {}",
            axis,
            vars.len()
        )));
    }
    let g = lower_floors(f);
    Ok(simplify(
        &g.subst_var(&vars[axis], &LinearTerm::constant(c.clone())),
    ))
}

/// The one-variable trace of the relation along the rational line
/// `base + α·direction`, as a formula in the parameter variable.
pub fn intersect_rational_line(
    f: &Formula,
    vars: &[String],
    base: &[Rat],
    direction: &[Rat],
    param: &str,
) -> Result<Formula, QeError> {
    if direction.iter().all(|d| d.is_zero()) {
        return Err(QeError::Other("zero direction".into()));
    }
    if base.len() != vars.len() || direction.len() != vars.len() {
        return Err(QeError::Other("line arity mismatch".into()));
    }
    let mut g = lower_floors(f);
    // substitute via fresh placeholders to avoid clashes with param
    let mut avoid: BTreeSet<String> = g.all_var_names();
    avoid.insert(param.to_string());
    for (i, v) in vars.iter().enumerate() {
        let mut t = LinearTerm::constant(base[i].clone());
        t.set_coeff(TermVar::Var(param.to_string()), direction[i].clone());
        let ph = crate::formula::fresh_name(&format!("{}_line", v), &avoid);
        avoid.insert(ph.clone());
        g = g.subst_var(v, &LinearTerm::var(&ph));
        g = g.subst_var(&ph, &t);
    }
    Ok(simplify(&g))
}

/// The closed sentence asserting that `v` is a stratum of the relation at
/// `ξ`: inside some ball around ξ, membership is invariant along `v`.
pub fn saturation_sentence(
    f: &Formula,
    vars: &[String],
    xi: &[Rat],
    v: &[Rat],
) -> Result<Formula, QeError> {
    check_cmp_only(f)?;
    let n = vars.len();
    let r = "sat_r";
    let lam = "sat_l";
    let yvars: Vec<String> = (0..n).map(|i| format!("sat_y{}", i)).collect();
    let y_terms: Vec<LinearTerm> = yvars.iter().map(|y| LinearTerm::var(y)).collect();
    let yl_terms: Vec<LinearTerm> = (0..n)
        .map(|i| {
            let mut t = LinearTerm::var(&yvars[i]);
            t.set_coeff(TermVar::Var(lam.to_string()), v[i].clone());
            t
        })
        .collect();
    let in_ball = |terms: &[LinearTerm]| -> Formula {
        let mut parts = Vec::new();
        for i in 0..n {
            let d = terms[i].clone() - LinearTerm::constant(xi[i].clone());
            // |d| < r
            let rv = LinearTerm::var(r);
            parts.push(Formula::cmp(d.clone() - rv.clone(), CmpOp::Lt));
            parts.push(Formula::cmp(-d - rv, CmpOp::Lt));
        }
        Formula::and(parts)
    };
    let apply = |terms: &[LinearTerm]| -> Formula {
        let mut g = f.clone();
        let mut avoid: BTreeSet<String> = g.all_var_names();
        for t in terms {
            for tv in t.vars() {
                avoid.insert(tv.name().to_string());
            }
        }
        let phs: Vec<String> = vars
            .iter()
            .map(|v| {
                let ph = crate::formula::fresh_name(&format!("{}_ph", v), &avoid);
                avoid.insert(ph.clone());
                ph
            })
            .collect();
        for (v, ph) in vars.iter().zip(&phs) {
            g = g.subst_var(v, &LinearTerm::var(ph));
        }
        for (ph, t) in phs.iter().zip(terms) {
            g = g.subst_var(ph, t);
        }
        g
    };
    let body = Formula::implies(
        Formula::and(vec![in_ball(&y_terms), in_ball(&yl_terms), apply(&y_terms)]),
        apply(&yl_terms),
    );
    let mut g = Formula::forall(lam, Sort::Real, body);
    for y in yvars.iter().rev() {
        g = Formula::forall(y, Sort::Real, g);
    }
    let g = Formula::and(vec![
        Formula::cmp(-LinearTerm::var(r), CmpOp::Lt), // r > 0
        g,
    ]);
    Ok(Formula::exists(r, Sort::Real, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn square() -> (Formula, Vec<String>) {
        (
            parse("0 <= x and x <= 1 and 0 <= y and y <= 1").unwrap(),
            vec!["x".to_string(), "y".to_string()],
        )
    }

    fn pt(a: i64, b: i64, d: i64) -> Vec<Rat> {
        vec![Rat::new(a, d), Rat::new(b, d)]
    }

    #[test]
    fn neighborhood_of_square_vertex() {
        let (sq, vars) = square();
        let nb = local_neighborhood_at(&sq, &vars, &pt(0, 0, 1)).unwrap();
        // quadrant: t1 ≥ 0 ∧ t2 ≥ 0
        let quadrant = parse("0 <= x and 0 <= y").unwrap();
        let want = LocalNeighborhood {
            formula: quadrant,
            cones: Vec::new(),
        };
        assert!(neighborhoods_equal(&nb, &want, &vars).unwrap());
        assert_eq!(nb.cones.len(), 1);
        assert_eq!(nb.cones[0].conditions.len(), 2);
    }

    #[test]
    fn neighborhood_of_interior_and_edge() {
        let (sq, vars) = square();
        let interior = local_neighborhood_at(&sq, &vars, &pt(1, 1, 2)).unwrap();
        assert_eq!(interior.formula, Formula::True);
        let edge = local_neighborhood_at(&sq, &vars, &pt(1, 0, 2)).unwrap();
        let want = LocalNeighborhood {
            formula: parse("0 <= y").unwrap(),
            cones: Vec::new(),
        };
        assert!(neighborhoods_equal(&edge, &want, &vars).unwrap());
    }

    #[test]
    fn strata_dimensions_on_square() {
        let (sq, vars) = square();
        assert_eq!(strata_at(&sq, &vars, &pt(1, 1, 2)).unwrap().dimension(), 2);
        assert_eq!(strata_at(&sq, &vars, &pt(1, 0, 2)).unwrap().dimension(), 1);
        assert_eq!(strata_at(&sq, &vars, &pt(0, 0, 1)).unwrap().dimension(), 0);
        // the edge stratum is horizontal
        let s = strata_at(&sq, &vars, &pt(1, 0, 2)).unwrap();
        assert_eq!(s.basis[0][1], Rat::zero());
    }

    #[test]
    fn singular_points_of_square() {
        let (sq, vars) = square();
        let pts = singular_points(&sq, &vars).unwrap();
        assert_eq!(pts.len(), 4);
        assert!(pts.contains(&pt(0, 0, 1)));
        assert!(pts.contains(&pt(1, 1, 1)));
        assert!(pts.contains(&pt(0, 1, 1)));
        assert!(pts.contains(&pt(1, 0, 1)));
    }

    #[test]
    fn halfplane_has_no_singular_points() {
        let f = parse("y < 0").unwrap();
        let vars = vec!["x".to_string(), "y".to_string()];
        assert!(singular_points(&f, &vars).unwrap().is_empty());
    }

    #[test]
    fn axes_union_origin_is_singular() {
        let f = parse("x = 0 or y = 0").unwrap();
        let vars = vec!["x".to_string(), "y".to_string()];
        assert!(is_singular(&f, &vars, &pt(0, 0, 1)).unwrap());
        assert!(!is_singular(&f, &vars, &pt(1, 0, 1)).unwrap());
    }

    #[test]
    fn census_of_square_is_ten() {
        let (sq, vars) = square();
        let census = face_census(&sq, &vars).unwrap();
        assert_eq!(census.len(), 10);
    }

    #[test]
    fn census_of_halfplane_is_three() {
        let f = parse("y <= 0").unwrap();
        let vars = vec!["x".to_string(), "y".to_string()];
        let census = face_census(&f, &vars).unwrap();
        assert_eq!(census.len(), 3);
    }

    #[test]
    fn census_of_empty_is_one() {
        let f = Formula::False;
        let vars = vec!["x".to_string(), "y".to_string()];
        let census = face_census(&f, &vars).unwrap();
        assert_eq!(census.len(), 1);
    }

    #[test]
    fn sections_and_lines() {
        let (sq, vars) = square();
        let sec = rational_section(&sq, &vars, 0, &Rat::new(1, 4)).unwrap();
        // y-section of the square at x=1/4: [0,1]
        let want = parse("0 <= y and y <= 1").unwrap();
        let grid: Vec<Rat> = (-4..=8).map(|k| Rat::new(k, 4)).collect();
        for v in &grid {
            let a = crate::eval::assignment(&[("y", v.clone())]);
            assert_eq!(
                crate::eval::evaluate(&sec, &a).unwrap(),
                crate::eval::evaluate(&want, &a).unwrap()
            );
        }
        let line = intersect_rational_line(
            &sq,
            &vars,
            &[Rat::from_int(-1), Rat::new(1, 2)],
            &[Rat::one(), Rat::zero()],
            "a",
        )
        .unwrap();
        // alpha ∈ [1, 2]
        let want = parse("1 <= a and a <= 2").unwrap();
        for v in &grid {
            let a = crate::eval::assignment(&[("a", v.clone())]);
            assert_eq!(
                crate::eval::evaluate(&line, &a).unwrap(),
                crate::eval::evaluate(&want, &a).unwrap(),
                "at {}",
                v
            );
        }
    }

    #[test]
    fn saturation_certificates() {
        let (sq, vars) = square();
        // horizontal vector is a stratum at an edge point
        let edge = pt(1, 0, 2);
        let horizontal = vec![Rat::one(), Rat::zero()];
        let vertical = vec![Rat::zero(), Rat::one()];
        let s1 = saturation_sentence(&sq, &vars, &edge, &horizontal).unwrap();
        assert!(decide_ss(&s1).unwrap());
        let s2 = saturation_sentence(&sq, &vars, &edge, &vertical).unwrap();
        assert!(!decide_ss(&s2).unwrap());
        // at a vertex no nonzero vector passes
        let s3 = saturation_sentence(&sq, &vars, &pt(0, 0, 1), &horizontal).unwrap();
        assert!(!decide_ss(&s3).unwrap());
    }
}
