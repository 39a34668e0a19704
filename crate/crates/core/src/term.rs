//! Linear terms: rational-coefficient combinations of variables (and,
//! internally, of integer parts `floor(x)`) plus a rational constant.

use crate::rat::Rat;
use num::bigint::BigInt;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A term unknown: either a plain variable or its integer part.
///
/// `Floor` never appears in user input; it arises when mixed real/integer
/// quantifier elimination projects the integer structure of a relation back
/// onto the original variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TermVar {
    Var(String),
    Floor(String),
}

impl TermVar {
    pub fn name(&self) -> &str {
        match self {
            TermVar::Var(n) | TermVar::Floor(n) => n,
        }
    }

    pub fn is_floor(&self) -> bool {
        matches!(self, TermVar::Floor(_))
    }
}

/// `Σ cᵢ·uᵢ + constant` with no zero coefficient stored. Variables are kept
/// in a `BTreeMap`, which fixes the lexicographic order used for printing
/// and hashing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LinearTerm {
    coeffs: BTreeMap<TermVar, Rat>,
    constant: Rat,
}

impl LinearTerm {
    pub fn zero() -> Self {
        LinearTerm::default()
    }

    pub fn constant(c: Rat) -> Self {
        LinearTerm {
            coeffs: BTreeMap::new(),
            constant: c,
        }
    }

    pub fn var(name: &str) -> Self {
        Self::with_coeff(TermVar::Var(name.to_string()), Rat::one())
    }

    pub fn floor_var(name: &str) -> Self {
        Self::with_coeff(TermVar::Floor(name.to_string()), Rat::one())
    }

    pub fn with_coeff(v: TermVar, c: Rat) -> Self {
        let mut t = LinearTerm::zero();
        t.set_coeff(v, c);
        t
    }

    pub fn set_coeff(&mut self, v: TermVar, c: Rat) {
        if c.is_zero() {
            self.coeffs.remove(&v);
        } else {
            self.coeffs.insert(v, c);
        }
    }

    pub fn coeff(&self, v: &TermVar) -> Rat {
        self.coeffs.get(v).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeff_of_var(&self, name: &str) -> Rat {
        self.coeff(&TermVar::Var(name.to_string()))
    }

    pub fn const_part(&self) -> &Rat {
        &self.constant
    }

    pub fn set_const(&mut self, c: Rat) {
        self.constant = c;
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TermVar, &Rat)> {
        self.coeffs.iter()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The constant value if the term has no unknowns.
    pub fn as_constant(&self) -> Option<&Rat> {
        if self.is_constant() {
            Some(&self.constant)
        } else {
            None
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = &TermVar> {
        self.coeffs.keys()
    }

    pub fn mentions(&self, v: &TermVar) -> bool {
        self.coeffs.contains_key(v)
    }

    /// True if any unknown is a `Floor`.
    pub fn has_floor(&self) -> bool {
        self.coeffs.keys().any(|v| v.is_floor())
    }

    pub fn scale(&self, c: &Rat) -> LinearTerm {
        if c.is_zero() {
            return LinearTerm::zero();
        }
        LinearTerm {
            coeffs: self
                .coeffs
                .iter()
                .map(|(v, a)| (v.clone(), a.clone() * c))
                .collect(),
            constant: self.constant.clone() * c,
        }
    }

    /// Replaces unknown `v` by the term `by`. For a `Floor` unknown this is
    /// only valid when the replacement is itself a variable, a floor, or a
    /// constant; general replacements under a floor are handled upstream by
    /// `formula::lower_floors`.
    pub fn subst(&self, v: &TermVar, by: &LinearTerm) -> LinearTerm {
        match self.coeffs.get(v) {
            None => self.clone(),
            Some(c) => {
                let mut rest = self.clone();
                rest.coeffs.remove(v);
                rest + by.scale(c)
            }
        }
    }

    /// Replaces every occurrence of plain variable `name` by `by`, and of
    /// `floor(name)` by `floor_by`.
    pub fn subst_var_and_floor(
        &self,
        name: &str,
        by: &LinearTerm,
        floor_by: &LinearTerm,
    ) -> LinearTerm {
        let mut out = LinearTerm::constant(self.constant.clone());
        for (v, c) in &self.coeffs {
            match v {
                TermVar::Var(n) if n == name => out = out + by.scale(c),
                TermVar::Floor(n) if n == name => out = out + floor_by.scale(c),
                _ => {
                    let e = out.coeff(v) + c.clone();
                    out.set_coeff(v.clone(), e);
                }
            }
        }
        out
    }

    /// Evaluates with all unknowns assigned; `Floor(x)` takes `⌊value(x)⌋`.
    pub fn eval(&self, assign: &BTreeMap<String, Rat>) -> Option<Rat> {
        let mut acc = self.constant.clone();
        for (v, c) in &self.coeffs {
            let base = assign.get(v.name())?;
            let val = match v {
                TermVar::Var(_) => base.clone(),
                TermVar::Floor(_) => base.floor(),
            };
            acc = acc + val * c.clone();
        }
        Some(acc)
    }

    /// lcm of the denominators of all coefficients (not the constant).
    pub fn coeff_denom_lcm(&self) -> BigInt {
        let mut l = BigInt::from(1);
        for c in self.coeffs.values() {
            l = crate::rat::lcm_big(&l, c.denom());
        }
        l
    }

    /// gcd of the absolute numerators of all coefficients, 0 if none.
    pub fn coeff_gcd(&self) -> BigInt {
        let mut g = BigInt::from(0);
        for c in self.coeffs.values() {
            g = crate::rat::gcd_big(&g, &c.numer().magnitude().clone().into());
        }
        g
    }

    /// All coefficients are integers (the constant may be rational).
    pub fn coeffs_integer(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// Term and constant all integral.
    pub fn all_integer(&self) -> bool {
        self.coeffs_integer() && self.constant.is_integer()
    }

    /// The coefficient of the lexicographically least unknown.
    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.values().next()
    }
}

impl Add for LinearTerm {
    type Output = LinearTerm;
    fn add(self, rhs: LinearTerm) -> LinearTerm {
        let mut out = self;
        for (v, c) in rhs.coeffs {
            let e = out.coeff(&v) + c;
            out.set_coeff(v, e);
        }
        out.constant = out.constant + rhs.constant;
        out
    }
}

impl Sub for LinearTerm {
    type Output = LinearTerm;
    fn sub(self, rhs: LinearTerm) -> LinearTerm {
        self + (-rhs)
    }
}

impl Neg for LinearTerm {
    type Output = LinearTerm;
    fn neg(self) -> LinearTerm {
        self.scale(&(-Rat::one()))
    }
}

impl Mul<Rat> for LinearTerm {
    type Output = LinearTerm;
    fn mul(self, rhs: Rat) -> LinearTerm {
        self.scale(&rhs)
    }
}

impl fmt::Display for LinearTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, c) in &self.coeffs {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag != Rat::one() {
                write!(f, "{}*", mag)?;
            }
            match v {
                TermVar::Var(n) => write!(f, "{}", n)?,
                TermVar::Floor(n) => write!(f, "floor({})", n)?,
            }
        }
        if first {
            write!(f, "{}", self.constant)?;
        } else if !self.constant.is_zero() {
            if self.constant.is_negative() {
                write!(f, " - {}", self.constant.abs())?;
            } else {
                write!(f, " + {}", self.constant)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(pairs: &[(&str, i64)], c: i64) -> LinearTerm {
        let mut out = LinearTerm::constant(Rat::from_int(c));
        for (v, k) in pairs {
            out.set_coeff(TermVar::Var(v.to_string()), Rat::from_int(*k));
        }
        out
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let a = t(&[("x", 1), ("y", 2)], 0);
        let b = t(&[("x", -1)], 1);
        let s = a + b;
        assert!(!s.mentions(&TermVar::Var("x".into())));
        assert_eq!(s.coeff_of_var("y"), Rat::from_int(2));
        assert_eq!(s.const_part(), &Rat::one());
    }

    #[test]
    fn substitution() {
        // x + 2y with y := x - 1  =>  3x - 2
        let s = t(&[("x", 1), ("y", 2)], 0);
        let by = t(&[("x", 1)], -1);
        let r = s.subst(&TermVar::Var("y".into()), &by);
        assert_eq!(r, t(&[("x", 3)], -2));
    }

    #[test]
    fn display_forms() {
        assert_eq!(t(&[("x", 2), ("y", -1)], 3).to_string(), "2*x - y + 3");
        assert_eq!(t(&[], -2).to_string(), "-2");
        assert_eq!(t(&[("x", -1)], 0).to_string(), "-x");
        let mut h = LinearTerm::floor_var("x");
        h.set_coeff(TermVar::Var("x".into()), Rat::one());
        assert_eq!(h.to_string(), "x + floor(x)");
    }

    #[test]
    fn eval_with_floor() {
        let mut h = LinearTerm::var("x") - LinearTerm::floor_var("x");
        h.set_const(Rat::zero());
        let mut a = BTreeMap::new();
        a.insert("x".to_string(), Rat::new(7, 2));
        assert_eq!(h.eval(&a).unwrap(), Rat::new(1, 2));
    }
}
