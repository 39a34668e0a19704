//! Exact rational arithmetic. Every number in this crate is a [`Rat`]; there
//! is no floating point anywhere.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// An arbitrary-precision rational, kept in lowest terms with a positive
/// denominator (this is the normal form `BigRational` maintains).
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }

    /// `num / den`; panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Rat(BigRational::new(num, den))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// True iff the value is an integer (denominator 1).
    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn floor(&self) -> Rat {
        Rat(self.0.floor())
    }

    pub fn ceil(&self) -> Rat {
        Rat(self.0.ceil())
    }

    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil_int(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// The integer value, if the rational is an integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.is_integer() {
            Some(self.0.to_integer())
        } else {
            None
        }
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "division by zero");
        Rat(self.0.recip())
    }

    /// Fractional part in `[0, 1)`.
    pub fn fract(&self) -> Rat {
        self.clone() - self.floor()
    }

    /// Mathematical remainder in `[0, m)` for `m > 0`.
    pub fn rem_euclid(&self, m: &Rat) -> Rat {
        assert!(m.is_positive());
        let q = (self.clone() / m.clone()).floor();
        self.clone() - q * m.clone()
    }

    /// Exact quotient when `other` divides `self` to an integer.
    pub fn exact_div_int(&self, other: &Rat) -> Option<BigInt> {
        if other.is_zero() {
            return None;
        }
        (self.clone() / other.clone()).to_integer()
    }

    /// Decimal rendering for presentation output (SVG coordinates); exact
    /// when the denominator is 2^a·5^b, otherwise truncated at 12 digits.
    pub fn to_decimal_string(&self) -> String {
        let neg = self.is_negative();
        let a = self.abs();
        let int = a.floor_int();
        let mut frac = a.fract();
        let mut digits = String::new();
        for _ in 0..12 {
            if frac.is_zero() {
                break;
            }
            frac = frac * Rat::from_int(10);
            let d = frac.floor_int();
            digits.push_str(&d.to_string());
            frac = frac.fract();
        }
        let mut s = String::new();
        if neg && (!int.is_zero() || !digits.is_empty()) {
            s.push('-');
        }
        s.push_str(&int.to_string());
        if !digits.is_empty() {
            s.push('.');
            s.push_str(&digits);
        }
        s
    }

    pub fn to_f64_lossy(&self) -> f64 {
        self.0.to_f64().unwrap_or(0.0)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `"n"` or `"n/d"` with an optional leading minus sign.
impl FromStr for Rat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let num = BigInt::from_str(n.trim()).map_err(|e| e.to_string())?;
            let den = BigInt::from_str(d.trim()).map_err(|e| e.to_string())?;
            if den.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(Rat(BigRational::new(num, den)))
        } else {
            let num = BigInt::from_str(s).map_err(|e| e.to_string())?;
            Ok(Rat(BigRational::from_integer(num)))
        }
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        Rat(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Rat> for Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        Rat(self.0 + &rhs.0)
    }
}

impl AddAssign for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        self.0 += rhs.0;
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        Rat(self.0 - rhs.0)
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        Rat(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a Rat> for Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        Rat(self.0 * &rhs.0)
    }
}

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(self.0 / rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

/// lcm of two positive big integers.
pub fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    num::integer::lcm(a.clone(), b.clone())
}

pub fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    num::integer::gcd(a.clone(), b.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form() {
        let r = Rat::new(2, -4);
        assert_eq!(r, Rat::new(-1, 2));
        assert!(r.denom() > &BigInt::from(0));
        assert_eq!(r.to_string(), "-1/2");
    }

    #[test]
    fn floor_and_fract() {
        assert_eq!(Rat::new(-3, 2).floor_int(), BigInt::from(-2));
        assert_eq!(Rat::new(-3, 2).fract(), Rat::new(1, 2));
        assert_eq!(Rat::new(7, 2).rem_euclid(&Rat::from_int(3)), Rat::new(1, 2));
        assert_eq!(Rat::new(-1, 2).rem_euclid(&Rat::from_int(2)), Rat::new(3, 2));
    }

    #[test]
    fn parse_and_display() {
        let r: Rat = "6/4".parse().unwrap();
        assert_eq!(r, Rat::new(3, 2));
        assert_eq!(Rat::from_int(5).to_string(), "5");
        assert!("1/0".parse::<Rat>().is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Rat::new(-3, 2).to_decimal_string(), "-1.5");
        assert_eq!(Rat::new(1, 4).to_decimal_string(), "0.25");
        assert_eq!(Rat::from_int(2).to_decimal_string(), "2");
    }
}
