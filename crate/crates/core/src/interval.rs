//! Finite unions of rational intervals with open/closed endpoints, and
//! exact extraction of the interval structure of one-variable formulas
//! over comparison atoms.

use crate::eval::evaluate;
use crate::formula::{Atom, Formula};
use crate::rat::Rat;
use crate::term::TermVar;
use std::fmt;

/// A nonempty interval `lo..hi`; `lo == hi` means a single point (both ends
/// closed then).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rat,
    pub lo_closed: bool,
    pub hi: Rat,
    pub hi_closed: bool,
}

impl Interval {
    pub fn point(v: Rat) -> Interval {
        Interval {
            lo: v.clone(),
            lo_closed: true,
            hi: v,
            hi_closed: true,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &Rat) -> bool {
        let above = *v > self.lo || (self.lo_closed && *v == self.lo);
        let below = *v < self.hi || (self.hi_closed && *v == self.hi);
        above && below
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{{{}}}", self.lo)
        } else {
            write!(
                f,
                "{}{}, {}{}",
                if self.lo_closed { '[' } else { '(' },
                self.lo,
                self.hi,
                if self.hi_closed { ']' } else { ')' }
            )
        }
    }
}

/// A normalized finite union: sorted, pairwise disjoint and non-adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntervalSet {
    pub pieces: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, v: &Rat) -> bool {
        self.pieces.iter().any(|p| p.contains(v))
    }

    /// Builds from arbitrary pieces, merging overlaps and adjacencies.
    pub fn from_pieces(mut pieces: Vec<Interval>) -> Self {
        pieces.retain(|p| p.lo < p.hi || (p.lo == p.hi && p.lo_closed && p.hi_closed));
        pieces.sort_by(|a, b| {
            a.lo.cmp(&b.lo)
                .then(b.lo_closed.cmp(&a.lo_closed))
                .then(a.hi.cmp(&b.hi))
        });
        let mut out: Vec<Interval> = Vec::new();
        for p in pieces {
            if let Some(last) = out.last_mut() {
                // overlap or touching with compatible closure
                let touches = p.lo < last.hi
                    || (p.lo == last.hi && (p.lo_closed || last.hi_closed));
                if touches {
                    if p.hi > last.hi || (p.hi == last.hi && p.hi_closed && !last.hi_closed) {
                        last.hi = p.hi;
                        last.hi_closed = p.hi_closed;
                    }
                    continue;
                }
            }
            out.push(p);
        }
        IntervalSet { pieces: out }
    }

    pub fn endpoints(&self) -> Vec<Rat> {
        let mut out = Vec::new();
        for p in &self.pieces {
            if !out.contains(&p.lo) {
                out.push(p.lo.clone());
            }
            if !out.contains(&p.hi) {
                out.push(p.hi.clone());
            }
        }
        out
    }

    /// Whether the set equals the full interval `[0, p)`.
    pub fn is_full_mod(&self, p: &Rat) -> bool {
        self.pieces.len() == 1 && {
            let i = &self.pieces[0];
            i.lo.is_zero() && i.lo_closed && i.hi == *p && !i.hi_closed
        }
    }

    /// Shift by `q` modulo `p`, for a set contained in `[0, p)`.
    pub fn shift_mod(&self, q: &Rat, p: &Rat) -> IntervalSet {
        let mut pieces = Vec::new();
        for i in &self.pieces {
            let lo = (i.lo.clone() + q.clone()).rem_euclid(p);
            let hi_shift = i.hi.clone() + q.clone();
            let hi = hi_shift.rem_euclid(p);
            if i.is_point() {
                pieces.push(Interval::point(lo));
                continue;
            }
            // does the shifted interval wrap past p?
            if lo < hi {
                pieces.push(Interval {
                    lo,
                    lo_closed: i.lo_closed,
                    hi,
                    hi_closed: i.hi_closed,
                });
            } else {
                // wraps: [lo, p) and [0, hi)
                pieces.push(Interval {
                    lo,
                    lo_closed: i.lo_closed,
                    hi: p.clone(),
                    hi_closed: false,
                });
                if !hi.is_zero() || i.hi_closed {
                    pieces.push(Interval {
                        lo: Rat::zero(),
                        lo_closed: true,
                        hi,
                        hi_closed: i.hi_closed,
                    });
                }
            }
        }
        IntervalSet::from_pieces(pieces)
    }

    /// Image of a set contained in `[0, p)` under `x ↦ (-x) mod p`.
    pub fn reflect_mod(&self, p: &Rat) -> IntervalSet {
        let mut pieces = Vec::new();
        for i in &self.pieces {
            if i.is_point() {
                let v = (-i.lo.clone()).rem_euclid(p);
                pieces.push(Interval::point(v));
                continue;
            }
            // (lo, hi) maps to (p-hi, p-lo); endpoint p-lo may be p ≡ 0
            let nlo = p.clone() - i.hi.clone();
            let nhi = p.clone() - i.lo.clone();
            if nhi == *p {
                // split the 0 endpoint off
                pieces.push(Interval {
                    lo: nlo,
                    lo_closed: i.hi_closed,
                    hi: p.clone(),
                    hi_closed: false,
                });
                if i.lo_closed {
                    pieces.push(Interval::point(Rat::zero()));
                }
            } else {
                pieces.push(Interval {
                    lo: nlo,
                    lo_closed: i.hi_closed,
                    hi: nhi,
                    hi_closed: i.lo_closed,
                });
            }
        }
        IntervalSet::from_pieces(pieces)
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().cloned());
        IntervalSet::from_pieces(pieces)
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, " u ")?;
            }
            write!(f, "{}", p)?;
        }
        Ok(())
    }
}

/// Exact interval structure of a one-variable quantifier-free formula over
/// comparison atoms on a closed window, by breakpoint enumeration: every
/// truth change happens at an atom root.
pub fn extract_cmp(
    f: &Formula,
    var: &str,
    lo: &Rat,
    hi: &Rat,
) -> Result<IntervalSet, String> {
    if !f.is_quantifier_free() {
        return Err("quantified input".into());
    }
    let key = TermVar::Var(var.to_string());
    let mut points: Vec<Rat> = vec![lo.clone(), hi.clone()];
    let mut bad = None;
    f.visit_atoms(&mut |a| match a {
        Atom::Cmp(t, _) => {
            let c = t.coeff(&key);
            if c.is_zero() {
                return;
            }
            let mut rest = t.clone();
            rest.set_coeff(key.clone(), Rat::zero());
            match rest.as_constant() {
                Some(r) => {
                    let root = -(r.clone() * c.recip());
                    if root >= *lo && root <= *hi && !points.contains(&root) {
                        points.push(root);
                    }
                }
                None => bad = Some("atom with other free variables".to_string()),
            }
        }
        _ => bad = Some("non-comparison atom".to_string()),
    });
    if let Some(b) = bad {
        return Err(b);
    }
    points.sort();
    points.dedup();
    build_from_breakpoints(f, var, &points)
}

/// Assembles the interval structure from sorted breakpoints by sampling
/// each breakpoint and each open gap between consecutive ones.
pub(crate) fn build_from_breakpoints(
    f: &Formula,
    var: &str,
    points: &[Rat],
) -> Result<IntervalSet, String> {
    let truth = |v: &Rat| -> Result<bool, String> {
        let a = crate::eval::assignment(&[(var, v.clone())]);
        evaluate(f, &a).map_err(|e| e.to_string())
    };
    let mut pieces: Vec<Interval> = Vec::new();
    if points.is_empty() {
        return Ok(IntervalSet::empty());
    }
    if points.len() == 1 {
        if truth(&points[0])? {
            pieces.push(Interval::point(points[0].clone()));
        }
        return Ok(IntervalSet::from_pieces(pieces));
    }
    for (i, p) in points.iter().enumerate() {
        if truth(p)? {
            pieces.push(Interval::point(p.clone()));
        }
        if i + 1 < points.len() {
            let q = &points[i + 1];
            let mid = (p.clone() + q.clone()) * Rat::new(1, 2);
            if truth(&mid)? {
                pieces.push(Interval {
                    lo: p.clone(),
                    lo_closed: false,
                    hi: q.clone(),
                    hi_closed: false,
                });
            }
        }
    }
    Ok(IntervalSet::from_pieces(pieces))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    #[test]
    fn merge_and_normalize() {
        let s = IntervalSet::from_pieces(vec![
            Interval {
                lo: Rat::from_int(0),
                lo_closed: true,
                hi: Rat::from_int(1),
                hi_closed: false,
            },
            Interval::point(Rat::from_int(1)),
            Interval {
                lo: Rat::from_int(1),
                lo_closed: false,
                hi: Rat::from_int(2),
                hi_closed: false,
            },
        ]);
        assert_eq!(s.pieces.len(), 1);
        assert!(s.contains(&Rat::new(3, 2)));
        assert!(!s.contains(&Rat::from_int(2)));
    }

    #[test]
    fn shift_mod_wraps() {
        // {0} u [3/2, 2) in [0,2), shifted by 1: {1} u [1/2, 1)
        let s = IntervalSet::from_pieces(vec![
            Interval::point(Rat::zero()),
            Interval {
                lo: Rat::new(3, 2),
                lo_closed: true,
                hi: Rat::from_int(2),
                hi_closed: false,
            },
        ]);
        let t = s.shift_mod(&Rat::one(), &Rat::from_int(2));
        assert!(t.contains(&Rat::one()));
        assert!(t.contains(&Rat::new(1, 2)));
        assert!(t.contains(&Rat::new(3, 4)));
        assert!(!t.contains(&Rat::new(0, 1)));
    }

    #[test]
    fn reflect() {
        // [0, 1/2) in [0,1) reflects to {0} u (1/2, 1)
        let s = IntervalSet::from_pieces(vec![Interval {
            lo: Rat::zero(),
            lo_closed: true,
            hi: Rat::new(1, 2),
            hi_closed: false,
        }]);
        let t = s.reflect_mod(&Rat::one());
        assert!(t.contains(&Rat::zero()));
        assert!(t.contains(&Rat::new(3, 4)));
        assert!(!t.contains(&Rat::new(1, 2)));
        assert!(!t.contains(&Rat::new(1, 4)));
    }

    #[test]
    fn extraction() {
        let f = parse("0 <= x and x < 1 or x = 2").unwrap();
        let s = extract_cmp(&f, "x", &Rat::from_int(-1), &Rat::from_int(3)).unwrap();
        assert_eq!(s.pieces.len(), 2);
        assert!(s.contains(&Rat::zero()));
        assert!(!s.contains(&Rat::one()));
        assert!(s.contains(&Rat::from_int(2)));
    }
}
