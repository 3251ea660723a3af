use std::fmt;

use num::{Signed, Zero};
use serde::{Serialize, Serializer};

use super::rational::{fmt_rational, midpoint, Rational};
use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval {
                lo: fmt_rational(&lo),
                hi: fmt_rational(&hi),
            });
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    /// Builds `[min(a, b), max(a, b)]`.
    pub fn hull(a: Rational, b: Rational) -> Self {
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        midpoint(&self.lo, &self.hi)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &RationalInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &RationalInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersection(&self, other: &RationalInterval) -> Option<RationalInterval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(RationalInterval { lo, hi })
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.lo.is_negative()
    }

    pub fn is_nonpositive(&self) -> bool {
        !self.hi.is_positive()
    }

    pub fn is_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }

    pub fn split(&self) -> (RationalInterval, RationalInterval) {
        let m = self.mid();
        (
            RationalInterval {
                lo: self.lo.clone(),
                hi: m.clone(),
            },
            RationalInterval {
                lo: m,
                hi: self.hi.clone(),
            },
        )
    }

    pub fn add(&self, other: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn add_scalar(&self, c: &Rational) -> RationalInterval {
        RationalInterval {
            lo: &self.lo + c,
            hi: &self.hi + c,
        }
    }

    pub fn neg(&self) -> RationalInterval {
        RationalInterval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    /// `c * [lo, hi]`, swapping the endpoints when `c < 0`.
    pub fn scale(&self, c: &Rational) -> RationalInterval {
        if c.is_negative() {
            RationalInterval {
                lo: c * &self.hi,
                hi: c * &self.lo,
            }
        } else {
            RationalInterval {
                lo: c * &self.lo,
                hi: c * &self.hi,
            }
        }
    }

    pub fn mul(&self, other: &RationalInterval) -> RationalInterval {
        // Sign-case analysis avoids computing all four products when one
        // factor is sign-definite, which is the common case (beta >= 0).
        if self.is_nonnegative() {
            if other.is_nonnegative() {
                return RationalInterval {
                    lo: &self.lo * &other.lo,
                    hi: &self.hi * &other.hi,
                };
            }
            if other.is_nonpositive() {
                return RationalInterval {
                    lo: &self.hi * &other.lo,
                    hi: &self.lo * &other.hi,
                };
            }
            return RationalInterval {
                lo: &self.hi * &other.lo,
                hi: &self.hi * &other.hi,
            };
        }
        if other.is_nonnegative() {
            return other.mul(self);
        }
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        RationalInterval { lo, hi }
    }

    pub fn sqr(&self) -> RationalInterval {
        if self.is_nonnegative() || self.is_nonpositive() {
            let a = &self.lo * &self.lo;
            let b = &self.hi * &self.hi;
            RationalInterval::hull(a, b)
        } else {
            let a = &self.lo * &self.lo;
            let b = &self.hi * &self.hi;
            RationalInterval {
                lo: Rational::zero(),
                hi: a.max(b),
            }
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            super::rational::to_f64(&self.lo),
            super::rational::to_f64(&self.hi),
        )
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", fmt_rational(&self.lo), fmt_rational(&self.hi))
    }
}

impl Serialize for RationalInterval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [fmt_rational(&self.lo), fmt_rational(&self.hi)].serialize(s)
    }
}

/// Axis-aligned box in the `(alpha, beta)` plane, restricted to `beta >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Box2 {
    pub alpha: RationalInterval,
    pub beta: RationalInterval,
}

impl Box2 {
    pub fn new(alpha: RationalInterval, beta: RationalInterval) -> Result<Self> {
        if beta.lo().is_negative() {
            return Err(Error::InvalidInterval {
                lo: fmt_rational(beta.lo()),
                hi: "beta must be nonnegative".into(),
            });
        }
        Ok(Self { alpha, beta })
    }

    pub fn center(&self) -> (Rational, Rational) {
        (self.alpha.mid(), self.beta.mid())
    }

    /// The four quadrants obtained by halving both sides.
    pub fn quarter(&self) -> [Box2; 4] {
        let (a0, a1) = self.alpha.split();
        let (b0, b1) = self.beta.split();
        [
            Box2 {
                alpha: a0.clone(),
                beta: b0.clone(),
            },
            Box2 {
                alpha: a1.clone(),
                beta: b0,
            },
            Box2 {
                alpha: a0,
                beta: b1.clone(),
            },
            Box2 {
                alpha: a1,
                beta: b1,
            },
        ]
    }

    pub fn corners(&self) -> [(Rational, Rational); 4] {
        [
            (self.alpha.lo().clone(), self.beta.lo().clone()),
            (self.alpha.hi().clone(), self.beta.lo().clone()),
            (self.alpha.hi().clone(), self.beta.hi().clone()),
            (self.alpha.lo().clone(), self.beta.hi().clone()),
        ]
    }

    pub fn contains(&self, alpha: &Rational, beta: &Rational) -> bool {
        self.alpha.contains(alpha) && self.beta.contains(beta)
    }

    pub fn intersection(&self, other: &Box2) -> Option<Box2> {
        Some(Box2 {
            alpha: self.alpha.intersection(&other.alpha)?,
            beta: self.beta.intersection(&other.beta)?,
        })
    }
}

impl fmt::Display for Box2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} x {}", self.alpha, self.beta)
    }
}
