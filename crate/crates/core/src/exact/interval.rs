//! Rational interval arithmetic.
//!
//! Intervals carry exact rational endpoints, so the only rounding anywhere
//! is the outward rounding of square roots. Width is controlled by the
//! `bits` parameter passed to the sqrt constructors.

use num_bigint::{BigInt, BigUint};

use num_traits::{One, Signed, Zero};

use super::{Rat, Sign};

/// Closed interval `[lo, hi]` with rational endpoints, `lo <= hi`.
#[derive(Clone, Debug, PartialEq)]
pub struct RatInterval {
    lo: Rat,
    hi: Rat,
}

impl RatInterval {
    pub fn point(x: Rat) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(BigInt::from(2))
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Sign of every point in the interval, if uniform.
    pub fn certain_sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Pos)
        } else if self.hi.is_negative() {
            Some(Sign::Neg)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Sign::Zero)
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        RatInterval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        RatInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let c = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        RatInterval { lo, hi }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_negative() {
            RatInterval {
                lo: &self.hi * k,
                hi: &self.lo * k,
            }
        } else {
            RatInterval {
                lo: &self.lo * k,
                hi: &self.hi * k,
            }
        }
    }

    /// Division; panics if `other` straddles zero.
    pub fn div(&self, other: &Self) -> Self {
        assert!(
            !other.contains_zero(),
            "interval division by interval containing zero"
        );
        let inv = RatInterval {
            lo: other.hi.recip(),
            hi: other.lo.recip(),
        };
        self.mul(&inv)
    }

    /// Enclosure of `sqrt(x)` for a nonnegative rational `x`, accurate to
    /// roughly `bits` bits: width at most `sqrt(x) * 2^(1-bits)` plus one
    /// quantum of the dyadic grid.
    pub fn sqrt_rat(x: &Rat, bits: u64) -> Self {
        assert!(!x.is_negative(), "sqrt of negative rational");
        if x.is_zero() {
            return RatInterval::point(Rat::zero());
        }
        let n = x.numer().magnitude();
        let d = x.denom().magnitude();
        // sqrt(n/d) = sqrt(n*d) / d
        let nd = n * d;
        let scaled = &nd << (2 * bits);
        let s = scaled.sqrt(); // floor sqrt: s^2 <= scaled < (s+1)^2
        let denom = BigInt::from(d << bits);
        let lo = Rat::new(BigInt::from(s.clone()), denom.clone());
        let hi = Rat::new(BigInt::from(s + BigUint::one()), denom);
        RatInterval { lo, hi }
    }

    /// Enclosure of `sqrt(u)` for a nonnegative unsigned integer.
    pub fn sqrt_uint(u: &BigUint, bits: u64) -> Self {
        if u.is_zero() {
            return RatInterval::point(Rat::zero());
        }
        let scaled = u << (2 * bits);
        let s = scaled.sqrt();
        let denom = BigInt::from(BigUint::one() << bits);
        let lo = Rat::new(BigInt::from(s.clone()), denom.clone());
        let hi = Rat::new(BigInt::from(s + BigUint::one()), denom);
        RatInterval { lo, hi }
    }

    /// Monotone image of the interval under sqrt (lower endpoint must be
    /// nonnegative).
    pub fn sqrt(&self, bits: u64) -> Self {
        let lo = Self::sqrt_rat(&self.lo, bits);
        let hi = Self::sqrt_rat(&self.hi, bits);
        RatInterval {
            lo: lo.lo,
            hi: hi.hi,
        }
    }

    pub fn to_f64(&self) -> f64 {
        super::rat_to_f64(&self.midpoint())
    }
}
