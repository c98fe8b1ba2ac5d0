//! Scalars of the form `q * sqrt(r)` and finite sums of them.
//!
//! Radicands are kept squarefree, so two terms combine iff their radicands
//! are equal, and a sum is exactly zero iff it has no terms (square roots
//! of distinct squarefree integers are linearly independent over the
//! rationals). Nonzero sums get their sign certified by interval
//! evaluation at escalating precision.
//!
//! Squarefree extraction uses trial division by primes below 10^4 followed
//! by a perfect-square test on the leftover. Every radicand produced inside
//! this crate is a product of factorials of arguments below 10^4, so the
//! extraction is complete for them. Caller-supplied radicands whose square
//! part contains two distinct primes above 10^4 are stored unreduced; values
//! remain correct, but exact zero detection degrades to interval
//! certification for such inputs.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;

use super::{Rat, RatInterval, Sign, SignUncertain};

static SMALL_PRIMES: Lazy<Vec<u32>> = Lazy::new(|| {
    let n = 10_000usize;
    let mut sieve = vec![true; n];
    sieve[0] = false;
    sieve[1] = false;
    for i in 2..n {
        if sieve[i] {
            let mut j = i * i;
            while j < n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    (2..n).filter(|&i| sieve[i]).map(|i| i as u32).collect()
});

/// The primes below 10^4 used for squarefree extraction, smallest first.
pub(crate) fn small_primes() -> &'static [u32] {
    &SMALL_PRIMES
}

/// Splits `n = k^2 * r` with `r` squarefree (see module contract).
pub fn squarefree_split(n: &BigUint) -> (BigUint, BigUint) {
    if n.is_zero() {
        return (BigUint::zero(), BigUint::zero());
    }
    let mut rest = n.clone();
    let mut square = BigUint::one();
    let mut free = BigUint::one();
    for &p in SMALL_PRIMES.iter() {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if r.is_zero() {
                rest = q;
                e += 1;
            } else {
                break;
            }
        }
        if e > 0 {
            square *= pb.pow(e / 2);
            if e % 2 == 1 {
                free *= BigUint::from(p);
            }
        }
    }
    if rest > BigUint::one() {
        let s = rest.sqrt();
        if &s * &s == rest {
            square *= s;
        } else {
            free *= rest;
        }
    }
    (square, free)
}

/// A scalar `coeff * sqrt(radicand)` with squarefree integer radicand.
///
/// Canonical form: `radicand >= 1`, and `coeff = 0` implies `radicand = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalScalar {
    coeff: Rat,
    radicand: BigUint,
}

impl RadicalScalar {
    pub fn zero() -> Self {
        RadicalScalar {
            coeff: Rat::zero(),
            radicand: BigUint::one(),
        }
    }

    pub fn one() -> Self {
        RadicalScalar {
            coeff: Rat::one(),
            radicand: BigUint::one(),
        }
    }

    pub fn from_rat(q: Rat) -> Self {
        RadicalScalar {
            coeff: q,
            radicand: BigUint::one(),
        }
    }

    pub fn from_i64(n: i64, d: i64) -> Self {
        Self::from_rat(Rat::new(BigInt::from(n), BigInt::from(d)))
    }

    /// `coeff * sqrt(radicand)` for any nonnegative integer radicand; the
    /// square part of the radicand is folded into the coefficient.
    pub fn new(coeff: Rat, radicand: BigUint) -> Self {
        if coeff.is_zero() || radicand.is_zero() {
            return if radicand.is_zero() && !coeff.is_zero() {
                RadicalScalar::zero()
            } else {
                RadicalScalar::zero()
            };
        }
        let (k, r) = squarefree_split(&radicand);
        RadicalScalar {
            coeff: coeff * Rat::from_integer(BigInt::from(k)),
            radicand: r,
        }
    }

    /// Exact `sqrt(x)` for a nonnegative rational: `sqrt(n/d) = sqrt(n d)/d`.
    pub fn sqrt_rat(x: &Rat) -> Self {
        assert!(!x.is_negative(), "sqrt of negative rational");
        if x.is_zero() {
            return RadicalScalar::zero();
        }
        let n = x.numer().magnitude();
        let d = x.denom().magnitude();
        let nd = n * d;
        let (k, r) = squarefree_split(&nd);
        RadicalScalar {
            coeff: Rat::new(BigInt::from(k), BigInt::from(d.clone())),
            radicand: r,
        }
    }

    pub fn coeff(&self) -> &Rat {
        &self.coeff
    }

    pub fn radicand(&self) -> &BigUint {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn neg(&self) -> Self {
        RadicalScalar {
            coeff: -self.coeff.clone(),
            radicand: self.radicand.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RadicalScalar::zero();
        }
        // sqrt(r1) sqrt(r2) = g sqrt((r1/g)(r2/g)) with g = gcd(r1, r2);
        // the cofactors are coprime and squarefree, so their product is
        // squarefree with no further factoring needed.
        let g = self.radicand.gcd(&other.radicand);
        let r = (&self.radicand / &g) * (&other.radicand / &g);
        RadicalScalar {
            coeff: &self.coeff * &other.coeff * Rat::from_integer(BigInt::from(g)),
            radicand: r,
        }
    }

    pub fn mul_rat(&self, q: &Rat) -> Self {
        if q.is_zero() {
            return RadicalScalar::zero();
        }
        RadicalScalar {
            coeff: &self.coeff * q,
            radicand: self.radicand.clone(),
        }
    }

    /// Sum with a scalar over the same radicand. Panics on mismatched
    /// radicands; use [`MultiRadical`] for heterogeneous sums.
    pub fn add_same(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(
            self.radicand, other.radicand,
            "add_same requires equal radicands"
        );
        let coeff = &self.coeff + &other.coeff;
        if coeff.is_zero() {
            RadicalScalar::zero()
        } else {
            RadicalScalar {
                coeff,
                radicand: self.radicand.clone(),
            }
        }
    }

    /// Exact square, always rational.
    pub fn square_rat(&self) -> Rat {
        &self.coeff * &self.coeff * Rat::from_integer(BigInt::from(self.radicand.clone()))
    }

    pub fn sign(&self) -> Sign {
        Sign::of_rat(&self.coeff)
    }

    pub fn eval_interval(&self, bits: u64) -> RatInterval {
        if self.is_zero() {
            return RatInterval::point(Rat::zero());
        }
        RatInterval::sqrt_uint(&self.radicand, bits).scale(&self.coeff)
    }

    pub fn to_f64(&self) -> f64 {
        self.eval_interval(96).to_f64()
    }
}

impl fmt::Display for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}*sqrt({})", self.coeff, self.radicand)
        }
    }
}

/// Finite sum of radical scalars over distinct squarefree radicands,
/// keyed by radicand. Exactly zero iff empty.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiRadical {
    terms: BTreeMap<BigUint, Rat>,
}

impl MultiRadical {
    pub fn zero() -> Self {
        MultiRadical::default()
    }

    pub fn from_rat(q: Rat) -> Self {
        let mut m = MultiRadical::zero();
        m.accumulate(BigUint::one(), q);
        m
    }

    pub fn from_radical(r: &RadicalScalar) -> Self {
        let mut m = MultiRadical::zero();
        if !r.is_zero() {
            m.accumulate(r.radicand().clone(), r.coeff().clone());
        }
        m
    }

    fn accumulate(&mut self, radicand: BigUint, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(radicand) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &Rat)> {
        self.terms.iter()
    }

    /// The exact rational value, if the sum is rational.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (r, q) = self.terms.iter().next().unwrap();
            if r.is_one() {
                return Some(q.clone());
            }
        }
        None
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (r, q) in &other.terms {
            out.accumulate(r.clone(), q.clone());
        }
        out
    }

    pub fn add_radical(&self, r: &RadicalScalar) -> Self {
        let mut out = self.clone();
        if !r.is_zero() {
            out.accumulate(r.radicand().clone(), r.coeff().clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiRadical {
            terms: self
                .terms
                .iter()
                .map(|(r, q)| (r.clone(), -q.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return MultiRadical::zero();
        }
        MultiRadical {
            terms: self
                .terms
                .iter()
                .map(|(r, q)| (r.clone(), q * k))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = MultiRadical::zero();
        for (r1, q1) in &self.terms {
            for (r2, q2) in &other.terms {
                let g = r1.gcd(r2);
                let r = (r1 / &g) * (r2 / &g);
                let q = q1 * q2 * Rat::from_integer(BigInt::from(g));
                out.accumulate(r, q);
            }
        }
        out
    }

    pub fn mul_radical(&self, s: &RadicalScalar) -> Self {
        self.mul(&MultiRadical::from_radical(s))
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = MultiRadical::from_rat(Rat::one());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Interval enclosure. Each term's sqrt is computed with enough extra
    /// bits to absorb the magnitude of its coefficient, so the total width
    /// stays near `n_terms * 2^-bits`.
    pub fn eval_interval(&self, bits: u64) -> RatInterval {
        let mut acc = RatInterval::point(Rat::zero());
        for (r, q) in &self.terms {
            let coeff_bits = q.numer().magnitude().bits().saturating_sub(q.denom().magnitude().bits());
            let term_bits = bits + coeff_bits + 8;
            let term = RatInterval::sqrt_uint(r, term_bits).scale(q);
            acc = acc.add(&term);
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        if let Some(q) = self.as_rational() {
            return super::rat_to_f64(&q);
        }
        self.eval_interval(96).to_f64()
    }

    /// Deterministic decimal rendering with `sig` significant digits.
    pub fn to_decimal(&self, sig: usize) -> String {
        if let Some(q) = self.as_rational() {
            return super::rat_to_decimal(&q, sig);
        }
        let bits = (sig as u64 * 3322).div_ceil(1000) + 32;
        super::rat_to_decimal(&self.eval_interval(bits).midpoint(), sig)
    }

    /// Certified sign. Empty sums are exactly zero, rational sums are read
    /// off directly, and the rest are separated from zero by interval
    /// evaluation at 50, 100, 200, then 400 decimal digits. The 400-digit
    /// failure case is unreachable for sums over distinct squarefree
    /// radicands (those are never zero and admit a positive separation
    /// bound), but is reported rather than looped on if a non-canonical
    /// radicand slipped in.
    pub fn certified_sign(&self) -> Result<Sign, SignUncertain> {
        if let Some(q) = self.as_rational() {
            return Ok(if q.is_positive() {
                Sign::Pos
            } else if q.is_negative() {
                Sign::Neg
            } else {
                Sign::Zero
            });
        }
        for digits in [50u32, 100, 200, 400] {
            // bits ~ digits * log2(10)
            let bits = (digits as u64 * 3322).div_ceil(1000) + 16;
            let iv = self.eval_interval(bits);
            match iv.certain_sign() {
                Some(Sign::Pos) => return Ok(Sign::Pos),
                Some(Sign::Neg) => return Ok(Sign::Neg),
                Some(Sign::Zero) | None => continue,
            }
        }
        Err(SignUncertain { max_digits: 400 })
    }
}

impl fmt::Display for MultiRadical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (r, q) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if r.is_one() {
                write!(f, "{q}")?;
            } else {
                write!(f, "{q}*sqrt({r})")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_from_i64;

    fn uint(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn squarefree_splitting() {
        assert_eq!(squarefree_split(&uint(1)), (uint(1), uint(1)));
        assert_eq!(squarefree_split(&uint(12)), (uint(2), uint(3)));
        assert_eq!(squarefree_split(&uint(360)), (uint(6), uint(10)));
        assert_eq!(squarefree_split(&uint(49)), (uint(7), uint(1)));
        // leftover branch: 10007 is prime and above the sieve
        let p = uint(10007);
        assert_eq!(squarefree_split(&(&p * &p)), (p.clone(), uint(1)));
        assert_eq!(squarefree_split(&(&p * uint(2))), (uint(1), &p * uint(2)));
        // factorial-sized input
        let f = crate::exact::factorial(30);
        let (k, r) = squarefree_split(&f);
        assert_eq!(&k * &k * &r, f);
        // primes with odd exponent in 30!: 5^7, 17, 19, 23, 29
        assert_eq!(r, uint(5 * 17 * 19 * 23 * 29));
    }

    #[test]
    fn radical_canonical_form() {
        let s = RadicalScalar::new(rat_from_i64(1, 2), uint(18));
        assert_eq!(*s.coeff(), rat_from_i64(3, 2));
        assert_eq!(*s.radicand(), uint(2));
        let s = RadicalScalar::sqrt_rat(&rat_from_i64(9, 8));
        // sqrt(9/8) = sqrt(72)/8 = 6 sqrt(2) / 8 = (3/4) sqrt(2)
        assert_eq!(*s.coeff(), rat_from_i64(3, 4));
        assert_eq!(*s.radicand(), uint(2));
    }

    #[test]
    fn radical_products() {
        let a = RadicalScalar::new(rat_from_i64(1, 1), uint(6));
        let b = RadicalScalar::new(rat_from_i64(1, 1), uint(10));
        let p = a.mul(&b);
        // sqrt(6) sqrt(10) = 2 sqrt(15)
        assert_eq!(*p.coeff(), rat_from_i64(2, 1));
        assert_eq!(*p.radicand(), uint(15));
        assert_eq!(a.square_rat(), rat_from_i64(6, 1));
    }

    #[test]
    fn multiradical_cancellation() {
        let a = RadicalScalar::new(rat_from_i64(2, 3), uint(5));
        let b = RadicalScalar::new(rat_from_i64(-2, 3), uint(5));
        let m = MultiRadical::from_radical(&a).add_radical(&b);
        assert!(m.is_zero());
        assert_eq!(m.certified_sign().unwrap(), Sign::Zero);

        // (1 + sqrt(2))(1 - sqrt(2)) = -1
        let one = MultiRadical::from_rat(rat_from_i64(1, 1));
        let r2 = MultiRadical::from_radical(&RadicalScalar::new(rat_from_i64(1, 1), uint(2)));
        let prod = one.add(&r2).mul(&one.sub(&r2));
        assert_eq!(prod.as_rational().unwrap(), rat_from_i64(-1, 1));
    }

    #[test]
    fn certified_signs_with_cancellation() {
        // sqrt(2) + sqrt(3) - sqrt(5) - x for x within 1e-19 of the true
        // value on either side; certification must resolve both.
        let mut m = MultiRadical::zero();
        m = m.add_radical(&RadicalScalar::new(rat_from_i64(1, 1), uint(2)));
        m = m.add_radical(&RadicalScalar::new(rat_from_i64(1, 1), uint(3)));
        m = m.add_radical(&RadicalScalar::new(rat_from_i64(-1, 1), uint(5)));
        // sqrt2+sqrt3-sqrt5 = 0.91019639244218264591996...
        let below = Rat::new(
            "9101963924421826459".parse::<BigInt>().unwrap(),
            "10000000000000000000".parse::<BigInt>().unwrap(),
        );
        let tight = m.sub(&MultiRadical::from_rat(below));
        assert_eq!(tight.certified_sign().unwrap(), Sign::Pos);
        let above = Rat::new(
            "9101963924421826460".parse::<BigInt>().unwrap(),
            "10000000000000000000".parse::<BigInt>().unwrap(),
        );
        let tight = m.sub(&MultiRadical::from_rat(above));
        assert_eq!(tight.certified_sign().unwrap(), Sign::Neg);
    }

    #[test]
    fn f64_roundtrip() {
        let m = MultiRadical::from_radical(&RadicalScalar::new(rat_from_i64(3, 7), uint(11)));
        let expect = 3.0 / 7.0 * 11f64.sqrt();
        assert!((m.to_f64() - expect).abs() < 1e-15);
    }
}
