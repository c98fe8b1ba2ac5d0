//! Exact scalar arithmetic used throughout the reduction pipeline.
//!
//! The building blocks are rational numbers, scalars of the form
//! `q * sqrt(r)` with `q` rational and `r` a squarefree positive integer,
//! and finite sums of such terms over distinct radicands. Sums over
//! distinct squarefree radicands are linearly independent over the
//! rationals, so a sum is exactly zero iff it has no terms; every nonzero
//! sum therefore admits a certified sign by evaluating it to rational
//! intervals of increasing precision.

mod interval;
mod radical;

pub use interval::RatInterval;
pub(crate) use radical::small_primes;
pub use radical::{MultiRadical, RadicalScalar};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Rational with arbitrary-precision integer parts.
pub type Rat = BigRational;

/// Certified sign of a scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of_f64(x: f64) -> Sign {
        if x > 0.0 {
            Sign::Pos
        } else if x < 0.0 {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn of_rat(x: &Rat) -> Sign {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_positive() {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Neg => "neg",
            Sign::Zero => "zero",
            Sign::Pos => "pos",
        }
    }
}

/// Raised when interval refinement cannot separate a value from zero
/// within the configured precision budget.
#[derive(Debug, Clone, thiserror::Error)]
#[error("sign could not be certified within {max_digits} decimal digits of precision")]
pub struct SignUncertain {
    pub max_digits: u32,
}

/// Exact factorial.
pub fn factorial(n: u64) -> BigUint {
    // Memoized per thread: the Clebsch-Gordan sums request the same small
    // factorials hundreds of thousands of times.
    thread_local! {
        static CACHE: std::cell::RefCell<Vec<BigUint>> =
            std::cell::RefCell::new(vec![BigUint::one(), BigUint::one()]);
    }
    CACHE.with(|c| {
        let mut cache = c.borrow_mut();
        while (cache.len() as u64) <= n {
            let next = cache.last().unwrap() * BigUint::from(cache.len() as u64);
            cache.push(next);
        }
        cache[n as usize].clone()
    })
}

pub fn rat_from_i64(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    // Ratio::to_f64 via num-traits is exact enough for reporting; large
    // numerators are handled by falling back to a scaled division.
    num_traits::ToPrimitive::to_f64(x).unwrap_or_else(|| {
        let bits = 128u64;
        let scaled = (x.numer() << bits) / x.denom();
        let approx = num_traits::ToPrimitive::to_f64(&scaled).unwrap_or(f64::NAN);
        approx / 2f64.powi(bits as i32)
    })
}

/// Renders `x` in normalized scientific notation with `sig` significant
/// digits, rounding half away from zero. Output is deterministic.
pub fn rat_to_decimal(x: &Rat, sig: usize) -> String {
    assert!(sig >= 1);
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let num = x.numer().magnitude().clone();
    let den = x.denom().magnitude().clone();
    let num_len = num.to_string().len() as i64;
    let den_len = den.to_string().len() as i64;
    // Scale so the integer quotient has a couple of guard digits past `sig`.
    let guard = 3i64;
    let shift = sig as i64 + guard - (num_len - den_len);
    let q = if shift >= 0 {
        (num * BigUint::from(10u32).pow(shift as u32)) / den
    } else {
        num / (den * BigUint::from(10u32).pow((-shift) as u32))
    };
    let mut digits = q.to_string();
    // exponent of the leading digit in the original number
    let mut exp = digits.len() as i64 - 1 - shift;
    // round to `sig` digits, half away from zero
    if digits.len() > sig {
        let cut = digits.len() - sig;
        let keep: BigUint = digits[..sig].parse().unwrap();
        let first_dropped = digits.as_bytes()[sig] - b'0';
        let rounded = if first_dropped >= 5 {
            keep + BigUint::one()
        } else {
            keep
        };
        digits = rounded.to_string();
        if digits.len() > sig {
            // carry overflowed into a new leading digit
            exp += 1;
            digits.truncate(sig);
        }
        let _ = cut;
    } else {
        while digits.len() < sig {
            digits.push('0');
        }
    }
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    let mantissa = if digits.len() == 1 {
        digits.to_string()
    } else {
        format!("{}.{}", &digits[..1], &digits[1..])
    };
    let sign = if neg { "-" } else { "" };
    format!("{sign}{mantissa}e{exp}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rendering() {
        let x = rat_from_i64(1, 3);
        assert_eq!(rat_to_decimal(&x, 5), "3.3333e-1");
        let x = rat_from_i64(-2500, 1);
        assert_eq!(rat_to_decimal(&x, 3), "-2.5e3");
        let x = rat_from_i64(9999, 10);
        assert_eq!(rat_to_decimal(&x, 3), "1e3");
        assert_eq!(rat_to_decimal(&Rat::zero(), 5), "0");
        let x = rat_from_i64(1, 1);
        assert_eq!(rat_to_decimal(&x, 4), "1e0");
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert_eq!(factorial(20).to_string(), "2432902008176640000");
    }
}
