//! Exact Clebsch–Gordan coefficients for the coupling l ⊗ l → l,
//! Condon–Shortley convention, via the Racah factorial formula.
//!
//! With j1 = j2 = J = l the formula reads
//!
//! ```text
//! <l m1 l m2 | l m> = sqrt( (2l+1) l!^3 / (3l+1)!
//!                           * (l+m)!(l-m)!(l-m1)!(l+m1)!(l-m2)!(l+m2)! )
//!                     * sum_k (-1)^k / ( k!(l-k)!(l-m1-k)!(l+m2-k)!
//!                                        (m1+k)!(k-m2)! )
//! ```
//!
//! The k-sum is rational and the prefactor a square root of a positive
//! rational, so every coefficient is a single [`RadicalScalar`].

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::exact::{factorial, small_primes, RadicalScalar, Rat};

use super::O3Error;

fn fact_i(n: i64) -> BigUint {
    debug_assert!(n >= 0);
    factorial(n as u64)
}

/// `sqrt(int_factor * prod n_i!^(e_i))` as an exact RadicalScalar.
///
/// Works on per-prime exponents (Legendre's formula for `v_p(n!)`) instead of
/// materializing the product, which for l = 26 would be a ~300-digit integer
/// fed to trial division for every coefficient.
fn sqrt_factorial_monomial(int_factor: u64, fts: &[(u64, i64)]) -> RadicalScalar {
    let mut exps: BTreeMap<u64, i64> = BTreeMap::new();
    let mut rest = int_factor;
    for &p in small_primes() {
        let p = p as u64;
        if p * p > rest {
            break;
        }
        while rest % p == 0 {
            rest /= p;
            *exps.entry(p).or_insert(0) += 1;
        }
    }
    if rest > 1 {
        *exps.entry(rest).or_insert(0) += 1;
    }
    for &(n, mult) in fts {
        if mult == 0 {
            continue;
        }
        for &p in small_primes() {
            let p = p as u64;
            if p > n {
                break;
            }
            let mut v = 0i64;
            let mut pk = p;
            loop {
                v += (n / pk) as i64;
                match pk.checked_mul(p) {
                    Some(next) if next <= n => pk = next,
                    _ => break,
                }
            }
            *exps.entry(p).or_insert(0) += mult * v;
        }
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    let mut radicand = BigUint::one();
    for (p, e) in exps {
        let odd = e.rem_euclid(2);
        let half = (e - odd) / 2;
        if odd == 1 {
            radicand *= BigUint::from(p);
        }
        if half >= 0 {
            num *= BigUint::from(p).pow(half as u32);
        } else {
            den *= BigUint::from(p).pow((-half) as u32);
        }
    }
    RadicalScalar::new(Rat::new(BigInt::from(num), BigInt::from(den)), radicand)
}

/// `<l m1, l m2 | l, m1+m2>` exactly.
pub fn cg_coefficient(l: u32, m1: i64, m2: i64) -> Result<RadicalScalar, O3Error> {
    let li = l as i64;
    let m = m1 + m2;
    if m1.abs() > li || m2.abs() > li || m.abs() > li {
        return Err(O3Error::OutOfRange { l, m1, m2 });
    }
    // rational k-sum
    let k_lo = 0.max(-m1).max(m2);
    let k_hi = li.min(li - m1).min(li + m2);
    let mut sum = Rat::zero();
    for k in k_lo..=k_hi {
        let denom = fact_i(k)
            * fact_i(li - k)
            * fact_i(li - m1 - k)
            * fact_i(li + m2 - k)
            * fact_i(m1 + k)
            * fact_i(k - m2);
        let term = Rat::new(BigInt::one(), BigInt::from(denom));
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return Ok(RadicalScalar::zero());
    }
    // prefactor: sqrt( (2l+1) l!^3 / (3l+1)! * (l+m)!(l-m)! * ... )
    let lu = l as u64;
    let pre = sqrt_factorial_monomial(
        2 * lu + 1,
        &[
            (lu, 3),
            (3 * lu + 1, -1),
            ((li + m) as u64, 1),
            ((li - m) as u64, 1),
            ((li - m1) as u64, 1),
            ((li + m1) as u64, 1),
            ((li - m2) as u64, 1),
            ((li + m2) as u64, 1),
        ],
    );
    Ok(pre.mul_rat(&sum))
}

/// Wigner 3j symbol `(l l l; m1 m2 m3)` with `m1+m2+m3 = 0`, through its own
/// Racah expression. Written as a second, independently coded route to the
/// same values: tests cross it against [`cg_coefficient`] via
/// `<l m1 l m2 | l m> = (-1)^m sqrt(2l+1) (l l l; m1 m2 -m)` (for integer l).
pub fn wigner_3j_lll(l: u32, m1: i64, m2: i64, m3: i64) -> Result<RadicalScalar, O3Error> {
    let li = l as i64;
    if m1 + m2 + m3 != 0 || m1.abs() > li || m2.abs() > li || m3.abs() > li {
        return Err(O3Error::OutOfRange { l, m1, m2 });
    }
    // triangle part for (l, l, l): l!^3 / (3l+1)!
    let lf = factorial(l as u64);
    let tri = Rat::new(
        BigInt::from(&lf * &lf * &lf),
        BigInt::from(factorial(3 * l as u64 + 1)),
    );
    let mf = BigInt::from(
        fact_i(li + m1)
            * fact_i(li - m1)
            * fact_i(li + m2)
            * fact_i(li - m2)
            * fact_i(li + m3)
            * fact_i(li - m3),
    );
    let k_lo = 0.max(-m3 - m1).max(m2 + m3);
    let k_hi = li.min(li - m1).min(li + m2);
    let mut sum = Rat::zero();
    for k in k_lo..=k_hi {
        let denom = fact_i(k)
            * fact_i(li - k)
            * fact_i(li - m1 - k)
            * fact_i(li + m2 - k)
            * fact_i(m1 + m3 + k)
            * fact_i(k - m2 - m3);
        let term = Rat::new(BigInt::one(), BigInt::from(denom));
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    // phase (-1)^(l - l - m3) = (-1)^(-m3)
    if m3.rem_euclid(2) == 1 {
        sum = -sum;
    }
    let pre = RadicalScalar::sqrt_rat(&(tri * Rat::new(mf, BigInt::one())));
    Ok(pre.mul_rat(&sum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_from_i64;

    #[test]
    fn pinned_values() {
        // <1 1 1 -1 | 1 0> = 1/sqrt(2), antisymmetric partner negated
        let v = cg_coefficient(1, 1, -1).unwrap();
        assert_eq!(*v.coeff(), rat_from_i64(1, 2));
        assert_eq!(*v.radicand(), 2u32.into());
        let w = cg_coefficient(1, -1, 1).unwrap();
        assert_eq!(*w.coeff(), rat_from_i64(-1, 2));
        // <1 0 1 0 | 1 0> = 0
        assert!(cg_coefficient(1, 0, 0).unwrap().is_zero());
        // <2 0 2 0 | 2 0> = -sqrt(2/7) = -(1/7) sqrt(14)
        let v = cg_coefficient(2, 0, 0).unwrap();
        assert_eq!(*v.coeff(), rat_from_i64(-1, 7));
        assert_eq!(*v.radicand(), 14u32.into());
    }

    #[test]
    fn out_of_range() {
        assert!(cg_coefficient(2, 3, 0).is_err());
        assert!(cg_coefficient(2, 2, 2).is_err()); // m = 4 > l
    }

    #[test]
    fn normalization_rows() {
        // sum over m1 of <l m1, l (m-m1) | l m>^2 = 1, exactly
        for l in [2u32, 4] {
            for m in [0i64, 1, (l as i64) - 1] {
                let mut acc = Rat::zero();
                for m1 in -(l as i64)..=(l as i64) {
                    let m2 = m - m1;
                    if m2.abs() > l as i64 {
                        continue;
                    }
                    acc += cg_coefficient(l, m1, m2).unwrap().square_rat();
                }
                assert_eq!(acc, rat_from_i64(1, 1), "l={l} m={m}");
            }
        }
    }

    #[test]
    fn exchange_symmetry() {
        // <l m1 l m2 | l m> = (-1)^l <l m2 l m1 | l m>
        for l in [2u32, 3, 4] {
            for m1 in -(l as i64)..=(l as i64) {
                for m2 in -(l as i64)..=(l as i64) {
                    if (m1 + m2).abs() > l as i64 {
                        continue;
                    }
                    let ab = cg_coefficient(l, m1, m2).unwrap();
                    let ba = cg_coefficient(l, m2, m1).unwrap();
                    let expect = if l % 2 == 0 { ba.clone() } else { ba.neg() };
                    assert_eq!(ab, expect, "l={l} m1={m1} m2={m2}");
                }
            }
        }
    }

    #[test]
    fn three_j_cross_check() {
        // CG = (-1)^m sqrt(2l+1) * 3j(m1, m2, -m)
        for l in [2u32, 4, 6] {
            let s2l1 = RadicalScalar::sqrt_rat(&rat_from_i64(2 * l as i64 + 1, 1));
            for m1 in -(l as i64)..=(l as i64) {
                for m2 in -(l as i64)..=(l as i64) {
                    let m = m1 + m2;
                    if m.abs() > l as i64 {
                        continue;
                    }
                    let cg = cg_coefficient(l, m1, m2).unwrap();
                    let tj = wigner_3j_lll(l, m1, m2, -m).unwrap();
                    let mut rhs = tj.mul(&s2l1);
                    if m.rem_euclid(2) == 1 {
                        rhs = rhs.neg();
                    }
                    assert_eq!(cg, rhs, "l={l} m1={m1} m2={m2}");
                }
            }
        }
    }
}
