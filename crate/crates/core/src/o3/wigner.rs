//! Exact Wigner small-d matrix at beta = pi/2.
//!
//! At this angle every power of cos(beta/2) and sin(beta/2) collapses to
//! 2^(-l), so the matrix entry is a rational k-sum times the square root of
//! a factorial product:
//!
//! ```text
//! d^l_{m',m}(pi/2) = 2^(-l) sqrt((l+m')!(l-m')!(l+m)!(l-m)!)
//!                    * sum_s (-1)^(m'-m+s)
//!                      / ( (l+m-s)! s! (m'-m+s)! (l-m'-s)! )
//! ```
//!
//! pi/2 is the only angle the octahedral pipeline needs; other angles do not
//! stay inside the quadratic-radical ring and are out of scope.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::exact::{factorial, RadicalScalar, Rat};

fn fact_i(n: i64) -> BigUint {
    debug_assert!(n >= 0);
    factorial(n as u64)
}

/// Full (2l+1) x (2l+1) matrix, `d[idx(m')][idx(m)]` with `idx(m) = m + l`,
/// exactly at beta = pi/2. Orthogonal: `d * d^T = I`.
pub fn wigner_small_d(l: u32) -> Vec<Vec<RadicalScalar>> {
    let li = l as i64;
    let dim = (2 * l + 1) as usize;
    let mut d = vec![vec![RadicalScalar::zero(); dim]; dim];
    let inv_two_l = Rat::new(BigInt::one(), BigInt::from(BigUint::one() << l));
    for mp in -li..=li {
        for m in -li..=li {
            let s_lo = 0.max(m - mp);
            let s_hi = (li + m).min(li - mp);
            let mut sum = Rat::zero();
            for s in s_lo..=s_hi {
                let denom = fact_i(li + m - s) * fact_i(s) * fact_i(mp - m + s) * fact_i(li - mp - s);
                let term = Rat::new(BigInt::one(), BigInt::from(denom));
                if (mp - m + s).rem_euclid(2) == 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
            }
            if sum.is_zero() {
                continue;
            }
            let f = fact_i(li + mp) * fact_i(li - mp) * fact_i(li + m) * fact_i(li - m);
            let pre = RadicalScalar::new(inv_two_l.clone() * sum, f);
            d[(mp + li) as usize][(m + li) as usize] = pre;
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat_from_i64, MultiRadical};

    #[test]
    fn l0_is_identity() {
        let d = wigner_small_d(0);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0][0], RadicalScalar::one());
    }

    #[test]
    fn l1_known_values() {
        // standard d^1(pi/2): d_{11} = 1/2, d_{10} = -1/sqrt(2), d_{00} = 0,
        // d_{01} = 1/sqrt(2), d_{1,-1} = 1/2
        let d = wigner_small_d(1);
        let idx = |m: i64| (m + 1) as usize;
        assert_eq!(d[idx(1)][idx(1)], RadicalScalar::from_i64(1, 2));
        assert_eq!(d[idx(1)][idx(-1)], RadicalScalar::from_i64(1, 2));
        assert_eq!(d[idx(0)][idx(0)], RadicalScalar::zero());
        assert_eq!(
            d[idx(1)][idx(0)],
            RadicalScalar::new(rat_from_i64(-1, 2), 2u32.into())
        );
        assert_eq!(
            d[idx(0)][idx(1)],
            RadicalScalar::new(rat_from_i64(1, 2), 2u32.into())
        );
    }

    #[test]
    fn rows_orthonormal_exactly() {
        for l in [1u32, 2, 3] {
            let d = wigner_small_d(l);
            let dim = d.len();
            for i in 0..dim {
                for j in 0..dim {
                    let mut acc = MultiRadical::zero();
                    for k in 0..dim {
                        acc = acc.add_radical(&d[i][k].mul(&d[j][k]));
                    }
                    let expect = if i == j { 1 } else { 0 };
                    assert_eq!(
                        acc.as_rational(),
                        Some(rat_from_i64(expect, 1)),
                        "l={l} i={i} j={j}"
                    );
                }
            }
        }
    }
}
