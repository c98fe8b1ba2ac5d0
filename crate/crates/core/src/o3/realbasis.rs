//! Real orthonormal spherical-harmonic basis and the conjugation of
//! complex-basis operators into it.
//!
//! Basis convention (Condon-Shortley phases throughout): component j = m + l
//! carries the cosine mode for m > 0, the axisymmetric mode at m = 0, and the
//! sine mode for m < 0. The complex amplitudes a_m of Y_l^m relate to the
//! real amplitudes A_j by
//!
//! ```text
//! a_0    = A_0
//! a_m    = (-1)^m (A_m - i A_{-m}) / sqrt(2)      (m > 0)
//! a_{-m} = (A_m + i A_{-m}) / sqrt(2)             (m > 0)
//! ```
//!
//! i.e. a = T A with T unitary, and a real operator D in the complex basis
//! becomes M = T^H D T. The rotation generators used here produce exactly
//! real M; this is asserted, not assumed.

use crate::exact::{rat_from_i64, MultiRadical, RadicalScalar};

use super::complex::CScalar;
use super::wigner::wigner_small_d;
use super::O3Error;

pub(crate) fn idx(l: u32, m: i64) -> usize {
    debug_assert!(m.abs() <= l as i64);
    (m + l as i64) as usize
}

/// Nonzero entries of column j of T, as (complex row m, value). Each column
/// has at most two entries.
fn t_column(l: u32, j: usize) -> Vec<(i64, CScalar)> {
    let m = j as i64 - l as i64;
    let sqrt2 = RadicalScalar::new(rat_from_i64(1, 2), 2u32.into()); // 1/sqrt(2)
    if m == 0 {
        return vec![(0, CScalar::from_radical(&RadicalScalar::one()))];
    }
    let mm = m.abs();
    let ph = if mm % 2 == 0 { 1 } else { -1 };
    if m > 0 {
        // cosine column: a_m gets (-1)^m/sqrt2, a_{-m} gets 1/sqrt2
        let top = CScalar::from_radical(&sqrt2).scale(&rat_from_i64(ph, 1));
        let bot = CScalar::from_radical(&sqrt2);
        vec![(mm, top), (-mm, bot)]
    } else {
        // sine column: a_m gets -(-1)^m i/sqrt2, a_{-m} gets i/sqrt2
        let i = CScalar::i_pow(1);
        let top = i.mul_radical(&sqrt2).scale(&rat_from_i64(-ph, 1));
        let bot = i.mul_radical(&sqrt2);
        vec![(mm, top), (-mm, bot)]
    }
}

/// M = T^H D T for a dense complex-basis operator D; errors if any entry
/// fails to be exactly real.
fn real_from_complex(
    l: u32,
    d: &[Vec<CScalar>],
    what: &str,
) -> Result<Vec<Vec<MultiRadical>>, O3Error> {
    let dim = (2 * l + 1) as usize;
    let mut out = vec![vec![MultiRadical::zero(); dim]; dim];
    let columns: Vec<Vec<(i64, CScalar)>> = (0..dim).map(|j| t_column(l, j)).collect();
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = CScalar::zero();
            for (k, ti) in &columns[i] {
                for (kp, tj) in &columns[j] {
                    let dkk = &d[idx(l, *k)][idx(l, *kp)];
                    if dkk.is_zero() {
                        continue;
                    }
                    acc = acc.add(&ti.conj().mul(dkk).mul(tj));
                }
            }
            if !acc.im.is_zero() {
                return Err(O3Error::Internal(format!(
                    "{what}: entry ({i},{j}) of the real-basis operator has a nonzero \
                     imaginary part"
                )));
            }
            out[i][j] = acc.re.clone();
        }
    }
    Ok(out)
}

/// Rotation by pi/2 about the z-axis in the real basis.
///
/// In the complex basis this is diag(e^{-i m pi/2}) = diag((-i)^m); the real
/// form has entries in {0, +-1}: it permutes the (cos, sin) pairs within each
/// |m| according to m mod 4.
pub(crate) fn rz_real(l: u32) -> Result<Vec<Vec<MultiRadical>>, O3Error> {
    let dim = (2 * l + 1) as usize;
    let li = l as i64;
    let mut d = vec![vec![CScalar::zero(); dim]; dim];
    for m in -li..=li {
        d[idx(l, m)][idx(l, m)] = CScalar::i_pow(-m);
    }
    real_from_complex(l, &d, "Rz(pi/2)")
}

/// Rotation by pi/2 about the x-axis in the real basis, via
/// Dx = Dz(-pi/2) d(pi/2) Dz(pi/2), i.e. entries i^{m'} d_{m'm} (-i)^m.
pub(crate) fn rx_real(l: u32) -> Result<Vec<Vec<MultiRadical>>, O3Error> {
    let dim = (2 * l + 1) as usize;
    let li = l as i64;
    let small_d = wigner_small_d(l);
    let mut d = vec![vec![CScalar::zero(); dim]; dim];
    for mp in -li..=li {
        for m in -li..=li {
            let v = &small_d[idx(l, mp)][idx(l, m)];
            if v.is_zero() {
                continue;
            }
            d[idx(l, mp)][idx(l, m)] = CScalar::i_pow(mp - m).mul_radical(v);
        }
    }
    real_from_complex(l, &d, "Rx(pi/2)")
}

/// Multiplies a real-basis operator into a vector: out = M v.
pub(crate) fn mat_vec(m: &[Vec<MultiRadical>], v: &[MultiRadical]) -> Vec<MultiRadical> {
    m.iter()
        .map(|row| {
            let mut acc = MultiRadical::zero();
            for (entry, vj) in row.iter().zip(v) {
                if entry.is_zero() || vj.is_zero() {
                    continue;
                }
                acc = acc.add(&entry.mul(vj));
            }
            acc
        })
        .collect()
}

/// Exact inner product of two real-basis vectors.
pub(crate) fn dot(u: &[MultiRadical], v: &[MultiRadical]) -> MultiRadical {
    let mut acc = MultiRadical::zero();
    for (ui, vi) in u.iter().zip(v) {
        if ui.is_zero() || vi.is_zero() {
            continue;
        }
        acc = acc.add(&ui.mul(vi));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn identity(dim: usize) -> Vec<Vec<MultiRadical>> {
        let mut m = vec![vec![MultiRadical::zero(); dim]; dim];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = MultiRadical::from_rat(rat_from_i64(1, 1));
        }
        m
    }

    fn mat_mul(a: &[Vec<MultiRadical>], b: &[Vec<MultiRadical>]) -> Vec<Vec<MultiRadical>> {
        let n = a.len();
        let mut out = vec![vec![MultiRadical::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = MultiRadical::zero();
                for (k, bk) in b.iter().enumerate() {
                    if a[i][k].is_zero() || bk[j].is_zero() {
                        continue;
                    }
                    acc = acc.add(&a[i][k].mul(&bk[j]));
                }
                out[i][j] = acc;
            }
        }
        out
    }

    #[test]
    fn rz_entries_are_signed_permutation() {
        let r = rz_real(3).unwrap();
        for row in &r {
            let mut nonzero = 0;
            for e in row {
                if !e.is_zero() {
                    nonzero += 1;
                    let q = e.as_rational().expect("Rz entry must be rational");
                    assert!(q.numer().magnitude() == &1u32.into() && q.denom().is_one());
                }
            }
            assert_eq!(nonzero, 1);
        }
    }

    #[test]
    fn generators_are_orthogonal_and_quarter_turns() {
        for l in [2u32, 4] {
            let dim = (2 * l + 1) as usize;
            for (name, r) in [("rz", rz_real(l).unwrap()), ("rx", rx_real(l).unwrap())] {
                // orthogonality: R R^T = I exactly
                let rt: Vec<Vec<MultiRadical>> = (0..dim)
                    .map(|i| (0..dim).map(|j| r[j][i].clone()).collect())
                    .collect();
                assert_eq!(mat_mul(&r, &rt), identity(dim), "{name} l={l} orthogonality");
                // fourth power = identity
                let r2 = mat_mul(&r, &r);
                let r4 = mat_mul(&r2, &r2);
                assert_eq!(r4, identity(dim), "{name} l={l} fourth power");
            }
        }
    }
}
