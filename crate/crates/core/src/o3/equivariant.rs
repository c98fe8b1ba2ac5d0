//! The degree-l O(3)-equivariant quadratic in the real harmonic basis.
//!
//! In the complex basis the unique equivariant quadratic (up to scale) has
//! the Clebsch-Gordan coefficients as its structure constants:
//! B_n = sum_{m1+m2=n} <l m1 l m2 | l n> a_{m1} a_{m2}. Conjugating by the
//! real-basis transform gives a real symmetric tensor; for odd l the CG
//! table is antisymmetric under m1 <-> m2 and the whole quadratic cancels,
//! which is surfaced as the `OddDegree` error.

use std::collections::BTreeMap;

use crate::exact::{rat_from_i64, MultiRadical, RadicalScalar};

use super::cg::cg_coefficient;
use super::complex::CScalar;
use super::realbasis::idx;
use super::O3Error;

/// Sparse symmetric quadratic map Q: R^(2l+1) -> R^(2l+1),
/// Q_k(A) = sum over terms (j1, j2, k, c) of c * A_j1 * A_j2 with j1 <= j2.
#[derive(Debug, Clone)]
pub struct EquivariantQuadratic {
    l: u32,
    dim: usize,
    terms: Vec<(usize, usize, usize, MultiRadical)>,
    terms_f64: Vec<(usize, usize, usize, f64)>,
}

/// Nonzero entries of row m of the real-to-complex transform T, i.e.
/// a_m = sum_j T[m][j] A_j.
fn t_row(l: u32, m: i64) -> Vec<(usize, CScalar)> {
    let sqrt2_inv = RadicalScalar::new(rat_from_i64(1, 2), 2u32.into());
    if m == 0 {
        return vec![(idx(l, 0), CScalar::from_radical(&RadicalScalar::one()))];
    }
    let mm = m.abs();
    let ph = if mm % 2 == 0 { 1 } else { -1 };
    if m > 0 {
        vec![
            (idx(l, mm), CScalar::from_radical(&sqrt2_inv).scale(&rat_from_i64(ph, 1))),
            (
                idx(l, -mm),
                CScalar::i_pow(1)
                    .mul_radical(&sqrt2_inv)
                    .scale(&rat_from_i64(-ph, 1)),
            ),
        ]
    } else {
        vec![
            (idx(l, mm), CScalar::from_radical(&sqrt2_inv)),
            (idx(l, -mm), CScalar::i_pow(1).mul_radical(&sqrt2_inv)),
        ]
    }
}

/// Builds the equivariant quadratic for even l.
pub fn build_equivariant(l: u32) -> Result<EquivariantQuadratic, O3Error> {
    if l % 2 != 0 {
        return Err(O3Error::OddDegree { l });
    }
    let li = l as i64;
    let dim = (2 * l + 1) as usize;
    let sqrt2 = RadicalScalar::new(rat_from_i64(1, 1), 2u32.into());
    let mut acc: BTreeMap<(usize, usize, usize), MultiRadical> = BTreeMap::new();
    fn add(
        acc: &mut BTreeMap<(usize, usize, usize), MultiRadical>,
        key: (usize, usize, usize),
        v: &MultiRadical,
    ) {
        if v.is_zero() {
            return;
        }
        let slot = acc.entry(key).or_insert_with(MultiRadical::zero);
        *slot = slot.add(v);
    }
    // Only complex output slots n >= 0 feed the real components: for real
    // input amplitudes the negative-n slots are conjugates of the positive
    // ones and carry no extra information.
    for m1 in -li..=li {
        for m2 in m1..=li {
            let n = m1 + m2;
            if !(0..=li).contains(&n) {
                continue;
            }
            let cgv = cg_coefficient(l, m1, m2)?;
            if cgv.is_zero() {
                continue;
            }
            // CG is symmetric under m1 <-> m2 for even l, so the unordered
            // pair (m1, m2) enters the ordered double sum with weight 2.
            let weight = if m1 == m2 { 1 } else { 2 };
            let base = CScalar::from_radical(&cgv).scale(&rat_from_i64(weight, 1));
            for (j1, t1) in t_row(l, m1) {
                for (j2, t2) in t_row(l, m2) {
                    let z = base.mul(&t1).mul(&t2);
                    if z.is_zero() {
                        continue;
                    }
                    let key = if j1 <= j2 { (j1, j2) } else { (j2, j1) };
                    if n == 0 {
                        add(&mut acc, (key.0, key.1, idx(l, 0)), &z.re);
                    } else {
                        // real components: B~_n = sqrt(2)(-1)^n Re B_n,
                        // B~_{-n} = -sqrt(2)(-1)^n Im B_n
                        let ph = if n % 2 == 0 { 1 } else { -1 };
                        let fac = sqrt2.mul_rat(&rat_from_i64(ph, 1));
                        add(&mut acc, (key.0, key.1, idx(l, n)), &z.re.mul_radical(&fac));
                        add(
                            &mut acc,
                            (key.0, key.1, idx(l, -n)),
                            &z.im.mul_radical(&fac).neg(),
                        );
                    }
                }
            }
        }
    }
    let terms: Vec<(usize, usize, usize, MultiRadical)> = acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((j1, j2, k), c)| (j1, j2, k, c))
        .collect();
    let terms_f64 = terms
        .iter()
        .map(|(j1, j2, k, c)| (*j1, *j2, *k, c.to_f64()))
        .collect();
    Ok(EquivariantQuadratic {
        l,
        dim,
        terms,
        terms_f64,
    })
}

impl EquivariantQuadratic {
    pub fn l(&self) -> u32 {
        self.l
    }

    /// 2l + 1.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Term list (j1, j2, k, coefficient) with j1 <= j2, meaning
    /// Q_k(A) += coefficient * A_j1 * A_j2. Indices are m + l.
    pub fn terms(&self) -> &[(usize, usize, usize, MultiRadical)] {
        &self.terms
    }

    /// Q(v), exact.
    pub fn apply_exact(&self, v: &[MultiRadical]) -> Vec<MultiRadical> {
        assert_eq!(v.len(), self.dim);
        let mut out = vec![MultiRadical::zero(); self.dim];
        for (j1, j2, k, c) in &self.terms {
            if v[*j1].is_zero() || v[*j2].is_zero() {
                continue;
            }
            out[*k] = out[*k].add(&c.mul(&v[*j1]).mul(&v[*j2]));
        }
        out
    }

    /// Symmetric bilinear form: B(u, v)_k with B(v, v) = Q(v), exact.
    pub fn bilinear_exact(&self, u: &[MultiRadical], v: &[MultiRadical]) -> Vec<MultiRadical> {
        assert_eq!(u.len(), self.dim);
        assert_eq!(v.len(), self.dim);
        let half = rat_from_i64(1, 2);
        let mut out = vec![MultiRadical::zero(); self.dim];
        for (j1, j2, k, c) in &self.terms {
            let mut cross = MultiRadical::zero();
            if !u[*j1].is_zero() && !v[*j2].is_zero() {
                cross = cross.add(&u[*j1].mul(&v[*j2]));
            }
            if !u[*j2].is_zero() && !v[*j1].is_zero() {
                cross = cross.add(&u[*j2].mul(&v[*j1]));
            }
            if cross.is_zero() {
                continue;
            }
            out[*k] = out[*k].add(&c.mul(&cross).scale(&half));
        }
        out
    }

    /// Q(v) in floating point.
    pub fn apply_f64(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim);
        let mut out = vec![0.0; self.dim];
        for (j1, j2, k, c) in &self.terms_f64 {
            out[*k] += c * v[*j1] * v[*j2];
        }
        out
    }

    /// B(u, v) in floating point.
    pub fn bilinear_f64(&self, u: &[f64], v: &[f64]) -> Vec<f64> {
        assert_eq!(u.len(), self.dim);
        assert_eq!(v.len(), self.dim);
        let mut out = vec![0.0; self.dim];
        for (j1, j2, k, c) in &self.terms_f64 {
            out[*k] += c * 0.5 * (u[*j1] * v[*j2] + u[*j2] * v[*j1]);
        }
        out
    }

    /// Jacobian DQ(v), entry [k][j] = dQ_k/dA_j at v, floating point.
    pub fn jacobian_f64(&self, v: &[f64]) -> Vec<Vec<f64>> {
        assert_eq!(v.len(), self.dim);
        let mut out = vec![vec![0.0; self.dim]; self.dim];
        for (j1, j2, k, c) in &self.terms_f64 {
            out[*k][*j2] += c * v[*j1];
            out[*k][*j1] += c * v[*j2];
        }
        out
    }

    /// Coefficients t of the linear form trace DQ(v) = sum_i t_i v_i,
    /// exact. Equivariance forces every t_i to vanish identically; the
    /// planar shadow of this fact is that the two eigenvalues at a fixed
    /// point sum to a multiple of mu.
    pub fn trace_form_exact(&self) -> Vec<MultiRadical> {
        let mut t = vec![MultiRadical::zero(); self.dim];
        for (j1, j2, k, c) in &self.terms {
            if j1 == k {
                t[*j2] = t[*j2].add(c);
            }
            if j2 == k {
                t[*j1] = t[*j1].add(c);
            }
        }
        t
    }

    /// Exact witness that DQ(v) fails to be symmetric for some v, or None if
    /// the gradient structure holds identically. The returned triple is
    /// (k, j, i): coefficient of v_i in DQ(v)_{k,j} minus its transpose.
    pub fn gradient_defect_exact(&self) -> Option<(usize, usize, usize)> {
        // G[k][j][i] = coefficient of v_i in dQ_k/dA_j
        let mut g: BTreeMap<(usize, usize, usize), MultiRadical> = BTreeMap::new();
        for (j1, j2, k, c) in &self.terms {
            for (jj, ii) in [(j1, j2), (j2, j1)] {
                let slot = g.entry((*k, *jj, *ii)).or_insert_with(MultiRadical::zero);
                *slot = slot.add(c);
            }
        }
        let keys: Vec<(usize, usize, usize)> = g.keys().cloned().collect();
        let zero = MultiRadical::zero();
        for (k, j, i) in keys {
            let a = g.get(&(k, j, i)).unwrap_or(&zero);
            let b = g.get(&(j, k, i)).unwrap_or(&zero);
            if !a.sub(b).is_zero() {
                return Some((k, j, i));
            }
        }
        None
    }

    /// Largest |coefficient| over the term list; scale reference for
    /// tolerance-based residual checks.
    pub fn max_coeff(&self) -> f64 {
        self.terms_f64
            .iter()
            .map(|(_, _, _, c)| c.abs())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rat;

    fn rational_vector(vals: &[(usize, i64, i64)], dim: usize) -> Vec<MultiRadical> {
        let mut v = vec![MultiRadical::zero(); dim];
        for (i, n, d) in vals {
            v[*i] = MultiRadical::from_rat(Rat::new((*n).into(), (*d).into()));
        }
        v
    }
    use crate::exact::Sign;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn odd_degree_rejected() {
        match build_equivariant(3) {
            Err(O3Error::OddDegree { l: 3 }) => {}
            other => panic!("expected OddDegree, got {other:?}"),
        }
    }

    #[test]
    fn trace_vanishes_identically() {
        for l in [2u32, 4, 6, 12] {
            let q = build_equivariant(l).unwrap();
            for (i, t) in q.trace_form_exact().iter().enumerate() {
                assert!(t.is_zero(), "l={l}: trace form has component {i}");
            }
        }
    }

    #[test]
    fn gradient_structure_identically() {
        for l in [2u32, 4, 6, 12] {
            let q = build_equivariant(l).unwrap();
            assert_eq!(q.gradient_defect_exact(), None, "l={l}");
        }
    }

    #[test]
    fn equivariance_exact_for_generators() {
        use crate::o3::realbasis::{mat_vec, rx_real, rz_real};
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for l in [4u32, 12] {
            let q = build_equivariant(l).unwrap();
            let dim = q.dim();
            for r in [rz_real(l).unwrap(), rx_real(l).unwrap()] {
                // random small-rational test vector
                let v: Vec<MultiRadical> = (0..dim)
                    .map(|_| {
                        MultiRadical::from_rat(rat_from_i64(rng.gen_range(-4i64..=4), 1))
                    })
                    .collect();
                let lhs = mat_vec(&r, &q.apply_exact(&v));
                let rhs = q.apply_exact(&mat_vec(&r, &v));
                for (i, (a, b)) in lhs.iter().zip(&rhs).enumerate() {
                    assert!(a.sub(b).is_zero(), "l={l}, component {i}");
                }
            }
        }
    }

    #[test]
    fn quartic_invariant_direction_l4() {
        // For l = 4 the octahedral fixed space is a line; Q maps it to
        // itself, so Q(e)[on the line] is parallel to e. Checked exactly
        // through the projector in fixspace tests; here just pin that the
        // tensor is nonempty and produces certified-sign outputs.
        let q = build_equivariant(4).unwrap();
        assert!(q.num_terms() > 0);
        let v = rational_vector(&[(idx(4, 0), 1, 1), (idx(4, 4), 1, 2)], q.dim());
        let out = q.apply_exact(&v);
        let mut any_nonzero = false;
        for c in &out {
            if !c.is_zero() {
                any_nonzero = true;
                assert!(matches!(
                    c.certified_sign().unwrap(),
                    Sign::Neg | Sign::Pos
                ));
            }
        }
        assert!(any_nonzero);
    }

    #[test]
    fn bilinear_diagonal_matches_apply() {
        let q = build_equivariant(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v: Vec<f64> = (0..q.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let a = q.apply_f64(&v);
        let b = q.bilinear_f64(&v, &v);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn jacobian_is_twice_bilinear() {
        let q = build_equivariant(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let dim = q.dim();
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let jac = q.jacobian_f64(&v);
        for j in 0..dim {
            let mut e = vec![0.0; dim];
            e[j] = 1.0;
            let col = q.bilinear_f64(&v, &e);
            for k in 0..dim {
                assert!((jac[k][j] - 2.0 * col[k]).abs() < 1e-13, "k={k} j={j}");
            }
        }
    }
}
