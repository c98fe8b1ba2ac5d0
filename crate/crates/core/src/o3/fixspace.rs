//! Fixed-point subspaces of the rotation groups inside the degree-l
//! representation, over the exact ring.
//!
//! The D4 space (rotations about z by multiples of pi/2, cosine convention)
//! is spanned by the cosine modes with m = 0 mod 4. The octahedral space is
//! cut out of it by additionally imposing invariance under the quarter turn
//! about the x-axis; it is computed by averaging the D4 seed vectors over
//! the full 24-element rotation group (the group-average projector lands
//! exactly on the invariant subspace and preserves the span because the D4
//! seeds already contain it).

use std::collections::HashMap;

use crate::exact::{rat_from_i64, MultiRadical, RadicalScalar, Rat, Sign};

use super::realbasis::{dot, idx, mat_vec, rx_real, rz_real};
use super::{character_dim, O3Error, PointGroup};

/// 3x3 integer rotation labels, row-major; used only to enumerate the group
/// and detect revisits during BFS.
type Label = [i32; 9];

fn mul3(a: &Label, b: &Label) -> Label {
    let mut out = [0i32; 9];
    for i in 0..3 {
        for j in 0..3 {
            out[3 * i + j] = (0..3).map(|k| a[3 * i + k] * b[3 * k + j]).sum();
        }
    }
    out
}

const GZ: Label = [0, -1, 0, 1, 0, 0, 0, 0, 1]; // pi/2 about z
const GX: Label = [1, 0, 0, 0, 0, -1, 0, 1, 0]; // pi/2 about x

/// The 24 rotations of the octahedron as words in the two generators,
/// stored as a BFS forest: element i is generator `gen` applied to element
/// `parent` (the identity is element 0 with no parent).
pub(crate) struct OctahedralGroup {
    labels: Vec<Label>,
    parent_gen: Vec<Option<(usize, usize)>>,
    index: HashMap<Label, usize>,
}

impl OctahedralGroup {
    pub fn new() -> Self {
        const ID: Label = [1, 0, 0, 0, 1, 0, 0, 0, 1];
        let gens = [GZ, GX];
        let mut labels = vec![ID];
        let mut parent_gen = vec![None];
        let mut index = HashMap::new();
        index.insert(ID, 0usize);
        let mut head = 0;
        while head < labels.len() {
            let current = labels[head];
            for (g, gen) in gens.iter().enumerate() {
                let next = mul3(gen, &current);
                if !index.contains_key(&next) {
                    index.insert(next, labels.len());
                    labels.push(next);
                    parent_gen.push(Some((head, g)));
                }
            }
            head += 1;
        }
        debug_assert_eq!(labels.len(), 24);
        OctahedralGroup {
            labels,
            parent_gen,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Index of gens[g] * element(i).
    pub fn left_mul(&self, g: usize, i: usize) -> usize {
        let gen = if g == 0 { GZ } else { GX };
        self.index[&mul3(&gen, &self.labels[i])]
    }

    /// Applies every group element to `v`, chaining generator applications
    /// along the BFS forest so each element costs one matrix-vector product.
    pub fn orbit(
        &self,
        gens: &[Vec<Vec<MultiRadical>>; 2],
        v: &[MultiRadical],
    ) -> Vec<Vec<MultiRadical>> {
        let mut out: Vec<Vec<MultiRadical>> = Vec::with_capacity(self.len());
        out.push(v.to_vec());
        for i in 1..self.len() {
            let (parent, g) = self.parent_gen[i].expect("non-identity element has a parent");
            let img = mat_vec(&gens[g], &out[parent]);
            out.push(img);
        }
        out
    }
}

/// Exact check that the representation generated by the two real-basis
/// quarter turns closes on the 24-element multiplication table: for every
/// element s and each generator g, sigma(g) sigma(s) v = sigma(gs) v, on
/// deterministic small-rational probe vectors.
pub fn group_closure_exact(l: u32) -> Result<(), O3Error> {
    let gens = [rz_real(l)?, rx_real(l)?];
    let grp = OctahedralGroup::new();
    let dim = (2 * l + 1) as usize;
    // two fixed probe vectors with entries ramping through small rationals
    for probe in 0..2u64 {
        let v: Vec<MultiRadical> = (0..dim)
            .map(|i| {
                let n = ((i as u64 * 7 + probe * 13 + 3) % 11) as i64 - 5;
                MultiRadical::from_rat(rat_from_i64(n, 2))
            })
            .collect();
        let orbit = grp.orbit(&gens, &v);
        for s in 0..grp.len() {
            for g in 0..2 {
                let expect = &orbit[grp.left_mul(g, s)];
                let got = mat_vec(&gens[g], &orbit[s]);
                for (i, (a, b)) in got.iter().zip(expect).enumerate() {
                    if !a.sub(b).is_zero() {
                        return Err(O3Error::Internal(format!(
                            "group closure fails at l={l}: element {s}, generator {g}, \
                             component {i}"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Orthonormal basis of Fix(group + Z2c) at degree l, with the raw
/// (unnormalized, small-radicand) Gram-Schmidt vectors kept alongside for
/// exact downstream arithmetic.
#[derive(Debug, Clone)]
pub struct FixBasis {
    l: u32,
    group: PointGroup,
    basis: Vec<Vec<MultiRadical>>,
    raw: Vec<Vec<MultiRadical>>,
    norms: Vec<Rat>,
}

impl FixBasis {
    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn group(&self) -> PointGroup {
        self.group
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Orthonormal basis vectors, exact, indexed by m + l.
    pub fn basis(&self) -> &[Vec<MultiRadical>] {
        &self.basis
    }

    pub fn basis_f64(&self) -> Vec<Vec<f64>> {
        self.basis
            .iter()
            .map(|v| v.iter().map(|c| c.to_f64()).collect())
            .collect()
    }

    /// Unnormalized Gram-Schmidt vectors and their squared lengths.
    pub(crate) fn raw(&self) -> (&[Vec<MultiRadical>], &[Rat]) {
        (&self.raw, &self.norms)
    }
}

fn unit_vector(dim: usize, at: usize) -> Vec<MultiRadical> {
    let mut v = vec![MultiRadical::zero(); dim];
    v[at] = MultiRadical::from_rat(rat_from_i64(1, 1));
    v
}

/// Certified sign of the orientation component: the m = 0 entry when
/// nonzero, otherwise the first nonzero entry in index order.
fn orientation_sign(l: u32, v: &[MultiRadical]) -> Result<Sign, O3Error> {
    let m0 = &v[idx(l, 0)];
    if !m0.is_zero() {
        return Ok(m0.certified_sign()?);
    }
    for c in v {
        if !c.is_zero() {
            return Ok(c.certified_sign()?);
        }
    }
    Ok(Sign::Zero)
}

/// Basis of the fixed-point space. D4 returns the cosine m = 0 mod 4 unit
/// vectors; O projects those seeds onto the octahedral invariants and
/// orthonormalizes. Odd degrees have empty fixed spaces (the inversion in
/// Z2c acts as -1).
pub fn fix_basis(l: u32, group: PointGroup) -> Result<FixBasis, O3Error> {
    if group == PointGroup::I {
        return Err(O3Error::UnsupportedGroup { group });
    }
    if l % 2 == 1 {
        return Err(O3Error::EmptyFix { l, group });
    }
    let dim = (2 * l + 1) as usize;
    let seeds: Vec<usize> = (0..=l as i64).step_by(4).map(|m| idx(l, m)).collect();
    match group {
        PointGroup::D4 => {
            let basis: Vec<Vec<MultiRadical>> =
                seeds.iter().map(|&j| unit_vector(dim, j)).collect();
            let raw = basis.clone();
            let norms = vec![rat_from_i64(1, 1); basis.len()];
            Ok(FixBasis {
                l,
                group,
                basis,
                raw,
                norms,
            })
        }
        PointGroup::O => {
            let gens = [rz_real(l)?, rx_real(l)?];
            let grp = OctahedralGroup::new();
            let inv_order = rat_from_i64(1, grp.len() as i64);
            let mut raw: Vec<Vec<MultiRadical>> = Vec::new();
            let mut norms: Vec<Rat> = Vec::new();
            for &seed in &seeds {
                let orbit = grp.orbit(&gens, &unit_vector(dim, seed));
                // group average
                let mut p = vec![MultiRadical::zero(); dim];
                for img in &orbit {
                    for (pc, ic) in p.iter_mut().zip(img) {
                        if !ic.is_zero() {
                            *pc = pc.add(ic);
                        }
                    }
                }
                for pc in p.iter_mut() {
                    *pc = pc.scale(&inv_order);
                }
                // division-free Gram-Schmidt against what we already have
                for (w, n) in raw.iter().zip(&norms) {
                    let overlap = dot(&p, w);
                    if overlap.is_zero() {
                        continue;
                    }
                    p = p
                        .iter()
                        .zip(w)
                        .map(|(pc, wc)| pc.scale(n).sub(&wc.mul(&overlap)))
                        .collect();
                }
                if p.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let n = dot(&p, &p).as_rational().ok_or_else(|| {
                    O3Error::Internal(format!(
                        "irrational Gram matrix entry for the octahedral basis at l={l}"
                    ))
                })?;
                raw.push(p);
                norms.push(n);
            }
            if raw.is_empty() {
                return Err(O3Error::EmptyFix { l, group });
            }
            // deterministic orientation
            for w in raw.iter_mut() {
                if orientation_sign(l, w)? == Sign::Neg {
                    for c in w.iter_mut() {
                        *c = c.neg();
                    }
                }
            }
            // normalize: e = w / sqrt(N) = w * sqrt(1/N)
            let basis: Vec<Vec<MultiRadical>> = raw
                .iter()
                .zip(&norms)
                .map(|(w, n)| {
                    let inv_len = RadicalScalar::sqrt_rat(&(rat_from_i64(1, 1) / n.clone()));
                    w.iter().map(|c| c.mul_radical(&inv_len)).collect()
                })
                .collect();
            // cross-check against the character oracle
            let expected = character_dim(group, l)?;
            if basis.len() != expected {
                return Err(O3Error::Internal(format!(
                    "octahedral basis at l={l} has dimension {} but the character sum \
                     gives {expected}",
                    basis.len()
                )));
            }
            Ok(FixBasis {
                l,
                group,
                basis,
                raw,
                norms,
            })
        }
        PointGroup::I => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_has_24_elements_and_closes() {
        let grp = OctahedralGroup::new();
        assert_eq!(grp.len(), 24);
        // labels all distinct orthogonal integer matrices with det 1
        for lab in &grp.labels {
            let det = lab[0] * (lab[4] * lab[8] - lab[5] * lab[7])
                - lab[1] * (lab[3] * lab[8] - lab[5] * lab[6])
                + lab[2] * (lab[3] * lab[7] - lab[4] * lab[6]);
            assert_eq!(det, 1);
        }
        group_closure_exact(4).unwrap();
    }

    #[test]
    fn d4_basis_counts() {
        let fb = fix_basis(12, PointGroup::D4).unwrap();
        assert_eq!(fb.dim(), 4); // m = 0, 4, 8, 12
        let fb = fix_basis(4, PointGroup::D4).unwrap();
        assert_eq!(fb.dim(), 2); // m = 0, 4
    }

    #[test]
    fn octahedral_dimensions() {
        assert!(matches!(
            fix_basis(2, PointGroup::O),
            Err(O3Error::EmptyFix { l: 2, .. })
        ));
        assert_eq!(fix_basis(4, PointGroup::O).unwrap().dim(), 1);
        assert_eq!(fix_basis(12, PointGroup::O).unwrap().dim(), 2);
        assert_eq!(fix_basis(14, PointGroup::O).unwrap().dim(), 1);
    }

    #[test]
    fn octahedral_basis_is_orthonormal_and_invariant() {
        let l = 12u32;
        let fb = fix_basis(l, PointGroup::O).unwrap();
        // exact orthonormality
        for i in 0..fb.dim() {
            for j in 0..fb.dim() {
                let g = dot(&fb.basis()[i], &fb.basis()[j]);
                let expect = rat_from_i64(if i == j { 1 } else { 0 }, 1);
                assert_eq!(g.as_rational(), Some(expect), "gram ({i},{j})");
            }
        }
        // exact invariance under both generators
        let gens = [rz_real(l).unwrap(), rx_real(l).unwrap()];
        for e in fb.basis() {
            for g in &gens {
                let img = mat_vec(g, e);
                for (a, b) in img.iter().zip(e) {
                    assert!(a.sub(b).is_zero());
                }
            }
        }
        // orientation: positive m = 0 component on the first vector,
        // positive leading component on the second
        assert_eq!(
            fb.basis()[0][idx(l, 0)].certified_sign().unwrap(),
            Sign::Pos
        );
        let lead = fb.basis()[1]
            .iter()
            .find(|c| !c.is_zero())
            .expect("second vector nonzero");
        assert_eq!(lead.certified_sign().unwrap(), Sign::Pos);
        // supported on cosine modes with m = 0 mod 4 only
        for e in fb.basis() {
            for (j, c) in e.iter().enumerate() {
                if !c.is_zero() {
                    let m = j as i64 - l as i64;
                    assert!(m >= 0 && m % 4 == 0, "unexpected support at m={m}");
                }
            }
        }
    }

    #[test]
    fn odd_degree_empty() {
        assert!(matches!(
            fix_basis(13, PointGroup::O),
            Err(O3Error::EmptyFix { l: 13, .. })
        ));
    }

    #[test]
    fn icosahedral_basis_unsupported() {
        assert!(matches!(
            fix_basis(30, PointGroup::I),
            Err(O3Error::UnsupportedGroup { .. })
        ));
    }
}
