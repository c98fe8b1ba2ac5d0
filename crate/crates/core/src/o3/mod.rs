//! Reduction of the degree-l O(3)-equivariant bifurcation problem to the
//! plane.
//!
//! The pipeline: build the unique (up to scale) equivariant quadratic from
//! Clebsch-Gordan coefficients in a real spherical-harmonic basis
//! ([`build_equivariant`]), compute an orthonormal basis of the subspace
//! fixed by the octahedral rotations together with the inversion
//! ([`fix_basis`]), and project the quadratic onto that plane to obtain the
//! six planar coefficients ([`extract_planar`]), which feed the planar
//! classifier. For the degrees where the fixed subspace is 2-dimensional
//! (`l` = 12, 16, 18, 20, 22, 26) this decides existence and stability of
//! the cubed-sphere branches.
//!
//! Everything on the hot path is exact: coefficients are sums of rational
//! multiples of square roots of squarefree integers, so sign decisions and
//! the closure/gradient checks are certificates, not float comparisons.

mod cg;
mod complex;
mod equivariant;
mod extract;
mod fixspace;
mod realbasis;
mod wigner;

pub use cg::{cg_coefficient, wigner_3j_lll};
pub use equivariant::{build_equivariant, EquivariantQuadratic};
pub use extract::{extract_planar, extract_planar_f64, l12_reference, O3Reduction, RawProjections};
pub(crate) use extract::check_closure;
pub use fixspace::{fix_basis, group_closure_exact, FixBasis};
pub use wigner::wigner_small_d;

use serde::Serialize;

use crate::exact::SignUncertain;

/// Rotation subgroup whose fixed-point space (together with the inversion,
/// which acts trivially for even l) is under consideration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PointGroup {
    /// Rotations by multiples of pi/2 about the z-axis (cosine convention:
    /// the m = 0 mod 4 cosine modes).
    D4,
    /// The 24 rotations of the cube/octahedron.
    O,
    /// The 60 rotations of the icosahedron. Dimension counts only; no basis
    /// construction.
    I,
}

impl PointGroup {
    pub fn as_str(self) -> &'static str {
        match self {
            PointGroup::D4 => "D4",
            PointGroup::O => "O",
            PointGroup::I => "I",
        }
    }
}

/// Real amplitudes of the degree-l spherical-harmonic modes, indexed by
/// m = -l..l (component m + l; negative m are the sine modes).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarmonicAmplitudes {
    l: u32,
    amps: Vec<f64>,
}

impl HarmonicAmplitudes {
    pub fn new(l: u32, amps: Vec<f64>) -> Result<Self, O3Error> {
        if amps.len() != (2 * l + 1) as usize {
            return Err(O3Error::Internal(format!(
                "amplitude vector for l={l} must have {} components, got {}",
                2 * l + 1,
                amps.len()
            )));
        }
        Ok(HarmonicAmplitudes { l, amps })
    }

    pub fn zero(l: u32) -> Self {
        HarmonicAmplitudes {
            l,
            amps: vec![0.0; (2 * l + 1) as usize],
        }
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn amps(&self) -> &[f64] {
        &self.amps
    }

    /// Amplitude of mode m (negative m = sine mode).
    pub fn get(&self, m: i64) -> f64 {
        self.amps[(m + self.l as i64) as usize]
    }

    pub fn set(&mut self, m: i64, value: f64) {
        self.amps[(m + self.l as i64) as usize] = value;
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum O3Error {
    #[error("m out of range for degree l={l}: m1={m1}, m2={m2}")]
    OutOfRange { l: u32, m1: i64, m2: i64 },
    #[error("degree l={l} is odd: the equivariant quadratic vanishes identically")]
    OddDegree { l: u32 },
    #[error("degree l={l} is odd: the inversion acts as -1 and fixes nothing")]
    OddDegreeUnsupported { l: u32 },
    #[error("operation not available for group {}", group.as_str())]
    UnsupportedGroup { group: PointGroup },
    #[error("Fix({}+Z2c) is zero-dimensional at l={l}", group.as_str())]
    EmptyFix { l: u32, group: PointGroup },
    #[error("Fix(O+Z2c) at l={l} has dimension {dim}, expected 2")]
    NotTwoDimensional { l: u32, dim: usize },
    #[error("quadratic leaves the invariant plane: Q({which}) has a residual at index {index}")]
    ClosureViolation { which: String, index: usize },
    #[error(transparent)]
    SignUncertain(#[from] SignUncertain),
    #[error("internal arithmetic invariant violated: {0}")]
    Internal(String),
}

/// dim Fix(group ⊕ Z2c) inside the degree-l representation of O(3), by
/// averaging the rotation character chi_l(alpha) = 1 + 2*sum_k cos(k*alpha)
/// over the conjugacy classes. All class values are rational for the angles
/// that occur, so the count is exact integer arithmetic.
pub fn character_dim(group: PointGroup, l: u32) -> Result<usize, O3Error> {
    if l % 2 == 1 {
        return Err(O3Error::OddDegreeUnsupported { l });
    }
    let li = l as i64;
    // chi(pi/2): cos(k pi/2) cycles 0,-1,0,1; for even l the partial sum is
    // 0 (l = 0 mod 4) or -1 (l = 2 mod 4).
    let chi_pi_2 = if li % 4 == 0 { 1 } else { -1 };
    // chi(pi): sum of (-1)^k vanishes for even l.
    let chi_pi = 1;
    // chi(2pi/3): cos is 1 at k = 0 mod 3 and -1/2 otherwise.
    let f3 = li / 3;
    let chi_2pi_3 = 1 + 3 * f3 - li;
    let total = match group {
        PointGroup::O => {
            // classes: e, 6 C4, 3 C4^2 + 6 C2, 8 C3
            let t = (2 * li + 1) + 6 * chi_pi_2 + 9 * chi_pi + 8 * chi_2pi_3;
            debug_assert_eq!(t % 24, 0);
            t / 24
        }
        PointGroup::I => {
            // classes: e, 15 C2, 20 C3, 12 C5, 12 C5^2; the two C5 classes
            // enter through cos(2pi k/5) + cos(4pi k/5) = -1/2 for k not
            // divisible by 5.
            let f5 = li / 5;
            let chi5_pair = 2 + 5 * f5 - li;
            let t = (2 * li + 1) + 15 * chi_pi + 20 * chi_2pi_3 + 12 * chi5_pair;
            debug_assert_eq!(t % 60, 0);
            t / 60
        }
        PointGroup::D4 => return Err(O3Error::UnsupportedGroup { group }),
    };
    Ok(total.max(0) as usize)
}

/// Closed-form dimension of Fix(O ⊕ Z2c) for even l: [l/4] + [l/3] - l/2 + 1.
pub fn octahedral_dim_formula(l: u32) -> i64 {
    let li = l as i64;
    li / 4 + li / 3 - li / 2 + 1
}

/// Closed-form dimension of Fix(I ⊕ Z2c) for even l: [l/5] + [l/3] - l/2 + 1.
pub fn icosahedral_dim_formula(l: u32) -> i64 {
    let li = l as i64;
    li / 5 + li / 3 - li / 2 + 1
}

/// All even degrees l <= l_max whose fixed-point space is exactly a plane.
pub fn two_dim_degrees(group: PointGroup, l_max: u32) -> Vec<u32> {
    (0..=l_max)
        .filter(|l| l % 2 == 0)
        .filter(|&l| matches!(character_dim(group, l), Ok(2)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn character_matches_closed_forms() {
        for l in (0..=100).step_by(2) {
            let o = character_dim(PointGroup::O, l).unwrap() as i64;
            assert_eq!(o, octahedral_dim_formula(l), "O, l={l}");
            let i = character_dim(PointGroup::I, l).unwrap() as i64;
            assert_eq!(i, icosahedral_dim_formula(l), "I, l={l}");
        }
    }

    #[test]
    fn pinned_dimensions() {
        assert_eq!(character_dim(PointGroup::O, 0).unwrap(), 1);
        assert_eq!(character_dim(PointGroup::O, 2).unwrap(), 0);
        assert_eq!(character_dim(PointGroup::O, 4).unwrap(), 1);
        assert_eq!(character_dim(PointGroup::O, 12).unwrap(), 2);
        assert_eq!(character_dim(PointGroup::I, 30).unwrap(), 2);
        assert!(matches!(
            character_dim(PointGroup::O, 13),
            Err(O3Error::OddDegreeUnsupported { l: 13 })
        ));
        assert!(matches!(
            character_dim(PointGroup::D4, 12),
            Err(O3Error::UnsupportedGroup { .. })
        ));
    }

    #[test]
    fn two_dim_lists() {
        assert_eq!(two_dim_degrees(PointGroup::O, 26), vec![12, 16, 18, 20, 22, 26]);
        assert_eq!(two_dim_degrees(PointGroup::O, 11), Vec::<u32>::new());
        assert_eq!(
            two_dim_degrees(PointGroup::I, 74),
            vec![30, 36, 40, 42, 46, 48, 50, 52, 54, 56, 58, 62, 64, 68, 74]
        );
    }
}
