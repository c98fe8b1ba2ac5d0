//! Projection of the equivariant quadratic onto the octahedral plane.
//!
//! With the orthonormal plane basis (e1, e2) the restricted system is
//!
//! ```text
//! x' = mu x + a x^2 + b x y + c y^2
//! y' = mu y + p x^2 + q x y + r y^2
//! ```
//!
//! where a = <e1, Q(e1,e1)>, b = 2<e1, Q(e1,e2)>, c = <e1, Q(e2,e2)> and
//! p, q, r are the same three projections onto e2. All six are computed in
//! the exact ring: writing w1, w2 for the unnormalized Gram-Schmidt vectors
//! with rational squared lengths N1, N2, the raw projections divide out as
//! a = <w1,Q(w1,w1)> sqrt(N1)/N1^2 and so on, so each coefficient is a
//! rational multiple of a single square root and the three invariants
//! P, R, I come out as exact rationals.

use num_traits::Zero;

use crate::exact::{rat_from_i64, MultiRadical, RadicalScalar, Rat};
use crate::planar::{ClassificationReport, InvariantTriple, PlanarError, PlanarQuadratic};

use super::equivariant::{build_equivariant, EquivariantQuadratic};
use super::fixspace::{fix_basis, FixBasis};
use super::realbasis::dot;
use super::{O3Error, PointGroup};

/// Projections of Q onto the unnormalized plane basis, before the lengths
/// N1, N2 are divided out. Everything downstream (coefficients, invariant
/// signs, the gradient identities B = 2P0 and Q0 = 2C) is polynomial in
/// these.
#[derive(Debug, Clone)]
pub struct RawProjections {
    pub a: MultiRadical,
    pub b: MultiRadical,
    pub c: MultiRadical,
    pub p: MultiRadical,
    pub q: MultiRadical,
    pub r: MultiRadical,
    pub n1: Rat,
    pub n2: Rat,
}

/// Result of the full reduction at one degree.
#[derive(Debug, Clone)]
pub struct O3Reduction {
    pub l: u32,
    pub fix: FixBasis,
    pub planar: PlanarQuadratic,
    pub invariants: InvariantTriple,
    pub report: ClassificationReport,
    pub raw: RawProjections,
    /// Exact rational values of P, R, I for this normalization.
    pub p_exact: Rat,
    pub r_exact: Rat,
    pub i_exact: Rat,
    /// Scale- and rotation-invariant ratios (None when R = 0).
    pub p_over_r: Option<Rat>,
    pub i2_over_r: Option<Rat>,
}

fn to_o3(err: PlanarError) -> O3Error {
    match err {
        PlanarError::SignUncertain(s) => O3Error::SignUncertain(s),
        other => O3Error::Internal(format!("planar stage failed: {other}")),
    }
}

/// Exact closure check: v must lie in span(w1, w2). Division-free:
/// N1 N2 v - <v,w1> N2 w1 - <v,w2> N1 w2 = 0 componentwise.
pub(crate) fn check_closure(
    which: &str,
    v: &[MultiRadical],
    w1: &[MultiRadical],
    w2: &[MultiRadical],
    n1: &Rat,
    n2: &Rat,
) -> Result<(), O3Error> {
    let vw1 = dot(v, w1);
    let vw2 = dot(v, w2);
    let n1n2 = n1 * n2;
    for (i, vi) in v.iter().enumerate() {
        let residual = vi
            .scale(&n1n2)
            .sub(&w1[i].mul(&vw1).scale(n2))
            .sub(&w2[i].mul(&vw2).scale(n1));
        if !residual.is_zero() {
            return Err(O3Error::ClosureViolation {
                which: which.to_string(),
                index: i,
            });
        }
    }
    Ok(())
}

/// Runs the whole pipeline at degree l: equivariant quadratic, octahedral
/// plane, closure and gradient certificates, planar classification.
pub fn extract_planar(l: u32) -> Result<O3Reduction, O3Error> {
    let q = build_equivariant(l)?;
    let fix = match fix_basis(l, PointGroup::O) {
        Ok(fb) => fb,
        Err(O3Error::EmptyFix { l, .. }) => {
            return Err(O3Error::NotTwoDimensional { l, dim: 0 })
        }
        Err(e) => return Err(e),
    };
    if fix.dim() != 2 {
        return Err(O3Error::NotTwoDimensional { l, dim: fix.dim() });
    }
    let (raw_vecs, norms) = fix.raw();
    let (w1, w2) = (&raw_vecs[0], &raw_vecs[1]);
    let (n1, n2) = (&norms[0], &norms[1]);

    let q11 = q.apply_exact(w1);
    let q12 = q.bilinear_exact(w1, w2);
    let q22 = q.apply_exact(w2);

    // the plane is flow-invariant; anything outside the span is a basis or
    // tensor bug and must not be silently projected away
    check_closure("w1,w1", &q11, w1, w2, n1, n2)?;
    check_closure("w1,w2", &q12, w1, w2, n1, n2)?;
    check_closure("w2,w2", &q22, w1, w2, n1, n2)?;

    let two = rat_from_i64(2, 1);
    let raw = RawProjections {
        a: dot(w1, &q11),
        b: dot(w1, &q12).scale(&two),
        c: dot(w1, &q22),
        p: dot(w2, &q11),
        q: dot(w2, &q12).scale(&two),
        r: dot(w2, &q22),
        n1: n1.clone(),
        n2: n2.clone(),
    };

    // gradient identities in cleared form: b = 2p <=> B = 2 P0, q = 2c <=>
    // Q0 = 2 C. These follow from Q being a spherical-harmonic gradient;
    // failure means the tensor or the basis is wrong.
    if !raw.b.sub(&raw.p.scale(&two)).is_zero() || !raw.q.sub(&raw.c.scale(&two)).is_zero() {
        return Err(O3Error::Internal(format!(
            "gradient identities B = 2*P0, Q0 = 2*C violated at l={l}"
        )));
    }

    let planar = assemble_planar(&raw)?;
    let report = planar.classify(1.0).map_err(to_o3)?;
    let invariants = report.invariants.clone();

    let rationalize = |v: &crate::planar::ScalarValue, name: &str| {
        v.as_rational().ok_or_else(|| {
            O3Error::Internal(format!("invariant {name} failed to reduce to a rational at l={l}"))
        })
    };
    let p_exact = rationalize(&invariants.p, "P")?;
    let r_exact = rationalize(&invariants.r, "R")?;
    let i_exact = rationalize(&invariants.i, "I")?;
    let (p_over_r, i2_over_r) = if r_exact.is_zero() {
        (None, None)
    } else {
        (
            Some(&p_exact / &r_exact),
            Some(&i_exact * &i_exact / &r_exact),
        )
    };

    Ok(O3Reduction {
        l,
        fix,
        planar,
        invariants,
        report,
        raw,
        p_exact,
        r_exact,
        i_exact,
        p_over_r,
        i2_over_r,
    })
}

/// Divides the lengths out of the raw projections:
/// a = A sqrt(N1)/N1^2, b = B sqrt(N2)/(N1 N2), c = C sqrt(N1)/(N1 N2),
/// p = P0 sqrt(N2)/(N1 N2), q = Q0 sqrt(N1)/(N1 N2), r = R0 sqrt(N2)/N2^2.
fn assemble_planar(raw: &RawProjections) -> Result<PlanarQuadratic, O3Error> {
    let s1 = RadicalScalar::sqrt_rat(&raw.n1);
    let s2 = RadicalScalar::sqrt_rat(&raw.n2);
    let inv_n1n1 = rat_from_i64(1, 1) / (&raw.n1 * &raw.n1);
    let inv_n1n2 = rat_from_i64(1, 1) / (&raw.n1 * &raw.n2);
    let inv_n2n2 = rat_from_i64(1, 1) / (&raw.n2 * &raw.n2);
    let coeffs = [
        raw.a.mul_radical(&s1).scale(&inv_n1n1),
        raw.b.mul_radical(&s2).scale(&inv_n1n2),
        raw.c.mul_radical(&s1).scale(&inv_n1n2),
        raw.p.mul_radical(&s2).scale(&inv_n1n2),
        raw.q.mul_radical(&s1).scale(&inv_n1n2),
        raw.r.mul_radical(&s2).scale(&inv_n2n2),
    ];
    Ok(PlanarQuadratic::from_multiradicals(coeffs))
}

/// Float-arithmetic extraction against an arbitrary orthonormal plane basis,
/// for re-orientation robustness experiments: the classification must not
/// depend on which orthonormal basis of the plane is used.
pub fn extract_planar_f64(q: &EquivariantQuadratic, e1: &[f64], e2: &[f64]) -> PlanarQuadratic {
    let dot_f = |u: &[f64], v: &[f64]| -> f64 { u.iter().zip(v).map(|(a, b)| a * b).sum() };
    let q11 = q.apply_f64(e1);
    let q12 = q.bilinear_f64(e1, e2);
    let q22 = q.apply_f64(e2);
    PlanarQuadratic::from_f64(
        dot_f(e1, &q11),
        2.0 * dot_f(e1, &q12),
        dot_f(e1, &q22),
        dot_f(e2, &q11),
        2.0 * dot_f(e2, &q12),
        dot_f(e2, &q22),
    )
}

/// The l = 12 coefficients as published (Leblanc's computation, common
/// factors removed): a = -9913 sqrt(8398)/390, c = 73501 sqrt(8398)/4940,
/// p = 104 sqrt(5313)/3, r = -339119 sqrt(5313)/4370, with b = 2p, q = 2c.
pub fn l12_reference() -> PlanarQuadratic {
    let a = RadicalScalar::new(rat_from_i64(-9913, 390), 8398u32.into());
    let c = RadicalScalar::new(rat_from_i64(73501, 4940), 8398u32.into());
    let p = RadicalScalar::new(rat_from_i64(104, 3), 5313u32.into());
    let r = RadicalScalar::new(rat_from_i64(-339119, 4370), 5313u32.into());
    let b = p.mul_rat(&rat_from_i64(2, 1));
    let q = c.mul_rat(&rat_from_i64(2, 1));
    PlanarQuadratic::from_radicals([a, b, c, p, q, r])
}
