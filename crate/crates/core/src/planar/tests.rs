use super::*;
use crate::exact::rat_from_i64;

fn sys(a: f64, b: f64, c: f64, p: f64, q: f64, r: f64) -> PlanarQuadratic {
    PlanarQuadratic::from_f64(a, b, c, p, q, r)
}

/// 0 = x + x^2, 0 = y + y^2 decoupled: the workhorse case-C fixture.
fn decoupled() -> PlanarQuadratic {
    sys(1.0, 0.0, 0.0, 0.0, 0.0, 1.0)
}

/// 0 = mu x + y^2, 0 = mu y + x y: hidden-symmetry fixture with R = 0.
fn tetrahedral() -> PlanarQuadratic {
    sys(0.0, 0.0, 1.0, 0.0, 1.0, 0.0)
}

#[test]
fn invariants_decoupled() {
    let inv = decoupled().invariants().unwrap();
    assert_eq!(inv.p.as_rational().unwrap(), rat_from_i64(-1, 1));
    assert_eq!(inv.r.as_rational().unwrap(), rat_from_i64(1, 1));
    assert_eq!(inv.i.as_rational().unwrap(), rat_from_i64(0, 1));
    assert_eq!(inv.p.sign, Sign::Neg);
    assert_eq!(inv.r.sign, Sign::Pos);
    assert_eq!(inv.i.sign, Sign::Zero);
    assert!(!inv.p.degenerate && !inv.r.degenerate);
    assert!(inv.i.degenerate); // exactly zero
    assert!(inv.certified); // exact zero is certain
}

#[test]
fn invariants_tetrahedral() {
    let inv = tetrahedral().invariants().unwrap();
    assert_eq!(inv.p.as_rational().unwrap(), rat_from_i64(-4, 1));
    assert_eq!(inv.r.as_rational().unwrap(), rat_from_i64(0, 1));
    assert_eq!(inv.r.sign, Sign::Zero);
    assert!(inv.r.degenerate);
}

#[test]
fn invariants_reject_zero_system() {
    let z = sys(0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    assert!(matches!(
        z.invariants(),
        Err(PlanarError::NonQuadratic)
    ));
}

#[test]
fn roots_decoupled_include_infinity() {
    // cubic: -z^2 + z = 0 with c = 0 -> roots 0, 1, infinity
    let dirs = decoupled().direction_roots().unwrap();
    assert_eq!(dirs.len(), 3);
    let zs: Vec<Option<f64>> = dirs.iter().map(|d| d.z()).collect();
    assert!((zs[0].unwrap() - 0.0).abs() < 1e-15);
    assert!((zs[1].unwrap() - 1.0).abs() < 1e-15);
    assert!(zs[2].is_none());
}

#[test]
fn roots_depressed_single() {
    // c=1, p=-1: z^3 + 1 = 0 -> single root -1
    let s = sys(0.0, 0.0, 1.0, -1.0, 0.0, 0.0);
    let dirs = s.direction_roots().unwrap();
    assert_eq!(dirs.len(), 1);
    assert!((dirs[0].z().unwrap() + 1.0).abs() < 1e-15);
}

#[test]
fn roots_tetrahedral() {
    // z^3 - z = 0 -> -1, 0, 1
    let dirs = tetrahedral().direction_roots().unwrap();
    let zs: Vec<f64> = dirs.iter().map(|d| d.z().unwrap()).collect();
    assert_eq!(zs.len(), 3);
    assert!((zs[0] + 1.0).abs() < 1e-15);
    assert!(zs[1].abs() < 1e-15);
    assert!((zs[2] - 1.0).abs() < 1e-15);
}

#[test]
fn classify_case_c_decoupled() {
    let rep = decoupled().classify(1.0).unwrap();
    assert_eq!(rep.case, Case::C);
    assert_eq!(rep.fixed_points.len(), 3);
    // points (-1,0), (0,-1), (-1,-1) in direction order 0, 1, infinity
    let mut pts: Vec<(f64, f64)> = rep.fixed_points.iter().map(|p| (p.x, p.y)).collect();
    pts.sort_by(|u, v| u.partial_cmp(v).unwrap());
    let expect = [(-1.0, -1.0), (-1.0, 0.0), (0.0, -1.0)];
    for ((x, y), (ex, ey)) in pts.iter().zip(expect) {
        assert!((x - ex).abs() < 1e-12 && (y - ey).abs() < 1e-12);
    }
    let saddles = rep
        .fixed_points
        .iter()
        .filter(|p| p.kind == Kind::Saddle)
        .count();
    assert_eq!(saddles, 2);
    // the node is the diagonal point
    let node = rep
        .fixed_points
        .iter()
        .find(|p| p.kind == Kind::Node)
        .unwrap();
    assert!((node.x + 1.0).abs() < 1e-12 && (node.y + 1.0).abs() < 1e-12);
    // radial eigenvalue
    for p in &rep.fixed_points {
        assert!((p.eigenvalues.0 + 1.0).abs() < 1e-12);
    }
}

#[test]
fn classify_case_a() {
    // c=1, p=-1: P = 27 > 0, R = 1 > 0
    let s = sys(0.0, 0.0, 1.0, -1.0, 0.0, 0.0);
    let inv = s.invariants().unwrap();
    assert_eq!(inv.p.as_rational().unwrap(), rat_from_i64(27, 1));
    assert_eq!(inv.r.as_rational().unwrap(), rat_from_i64(1, 1));
    let rep = s.classify(1.0).unwrap();
    assert_eq!(rep.case, Case::A);
    assert_eq!(rep.fixed_points.len(), 1);
    let pt = &rep.fixed_points[0];
    assert!((pt.x + 1.0).abs() < 1e-14 && (pt.y - 1.0).abs() < 1e-14);
    assert_eq!(pt.kind, Kind::Saddle);
    // eigenvalues of [[1,2],[2,1]]: -1 and 3
    assert!((pt.eigenvalues.0 + 1.0).abs() < 1e-12);
    assert!((pt.eigenvalues.1 - 3.0).abs() < 1e-12);
}

#[test]
fn classify_case_b() {
    // a=1, q=2, c=-1: P = 4, R = -4
    let s = sys(1.0, 0.0, -1.0, 0.0, 2.0, 0.0);
    let inv = s.invariants().unwrap();
    assert_eq!(inv.p.as_rational().unwrap(), rat_from_i64(4, 1));
    assert_eq!(inv.r.as_rational().unwrap(), rat_from_i64(-4, 1));
    let rep = s.classify(1.0).unwrap();
    assert_eq!(rep.case, Case::B);
    assert_eq!(rep.fixed_points.len(), 1);
    assert_eq!(rep.fixed_points[0].kind, Kind::Node);
}

#[test]
fn tetrahedral_degenerate_with_two_solutions() {
    let rep = tetrahedral().classify(1.0).unwrap();
    match rep.case {
        Case::Degenerate(flags) => {
            assert!(flags.r && !flags.p && !flags.all_on_axis);
        }
        other => panic!("expected degenerate, got {other:?}"),
    }
    // x = -mu, y = +/- mu survive; the z = 0 direction is rejected
    assert_eq!(rep.fixed_points.len(), 2);
    assert_eq!(rep.rejected.len(), 1);
    assert!(rep.rejected[0].z().unwrap().abs() < 1e-15);
    for p in &rep.fixed_points {
        assert!((p.x + 1.0).abs() < 1e-12);
        assert!((p.y.abs() - 1.0).abs() < 1e-12);
        let (fx, fy) = tetrahedral().eval(1.0, p.x, p.y);
        assert!(fx.abs() < 1e-12 && fy.abs() < 1e-12);
    }
}

#[test]
fn line_of_fixed_points_flagged() {
    // a=q=1, rest zero: direction cubic vanishes identically
    let s = sys(1.0, 0.0, 0.0, 0.0, 1.0, 0.0);
    let rep = s.classify(1.0).unwrap();
    match rep.case {
        Case::Degenerate(flags) => assert!(flags.all_on_axis && flags.r),
        other => panic!("expected degenerate, got {other:?}"),
    }
}

#[test]
fn mu_sign_change_negates_points_and_eigenvalues() {
    let plus = decoupled().classify(1.0).unwrap();
    let minus = decoupled().classify(-1.0).unwrap();
    assert_eq!(plus.case, minus.case);
    assert_eq!(plus.fixed_points.len(), minus.fixed_points.len());
    for (p, m) in plus.fixed_points.iter().zip(&minus.fixed_points) {
        assert!((p.x + m.x).abs() < 1e-12 && (p.y + m.y).abs() < 1e-12);
        assert!((p.eigenvalues.0 + m.eigenvalues.0).abs() < 1e-12);
        assert!((p.eigenvalues.1 + m.eigenvalues.1).abs() < 1e-12);
        assert_eq!(p.kind, m.kind);
    }
}

#[test]
fn mu_scales_points_linearly() {
    let rep1 = decoupled().classify(1.0).unwrap();
    let rep3 = decoupled().classify(3.0).unwrap();
    for (p, s) in rep1.fixed_points.iter().zip(&rep3.fixed_points) {
        assert!((3.0 * p.x - s.x).abs() < 1e-12);
        assert!((3.0 * p.y - s.y).abs() < 1e-12);
    }
}

#[test]
fn zero_mu_rejected() {
    assert!(matches!(
        decoupled().classify(0.0),
        Err(PlanarError::ZeroMu)
    ));
}

#[test]
fn gradient_detection() {
    assert!(sys(0.5, 2.0, 2.0, 1.0, 4.0, -0.3).is_gradient());
    assert!(!tetrahedral().is_gradient());
    assert!(!sys(0.5, 2.0, 2.0, 1.0, 4.1, -0.3).is_gradient());
}

#[test]
fn rotation_identity_and_full_turn() {
    let s = sys(0.3, -0.7, 0.2, 0.9, -0.1, 0.5);
    let r0 = s.rotated(0.0);
    for (u, v) in s.coeffs().iter().zip(r0.coeffs()) {
        assert!((u - v).abs() < 1e-15);
    }
    let r2pi = s.rotated(2.0 * std::f64::consts::PI);
    for (u, v) in s.coeffs().iter().zip(r2pi.coeffs()) {
        assert!((u - v).abs() < 1e-14);
    }
}

#[test]
fn rotation_preserves_invariants() {
    let s = sys(0.3, -0.7, 0.2, 0.9, -0.1, 0.5);
    let i0 = s.invariants().unwrap();
    for theta in [0.3, 1.1, 2.9, -0.8] {
        let i1 = s.rotated(theta).invariants().unwrap();
        assert!((i0.p.value - i1.p.value).abs() <= 1e-12 * i0.p.value.abs());
        assert!((i0.r.value - i1.r.value).abs() <= 1e-12 * i0.r.value.abs());
        assert!((i0.i.value - i1.i.value).abs() <= 1e-12 * i0.i.value.abs());
    }
}

#[test]
fn rotation_infinitesimal_derivatives() {
    // d/dtheta at 0: (b+p, q+2c-2a, r-b, q-a, 2r-2p-b, -c-q)
    let s = sys(0.3, -0.7, 0.2, 0.9, -0.1, 0.5);
    let [a, b, c, p, q, r] = s.coeffs();
    let expect = [
        b + p,
        q + 2.0 * c - 2.0 * a,
        r - b,
        q - a,
        2.0 * r - 2.0 * p - b,
        -c - q,
    ];
    let h = 1e-6;
    let fwd = s.rotated(h);
    let bwd = s.rotated(-h);
    for k in 0..6 {
        let fd = (fwd.coeffs()[k] - bwd.coeffs()[k]) / (2.0 * h);
        assert!(
            (fd - expect[k]).abs() < 1e-6,
            "coefficient {} derivative {} vs {}",
            COEFF_NAMES[k],
            fd,
            expect[k]
        );
    }
}

#[test]
fn scale_covariance() {
    let s = sys(0.3, -0.7, 0.2, 0.9, -0.1, 0.5);
    let scaled = PlanarQuadratic::from_array(s.coeffs().map(|v| 2.0 * v));
    let i0 = s.invariants().unwrap();
    let i1 = scaled.invariants().unwrap();
    assert!((i1.p.value - 16.0 * i0.p.value).abs() < 1e-12 * i1.p.value.abs());
    assert!((i1.r.value - 16.0 * i0.r.value).abs() < 1e-12 * i1.r.value.abs());
    assert!((i1.i.value - 4.0 * i0.i.value).abs() < 1e-12 * i1.i.value.abs());
}

#[test]
fn reflection_invariance() {
    // y -> -y maps (a,b,c,p,q,r) -> (a,-b,c,-p,q,-r) and fixes P, R, I
    let s = sys(0.3, -0.7, 0.2, 0.9, -0.1, 0.5);
    let refl = sys(0.3, 0.7, 0.2, -0.9, -0.1, -0.5);
    let i0 = s.invariants().unwrap();
    let i1 = refl.invariants().unwrap();
    assert_eq!(i0.p.as_rational(), i1.p.as_rational());
    assert_eq!(i0.r.as_rational(), i1.r.as_rational());
    assert_eq!(i0.i.as_rational(), i1.i.as_rational());
}

#[test]
fn exact_backend_two_class_invariants() {
    use crate::exact::RadicalScalar;
    use num_bigint::BigUint;
    // a, c, q on sqrt(2); b, p, r on sqrt(3); P, R, I rational
    let rs = |n: i64, d: i64, rad: u64| {
        RadicalScalar::new(rat_from_i64(n, d), BigUint::from(rad))
    };
    let s = PlanarQuadratic::from_radicals([
        rs(-1, 1, 2), // a
        rs(2, 1, 3),  // b
        rs(1, 1, 2),  // c
        rs(1, 1, 3),  // p
        rs(2, 1, 2),  // q
        rs(-1, 1, 3), // r
    ]);
    assert!(s.is_gradient());
    let inv = s.invariants().unwrap();
    assert!(inv.certified);
    assert!(inv.p.as_rational().is_some(), "P rational for two-class input");
    assert!(inv.r.as_rational().is_some());
    assert!(inv.i.as_rational().is_some());
    // spot-check against f64 arithmetic
    let [a, b, c, p, q, r] = s.coeffs();
    let pf = 27.0 * c * c * p * p
        - 18.0 * c * p * (b - r) * (q - a)
        - 4.0 * p * (b - r).powi(3)
        - 4.0 * c * (q - a).powi(3)
        - (q - a).powi(2) * (b - r).powi(2);
    assert!((inv.p.value - pf).abs() < 1e-9 * pf.abs().max(1.0));
    let rf = (a * r - p * c).powi(2) + (c * q - b * r) * (a * q - b * p);
    assert!((inv.r.value - rf).abs() < 1e-9 * rf.abs().max(1.0));
}

#[test]
fn radial_eigenvalue_on_random_systems() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut seen = 0;
    while seen < 200 {
        let s = random_nondegenerate(&mut rng, 1e-6);
        let mu = if seen % 2 == 0 { 1.0 } else { -0.7 };
        let rep = match s.classify(mu) {
            Ok(r) => r,
            Err(_) => continue,
        };
        for p in &rep.fixed_points {
            assert!(((p.eigenvalues.0 + mu) / mu).abs() < 1e-9);
            let (fx, fy) = s.eval(mu, p.x, p.y);
            let scale = s.scale() * (p.x * p.x + p.y * p.y).max(1.0);
            assert!(fx.abs() < 1e-9 * scale && fy.abs() < 1e-9 * scale);
        }
        seen += 1;
    }
}
