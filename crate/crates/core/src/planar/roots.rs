//! Float root finding for the direction cubic.
//!
//! The number of real roots is never inferred from floating point: callers
//! pass through the certified sign of `P` and pick `cubic_single_root`
//! (one real root) or `cubic_three_roots` (three distinct real roots).
//! Roots are Newton-polished in projective coordinates: slopes beyond unit
//! magnitude are refined on the reversed polynomial in `w = 1/z`, so steep
//! directions lose no accuracy.

use super::Direction;

fn eval(c3: f64, c2: f64, c1: f64, c0: f64, z: f64) -> (f64, f64) {
    // Horner value and derivative
    let v = ((c3 * z + c2) * z + c1) * z + c0;
    let d = (3.0 * c3 * z + 2.0 * c2) * z + c1;
    (v, d)
}

fn newton(mut z: f64, c3: f64, c2: f64, c1: f64, c0: f64) -> f64 {
    for _ in 0..4 {
        let (v, d) = eval(c3, c2, c1, c0, z);
        if d == 0.0 || !d.is_finite() || !v.is_finite() {
            break;
        }
        let dz = v / d;
        z -= dz;
        if dz.abs() <= 1e-18 * z.abs().max(1.0) {
            break;
        }
    }
    z
}

/// Newton-polish a direction against `c3 z^3 + c2 z^2 + c1 z + c0`.
pub fn polish_direction(d: Direction, c3: f64, c2: f64, c1: f64, c0: f64) -> Direction {
    match d.z() {
        None => d, // exact by construction (only emitted when c3 = 0)
        Some(z) => {
            if z.abs() <= 1.0 {
                Direction::finite(newton(z, c3, c2, c1, c0))
            } else {
                // reversed polynomial: roots at w = 1/z
                let w = newton(1.0 / z, c0, c1, c2, c3);
                if w == 0.0 {
                    Direction::INFINITY
                } else if w.abs() <= 1.0 {
                    Direction {
                        u: w.signum(),
                        w: w.abs(),
                    }
                } else {
                    Direction::finite(1.0 / w)
                }
            }
        }
    }
}

/// Both roots of `c2 z^2 + c1 z + c0` with positive discriminant, by the
/// cancellation-free quadratic formula. `None` if the discriminant is not
/// positive (a degeneracy the caller treats as such).
pub fn quadratic_roots(c2: f64, c1: f64, c0: f64) -> Option<[f64; 2]> {
    let disc = c1 * c1 - 4.0 * c2 * c0;
    if disc <= 0.0 {
        return None;
    }
    let s = disc.sqrt();
    let qq = -0.5 * (c1 + s.copysign(if c1 == 0.0 { 1.0 } else { c1 }));
    if qq == 0.0 {
        // c1 = 0 and c0 = 0: roots 0 and -c1/c2 = 0 — degenerate
        return None;
    }
    Some([qq / c2, c0 / qq])
}

fn depress(c3: f64, c2: f64, c1: f64, c0: f64) -> (f64, f64, f64) {
    // z = t - B/3 turns z^3 + B z^2 + C z + D into t^3 + pt + q
    let b = c2 / c3;
    let c = c1 / c3;
    let d = c0 / c3;
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    (p, q, b / 3.0)
}

/// The single real root of a cubic known (by certified sign) to have
/// exactly one.
pub fn cubic_single_root(c3: f64, c2: f64, c1: f64, c0: f64) -> f64 {
    debug_assert!(c3 != 0.0);
    let (p, q, shift) = depress(c3, c2, c1, c0);
    let disc = 0.25 * q * q + p * p * p / 27.0; // > 0 for one real root
    let t = if disc <= 0.0 {
        // flushed to zero by roundoff right at the boundary; fall back to
        // the triple-angle branch's central root
        0.0
    } else {
        let s = disc.sqrt();
        // pick the cube root that avoids cancellation, use u v = -p/3 for
        // the partner
        let w = -0.5 * q - s.copysign(if q == 0.0 { 1.0 } else { q });
        if w == 0.0 {
            0.0
        } else {
            let u = w.cbrt();
            u - p / (3.0 * u)
        }
    };
    newton(t - shift, c3, c2, c1, c0)
}

/// All three real roots of a cubic known (by certified sign) to have three
/// distinct ones, via the trigonometric form.
pub fn cubic_three_roots(c3: f64, c2: f64, c1: f64, c0: f64) -> [f64; 3] {
    debug_assert!(c3 != 0.0);
    let (p, q, shift) = depress(c3, c2, c1, c0);
    // three real roots force p < 0
    let pp = p.min(-f64::MIN_POSITIVE);
    let m = 2.0 * (-pp / 3.0).sqrt();
    let arg = (3.0 * q / (pp * m)).clamp(-1.0, 1.0);
    let phi = arg.acos();
    let mut out = [0.0f64; 3];
    for (k, slot) in out.iter_mut().enumerate() {
        let t = m * ((phi - 2.0 * std::f64::consts::PI * k as f64) / 3.0).cos();
        *slot = newton(t - shift, c3, c2, c1, c0);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_stable() {
        // z^2 - 1e8 z + 1: naive formula loses the small root
        let r = quadratic_roots(1.0, -1e8, 1.0).unwrap();
        let small = r[0].min(r[1]);
        assert!((small - 1e-8).abs() < 1e-20);
    }

    #[test]
    fn cubic_one_root() {
        // (z - 2)(z^2 + z + 1) = z^3 - z^2 - z - 2
        let z = cubic_single_root(1.0, -1.0, -1.0, -2.0);
        assert!((z - 2.0).abs() < 1e-14);
    }

    #[test]
    fn cubic_three() {
        // (z+1) z (z-3) = z^3 - 2z^2 - 3z
        let mut r = cubic_three_roots(1.0, -2.0, -3.0, 0.0);
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((r[0] + 1.0).abs() < 1e-14);
        assert!(r[1].abs() < 1e-14);
        assert!((r[2] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn steep_root_polish() {
        // root at z = 1e9: (z - 1e9)(z^2 + 1) scaled
        let c3 = 1.0;
        let c2 = -1e9;
        let c1 = 1.0;
        let c0 = -1e9;
        let d = polish_direction(Direction::finite(1.2e9), c3, c2, c1, c0);
        let z = d.z().unwrap();
        assert!((z - 1e9).abs() / 1e9 < 1e-14);
    }
}
