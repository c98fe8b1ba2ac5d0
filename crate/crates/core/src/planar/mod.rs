//! Classification of the planar quadratic bifurcation system
//!
//! ```text
//! 0 = mu x + a x^2 + b x y + c y^2
//! 0 = mu y + p x^2 + q x y + r y^2
//! ```
//!
//! Away from degeneracies the phase portrait near the origin is determined
//! by the signs of three polynomial invariants of the coefficients:
//!
//! * `P` — minus the discriminant of the direction cubic
//!   `c z^3 + (b-r) z^2 + (a-q) z - p`; the cubic has three real projective
//!   roots iff `P < 0` and one iff `P > 0`;
//! * `R` — the resultant of the two coefficient quadratics; `R = 0` exactly
//!   when some root direction carries no finite fixed point;
//! * `I = aq + br - bp - cq` — separates the two-node from the three-saddle
//!   configuration when `P < 0` and `R < 0`.
//!
//! Both a float backend (f64 coefficients, invariants evaluated in exact
//! rational arithmetic with relative degeneracy bands) and an exact backend
//! (radical coefficients, certified signs) are supported.

mod roots;

use num_rational::BigRational;

use rand::Rng;
use serde::Serialize;

use crate::exact::{MultiRadical, RadicalScalar, Rat, Sign, SignUncertain};

pub use roots::polish_direction;

/// Numeric backend of a [`PlanarQuadratic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Backend {
    /// f64 coefficients; invariants computed in exact rational arithmetic
    /// from the (exactly representable) inputs, with relative degeneracy
    /// bands. The tag carries the decimal digits used for reporting.
    Float { precision: u32 },
    /// Coefficients are exact sums of radicals; signs certified exactly.
    ExactRadical,
}

/// Tolerances and reporting precision. All degeneracy bands are relative:
/// with `S = max |coefficient|`, `P` is flagged degenerate when
/// `|P| < eps S^4`, `R` when `|R| < eps S^4`, `I` when `|I| < eps S^2`
/// (the invariants are homogeneous of degree 4, 4, 2).
#[derive(Clone, Debug)]
pub struct Tolerances {
    /// Relative degeneracy band, default 1e-10.
    pub degeneracy_eps: f64,
    /// Residual and consistency tolerance (radial eigenvalue, fixed-point
    /// residuals), default 1e-9.
    pub residual_tol: f64,
    /// Decimal digits for reported values, default 50.
    pub precision_digits: u32,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            degeneracy_eps: 1e-10,
            residual_tol: 1e-9,
            precision_digits: 50,
        }
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum PlanarError {
    #[error("all six quadratic coefficients are zero")]
    NonQuadratic,
    #[error("mu must be nonzero")]
    ZeroMu,
    #[error("P degenerate: the direction cubic has a repeated root (within tolerance)")]
    DegenerateP,
    #[error("R degenerate: a root direction carries no finite fixed point (within tolerance)")]
    DegenerateR,
    #[error(transparent)]
    SignUncertain(#[from] SignUncertain),
    #[error("eigenvalue-derived portrait contradicts case {case}: {detail}")]
    Inconsistent { case: char, detail: String },
}

/// The six quadratic coefficients with a numeric backend.
#[derive(Clone, Debug)]
pub struct PlanarQuadratic {
    f: [f64; 6],
    exact: Option<Box<[MultiRadical; 6]>>,
    precision: u32,
}

pub const COEFF_NAMES: [&str; 6] = ["a", "b", "c", "p", "q", "r"];

impl PlanarQuadratic {
    /// Float-backend system from the six coefficients `(a, b, c, p, q, r)`.
    pub fn from_f64(a: f64, b: f64, c: f64, p: f64, q: f64, r: f64) -> Self {
        let f = [a, b, c, p, q, r];
        assert!(f.iter().all(|v| v.is_finite()), "coefficients must be finite");
        PlanarQuadratic {
            f,
            exact: None,
            precision: 50,
        }
    }

    pub fn from_array(f: [f64; 6]) -> Self {
        Self::from_f64(f[0], f[1], f[2], f[3], f[4], f[5])
    }

    /// Exact-backend system from radical coefficients.
    pub fn from_radicals(coeffs: [RadicalScalar; 6]) -> Self {
        let exact = coeffs.map(|c| MultiRadical::from_radical(&c));
        Self::from_multiradicals(exact)
    }

    /// Exact-backend system from sums of radicals.
    pub fn from_multiradicals(coeffs: [MultiRadical; 6]) -> Self {
        let f = [
            coeffs[0].to_f64(),
            coeffs[1].to_f64(),
            coeffs[2].to_f64(),
            coeffs[3].to_f64(),
            coeffs[4].to_f64(),
            coeffs[5].to_f64(),
        ];
        PlanarQuadratic {
            f,
            exact: Some(Box::new(coeffs)),
            precision: 50,
        }
    }

    pub fn with_precision(mut self, digits: u32) -> Self {
        self.precision = digits.max(30);
        self
    }

    pub fn backend(&self) -> Backend {
        if self.exact.is_some() {
            Backend::ExactRadical
        } else {
            Backend::Float {
                precision: self.precision,
            }
        }
    }

    pub fn a(&self) -> f64 {
        self.f[0]
    }
    pub fn b(&self) -> f64 {
        self.f[1]
    }
    pub fn c(&self) -> f64 {
        self.f[2]
    }
    pub fn p(&self) -> f64 {
        self.f[3]
    }
    pub fn q(&self) -> f64 {
        self.f[4]
    }
    pub fn r(&self) -> f64 {
        self.f[5]
    }

    pub fn coeffs(&self) -> [f64; 6] {
        self.f
    }

    /// Largest coefficient magnitude (the homogeneity scale `S`).
    pub fn scale(&self) -> f64 {
        self.f.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn is_zero(&self) -> bool {
        match &self.exact {
            Some(e) => e.iter().all(|c| c.is_zero()),
            None => self.f.iter().all(|v| *v == 0.0),
        }
    }

    /// Coefficient as an exact sum of radicals (float values convert
    /// exactly: every finite f64 is rational).
    pub fn coeff_exact(&self, i: usize) -> MultiRadical {
        match &self.exact {
            Some(e) => e[i].clone(),
            None => MultiRadical::from_rat(
                BigRational::from_float(self.f[i]).expect("finite coefficient"),
            ),
        }
    }

    pub fn exact_coeffs(&self) -> Option<&[MultiRadical; 6]> {
        self.exact.as_deref()
    }

    /// Decimal rendering of coefficient `i` at the configured precision.
    pub fn coeff_decimal(&self, i: usize) -> String {
        self.coeff_exact(i).to_decimal(self.precision as usize)
    }

    /// `b = 2p` and `q = 2c`: the constraints satisfied by gradient fields.
    /// Exact backend compares exactly; float backend uses a relative band.
    pub fn is_gradient(&self) -> bool {
        match &self.exact {
            Some(e) => {
                let two = crate::exact::rat_from_i64(2, 1);
                e[1].sub(&e[3].scale(&two)).is_zero() && e[4].sub(&e[2].scale(&two)).is_zero()
            }
            None => {
                let s = self.scale().max(f64::MIN_POSITIVE);
                (self.b() - 2.0 * self.p()).abs() <= 1e-10 * s
                    && (self.q() - 2.0 * self.c()).abs() <= 1e-10 * s
            }
        }
    }

    /// The same vector field expressed in axes rotated by `theta`:
    /// `Q'(w) = R^T Q(R w)` with `R` the rotation by `theta`. Always returns
    /// a float-backend system.
    pub fn rotated(&self, theta: f64) -> PlanarQuadratic {
        let (s, co) = theta.sin_cos();
        let [a, b, c, p, q, r] = self.f;
        // coefficients of Q1(Rw), Q2(Rw) on x^2, xy, y^2
        let a1 = a * co * co + b * co * s + c * s * s;
        let b1 = -2.0 * a * co * s + b * (co * co - s * s) + 2.0 * c * co * s;
        let c1 = a * s * s - b * co * s + c * co * co;
        let a2 = p * co * co + q * co * s + r * s * s;
        let b2 = -2.0 * p * co * s + q * (co * co - s * s) + 2.0 * r * co * s;
        let c2 = p * s * s - q * co * s + r * co * co;
        PlanarQuadratic::from_f64(
            co * a1 + s * a2,
            co * b1 + s * b2,
            co * c1 + s * c2,
            -s * a1 + co * a2,
            -s * b1 + co * b2,
            -s * c1 + co * c2,
        )
        .with_precision(self.precision)
    }

    /// Right-hand side of the time-dependent system at `(x, y)`.
    pub fn eval(&self, mu: f64, x: f64, y: f64) -> (f64, f64) {
        let [a, b, c, p, q, r] = self.f;
        (
            mu * x + a * x * x + b * x * y + c * y * y,
            mu * y + p * x * x + q * x * y + r * y * y,
        )
    }

    /// Jacobian of the right-hand side at `(x, y)`, row-major.
    pub fn jacobian(&self, mu: f64, x: f64, y: f64) -> [[f64; 2]; 2] {
        let [a, b, c, p, q, r] = self.f;
        [
            [mu + 2.0 * a * x + b * y, b * x + 2.0 * c * y],
            [2.0 * p * x + q * y, mu + 2.0 * r * y + q * x],
        ]
    }

    pub fn invariants(&self) -> Result<InvariantTriple, PlanarError> {
        self.invariants_with(&Tolerances::default())
    }

    /// P, R, I with certified signs and degeneracy flags.
    pub fn invariants_with(&self, tol: &Tolerances) -> Result<InvariantTriple, PlanarError> {
        if self.is_zero() {
            return Err(PlanarError::NonQuadratic);
        }
        let g = |i: usize| self.coeff_exact(i);
        let (a, b, c) = (g(0), g(1), g(2));
        let (p, q, r) = (g(3), g(4), g(5));
        let d1 = b.sub(&r); // b - r
        let d2 = q.sub(&a); // q - a
        let cp = c.mul(&p);
        let k = |n: i64| crate::exact::rat_from_i64(n, 1);
        // P = 27 c^2 p^2 - 18 c p (b-r)(q-a) - 4 p (b-r)^3 - 4 c (q-a)^3
        //     - (q-a)^2 (b-r)^2
        let p_val = cp
            .square()
            .scale(&k(27))
            .sub(&cp.mul(&d1).mul(&d2).scale(&k(18)))
            .sub(&p.mul(&d1.pow(3)).scale(&k(4)))
            .sub(&c.mul(&d2.pow(3)).scale(&k(4)))
            .sub(&d1.square().mul(&d2.square()));
        // R = (ar - pc)^2 + (cq - br)(aq - bp)
        let r_val = a
            .mul(&r)
            .sub(&p.mul(&c))
            .square()
            .add(&c.mul(&q).sub(&b.mul(&r)).mul(&a.mul(&q).sub(&b.mul(&p))));
        // I = aq + br - bp - cq
        let i_val = a
            .mul(&q)
            .add(&b.mul(&r))
            .sub(&b.mul(&p))
            .sub(&c.mul(&q));

        let s = self.scale();
        let band4 = tol.degeneracy_eps * s.powi(4);
        let band2 = tol.degeneracy_eps * s.powi(2);
        let sig = tol.precision_digits as usize;
        let scalar = |v: MultiRadical, band: f64| -> Result<ScalarValue, SignUncertain> {
            let sign = v.certified_sign()?;
            let value = v.to_f64();
            Ok(ScalarValue {
                value,
                decimal: v.to_decimal(sig),
                sign,
                degenerate: sign == Sign::Zero || value.abs() < band,
                exact: v,
            })
        };
        let p_s = scalar(p_val, band4)?;
        let r_s = scalar(r_val, band4)?;
        let i_s = scalar(i_val, band2)?;
        // Certified: each reported sign is exact. Float-backend values inside
        // a band but not exactly zero are only as trustworthy as the inputs.
        let uncertain = |v: &ScalarValue| v.degenerate && v.sign != Sign::Zero;
        let certified =
            self.exact.is_some() || !(uncertain(&p_s) || uncertain(&r_s) || uncertain(&i_s));
        Ok(InvariantTriple {
            p: p_s,
            r: r_s,
            i: i_s,
            certified,
        })
    }

    pub fn direction_roots(&self) -> Result<Vec<Direction>, PlanarError> {
        self.direction_roots_with(&Tolerances::default())
    }

    /// All real projective roots of the direction cubic
    /// `c z^3 + (b-r) z^2 + (a-q) z - p`, including the root at infinity on
    /// degree drop (`c = 0`). Root selection is driven by the certified sign
    /// of `P`, never by floating-point root counting.
    pub fn direction_roots_with(&self, tol: &Tolerances) -> Result<Vec<Direction>, PlanarError> {
        let inv = self.invariants_with(tol)?;
        self.direction_roots_inner(&inv)
    }

    fn direction_roots_inner(&self, inv: &InvariantTriple) -> Result<Vec<Direction>, PlanarError> {
        if inv.p.degenerate {
            return Err(PlanarError::DegenerateP);
        }
        let [a, b, c, p, q, r] = self.f;
        let c3 = c;
        let c2 = b - r;
        let c1 = a - q;
        let c0 = -p;
        let c_is_zero = self.coeff_exact(2).is_zero();
        let mut dirs: Vec<Direction> = if !c_is_zero {
            match inv.p.sign {
                Sign::Pos => vec![Direction::finite(roots::cubic_single_root(c3, c2, c1, c0))],
                Sign::Neg => roots::cubic_three_roots(c3, c2, c1, c0)
                    .into_iter()
                    .map(Direction::finite)
                    .collect(),
                Sign::Zero => return Err(PlanarError::DegenerateP),
            }
        } else {
            // degree drop: the direction at infinity is always a root, and
            // P = -(b-r)^2 [ (q-a)^2 + 4 p (b-r) ] ties the remaining count
            // to sign(P) exactly as in the cubic case.
            let mut v = match inv.p.sign {
                Sign::Pos => vec![],
                Sign::Neg => roots::quadratic_roots(c2, c1, c0)
                    .ok_or(PlanarError::DegenerateP)?
                    .into_iter()
                    .map(Direction::finite)
                    .collect(),
                Sign::Zero => return Err(PlanarError::DegenerateP),
            };
            v.push(Direction::INFINITY);
            v
        };
        for d in dirs.iter_mut() {
            *d = roots::polish_direction(*d, c3, c2, c1, c0);
        }
        dirs.sort_by(|u, v| u.sort_key().partial_cmp(&v.sort_key()).unwrap());
        Ok(dirs)
    }

    pub fn fixed_point_scan(&self, mu: f64) -> Result<FixedPointScan, PlanarError> {
        self.fixed_point_scan_with(mu, &Tolerances::default())
    }

    /// Fixed points for every root direction, with directions whose
    /// back-substitution denominator vanishes reported as rejected instead
    /// of silently dropped (those signal `R = 0`: a solution escaped to
    /// infinity).
    pub fn fixed_point_scan_with(
        &self,
        mu: f64,
        tol: &Tolerances,
    ) -> Result<FixedPointScan, PlanarError> {
        if mu == 0.0 || !mu.is_finite() {
            return Err(PlanarError::ZeroMu);
        }
        let inv = self.invariants_with(tol)?;
        let dirs = self.direction_roots_inner(&inv)?;
        Ok(self.scan_directions(mu, &dirs, tol))
    }

    fn scan_directions(&self, mu: f64, dirs: &[Direction], tol: &Tolerances) -> FixedPointScan {
        let [a, b, c, _p, _q, r] = self.f;
        let mut points = Vec::new();
        let mut rejected = Vec::new();
        for &d in dirs {
            // Finite direction z: x = -mu / (a + b z + c z^2), y = z x.
            // Infinite direction: (0, -mu / r). Rejection when the
            // denominator is negligible relative to its own ingredients.
            let (xy, denom, denom_scale) = match d.z() {
                Some(z) => {
                    let denom = a + b * z + c * z * z;
                    let ds = a.abs().max((b * z).abs()).max((c * z * z).abs());
                    let x = -mu / denom;
                    ((x, z * x), denom, ds)
                }
                None => ((0.0, -mu / r), r, self.scale()),
            };
            if denom.abs() <= tol.residual_tol * denom_scale.max(f64::MIN_POSITIVE) {
                rejected.push(d);
                continue;
            }
            let (x, y) = xy;
            let j = self.jacobian(mu, x, y);
            let (l1, l2) = eig2(j);
            // order as (radial, transverse): one eigenvalue is always -mu
            let (radial, other) = if (l1 + mu).abs() <= (l2 + mu).abs() {
                (l1, l2)
            } else {
                (l2, l1)
            };
            let kind = if radial * other < 0.0 {
                Kind::Saddle
            } else {
                Kind::Node
            };
            points.push(FixedPoint {
                x,
                y,
                direction: d,
                eigenvalues: (radial, other),
                kind,
            });
        }
        FixedPointScan { points, rejected }
    }

    pub fn fixed_points(&self, mu: f64) -> Result<Vec<FixedPoint>, PlanarError> {
        self.fixed_points_with(mu, &Tolerances::default())
    }

    /// Fixed points under the precondition `R != 0`; any rejected direction
    /// is an `R` degeneracy and errors.
    pub fn fixed_points_with(
        &self,
        mu: f64,
        tol: &Tolerances,
    ) -> Result<Vec<FixedPoint>, PlanarError> {
        let scan = self.fixed_point_scan_with(mu, tol)?;
        if !scan.rejected.is_empty() {
            return Err(PlanarError::DegenerateR);
        }
        Ok(scan.points)
    }

    pub fn classify(&self, mu: f64) -> Result<ClassificationReport, PlanarError> {
        self.classify_with(mu, &Tolerances::default())
    }

    /// Full classification per the five-case theorem. Degenerate inputs
    /// produce a report with a `Degenerate` case (and whatever fixed points
    /// survive back-substitution) rather than an error, so callers can show
    /// partial results; genuinely invalid input errors.
    pub fn classify_with(&self, mu: f64, tol: &Tolerances) -> Result<ClassificationReport, PlanarError> {
        if mu == 0.0 || !mu.is_finite() {
            return Err(PlanarError::ZeroMu);
        }
        let inv = self.invariants_with(tol)?;
        // the cubic vanishes identically iff c = b-r = q-a = p = 0; fixed
        // points then form a line and no direction enumeration is possible
        let all_on_axis = self.coeff_exact(2).is_zero()
            && self.coeff_exact(1).sub(&self.coeff_exact(5)).is_zero()
            && self.coeff_exact(4).sub(&self.coeff_exact(0)).is_zero()
            && self.coeff_exact(3).is_zero();
        if inv.p.degenerate || inv.r.degenerate || all_on_axis {
            let scan = if !inv.p.degenerate && !all_on_axis {
                let dirs = self.direction_roots_inner(&inv)?;
                self.scan_directions(mu, &dirs, tol)
            } else {
                FixedPointScan::default()
            };
            return Ok(ClassificationReport {
                case: Case::Degenerate(DegenerateFlags {
                    p: inv.p.degenerate,
                    r: inv.r.degenerate,
                    non_quadratic: false,
                    all_on_axis,
                }),
                invariants: inv,
                fixed_points: scan.points,
                rejected: scan.rejected,
                mu,
            });
        }

        let case = match (inv.p.sign, inv.r.sign, inv.i.sign) {
            (Sign::Pos, Sign::Pos, _) => Case::A,
            (Sign::Pos, Sign::Neg, _) => Case::B,
            (Sign::Neg, Sign::Pos, _) => Case::C,
            (Sign::Neg, Sign::Neg, Sign::Pos) => Case::D,
            (Sign::Neg, Sign::Neg, Sign::Neg) => Case::E,
            (Sign::Neg, Sign::Neg, Sign::Zero) => {
                // I = 0 forces R >= 0; this combination cannot arise from
                // exact signs
                return Err(PlanarError::Inconsistent {
                    case: '?',
                    detail: "I = 0 with R < 0".into(),
                });
            }
            _ => unreachable!("zero signs are caught by the degeneracy flags"),
        };

        let dirs = self.direction_roots_inner(&inv)?;
        let scan = self.scan_directions(mu, &dirs, tol);
        if !scan.rejected.is_empty() {
            return Err(PlanarError::DegenerateR);
        }
        self.check_consistency(&case, &scan.points, mu, tol)?;
        Ok(ClassificationReport {
            case,
            invariants: inv,
            fixed_points: scan.points,
            rejected: scan.rejected,
            mu,
        })
    }

    /// The theorem's saddle/node counts per case, asserted against the
    /// eigenvalue-derived kinds. A mismatch is an implementation bug, not a
    /// property of the input.
    fn check_consistency(
        &self,
        case: &Case,
        points: &[FixedPoint],
        mu: f64,
        tol: &Tolerances,
    ) -> Result<(), PlanarError> {
        let label = case.label();
        let saddles = points.iter().filter(|p| p.kind == Kind::Saddle).count();
        let nodes = points.iter().filter(|p| p.kind == Kind::Node).count();
        let expect = match case {
            Case::A => (1usize, 0usize),
            Case::B => (0, 1),
            Case::C => (2, 1),
            Case::D => (1, 2),
            Case::E => (3, 0),
            Case::Degenerate(_) => return Ok(()),
        };
        if (saddles, nodes) != expect {
            return Err(PlanarError::Inconsistent {
                case: label,
                detail: format!(
                    "expected {} saddles + {} nodes, eigenvalues give {} + {}",
                    expect.0, expect.1, saddles, nodes
                ),
            });
        }
        for pt in points {
            let rel = (pt.eigenvalues.0 + mu).abs() / mu.abs();
            if rel > tol.residual_tol {
                return Err(PlanarError::Inconsistent {
                    case: label,
                    detail: format!(
                        "radial eigenvalue {} deviates from -mu by {:.2e} (relative)",
                        pt.eigenvalues.0, rel
                    ),
                });
            }
        }
        Ok(())
    }
}

/// Eigenvalues of a real 2x2 matrix with real spectrum (the fixed-point
/// Jacobians always have the radial eigenvalue `-mu`); a marginally negative
/// discriminant from roundoff is clamped.
fn eig2(j: [[f64; 2]; 2]) -> (f64, f64) {
    let tr = j[0][0] + j[1][1];
    let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    let disc = (tr * tr * 0.25 - det).max(0.0);
    let s = disc.sqrt();
    (tr * 0.5 - s, tr * 0.5 + s)
}

/// Point on the real projective line: `z = y/x = u/w`, with `w = 0` the
/// direction at infinity (the y-axis). Normalized so `max(|u|, |w|) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Direction {
    pub u: f64,
    pub w: f64,
}

impl Direction {
    pub const INFINITY: Direction = Direction { u: 1.0, w: 0.0 };

    pub fn finite(z: f64) -> Direction {
        if z.abs() <= 1.0 {
            Direction { u: z, w: 1.0 }
        } else {
            Direction {
                u: z.signum(),
                w: 1.0 / z.abs(),
            }
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.w == 0.0
    }

    /// The slope `z = y/x`, `None` for the direction at infinity.
    pub fn z(&self) -> Option<f64> {
        if self.w == 0.0 {
            None
        } else {
            Some(self.u / self.w)
        }
    }

    fn sort_key(&self) -> f64 {
        match self.z() {
            Some(z) => z.atan(),
            None => std::f64::consts::FRAC_PI_2, // after every finite slope
        }
    }
}

/// Stability type of a hyperbolic planar equilibrium.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Saddle,
    Node,
}

/// A bifurcating equilibrium with its direction, eigenvalues (radial one
/// first — it always equals `-mu`), and stability type.
#[derive(Clone, Debug, Serialize)]
pub struct FixedPoint {
    pub x: f64,
    pub y: f64,
    pub direction: Direction,
    pub eigenvalues: (f64, f64),
    pub kind: Kind,
}

/// Result of enumerating fixed points over all root directions.
#[derive(Clone, Debug, Default)]
pub struct FixedPointScan {
    pub points: Vec<FixedPoint>,
    /// Root directions whose denominator vanished (solutions at infinity).
    pub rejected: Vec<Direction>,
}

/// One invariant: numeric value, decimal rendering, certified sign, and
/// whether it sits inside the degeneracy band. `exact` retains the full
/// precision value.
#[derive(Clone, Debug)]
pub struct ScalarValue {
    pub value: f64,
    pub decimal: String,
    pub sign: Sign,
    pub degenerate: bool,
    pub exact: MultiRadical,
}

impl ScalarValue {
    /// Exact rational value when the scalar is rational (always true for
    /// the float backend).
    pub fn as_rational(&self) -> Option<Rat> {
        self.exact.as_rational()
    }
}

/// The triple (P, R, I) with certification status.
#[derive(Clone, Debug)]
pub struct InvariantTriple {
    pub p: ScalarValue,
    pub r: ScalarValue,
    pub i: ScalarValue,
    pub certified: bool,
}

/// Degeneracies that preclude one of the five generic cases.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DegenerateFlags {
    pub p: bool,
    pub r: bool,
    pub non_quadratic: bool,
    /// Direction cubic vanishes identically (fixed points form a line).
    pub all_on_axis: bool,
}

/// The five generic phase portraits, or the degeneracy that was hit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Case {
    /// P>0, R>0: one fixed point, a saddle.
    A,
    /// P>0, R<0: one fixed point, a node.
    B,
    /// P<0, R>0: three fixed points, one node and two saddles.
    C,
    /// P<0, R<0, I>0: three fixed points, two nodes and one saddle.
    D,
    /// P<0, R<0, I<0: three fixed points, all saddles.
    E,
    Degenerate(DegenerateFlags),
}

impl Case {
    pub fn label(&self) -> char {
        match self {
            Case::A => 'A',
            Case::B => 'B',
            Case::C => 'C',
            Case::D => 'D',
            Case::E => 'E',
            Case::Degenerate(_) => '-',
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, Case::Degenerate(_))
    }

    /// (saddles, nodes) for the generic cases.
    pub fn expected_counts(&self) -> Option<(usize, usize)> {
        match self {
            Case::A => Some((1, 0)),
            Case::B => Some((0, 1)),
            Case::C => Some((2, 1)),
            Case::D => Some((1, 2)),
            Case::E => Some((3, 0)),
            Case::Degenerate(_) => None,
        }
    }
}

/// Classification output: case, invariants, and the fixed points that back
/// it up.
#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub case: Case,
    pub invariants: InvariantTriple,
    pub fixed_points: Vec<FixedPoint>,
    pub rejected: Vec<Direction>,
    pub mu: f64,
}

impl ClassificationReport {
    /// Number of branches of nonzero solutions.
    pub fn branches(&self) -> usize {
        self.fixed_points.len()
    }
}

/// Uniform sample from [-1, 1]^6 (float backend).
pub fn random_system<R: Rng + ?Sized>(rng: &mut R) -> PlanarQuadratic {
    let mut f = [0.0f64; 6];
    for v in f.iter_mut() {
        *v = rng.gen_range(-1.0..=1.0);
    }
    PlanarQuadratic::from_array(f)
}

/// Uniform sample rejected until P, R, I all sit outside a widened
/// degeneracy band, so downstream float comparisons have headroom.
pub fn random_nondegenerate<R: Rng + ?Sized>(rng: &mut R, margin: f64) -> PlanarQuadratic {
    loop {
        let sys = random_system(rng);
        if let Ok(inv) = sys.invariants() {
            let s = sys.scale();
            if inv.p.value.abs() > margin * s.powi(4)
                && inv.r.value.abs() > margin * s.powi(4)
                && inv.i.value.abs() > margin * s.powi(2)
            {
                return sys;
            }
        }
    }
}

#[cfg(test)]
mod tests;
