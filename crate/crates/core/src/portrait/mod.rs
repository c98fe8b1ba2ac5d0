//! Phase portraits of the time-dependent planar system
//!
//! ```text
//! x' = mu x + a x^2 + b x y + c y^2
//! y' = mu y + p x^2 + q x y + r y^2
//! ```
//!
//! The straight line through the origin and any fixed point is invariant:
//! the slope z = y/x obeys z' = (y'x - x'y)/x^2, which is proportional to
//! the same cubic whose roots select the fixed-point directions, so it
//! vanishes on those lines. Trajectories therefore never cross them, every
//! fixed point is a saddle or a node, and the measured drift of an orbit
//! off an invariant line is a direct accuracy check on the integrator (the
//! tests bound it by 1e-6 over the default horizon).
//!
//! Quadratic fields blow up in finite time, so integration is adaptive
//! (embedded Dormand-Prince 5(4)) and stops at an escape radius instead of
//! only at a fixed horizon. Portraits for mu < 0 are produced from the
//! mu > 0 portrait by negating x, y and t — reversing all the arrows and
//! rotating through pi — and then spot-checked against one direct
//! integration at the negative mu.

mod render;

pub use render::{export_csv, render_portrait, PortraitStyle};

use crate::planar::{FixedPoint, PlanarError, PlanarQuadratic};

/// Local error per unit time accepted by the integrator.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Integration horizon for seeded trajectories.
pub const DEFAULT_T_END: f64 = 20.0;
/// Seed grid is DEFAULT_GRID x DEFAULT_GRID cell centres over the window.
pub const DEFAULT_GRID: usize = 12;
/// Window half-width as a multiple of the largest fixed-point radius.
pub const WINDOW_FACTOR: f64 = 2.5;
/// Escape radius as a multiple of the window half-width.
pub const ESCAPE_FACTOR: f64 = 10.0;
/// An orbit entering this distance of an equilibrium has converged.
pub const SETTLE_RADIUS: f64 = 1e-8;

const MAX_STEPS: usize = 200_000;

/// Why integration of one seed ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    /// Reached the end of the requested time span.
    SpanEnd,
    /// Left the escape radius (finite-time blowup in progress).
    Escaped,
    /// Entered the settle radius of an equilibrium.
    Settled,
    /// Step size underflowed or the step budget ran out; the polyline is
    /// truncated at the last accepted point.
    StepFailure,
}

/// One integrated orbit: points (t, x, y) with strictly monotone t
/// (increasing for forward spans, decreasing for reversed ones) and the
/// reason integration stopped.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub points: Vec<(f64, f64, f64)>,
    pub stop: StopReason,
}

impl Trajectory {
    pub fn seed(&self) -> (f64, f64) {
        (self.points[0].1, self.points[0].2)
    }

    pub fn last(&self) -> (f64, f64) {
        let p = self.points[self.points.len() - 1];
        (p.1, p.2)
    }

    pub fn duration(&self) -> f64 {
        (self.points[self.points.len() - 1].0 - self.points[0].0).abs()
    }

    /// True when the orbit hit a step failure and was cut short.
    pub fn truncated(&self) -> bool {
        self.stop == StopReason::StepFailure
    }
}

/// Stopping data for the integrator: escape radius and the equilibria
/// whose neighbourhoods end an orbit (the origin is always one of them).
#[derive(Clone, Debug)]
pub struct StopRule {
    pub escape_radius: f64,
    pub settle_radius: f64,
    pub targets: Vec<(f64, f64)>,
}

impl StopRule {
    /// Escape at `ESCAPE_FACTOR` times the default window half-width;
    /// settle at the origin and every computable fixed point.
    pub fn for_system(system: &PlanarQuadratic, mu: f64) -> StopRule {
        let fps = system.fixed_points(mu).unwrap_or_default();
        StopRule::from_fixed_points(&fps)
    }

    pub fn from_fixed_points(points: &[FixedPoint]) -> StopRule {
        let half = window_half(points, WINDOW_FACTOR);
        StopRule {
            escape_radius: ESCAPE_FACTOR * half,
            settle_radius: SETTLE_RADIUS,
            targets: std::iter::once((0.0, 0.0))
                .chain(points.iter().map(|p| (p.x, p.y)))
                .collect(),
        }
    }

    fn escaped(&self, x: f64, y: f64) -> bool {
        x * x + y * y > self.escape_radius * self.escape_radius
    }

    fn settled(&self, x: f64, y: f64) -> bool {
        let r2 = self.settle_radius * self.settle_radius;
        self.targets.iter().any(|&(tx, ty)| {
            let (dx, dy) = (x - tx, y - ty);
            dx * dx + dy * dy <= r2
        })
    }
}

/// Half-width of the plotting window: `factor` times the largest
/// fixed-point radius, or 1 when there are no nonzero fixed points.
pub fn window_half(points: &[FixedPoint], factor: f64) -> f64 {
    let rmax = points
        .iter()
        .map(|p| (p.x * p.x + p.y * p.y).sqrt())
        .fold(0.0, f64::max);
    if rmax > 0.0 {
        factor * rmax
    } else {
        1.0
    }
}

/// Integrate one orbit under the default stop rule derived from the
/// system's fixed points. `t_span` may be reversed (t1 < t0) to follow the
/// orbit backward in time; the returned times are then decreasing.
pub fn integrate(
    system: &PlanarQuadratic,
    mu: f64,
    seed: (f64, f64),
    t_span: (f64, f64),
    tol: f64,
) -> Trajectory {
    integrate_ruled(system, mu, seed, t_span, tol, &StopRule::for_system(system, mu))
}

/// Dormand-Prince 5(4) with error-per-unit-time control: a step of size h
/// is accepted when the embedded error estimate is at most `tol * |h|`.
pub fn integrate_ruled(
    system: &PlanarQuadratic,
    mu: f64,
    seed: (f64, f64),
    t_span: (f64, f64),
    tol: f64,
    rule: &StopRule,
) -> Trajectory {
    assert!(tol > 0.0, "tolerance must be positive");
    assert!(
        seed.0.is_finite() && seed.1.is_finite(),
        "seed must be finite"
    );
    let (t0, t1) = t_span;
    let dir = if t1 >= t0 { 1.0 } else { -1.0 };
    let (mut x, mut y) = seed;
    let mut t = t0;
    let mut points = vec![(t, x, y)];
    if rule.settled(x, y) {
        return Trajectory { points, stop: StopReason::Settled };
    }
    if rule.escaped(x, y) {
        return Trajectory { points, stop: StopReason::Escaped };
    }
    if t0 == t1 {
        return Trajectory { points, stop: StopReason::SpanEnd };
    }

    let span = (t1 - t0).abs();
    let mut h = dir * (1e-3 * span.max(1.0)).min(span);
    for _ in 0..MAX_STEPS {
        let mut at_end = false;
        if (t + h - t1) * dir >= 0.0 {
            h = t1 - t;
            at_end = true;
        }
        let (nx, ny, err) = dopri5_step(system, mu, x, y, h);
        if err.is_finite() && err <= tol * h.abs() {
            x = nx;
            y = ny;
            t = if at_end { t1 } else { t + h };
            if rule.escaped(x, y) {
                // the crossing point is dropped so that every stored point
                // stays inside the stopping radius
                return Trajectory { points, stop: StopReason::Escaped };
            }
            points.push((t, x, y));
            if rule.settled(x, y) {
                return Trajectory { points, stop: StopReason::Settled };
            }
            if at_end {
                return Trajectory { points, stop: StopReason::SpanEnd };
            }
        }
        // the update is symmetric in the sign of h, so a time-reversed run
        // retraces exactly the mirrored step sequence
        let scale = if !err.is_finite() {
            0.2
        } else if err > 0.0 {
            (0.9 * (tol * h.abs() / err).powf(0.25)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        h *= scale;
        if h.abs() < 1e-13 * t.abs().max(1.0) {
            return Trajectory { points, stop: StopReason::StepFailure };
        }
    }
    Trajectory { points, stop: StopReason::StepFailure }
}

/// One embedded step from (x, y): the 5th-order update and the Euclidean
/// norm of the difference against the 4th-order solution. The field is
/// autonomous, so stage times never enter.
fn dopri5_step(system: &PlanarQuadratic, mu: f64, x: f64, y: f64, h: f64) -> (f64, f64, f64) {
    let f = |u: [f64; 2]| -> [f64; 2] {
        let (dx, dy) = system.eval(mu, u[0], u[1]);
        [dx, dy]
    };
    let stage = |terms: &[(f64, [f64; 2])]| -> [f64; 2] {
        let mut out = [x, y];
        for &(c, k) in terms {
            out[0] += h * c * k[0];
            out[1] += h * c * k[1];
        }
        out
    };
    let k1 = f([x, y]);
    let k2 = f(stage(&[(1.0 / 5.0, k1)]));
    let k3 = f(stage(&[(3.0 / 40.0, k1), (9.0 / 40.0, k2)]));
    let k4 = f(stage(&[
        (44.0 / 45.0, k1),
        (-56.0 / 15.0, k2),
        (32.0 / 9.0, k3),
    ]));
    let k5 = f(stage(&[
        (19372.0 / 6561.0, k1),
        (-25360.0 / 2187.0, k2),
        (64448.0 / 6561.0, k3),
        (-212.0 / 729.0, k4),
    ]));
    let k6 = f(stage(&[
        (9017.0 / 3168.0, k1),
        (-355.0 / 33.0, k2),
        (46732.0 / 5247.0, k3),
        (49.0 / 176.0, k4),
        (-5103.0 / 18656.0, k5),
    ]));
    let y5 = stage(&[
        (35.0 / 384.0, k1),
        (500.0 / 1113.0, k3),
        (125.0 / 192.0, k4),
        (-2187.0 / 6784.0, k5),
        (11.0 / 84.0, k6),
    ]);
    let k7 = f(y5);
    let e = |i: usize| {
        h * (71.0 / 57600.0 * k1[i] - 71.0 / 16695.0 * k3[i] + 71.0 / 1920.0 * k4[i]
            - 17253.0 / 339200.0 * k5[i]
            + 22.0 / 525.0 * k6[i]
            - 1.0 / 40.0 * k7[i])
    };
    let (ex, ey) = (e(0), e(1));
    (y5[0], y5[1], (ex * ex + ey * ey).sqrt())
}

/// Plotting window, a rectangle in (x, y).
#[derive(Clone, Copy, Debug)]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Window {
    pub fn centered(half: f64) -> Window {
        assert!(half > 0.0 && half.is_finite());
        Window {
            x_min: -half,
            x_max: half,
            y_min: -half,
            y_max: half,
        }
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    /// Half-width proxy used for escape radii.
    pub fn radius(&self) -> f64 {
        0.5 * self.width().max(self.height())
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x_min && x <= self.x_max && y >= self.y_min && y <= self.y_max
    }
}

/// Seeding and accuracy knobs for `phase_portrait_with`; the defaults are
/// the module constants and are what the command line echoes.
#[derive(Clone, Debug)]
pub struct PortraitOptions {
    pub tol: f64,
    pub t_end: f64,
    pub grid: usize,
    pub window_factor: f64,
    pub escape_factor: f64,
    pub settle_radius: f64,
    /// Also seed orbits just off each fixed point along its Jacobian
    /// eigendirections (stable directions run backward), tracing the
    /// separatrices that organise the figure.
    pub separatrices: bool,
}

impl Default for PortraitOptions {
    fn default() -> Self {
        PortraitOptions {
            tol: DEFAULT_TOL,
            t_end: DEFAULT_T_END,
            grid: DEFAULT_GRID,
            window_factor: WINDOW_FACTOR,
            escape_factor: ESCAPE_FACTOR,
            settle_radius: SETTLE_RADIUS,
            separatrices: true,
        }
    }
}

/// A full portrait: integrated trajectories, the fixed points they
/// organise around, and the window they were seeded in. Every stored point
/// lies inside the escape radius and times increase strictly along each
/// polyline.
#[derive(Clone, Debug)]
pub struct TrajectorySet {
    pub system: PlanarQuadratic,
    pub mu: f64,
    pub trajectories: Vec<Trajectory>,
    pub fixed_points: Vec<FixedPoint>,
    pub window: Window,
}

pub fn phase_portrait(
    system: &PlanarQuadratic,
    mu: f64,
) -> Result<TrajectorySet, PlanarError> {
    phase_portrait_with(system, mu, &PortraitOptions::default())
}

/// Build the portrait for any nonzero mu. The flow is defined even when a
/// root direction carries no finite fixed point (R = 0: a branch escaped
/// to infinity), so rejected directions are simply not marked; only a
/// failed direction enumeration (degenerate cubic, no quadratic terms)
/// surfaces as the planar error.
pub fn phase_portrait_with(
    system: &PlanarQuadratic,
    mu: f64,
    opt: &PortraitOptions,
) -> Result<TrajectorySet, PlanarError> {
    if mu == 0.0 || !mu.is_finite() {
        return Err(PlanarError::ZeroMu);
    }
    let mu_pos = mu.abs();
    let fps = system.fixed_point_scan(mu_pos)?.points;
    let set = portrait_positive(system, mu_pos, fps, opt);
    if mu < 0.0 {
        mirror_set(system, set, opt)
    } else {
        Ok(set)
    }
}

fn portrait_positive(
    system: &PlanarQuadratic,
    mu: f64,
    fps: Vec<FixedPoint>,
    opt: &PortraitOptions,
) -> TrajectorySet {
    let half = window_half(&fps, opt.window_factor);
    let window = Window::centered(half);
    let rule = StopRule {
        escape_radius: opt.escape_factor * window.radius(),
        settle_radius: opt.settle_radius,
        targets: std::iter::once((0.0, 0.0))
            .chain(fps.iter().map(|p| (p.x, p.y)))
            .collect(),
    };
    let mut trajectories = Vec::new();
    for seed in seed_grid(&window, opt.grid) {
        trajectories.push(integrate_ruled(
            system,
            mu,
            seed,
            (0.0, opt.t_end),
            opt.tol,
            &rule,
        ));
    }
    if opt.separatrices {
        for (seed, backward) in separatrix_seeds(system, mu, &fps, half) {
            let span = if backward {
                (0.0, -opt.t_end)
            } else {
                (0.0, opt.t_end)
            };
            trajectories.push(ascending(integrate_ruled(
                system, mu, seed, span, opt.tol, &rule,
            )));
        }
    }
    TrajectorySet {
        system: system.clone(),
        mu,
        trajectories,
        fixed_points: fps,
        window,
    }
}

/// Cell centres of an n x n grid over the window, row-major from the
/// bottom-left corner; the fixed order assigns trajectory ids.
pub fn seed_grid(window: &Window, n: usize) -> Vec<(f64, f64)> {
    let mut seeds = Vec::with_capacity(n * n);
    for row in 0..n {
        for col in 0..n {
            let fx = (col as f64 + 0.5) / n as f64;
            let fy = (row as f64 + 0.5) / n as f64;
            seeds.push((
                window.x_min + fx * window.width(),
                window.y_min + fy * window.height(),
            ));
        }
    }
    seeds
}

/// Seeds just off each fixed point along its Jacobian eigendirections,
/// with a flag for backward (stable-direction) integration.
fn separatrix_seeds(
    system: &PlanarQuadratic,
    mu: f64,
    fps: &[FixedPoint],
    half: f64,
) -> Vec<((f64, f64), bool)> {
    let delta = 1e-3 * half;
    let mut out = Vec::new();
    for fp in fps {
        let j = system.jacobian(mu, fp.x, fp.y);
        for (lambda, v) in eigenpairs(j) {
            if lambda.abs() <= 1e-9 * mu.abs() {
                continue;
            }
            for s in [1.0, -1.0] {
                out.push((
                    (fp.x + s * delta * v[0], fp.y + s * delta * v[1]),
                    lambda < 0.0,
                ));
            }
        }
    }
    out
}

/// Real eigenpairs of a 2x2 matrix. Jacobians at the fixed points always
/// carry the real radial eigenvalue -mu, so the complex branch only guards
/// against misuse.
fn eigenpairs(j: [[f64; 2]; 2]) -> Vec<(f64, [f64; 2])> {
    let tr = j[0][0] + j[1][1];
    let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    let disc = tr * tr - 4.0 * det;
    if disc < 0.0 {
        return Vec::new();
    }
    let s = disc.sqrt();
    let mut out = Vec::new();
    for lambda in [0.5 * (tr - s), 0.5 * (tr + s)] {
        // both rows of J - lambda I are orthogonal to the eigenvector;
        // take the larger one
        let r1 = [j[0][0] - lambda, j[0][1]];
        let r2 = [j[1][0], j[1][1] - lambda];
        let row = if r1[0] * r1[0] + r1[1] * r1[1] >= r2[0] * r2[0] + r2[1] * r2[1] {
            r1
        } else {
            r2
        };
        let v = [row[1], -row[0]];
        let n = (v[0] * v[0] + v[1] * v[1]).sqrt();
        if n == 0.0 {
            out.push((lambda, [1.0, 0.0]));
        } else {
            out.push((lambda, [v[0] / n, v[1] / n]));
        }
    }
    out
}

/// Reorder a backward-integrated polyline to strictly increasing time
/// starting at zero; the orbit itself is unchanged and the point order
/// then agrees with the flow direction.
fn ascending(mut traj: Trajectory) -> Trajectory {
    let n = traj.points.len();
    if n > 1 && traj.points[n - 1].0 < traj.points[0].0 {
        traj.points.reverse();
        let t_min = traj.points[0].0;
        for p in &mut traj.points {
            p.0 -= t_min;
        }
    }
    traj
}

/// (x, y, t) -> (-x, -y, -t) maps orbits of +mu onto orbits of -mu, so the
/// negative-mu portrait is the transformed positive one: all arrows
/// reverse and the picture rotates through pi. One probe is re-integrated
/// directly at the negative mu to confirm the transform.
fn mirror_set(
    system: &PlanarQuadratic,
    set: TrajectorySet,
    opt: &PortraitOptions,
) -> Result<TrajectorySet, PlanarError> {
    spot_check(system, &set, opt)?;
    let fixed_points = set
        .fixed_points
        .iter()
        .map(|fp| FixedPoint {
            x: -fp.x,
            y: -fp.y,
            direction: fp.direction,
            eigenvalues: (-fp.eigenvalues.0, -fp.eigenvalues.1),
            kind: fp.kind,
        })
        .collect();
    let trajectories = set
        .trajectories
        .iter()
        .map(|tr| {
            ascending(Trajectory {
                points: tr.points.iter().map(|&(t, x, y)| (-t, -x, -y)).collect(),
                stop: tr.stop,
            })
        })
        .collect();
    Ok(TrajectorySet {
        system: set.system,
        mu: -set.mu,
        trajectories,
        fixed_points,
        window: set.window,
    })
}

/// Run a short generic probe forward at +mu, then integrate its negated
/// endpoint forward at -mu: the second orbit must retrace the first one
/// reversed and end at the negated probe seed.
fn spot_check(
    system: &PlanarQuadratic,
    set: &TrajectorySet,
    opt: &PortraitOptions,
) -> Result<(), PlanarError> {
    let half = set.window.radius();
    let seed = (0.37 * half, 0.21 * half);
    // settle targets are disabled so neither run can stop at an
    // equilibrium the other one misses
    let rule = StopRule {
        escape_radius: opt.escape_factor * half,
        settle_radius: opt.settle_radius,
        targets: Vec::new(),
    };
    let probe = integrate_ruled(system, set.mu, seed, (0.0, 0.5), opt.tol, &rule);
    let duration = probe.duration();
    if duration == 0.0 {
        return Ok(());
    }
    let (ex, ey) = probe.last();
    let replay = integrate_ruled(system, -set.mu, (-ex, -ey), (0.0, duration), opt.tol, &rule);
    let (bx, by) = replay.last();
    let miss = ((bx + seed.0).powi(2) + (by + seed.1).powi(2)).sqrt();
    if replay.stop != StopReason::SpanEnd || miss > 1e-2 * half {
        return Err(PlanarError::Inconsistent {
            case: '-',
            detail: format!(
                "mu < 0 symmetry transform failed re-integration (miss {:.3e} over {:.3e})",
                miss, duration
            ),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::Kind;

    fn case_c_fixture() -> PlanarQuadratic {
        // direction cubic -z^2 + z = 0: invariant lines y = 0, y = x and
        // the y-axis (degree drop)
        PlanarQuadratic::from_array([1.0, 0.0, 0.0, 0.0, 0.0, 1.0])
    }

    fn case_a_fixture() -> PlanarQuadratic {
        // 0 = mu x + y^2, 0 = mu y - x^2: P = 27 > 0, R = 1 > 0, one
        // saddle at (-mu, mu)
        PlanarQuadratic::from_array([0.0, 0.0, 1.0, -1.0, 0.0, 0.0])
    }

    #[test]
    fn origin_seed_stays_put() {
        let sys = case_c_fixture();
        let tr = integrate(&sys, 1.0, (0.0, 0.0), (0.0, 20.0), DEFAULT_TOL);
        assert_eq!(tr.stop, StopReason::Settled);
        assert_eq!(tr.points, vec![(0.0, 0.0, 0.0)]);
    }

    #[test]
    fn pure_linear_field_matches_exponential() {
        // all quadratic terms zero: x(t) = x0 exp(mu t)
        let sys = PlanarQuadratic::from_array([0.0; 6]);
        let tr = integrate(&sys, 1.0, (0.1, 0.0), (0.0, 3.0), DEFAULT_TOL);
        assert_eq!(tr.stop, StopReason::SpanEnd);
        for &(t, x, y) in &tr.points {
            assert!((x - 0.1 * t.exp()).abs() < 1e-6, "x({t}) = {x}");
            assert_eq!(y, 0.0);
        }
        assert_eq!(tr.points.last().unwrap().0, 3.0);
    }

    #[test]
    fn invariant_line_drift_is_bounded() {
        let sys = case_c_fixture();
        // seed on y = x flowing into the fixed point (-1, -1)
        let tr = integrate(&sys, 1.0, (-0.5, -0.5), (0.0, 20.0), DEFAULT_TOL);
        assert_eq!(tr.stop, StopReason::Settled);
        let end = tr.last();
        assert!((end.0 + 1.0).abs() < 1e-6 && (end.1 + 1.0).abs() < 1e-6);
        for &(_, x, y) in &tr.points {
            assert!((y - x).abs() / std::f64::consts::SQRT_2 <= 1e-6);
        }
        // seed on y = x escaping to infinity
        let tr = integrate(&sys, 1.0, (0.5, 0.5), (0.0, 20.0), DEFAULT_TOL);
        assert_eq!(tr.stop, StopReason::Escaped);
        for &(_, x, y) in &tr.points {
            assert!((y - x).abs() / std::f64::consts::SQRT_2 <= 1e-6);
        }
        // the y-axis is the degree-drop invariant line
        let tr = integrate(&sys, 1.0, (0.0, 0.4), (0.0, 20.0), DEFAULT_TOL);
        for &(_, x, _) in &tr.points {
            assert!(x.abs() <= 1e-6);
        }
    }

    #[test]
    fn rotated_invariant_line_drift_is_bounded() {
        // rotate the fixture so the invariant line no longer coincides
        // with a coordinate symmetry of the arithmetic
        let theta = 0.3f64;
        let sys = case_c_fixture().rotated(theta);
        let (s, c) = theta.sin_cos();
        // rotated() maps a direction d of the original axes to R^T d, so
        // the line y = x becomes the span of (c + s, c - s)
        let dir = ((c + s) / std::f64::consts::SQRT_2, (c - s) / std::f64::consts::SQRT_2);
        let normal = (-dir.1, dir.0);
        for r in [-0.5, 0.35] {
            let seedling = (r * dir.0, r * dir.1);
            let tr = integrate(&sys, 1.0, seedling, (0.0, 20.0), DEFAULT_TOL);
            assert!(tr.points.len() > 3);
            for &(_, x, y) in &tr.points {
                let drift = (x * normal.0 + y * normal.1).abs();
                assert!(drift <= 1e-6, "drift {drift} at ({x}, {y})");
            }
        }
    }

    #[test]
    fn time_reversal_mirrors_the_orbit() {
        // backward orbit at +mu from s versus forward orbit at -mu from -s:
        // states negate, times negate, step for step
        let sys = PlanarQuadratic::from_array([0.7, -0.3, 0.2, 0.4, -0.5, 0.6]);
        let s = (0.31, -0.12);
        let back = integrate(&sys, 1.0, s, (0.0, -2.0), DEFAULT_TOL);
        let fwd = integrate(&sys, -1.0, (-s.0, -s.1), (0.0, 2.0), DEFAULT_TOL);
        assert_eq!(back.points.len(), fwd.points.len());
        assert_eq!(back.stop, fwd.stop);
        for (a, b) in back.points.iter().zip(&fwd.points) {
            assert!((a.0 + b.0).abs() <= 1e-9);
            assert!((a.1 + b.1).abs() <= 1e-9);
            assert!((a.2 + b.2).abs() <= 1e-9);
        }
    }

    #[test]
    fn blowup_without_escape_is_flagged_not_fatal() {
        let sys = PlanarQuadratic::from_array([1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let rule = StopRule {
            escape_radius: 1e12,
            settle_radius: SETTLE_RADIUS,
            targets: vec![(0.0, 0.0)],
        };
        let tr = integrate_ruled(&sys, 1.0, (1.0, 0.0), (0.0, 20.0), DEFAULT_TOL, &rule);
        assert!(tr.truncated());
        // x' = x + x^2 from 1 blows up at t = ln 2
        let t_last = tr.points.last().unwrap().0;
        assert!((t_last - std::f64::consts::LN_2).abs() < 1e-3);
        for w in tr.points.windows(2) {
            assert!(w[1].0 > w[0].0);
        }
    }

    #[test]
    fn escape_keeps_every_point_inside_the_radius() {
        let sys = case_c_fixture();
        let rule = StopRule::for_system(&sys, 1.0);
        let tr = integrate_ruled(&sys, 1.0, (0.5, 0.5), (0.0, 20.0), DEFAULT_TOL, &rule);
        assert_eq!(tr.stop, StopReason::Escaped);
        for &(_, x, y) in &tr.points {
            assert!((x * x + y * y).sqrt() <= rule.escape_radius);
        }
    }

    #[test]
    fn portrait_counts_and_monotone_time() {
        let sys = case_a_fixture();
        let set = phase_portrait(&sys, 1.0).unwrap();
        assert_eq!(set.fixed_points.len(), 1);
        assert_eq!(set.fixed_points[0].kind, Kind::Saddle);
        // 12 x 12 grid plus 2 eigendirections x 2 offsets at the saddle
        assert_eq!(set.trajectories.len(), DEFAULT_GRID * DEFAULT_GRID + 4);
        let escape = ESCAPE_FACTOR * set.window.radius();
        for tr in &set.trajectories {
            for w in tr.points.windows(2) {
                assert!(w[1].0 > w[0].0, "time must increase strictly");
            }
            for &(_, x, y) in &tr.points {
                assert!((x * x + y * y).sqrt() <= escape * (1.0 + 1e-12));
            }
        }
        // window is 2.5 x the saddle radius sqrt(2)
        let r = 2.0f64.sqrt();
        assert!((set.window.x_max - 2.5 * r).abs() < 1e-12);
    }

    #[test]
    fn separatrices_reach_the_origin_connection() {
        // the stable radial direction of the saddle traces back to the
        // origin along the invariant line
        let sys = case_a_fixture();
        let set = phase_portrait(&sys, 1.0).unwrap();
        let fp = &set.fixed_points[0];
        // the backward run starts a distance 1e-3 * half off the saddle;
        // passage near the saddle is slow, so over the default horizon it
        // closes on the origin to ~1e-6 rather than the settle radius
        let half = set.window.radius();
        let connected = set.trajectories.iter().any(|tr| {
            let (sx, sy) = tr.seed();
            let (lx, ly) = tr.last();
            let near_origin = (sx * sx + sy * sy).sqrt() < 1e-4;
            let near_fp = ((lx - fp.x).powi(2) + (ly - fp.y).powi(2)).sqrt() < 0.01 * half;
            near_origin && near_fp
        });
        assert!(connected, "no heteroclinic orbit from origin to the saddle");
    }

    #[test]
    fn negative_mu_is_the_rotated_reversed_portrait() {
        let sys = case_a_fixture();
        let pos = phase_portrait(&sys, 1.0).unwrap();
        let neg = phase_portrait(&sys, -1.0).unwrap();
        assert_eq!(pos.fixed_points.len(), neg.fixed_points.len());
        for (p, n) in pos.fixed_points.iter().zip(&neg.fixed_points) {
            assert_eq!(p.x, -n.x);
            assert_eq!(p.y, -n.y);
            assert_eq!(p.kind, n.kind);
        }
        assert_eq!(pos.trajectories.len(), neg.trajectories.len());
        for tr in &neg.trajectories {
            for w in tr.points.windows(2) {
                assert!(w[1].0 > w[0].0);
            }
        }
        // a grid trajectory of the positive portrait, negated and
        // reversed, appears verbatim in the negative portrait
        let p0 = &pos.trajectories[0];
        let n0 = &neg.trajectories[0];
        assert_eq!(p0.points.len(), n0.points.len());
        let m = p0.points.len();
        for (i, &(_, x, y)) in p0.points.iter().enumerate() {
            let (_, nx, ny) = n0.points[m - 1 - i];
            assert_eq!(x, -nx);
            assert_eq!(y, -ny);
        }
    }

    #[test]
    fn zero_mu_is_rejected() {
        let sys = case_a_fixture();
        assert!(matches!(
            phase_portrait(&sys, 0.0),
            Err(PlanarError::ZeroMu)
        ));
    }
}
