//! Floating-point trajectory integration with dense output and transversal
//! section event detection.
//!
//! The state is (x, y, w) with w(t) the running divergence integral along
//! the orbit; the whole triple gets the integrator's dense output, so the
//! cycle layer can read exp-integrals off the interpolant directly.

pub mod rk;

use crate::error::FlowError;
use crate::scalar::Real;
use crate::system::{FieldEval, PolyVectorField};
use crate::{rat_to_f64, Rat};

pub const DIM: usize = 3;

/// Required crossing orientation for a section: sign of n . X at the
/// crossing, where n is the perp map (x, y) -> (y, -x) applied to the
/// section direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Positive,
    Negative,
}

/// Transversal section: a parameterized segment anchor + r * direction,
/// r in (r_min, r_max), with a required crossing orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub anchor: (Rat, Rat),
    pub direction: (Rat, Rat),
    pub r_min: f64,
    pub r_max: f64,
    pub orientation: Orientation,
}

impl Section {
    /// The positive x-axis from the origin, crossed downward (y' < 0):
    /// fits the clockwise benchmark systems.
    pub fn positive_x_axis() -> Self {
        use num_traits::{One, Zero};
        Section {
            anchor: (Rat::zero(), Rat::zero()),
            direction: (Rat::one(), Rat::zero()),
            r_min: 1e-9,
            r_max: 1e9,
            orientation: Orientation::Positive,
        }
    }

    /// The positive x-axis crossed upward (y' > 0): for counterclockwise
    /// flows like the circle system.
    pub fn positive_x_axis_ccw() -> Self {
        Section { orientation: Orientation::Negative, ..Self::positive_x_axis() }
    }

    /// Horizontal ray { (a + r, b) : r > 0 } crossed downward.
    pub fn horizontal_ray(anchor: (Rat, Rat)) -> Self {
        use num_traits::{One, Zero};
        Section {
            anchor,
            direction: (Rat::one(), Rat::zero()),
            r_min: 1e-9,
            r_max: 1e9,
            orientation: Orientation::Positive,
        }
    }

    pub fn geometry<R: Real>(&self) -> SectionGeom<R> {
        let f = |r: &Rat| R::from_f64(rat_to_f64(r)).unwrap();
        let dx = f(&self.direction.0);
        let dy = f(&self.direction.1);
        let norm2 = dx * dx + dy * dy;
        SectionGeom {
            ax: f(&self.anchor.0),
            ay: f(&self.anchor.1),
            dx,
            dy,
            // n = perp(direction) = (dy, -dx)
            nx: dy,
            ny: -dx,
            inv_norm2: R::one() / norm2,
            sign: match self.orientation {
                Orientation::Positive => R::one(),
                Orientation::Negative => -R::one(),
            },
        }
    }

    pub fn point_at(&self, r: f64) -> (f64, f64) {
        let g: SectionGeom<f64> = self.geometry();
        (g.ax + r * g.dx, g.ay + r * g.dy)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SectionGeom<R: Real> {
    pub ax: R,
    pub ay: R,
    pub dx: R,
    pub dy: R,
    pub nx: R,
    pub ny: R,
    pub inv_norm2: R,
    pub sign: R,
}

impl<R: Real> SectionGeom<R> {
    /// Signed distance functional g(z) = n . (z - anchor).
    #[inline]
    pub fn gap(&self, x: R, y: R) -> R {
        self.nx * (x - self.ax) + self.ny * (y - self.ay)
    }
    /// Section parameter of (the projection of) a point.
    #[inline]
    pub fn param(&self, x: R, y: R) -> R {
        (self.dx * (x - self.ax) + self.dy * (y - self.ay)) * self.inv_norm2
    }
}

/// One accepted step with its dense-output polynomial: for theta in [0, 1],
/// u(theta) = y0 + c_1 theta + ... + c_6 theta^6 componentwise.
#[derive(Debug, Clone)]
pub struct DenseStep<R: Real> {
    pub t0: R,
    pub h: R,
    pub y0: [R; DIM],
    coeffs: [[R; DIM]; 6],
}

impl<R: Real> DenseStep<R> {
    #[inline]
    pub fn eval(&self, theta: R) -> [R; DIM] {
        let mut acc = [R::zero(); DIM];
        for j in (0..6).rev() {
            for d in 0..DIM {
                acc[d] = acc[d] * theta + self.coeffs[j][d];
            }
        }
        let mut out = self.y0;
        for d in 0..DIM {
            out[d] = out[d] + theta * acc[d];
        }
        out
    }

    /// du/dt at theta (chain rule through theta = (t - t0)/h).
    #[inline]
    pub fn eval_deriv(&self, theta: R) -> [R; DIM] {
        let mut acc = [R::zero(); DIM];
        for j in (0..6).rev() {
            let f = R::from_usize(j + 1).unwrap();
            for d in 0..DIM {
                acc[d] = acc[d] * theta + f * self.coeffs[j][d];
            }
        }
        for a in acc.iter_mut() {
            *a = *a / self.h;
        }
        acc
    }

    pub fn t_end(&self) -> R {
        self.t0 + self.h
    }
}

/// Dense trajectory over [t_start, t_end] (t monotone increasing).
#[derive(Debug, Clone)]
pub struct Trajectory<R: Real> {
    steps: Vec<DenseStep<R>>,
    pub rtol: R,
    pub final_state: [R; DIM],
    pub rhs_evals: usize,
}

impl<R: Real> Trajectory<R> {
    pub fn t_start(&self) -> R {
        self.steps.first().map(|s| s.t0).unwrap_or_else(R::zero)
    }

    pub fn t_end(&self) -> R {
        self.steps.last().map(|s| s.t_end()).unwrap_or_else(R::zero)
    }

    pub fn steps(&self) -> &[DenseStep<R>] {
        &self.steps
    }

    fn locate(&self, t: R) -> &DenseStep<R> {
        let mut lo = 0usize;
        let mut hi = self.steps.len();
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.steps[mid].t0 <= t {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        &self.steps[lo]
    }

    /// Interpolated full state (x, y, divergence integral).
    pub fn state(&self, t: R) -> [R; DIM] {
        let s = self.locate(t);
        s.eval((t - s.t0) / s.h)
    }

    /// Interpolated time derivative of the full state.
    pub fn deriv(&self, t: R) -> [R; DIM] {
        let s = self.locate(t);
        s.eval_deriv((t - s.t0) / s.h)
    }

    pub fn position(&self, t: R) -> (R, R) {
        let s = self.state(t);
        (s[0], s[1])
    }

    /// Cumulative divergence integral component.
    pub fn div_integral(&self, t: R) -> R {
        self.state(t)[2]
    }
}

/// Adaptive integrator configuration.
#[derive(Debug, Clone)]
pub struct Integrator<R: Real> {
    pub rtol: R,
    pub atol: R,
    pub h_init: Option<R>,
    pub max_steps: usize,
    /// Step-size safety factor; conservative enough that the 5th-order
    /// interpolant stays within an order of magnitude of the step error.
    pub safety: R,
}

impl<R: Real> Integrator<R> {
    pub fn with_tol(tol: f64) -> Result<Self, FlowError> {
        if !(1e-14..=1e-3).contains(&tol) {
            return Err(FlowError::ToleranceRange(tol));
        }
        Ok(Integrator {
            rtol: R::from_f64(tol).unwrap(),
            atol: R::from_f64(tol * 1e-2).unwrap(),
            h_init: None,
            max_steps: 50_000_000,
            safety: R::from_f64(0.8).unwrap(),
        })
    }

    /// Integrates the augmented system (P, Q, div) over [0, t_end].
    pub fn integrate(
        &self,
        field: &FieldEval<R>,
        z0: (R, R),
        t_end: R,
    ) -> Result<Trajectory<R>, FlowError> {
        let mut out = Trajectory {
            steps: Vec::new(),
            rtol: self.rtol,
            final_state: [z0.0, z0.1, R::zero()],
            rhs_evals: 0,
        };
        self.run(field, [z0.0, z0.1, R::zero()], R::zero(), t_end, &mut out, &mut |_| false)?;
        Ok(out)
    }

    /// Integrates until `stop` returns true on an accepted step (or t_end).
    pub fn integrate_until(
        &self,
        field: &FieldEval<R>,
        y0: [R; DIM],
        t0: R,
        t_end: R,
        stop: &mut dyn FnMut(&DenseStep<R>) -> bool,
    ) -> Result<Trajectory<R>, FlowError> {
        let mut out = Trajectory {
            steps: Vec::new(),
            rtol: self.rtol,
            final_state: y0,
            rhs_evals: 0,
        };
        self.run(field, y0, t0, t_end, &mut out, stop)?;
        Ok(out)
    }

    fn rhs(field: &FieldEval<R>, y: &[R; DIM]) -> [R; DIM] {
        let (p, q) = field.eval(y[0], y[1]);
        let d = field.divergence(y[0], y[1]);
        [p, q, d]
    }

    fn run(
        &self,
        field: &FieldEval<R>,
        y0: [R; DIM],
        t0: R,
        t_end: R,
        out: &mut Trajectory<R>,
        stop: &mut dyn FnMut(&DenseStep<R>) -> bool,
    ) -> Result<(), FlowError> {
        let span = t_end - t0;
        debug_assert!(span > R::zero());
        let mut t = t0;
        let mut y = y0;
        let mut k1 = Self::rhs(field, &y);
        out.rhs_evals += 1;
        let mut h = self.h_init.unwrap_or_else(|| {
            let scale = k1[0].abs() + k1[1].abs() + R::from_f64(1e-6).unwrap();
            (self.rtol.powf(R::from_f64(1.0 / 6.0).unwrap()) / scale)
                .min(span * R::from_f64(1e-2).unwrap())
        });
        let h_min = span * R::from_f64(1e-14).unwrap();
        let mut k = [[R::zero(); DIM]; rk::STAGES];
        for _ in 0..self.max_steps {
            if t >= t_end {
                return Ok(());
            }
            if h < h_min {
                return Err(FlowError::StepUnderflow(t.to_f64().unwrap_or(f64::NAN)));
            }
            let mut last = false;
            if t + h >= t_end {
                h = t_end - t;
                last = true;
            }
            k[0] = k1;
            for i in 1..rk::STAGES {
                let mut yi = y;
                for d in 0..DIM {
                    let mut acc = R::zero();
                    for j in 0..i {
                        acc = acc + rk::a::<R>(i, j) * k[j][d];
                    }
                    yi[d] = yi[d] + h * acc;
                }
                k[i] = Self::rhs(field, &yi);
                out.rhs_evals += 1;
            }
            let mut y_new = y;
            let mut err_norm = R::zero();
            for d in 0..DIM {
                let mut acc6 = R::zero();
                let mut acc5 = R::zero();
                for i in 0..rk::STAGES {
                    acc6 = acc6 + R::from_f64(rk::B6[i]).unwrap() * k[i][d];
                    acc5 = acc5 + R::from_f64(rk::B5[i]).unwrap() * k[i][d];
                }
                y_new[d] = y[d] + h * acc6;
                let sc = self.atol + self.rtol * y[d].abs().max(y_new[d].abs());
                let e = h * (acc6 - acc5) / sc;
                err_norm = err_norm + e * e;
            }
            err_norm = (err_norm / R::from_usize(DIM).unwrap()).sqrt();
            if !err_norm.is_finite() {
                return Err(FlowError::NonFiniteState(t.to_f64().unwrap_or(f64::NAN)));
            }
            if err_norm <= R::one() {
                // accept: build dense output (one extra stage at c = 1/2)
                let mut y_half = y;
                for d in 0..DIM {
                    let mut acc = R::zero();
                    for j in 0..rk::STAGES {
                        acc = acc + R::from_f64(rk::A_DENSE[j]).unwrap() * k[j][d];
                    }
                    y_half[d] = y_half[d] + h * acc;
                }
                let k10 = Self::rhs(field, &y_half);
                out.rhs_evals += 1;
                let mut coeffs = [[R::zero(); DIM]; 6];
                for j in 0..6 {
                    for d in 0..DIM {
                        let mut acc = R::zero();
                        for i in 0..rk::STAGES {
                            acc = acc + R::from_f64(rk::B_DENSE[i][j]).unwrap() * k[i][d];
                        }
                        acc = acc + R::from_f64(rk::B_DENSE[9][j]).unwrap() * k10[d];
                        coeffs[j][d] = h * acc;
                    }
                }
                let step = DenseStep { t0: t, h, y0: y, coeffs };
                let stop_now = stop(&step);
                out.steps.push(step);
                out.final_state = y_new;
                t = t + h;
                y = y_new;
                // FSAL: the last stage was evaluated at (t + h, y_new)
                k1 = k[rk::STAGES - 1];
                if stop_now {
                    return Ok(());
                }
                if last && t >= t_end {
                    return Ok(());
                }
                let factor = self.safety * err_norm.powf(R::from_f64(-1.0 / 6.0).unwrap());
                let factor = factor.min(R::from_f64(4.0).unwrap()).max(R::from_f64(0.2).unwrap());
                h = h * factor;
            } else {
                let factor = self.safety * err_norm.powf(R::from_f64(-1.0 / 6.0).unwrap());
                let factor = factor.max(R::from_f64(0.1).unwrap());
                h = h * factor;
            }
        }
        Err(FlowError::NoReturn(t.to_f64().unwrap_or(f64::NAN)))
    }
}

/// Result of a section-return computation.
#[derive(Debug, Clone)]
pub struct SectionReturn<R: Real> {
    pub t_return: R,
    pub r1: R,
    pub crossing: (R, R),
    pub trajectory: Trajectory<R>,
}

/// Integrates from the section point with parameter `r0` until the flow
/// first re-crosses the section with the required orientation. The crossing
/// time is localized on the dense output to ~1e-12 relative accuracy.
pub fn section_return(
    field: &PolyVectorField,
    section: &Section,
    r0: f64,
    tol: f64,
    horizon: Option<f64>,
) -> Result<SectionReturn<f64>, FlowError> {
    let fe: FieldEval<f64> = field.compile();
    section_return_compiled(&fe, section, r0, tol, horizon)
}

pub fn section_return_compiled<R: Real>(
    field: &FieldEval<R>,
    section: &Section,
    r0: R,
    tol: f64,
    horizon: Option<f64>,
) -> Result<SectionReturn<R>, FlowError> {
    let geom: SectionGeom<R> = section.geometry();
    let r0f = r0.to_f64().unwrap();
    if !(section.r_min..=section.r_max).contains(&r0f) {
        return Err(FlowError::OffSection(r0f));
    }
    let z0 = (geom.ax + r0 * geom.dx, geom.ay + r0 * geom.dy);
    // tangency pre-check
    let (p, q) = field.eval(z0.0, z0.1);
    let gdot0 = geom.nx * p + geom.ny * q;
    let speed = (p * p + q * q).sqrt();
    if gdot0.abs() < R::from_f64(1e-9).unwrap() * speed.max(R::one()) {
        return Err(FlowError::Tangency);
    }
    let horizon = R::from_f64(horizon.unwrap_or(1000.0)).unwrap();
    let integ = Integrator::<R>::with_tol(tol)?;

    // crossing scan: the detector arms once the orbit has clearly left the
    // section, so the start point itself is not reported
    let mut armed = false;
    let mut hit: Option<(R, R)> = None;
    let mut hit_step: Option<DenseStep<R>> = None;
    let scan_points = 8usize;
    let traj = integ.integrate_until(
        field,
        [z0.0, z0.1, R::zero()],
        R::zero(),
        horizon,
        &mut |step| {
            let s0 = step.eval(R::zero());
            let mut prev_theta = R::zero();
            let mut prev_g = geom.gap(s0[0], s0[1]);
            let mut prev_armed = armed;
            for i in 1..=scan_points {
                let theta = R::from_usize(i).unwrap() / R::from_usize(scan_points).unwrap();
                let s = step.eval(theta);
                let g = geom.gap(s[0], s[1]);
                if !armed && g.abs() > R::from_f64(1e-6).unwrap() {
                    armed = true;
                }
                // compare only pairs of samples that were both seen armed,
                // so the start point on the section is never reported
                if prev_armed && g * prev_g <= R::zero() && g != prev_g {
                    // candidate crossing: check orientation and parameter
                    // range at the midpoint
                    let mid = (prev_theta + theta) / (R::one() + R::one());
                    let sm = step.eval(mid);
                    let d = step.eval_deriv(mid);
                    let gdot = geom.nx * d[0] + geom.ny * d[1];
                    let r_mid = geom.param(sm[0], sm[1]).to_f64().unwrap();
                    if gdot * geom.sign > R::zero()
                        && r_mid >= section.r_min - 1e-6
                        && r_mid <= section.r_max + 1e-6
                    {
                        hit = Some((prev_theta, theta));
                        hit_step = Some(step.clone());
                        return true;
                    }
                }
                prev_g = g;
                prev_theta = theta;
                prev_armed = armed;
            }
            false
        },
    )?;
    let (Some((mut lo, mut hi)), Some(step)) = (hit, hit_step) else {
        return Err(FlowError::NoReturn(horizon.to_f64().unwrap_or(f64::NAN)));
    };
    let eval_g = |theta: R| {
        let s = step.eval(theta);
        geom.gap(s[0], s[1])
    };
    let mut g_lo = eval_g(lo);
    for _ in 0..100 {
        let mid = (lo + hi) / (R::one() + R::one());
        let g_mid = eval_g(mid);
        if g_mid * g_lo <= R::zero() {
            hi = mid;
        } else {
            lo = mid;
            g_lo = g_mid;
        }
        let t_width = (hi - lo) * step.h;
        if t_width < R::from_f64(1e-13).unwrap() * step.t_end().max(R::one()) {
            break;
        }
    }
    let theta = (lo + hi) / (R::one() + R::one());
    let t_return = step.t0 + theta * step.h;
    let s = step.eval(theta);
    let r1 = geom.param(s[0], s[1]);
    Ok(SectionReturn { t_return, r1, crossing: (s[0], s[1]), trajectory: traj })
}

/// Plain fixed-horizon integration of a field from a point.
pub fn integrate(
    field: &PolyVectorField,
    z0: (f64, f64),
    t_end: f64,
    tol: f64,
) -> Result<Trajectory<f64>, FlowError> {
    let fe: FieldEval<f64> = field.compile();
    let integ = Integrator::<f64>::with_tol(tol)?;
    integ.integrate(&fe, z0, t_end)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::gallery;
    use num_traits::One;

    #[test]
    fn linear_center_closes_after_two_pi() {
        let lc = gallery::linear_center();
        let traj = integrate(&lc, (1.0, 0.0), 2.0 * std::f64::consts::PI, 1e-12).unwrap();
        let end = traj.final_state;
        assert!((end[0] - 1.0).abs() < 1e-9, "x error {}", (end[0] - 1.0).abs());
        assert!(end[1].abs() < 1e-9);
        assert!(end[2].abs() < 1e-12);
    }

    #[test]
    fn circle_system_radius_decreases_toward_one() {
        let c = gallery::circle();
        let traj = integrate(&c, (2.0, 0.0), 6.0, 1e-10).unwrap();
        let mut last_r = 2.0;
        for i in 1..=60 {
            let t = 6.0 * i as f64 / 60.0;
            let (x, y) = traj.position(t);
            let r = (x * x + y * y).sqrt();
            assert!(r < last_r + 1e-9, "radius not decreasing at t={t}");
            assert!(r > 1.0 - 1e-9);
            last_r = r;
        }
        assert!((last_r - 1.0).abs() < 1e-3);
    }

    #[test]
    fn dense_output_matches_half_step_reintegration() {
        // interpolant error at step midpoints <= 10 * tol relative
        let c = gallery::circle();
        let tol = 1e-10;
        let traj = integrate(&c, (1.3, 0.4), 5.0, tol).unwrap();
        let fe: FieldEval<f64> = c.compile();
        let integ = Integrator::<f64>::with_tol(1e-13).unwrap();
        for step in traj.steps().iter().step_by(3) {
            let t_mid = step.t0 + 0.5 * step.h;
            let interp = step.eval(0.5);
            let refined = integ
                .integrate_until(&fe, step.y0, step.t0, t_mid, &mut |_| false)
                .unwrap();
            let exact = refined.final_state;
            for d in 0..2 {
                let scale = 1.0 + exact[d].abs();
                assert!(
                    (interp[d] - exact[d]).abs() / scale < 10.0 * tol,
                    "dense output off at t={t_mid}: {} vs {}",
                    interp[d],
                    exact[d]
                );
            }
        }
    }

    #[test]
    fn forward_backward_round_trip() {
        let vdp = gallery::van_der_pol(Rat::one());
        let tol = 1e-11;
        let traj = integrate(&vdp, (1.5, 0.5), 4.0, tol).unwrap();
        let end = traj.final_state;
        let back = integrate(&vdp.reversed(), (end[0], end[1]), 4.0, tol).unwrap();
        let home = back.final_state;
        let err = ((home[0] - 1.5f64).powi(2) + (home[1] - 0.5f64).powi(2)).sqrt();
        assert!(err < 1e-8, "round trip error {err}");
    }

    #[test]
    fn section_return_on_linear_center() {
        let lc = gallery::linear_center();
        let sect = Section::positive_x_axis();
        let ret = section_return(&lc, &sect, 1.0, 1e-12, None).unwrap();
        assert!((ret.t_return - 2.0 * std::f64::consts::PI).abs() < 1e-9);
        assert!((ret.r1 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn section_return_on_circle_cycle() {
        let c = gallery::circle();
        let sect = Section::positive_x_axis_ccw();
        let ret = section_return(&c, &sect, 1.0, 1e-12, None).unwrap();
        assert!((ret.t_return - 2.0 * std::f64::consts::PI).abs() < 1e-8);
        assert!((ret.r1 - 1.0).abs() < 1e-10);
    }

    #[test]
    fn off_section_rejected() {
        let lc = gallery::linear_center();
        let sect = Section::positive_x_axis();
        assert!(matches!(
            section_return(&lc, &sect, -0.5, 1e-10, None),
            Err(FlowError::OffSection(_))
        ));
    }

    #[test]
    fn tolerance_range_enforced() {
        assert!(matches!(
            Integrator::<f64>::with_tol(1e-2),
            Err(FlowError::ToleranceRange(_))
        ));
        assert!(Integrator::<f64>::with_tol(1e-12).is_ok());
    }

    #[test]
    fn tangency_detected() {
        // a field parallel to the x-axis is tangent to it everywhere
        let f = crate::system::PolyVectorField::new(
            crate::RatPoly2::from_terms([((0, 0), Rat::one())]),
            crate::RatPoly2::zero(),
        )
        .unwrap();
        let sect = Section::positive_x_axis();
        assert!(matches!(
            section_return(&f, &sect, 1.0, 1e-10, None),
            Err(FlowError::Tangency)
        ));
    }
}
