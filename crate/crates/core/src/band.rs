//! The offset band curve z(t) + eps u(t) perp(z'(t)) around a located
//! cycle: for small nonzero eps it is strictly transversal to the flow,
//! with the weight u chosen so the leading term of the contact function is
//! sign-definite. Also the open-arc variant with a free constant K in
//! place of the Floquet exponent.

use crate::cycle::CycleEstimate;
use crate::error::BandError;
use crate::system::{FieldEval, PolyVectorField};

/// perp(v) = (v_y, -v_x)
#[inline]
pub fn perp(v: (f64, f64)) -> (f64, f64) {
    (v.1, -v.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Inner,
    Outer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveOrientation {
    Ccw,
    Cw,
}

/// Signed-area orientation of a sampled closed curve (shoelace).
pub fn sampled_orientation(points: &[(f64, f64)]) -> CurveOrientation {
    let mut acc = 0.0;
    for w in points.windows(2) {
        acc += w[0].0 * w[1].1 - w[1].0 * w[0].1;
    }
    if acc >= 0.0 {
        CurveOrientation::Ccw
    } else {
        CurveOrientation::Cw
    }
}

/// Dense tabulation of the band curve over one period.
#[derive(Debug, Clone)]
pub struct BandCurve {
    pub parent: CycleEstimate,
    pub epsilon: f64,
    pub side: Side,
    pub orientation: CurveOrientation,
    pub times: Vec<f64>,
    /// u(t_i) > 0
    pub u_table: Vec<f64>,
    /// z~(t_i)
    pub point_table: Vec<(f64, f64)>,
    /// d/dt z~(t_i)
    pub deriv_table: Vec<(f64, f64)>,
}

/// Builds the band curve from a hyperbolic cycle estimate. The weight is
/// u(t) = exp(int_0^t div - kappa t) / |gamma'(t)|^2, its derivative comes
/// from the closed form u' = (div - kappa - 2 gamma'.gamma''/gamma'.gamma'') u
/// rather than any numerical differencing.
pub fn build_band(
    field: &PolyVectorField,
    ce: &CycleEstimate,
    epsilon: f64,
) -> Result<BandCurve, BandError> {
    if epsilon == 0.0 {
        return Err(BandError::ZeroEpsilon);
    }
    if (ce.kappa * ce.period).abs() < 1e-4 {
        return Err(BandError::Cycle(crate::error::CycleError::NonHyperbolic(
            (ce.kappa * ce.period).abs(),
        )));
    }
    let fe: FieldEval<f64> = field.compile();
    let n = ce.samples.len();
    let mut times = Vec::with_capacity(n);
    let mut u_table = Vec::with_capacity(n);
    let mut point_table = Vec::with_capacity(n);
    let mut deriv_table = Vec::with_capacity(n);
    for s in &ce.samples {
        let speed2 = s.vel.0 * s.vel.0 + s.vel.1 * s.vel.1;
        if speed2 < 1e-30 {
            return Err(BandError::ZeroVelocity);
        }
        let e = (s.div_int - ce.kappa * s.t).exp();
        let u = e / speed2;
        let z = (s.pos.0 + epsilon * u * s.vel.1, s.pos.1 - epsilon * u * s.vel.0);
        // gamma'' = DX(gamma) gamma'
        let acc = fe.jacobian_apply(s.pos, s.vel);
        let div = fe.divergence(s.pos.0, s.pos.1);
        let du = (div - ce.kappa - 2.0 * (s.vel.0 * acc.0 + s.vel.1 * acc.1) / speed2) * u;
        let dz = (
            s.vel.0 + epsilon * (du * s.vel.1 + u * acc.1),
            s.vel.1 - epsilon * (du * s.vel.0 + u * acc.0),
        );
        times.push(s.t);
        u_table.push(u);
        point_table.push(z);
        deriv_table.push(dz);
    }
    // periodicity of the weight
    let mismatch = (u_table[0] - u_table[n - 1]).abs() / u_table[0].abs();
    if mismatch > 1e-8 {
        return Err(BandError::NotPeriodic(mismatch));
    }
    let orientation = sampled_orientation(&point_table);
    let side = match (orientation, epsilon > 0.0) {
        // for a cw cycle the perp of the velocity points inward
        (CurveOrientation::Cw, true) | (CurveOrientation::Ccw, false) => Side::Inner,
        (CurveOrientation::Cw, false) | (CurveOrientation::Ccw, true) => Side::Outer,
    };
    Ok(BandCurve {
        parent: ce.clone(),
        epsilon,
        side,
        orientation,
        times,
        u_table,
        point_table,
        deriv_table,
    })
}

/// Numeric transversality scan of f(t) = X(z~) . perp(z~') over the grid.
#[derive(Debug, Clone)]
pub struct TransversalityScan {
    pub min_abs: f64,
    pub max_abs: f64,
    pub sign: i8,
    pub sign_constant: bool,
    /// f sampled on the grid
    pub values: Vec<f64>,
}

pub fn numeric_transversality(field: &PolyVectorField, bc: &BandCurve) -> TransversalityScan {
    let fe: FieldEval<f64> = field.compile();
    scan_tables(&fe, &bc.point_table, &bc.deriv_table)
}

fn scan_tables(
    fe: &FieldEval<f64>,
    points: &[(f64, f64)],
    derivs: &[(f64, f64)],
) -> TransversalityScan {
    let mut values = Vec::with_capacity(points.len());
    for (z, dz) in points.iter().zip(derivs) {
        let x = fe.eval(z.0, z.1);
        values.push(x.0 * dz.1 - x.1 * dz.0);
    }
    let mut min_abs = f64::INFINITY;
    let mut max_abs: f64 = 0.0;
    let mut pos = false;
    let mut neg = false;
    for &v in &values {
        min_abs = min_abs.min(v.abs());
        max_abs = max_abs.max(v.abs());
        pos |= v > 0.0;
        neg |= v < 0.0;
    }
    let sign_constant = !(pos && neg) && (pos || neg);
    let sign = if pos && !neg {
        1
    } else if neg && !pos {
        -1
    } else {
        0
    };
    TransversalityScan { min_abs, max_abs, sign, sign_constant, values }
}

/// Cubic-Hermite read of the band at an arbitrary time in [0, T].
pub fn band_point(bc: &BandCurve, t: f64) -> (f64, f64) {
    let n = bc.times.len() - 1;
    let period = bc.parent.period;
    let mut tt = t % period;
    if tt < 0.0 {
        tt += period;
    }
    let h = period / n as f64;
    let i = ((tt / h) as usize).min(n - 1);
    let s = (tt - bc.times[i]) / h;
    let (p0, p1) = (bc.point_table[i], bc.point_table[i + 1]);
    let (m0, m1) = (bc.deriv_table[i], bc.deriv_table[i + 1]);
    let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    let h10 = s * (1.0 - s) * (1.0 - s);
    let h01 = s * s * (3.0 - 2.0 * s);
    let h11 = s * s * (s - 1.0);
    (
        h00 * p0.0 + h10 * h * m0.0 + h01 * p1.0 + h11 * h * m1.0,
        h00 * p0.1 + h10 * h * m0.1 + h01 * p1.1 + h11 * h * m1.1,
    )
}

/// n points of the band at times t_i = i T / n, n odd; these feed the
/// degree-m trigonometric interpolation with n = 2m + 1.
pub fn sample_points(bc: &BandCurve, n: usize) -> Result<Vec<(f64, f64)>, BandError> {
    if n < 3 || n % 2 == 0 {
        return Err(BandError::BadSampleCount(n));
    }
    let period = bc.parent.period;
    Ok((0..n).map(|i| band_point(bc, period * i as f64 / n as f64)).collect())
}

/// Where the band crosses a horizontal line y = y0 with x near the given
/// hint; used to report section crossings of the constructed curves.
pub fn horizontal_crossing(bc: &BandCurve, y0: f64, x_min: f64) -> Option<f64> {
    let n = bc.point_table.len();
    for i in 0..n - 1 {
        let (a, b) = (bc.point_table[i], bc.point_table[i + 1]);
        if a.0 > x_min && b.0 > x_min && (a.1 - y0) * (b.1 - y0) <= 0.0 && a.1 != b.1 {
            // linear then one Hermite refinement
            let mut t_lo = bc.times[i];
            let mut t_hi = bc.times[i + 1];
            for _ in 0..60 {
                let tm = 0.5 * (t_lo + t_hi);
                let pm = band_point(bc, tm);
                let lo_val = band_point(bc, t_lo).1 - y0;
                if (pm.1 - y0) * lo_val <= 0.0 {
                    t_hi = tm;
                } else {
                    t_lo = tm;
                }
            }
            return Some(band_point(bc, 0.5 * (t_lo + t_hi)).0);
        }
    }
    None
}

/// Open transversal arc along a trajectory segment, with a user constant K
/// in place of kappa; the sign of K*eps sets the crossing direction.
#[derive(Debug, Clone)]
pub struct OpenArc {
    pub k: f64,
    pub epsilon: f64,
    pub times: Vec<f64>,
    pub u_table: Vec<f64>,
    pub point_table: Vec<(f64, f64)>,
    pub deriv_table: Vec<(f64, f64)>,
}

pub fn open_arc_band(
    field: &PolyVectorField,
    traj: &crate::flow::Trajectory<f64>,
    t_range: (f64, f64),
    k: f64,
    epsilon: f64,
    n_samples: usize,
) -> Result<OpenArc, BandError> {
    if k == 0.0 {
        return Err(BandError::ZeroK);
    }
    if epsilon == 0.0 {
        return Err(BandError::ZeroEpsilon);
    }
    let fe: FieldEval<f64> = field.compile();
    let (t0, t1) = t_range;
    debug_assert!(t1 > t0);
    let div0 = traj.div_integral(t0);
    let mut times = Vec::with_capacity(n_samples);
    let mut u_table = Vec::with_capacity(n_samples);
    let mut point_table = Vec::with_capacity(n_samples);
    let mut deriv_table = Vec::with_capacity(n_samples);
    for i in 0..n_samples {
        let t = t0 + (t1 - t0) * i as f64 / (n_samples - 1) as f64;
        let s = traj.state(t);
        let pos = (s[0], s[1]);
        let vel = fe.eval(pos.0, pos.1);
        let speed2 = vel.0 * vel.0 + vel.1 * vel.1;
        if speed2 < 1e-30 {
            return Err(BandError::ZeroVelocity);
        }
        let tau = t - t0;
        let e = (s[2] - div0 - k * tau).exp();
        let u = e / speed2;
        let acc = fe.jacobian_apply(pos, vel);
        let div = fe.divergence(pos.0, pos.1);
        let du = (div - k - 2.0 * (vel.0 * acc.0 + vel.1 * acc.1) / speed2) * u;
        point_table.push((pos.0 + epsilon * u * vel.1, pos.1 - epsilon * u * vel.0));
        deriv_table.push((
            vel.0 + epsilon * (du * vel.1 + u * acc.1),
            vel.1 - epsilon * (du * vel.0 + u * acc.0),
        ));
        u_table.push(u);
        times.push(t);
    }
    Ok(OpenArc { k, epsilon, times, u_table, point_table, deriv_table })
}

pub fn arc_transversality(field: &PolyVectorField, arc: &OpenArc) -> TransversalityScan {
    let fe: FieldEval<f64> = field.compile();
    scan_tables(&fe, &arc.point_table, &arc.deriv_table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::{find_cycle, FindCycleOptions};
    use crate::flow::Section;
    use crate::system::gallery;
    use crate::Rat;
    use num_traits::One;

    fn circle_cycle() -> (crate::system::PolyVectorField, CycleEstimate) {
        let c = gallery::circle();
        let sect = Section::positive_x_axis_ccw();
        let ce = find_cycle(&c, &sect, (0.5, 1.7), &FindCycleOptions::default()).unwrap();
        (c, ce)
    }

    fn vdp_cycle() -> (crate::system::PolyVectorField, CycleEstimate) {
        let vdp = gallery::van_der_pol(Rat::one());
        let sect = Section::positive_x_axis();
        let ce = find_cycle(&vdp, &sect, (1.0, 3.0), &FindCycleOptions::default()).unwrap();
        (vdp, ce)
    }

    #[test]
    fn circle_band_is_a_scaled_circle() {
        let (c, ce) = circle_cycle();
        let bc = build_band(&c, &ce, 0.1).unwrap();
        for (u, z) in bc.u_table.iter().zip(&bc.point_table) {
            assert!((u - 1.0).abs() < 1e-7, "u = {u}");
            let r = (z.0 * z.0 + z.1 * z.1).sqrt();
            assert!((r - 1.1).abs() < 1e-7, "r = {r}");
        }
        assert_eq!(bc.side, Side::Outer);
        assert_eq!(bc.orientation, CurveOrientation::Ccw);
        // exact contact value on the offset circle: r^2 (1 - r^2)
        let scan = numeric_transversality(&c, &bc);
        assert!(scan.sign_constant);
        let expect = 1.1f64.powi(2) * (1.0 - 1.1f64.powi(2));
        for v in &scan.values {
            assert!((v - expect).abs() < 1e-6, "{v} vs {expect}");
        }
    }

    #[test]
    fn epsilon_sign_flips_side() {
        let (c, ce) = circle_cycle();
        let outer = build_band(&c, &ce, 0.1).unwrap();
        let inner = build_band(&c, &ce, -0.1).unwrap();
        assert_eq!(outer.side, Side::Outer);
        assert_eq!(inner.side, Side::Inner);
        let (vdp, vce) = vdp_cycle();
        // van der Pol runs clockwise, so positive eps is the inner side
        let b = build_band(&vdp, &vce, 0.05).unwrap();
        assert_eq!(b.orientation, CurveOrientation::Cw);
        assert_eq!(b.side, Side::Inner);
    }

    #[test]
    fn vdp_inner_band_matches_printed_values() {
        let (vdp, ce) = vdp_cycle();
        let bc = build_band(&vdp, &ce, 0.05).unwrap();
        // Sigma crossing of the inner band
        let x = horizontal_crossing(&bc, 0.0, 0.5).unwrap();
        assert!((x - 1.89331).abs() < 5e-4, "crossing at {x}");
        // the 25-point sample list starts at (1.89451, 0.0056435)
        let pts = sample_points(&bc, 25).unwrap();
        assert!((pts[0].0 - 1.89451).abs() < 1e-4, "{:?}", pts[0]);
        assert!((pts[0].1 - 0.0056435).abs() < 1e-4);
        let scan = numeric_transversality(&vdp, &bc);
        assert!(scan.sign_constant, "inner vdp band must be transversal");
    }

    #[test]
    fn sample_point_rules() {
        let (c, ce) = circle_cycle();
        let bc = build_band(&c, &ce, 0.1).unwrap();
        assert!(matches!(sample_points(&bc, 4), Err(BandError::BadSampleCount(4))));
        let pts = sample_points(&bc, 5).unwrap();
        assert_eq!(pts.len(), 5);
        for (i, p) in pts.iter().enumerate() {
            let ang = 2.0 * std::f64::consts::PI * i as f64 / 5.0;
            assert!((p.0 - 1.1 * ang.cos()).abs() < 1e-6);
            assert!((p.1 - 1.1 * ang.sin()).abs() < 1e-6);
        }
        let three = sample_points(&bc, 3).unwrap();
        assert_eq!(three.len(), 3);
    }

    #[test]
    fn sample_points_sit_on_the_dense_table() {
        let (vdp, ce) = vdp_cycle();
        let bc = build_band(&vdp, &ce, 0.05).unwrap();
        // at grid times the Hermite read reproduces the table exactly
        for i in (0..bc.times.len()).step_by(509) {
            let p = band_point(&bc, bc.times[i]);
            let q = bc.point_table[i];
            assert!((p.0 - q.0).abs() < 1e-9);
            assert!((p.1 - q.1).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_epsilon_rejected() {
        let (c, ce) = circle_cycle();
        assert!(matches!(build_band(&c, &ce, 0.0), Err(BandError::ZeroEpsilon)));
    }

    #[test]
    fn first_order_expansion_in_epsilon() {
        // f(t) / (kappa E(t) eps) -> 1 as eps -> 0
        let (vdp, ce) = vdp_cycle();
        let mut errs = Vec::new();
        for eps in [1e-2, 5e-3, 2.5e-3] {
            let bc = build_band(&vdp, &ce, eps).unwrap();
            let scan = numeric_transversality(&vdp, &bc);
            let mut max_err: f64 = 0.0;
            for (i, v) in scan.values.iter().enumerate() {
                let s = &ce.samples[i];
                let e = (s.div_int - ce.kappa * s.t).exp();
                let ratio = v / (ce.kappa * e * eps);
                max_err = max_err.max((ratio - 1.0).abs());
            }
            errs.push(max_err);
        }
        // halving eps should roughly halve the error (first order)
        assert!(errs[1] < 0.75 * errs[0], "{errs:?}");
        assert!(errs[2] < 0.75 * errs[1], "{errs:?}");
    }

    #[test]
    fn open_arc_matches_band_when_k_is_kappa() {
        let (c, ce) = circle_cycle();
        let bc = build_band(&c, &ce, 0.05).unwrap();
        let arc = open_arc_band(
            &c,
            &ce.trajectory,
            (0.0, ce.period / 2.0),
            ce.kappa,
            0.05,
            200,
        )
        .unwrap();
        for (i, t) in arc.times.iter().enumerate() {
            let p = band_point(&bc, *t);
            let q = arc.point_table[i];
            assert!((p.0 - q.0).abs() < 1e-6, "t={t}");
            assert!((p.1 - q.1).abs() < 1e-6);
        }
    }

    #[test]
    fn open_arc_on_linear_center() {
        // div = 0, K = 1: u = e^{-t} / |gamma'|^2; transversal for small eps
        let lc = gallery::linear_center();
        let traj = crate::flow::integrate(&lc, (1.0, 0.0), 3.0, 1e-12).unwrap();
        let arc = open_arc_band(&lc, &traj, (0.0, 3.0), 1.0, 1e-3, 300).unwrap();
        for (i, t) in arc.times.iter().enumerate() {
            assert!((arc.u_table[i] - (-t).exp()).abs() < 1e-8);
        }
        let scan = arc_transversality(&lc, &arc);
        assert!(scan.sign_constant);
        // K eps > 0 here; flipping K flips the sign pattern
        let arc2 = open_arc_band(&lc, &traj, (0.0, 3.0), -1.0, 1e-3, 300).unwrap();
        let scan2 = arc_transversality(&lc, &arc2);
        assert!(scan2.sign_constant);
        assert_eq!(scan.sign, -scan2.sign);
        assert!(matches!(
            open_arc_band(&lc, &traj, (0.0, 3.0), 0.0, 1e-3, 10),
            Err(BandError::ZeroK)
        ));
    }
}
