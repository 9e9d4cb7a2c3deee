//! Trigonometric polynomial closed curves: interpolation through 2m+1
//! equispaced points, rationalization of coefficients with a denominator
//! bound, evaluation, differentiation, and the theta <-> t view.

use crate::error::TrigError;
use crate::ratapprox::best_approx;
use crate::scalar::CoeffRing;
use crate::{rat_from_f64, rat_to_f64, Int, Rat};

/// A closed plane curve whose components are trigonometric polynomials of
/// degree m:
///   w_1 = c0 + sum_k (xc_k cos k theta + xs_k sin k theta),
/// and likewise w_2 with yc, ys. Coefficients are `f64` for fitted curves
/// and `Rat` for certified ones; the type parameter is the mode.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigCurve<T> {
    /// cos coefficients of component 1, index 0 is the constant term
    pub x_cos: Vec<T>,
    /// sin coefficients of component 1 (index 0 unused, kept zero)
    pub x_sin: Vec<T>,
    pub y_cos: Vec<T>,
    pub y_sin: Vec<T>,
    /// original time period, kept for the t-parameterized view
    pub period: Option<f64>,
}

pub type FloatCurve = TrigCurve<f64>;
pub type RatCurve = TrigCurve<Rat>;

impl<T: CoeffRing> TrigCurve<T> {
    pub fn degree(&self) -> usize {
        self.x_cos.len() - 1
    }

    /// 2(2m+1) coefficients in total.
    pub fn coefficient_count(&self) -> usize {
        2 * (2 * self.degree() + 1)
    }

    /// Coefficient-wise derivative with respect to theta (same degree).
    pub fn deriv(&self) -> TrigCurve<T> {
        let m = self.degree();
        let mut out = TrigCurve {
            x_cos: vec![T::zero(); m + 1],
            x_sin: vec![T::zero(); m + 1],
            y_cos: vec![T::zero(); m + 1],
            y_sin: vec![T::zero(); m + 1],
            period: self.period,
        };
        for k in 1..=m {
            let kk = crate::scalar::small_int::<T>(k as u64);
            out.x_cos[k] = self.x_sin[k].clone() * kk.clone();
            out.x_sin[k] = -(self.x_cos[k].clone() * kk.clone());
            out.y_cos[k] = self.y_sin[k].clone() * kk.clone();
            out.y_sin[k] = -(self.y_cos[k].clone() * kk);
        }
        out
    }
}

impl FloatCurve {
    pub fn eval(&self, theta: f64) -> (f64, f64) {
        let m = self.degree();
        let (mut x, mut y) = (self.x_cos[0], self.y_cos[0]);
        for k in 1..=m {
            let (s, c) = (k as f64 * theta).sin_cos();
            x += self.x_cos[k] * c + self.x_sin[k] * s;
            y += self.y_cos[k] * c + self.y_sin[k] * s;
        }
        (x, y)
    }

    /// W(t) = w(2 pi t / T), the time-parameterized view.
    pub fn eval_time(&self, t: f64, period: f64) -> (f64, f64) {
        self.eval(2.0 * std::f64::consts::PI * t / period)
    }

    /// Best rational approximation of every coefficient with denominators
    /// bounded by `den_bound`. Each coefficient lands within its Farey gap,
    /// |c - p/q| <= 1/(q (N+1-q)).
    pub fn rationalize(&self, den_bound: &Int) -> RatCurve {
        let conv = |v: &[f64]| -> Vec<Rat> {
            v.iter()
                .map(|&c| best_approx(&rat_from_f64(c).expect("finite coefficient"), den_bound))
                .collect()
        };
        RatCurve {
            x_cos: conv(&self.x_cos),
            x_sin: conv(&self.x_sin),
            y_cos: conv(&self.y_cos),
            y_sin: conv(&self.y_sin),
            period: self.period,
        }
    }
}

impl RatCurve {
    pub fn to_float(&self) -> FloatCurve {
        let conv = |v: &[Rat]| -> Vec<f64> { v.iter().map(rat_to_f64).collect() };
        FloatCurve {
            x_cos: conv(&self.x_cos),
            x_sin: conv(&self.x_sin),
            y_cos: conv(&self.y_cos),
            y_sin: conv(&self.y_sin),
            period: self.period,
        }
    }

    /// Exact value at theta = 0, a rational plane point on the curve.
    pub fn point_at_zero(&self) -> (Rat, Rat) {
        use num_traits::Zero;
        let mut x = Rat::zero();
        for c in &self.x_cos {
            x += c;
        }
        let mut y = Rat::zero();
        for c in &self.y_cos {
            y += c;
        }
        (x, y)
    }
}

/// The unique degree-m trigonometric interpolant through n = 2m+1 points
/// assumed to sit at theta_i = 2 pi i / n, via the discrete Fourier sums
/// (exactly solvable on the odd equispaced grid: 2(2m+1) conditions for
/// 2(2m+1) unknowns).
pub fn interpolate(points: &[(f64, f64)]) -> Result<FloatCurve, TrigError> {
    let n = points.len();
    if n < 3 || n % 2 == 0 {
        return Err(TrigError::EvenPointCount(n));
    }
    if points.iter().any(|p| !p.0.is_finite() || !p.1.is_finite()) {
        return Err(TrigError::NonFinitePoint);
    }
    let m = (n - 1) / 2;
    let mut out = FloatCurve {
        x_cos: vec![0.0; m + 1],
        x_sin: vec![0.0; m + 1],
        y_cos: vec![0.0; m + 1],
        y_sin: vec![0.0; m + 1],
        period: None,
    };
    for k in 0..=m {
        let w = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        let (mut xc, mut xs, mut yc, mut ys) = (0.0, 0.0, 0.0, 0.0);
        for (j, &(x, y)) in points.iter().enumerate() {
            let (s, c) = (w * j as f64).sin_cos();
            xc += x * c;
            xs += x * s;
            yc += y * c;
            ys += y * s;
        }
        let scale = if k == 0 { 1.0 / n as f64 } else { 2.0 / n as f64 };
        out.x_cos[k] = scale * xc;
        out.x_sin[k] = scale * xs;
        out.y_cos[k] = scale * yc;
        out.y_sin[k] = scale * ys;
    }
    out.x_sin[0] = 0.0;
    out.y_sin[0] = 0.0;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn grid(n: usize) -> Vec<f64> {
        (0..n).map(|i| 2.0 * std::f64::consts::PI * i as f64 / n as f64).collect()
    }

    #[test]
    fn unit_circle_through_five_points() {
        let pts: Vec<(f64, f64)> = grid(5).iter().map(|&t| (t.cos(), t.sin())).collect();
        let c = interpolate(&pts).unwrap();
        assert!((c.x_cos[1] - 1.0).abs() < 1e-14);
        assert!((c.y_sin[1] - 1.0).abs() < 1e-14);
        for k in 0..=2 {
            if k != 1 {
                assert!(c.x_cos[k].abs() < 1e-14);
                assert!(c.y_cos[k].abs() < 1e-14);
            }
            assert!(c.x_sin[k].abs() < 1e-14);
            if k != 1 {
                assert!(c.y_sin[k].abs() < 1e-14);
            }
        }
    }

    #[test]
    fn constant_points() {
        let pts = vec![(0.7, -0.3); 7];
        let c = interpolate(&pts).unwrap();
        assert!((c.x_cos[0] - 0.7).abs() < 1e-15);
        assert!((c.y_cos[0] + 0.3).abs() < 1e-15);
        for k in 1..=3 {
            assert!(c.x_cos[k].abs() < 1e-14);
            assert!(c.x_sin[k].abs() < 1e-14);
            assert!(c.y_cos[k].abs() < 1e-14);
            assert!(c.y_sin[k].abs() < 1e-14);
        }
    }

    #[test]
    fn even_count_rejected() {
        let pts = vec![(0.0, 0.0); 6];
        assert!(matches!(interpolate(&pts), Err(TrigError::EvenPointCount(6))));
    }

    fn random_curve(rng: &mut rand::rngs::StdRng, m: usize) -> FloatCurve {
        let mut mk = |_| rng.random_range(-1.0..1.0);
        FloatCurve {
            x_cos: (0..=m).map(&mut mk).collect(),
            x_sin: {
                let mut v: Vec<f64> = (0..=m).map(&mut mk).collect();
                v[0] = 0.0;
                v
            },
            y_cos: (0..=m).map(&mut mk).collect(),
            y_sin: {
                let mut v: Vec<f64> = (0..=m).map(&mut mk).collect();
                v[0] = 0.0;
                v
            },
            period: None,
        }
    }

    #[test]
    fn interpolation_round_trip_recovers_coefficients() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(9);
        for _ in 0..10 {
            let m = rng.random_range(1..=6);
            let c = random_curve(&mut rng, m);
            let n = 2 * m + 1;
            let pts: Vec<(f64, f64)> = grid(n).iter().map(|&t| c.eval(t)).collect();
            let rec = interpolate(&pts).unwrap();
            for k in 0..=m {
                assert!((rec.x_cos[k] - c.x_cos[k]).abs() < 1e-12);
                assert!((rec.x_sin[k] - c.x_sin[k]).abs() < 1e-12);
                assert!((rec.y_cos[k] - c.y_cos[k]).abs() < 1e-12);
                assert!((rec.y_sin[k] - c.y_sin[k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn interpolant_passes_through_inputs() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(31);
        let n = 25;
        let pts: Vec<(f64, f64)> =
            (0..n).map(|_| (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0))).collect();
        let c = interpolate(&pts).unwrap();
        for (i, &t) in grid(n).iter().enumerate() {
            let p = c.eval(t);
            assert!((p.0 - pts[i].0).abs() < 1e-10);
            assert!((p.1 - pts[i].1).abs() < 1e-10);
        }
    }

    #[test]
    fn derivative_of_circle() {
        let pts: Vec<(f64, f64)> = grid(5).iter().map(|&t| (t.cos(), t.sin())).collect();
        let c = interpolate(&pts).unwrap();
        let d = c.deriv();
        // (-sin, cos)
        assert!((d.x_sin[1] + 1.0).abs() < 1e-13);
        assert!((d.y_cos[1] - 1.0).abs() < 1e-13);
    }

    #[test]
    fn derivative_matches_central_differences() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(77);
        let c = random_curve(&mut rng, 6);
        let d = c.deriv();
        let h = 1e-4;
        for i in 0..20 {
            let t = 0.31 * i as f64;
            let fd = (
                (c.eval(t + h).0 - c.eval(t - h).0) / (2.0 * h),
                (c.eval(t + h).1 - c.eval(t - h).1) / (2.0 * h),
            );
            let dv = d.eval(t);
            assert!((fd.0 - dv.0).abs() < 1e-6);
            assert!((fd.1 - dv.1).abs() < 1e-6);
        }
    }

    #[test]
    fn rationalize_simple_values() {
        let c = FloatCurve {
            x_cos: vec![0.5, 3.14159265],
            x_sin: vec![0.0, 0.0],
            y_cos: vec![0.0, 0.0],
            y_sin: vec![0.0, 1.0],
            period: None,
        };
        let r = c.rationalize(&Int::from(1000));
        assert_eq!(r.x_cos[0], Rat::new(1.into(), 2.into()));
        assert_eq!(r.x_cos[1], Rat::new(355.into(), 113.into()));
        assert_eq!(r.y_sin[1], Rat::from_integer(1.into()));
    }

    #[test]
    fn time_view_identities() {
        let pts: Vec<(f64, f64)> = grid(5).iter().map(|&t| (t.cos(), t.sin())).collect();
        let c = interpolate(&pts).unwrap();
        let tau = 2.0 * std::f64::consts::PI;
        // identity when T = 2 pi
        for t in [0.0, 0.7, 2.0] {
            let a = c.eval_time(t, tau);
            let b = c.eval(t);
            assert!((a.0 - b.0).abs() < 1e-14 && (a.1 - b.1).abs() < 1e-14);
        }
        // W(0) = w(0); W(T/2) = w(pi)
        let period = 7.3;
        let a = c.eval_time(0.0, period);
        let b = c.eval(0.0);
        assert_eq!(a, b);
        let a = c.eval_time(period / 2.0, period);
        let b = c.eval(std::f64::consts::PI);
        assert!((a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12);
    }
}
