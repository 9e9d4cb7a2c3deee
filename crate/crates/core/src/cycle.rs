//! Limit cycle location and characterization: displacement-map root
//! finding on a transversal section, period, Floquet exponent, stability,
//! and the Fourier spectrum diagnostic that predicts the fit degree.

use crate::error::CycleError;
use crate::flow::{section_return_compiled, Section, Trajectory};
use crate::system::{FieldEval, PolyVectorField};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Stable,
    Unstable,
}

/// One dense sample of the located cycle.
#[derive(Debug, Clone, Copy)]
pub struct CycleSample {
    pub t: f64,
    pub pos: (f64, f64),
    /// X(pos), evaluated from the field (not differenced).
    pub vel: (f64, f64),
    /// cumulative divergence integral over [0, t]
    pub div_int: f64,
}

/// A numerically refined periodic orbit with everything the band layer
/// needs: period, Floquet exponent kappa, and a dense grid of positions,
/// velocities and cumulative divergence integrals.
#[derive(Debug, Clone)]
pub struct CycleEstimate {
    pub section: Section,
    /// section parameter of the cycle's crossing
    pub x0_star: f64,
    /// the crossing point in the plane
    pub point_star: (f64, f64),
    pub period: f64,
    /// average divergence along the cycle, kappa = (1/T) int div
    pub kappa: f64,
    pub stability: Stability,
    pub samples: Vec<CycleSample>,
    /// displacement |P(x*) - x*| achieved by the refinement
    pub residual: f64,
    /// one period of the orbit with dense output, in original time
    pub trajectory: Trajectory<f64>,
    /// integration tolerance used
    pub tol: f64,
}

#[derive(Debug, Clone)]
pub struct FindCycleOptions {
    /// displacement tolerance |P(x*) - x*|
    pub tol: f64,
    /// integrator relative tolerance
    pub ode_tol: f64,
    /// locate an unstable cycle by reversing time
    pub unstable: bool,
    /// dense samples per period
    pub n_samples: usize,
    /// return-time horizon
    pub horizon: Option<f64>,
}

impl Default for FindCycleOptions {
    fn default() -> Self {
        FindCycleOptions {
            tol: 1e-11,
            ode_tol: 1e-12,
            unstable: false,
            n_samples: 4096,
            horizon: None,
        }
    }
}

/// Locates a limit cycle as a zero of the displacement map P(r) - r over a
/// bracket with a sign change, by bisection with secant acceleration.
///
/// Unstable cycles are located in reversed time (where they attract); the
/// returned estimate is always re-expressed in the original orientation.
pub fn find_cycle(
    field: &PolyVectorField,
    section: &Section,
    bracket: (f64, f64),
    opts: &FindCycleOptions,
) -> Result<CycleEstimate, CycleError> {
    let locate_field = if opts.unstable { field.reversed() } else { field.clone() };
    let locate_section = if opts.unstable {
        // reversing time flips the crossing orientation
        let mut s = section.clone();
        s.orientation = match s.orientation {
            crate::flow::Orientation::Positive => crate::flow::Orientation::Negative,
            crate::flow::Orientation::Negative => crate::flow::Orientation::Positive,
        };
        s
    } else {
        section.clone()
    };
    let fe: FieldEval<f64> = locate_field.compile();
    let displacement = |r: f64| -> Result<f64, CycleError> {
        let ret = section_return_compiled(&fe, &locate_section, r, opts.ode_tol, opts.horizon)?;
        Ok(ret.r1 - r)
    };

    let (mut a, mut b) = bracket;
    let mut fa = displacement(a)?;
    let mut fb = displacement(b)?;
    if fa == 0.0 {
        b = a;
        fb = fa;
    } else if fb != 0.0 && fa.signum() == fb.signum() {
        return Err(CycleError::NoSignChange(a, b));
    }
    let mut best = if fa.abs() < fb.abs() { (a, fa) } else { (b, fb) };
    for _ in 0..200 {
        if best.1.abs() <= opts.tol {
            break;
        }
        // secant proposal, clipped into the bracket; bisection fallback
        let mut mid = (a + b) / 2.0;
        if (fb - fa).abs() > 1e-300 {
            let sec = a - fa * (b - a) / (fb - fa);
            let lo = a.min(b);
            let hi = a.max(b);
            let margin = 0.01 * (hi - lo);
            if sec > lo + margin && sec < hi - margin {
                mid = sec;
            }
        }
        let fm = displacement(mid)?;
        if fm.abs() < best.1.abs() {
            best = (mid, fm);
        }
        if fm == 0.0 {
            break;
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
        if (b - a).abs() < 1e-15 * (1.0 + a.abs()) {
            break;
        }
    }
    let (x0, residual) = (best.0, best.1.abs());

    // final pass in original time from the located fixed point
    let fe_orig: FieldEval<f64> = field.compile();
    let ret = section_return_compiled(&fe_orig, section, x0, opts.ode_tol, opts.horizon)
        .map_err(CycleError::Flow)?;
    let period = ret.t_return;
    let traj = ret.trajectory;
    let div_total = traj.div_integral(period);
    let kappa = div_total / period;
    let stability = if kappa < 0.0 { Stability::Stable } else { Stability::Unstable };

    let n = opts.n_samples;
    let mut samples = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let t = period * i as f64 / n as f64;
        let s = traj.state(t.min(period));
        let vel = fe_orig.eval(s[0], s[1]);
        samples.push(CycleSample { t, pos: (s[0], s[1]), vel, div_int: s[2] });
    }
    let geom: crate::flow::SectionGeom<f64> = section.geometry();
    Ok(CycleEstimate {
        section: section.clone(),
        x0_star: x0,
        point_star: (geom.ax + x0 * geom.dx, geom.ay + x0 * geom.dy),
        period,
        kappa,
        stability,
        samples,
        residual,
        trajectory: traj,
        tol: opts.ode_tol,
    })
}

/// Floquet data: kappa and the Poincare-map multiplier exp(kappa T).
#[derive(Debug, Clone, Copy)]
pub struct Hyperbolicity {
    pub kappa: f64,
    pub multiplier: f64,
    /// |kappa T| below this threshold is flagged numerically non-hyperbolic
    pub threshold: f64,
    pub non_hyperbolic: bool,
}

pub fn hyperbolicity(ce: &CycleEstimate) -> Hyperbolicity {
    hyperbolicity_with_threshold(ce, 1e-4)
}

pub fn hyperbolicity_with_threshold(ce: &CycleEstimate, threshold: f64) -> Hyperbolicity {
    let kt = ce.kappa * ce.period;
    Hyperbolicity {
        kappa: ce.kappa,
        multiplier: kt.exp(),
        threshold,
        non_hyperbolic: kt.abs() < threshold,
    }
}

/// Per-harmonic Fourier data of both cycle components.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// a[comp][k], cosine coefficients, k = 0..=max_m
    pub a: [Vec<f64>; 2],
    /// b[comp][k], sine coefficients (b[.][0] = 0)
    pub b: [Vec<f64>; 2],
}

impl Spectrum {
    /// sqrt(a_k^2 + b_k^2) for one component.
    pub fn magnitude(&self, comp: usize, k: usize) -> f64 {
        (self.a[comp][k].powi(2) + self.b[comp][k].powi(2)).sqrt()
    }

    pub fn max_m(&self) -> usize {
        self.a[0].len() - 1
    }
}

/// Trapezoid-rule Fourier coefficients of the cycle components on the
/// equispaced grid (exact DFT of the resampled signal).
pub fn fourier_spectrum(ce: &CycleEstimate, max_m: usize) -> Spectrum {
    let n = ce.samples.len() - 1; // last sample repeats the first
    let xs: Vec<(f64, f64)> = ce.samples[..n].iter().map(|s| s.pos).collect();
    spectrum_of_samples(&xs, max_m)
}

/// DFT coefficients of equispaced plane samples over one period.
pub fn spectrum_of_samples(xs: &[(f64, f64)], max_m: usize) -> Spectrum {
    let n = xs.len();
    let mut a = [vec![0.0; max_m + 1], vec![0.0; max_m + 1]];
    let mut b = [vec![0.0; max_m + 1], vec![0.0; max_m + 1]];
    for k in 0..=max_m {
        let w = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        let (mut ca0, mut sa0, mut ca1, mut sa1) = (0.0, 0.0, 0.0, 0.0);
        for (j, &(x, y)) in xs.iter().enumerate() {
            let (s, c) = (w * j as f64).sin_cos();
            ca0 += x * c;
            sa0 += x * s;
            ca1 += y * c;
            sa1 += y * s;
        }
        let scale = 2.0 / n as f64;
        a[0][k] = scale * ca0;
        b[0][k] = scale * sa0;
        a[1][k] = scale * ca1;
        b[1][k] = scale * sa1;
    }
    b[0][0] = 0.0;
    b[1][0] = 0.0;
    Spectrum { a, b }
}

/// Discrete mean square of a component over the grid.
pub fn mean_square(xs: &[f64]) -> f64 {
    xs.iter().map(|x| x * x).sum::<f64>() / xs.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::gallery;
    use crate::Rat;
    use num_traits::One;

    fn circle_cycle(tol: f64) -> CycleEstimate {
        let c = gallery::circle();
        let sect = Section::positive_x_axis_ccw();
        find_cycle(
            &c,
            &sect,
            (0.5, 1.7),
            &FindCycleOptions { ode_tol: tol, ..Default::default() },
        )
        .unwrap()
    }

    #[test]
    fn circle_cycle_closed_form() {
        let ce = circle_cycle(1e-12);
        assert!((ce.x0_star - 1.0).abs() < 1e-10, "x0 = {}", ce.x0_star);
        assert!((ce.period - 2.0 * std::f64::consts::PI).abs() < 1e-9);
        // div = 2 - 4r^2 = -2 on the cycle
        assert!((ce.kappa + 2.0).abs() < 1e-9, "kappa = {}", ce.kappa);
        assert_eq!(ce.stability, Stability::Stable);
        let h = hyperbolicity(&ce);
        assert!((h.multiplier - (-4.0 * std::f64::consts::PI).exp()).abs() < 1e-8);
        assert!(!h.non_hyperbolic);
    }

    #[test]
    fn kappa_stable_under_tolerance_refinement() {
        let k1 = circle_cycle(1e-10).kappa;
        let k2 = circle_cycle(1e-12).kappa;
        assert!((k1 - k2).abs() < 1e-8);
    }

    #[test]
    fn van_der_pol_detection() {
        let vdp = gallery::van_der_pol(Rat::one());
        let sect = Section::positive_x_axis();
        let ce = find_cycle(&vdp, &sect, (1.0, 3.0), &FindCycleOptions::default()).unwrap();
        assert!((ce.x0_star - 1.91928).abs() < 5e-4, "x0 = {}", ce.x0_star);
        assert!((ce.period - 6.6632866).abs() < 1e-4, "T = {}", ce.period);
        assert_eq!(ce.stability, Stability::Stable);
        assert!(ce.kappa < 0.0);
        // gamma(0) = gamma(T) within tolerance
        let first = ce.samples.first().unwrap().pos;
        let last = ce.samples.last().unwrap().pos;
        assert!((first.0 - last.0).abs() < 1e-8);
        assert!((first.1 - last.1).abs() < 1e-8);
        // kappa * T equals the last divergence-integral entry
        let kt = ce.kappa * ce.period;
        let div_total = ce.samples.last().unwrap().div_int;
        assert!((kt - div_total).abs() < 1e-9);
    }

    #[test]
    fn no_sign_change_is_an_error() {
        let vdp = gallery::van_der_pol(Rat::one());
        let sect = Section::positive_x_axis();
        let r = find_cycle(&vdp, &sect, (2.5, 3.0), &FindCycleOptions::default());
        assert!(matches!(r, Err(CycleError::NoSignChange(_, _))));
    }

    #[test]
    fn rychkov_two_cycles() {
        let f = gallery::rychkov(Rat::one(), Rat::new(1.into(), 5.into()));
        let sect = Section::positive_x_axis();
        let unstable = find_cycle(
            &f,
            &sect,
            (0.4, 0.75),
            &FindCycleOptions { unstable: true, ..Default::default() },
        )
        .unwrap();
        assert!((unstable.x0_star - 0.632018).abs() < 5e-4, "x0 = {}", unstable.x0_star);
        assert_eq!(unstable.stability, Stability::Unstable);
        let stable = find_cycle(&f, &sect, (0.75, 1.3), &FindCycleOptions::default()).unwrap();
        assert!((stable.x0_star - 0.893787).abs() < 5e-4, "x0 = {}", stable.x0_star);
        assert_eq!(stable.stability, Stability::Stable);
    }

    #[test]
    fn constant_samples_have_empty_spectrum() {
        let xs = vec![(3.0, -2.0); 64];
        let sp = spectrum_of_samples(&xs, 20);
        for k in 1..=20 {
            assert!(sp.magnitude(0, k) < 1e-14);
            assert!(sp.magnitude(1, k) < 1e-14);
        }
        assert!((sp.a[0][0] - 6.0).abs() < 1e-12); // a_0 = 2 * mean
        assert!((sp.a[1][0] + 4.0).abs() < 1e-12);
    }

    #[test]
    fn circle_spectrum_is_single_harmonic() {
        let ce = circle_cycle(1e-12);
        let sp = fourier_spectrum(&ce, 8);
        assert!((sp.magnitude(0, 1) - 1.0).abs() < 1e-8);
        for k in [0usize, 2, 3, 4, 5, 6, 7, 8] {
            assert!(sp.magnitude(0, k) < 1e-7, "k={k}: {}", sp.magnitude(0, k));
        }
    }

    #[test]
    fn plancherel_on_the_circle_cycle() {
        let ce = circle_cycle(1e-12);
        let n = ce.samples.len() - 1;
        let xs: Vec<f64> = ce.samples[..n].iter().map(|s| s.pos.0).collect();
        let pts: Vec<(f64, f64)> = ce.samples[..n].iter().map(|s| s.pos).collect();
        let sp = spectrum_of_samples(&pts, n / 2);
        let ms = mean_square(&xs);
        let mut sum = sp.a[0][0] * sp.a[0][0] / 4.0;
        for k in 1..=n / 2 {
            let w = if k == n / 2 { 0.25 } else { 0.5 };
            sum += w * (sp.a[0][k] * sp.a[0][k] + sp.b[0][k] * sp.b[0][k]);
        }
        assert!((ms - sum).abs() < 1e-8, "{ms} vs {sum}");
    }
}
