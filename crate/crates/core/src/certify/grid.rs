//! Certified evaluation of trigonometric polynomials at rational points of
//! the unit circle, and the adaptive Lipschitz grid that proves strict
//! positivity.
//!
//! Circle points come from the tangent half-angle map in two charts:
//! chart A sends s in [-1, 1] to theta = 2 atan(s) in [-pi/2, pi/2], and
//! chart B to the antipode theta + pi. Since |d theta / d s| <= 2, an
//! s-interval of radius r covers a theta-interval of radius at most 2r,
//! which turns coefficient Lipschitz bounds into grid conditions. All
//! arithmetic is integer (no rational normalization in the hot path).

use crate::certify::harmonic::ChebForm;
use crate::error::CertifyError;
use crate::{Int, Rat};
use num_bigint::Sign;
use num_integer::Integer;
use num_traits::{One, Zero};

/// A rational point on the unit circle: (u, v) = (un/den, vn/den) with
/// un^2 + vn^2 = den^2.
#[derive(Debug, Clone)]
pub struct CirclePoint {
    pub un: Int,
    pub vn: Int,
    pub den: Int,
}

impl CirclePoint {
    /// Chart A point for s = sn/sd; chart B is its antipode.
    pub fn from_half_angle(sn: &Int, sd: &Int, chart_b: bool) -> CirclePoint {
        let sn2 = sn * sn;
        let sd2 = sd * sd;
        let den = &sn2 + &sd2;
        let mut un = &sd2 - &sn2;
        let mut vn = Int::from(2) * sn * sd;
        if chart_b {
            un = -un;
            vn = -vn;
        }
        CirclePoint { un, vn, den }
    }

    /// The circle point at theta1 + theta2 via the rotation formulas.
    pub fn rotate(&self, o: &CirclePoint) -> CirclePoint {
        CirclePoint {
            un: &self.un * &o.un - &self.vn * &o.vn,
            vn: &self.un * &o.vn + &self.vn * &o.un,
            den: &self.den * &o.den,
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let d = crate::rat_to_f64(&Rat::new(self.den.clone(), Int::one()));
        (
            crate::rat_to_f64(&Rat::new(self.un.clone(), Int::one())) / d,
            crate::rat_to_f64(&Rat::new(self.vn.clone(), Int::one())) / d,
        )
    }

    pub fn to_rat(&self) -> (Rat, Rat) {
        (
            Rat::new(self.un.clone(), self.den.clone()),
            Rat::new(self.vn.clone(), self.den.clone()),
        )
    }
}

/// Integer-cleared form of A(u) + v B(u) for fast exact evaluation at
/// circle points: value = (eval of a at u + v * eval of b at u) / den.
#[derive(Debug, Clone)]
pub struct ScaledCheb {
    /// integer coefficients of A scaled by den
    a: Vec<Int>,
    /// integer coefficients of B scaled by den
    b: Vec<Int>,
    den: Int,
    /// max(deg A, deg B + 1), the homogenization degree
    deg: usize,
}

impl ScaledCheb {
    pub fn new(form: &ChebForm) -> ScaledCheb {
        let mut lcm = Int::one();
        for c in form.a.coeffs().iter().chain(form.b.coeffs()) {
            lcm = lcm.lcm(c.denom());
        }
        let scale = |p: &crate::RatPoly1| -> Vec<Int> {
            p.coeffs().iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
        };
        let a = scale(&form.a);
        let b = scale(&form.b);
        let deg = (form.a.degree().map_or(0, |d| d)).max(form.b.degree().map_or(0, |d| d + 1));
        ScaledCheb { a, b, den: lcm, deg }
    }

    /// Exact value at a circle point as (numerator, positive denominator).
    pub fn eval(&self, p: &CirclePoint) -> (Int, Int) {
        // homogenized Horner: A(u) * den^deg = sum a_i un^i den^(deg - i)
        let mut dpow = Vec::with_capacity(self.deg + 1);
        dpow.push(Int::one());
        for i in 1..=self.deg {
            dpow.push(&dpow[i - 1] * &p.den);
        }
        let horner = |coeffs: &[Int], extra: usize| -> Int {
            let mut acc = Int::zero();
            for (k, c) in coeffs.iter().enumerate().rev() {
                acc = acc * &p.un + c * &dpow[self.deg - k - extra];
            }
            acc
        };
        let mut num = if self.a.is_empty() { Int::zero() } else { horner(&self.a, 0) };
        if !self.b.is_empty() {
            num += &p.vn * horner(&self.b, 1);
        }
        let den = &self.den * &dpow[self.deg];
        debug_assert!(den.sign() == Sign::Plus);
        (num, den)
    }

    pub fn sign_at(&self, p: &CirclePoint) -> i32 {
        match self.eval(p).0.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }
}

/// Evidence that a trigonometric polynomial is strictly positive on the
/// whole circle: an adaptive two-chart grid where every sample value beats
/// the Lipschitz radius, plus the bound used.
#[derive(Debug, Clone)]
pub struct GridEvidence {
    pub lipschitz: Rat,
    pub samples: usize,
    pub max_depth: u32,
    /// smallest certified sample value found (diagnostic, as f64)
    pub min_sample: f64,
}

/// Proves g > 0 everywhere on the circle, where g is given in Chebyshev
/// form with Lipschitz bound `lip` on dg/dtheta: on each chart interval of
/// s-radius r around a sample, g > 0 follows from g(sample) > lip * 2r.
pub fn certify_positive(
    g: &ChebForm,
    lip: &Rat,
    max_depth: u32,
) -> Result<GridEvidence, CertifyError> {
    let sc = ScaledCheb::new(g);
    let mut samples = 0usize;
    let mut depth_seen = 0u32;
    let mut min_sample = f64::INFINITY;
    // lip as a fraction; all comparisons cross-multiplied
    let (lip_n, lip_d) = (lip.numer().clone(), lip.denom().clone());
    for chart_b in [false, true] {
        // stack of dyadic intervals [lo, hi] in s-units of 2^-depth over [-1, 1]
        let mut stack: Vec<(Int, Int, u32)> = vec![(Int::from(-1), Int::from(1), 0)];
        while let Some((lo, hi, depth)) = stack.pop() {
            depth_seen = depth_seen.max(depth);
            // midpoint in the dyadic grid at depth+1
            let mid_num = &lo + &hi; // denominator 2^(depth+1)
            let sd = Int::one() << (depth + 1);
            let pt = CirclePoint::from_half_angle(&mid_num, &sd, chart_b);
            let (num, den) = sc.eval(&pt);
            samples += 1;
            // radius in s is (hi - lo)/2^(depth+1) = 2^-depth... the interval
            // [lo, hi] has width (hi-lo)/2^depth; theta radius <= width
            let width_num = &hi - &lo; // over 2^depth
            // condition: num/den > lip * width = lip_n * width_num / (lip_d * 2^depth)
            // i.e. num * lip_d * 2^depth > lip_n * width_num * den
            let lhs = &num * &lip_d * (Int::one() << depth);
            let rhs = &lip_n * &width_num * &den;
            if num.sign() == Sign::Plus && lhs > rhs {
                let v = crate::rat_to_f64(&Rat::new(num, den));
                if v < min_sample {
                    min_sample = v;
                }
                continue;
            }
            if depth >= max_depth {
                return Err(CertifyError::GridCap);
            }
            let two_lo = &lo + &lo;
            let two_hi = &hi + &hi;
            stack.push((two_lo.clone(), mid_num.clone(), depth + 1));
            stack.push((mid_num, two_hi, depth + 1));
        }
    }
    Ok(GridEvidence { lipschitz: lip.clone(), samples, max_depth: depth_seen, min_sample })
}


/// Both components of a rational curve cleared to integers over one common
/// denominator, for fast exact point evaluation at circle points.
#[derive(Debug, Clone)]
pub struct CurveEval {
    xa: Vec<Int>,
    xb: Vec<Int>,
    ya: Vec<Int>,
    yb: Vec<Int>,
    den: Int,
    deg: usize,
    /// sup bound on |w'| (sum of component derivative bounds)
    pub speed_bound: Rat,
    /// sup bound on |w''|
    pub accel_bound: Rat,
}

impl CurveEval {
    pub fn new(curve: &crate::trig::RatCurve) -> CurveEval {
        use crate::certify::harmonic::curve_components;
        let (w1, w2) = curve_components(curve);
        let c1 = w1.to_cheb();
        let c2 = w2.to_cheb();
        let mut lcm = Int::one();
        for p in [&c1.a, &c1.b, &c2.a, &c2.b] {
            for c in p.coeffs() {
                lcm = lcm.lcm(c.denom());
            }
        }
        let scale = |p: &crate::RatPoly1| -> Vec<Int> {
            p.coeffs().iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
        };
        let deg = [
            c1.a.degree().map_or(0, |d| d),
            c2.a.degree().map_or(0, |d| d),
            c1.b.degree().map_or(0, |d| d + 1),
            c2.b.degree().map_or(0, |d| d + 1),
        ]
        .into_iter()
        .max()
        .unwrap();
        let mut accel = Rat::zero();
        let mut speed = Rat::zero();
        for h in [&w1, &w2] {
            speed += h.deriv_bound();
            accel += h.derivative().deriv_bound();
        }
        CurveEval {
            xa: scale(&c1.a),
            xb: scale(&c1.b),
            ya: scale(&c2.a),
            yb: scale(&c2.b),
            den: lcm,
            deg,
            speed_bound: speed,
            accel_bound: accel,
        }
    }

    /// (x numerator, y numerator, common positive denominator).
    pub fn point(&self, p: &CirclePoint) -> (Int, Int, Int) {
        let mut dpow = Vec::with_capacity(self.deg + 1);
        dpow.push(Int::one());
        for i in 1..=self.deg {
            dpow.push(&dpow[i - 1] * &p.den);
        }
        let horner = |coeffs: &[Int], extra: usize| -> Int {
            let mut acc = Int::zero();
            for (k, c) in coeffs.iter().enumerate().rev() {
                acc = acc * &p.un + c * &dpow[self.deg - k - extra];
            }
            acc
        };
        let mut xn = if self.xa.is_empty() { Int::zero() } else { horner(&self.xa, 0) };
        if !self.xb.is_empty() {
            xn += &p.vn * horner(&self.xb, 1);
        }
        let mut yn = if self.ya.is_empty() { Int::zero() } else { horner(&self.ya, 0) };
        if !self.yb.is_empty() {
            yn += &p.vn * horner(&self.yb, 1);
        }
        (xn, yn, &self.den * &dpow[self.deg])
    }

    pub fn point_rat(&self, p: &CirclePoint) -> (Rat, Rat) {
        let (xn, yn, d) = self.point(p);
        (Rat::new(xn, d.clone()), Rat::new(yn, d))
    }

    pub fn point_f64(&self, p: &CirclePoint) -> (f64, f64) {
        let (x, y) = self.point_rat(p);
        (crate::rat_to_f64(&x), crate::rat_to_f64(&y))
    }
}

/// Squared distance between evaluated points of two curves, as an exact
/// (numerator, positive denominator) pair.
pub fn dist2_between(a: (Int, Int, Int), b: (Int, Int, Int)) -> (Int, Int) {
    let (x1, y1, d1) = a;
    let (x2, y2, d2) = b;
    let ex = &x1 * &d2 - &x2 * &d1;
    let ey = &y1 * &d2 - &y2 * &d1;
    let dd = &d1 * &d2;
    (&ex * &ex + &ey * &ey, &dd * &dd)
}
