//! Certified simplicity (no self-intersection) and curve-pair disjointness
//! via adaptive box covers with exact evaluation at rational circle points.
//!
//! Self-intersection is ruled out on the (theta, delta) torus: near the
//! diagonal (small |delta|) a chord bound from a certified minimum speed
//! keeps |w(theta+delta) - w(theta)| positive, and away from it an adaptive
//! quadtree certifies a positive distance on every box.

use crate::certify::grid::{certify_positive, dist2_between, CirclePoint, CurveEval};
use crate::certify::harmonic::{curve_components, HarmPoly};
use crate::error::CertifyError;
use crate::ratapprox::best_approx;
use crate::trig::RatCurve;
use crate::{rat_from_f64, rat_to_f64, Int, Rat};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone)]
pub struct SimplicityEvidence {
    /// certified lower bound on the parametric speed |w'|
    pub min_speed: Rat,
    /// coefficient bound on |w''|
    pub accel_bound: Rat,
    /// chord argument covers |delta| <= 2 atan(s_eta)
    pub s_eta: Rat,
    pub boxes: usize,
    pub max_depth: u32,
}

#[derive(Debug, Clone)]
pub struct DisjointnessEvidence {
    pub boxes: usize,
    pub max_depth: u32,
    /// smallest certified center distance seen (diagnostic)
    pub min_center_dist: f64,
}

/// A certified positive lower bound c on |w'|: picks c a bit under the
/// sampled minimum and proves |w'|^2 - c^2 > 0 on the whole circle.
pub fn certified_min_speed(curve: &RatCurve, max_depth: u32) -> Result<Rat, CertifyError> {
    let (w1, w2) = curve_components(curve);
    let d1 = w1.derivative();
    let d2 = w2.derivative();
    let speed2 = d1.mul_ref(&d1).add_ref(&d2.mul_ref(&d2));
    // float estimate of the minimum
    let mut min = f64::INFINITY;
    for i in 0..512 {
        let t = 2.0 * std::f64::consts::PI * i as f64 / 512.0;
        min = min.min(speed2.eval_f64(t));
    }
    if !(min > 0.0) {
        return Err(CertifyError::GridCap);
    }
    let mut frac = 0.8;
    for _ in 0..6 {
        let c2 = best_approx(
            &rat_from_f64(frac * min).unwrap(),
            &Int::from(1_000_000),
        );
        if !c2.is_positive() {
            return Err(CertifyError::GridCap);
        }
        let g = speed2.sub_ref(&HarmPoly::constant(c2.clone()));
        if certify_positive(&g.to_cheb(), &g.deriv_bound(), max_depth).is_ok() {
            // sqrt lower bound: rational r with r^2 <= c2
            return Ok(rat_sqrt_lower(&c2));
        }
        frac *= 0.5;
    }
    Err(CertifyError::GridCap)
}

/// A rational r >= 0 with r^2 <= x, within a factor (1 - 2^-20) of sqrt(x).
fn rat_sqrt_lower(x: &Rat) -> Rat {
    let f = rat_to_f64(x).sqrt();
    let mut r = best_approx(&rat_from_f64(f * (1.0 - 1e-9)).unwrap(), &Int::from(1_000_000));
    while &r * &r > *x && r.is_positive() {
        r *= Rat::new(4095.into(), 4096.into());
    }
    if r.is_negative() {
        Rat::zero()
    } else {
        r
    }
}

/// Proves the closed curve has no self-intersection.
pub fn prove_simple(
    curve: &RatCurve,
    eval: &CurveEval,
    max_depth: u32,
    max_boxes: usize,
) -> Result<SimplicityEvidence, CertifyError> {
    let m1 = certified_min_speed(curve, 26)?;
    let m2 = eval.accel_bound.clone();
    // chord bound: |w(t+d) - w(t)| >= m1 |d| - m2 d^2 / 2 > 0 for
    // 0 < |d| < 2 m1 / m2; stay at half that and within one chart
    let eta = {
        let e = &m1 / &m2;
        if e > Rat::one() {
            Rat::one()
        } else {
            e
        }
    };
    // dyadic s_eta <= eta/2 (<= tan(eta/2), so 2 atan(s_eta) <= eta)
    let s_eta = dyadic_floor(&(&eta / Rat::from_integer(2.into())), 20);
    if !s_eta.is_positive() {
        return Err(CertifyError::GridCap);
    }
    // quadtree over theta (both charts) x delta (chart A minus the band,
    // all of chart B)
    let slope_theta = Rat::from_integer(4.into()) * &eval.speed_bound;
    let slope_delta = Rat::from_integer(2.into()) * &eval.speed_bound;
    let one = Rat::one();
    let mut seeds = Vec::new();
    for theta_chart in [false, true] {
        for (dlo, dhi, dchart) in [
            (-one.clone(), -s_eta.clone(), false),
            (s_eta.clone(), one.clone(), false),
            (-one.clone(), one.clone(), true),
        ] {
            seeds.push(QuadBox {
                a_lo: -one.clone(),
                a_hi: one.clone(),
                a_chart: theta_chart,
                b_lo: dlo,
                b_hi: dhi,
                b_chart: dchart,
                depth: 0,
            });
        }
    }
    let eval_d2 = |pa: &CirclePoint, pb: &CirclePoint| {
        // d^2 between w(theta) and w(theta + delta)
        let p_theta = eval.point(pa);
        let rotated = pa.rotate(pb);
        let p_shift = eval.point(&rotated);
        dist2_between(p_theta, p_shift)
    };
    let stats = clear_boxes(&eval_d2, &slope_theta, &slope_delta, seeds, max_depth, max_boxes)?;
    Ok(SimplicityEvidence {
        min_speed: m1,
        accel_bound: m2,
        s_eta,
        boxes: stats.boxes,
        max_depth: stats.max_depth,
    })
}

/// Proves two closed curves never meet: the squared distance between any
/// point of one and any point of the other is positive.
pub fn prove_disjoint(
    a: &CurveEval,
    b: &CurveEval,
    max_depth: u32,
    max_boxes: usize,
) -> Result<DisjointnessEvidence, CertifyError> {
    let one = Rat::one();
    let mut seeds = Vec::new();
    for ca in [false, true] {
        for cb in [false, true] {
            seeds.push(QuadBox {
                a_lo: -one.clone(),
                a_hi: one.clone(),
                a_chart: ca,
                b_lo: -one.clone(),
                b_hi: one.clone(),
                b_chart: cb,
                depth: 0,
            });
        }
    }
    let slope_a = Rat::from_integer(2.into()) * &a.speed_bound;
    let slope_b = Rat::from_integer(2.into()) * &b.speed_bound;
    let eval_d2 =
        |pa: &CirclePoint, pb: &CirclePoint| dist2_between(a.point(pa), b.point(pb));
    let stats = clear_boxes(&eval_d2, &slope_a, &slope_b, seeds, max_depth, max_boxes)?;
    Ok(DisjointnessEvidence {
        boxes: stats.boxes,
        max_depth: stats.max_depth,
        min_center_dist: stats.min_center_dist,
    })
}

struct QuadBox {
    a_lo: Rat,
    a_hi: Rat,
    a_chart: bool,
    b_lo: Rat,
    b_hi: Rat,
    b_chart: bool,
    depth: u32,
}

struct QuadStats {
    boxes: usize,
    max_depth: u32,
    min_center_dist: f64,
}

/// Clears every box by the test d(center) > slope_a * r_a + slope_b * r_b,
/// where d is the square root of the supplied exact squared distance, the
/// slopes bound |dd/ds| on each axis, and r are the s-halfwidths.
fn clear_boxes(
    eval_d2: &(dyn Fn(&CirclePoint, &CirclePoint) -> (Int, Int) + Sync),
    slope_a: &Rat,
    slope_b: &Rat,
    seeds: Vec<QuadBox>,
    max_depth: u32,
    max_boxes: usize,
) -> Result<QuadStats, CertifyError> {
    use rayon::prelude::*;
    let mut frontier = seeds;
    let mut boxes = 0usize;
    let mut max_depth_seen = 0;
    let mut min_center_dist = f64::INFINITY;
    // breadth-first waves, each wave processed in parallel
    while !frontier.is_empty() {
        boxes += frontier.len();
        if boxes > max_boxes {
            return Err(CertifyError::GridCap);
        }
        let results: Vec<Result<(Vec<QuadBox>, f64, u32), CertifyError>> = frontier
            .par_iter()
            .map(|bx| process_box(eval_d2, slope_a, slope_b, bx, max_depth))
            .collect();
        let mut next = Vec::new();
        for r in results {
            let (children, dist, depth) = r?;
            max_depth_seen = max_depth_seen.max(depth);
            if dist < min_center_dist {
                min_center_dist = dist;
            }
            next.extend(children);
        }
        frontier = next;
    }
    Ok(QuadStats { boxes, max_depth: max_depth_seen, min_center_dist })
}

fn process_box(
    eval_d2: &(dyn Fn(&CirclePoint, &CirclePoint) -> (Int, Int) + Sync),
    slope_a: &Rat,
    slope_b: &Rat,
    bx: &QuadBox,
    max_depth: u32,
) -> Result<(Vec<QuadBox>, f64, u32), CertifyError> {
    let half = Rat::new(1.into(), 2.into());
    let a_mid = (&bx.a_lo + &bx.a_hi) * &half;
    let b_mid = (&bx.b_lo + &bx.b_hi) * &half;
    let r_a = (&bx.a_hi - &bx.a_lo) * &half;
    let r_b = (&bx.b_hi - &bx.b_lo) * &half;
    let pa = CirclePoint::from_half_angle(a_mid.numer(), a_mid.denom(), bx.a_chart);
    let pb = CirclePoint::from_half_angle(b_mid.numer(), b_mid.denom(), bx.b_chart);
    let (d2n, d2d) = eval_d2(&pa, &pb);
    let need = slope_a * &r_a + slope_b * &r_b;
    let need2 = &need * &need;
    // d2n/d2d > need2  <=>  d2n * need2.den > need2.num * d2d
    let ok = d2n.is_positive() && &d2n * need2.denom() > need2.numer() * &d2d;
    if ok {
        let d = rat_to_f64(&Rat::new(d2n, d2d)).sqrt();
        return Ok((Vec::new(), d, bx.depth));
    }
    if bx.depth >= max_depth {
        return Err(CertifyError::GridCap);
    }
    let mut children = Vec::with_capacity(2);
    if r_a >= r_b {
        children.push(QuadBox {
            a_lo: bx.a_lo.clone(),
            a_hi: a_mid.clone(),
            a_chart: bx.a_chart,
            b_lo: bx.b_lo.clone(),
            b_hi: bx.b_hi.clone(),
            b_chart: bx.b_chart,
            depth: bx.depth + 1,
        });
        children.push(QuadBox {
            a_lo: a_mid,
            a_hi: bx.a_hi.clone(),
            a_chart: bx.a_chart,
            b_lo: bx.b_lo.clone(),
            b_hi: bx.b_hi.clone(),
            b_chart: bx.b_chart,
            depth: bx.depth + 1,
        });
    } else {
        children.push(QuadBox {
            a_lo: bx.a_lo.clone(),
            a_hi: bx.a_hi.clone(),
            a_chart: bx.a_chart,
            b_lo: bx.b_lo.clone(),
            b_hi: b_mid.clone(),
            b_chart: bx.b_chart,
            depth: bx.depth + 1,
        });
        children.push(QuadBox {
            a_lo: bx.a_lo.clone(),
            a_hi: bx.a_hi.clone(),
            a_chart: bx.a_chart,
            b_lo: b_mid,
            b_hi: bx.b_hi.clone(),
            b_chart: bx.b_chart,
            depth: bx.depth + 1,
        });
    }
    Ok((children, f64::INFINITY, bx.depth))
}

/// Largest dyadic number with denominator 2^bits that is <= x.
fn dyadic_floor(x: &Rat, bits: u32) -> Rat {
    let scale = Int::one() << (bits as usize);
    let scaled = (x * Rat::from_integer(scale.clone())).floor();
    scaled / Rat::from_integer(scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trig::{interpolate, FloatCurve};

    fn circle_points(radius: f64, n: usize) -> Vec<(f64, f64)> {
        (0..n)
            .map(|i| {
                let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                (radius * t.cos(), radius * t.sin())
            })
            .collect()
    }

    fn rat_curve(points: &[(f64, f64)]) -> RatCurve {
        let c: FloatCurve = interpolate(points).unwrap();
        c.rationalize(&Int::from(1_000_000))
    }

    #[test]
    fn unit_circle_is_simple() {
        let c = rat_curve(&circle_points(1.0, 5));
        let eval = CurveEval::new(&c);
        let ev = prove_simple(&c, &eval, 30, 2_000_000).unwrap();
        assert!(ev.min_speed > Rat::new(4.into(), 5.into()));
    }

    #[test]
    fn limacon_with_inner_loop_is_not_simple() {
        // (1 + 2 cos t)(cos t, sin t) self-intersects at the origin
        let n = 9;
        let pts: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                ((1.0 + 2.0 * t.cos()) * t.cos(), (1.0 + 2.0 * t.cos()) * t.sin())
            })
            .collect();
        let c = rat_curve(&pts);
        let eval = CurveEval::new(&c);
        assert!(prove_simple(&c, &eval, 14, 300_000).is_err());
    }

    #[test]
    fn concentric_circles_are_disjoint() {
        let a = CurveEval::new(&rat_curve(&circle_points(1.0, 5)));
        let b = CurveEval::new(&rat_curve(&circle_points(1.1, 5)));
        let ev = prove_disjoint(&a, &b, 30, 2_000_000).unwrap();
        assert!(ev.min_center_dist < 0.2 && ev.min_center_dist > 0.05);
    }

    #[test]
    fn touching_curves_fail_disjointness() {
        // two unit circles offset by (2, 0) touch at (1, 0)
        let a = rat_curve(&circle_points(1.0, 5));
        let mut shifted = circle_points(1.0, 5);
        for p in &mut shifted {
            p.0 += 2.0;
        }
        let b = rat_curve(&shifted);
        let r = prove_disjoint(&CurveEval::new(&a), &CurveEval::new(&b), 12, 200_000);
        assert!(r.is_err());
    }
}
