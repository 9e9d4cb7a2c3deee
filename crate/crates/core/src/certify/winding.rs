//! Certified winding numbers: the exact winding of an inscribed rational
//! polygon, made rigorous by a chord-deviation bound that keeps the true
//! curve homotopic to the polygon in the punctured plane.

use crate::certify::grid::{CirclePoint, CurveEval};
use crate::error::CertifyError;
use crate::{Int, Rat};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone)]
pub struct WindingEvidence {
    pub winding: i32,
    pub vertices: usize,
    /// sup |curve - polygon| bound used
    pub deviation: Rat,
    /// squared clearance between the polygon and the test point
    pub min_dist2: Rat,
}

/// Winding number of the curve around `z`, certified for every point
/// within `clearance` of `z` (pass zero clearance for a single point).
///
/// The polygon interpolates the curve at 2n rational circle points; the
/// curve stays within M2 (2/n)^2 / 2 of the matching polygon chord, so if
/// the polygon clears z by more than deviation + clearance the winding
/// numbers agree.
pub fn winding_around(
    curve: &CurveEval,
    z: &(Rat, Rat),
    clearance: &Rat,
    max_refine: u32,
) -> Result<WindingEvidence, CertifyError> {
    let mut n = 64usize;
    for _ in 0..=max_refine {
        let verts = polygon_vertices(curve, n);
        // arc per segment <= 2 * (2/n) in theta; deviation <= M2 arc^2 / 8
        let arc = Rat::new(4.into(), n.into());
        let deviation = curve.accel_bound.clone() * &arc * &arc / Rat::from_integer(8.into());
        let need = &deviation + clearance;
        let need2 = &need * &need;
        let min_d2 = min_dist2_to_polygon(&verts, z);
        if min_d2 > need2 {
            let wn = polygon_winding(&verts, z);
            return Ok(WindingEvidence {
                winding: wn,
                vertices: verts.len(),
                deviation,
                min_dist2: min_d2,
            });
        }
        n *= 2;
    }
    Err(CertifyError::WindingInconclusive)
}

/// 2n vertices walking the full circle: chart A with s from -1 to 1, then
/// chart B likewise (the antipodes), which continues the angle from
/// (-pi/2 .. pi/2] to (pi/2 .. 3pi/2].
fn polygon_vertices(curve: &CurveEval, n: usize) -> Vec<(Rat, Rat)> {
    let mut verts = Vec::with_capacity(2 * n);
    for chart_b in [false, true] {
        for j in 0..n {
            let sn = Int::from(2 * j as i64 - n as i64);
            let sd = Int::from(n as i64);
            let pt = CirclePoint::from_half_angle(&sn, &sd, chart_b);
            verts.push(curve.point_rat(&pt));
        }
    }
    verts
}

fn cross(ax: &Rat, ay: &Rat, bx: &Rat, by: &Rat) -> Rat {
    ax * by - ay * bx
}

/// Exact winding number of a closed polygon around a point not on it.
fn polygon_winding(verts: &[(Rat, Rat)], z: &(Rat, Rat)) -> i32 {
    let mut wn = 0i32;
    let n = verts.len();
    for i in 0..n {
        let p = &verts[i];
        let q = &verts[(i + 1) % n];
        let upward = p.1 <= z.1 && q.1 > z.1;
        let downward = p.1 > z.1 && q.1 <= z.1;
        if upward || downward {
            let ex = &q.0 - &p.0;
            let ey = &q.1 - &p.1;
            let zx = &z.0 - &p.0;
            let zy = &z.1 - &p.1;
            let side = cross(&ex, &ey, &zx, &zy);
            if upward && side.is_positive() {
                wn += 1;
            } else if downward && side.is_negative() {
                wn -= 1;
            }
        }
    }
    wn
}

/// Exact squared distance from z to the nearest polygon edge.
fn min_dist2_to_polygon(verts: &[(Rat, Rat)], z: &(Rat, Rat)) -> Rat {
    let n = verts.len();
    let mut best: Option<Rat> = None;
    for i in 0..n {
        let p = &verts[i];
        let q = &verts[(i + 1) % n];
        let d2 = dist2_point_segment(z, p, q);
        if best.as_ref().map_or(true, |b| d2 < *b) {
            best = Some(d2);
        }
    }
    best.unwrap()
}

fn dist2_point_segment(z: &(Rat, Rat), p: &(Rat, Rat), q: &(Rat, Rat)) -> Rat {
    let ex = &q.0 - &p.0;
    let ey = &q.1 - &p.1;
    let len2 = &ex * &ex + &ey * &ey;
    let zx = &z.0 - &p.0;
    let zy = &z.1 - &p.1;
    if len2.is_zero() {
        return &zx * &zx + &zy * &zy;
    }
    let t = (&zx * &ex + &zy * &ey) / &len2;
    let t = if t < Rat::zero() {
        Rat::zero()
    } else if t > Rat::one() {
        Rat::one()
    } else {
        t
    };
    let cx = &zx - &(&ex * &t);
    let cy = &zy - &(&ey * &t);
    &cx * &cx + &cy * &cy
}
