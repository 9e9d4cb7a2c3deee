//! Planar polynomial vector fields with exact rational coefficients:
//! divergence, Jacobian action, and certified equilibrium isolation.

use crate::error::SystemError;
use crate::exact::interval::{eval_on_box, RatBox, RatInterval};
use crate::exact::resultant::{resultant2, Var};
use crate::exact::roots::isolate_real_roots;
use crate::exact::sturm::primitive_int;
use crate::scalar::Real;
use crate::{rat_to_f64, Rat, RatPoly2};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// The system x' = P(x, y), y' = Q(x, y) with exact rational coefficients.
///
/// Exactness is a construction requirement here, not an option: the whole
/// certification path depends on it. Parameter values are bound to
/// rationals up front and recorded for provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyVectorField {
    pub p: RatPoly2,
    pub q: RatPoly2,
    pub name: Option<String>,
    pub parameters: BTreeMap<String, Rat>,
}

/// Compiled flat-term form for fast trajectory work, generic over the
/// float scalar.
#[derive(Debug, Clone)]
pub struct FieldEval<R: Real = f64> {
    p_terms: Vec<(u32, u32, R)>,
    q_terms: Vec<(u32, u32, R)>,
    div_terms: Vec<(u32, u32, R)>,
    px_terms: Vec<(u32, u32, R)>,
    py_terms: Vec<(u32, u32, R)>,
    qx_terms: Vec<(u32, u32, R)>,
    qy_terms: Vec<(u32, u32, R)>,
    max_pow: usize,
}

impl PolyVectorField {
    pub fn new(p: RatPoly2, q: RatPoly2) -> Result<Self, SystemError> {
        if p.is_zero() && q.is_zero() {
            return Err(SystemError::ZeroField);
        }
        Ok(PolyVectorField { p, q, name: None, parameters: BTreeMap::new() })
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn with_parameter(mut self, key: &str, value: Rat) -> Self {
        self.parameters.insert(key.to_string(), value);
        self
    }

    /// div X = dP/dx + dQ/dy, exact.
    pub fn divergence(&self) -> RatPoly2 {
        self.p.diff_x().add_ref(&self.q.diff_y())
    }

    /// The reversed-time field (-P, -Q).
    pub fn reversed(&self) -> Self {
        let mut f = self.clone();
        f.p = f.p.scale(&-Rat::one());
        f.q = f.q.scale(&-Rat::one());
        f.name = self.name.as_ref().map(|n| format!("{n} (time-reversed)"));
        f
    }

    pub fn compile<R: Real>(&self) -> FieldEval<R> {
        let flat = |p: &RatPoly2| -> Vec<(u32, u32, R)> {
            p.terms()
                .map(|((i, j), c)| (*i, *j, R::from_f64(rat_to_f64(c)).unwrap()))
                .collect()
        };
        let div = self.divergence();
        let max_pow = [&self.p, &self.q]
            .iter()
            .filter_map(|p| p.total_degree())
            .max()
            .unwrap_or(0) as usize;
        FieldEval {
            p_terms: flat(&self.p),
            q_terms: flat(&self.q),
            div_terms: flat(&div),
            px_terms: flat(&self.p.diff_x()),
            py_terms: flat(&self.p.diff_y()),
            qx_terms: flat(&self.q.diff_x()),
            qy_terms: flat(&self.q.diff_y()),
            max_pow,
        }
    }

    /// DX(point) * vector in floating point.
    pub fn jacobian_apply(&self, point: (f64, f64), vector: (f64, f64)) -> (f64, f64) {
        self.compile::<f64>().jacobian_apply(point, vector)
    }

    /// Certified boxes, each containing exactly one equilibrium, shrunk to
    /// `width`. Uses resultant elimination in both orders, Sturm-based root
    /// isolation per coordinate, and interval Newton validation.
    pub fn equilibria(&self, width: &Rat) -> Result<Vec<RatBox>, SystemError> {
        equilibria_impl(self, width)
    }
}

impl<R: Real> FieldEval<R> {
    #[inline]
    fn powers(&self, v: R, out: &mut [R; 16]) {
        out[0] = R::one();
        for k in 1..=self.max_pow {
            out[k] = out[k - 1] * v;
        }
    }

    #[inline]
    fn eval_terms(terms: &[(u32, u32, R)], xp: &[R; 16], yp: &[R; 16]) -> R {
        let mut acc = R::zero();
        for &(i, j, c) in terms {
            acc = acc + c * xp[i as usize] * yp[j as usize];
        }
        acc
    }

    /// (P, Q) at a point.
    #[inline]
    pub fn eval(&self, x: R, y: R) -> (R, R) {
        let mut xp = [R::zero(); 16];
        let mut yp = [R::zero(); 16];
        self.powers(x, &mut xp);
        self.powers(y, &mut yp);
        (
            Self::eval_terms(&self.p_terms, &xp, &yp),
            Self::eval_terms(&self.q_terms, &xp, &yp),
        )
    }

    /// div X at a point.
    #[inline]
    pub fn divergence(&self, x: R, y: R) -> R {
        let mut xp = [R::zero(); 16];
        let mut yp = [R::zero(); 16];
        self.powers(x, &mut xp);
        self.powers(y, &mut yp);
        Self::eval_terms(&self.div_terms, &xp, &yp)
    }

    pub fn jacobian(&self, x: R, y: R) -> [[R; 2]; 2] {
        let mut xp = [R::zero(); 16];
        let mut yp = [R::zero(); 16];
        self.powers(x, &mut xp);
        self.powers(y, &mut yp);
        [
            [
                Self::eval_terms(&self.px_terms, &xp, &yp),
                Self::eval_terms(&self.py_terms, &xp, &yp),
            ],
            [
                Self::eval_terms(&self.qx_terms, &xp, &yp),
                Self::eval_terms(&self.qy_terms, &xp, &yp),
            ],
        ]
    }

    pub fn jacobian_apply(&self, point: (R, R), vector: (R, R)) -> (R, R) {
        let j = self.jacobian(point.0, point.1);
        (
            j[0][0] * vector.0 + j[0][1] * vector.1,
            j[1][0] * vector.0 + j[1][1] * vector.1,
        )
    }
}

fn equilibria_impl(v: &PolyVectorField, width: &Rat) -> Result<Vec<RatBox>, SystemError> {
    // Degenerate directions: if both components ignore a variable, the zero
    // set is a union of vertical/horizontal lines unless empty.
    let ignores_y = v.p.degree_y().is_none() || v.p.degree_y() == Some(0);
    let ignores_y = ignores_y && (v.q.degree_y().is_none() || v.q.degree_y() == Some(0));
    let ignores_x = (v.p.degree_x().unwrap_or(0) == 0) && (v.q.degree_x().unwrap_or(0) == 0);
    if ignores_x || ignores_y {
        return Err(SystemError::NonIsolatedEquilibria);
    }

    let rx = resultant2(&v.p, &v.q, Var::Y).map_err(|_| SystemError::ZeroField)?;
    let ry = resultant2(&v.p, &v.q, Var::X).map_err(|_| SystemError::ZeroField)?;
    if rx.is_zero() || ry.is_zero() {
        return Err(SystemError::NonIsolatedEquilibria);
    }
    let iso_tol = Rat::new(1.into(), 1024.into());
    let xs = isolate_real_roots(&rx, &iso_tol).map_err(|_| SystemError::NonIsolatedEquilibria)?;
    let ys = isolate_real_roots(&ry, &iso_tol).map_err(|_| SystemError::NonIsolatedEquilibria)?;

    let rx_int = primitive_int(&rx);
    let ry_int = primitive_int(&ry);
    let mut out = Vec::new();
    for ix in &xs {
        for iy in &ys {
            let candidate = RatBox {
                x: RatInterval::new(ix.lo.clone(), ix.hi.clone()),
                y: RatInterval::new(iy.lo.clone(), iy.hi.clone()),
            };
            match validate_box(v, &rx_int, &ry_int, candidate, width) {
                Validation::Empty => {}
                Validation::Unique(b) => out.push(b),
                Validation::Unknown(b) => {
                    let (cx, cy) = b.center_f64();
                    return Err(SystemError::ValidationFailed(cx, cy));
                }
            }
        }
    }
    Ok(out)
}

/// Splits an interval avoiding any root of `avoid` at the split point, so
/// zeros never land exactly on a box boundary. The interval holds at most
/// one root, hence at most one candidate can collide.
fn safe_split(iv: &RatInterval, avoid: &crate::exact::sturm::IntPoly) -> Rat {
    let w = iv.width();
    let mid = iv.midpoint();
    for denom in [0i64, 16, 32] {
        let cand = if denom == 0 {
            mid.clone()
        } else {
            &mid + &w / Rat::from_integer(denom.into())
        };
        if crate::exact::sturm::sign_at(avoid, &cand) != 0 {
            return cand;
        }
    }
    mid
}

enum Validation {
    Empty,
    Unique(RatBox),
    Unknown(RatBox),
}

/// Interval-Newton validation: N(B) = m - J(B)^-1 F(m). If N(B) lies in the
/// interior of B there is exactly one zero in B; if N(B) misses B there is
/// none. Otherwise bisect, up to a depth cap.
fn validate_box(
    v: &PolyVectorField,
    rx: &crate::exact::sturm::IntPoly,
    ry: &crate::exact::sturm::IntPoly,
    b: RatBox,
    width: &Rat,
) -> Validation {
    let jpx = v.p.diff_x();
    let jpy = v.p.diff_y();
    let jqx = v.q.diff_x();
    let jqy = v.q.diff_y();
    let mut queue = vec![(b, 0u32)];
    let mut found: Option<RatBox> = None;
    while let Some((cur, depth)) = queue.pop() {
        // quick exclusion by direct interval evaluation
        let fp = eval_on_box(&v.p, &cur);
        let fq = eval_on_box(&v.q, &cur);
        if !fp.contains_zero() || !fq.contains_zero() {
            continue;
        }
        if depth > 80 {
            return Validation::Unknown(cur);
        }
        if let Some(n) = newton_step(v, &jpx, &jpy, &jqx, &jqy, &cur) {
            if !n.x.intersects(&cur.x) || !n.y.intersects(&cur.y) {
                continue; // no zero in this box
            }
            if n.x.is_subset_of_interior(&cur.x) && n.y.is_subset_of_interior(&cur.y) {
                // exactly one zero in cur; contract until the width target
                let mut tight = intersect(&n, &cur);
                let mut stalled = false;
                while tight.max_width() > *width {
                    match newton_step(v, &jpx, &jpy, &jqx, &jqy, &tight) {
                        Some(n2) => {
                            let n2 = intersect(&n2, &tight);
                            if n2.max_width() * Rat::from_integer(2.into()) > tight.max_width() {
                                stalled = true;
                            }
                            tight = n2;
                        }
                        None => stalled = true,
                    }
                    if stalled {
                        bisect_into(&mut queue, &tight, depth + 1, rx, ry);
                        break;
                    }
                }
                if !stalled {
                    if found.is_some() {
                        // two validated zeros from one candidate pair: the
                        // caller's isolation should have prevented this
                        return Validation::Unknown(tight);
                    }
                    found = Some(tight);
                }
                continue;
            }
        }
        // inconclusive: bisect away from resultant roots
        bisect_into(&mut queue, &cur, depth + 1, rx, ry);
    }
    match found {
        Some(b) => Validation::Unique(b),
        None => Validation::Empty,
    }
}

fn newton_step(
    v: &PolyVectorField,
    jpx: &RatPoly2,
    jpy: &RatPoly2,
    jqx: &RatPoly2,
    jqy: &RatPoly2,
    cur: &RatBox,
) -> Option<RatBox> {
    let m = cur.center();
    let mx = RatInterval::point(m.0.clone());
    let my = RatInterval::point(m.1.clone());
    let fmx = eval_on_box(&v.p, &RatBox { x: mx.clone(), y: my.clone() });
    let fmy = eval_on_box(&v.q, &RatBox { x: mx, y: my });
    let a = eval_on_box(jpx, cur);
    let b = eval_on_box(jpy, cur);
    let c = eval_on_box(jqx, cur);
    let d = eval_on_box(jqy, cur);
    let det = a.mul(&d).sub(&b.mul(&c));
    if det.contains_zero() {
        return None;
    }
    let nx = d.mul(&fmx).sub(&b.mul(&fmy)).div(&det)?;
    let ny = a.mul(&fmy).sub(&c.mul(&fmx)).div(&det)?;
    Some(RatBox {
        x: RatInterval::new(&m.0 - &nx.hi, &m.0 - &nx.lo),
        y: RatInterval::new(&m.1 - &ny.hi, &m.1 - &ny.lo),
    })
}

fn intersect(a: &RatBox, b: &RatBox) -> RatBox {
    let lo = |p: &Rat, q: &Rat| if p > q { p.clone() } else { q.clone() };
    let hi = |p: &Rat, q: &Rat| if p < q { p.clone() } else { q.clone() };
    RatBox {
        x: RatInterval::new(lo(&a.x.lo, &b.x.lo), hi(&a.x.hi, &b.x.hi)),
        y: RatInterval::new(lo(&a.y.lo, &b.y.lo), hi(&a.y.hi, &b.y.hi)),
    }
}

fn bisect_into(
    queue: &mut Vec<(RatBox, u32)>,
    b: &RatBox,
    depth: u32,
    rx: &crate::exact::sturm::IntPoly,
    ry: &crate::exact::sturm::IntPoly,
) {
    if b.x.width() >= b.y.width() {
        let mid = safe_split(&b.x, rx);
        queue.push((
            RatBox { x: RatInterval::new(b.x.lo.clone(), mid.clone()), y: b.y.clone() },
            depth,
        ));
        queue.push((RatBox { x: RatInterval::new(mid, b.x.hi.clone()), y: b.y.clone() }, depth));
    } else {
        let mid = safe_split(&b.y, ry);
        queue.push((
            RatBox { x: b.x.clone(), y: RatInterval::new(b.y.lo.clone(), mid.clone()) },
            depth,
        ));
        queue.push((RatBox { x: b.x.clone(), y: RatInterval::new(mid, b.y.hi.clone()) }, depth));
    }
}

/// Sturm evidence for an equilibrium box: both elimination polynomials have
/// exactly one root in the box's projections.
pub fn elimination_evidence(v: &PolyVectorField, b: &RatBox) -> Result<(usize, usize), SystemError> {
    let rx = resultant2(&v.p, &v.q, Var::Y).map_err(|_| SystemError::ZeroField)?;
    let ry = resultant2(&v.p, &v.q, Var::X).map_err(|_| SystemError::ZeroField)?;
    let cx = crate::exact::sturm::sturm_count_int(&primitive_int(&rx), &b.x.lo, &b.x.hi);
    let cy = crate::exact::sturm::sturm_count_int(&primitive_int(&ry), &b.y.lo, &b.y.hi);
    Ok((cx.closed(), cy.closed()))
}

/// Named benchmark fields.
pub mod gallery {
    use super::*;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    /// x' = y - eps(x^3/3 - x), y' = -x
    pub fn van_der_pol(eps: Rat) -> PolyVectorField {
        let p = RatPoly2::from_terms([
            ((0, 1), Rat::one()),
            ((3, 0), -&eps / Rat::from_integer(3.into())),
            ((1, 0), eps.clone()),
        ]);
        let qq = RatPoly2::from_terms([((1, 0), q(-1, 1))]);
        PolyVectorField::new(p, qq)
            .unwrap()
            .named("van der Pol")
            .with_parameter("eps", eps)
    }

    /// x' = a - (b+1)x + x^2 y, y' = bx - x^2 y
    pub fn brusselator(a: Rat, b: Rat) -> PolyVectorField {
        let p = RatPoly2::from_terms([
            ((0, 0), a.clone()),
            ((1, 0), -(&b + Rat::one())),
            ((2, 1), Rat::one()),
        ]);
        let qq = RatPoly2::from_terms([((1, 0), b.clone()), ((2, 1), q(-1, 1))]);
        PolyVectorField::new(p, qq)
            .unwrap()
            .named("Brusselator")
            .with_parameter("a", a)
            .with_parameter("b", b)
    }

    /// x' = y - (x^5 - mu x^3 + delta x), y' = -x
    pub fn rychkov(mu: Rat, delta: Rat) -> PolyVectorField {
        let p = RatPoly2::from_terms([
            ((0, 1), Rat::one()),
            ((5, 0), q(-1, 1)),
            ((3, 0), mu.clone()),
            ((1, 0), -delta.clone()),
        ]);
        let qq = RatPoly2::from_terms([((1, 0), q(-1, 1))]);
        PolyVectorField::new(p, qq)
            .unwrap()
            .named("Rychkov")
            .with_parameter("mu", mu)
            .with_parameter("delta", delta)
    }

    /// x' = -y + x(1 - x^2 - y^2), y' = x + y(1 - x^2 - y^2): the unit
    /// circle is its limit cycle, with closed forms for everything.
    pub fn circle() -> PolyVectorField {
        let p = RatPoly2::from_terms([
            ((0, 1), q(-1, 1)),
            ((1, 0), Rat::one()),
            ((3, 0), q(-1, 1)),
            ((1, 2), q(-1, 1)),
        ]);
        let qq = RatPoly2::from_terms([
            ((1, 0), Rat::one()),
            ((0, 1), Rat::one()),
            ((2, 1), q(-1, 1)),
            ((0, 3), q(-1, 1)),
        ]);
        PolyVectorField::new(p, qq).unwrap().named("circle system")
    }

    /// x' = y, y' = -x: a linear center, div = 0, every orbit periodic.
    pub fn linear_center() -> PolyVectorField {
        let p = RatPoly2::from_terms([((0, 1), Rat::one())]);
        let qq = RatPoly2::from_terms([((1, 0), q(-1, 1))]);
        PolyVectorField::new(p, qq).unwrap().named("linear center")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn divergence_examples() {
        // linear center: div = 0
        assert!(gallery::linear_center().divergence().is_zero());
        // van der Pol with symbolic-free eps = 1: div = 1 - x^2
        let vdp = gallery::van_der_pol(Rat::one());
        let expect = RatPoly2::from_terms([((0, 0), Rat::one()), ((2, 0), q(-1, 1))]);
        assert_eq!(vdp.divergence(), expect);
        // Brusselator a=1, b=3: div = -(b+1) + 2xy - x^2
        let br = gallery::brusselator(Rat::one(), q(3, 1));
        let expect = RatPoly2::from_terms([
            ((0, 0), q(-4, 1)),
            ((1, 1), q(2, 1)),
            ((2, 0), q(-1, 1)),
        ]);
        assert_eq!(br.divergence(), expect);
    }

    #[test]
    fn divergence_is_linear() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for _ in 0..20 {
            let rand_poly = |rng: &mut rand::rngs::StdRng| {
                let mut p = RatPoly2::zero();
                for _ in 0..6 {
                    p.add_term(
                        rng.random_range(0..4),
                        rng.random_range(0..4),
                        q(rng.random_range(-9..=9), 1),
                    );
                }
                p
            };
            let p1 = rand_poly(&mut rng);
            let q1 = rand_poly(&mut rng);
            let p2 = rand_poly(&mut rng);
            let q2 = rand_poly(&mut rng);
            let sum = PolyVectorField::new(p1.add_ref(&p2), q1.add_ref(&q2));
            let (Ok(sum), Ok(a), Ok(b)) = (
                sum,
                PolyVectorField::new(p1, q1),
                PolyVectorField::new(p2, q2),
            ) else {
                continue;
            };
            assert_eq!(sum.divergence(), a.divergence().add_ref(&b.divergence()));
        }
    }

    #[test]
    fn jacobian_apply_basics() {
        let lc = gallery::linear_center();
        assert_eq!(lc.jacobian_apply((3.0, -2.0), (1.0, 0.0)), (0.0, -1.0));
        let f = PolyVectorField::new(
            RatPoly2::from_terms([((2, 0), Rat::one())]),
            RatPoly2::zero(),
        )
        .unwrap();
        assert_eq!(f.jacobian_apply((2.0, 0.0), (1.0, 0.0)), (4.0, 0.0));
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(17);
        for _ in 0..10 {
            let mut p = RatPoly2::zero();
            let mut qq = RatPoly2::zero();
            for _ in 0..5 {
                p.add_term(rng.random_range(0..4), rng.random_range(0..4), q(rng.random_range(-10..=10), 1));
                qq.add_term(rng.random_range(0..4), rng.random_range(0..4), q(rng.random_range(-10..=10), 1));
            }
            let Ok(f) = PolyVectorField::new(p, qq) else { continue };
            let fe: FieldEval<f64> = f.compile();
            let pt = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let vec = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let h = 1e-6;
            let plus = fe.eval(pt.0 + h * vec.0, pt.1 + h * vec.1);
            let minus = fe.eval(pt.0 - h * vec.0, pt.1 - h * vec.1);
            let fd = ((plus.0 - minus.0) / (2.0 * h), (plus.1 - minus.1) / (2.0 * h));
            let ja = fe.jacobian_apply(pt, vec);
            let scale = 1.0 + ja.0.abs().max(ja.1.abs());
            assert!((fd.0 - ja.0).abs() / scale < 1e-6, "{fd:?} vs {ja:?}");
            assert!((fd.1 - ja.1).abs() / scale < 1e-6);
        }
    }

    #[test]
    fn equilibria_of_benchmarks() {
        let width = q(1, 1_000_000);
        // Brusselator a=1, b=3: unique equilibrium at (1, 3)
        let br = gallery::brusselator(Rat::one(), q(3, 1));
        let boxes = br.equilibria(&width).unwrap();
        assert_eq!(boxes.len(), 1);
        assert!(boxes[0].x.contains(&Rat::one()));
        assert!(boxes[0].y.contains(&q(3, 1)));
        assert!(boxes[0].max_width() <= width);
        let (ex, ey) = elimination_evidence(&br, &boxes[0]).unwrap();
        assert_eq!((ex, ey), (1, 1));

        // van der Pol: only the origin
        let vdp = gallery::van_der_pol(Rat::one());
        let boxes = vdp.equilibria(&width).unwrap();
        assert_eq!(boxes.len(), 1);
        assert!(boxes[0].x.contains(&Rat::zero()));
        assert!(boxes[0].y.contains(&Rat::zero()));

        // Rychkov: only the origin
        let ry = gallery::rychkov(Rat::one(), q(1, 5));
        let boxes = ry.equilibria(&width).unwrap();
        assert_eq!(boxes.len(), 1);
        assert!(boxes[0].x.contains(&Rat::zero()));
        assert!(boxes[0].y.contains(&Rat::zero()));

        // circle system: only the origin
        let c = gallery::circle();
        let boxes = c.equilibria(&width).unwrap();
        assert_eq!(boxes.len(), 1);
        assert!(boxes[0].x.contains(&Rat::zero()));
    }

    #[test]
    fn non_isolated_detected() {
        // P = Q = x: the whole y-axis is equilibria
        let p = RatPoly2::from_terms([((1, 0), Rat::one())]);
        let f = PolyVectorField::new(p.clone(), p).unwrap();
        assert!(matches!(
            f.equilibria(&q(1, 100)),
            Err(SystemError::NonIsolatedEquilibria)
        ));
    }
}
