//! Real-root isolation by Sturm bisection.

use crate::error::ExactError;
use crate::exact::sturm::{
    cauchy_bound_int, primitive_int, primitive_part, sturm_count_int, sturm_sequence, IntPoly,
    RatPoly,
};
use crate::Rat;
use num_traits::Zero;

/// An isolating interval for one distinct real root: the half-open span
/// `(lo, hi]` contains exactly one root of the polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct RootInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RootInterval {
    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }
    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }
    pub fn contains(&self, x: &Rat) -> bool {
        *x > self.lo && *x <= self.hi
    }
}

/// Isolates every distinct real root of `p` in disjoint sorted intervals,
/// each refined to width at most `tol`.
pub fn isolate_real_roots(p: &RatPoly, tol: &Rat) -> Result<Vec<RootInterval>, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let pi = primitive_int(p);
    if pi.degree().map_or(true, |d| d == 0) {
        return Ok(vec![]);
    }
    Ok(isolate_int(&pi, tol))
}

fn isolate_int(p: &IntPoly, tol: &Rat) -> Vec<RootInterval> {
    // The Cauchy bound is strict and every split point below is checked to
    // be a non-root, so interval endpoints are never roots: each emitted
    // interval holds its single root strictly inside.
    let bound = cauchy_bound_int(p);
    let lo = -bound.clone();
    let hi = bound;
    let seq = sturm_sequence(p);
    let var = |x: &Rat| {
        crate::exact::sturm::variations_of_table(&crate::exact::sturm::sign_table(&seq, x))
    };
    let (vlo, vhi) = (var(&lo), var(&hi));
    let total = vlo - vhi;
    let mut done: Vec<RootInterval> = Vec::new();
    let mut stack = vec![(lo, hi, vlo, vhi)];
    while let Some((a, b, va, vb)) = stack.pop() {
        let count = va - vb; // distinct roots in (a, b)
        if count == 0 {
            continue;
        }
        if count == 1 && &b - &a <= *tol {
            done.push(RootInterval { lo: a, hi: b });
            continue;
        }
        let mid = split_off_roots(p, &a, &b);
        let vm = var(&mid);
        stack.push((mid.clone(), b, vm, vb));
        stack.push((a, mid, va, vm));
    }
    done.sort_by(|x, y| x.lo.cmp(&y.lo));
    debug_assert_eq!(done.len(), total);
    done
}

/// A split point strictly inside (a, b) that is not a root of p. The
/// polynomial has at most deg(p) roots, so one of deg(p)+1 distinct
/// candidates must be free.
fn split_off_roots(p: &IntPoly, a: &Rat, b: &Rat) -> Rat {
    let width = b - a;
    let deg = p.degree().unwrap_or(0);
    let mid = a + &width / Rat::from_integer(2.into());
    if crate::exact::sturm::sign_at(p, &mid) != 0 {
        return mid;
    }
    for k in 1..=(deg as i64 + 1) {
        let cand = a + &width * Rat::new((2 * k + 1).into(), (4 * k + 4).into());
        if crate::exact::sturm::sign_at(p, &cand) != 0 {
            return cand;
        }
    }
    unreachable!("more split collisions than roots");
}

/// Multiplicity of the single root inside an isolating interval, computed
/// from the gcd chain p, gcd(p, p'), gcd(gcd, gcd'), ...
pub fn multiplicity_in(p: &RatPoly, iv: &RootInterval) -> Result<usize, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let mut g = primitive_int(p);
    let mut mult = 0;
    loop {
        if g.degree().map_or(true, |d| d == 0) {
            break;
        }
        let c = sturm_count_int(&g, &iv.lo, &iv.hi);
        if c.half_open() == 0 {
            break;
        }
        mult += 1;
        g = gcd_with_derivative(&g);
    }
    Ok(mult)
}

/// gcd(p, p') up to a positive constant: the last element of the signed
/// remainder sequence.
fn gcd_with_derivative(p: &IntPoly) -> IntPoly {
    let seq = sturm_sequence(p);
    primitive_part(seq.last().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RatPoly1;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn rp(coeffs: &[i64]) -> RatPoly1 {
        RatPoly1::new(coeffs.iter().map(|&c| q(c, 1)).collect())
    }

    #[test]
    fn sqrt_two_roots() {
        // u^2 - 2
        let p = rp(&[-2, 0, 1]);
        let roots = isolate_real_roots(&p, &q(1, 1000)).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].contains(&q(-1414214, 1000000)) || roots[0].width() < q(1, 100));
        assert!(roots[0].hi < q(0, 1));
        assert!(roots[1].lo > q(0, 1));
        for r in &roots {
            assert!(r.width() <= q(1, 1000));
        }
    }

    #[test]
    fn double_root_collapsed() {
        // (u - 1)^2
        let p = rp(&[1, -2, 1]);
        let roots = isolate_real_roots(&p, &q(1, 1024)).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].contains(&q(1, 1)));
        assert_eq!(multiplicity_in(&p, &roots[0]).unwrap(), 2);
    }

    #[test]
    fn no_real_roots() {
        let p = rp(&[1, 0, 1]);
        assert!(isolate_real_roots(&p, &q(1, 16)).unwrap().is_empty());
    }
}
