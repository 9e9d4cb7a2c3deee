//! Resultants via fraction-free (Bareiss) elimination of the Sylvester
//! matrix, generic over any integral domain with exact division. The sign
//! convention is the Sylvester determinant itself.

use crate::error::ExactError;
use crate::exact::poly1::Poly1;
use crate::exact::poly2::Poly2;
use crate::scalar::Domain;
use crate::{Rat, RatPoly1};

/// Which variable of a bivariate polynomial to eliminate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// Determinant by Bareiss' fraction-free algorithm with column pivoting.
pub fn bareiss_det<D: Domain>(mut m: Vec<Vec<D>>) -> D {
    let n = m.len();
    if n == 0 {
        return D::one();
    }
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut sign_flip = false;
    let mut prev = D::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return D::zero();
            };
            m.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].clone() * m[i][j].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = t.exact_div(&prev);
            }
            m[i][k] = D::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

/// Sylvester matrix of p, q in D[t] (coefficients given low-first).
fn sylvester<D: Domain>(p: &Poly1<D>, q: &Poly1<D>) -> Vec<Vec<D>> {
    let m = p.degree().expect("sylvester of zero polynomial");
    let n = q.degree().expect("sylvester of zero polynomial");
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for r in 0..n {
        let mut row = vec![D::zero(); size];
        for (k, c) in p.coeffs().iter().enumerate() {
            row[r + (m - k)] = c.clone();
        }
        rows.push(row);
    }
    for r in 0..m {
        let mut row = vec![D::zero(); size];
        for (k, c) in q.coeffs().iter().enumerate() {
            row[r + (n - k)] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant of two polynomials over a domain, with the conventions
/// Res(c, q) = c^deg(q) for constants and Res = 0 when an argument is the
/// zero polynomial (and the other is not constant).
pub fn resultant_poly<D: Domain>(p: &Poly1<D>, q: &Poly1<D>) -> D {
    match (p.degree(), q.degree()) {
        (None, _) | (_, None) => D::zero(),
        (Some(0), Some(n)) => pow(p.coeff(0), n),
        (Some(m), Some(0)) => pow(q.coeff(0), m),
        (Some(_), Some(_)) => bareiss_det(sylvester(p, q)),
    }
}

fn pow<D: Domain>(base: D, e: usize) -> D {
    let mut acc = D::one();
    for _ in 0..e {
        acc = acc * base.clone();
    }
    acc
}

/// Resultant of two bivariate rational polynomials, eliminating `var`.
/// Returns a univariate polynomial in the remaining variable.
pub fn resultant2(p: &Poly2<Rat>, q: &Poly2<Rat>, eliminate: Var) -> Result<RatPoly1, ExactError> {
    if p.is_zero() || q.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let (pp, qq) = match eliminate {
        Var::Y => (p.as_poly_in_y(), q.as_poly_in_y()),
        Var::X => (p.as_poly_in_x(), q.as_poly_in_x()),
    };
    Ok(resultant_poly(&pp, &qq))
}

/// Discriminant of p in its main variable with the standard normalization
/// disc(p) = (-1)^(m(m-1)/2) Res(p, p') / lc(p), where m = deg p.
pub fn discriminant<D: Domain>(p: &Poly1<D>) -> Result<D, ExactError> {
    let m = p.degree().ok_or(ExactError::ZeroPolynomial)?;
    if m < 1 {
        return Err(ExactError::DegenerateDegree);
    }
    let res = resultant_poly(p, &p.derivative());
    let lc = p.leading().unwrap();
    let d = res.exact_div(lc);
    if (m * (m - 1) / 2) % 2 == 1 {
        Ok(-d)
    } else {
        Ok(d)
    }
}
