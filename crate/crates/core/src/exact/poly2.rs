//! Sparse bivariate polynomials, `sum c_{ij} x^i y^j`, over a generic ring.
//!
//! The monomial map is a `BTreeMap` so iteration order (and therefore every
//! derived artifact) is deterministic. Stored coefficients are never zero.

use crate::exact::poly1::Poly1;
use crate::scalar::CoeffRing;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly2<T> {
    terms: BTreeMap<(u32, u32), T>,
}

impl<T: CoeffRing> Poly2<T> {
    pub fn zero() -> Self {
        Poly2 { terms: BTreeMap::new() }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), T)>) -> Self {
        let mut p = Poly2::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn constant(c: T) -> Self {
        Poly2::from_terms([((0, 0), c)])
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&(i, j)) {
            None => {
                self.terms.insert((i, j), c);
            }
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert((i, j), s);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &T)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|(i, _)| *i).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|(_, j)| *j).max()
    }

    pub fn add_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for ((i, j), c) in rhs.terms.iter() {
            out.add_term(*i, *j, c.clone());
        }
        out
    }

    pub fn sub_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for ((i, j), c) in rhs.terms.iter() {
            out.add_term(*i, *j, -c.clone());
        }
        out
    }

    pub fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = Poly2::zero();
        for ((i1, j1), c1) in self.terms.iter() {
            for ((i2, j2), c2) in rhs.terms.iter() {
                out.add_term(i1 + i2, j1 + j2, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Poly2::zero();
        }
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn diff_x(&self) -> Self {
        let mut out = Poly2::zero();
        for ((i, j), c) in self.terms.iter() {
            if *i > 0 {
                out.add_term(i - 1, *j, c.clone() * crate::scalar::small_int::<T>(*i as u64));
            }
        }
        out
    }

    pub fn diff_y(&self) -> Self {
        let mut out = Poly2::zero();
        for ((i, j), c) in self.terms.iter() {
            if *j > 0 {
                out.add_term(*i, j - 1, c.clone() * crate::scalar::small_int::<T>(*j as u64));
            }
        }
        out
    }

    /// Evaluates at a point of the coefficient ring.
    pub fn eval(&self, x: &T, y: &T) -> T {
        let mut acc = T::zero();
        for ((i, j), c) in self.terms.iter() {
            let mut t = c.clone();
            for _ in 0..*i {
                t = t * x.clone();
            }
            for _ in 0..*j {
                t = t * y.clone();
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitutes values (or polynomials, curves, ...) for both variables.
    pub fn compose<U: CoeffRing>(&self, map: impl Fn(&T) -> U, x: &U, y: &U) -> U {
        let dx = self.degree_x().unwrap_or(0) as usize;
        let dy = self.degree_y().unwrap_or(0) as usize;
        let mut xp: Vec<U> = Vec::with_capacity(dx + 1);
        xp.push(U::one());
        for i in 1..=dx {
            xp.push(xp[i - 1].clone() * x.clone());
        }
        let mut yp: Vec<U> = Vec::with_capacity(dy + 1);
        yp.push(U::one());
        for j in 1..=dy {
            yp.push(yp[j - 1].clone() * y.clone());
        }
        let mut acc = U::zero();
        for ((i, j), c) in self.terms.iter() {
            let t = xp[*i as usize].clone() * yp[*j as usize].clone() * map(c);
            acc = acc + t;
        }
        acc
    }

    pub fn map_coeffs<U: CoeffRing>(&self, f: impl Fn(&T) -> U) -> Poly2<U> {
        let mut out = Poly2::zero();
        for ((i, j), c) in self.terms.iter() {
            out.add_term(*i, *j, f(c));
        }
        out
    }

    /// Rewrites as a polynomial in y whose coefficients are polynomials in x.
    pub fn as_poly_in_y(&self) -> Poly1<Poly1<T>> {
        let dy = self.degree_y().unwrap_or(0) as usize;
        let mut rows: Vec<Vec<T>> = vec![vec![]; dy + 1];
        for ((i, j), c) in self.terms.iter() {
            let row = &mut rows[*j as usize];
            if row.len() <= *i as usize {
                row.resize(*i as usize + 1, T::zero());
            }
            row[*i as usize] = c.clone();
        }
        Poly1::new(rows.into_iter().map(Poly1::new).collect())
    }

    /// Rewrites as a polynomial in x whose coefficients are polynomials in y.
    pub fn as_poly_in_x(&self) -> Poly1<Poly1<T>> {
        let dx = self.degree_x().unwrap_or(0) as usize;
        let mut rows: Vec<Vec<T>> = vec![vec![]; dx + 1];
        for ((i, j), c) in self.terms.iter() {
            let row = &mut rows[*i as usize];
            if row.len() <= *j as usize {
                row.resize(*j as usize + 1, T::zero());
            }
            row[*j as usize] = c.clone();
        }
        Poly1::new(rows.into_iter().map(Poly1::new).collect())
    }
}

impl<T: CoeffRing + fmt::Debug> fmt::Debug for Poly2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((i, j), c) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({:?})", c)?;
            if *i > 0 {
                write!(f, "*x^{}", i)?;
            }
            if *j > 0 {
                write!(f, "*y^{}", j)?;
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    fn q(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn build_and_eval() {
        // x^2 y - 4x + 1
        let p = Poly2::from_terms([((2, 1), q(1)), ((1, 0), q(-4)), ((0, 0), q(1))]);
        assert_eq!(p.eval(&q(2), &q(3)), q(5));
        assert_eq!(p.degree_x(), Some(2));
        assert_eq!(p.degree_y(), Some(1));
        assert_eq!(p.total_degree(), Some(3));
    }

    #[test]
    fn derivatives() {
        let p = Poly2::from_terms([((2, 1), q(1))]); // x^2 y
        assert_eq!(p.diff_x(), Poly2::from_terms([((1, 1), q(2))]));
        assert_eq!(p.diff_y(), Poly2::from_terms([((2, 0), q(1))]));
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = Poly2::from_terms([((1, 1), q(2))]);
        let r = p.sub_ref(&p);
        assert!(r.is_zero());
    }

    #[test]
    fn nested_views() {
        // x^2 y - 4x + 1 as a poly in y: (1 - 4x) + (x^2) y
        let p = Poly2::from_terms([((2, 1), q(1)), ((1, 0), q(-4)), ((0, 0), q(1))]);
        let py = p.as_poly_in_y();
        assert_eq!(py.degree(), Some(1));
        assert_eq!(py.coeff(0), crate::RatPoly1::new(vec![q(1), q(-4)]));
    }
}
