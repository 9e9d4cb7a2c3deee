//! Dense univariate polynomials over a generic coefficient ring.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so
//! the degree is `coeffs.len() - 1` and the leading coefficient is nonzero
//! unless the polynomial is identically zero (empty vector).

use crate::scalar::{CoeffRing, Domain, RatEmbed};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly1<T> {
    coeffs: Vec<T>,
}

impl<T: CoeffRing> Poly1<T> {
    /// Builds a polynomial from low-first coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly1 { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Poly1::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: T, k: usize) -> Self {
        if c.is_zero() {
            return Poly1 { coeffs: vec![] };
        }
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Poly1 { coeffs }
    }

    /// The variable itself, `x`.
    pub fn var() -> Self {
        Poly1::monomial(T::one(), 1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Poly1 { coeffs: vec![] };
        }
        Poly1::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn mul_xk(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly1 { coeffs }
    }

    pub fn add_ref(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        Poly1::new(out)
    }

    pub fn sub_ref(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - rhs.coeff(k));
        }
        Poly1::new(out)
    }

    pub fn mul_ref(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Poly1 { coeffs: vec![] };
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = a.clone() * b.clone();
                let cell = std::mem::replace(&mut out[i + j], T::zero());
                out[i + j] = cell + t;
            }
        }
        Poly1::new(out)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly1 { coeffs: vec![] };
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.clone() * crate::scalar::small_int::<T>(k as u64));
        }
        Poly1::new(out)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Composition-free coefficient map (e.g. substituting a parameter).
    pub fn map_coeffs<U: CoeffRing>(&self, f: impl Fn(&T) -> U) -> Poly1<U> {
        Poly1::new(self.coeffs.iter().map(f).collect())
    }

    /// Evaluates a polynomial whose coefficients are themselves values in
    /// another ring representation, i.e. plain substitution `x -> v`.
    pub fn eval_ref(&self, x: &T) -> T {
        self.eval(x)
    }
}

impl<T: CoeffRing + RatEmbed> Poly1<T> {
    /// Antiderivative with zero constant term.
    pub fn integrate(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(T::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            let inv = T::embed(BigRational::new(1.into(), ((k + 1) as i64).into()));
            out.push(c.clone() * inv);
        }
        Poly1::new(out)
    }
}

impl<T: Domain> Poly1<T> {
    /// Exact polynomial division; panics in debug builds when the division
    /// leaves a remainder. Used where divisibility is guaranteed.
    pub fn exact_div_poly(&self, rhs: &Self) -> Self {
        assert!(!rhs.coeffs.is_empty(), "division by zero polynomial");
        if self.coeffs.is_empty() {
            return Poly1 { coeffs: vec![] };
        }
        let n = self.coeffs.len();
        let m = rhs.coeffs.len();
        assert!(n >= m, "exact division of lower-degree by higher-degree");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); n - m + 1];
        let lead = rhs.coeffs.last().unwrap();
        for k in (0..=n - m).rev() {
            let c = rem[k + m - 1].clone();
            if c.is_zero() {
                continue;
            }
            let q = c.exact_div(lead);
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = q.clone() * b.clone();
                let cell = std::mem::replace(&mut rem[k + j], T::zero());
                rem[k + j] = cell - t;
            }
            quot[k] = q;
        }
        debug_assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
        Poly1::new(quot)
    }
}

impl<T: CoeffRing> Zero for Poly1<T> {
    fn zero() -> Self {
        Poly1 { coeffs: vec![] }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: CoeffRing> One for Poly1<T> {
    fn one() -> Self {
        Poly1::constant(T::one())
    }
}

impl<T: CoeffRing> Add for Poly1<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl<T: CoeffRing> Sub for Poly1<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.sub_ref(&rhs)
    }
}

impl<T: CoeffRing> Mul for Poly1<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<T: CoeffRing> Neg for Poly1<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly1::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<T: Domain> Domain for Poly1<T> {
    fn exact_div(&self, rhs: &Self) -> Self {
        self.exact_div_poly(rhs)
    }
}

impl<T: CoeffRing + RatEmbed> RatEmbed for Poly1<T> {
    fn embed(r: BigRational) -> Self {
        Poly1::constant(T::embed(r))
    }
}

impl<T: CoeffRing + fmt::Debug> fmt::Debug for Poly1<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({:?})", c)?;
            if k == 1 {
                write!(f, "*x")?;
            } else if k > 1 {
                write!(f, "*x^{}", k)?;
            }
            first = false;
        }
        Ok(())
    }
}
