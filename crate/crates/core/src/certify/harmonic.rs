//! Exact trigonometric polynomial arithmetic over the rationals, plus the
//! conversion to the algebraic form A(u) + v B(u) with u = cos theta,
//! v = sin theta (Chebyshev multiple-angle identities).

use crate::trig::RatCurve;
use crate::{Rat, RatPoly1};
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// sum_k cos[k] cos(k theta) + sin[k] sin(k theta); sin[0] is unused and
/// kept zero. Implements ring ops so generic polynomial composition works.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmPoly {
    pub cos: Vec<Rat>,
    pub sin: Vec<Rat>,
}

impl HarmPoly {
    pub fn constant(c: Rat) -> Self {
        HarmPoly { cos: vec![c], sin: vec![Rat::zero()] }
    }

    pub fn degree(&self) -> usize {
        self.cos.len() - 1
    }

    fn trim(mut self) -> Self {
        while self.cos.len() > 1
            && self.cos.last().unwrap().is_zero()
            && self.sin.last().unwrap().is_zero()
        {
            self.cos.pop();
            self.sin.pop();
        }
        self
    }

    pub fn from_parts(cos: Vec<Rat>, sin: Vec<Rat>) -> Self {
        assert_eq!(cos.len(), sin.len());
        assert!(!cos.is_empty());
        HarmPoly { cos, sin }.trim()
    }

    fn co(&self, k: usize) -> Rat {
        self.cos.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    fn si(&self, k: usize) -> Rat {
        self.sin.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        let n = self.cos.len().max(o.cos.len());
        HarmPoly {
            cos: (0..n).map(|k| self.co(k) + o.co(k)).collect(),
            sin: (0..n).map(|k| self.si(k) + o.si(k)).collect(),
        }
        .trim()
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        let n = self.cos.len().max(o.cos.len());
        HarmPoly {
            cos: (0..n).map(|k| self.co(k) - o.co(k)).collect(),
            sin: (0..n).map(|k| self.si(k) - o.si(k)).collect(),
        }
        .trim()
    }

    /// Product via the product-to-sum identities; degrees add.
    pub fn mul_ref(&self, o: &Self) -> Self {
        let n = self.degree() + o.degree();
        let mut cos = vec![Rat::zero(); n + 1];
        let mut sin = vec![Rat::zero(); n + 1];
        let half = Rat::new(1.into(), 2.into());
        for i in 0..self.cos.len() {
            let (ai, bi) = (&self.cos[i], &self.sin[i]);
            if ai.is_zero() && bi.is_zero() {
                continue;
            }
            for j in 0..o.cos.len() {
                let (cj, dj) = (&o.cos[j], &o.sin[j]);
                if cj.is_zero() && dj.is_zero() {
                    continue;
                }
                let sum = i + j;
                let diff = i.abs_diff(j);
                // cos i cos j = (cos(i+j) + cos|i-j|)/2
                let ac = ai * cj;
                if !ac.is_zero() {
                    let t = &ac * &half;
                    cos[sum] += &t;
                    cos[diff] += &t;
                }
                // sin i sin j = (cos|i-j| - cos(i+j))/2
                let bd = bi * dj;
                if !bd.is_zero() {
                    let t = &bd * &half;
                    cos[diff] += &t;
                    cos[sum] -= &t;
                }
                // cos i sin j = (sin(i+j) - sin(i-j))/2
                let ad = ai * dj;
                if !ad.is_zero() {
                    let t = &ad * &half;
                    sin[sum] += &t;
                    if i != j {
                        if i > j {
                            sin[diff] -= &t;
                        } else {
                            sin[diff] += &t;
                        }
                    }
                }
                // sin i cos j = (sin(i+j) + sin(i-j))/2
                let bc = bi * cj;
                if !bc.is_zero() {
                    let t = &bc * &half;
                    sin[sum] += &t;
                    if i != j {
                        if i > j {
                            sin[diff] += &t;
                        } else {
                            sin[diff] -= &t;
                        }
                    }
                }
            }
        }
        sin[0] = Rat::zero();
        HarmPoly { cos, sin }.trim()
    }

    /// d/dtheta.
    pub fn derivative(&self) -> Self {
        let n = self.degree();
        let mut cos = vec![Rat::zero(); n + 1];
        let mut sin = vec![Rat::zero(); n + 1];
        for k in 1..=n {
            let kk = Rat::from_integer(k.into());
            cos[k] = &self.sin[k] * &kk;
            sin[k] = -(&self.cos[k] * &kk);
        }
        HarmPoly { cos, sin }.trim()
    }

    /// Float evaluation (diagnostics only).
    pub fn eval_f64(&self, theta: f64) -> f64 {
        let mut acc = crate::rat_to_f64(&self.cos[0]);
        for k in 1..self.cos.len() {
            let (s, c) = (k as f64 * theta).sin_cos();
            acc += crate::rat_to_f64(&self.cos[k]) * c + crate::rat_to_f64(&self.sin[k]) * s;
        }
        acc
    }

    /// Lipschitz bound on the derivative: sum k (|a_k| + |b_k|).
    pub fn deriv_bound(&self) -> Rat {
        let mut acc = Rat::zero();
        for k in 1..self.cos.len() {
            let kk = Rat::from_integer(k.into());
            acc += (self.cos[k].abs() + self.sin[k].abs()) * kk;
        }
        acc
    }

    /// Sup bound: sum |a_k| + |b_k|.
    pub fn sup_bound(&self) -> Rat {
        let mut acc = Rat::zero();
        for k in 0..self.cos.len() {
            acc += self.cos[k].abs() + self.sin[k].abs();
        }
        acc
    }

    /// Exact conversion to A(u) + v B(u) via cos(k t) = T_k(u) and
    /// sin(k t) = v U_(k-1)(u).
    pub fn to_cheb(&self) -> ChebForm {
        let m = self.degree();
        let u2 = RatPoly1::monomial(Rat::from_integer(2.into()), 1);
        let mut a = RatPoly1::constant(self.cos[0].clone());
        let mut b = RatPoly1::zero();
        // T_(k-1), T_k and U_(k-2), U_(k-1), advanced together
        let mut t_prev = RatPoly1::one();
        let mut t_cur = RatPoly1::var();
        let mut u_km2 = RatPoly1::zero(); // U_(-1)
        let mut u_km1 = RatPoly1::one(); // U_0
        for k in 1..=m {
            a = a.add_ref(&t_cur.scale(&self.cos[k]));
            b = b.add_ref(&u_km1.scale(&self.sin[k]));
            let t_next = u2.mul_ref(&t_cur).sub_ref(&t_prev);
            t_prev = std::mem::replace(&mut t_cur, t_next);
            let u_next = u2.mul_ref(&u_km1).sub_ref(&u_km2);
            u_km2 = std::mem::replace(&mut u_km1, u_next);
        }
        ChebForm { a, b }
    }
}

/// A(u) + v B(u), the algebraic form of a trigonometric polynomial on the
/// unit circle u^2 + v^2 = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebForm {
    pub a: RatPoly1,
    pub b: RatPoly1,
}

impl Zero for HarmPoly {
    fn zero() -> Self {
        HarmPoly::constant(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.cos.iter().all(|c| c.is_zero()) && self.sin.iter().all(|c| c.is_zero())
    }
}

impl One for HarmPoly {
    fn one() -> Self {
        HarmPoly::constant(Rat::one())
    }
}

impl Add for HarmPoly {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.add_ref(&o)
    }
}

impl Sub for HarmPoly {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.sub_ref(&o)
    }
}

impl Mul for HarmPoly {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl Neg for HarmPoly {
    type Output = Self;
    fn neg(self) -> Self {
        HarmPoly {
            cos: self.cos.into_iter().map(|c| -c).collect(),
            sin: self.sin.into_iter().map(|c| -c).collect(),
        }
    }
}

/// The two components of a rational curve as harmonic polynomials.
pub fn curve_components(curve: &RatCurve) -> (HarmPoly, HarmPoly) {
    (
        HarmPoly::from_parts(curve.x_cos.clone(), {
            let mut v = curve.x_sin.clone();
            v[0] = Rat::zero();
            v
        }),
        HarmPoly::from_parts(curve.y_cos.clone(), {
            let mut v = curve.y_sin.clone();
            v[0] = Rat::zero();
            v
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn random_harm(rng: &mut rand::rngs::StdRng, m: usize) -> HarmPoly {
        let mut cos: Vec<Rat> = (0..=m).map(|_| q(rng.random_range(-9..=9), rng.random_range(1..=5))).collect();
        let mut sin: Vec<Rat> = (0..=m).map(|_| q(rng.random_range(-9..=9), rng.random_range(1..=5))).collect();
        sin[0] = Rat::zero();
        let _ = &mut cos;
        HarmPoly::from_parts(cos, sin)
    }

    #[test]
    fn product_matches_float_evaluation() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
        for _ in 0..20 {
            let dp = rng.random_range(0..5);
            let dr = rng.random_range(0..5);
            let p = random_harm(&mut rng, dp);
            let r = random_harm(&mut rng, dr);
            let prod = p.mul_ref(&r);
            for i in 0..12 {
                let t = 0.53 * i as f64;
                let lhs = prod.eval_f64(t);
                let rhs = p.eval_f64(t) * r.eval_f64(t);
                assert!((lhs - rhs).abs() < 1e-9, "t={t} {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn cheb_form_matches_float_evaluation() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(4);
        for _ in 0..20 {
            let dp = rng.random_range(0..7);
            let p = random_harm(&mut rng, dp);
            let cheb = p.to_cheb();
            for i in 0..12 {
                let t = 0.37 * i as f64 - 1.9;
                let (v, u) = t.sin_cos();
                let lhs = crate::rat_to_f64(&cheb.a.eval(&crate::rat_from_f64(0.0).unwrap()));
                let _ = lhs;
                let a = poly_f64(&cheb.a, u);
                let b = poly_f64(&cheb.b, u);
                let rhs = a + v * b;
                let direct = p.eval_f64(t);
                assert!((rhs - direct).abs() < 1e-8, "t={t} {rhs} vs {direct}");
            }
        }
    }

    fn poly_f64(p: &RatPoly1, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in p.coeffs().iter().rev() {
            acc = acc * x + crate::rat_to_f64(c);
        }
        acc
    }

    #[test]
    fn derivative_matches_differences() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(8);
        let p = random_harm(&mut rng, 6);
        let d = p.derivative();
        let h = 1e-5;
        for i in 0..10 {
            let t = 0.61 * i as f64;
            let fd = (p.eval_f64(t + h) - p.eval_f64(t - h)) / (2.0 * h);
            assert!((fd - d.eval_f64(t)).abs() < 1e-5);
        }
    }

    #[test]
    fn bounds_dominate_samples() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(12);
        let p = random_harm(&mut rng, 5);
        let sup = crate::rat_to_f64(&p.sup_bound());
        let dsup = crate::rat_to_f64(&p.deriv_bound());
        let d = p.derivative();
        for i in 0..50 {
            let t = 0.13 * i as f64;
            assert!(p.eval_f64(t).abs() <= sup + 1e-9);
            assert!(d.eval_f64(t).abs() <= dsup + 1e-9);
        }
    }
}

/// Denominator-cleared harmonic polynomial: value = (sum cos[k] cos(k t) +
/// sin[k] sin(k t)) / den with integer tables and den > 0. Products become
/// pure integer convolutions (the 1/2 of the product-to-sum identities is
/// absorbed into the denominator), which keeps high-degree compositions
/// free of per-term gcd reductions.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledHarm {
    pub cos: Vec<crate::Int>,
    pub sin: Vec<crate::Int>,
    pub den: crate::Int,
}

impl ScaledHarm {
    pub fn constant(c: Rat) -> Self {
        ScaledHarm {
            cos: vec![c.numer().clone()],
            sin: vec![crate::Int::from(0)],
            den: c.denom().clone(),
        }
    }

    pub fn from_harm(h: &HarmPoly) -> Self {
        use num_integer::Integer as _;
        let mut lcm = crate::Int::from(1);
        for c in h.cos.iter().chain(&h.sin) {
            lcm = lcm.lcm(c.denom());
        }
        ScaledHarm {
            cos: h.cos.iter().map(|c| c.numer() * (&lcm / c.denom())).collect(),
            sin: h.sin.iter().map(|c| c.numer() * (&lcm / c.denom())).collect(),
            den: lcm,
        }
    }

    pub fn to_harm(&self) -> HarmPoly {
        HarmPoly::from_parts(
            self.cos.iter().map(|c| Rat::new(c.clone(), self.den.clone())).collect(),
            self.sin.iter().map(|c| Rat::new(c.clone(), self.den.clone())).collect(),
        )
    }

    pub fn degree(&self) -> usize {
        self.cos.len() - 1
    }

    fn trim(mut self) -> Self {
        while self.cos.len() > 1
            && self.cos.last().unwrap().is_zero()
            && self.sin.last().unwrap().is_zero()
        {
            self.cos.pop();
            self.sin.pop();
        }
        self
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        use num_integer::Integer as _;
        let g = self.den.gcd(&o.den);
        let ls = &o.den / &g; // scale for self
        let lo = &self.den / &g; // scale for other
        let n = self.cos.len().max(o.cos.len());
        let zero = crate::Int::from(0);
        let get = |v: &[crate::Int], k: usize| v.get(k).cloned().unwrap_or_else(|| zero.clone());
        ScaledHarm {
            cos: (0..n).map(|k| get(&self.cos, k) * &ls + get(&o.cos, k) * &lo).collect(),
            sin: (0..n).map(|k| get(&self.sin, k) * &ls + get(&o.sin, k) * &lo).collect(),
            den: &self.den * ls,
        }
        .trim()
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.clone().neg_owned())
    }

    fn neg_owned(mut self) -> Self {
        for c in self.cos.iter_mut() {
            *c = -std::mem::take(c);
        }
        for c in self.sin.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }

    /// Integer convolution via the product-to-sum identities; the result
    /// denominator carries the factor 2.
    pub fn mul_ref(&self, o: &Self) -> Self {
        let n = self.degree() + o.degree();
        let zero = crate::Int::from(0);
        let mut cos = vec![zero.clone(); n + 1];
        let mut sin = vec![zero.clone(); n + 1];
        for i in 0..self.cos.len() {
            let (ai, bi) = (&self.cos[i], &self.sin[i]);
            let ai_z = ai.is_zero();
            let bi_z = bi.is_zero();
            if ai_z && bi_z {
                continue;
            }
            for j in 0..o.cos.len() {
                let (cj, dj) = (&o.cos[j], &o.sin[j]);
                let sum = i + j;
                let diff = i.abs_diff(j);
                if !ai_z && !cj.is_zero() {
                    let t = ai * cj;
                    cos[sum] += &t;
                    cos[diff] += t;
                }
                if !bi_z && !dj.is_zero() {
                    let t = bi * dj;
                    cos[diff] += &t;
                    cos[sum] -= t;
                }
                if !ai_z && !dj.is_zero() {
                    let t = ai * dj;
                    sin[sum] += &t;
                    if i > j {
                        sin[diff] -= t;
                    } else if i < j {
                        sin[diff] += t;
                    }
                }
                if !bi_z && !cj.is_zero() {
                    let t = bi * cj;
                    sin[sum] += &t;
                    if i > j {
                        sin[diff] += t;
                    } else if i < j {
                        sin[diff] -= t;
                    }
                }
            }
        }
        sin[0] = zero;
        ScaledHarm { cos, sin, den: crate::Int::from(2) * &self.den * &o.den }.trim()
    }

    pub fn derivative(&self) -> Self {
        let n = self.degree();
        let zero = crate::Int::from(0);
        let mut cos = vec![zero.clone(); n + 1];
        let mut sin = vec![zero; n + 1];
        for k in 1..=n {
            cos[k] = &self.sin[k] * crate::Int::from(k as i64);
            sin[k] = -(&self.cos[k] * crate::Int::from(k as i64));
        }
        ScaledHarm { cos, sin, den: self.den.clone() }.trim()
    }

    /// Exact A(u) + v B(u) with a shared denominator: integer Chebyshev
    /// accumulation.
    pub fn to_cheb(&self) -> ChebForm {
        use crate::exact::poly1::Poly1;
        type Ip = Poly1<crate::Int>;
        let m = self.degree();
        let two_u = Ip::monomial(crate::Int::from(2), 1);
        let mut a = Ip::constant(self.cos[0].clone());
        let mut b: Ip = num_traits::Zero::zero();
        let mut t_prev: Ip = One::one();
        let mut t_cur = Ip::monomial(crate::Int::from(1), 1);
        let mut u_km2: Ip = num_traits::Zero::zero();
        let mut u_km1: Ip = One::one();
        for k in 1..=m {
            a = a.add_ref(&t_cur.scale(&self.cos[k]));
            b = b.add_ref(&u_km1.scale(&self.sin[k]));
            let t_next = two_u.mul_ref(&t_cur).sub_ref(&t_prev);
            t_prev = std::mem::replace(&mut t_cur, t_next);
            let u_next = two_u.mul_ref(&u_km1).sub_ref(&u_km2);
            u_km2 = std::mem::replace(&mut u_km1, u_next);
        }
        let to_rat = |p: &Ip| -> crate::RatPoly1 {
            crate::RatPoly1::new(
                p.coeffs().iter().map(|c| Rat::new(c.clone(), self.den.clone())).collect(),
            )
        };
        ChebForm { a: to_rat(&a), b: to_rat(&b) }
    }
}

impl Zero for ScaledHarm {
    fn zero() -> Self {
        ScaledHarm::constant(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.cos.iter().all(|c| c.is_zero()) && self.sin.iter().all(|c| c.is_zero())
    }
}

impl One for ScaledHarm {
    fn one() -> Self {
        ScaledHarm::constant(Rat::one())
    }
}

impl Add for ScaledHarm {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.add_ref(&o)
    }
}

impl Sub for ScaledHarm {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.sub_ref(&o)
    }
}

impl Mul for ScaledHarm {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl Neg for ScaledHarm {
    type Output = Self;
    fn neg(self) -> Self {
        self.neg_owned()
    }
}
