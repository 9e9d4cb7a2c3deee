//! Sturm sequences and exact real-root counting over the rationals.
//!
//! The sequence is computed fraction-free over the integers: every element
//! is a *positive* rational multiple of the canonical Sturm element, which
//! leaves all sign patterns intact. Scale factors follow the subresultant
//! recurrence (taken in absolute value) so coefficient growth stays
//! polynomial even near degree ~1200; content is stripped too while the
//! coefficients are small enough for gcds to be cheap.

use crate::error::ExactError;
use crate::exact::poly1::Poly1;
use crate::{Int, Rat};
use num_bigint::Sign;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntPoly = Poly1<Int>;
pub type RatPoly = Poly1<Rat>;

/// Strip denominators: returns an integer polynomial that is a positive
/// rational multiple of `p`, with coprime coefficients.
pub fn primitive_int(p: &RatPoly) -> IntPoly {
    if p.is_zero() {
        return IntPoly::zero();
    }
    let mut lcm = Int::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<Int> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    primitive_part(&IntPoly::new(ints))
}

/// Divides out the (positive) content.
pub fn primitive_part(p: &IntPoly) -> IntPoly {
    if p.is_zero() {
        return p.clone();
    }
    let mut g = Int::zero();
    for c in p.coeffs() {
        g = g.gcd(c);
        if g.is_one() {
            return p.clone();
        }
    }
    IntPoly::new(p.coeffs().iter().map(|c| c / &g).collect())
}

fn max_coeff_bits(p: &IntPoly) -> u64 {
    p.coeffs().iter().map(|c| c.bits()).max().unwrap_or(0)
}

/// Pseudo-remainder scaled by |lc(g)|^(deg f - deg g + 1), i.e. a *positive*
/// multiple of `f mod g`.
fn prem_abs(f: &IntPoly, g: &IntPoly) -> IntPoly {
    let dg = g.degree().expect("prem by zero");
    let df = match f.degree() {
        Some(d) if d >= dg => d,
        _ => return f.clone(),
    };
    let lg = g.leading().unwrap().clone();
    let mut rem: Vec<Int> = f.coeffs().to_vec();
    let mut reductions = 0usize;
    // classical fraction-free reduction; coefficient updates go parallel
    // once the operands are large
    use rayon::prelude::*;
    let par = lg.bits() > 2048 && rem.len() > 8;
    let mut deg = df;
    loop {
        let lead = rem[deg].clone();
        if !lead.is_zero() {
            let shift = deg - dg;
            let gcs = g.coeffs();
            if par {
                rem.par_iter_mut().enumerate().for_each(|(i, c)| {
                    *c *= &lg;
                    if i >= shift && i - shift < gcs.len() {
                        *c -= &lead * &gcs[i - shift];
                    }
                });
            } else {
                for c in rem.iter_mut() {
                    *c *= &lg;
                }
                for (j, gc) in gcs.iter().enumerate() {
                    rem[shift + j] -= &lead * gc;
                }
            }
            reductions += 1;
        }
        if deg == dg {
            break;
        }
        deg -= 1;
    }
    // pad to the full lc^(df-dg+1) factor
    for _ in reductions..(df - dg + 1) {
        if par {
            rem.par_iter_mut().for_each(|c| *c *= &lg);
        } else {
            for c in rem.iter_mut() {
                *c *= &lg;
            }
        }
    }
    let mut out = IntPoly::new(rem);
    // make the overall factor positive when lc < 0 and the power is odd
    if lg.sign() == Sign::Minus && (df - dg + 1) % 2 == 1 {
        out = -out;
    }
    out
}

fn exact_div_scalar(p: &IntPoly, d: &Int) -> IntPoly {
    debug_assert!(!d.is_zero());
    use rayon::prelude::*;
    let coeffs = p.coeffs();
    let big = d.bits() > 4096 && coeffs.len() > 8;
    let out: Vec<Int> = if big {
        coeffs
            .par_iter()
            .map(|c| {
                debug_assert!((c % d).is_zero(), "inexact scalar division in PRS");
                c / d
            })
            .collect()
    } else {
        coeffs
            .iter()
            .map(|c| {
                debug_assert!((c % d).is_zero(), "inexact scalar division in PRS");
                c / d
            })
            .collect()
    };
    IntPoly::new(out)
}

/// Coefficient-size threshold below which content stripping is worthwhile.
const CONTENT_STRIP_BITS: u64 = 8192;

/// Fraction-free signed remainder sequence starting from (p, p').
///
/// Every element equals a positive constant times the canonical Sturm
/// element, so sign-variation counts are those of the true Sturm sequence.
pub fn sturm_sequence(p: &IntPoly) -> Vec<IntPoly> {
    let p0 = primitive_part(p);
    let p1 = primitive_part(&p0.derivative());
    let mut seq = vec![p0, p1];
    if seq[1].is_zero() {
        seq.pop();
        return seq;
    }
    // Brown's subresultant PRS with every scale factor taken in absolute
    // value: divisions stay exact and each element stays a positive
    // multiple of its canonical counterpart. While coefficients are small
    // enough for cheap gcds the content is stripped too, which is sound as
    // long as the scale recurrence restarts from the stripped pair.
    let mut prev_gap = 0usize;
    let mut lc_abs = Int::one(); // |lc| of the previous step's divisor
    let mut psi = Int::one();
    let mut beta;
    let mut first = true;
    loop {
        let n = seq.len();
        let (f, g) = (&seq[n - 2], &seq[n - 1]);
        let gap = f.degree().unwrap() - g.degree().unwrap();
        if first {
            beta = Int::one();
        } else {
            psi = if prev_gap == 0 {
                psi
            } else {
                // psi_new = lc_abs^prev_gap / psi^(prev_gap - 1), exact
                let num = lc_abs.pow(prev_gap as u32);
                let den = psi.pow((prev_gap - 1) as u32);
                debug_assert!((&num % &den).is_zero());
                &num / &den
            };
            beta = &lc_abs * psi.pow(gap as u32);
        }
        lc_abs = g.leading().unwrap().abs();
        prev_gap = gap;
        let r = prem_abs(f, g);
        if r.is_zero() {
            break;
        }
        let mut next = -exact_div_scalar(&r, &beta);
        first = false;
        if max_coeff_bits(&next) <= CONTENT_STRIP_BITS {
            let stripped = primitive_part(&next);
            if stripped != next {
                next = stripped;
                first = true;
                psi = Int::one();
            }
        }
        seq.push(next);
        if seq.last().unwrap().degree() == Some(0) {
            break;
        }
    }
    seq
}

/// Sign of p(a) for rational a, via integer Horner on num/den.
pub fn sign_at(p: &IntPoly, a: &Rat) -> i32 {
    if p.is_zero() {
        return 0;
    }
    let num = a.numer();
    let den = a.denom();
    // sign(p(num/den)) = sign(sum c_k num^k den^(n-k)), Horner over integers
    let mut acc = Int::zero();
    let mut den_pow = Int::one();
    for c in p.coeffs().iter().rev() {
        acc = acc * num + c * &den_pow;
        den_pow *= den;
    }
    match acc.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

fn variations(signs: &[i32]) -> usize {
    let mut count = 0;
    let mut last = 0;
    for &s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(seq: &[IntPoly], a: &Rat) -> usize {
    let signs: Vec<i32> = seq.iter().map(|p| sign_at(p, a)).collect();
    variations(&signs)
}

/// Multiplicity of `a` as a root of `p`, removing the factor (x - a)^m.
/// Returns (deflated polynomial, m).
fn deflate_at(p: &IntPoly, a: &Rat) -> (IntPoly, usize) {
    let mut q = p.clone();
    let mut m = 0;
    while !q.is_zero() && sign_at(&q, a) == 0 {
        // synthetic division by (den*x - num), which is (x - a) up to a
        // positive constant when den > 0
        let num = a.numer().clone();
        let den = a.denom().clone();
        let coeffs = q.coeffs();
        let n = coeffs.len();
        // divide: q = (den*x - num) * h + 0; h computed top-down.
        // den^k scaling keeps everything integral; take primitive part after.
        let mut h: Vec<Rat> = vec![Rat::zero(); n - 1];
        let mut carry = Rat::zero();
        for k in (1..n).rev() {
            let ck = Rat::from(coeffs[k].clone()) + carry.clone();
            let hk = ck / Rat::from(den.clone());
            carry = hk.clone() * Rat::from(num.clone());
            h[k - 1] = hk;
        }
        q = primitive_int(&RatPoly::new(h));
        m += 1;
    }
    (q, m)
}

/// Exact root counts of `p` over an interval, distinct roots only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootCount {
    /// distinct real roots in the open interval (a, b)
    pub open: usize,
    /// multiplicity of a as a root (0 when not a root)
    pub mult_at_lo: usize,
    /// multiplicity of b as a root
    pub mult_at_hi: usize,
}

impl RootCount {
    /// count over (a, b]
    pub fn half_open(&self) -> usize {
        self.open + usize::from(self.mult_at_hi > 0)
    }
    /// count over [a, b]
    pub fn closed(&self) -> usize {
        self.open + usize::from(self.mult_at_lo > 0) + usize::from(self.mult_at_hi > 0)
    }
}

/// Number of distinct real roots of `p` in (a, b], plus endpoint data.
///
/// Works for non-square-free polynomials: the canonical sequence counts
/// distinct roots, and roots *at* the endpoints are deflated out first so
/// the variation theorem applies verbatim.
pub fn sturm_count(p: &RatPoly, a: &Rat, b: &Rat) -> Result<RootCount, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    if a >= b {
        return Err(ExactError::BadInterval);
    }
    let p_int = primitive_int(p);
    Ok(sturm_count_int(&p_int, a, b))
}

pub fn sturm_count_int(p: &IntPoly, a: &Rat, b: &Rat) -> RootCount {
    let (q, mult_a) = deflate_at(p, a);
    let (q, mult_b) = deflate_at(&q, b);
    if q.degree().map_or(true, |d| d == 0) {
        return RootCount { open: 0, mult_at_lo: mult_a, mult_at_hi: mult_b };
    }
    let seq = sturm_sequence(&q);
    let open = variations_at(&seq, a) - variations_at(&seq, b);
    RootCount { open, mult_at_lo: mult_a, mult_at_hi: mult_b }
}

/// Strict bound on the absolute value of every real root (Cauchy bound).
pub fn cauchy_bound(p: &RatPoly) -> Rat {
    let pi = primitive_int(p);
    cauchy_bound_int(&pi)
}

pub fn cauchy_bound_int(p: &IntPoly) -> Rat {
    let lead = p.leading().expect("zero polynomial has no root bound").abs();
    let mut max = Int::zero();
    for c in p.coeffs().iter().rev().skip(1) {
        let a = c.abs();
        if a > max {
            max = a;
        }
    }
    Rat::one() + Rat::new(max, lead)
}

/// A power-of-two strict root bound from bit lengths alone (Fujiwara):
/// every root z satisfies |z| < 2^(1 + max_i ceil((b_i - b_n + 1) / i)),
/// where b_i is the bit length of the coefficient i places below the
/// leading one. Stays small whenever the roots are of moderate size, no
/// matter how large the coefficients are.
pub fn dyadic_root_bound(p: &IntPoly) -> Rat {
    let n = p.degree().expect("zero polynomial has no root bound");
    let b_n = p.leading().unwrap().bits() as i64;
    let mut max_exp = 0i64;
    for i in 1..=n {
        let c = p.coeff(n - i);
        if c.is_zero() {
            continue;
        }
        let d = c.bits() as i64 - b_n + 1;
        let e = if d <= 0 { 0 } else { (d + i as i64 - 1) / i as i64 };
        max_exp = max_exp.max(e);
    }
    let exp = (1 + max_exp) as u32;
    Rat::from_integer(Int::one() << exp)
}

/// Total number of distinct real roots.
pub fn count_real_roots(p: &RatPoly) -> Result<usize, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(0);
    }
    let m = cauchy_bound(p);
    Ok(sturm_count(p, &(-m.clone()), &m)?.open)
}

/// Sign table of the Sturm sequence at a point; certificate transcript data.
pub fn sign_table(seq: &[IntPoly], x: &Rat) -> Vec<i32> {
    seq.iter().map(|p| sign_at(p, x)).collect()
}

pub fn variations_of_table(t: &[i32]) -> usize {
    variations(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn rp(coeffs: &[i64]) -> RatPoly {
        RatPoly::new(coeffs.iter().map(|&c| q(c, 1)).collect())
    }

    #[test]
    fn no_roots_of_u2_plus_1() {
        // u^2 + 1 on [-1, 1] -> 0
        let p = rp(&[1, 0, 1]);
        let c = sturm_count(&p, &q(-1, 1), &q(1, 1)).unwrap();
        assert_eq!(c.half_open(), 0);
        assert_eq!(c.closed(), 0);
    }

    #[test]
    fn cubic_three_roots() {
        // u^3 - u on [-3/2, 3/2] -> 3
        let p = rp(&[0, -1, 0, 1]);
        let c = sturm_count(&p, &q(-3, 2), &q(3, 2)).unwrap();
        assert_eq!(c.open, 3);
    }

    #[test]
    fn roots_at_endpoints() {
        // 2u^2 - 1 has roots +-1/sqrt(2), both inside [-1, 1]
        let p = rp(&[-1, 0, 2]);
        let c = sturm_count(&p, &q(-1, 1), &q(1, 1)).unwrap();
        assert_eq!(c.open, 2);
        // u^2 - 1: roots exactly at the endpoints
        let p = rp(&[-1, 0, 1]);
        let c = sturm_count(&p, &q(-1, 1), &q(1, 1)).unwrap();
        assert_eq!(c.open, 0);
        assert_eq!(c.mult_at_lo, 1);
        assert_eq!(c.mult_at_hi, 1);
        assert_eq!(c.closed(), 2);
        assert_eq!(c.half_open(), 1);
    }

    #[test]
    fn multiple_roots_counted_once() {
        // (u - 1)^2 (u + 2)
        let p = rp(&[2, -3, 0, 1]);
        let c = sturm_count(&p, &q(-3, 1), &q(3, 1)).unwrap();
        assert_eq!(c.open, 2);
    }

    #[test]
    fn zero_polynomial_rejected() {
        let p = RatPoly::zero();
        assert!(matches!(
            sturm_count(&p, &q(0, 1), &q(1, 1)),
            Err(ExactError::ZeroPolynomial)
        ));
    }

    #[test]
    fn cauchy_bound_contains_roots() {
        let p = rp(&[-6, 11, -6, 1]); // roots 1, 2, 3
        let m = cauchy_bound(&p);
        assert!(m > q(3, 1));
        assert_eq!(count_real_roots(&p).unwrap(), 3);
    }
}
