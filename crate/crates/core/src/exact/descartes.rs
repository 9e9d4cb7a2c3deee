//! Exact root counting over an interval by Descartes' rule of signs with
//! interval bisection (Vincent–Collins–Akritas). Used where only "no roots
//! here" or "a root exists" is needed: zero sign variations after the
//! Möbius transform proves emptiness, one variation proves existence, and
//! anything else splits the interval.

use crate::exact::poly1::Poly1;
use crate::exact::sturm::IntPoly;
use crate::{Int, Rat};
use num_bigint::Sign;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Sign variations of the coefficient sequence.
fn variations(p: &[Int]) -> usize {
    let mut count = 0;
    let mut last = Sign::NoSign;
    for c in p {
        let s = c.sign();
        if s == Sign::NoSign {
            continue;
        }
        if last != Sign::NoSign && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Taylor shift by one: q(x) = p(x + 1), classical O(n^2) in-place scheme.
fn shift_by_one(coeffs: &mut [Int]) {
    let n = coeffs.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let (a, b) = coeffs.split_at_mut(j + 1);
            a[j] += &b[0];
        }
    }
}

/// Variations of (1+x)^n p(1/(1+x)): reverse then shift, the Descartes
/// test for the open unit interval (0, 1).
fn unit_interval_variations(p: &IntPoly) -> usize {
    let mut c: Vec<Int> = p.coeffs().iter().rev().cloned().collect();
    shift_by_one(&mut c);
    variations(&c)
}

/// p(x/2) * 2^deg: integer coefficients for the left half of (0, 1).
fn left_half(p: &IntPoly) -> IntPoly {
    let n = p.deg_or_zero();
    Poly1::new(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c * (Int::one() << (n - k)))
            .collect(),
    )
}

/// p((x+1)/2) * 2^deg: the right half.
fn right_half(p: &IntPoly) -> IntPoly {
    let scaled = left_half(p);
    let mut c = scaled.coeffs().to_vec();
    shift_by_one(&mut c);
    Poly1::new(c)
}

/// Transplants p from the interval (a, b) onto (0, 1): returns a positive
/// multiple of den^n p((an + wn u) / den), in pure integer arithmetic.
fn to_unit_interval(p: &IntPoly, a: &Rat, b: &Rat) -> IntPoly {
    let n = p.deg_or_zero();
    let den: Int = a.denom() * b.denom() / a.denom().gcd(b.denom());
    let an: Int = a.numer() * (&den / a.denom());
    let bn: Int = b.numer() * (&den / b.denom());
    let wn = &bn - &an;
    let mut dpow = Vec::with_capacity(n + 1);
    dpow.push(Int::one());
    for i in 1..=n {
        dpow.push(&dpow[i - 1] * &den);
    }
    let mut acc: Vec<Int> = vec![Int::zero(); n + 1];
    for (j, c) in p.coeffs().iter().enumerate().rev() {
        // acc = acc * (an + wn u) + c * den^(n - j)
        for k in (0..n).rev() {
            let hi = &acc[k] * &wn;
            acc[k + 1] += hi;
            acc[k] *= &an;
        }
        // top cell: acc[n] only ever receives the shifted-up parts above
        acc[0] += c * &dpow[n - j];
    }
    Poly1::new(acc)
}

/// Certified statement about roots of `p` in the open interval (a, b).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootStatus {
    /// provably no roots in (a, b)
    None,
    /// provably at least one root in (a, b)
    Exists,
}

/// Decides whether p has any real root in the open interval (a, b), by
/// Descartes bisection. Returns `None` only when the depth cap is hit,
/// which needs a cluster of even-multiplicity roots; root-free inputs
/// always terminate.
pub fn roots_in_interval(p: &IntPoly, a: &Rat, b: &Rat, max_depth: u32) -> Option<RootStatus> {
    debug_assert!(a < b);
    let unit = to_unit_interval(p, a, b);
    if unit.is_zero() {
        return Some(RootStatus::Exists);
    }
    search(unit, 0, max_depth)
}

/// Outcome lattice: None (depth cap) < Exists | NoneStatus; subtrees run on
/// both cores while the recursion is shallow.
fn search(q: IntPoly, depth: u32, max_depth: u32) -> Option<RootStatus> {
    match unit_interval_variations(&q) {
        0 => return Some(RootStatus::None),
        1 => return Some(RootStatus::Exists),
        _ => {}
    }
    if depth >= max_depth {
        return None;
    }
    let l = left_half(&q);
    // value at the split point: left_half(q)(1) = 2^n q(1/2)
    let mut mid_val = Int::zero();
    for c in l.coeffs() {
        mid_val += c;
    }
    if mid_val.is_zero() {
        return Some(RootStatus::Exists);
    }
    let r = right_half(&q);
    let (left, right) = if depth < 10 {
        rayon::join(|| search(l, depth + 1, max_depth), || search(r, depth + 1, max_depth))
    } else {
        (search(l, depth + 1, max_depth), search(r, depth + 1, max_depth))
    };
    match (left, right) {
        (Some(RootStatus::Exists), _) | (_, Some(RootStatus::Exists)) => Some(RootStatus::Exists),
        (Some(RootStatus::None), Some(RootStatus::None)) => Some(RootStatus::None),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::sturm::{primitive_int, sturm_count};
    use crate::RatPoly1;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn rp(coeffs: &[i64]) -> RatPoly1 {
        RatPoly1::new(coeffs.iter().map(|&c| q(c, 1)).collect())
    }

    #[test]
    fn shift_matches_direct_composition() {
        // p(x) = 2 - 3x + x^3; p(x+1) = (x+1)^3 - 3(x+1) + 2 = x^3 + 3x^2
        let mut c: Vec<Int> = vec![2.into(), (-3).into(), 0.into(), 1.into()];
        shift_by_one(&mut c);
        assert_eq!(c, vec![0.into(), 0.into(), 3.into(), Int::from(1)]);
    }

    #[test]
    fn detects_no_roots() {
        let p = primitive_int(&rp(&[1, 0, 1])); // x^2 + 1
        assert_eq!(roots_in_interval(&p, &q(-1, 1), &q(1, 1), 40), Some(RootStatus::None));
    }

    #[test]
    fn detects_roots() {
        let p = primitive_int(&rp(&[-1, 0, 2])); // 2x^2 - 1
        assert_eq!(roots_in_interval(&p, &q(-1, 1), &q(1, 1), 40), Some(RootStatus::Exists));
        // root exactly at a dyadic midpoint: x = 1/2
        let p = primitive_int(&rp(&[-1, 2]));
        assert_eq!(roots_in_interval(&p, &q(0, 1), &q(1, 1), 40), Some(RootStatus::Exists));
    }

    #[test]
    fn agrees_with_sturm_on_random_polynomials() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(99);
        for _ in 0..100 {
            let deg = rng.random_range(1..=9);
            let p = RatPoly1::new((0..=deg).map(|_| q(rng.random_range(-9..=9), 1)).collect());
            if p.is_zero() {
                continue;
            }
            let (a, b) = (q(-2, 1), q(3, 2));
            let sturm = sturm_count(&p, &a, &b).unwrap();
            let vca = roots_in_interval(&primitive_int(&p), &a, &b, 60).unwrap();
            let has = sturm.open > 0;
            assert_eq!(vca == RootStatus::Exists, has, "p = {p:?}");
        }
    }
}
