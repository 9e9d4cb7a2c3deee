//! Best rational approximation with a bounded denominator, via continued
//! fractions with the usual semiconvergent correction, plus the simplest
//! rational in an interval (Stern–Brocot descent).

use crate::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Best rational approximation to `x` among all fractions with denominator
/// at most `max_den`. Exact comparison decides between the last convergent
/// and the best semiconvergent, so the result is the true minimizer.
pub fn best_approx(x: &Rat, max_den: &Int) -> Rat {
    assert!(*max_den >= Int::one(), "denominator bound must be >= 1");
    if x.denom() <= max_den {
        return x.clone();
    }
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    // (h0/k0, h1/k1) = convergents p_{i-2}/q_{i-2}, p_{i-1}/q_{i-1}
    let (mut h0, mut k0) = (Int::zero(), Int::one());
    let (mut h1, mut k1) = (Int::one(), Int::zero());
    loop {
        let a = num.div_floor(&den);
        let k2 = &k0 + &a * &k1;
        if k2 > *max_den {
            // h1/k1 is the last convergent within the bound (k1 >= 1 here,
            // since the first convergent has denominator 1 <= max_den)
            let conv = Rat::new(h1.clone(), k1.clone());
            let t = (max_den - &k0).div_floor(&k1);
            if t < Int::one() {
                return conv;
            }
            let cand = Rat::new(&h0 + &t * &h1, &k0 + &t * &k1);
            let e_cand = (x - &cand).abs();
            let e_conv = (x - &conv).abs();
            return if e_cand < e_conv { cand } else { conv };
        }
        let h2 = &h0 + &a * &h1;
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let r = &num - &a * &den;
        debug_assert!(!r.is_zero(), "terminating CF contradicts den > max_den");
        num = std::mem::replace(&mut den, r);
    }
}

/// The rational with the smallest denominator strictly inside (lo, hi).
pub fn simplest_in_interval(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo < hi);
    if lo.is_negative() && hi.is_positive() {
        return Rat::zero();
    }
    if !lo.is_negative() {
        simplest_nonneg(lo, hi)
    } else {
        -simplest_nonneg(&-hi.clone(), &-lo.clone())
    }
}

fn simplest_nonneg(lo: &Rat, hi: &Rat) -> Rat {
    // 0 <= lo < hi
    let int_candidate = lo.floor() + Rat::one();
    if int_candidate < *hi {
        return int_candidate;
    }
    let int_part = lo.floor();
    let lo_f = lo - &int_part;
    let hi_f = hi - &int_part;
    if lo_f.is_zero() {
        // (n, n + hi_f): take n + 1/q with the smallest valid q
        let q = (Rat::one() / hi_f).floor() + Rat::one();
        return int_part + Rat::one() / q;
    }
    let inner = simplest_nonneg(&(Rat::one() / hi_f), &(Rat::one() / lo_f));
    int_part + Rat::one() / inner
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_from_f64;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn half_with_small_bound() {
        let x = rat_from_f64(0.5).unwrap();
        assert_eq!(best_approx(&x, &Int::from(10)), q(1, 2));
    }

    #[test]
    fn pi_classical_convergent() {
        let x = rat_from_f64(3.14159265).unwrap();
        assert_eq!(best_approx(&x, &Int::from(1000)), q(355, 113));
        assert_eq!(best_approx(&x, &Int::from(10)), q(22, 7));
    }

    #[test]
    fn optimality_against_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(23);
        for _ in 0..50 {
            let x = rat_from_f64(rng.random_range(-2.0..2.0)).unwrap();
            let n = rng.random_range(1i64..60);
            let p = best_approx(&x, &Int::from(n));
            // brute force over all denominators
            let mut best: Option<Rat> = None;
            for den in 1..=n {
                let num = (rat_to_num(&x) * den as f64).round() as i64;
                for cand_num in [num - 1, num, num + 1] {
                    let c = q(cand_num, den);
                    if best.as_ref().map_or(true, |b| (&x - &c).abs() < (&x - b).abs()) {
                        best = Some(c);
                    }
                }
            }
            let b = best.unwrap();
            assert!(
                (&x - &p).abs() <= (&x - &b).abs(),
                "x={x} got={p} brute={b}"
            );
        }
    }

    fn rat_to_num(x: &Rat) -> f64 {
        crate::rat_to_f64(x)
    }

    #[test]
    fn farey_error_bound_holds() {
        // the best approximation p/q with q <= N is a Farey-N neighbor of x,
        // so |x - p/q| <= 1/(q(N+1-q))
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..200 {
            let x = rat_from_f64(rng.random_range(-3.0..3.0)).unwrap();
            let n = Int::from(rng.random_range(1i64..100_000));
            let p = best_approx(&x, &n);
            assert!(p.denom() <= &n);
            let err = (&x - &p).abs();
            let other = &n + Int::one() - p.denom();
            let bound = Rat::new(Int::one(), p.denom() * other);
            assert!(err <= bound, "x={x} p={p} err={err} bound={bound}");
        }
    }

    #[test]
    fn doubling_bound_never_hurts() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..100 {
            let x = rat_from_f64(rng.random_range(-1.0..1.0)).unwrap();
            let mut n = Int::from(7);
            let mut last = (&x - best_approx(&x, &n)).abs();
            for _ in 0..6 {
                n = &n * Int::from(2);
                let e = (&x - best_approx(&x, &n)).abs();
                assert!(e <= last);
                last = e;
            }
        }
    }

    #[test]
    fn simplest_rational_in_interval() {
        assert_eq!(simplest_in_interval(&q(1, 3), &q(1, 2)), q(2, 5));
        assert_eq!(simplest_in_interval(&q(-1, 2), &q(1, 3)), q(0, 1));
        assert_eq!(simplest_in_interval(&q(5, 2), &q(7, 2)), q(3, 1));
        let s = simplest_in_interval(&q(22519, 100000), &q(22521, 100000));
        assert!(s > q(22519, 100000) && s < q(22521, 100000));
        assert!(s.denom() <= &Int::from(100000));
    }
}
