//! Rational interval arithmetic: exact outward-rounding-free enclosures
//! used to validate equilibrium boxes.

use crate::exact::poly2::Poly2;
use crate::Rat;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn is_subset_of_interior(&self, other: &Self) -> bool {
        other.lo < self.lo && self.hi < other.hi
    }

    pub fn intersects(&self, other: &Self) -> bool {
        !(self.hi < other.lo || other.hi < self.lo)
    }

    pub fn add(&self, o: &Self) -> Self {
        RatInterval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Self) -> Self {
        RatInterval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> Self {
        RatInterval::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c: [Rat; 4] = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        RatInterval::new(lo, hi)
    }

    /// Division; caller must ensure the divisor excludes zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        if o.contains_zero() {
            return None;
        }
        let inv = RatInterval::new(Rat::from_integer(1.into()) / &o.hi, Rat::from_integer(1.into()) / &o.lo);
        Some(self.mul(&inv))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_negative() {
            RatInterval::new(&self.hi * c, &self.lo * c)
        } else {
            RatInterval::new(&self.lo * c, &self.hi * c)
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = RatInterval::point(Rat::from_integer(1.into()));
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Axis-aligned rational box in the plane.
#[derive(Debug, Clone, PartialEq)]
pub struct RatBox {
    pub x: RatInterval,
    pub y: RatInterval,
}

impl RatBox {
    pub fn center(&self) -> (Rat, Rat) {
        (self.x.midpoint(), self.y.midpoint())
    }

    pub fn max_width(&self) -> Rat {
        let wx = self.x.width();
        let wy = self.y.width();
        if wx > wy {
            wx
        } else {
            wy
        }
    }

    pub fn center_f64(&self) -> (f64, f64) {
        let (cx, cy) = self.center();
        (crate::rat_to_f64(&cx), crate::rat_to_f64(&cy))
    }
}

/// Interval enclosure of a bivariate polynomial over a box.
pub fn eval_on_box(p: &Poly2<Rat>, b: &RatBox) -> RatInterval {
    let mut acc = RatInterval::point(Rat::zero());
    for ((i, j), c) in p.terms() {
        let t = b.x.pow(*i).mul(&b.y.pow(*j)).scale(c);
        acc = acc.add(&t);
    }
    acc
}
