//! Turning numerically detected limit cycles of planar polynomial vector
//! fields into machine-checked existence proofs.
//!
//! The numerical half of the crate locates a limit cycle, offsets it into a
//! nearby closed curve that the flow provably crosses one way, and fits a
//! trigonometric polynomial through samples of that curve. The exact half
//! replaces every float with a rational, reduces transversality of the
//! fitted curve to "a univariate polynomial has no root in [-1, 1]", and
//! settles that by Sturm's theorem in integer arithmetic. Two certified
//! curves on opposite sides of the cycle assemble into a Poincaré–Bendixson
//! annulus, which proves an odd number of limit cycles live between them.
//! A separate module builds Cherkas-polynomial non-existence certificates
//! for Liénard systems, giving two-sided bounds on saddle-node bifurcation
//! values.
//!
//! Scalar types are generic where it pays: polynomials work over any
//! coefficient ring (`f64`, `BigRational`, `BigInt`, or nested polynomial
//! rings), and the trajectory layer over any IEEE float. The aliases below
//! fix the concrete types used throughout the crate's public surface.

pub mod band;
pub mod certify;
pub mod cycle;
pub mod error;
pub mod exact;
pub mod flow;
pub mod lienard;
pub mod ratapprox;
pub mod scalar;
pub mod system;
pub mod trig;

pub use scalar::{CoeffRing, Domain, RatEmbed, Real};

/// Arbitrary-precision rational scalar for every certified computation.
pub type Rat = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;
/// Dense univariate polynomial over the rationals.
pub type RatPoly1 = exact::Poly1<Rat>;
/// Dense univariate polynomial over the integers.
pub type IntPoly1 = exact::Poly1<Int>;
/// Sparse bivariate polynomial over the rationals.
pub type RatPoly2 = exact::Poly2<Rat>;
/// Univariate polynomial whose coefficients are polynomials in a parameter.
pub type ParamPoly1 = exact::Poly1<RatPoly1>;

/// Parses "n/d" or "n" into an exact rational.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let num: Int = n.trim().parse().ok()?;
        let den: Int = d.trim().parse().ok()?;
        if num_traits::Zero::is_zero(&den) {
            return None;
        }
        Some(Rat::new(num, den))
    } else {
        let num: Int = s.parse().ok()?;
        Some(Rat::from_integer(num))
    }
}

/// Canonical "n/d" form (just "n" for integers).
pub fn rat_to_string(r: &Rat) -> String {
    if num_traits::One::is_one(r.denom()) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest-value conversion to f64; fine for diagnostics, never trusted by
/// the certification path.
pub fn rat_to_f64(r: &Rat) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// Exact rational equal to the given float (every finite f64 is rational).
pub fn rat_from_f64(x: f64) -> Option<Rat> {
    num_traits::FromPrimitive::from_f64(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_string_round_trip() {
        for s in ["3/4", "-7/2", "5", "0", "-123456789123456789/987654321"] {
            let r = rat_from_str(s).unwrap();
            assert_eq!(rat_from_str(&rat_to_string(&r)).unwrap(), r);
        }
        assert!(rat_from_str("1/0").is_none());
        assert!(rat_from_str("abc").is_none());
    }

    #[test]
    fn f64_round_trip_is_exact() {
        for x in [0.5, -0.337, 1.0 / 3.0, 1.91928] {
            let r = rat_from_f64(x).unwrap();
            assert_eq!(rat_to_f64(&r), x);
        }
    }
}
