//! Cherkas-polynomial non-existence certificates for classical Liénard
//! systems x' = y - F(x), y' = -x, and bisection for saddle-node
//! bifurcation upper bounds.
//!
//! The construction: there is a unique polynomial B(x, y) = sum B_i(x) y^i
//! with B(0, y) = y^n whose derivative along the flow depends on x only.
//! When that derivative keeps one sign and vanishes only on a non-invariant
//! measure-zero set, no periodic orbit exists.

use crate::error::LienardError;
use crate::exact::poly1::Poly1;
use crate::exact::sturm::{
    dyadic_root_bound, primitive_int, sign_table, sturm_sequence, variations_of_table,
};
use crate::ratapprox::simplest_in_interval;
use crate::scalar::{small_int, CoeffRing, RatEmbed};
use crate::{Rat, RatPoly1};
use num_traits::{One, Signed, Zero};

/// A classical Liénard system, generic over the coefficient ring of F so a
/// symbolic parameter (coefficients in Q[delta]) and a fixed rational
/// system share all the machinery.
#[derive(Debug, Clone, PartialEq)]
pub struct LienardSystem<C: CoeffRing> {
    /// F in x' = y - F(x)
    pub f: Poly1<C>,
}

impl LienardSystem<RatPoly1> {
    /// Substitutes the symbolic parameter.
    pub fn at(&self, delta: &Rat) -> LienardSystem<Rat> {
        LienardSystem { f: self.f.map_coeffs(|c| c.eval(delta)) }
    }
}

impl LienardSystem<Rat> {
    /// The planar polynomial field (P, Q) = (y - F(x), -x).
    pub fn vector_field(&self) -> crate::system::PolyVectorField {
        let mut p = crate::RatPoly2::from_terms([((0, 1), Rat::one())]);
        for (k, c) in self.f.coeffs().iter().enumerate() {
            p.add_term(k as u32, 0, -c.clone());
        }
        let q = crate::RatPoly2::from_terms([((1, 0), -Rat::one())]);
        crate::system::PolyVectorField::new(p, q).unwrap()
    }
}

/// x' = y - (x^5 - mu x^3 + delta x), y' = -x with delta symbolic.
pub fn rychkov_family(mu: Rat) -> LienardSystem<RatPoly1> {
    let delta = RatPoly1::var();
    LienardSystem {
        f: Poly1::new(vec![
            RatPoly1::zero(),
            delta,
            RatPoly1::zero(),
            RatPoly1::constant(-mu),
            RatPoly1::zero(),
            RatPoly1::constant(Rat::one()),
        ]),
    }
}

/// The solved triangular recursion: B-polynomials and the flow derivative.
#[derive(Debug, Clone)]
pub struct CherkasResult<C: CoeffRing> {
    pub n: usize,
    /// B_0 .. B_n with B_n = 1, B_(n-1) = 0, B_k(0) = 0 for k < n
    pub b_table: Vec<Poly1<C>>,
    /// dB/dt along the flow = -F B_0' - x B_1; a polynomial in x alone
    pub b_dot: Poly1<C>,
    /// multiplicity of the factor x^k in b_dot
    pub x_power: usize,
    /// b_dot / x^x_power
    pub sign_poly: Poly1<C>,
}

/// Builds B_n(x, y) by integrating the coefficient equations from the top
/// degree down: B_(k-1)' = F B_k' + (k+1) x B_(k+1), with B_(k-1)(0) = 0.
pub fn cherkas_build<C: CoeffRing + RatEmbed>(
    l: &LienardSystem<C>,
    n: usize,
) -> Result<CherkasResult<C>, LienardError> {
    if n < 2 {
        return Err(LienardError::SmallN);
    }
    let x = Poly1::<C>::var();
    let mut b = vec![Poly1::<C>::zero(); n + 1];
    b[n] = Poly1::one();
    // b[n-1] stays zero
    for k in (1..n).rev() {
        // B_(k-1)' = F B_k' + (k+1) x B_(k+1)
        let rhs = l
            .f
            .mul_ref(&b[k].derivative())
            .add_ref(&x.scale(&small_int::<C>((k + 1) as u64)).mul_ref(&b[k + 1]));
        b[k - 1] = rhs.integrate();
    }
    let b_dot = -(l.f.mul_ref(&b[0].derivative()).add_ref(&x.mul_ref(&b[1])));
    let x_power = b_dot.coeffs().iter().take_while(|c| c.is_zero()).count();
    let x_power = if b_dot.is_zero() { 0 } else { x_power };
    let sign_poly = if b_dot.is_zero() {
        Poly1::zero()
    } else {
        Poly1::new(b_dot.coeffs()[x_power..].to_vec())
    };
    Ok(CherkasResult { n, b_table: b, b_dot, x_power, sign_poly })
}

impl<C: CoeffRing> CherkasResult<C> {
    /// B as a bivariate polynomial in (x, y).
    pub fn b_polynomial(&self) -> crate::exact::poly2::Poly2<C> {
        let mut out = crate::exact::poly2::Poly2::zero();
        for (i, bi) in self.b_table.iter().enumerate() {
            for (k, c) in bi.coeffs().iter().enumerate() {
                out.add_term(k as u32, i as u32, c.clone());
            }
        }
        out
    }
}

/// Transcript for "R has no real roots".
#[derive(Debug, Clone)]
pub enum RootFreeEvidence {
    /// Sturm sequence sign tables at the interval endpoints
    Sturm { table_lo: Vec<i32>, table_hi: Vec<i32> },
    /// Descartes bisection reached zero sign variations everywhere
    DescartesBisection,
}

#[derive(Debug, Clone)]
pub struct NegativityEvidence {
    /// strict bound on root magnitudes
    pub bound: Rat,
    /// whether the even-polynomial reduction R(x) = H(x^2) was used
    pub even_reduced: bool,
    pub root_free: RootFreeEvidence,
}

/// Exact test: R(x) < 0 for every real x. Leading coefficient negative,
/// constant term negative, and an exact count of zero real roots. Even
/// polynomials are counted through H(x^2) = R(x) at half the degree.
pub fn negativity_test(r: &RatPoly1) -> bool {
    negativity_evidence_with(r, false).is_some()
}

pub fn negativity_evidence(r: &RatPoly1) -> Option<NegativityEvidence> {
    negativity_evidence_with(r, false)
}

/// A Sturm sequence beyond this much degree x coefficient-bits work is out
/// of reach; Descartes bisection settles root-freeness in near-input-size
/// arithmetic instead.
const STURM_WORK_CAP: u64 = 15_000;

pub fn negativity_evidence_with(r: &RatPoly1, force_sturm: bool) -> Option<NegativityEvidence> {
    let deg = r.degree()?;
    if deg % 2 == 1 {
        return None;
    }
    if !r.leading().unwrap().is_negative() {
        return None;
    }
    if !r.coeff(0).is_negative() {
        // R(0) must already be < 0
        return None;
    }
    let even = r.coeffs().iter().skip(1).step_by(2).all(|c| c.is_zero());
    let probe = if even {
        // H(s) with H(x^2) = R(x): real roots of R <=> roots of H in [0, inf)
        RatPoly1::new(r.coeffs().iter().step_by(2).cloned().collect())
    } else {
        r.clone()
    };
    let pi = primitive_int(&probe);
    let bound = dyadic_root_bound(&pi);
    let lo = if even { Rat::zero() } else { -bound.clone() };
    // endpoints are non-roots: |roots| < bound strictly, and probe(0) =
    // R(0) != 0 in the even case
    let d = pi.deg_or_zero() as u64;
    let bits = pi.coeffs().iter().map(|c| c.bits()).max().unwrap_or(0);
    let root_free = if force_sturm || d * bits <= STURM_WORK_CAP {
        let seq = sturm_sequence(&pi);
        let table_lo = sign_table(&seq, &lo);
        let table_hi = sign_table(&seq, &bound);
        let roots = variations_of_table(&table_lo) - variations_of_table(&table_hi);
        if roots > 0 {
            return None;
        }
        RootFreeEvidence::Sturm { table_lo, table_hi }
    } else {
        use crate::exact::descartes::{roots_in_interval, RootStatus};
        match roots_in_interval(&pi, &lo, &bound, 64) {
            Some(RootStatus::None) => RootFreeEvidence::DescartesBisection,
            _ => return None,
        }
    };
    Some(NegativityEvidence { bound, even_reduced: even, root_free })
}

/// A machine-checkable proof that a Liénard system has no periodic orbit.
#[derive(Debug, Clone)]
pub struct NonexistenceCertificate {
    pub n: usize,
    pub delta: Rat,
    /// F at the substituted parameter
    pub f: RatPoly1,
    /// exponent k in dB/dt = x^k R(x)
    pub x_power: usize,
    /// the sign polynomial R, negative definite
    pub sign_poly: RatPoly1,
    pub negativity: NegativityEvidence,
    /// why the vanishing set {x = 0} kills no periodic orbit
    pub non_invariance: String,
}

/// Issues the certificate for the parameterized family at delta: dB/dt =
/// x^n R(x) <= 0 with R < 0 everywhere, zero set {x = 0} of measure zero
/// and not invariant, hence no periodic orbits anywhere in the plane.
pub fn nonexistence_certificate(
    family: &LienardSystem<RatPoly1>,
    n: usize,
    delta: &Rat,
) -> Result<NonexistenceCertificate, LienardError> {
    if n % 2 == 1 {
        // x^n changes sign for odd n, so one-signedness of R proves nothing
        return Err(LienardError::OddN);
    }
    let l = family.at(delta);
    let ch = cherkas_build(&l, n)?;
    if ch.x_power % 2 == 1 {
        return Err(LienardError::OddN);
    }
    let negativity = negativity_evidence(&ch.sign_poly).ok_or(LienardError::NotNegative)?;
    let non_invariance = format!(
        "dB/dt = x^{} R(x) vanishes only on the line x = 0, which has zero \
         Lebesgue measure and is not flow-invariant: x' = y - F(0) = y - ({}) \
         is nonzero off a single point of the line",
        ch.x_power,
        crate::rat_to_string(&l.f.coeff(0)),
    );
    Ok(NonexistenceCertificate {
        n,
        delta: delta.clone(),
        f: l.f,
        x_power: ch.x_power,
        sign_poly: ch.sign_poly,
        negativity,
        non_invariance,
    })
}

/// Bisection on delta for the smallest certified upper bound: requires the
/// test to fail at delta_lo and pass at delta_hi, keeps midpoints snapped
/// to denominators <= 10^7, and returns the certified upper endpoint.
pub fn bound_bisection(
    family: &LienardSystem<RatPoly1>,
    n: usize,
    delta_lo: &Rat,
    delta_hi: &Rat,
    tol: &Rat,
) -> Result<Rat, LienardError> {
    if n % 2 == 1 {
        return Err(LienardError::OddN);
    }
    let passes = |d: &Rat| -> Result<bool, LienardError> {
        let ch = cherkas_build(&family.at(d), n)?;
        Ok(ch.x_power % 2 == 0 && negativity_test(&ch.sign_poly))
    };
    if passes(delta_lo)? || !passes(delta_hi)? {
        return Err(LienardError::BadBracket);
    }
    let mut lo = delta_lo.clone();
    let mut hi = delta_hi.clone();
    let snap_den = Rat::from_integer(10_000_000.into());
    while &hi - &lo > *tol {
        let mid_exact = (&lo + &hi) / Rat::from_integer(2.into());
        // snapped midpoint with a small denominator, kept inside (lo, hi)
        let snapped = ((&mid_exact * &snap_den).round()) / &snap_den;
        let mid = if snapped > lo && snapped < hi {
            snapped
        } else {
            let s = simplest_in_interval(&lo, &hi);
            if s > lo && s < hi {
                s
            } else {
                mid_exact
            }
        };
        if passes(&mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// The combined two-sided bound report for a saddle-node value.
#[derive(Debug, Clone)]
pub struct TwoSidedBound {
    pub lower: Rat,
    pub lower_evidence: String,
    /// the rotated-vector-field step is cited, not re-proved, so the
    /// lower bound carries an explicit assumption tag
    pub assumption: String,
    pub upper: Rat,
    pub upper_evidence: String,
}

pub fn two_sided_bound(
    lower: Rat,
    annuli_count: usize,
    upper: Rat,
    n: usize,
) -> TwoSidedBound {
    TwoSidedBound {
        lower_evidence: format!(
            "{annuli_count} certified Poincare-Bendixson annuli at delta = {} \
             prove two limit cycles exist there",
            crate::rat_to_string(&lower)
        ),
        assumption: "the family is a semi-complete rotated vector field in delta: \
                     two limit cycles at delta imply delta < delta*"
            .to_string(),
        upper_evidence: format!(
            "Cherkas certificate of order n = {n} proves no limit cycle at delta = {}",
            crate::rat_to_string(&upper)
        ),
        lower,
        upper,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn numeric(coeffs: &[(i64, i64)]) -> LienardSystem<Rat> {
        LienardSystem { f: Poly1::new(coeffs.iter().map(|&(n, d)| q(n, d)).collect()) }
    }

    #[test]
    fn b_n_minus_2_is_n_x_squared_over_two() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        for n in [2usize, 3, 4, 7, 10] {
            let f = Poly1::new((0..=5).map(|_| q(rng.random_range(-5..=5), 1)).collect());
            let l = LienardSystem { f };
            let ch = cherkas_build(&l, n).unwrap();
            let expect = Poly1::new(vec![q(0, 1), q(0, 1), q(n as i64, 2)]);
            assert_eq!(ch.b_table[n - 2], expect, "n = {n}");
            if n >= 3 {
                // B_(n-3) = n * int_0^x s F(s) ds
                let x = RatPoly1::var();
                let integrand = x.mul_ref(&l.f);
                let expect = integrand.integrate().scale(&q(n as i64, 1));
                assert_eq!(ch.b_table[n - 3], expect);
            }
        }
    }

    #[test]
    fn harmonic_oscillator_energy() {
        // F = 0, n = 2: B = y^2 + x^2, dB/dt = 0
        let l = numeric(&[]);
        let ch = cherkas_build(&l, 2).unwrap();
        assert!(ch.b_dot.is_zero());
        assert_eq!(ch.b_table[0], Poly1::new(vec![q(0, 1), q(0, 1), q(1, 1)]));
        assert_eq!(ch.b_table[2], Poly1::new(vec![q(1, 1)]));
    }

    #[test]
    fn flow_derivative_is_independent_of_y() {
        // expand dB/dt = B_x (y - F) - x B_y as a bivariate polynomial and
        // compare against the recursion's answer
        let mut rng = rand::rngs::StdRng::seed_from_u64(6);
        for _ in 0..10 {
            let f = Poly1::new((0..=4).map(|_| q(rng.random_range(-4..=4), 2)).collect());
            let l = LienardSystem { f: f.clone() };
            let n = 2 * rng.random_range(1..=3);
            let ch = cherkas_build(&l, n).unwrap();
            let b = ch.b_polynomial();
            let mut flow_p = crate::RatPoly2::from_terms([((0, 1), Rat::one())]);
            for (k, c) in f.coeffs().iter().enumerate() {
                flow_p.add_term(k as u32, 0, -c.clone());
            }
            let flow_q = crate::RatPoly2::from_terms([((1, 0), -Rat::one())]);
            let b_dot_full = b.diff_x().mul_ref(&flow_p).add_ref(&b.diff_y().mul_ref(&flow_q));
            assert!(b_dot_full.degree_y().unwrap_or(0) == 0, "dB/dt depends on y");
            let mut expect = crate::RatPoly2::zero();
            for (k, c) in ch.b_dot.coeffs().iter().enumerate() {
                expect.add_term(k as u32, 0, c.clone());
            }
            assert_eq!(b_dot_full, expect);
        }
    }

    #[test]
    fn rychkov_b4_matches_closed_form() {
        // with F = x^5 - x^3 + dx and n = 4:
        // B_1 = (4/105) x^3 (15 x^4 - 21 x^2 + 35 d)
        // B_0 = (1/30) x^4 (10 x^8 - 24 x^6 + (30 d + 15) x^4 - 40 d x^2 + 30 d^2 + 30)
        let fam = rychkov_family(Rat::one());
        let ch = cherkas_build(&fam, 4).unwrap();
        let d = RatPoly1::var;
        let c = |n: i64, den: i64| RatPoly1::constant(q(n, den));
        let zero = RatPoly1::zero;
        // B_2 = 2 x^2
        assert_eq!(
            ch.b_table[2],
            Poly1::new(vec![zero(), zero(), c(2, 1)])
        );
        let b1_expect: Poly1<RatPoly1> = Poly1::new(vec![
            zero(),
            zero(),
            zero(),
            d().scale(&q(4, 3)),   // (4/105) * 35 d = 4d/3
            zero(),
            c(-4, 5),              // (4/105) * -21 = -4/5
            zero(),
            c(4, 7),               // (4/105) * 15 = 4/7
        ]);
        assert_eq!(ch.b_table[1], b1_expect);
        let d2 = d().mul_ref(&d());
        let b0_expect: Poly1<RatPoly1> = Poly1::new(vec![
            zero(),
            zero(),
            zero(),
            zero(),
            d2.add_ref(&RatPoly1::constant(Rat::one())), // d^2 + 1
            zero(),
            d().scale(&q(-4, 3)),
            zero(),
            d().add_ref(&RatPoly1::constant(q(1, 2))),
            zero(),
            c(-4, 5),
            zero(),
            c(1, 3),
        ]);
        assert_eq!(ch.b_table[0], b0_expect);
        // dB/dt = x^4 R_12(x, d)
        assert_eq!(ch.x_power, 4);
        assert_eq!(ch.sign_poly.degree(), Some(12));
    }

    #[test]
    fn negativity_basics() {
        assert!(negativity_test(&Poly1::new(vec![q(-1, 1), q(0, 1), q(-1, 1)]))); // -1 - x^2
        assert!(!negativity_test(&Poly1::new(vec![q(1, 1), q(0, 1), q(-1, 1)]))); // 1 - x^2
        assert!(!negativity_test(&Poly1::new(vec![q(-1, 1), q(0, 1), q(1, 1)]))); // x^2 - 1
        assert!(!negativity_test(&RatPoly1::zero()));
        // odd polynomial can never be negative definite
        assert!(!negativity_test(&Poly1::new(vec![q(-1, 1), q(0, 1), q(0, 1), q(-1, 1)])));
    }

    #[test]
    fn rychkov_negativity_at_key_deltas() {
        let fam = rychkov_family(Rat::one());
        // delta = 0.236252: R_12 < 0 for all x
        let ch = cherkas_build(&fam.at(&q(236252, 1_000_000)), 4).unwrap();
        assert!(negativity_test(&ch.sign_poly));
        let ev = negativity_evidence(&ch.sign_poly).unwrap();
        assert!(ev.even_reduced);
        assert!(matches!(ev.root_free, RootFreeEvidence::Sturm { .. }));
        // delta = 0.2: two limit cycles exist, so R must change sign
        let ch = cherkas_build(&fam.at(&q(1, 5)), 4).unwrap();
        assert!(!negativity_test(&ch.sign_poly));
    }

    #[test]
    fn certificates_and_refusals() {
        let fam = rychkov_family(Rat::one());
        let cert = nonexistence_certificate(&fam, 4, &q(236252, 1_000_000)).unwrap();
        assert_eq!(cert.x_power, 4);
        assert!(cert.non_invariance.contains("x = 0"));
        assert!(matches!(
            nonexistence_certificate(&fam, 4, &q(1, 5)),
            Err(LienardError::NotNegative)
        ));
        assert!(matches!(
            nonexistence_certificate(&fam, 5, &q(236252, 1_000_000)),
            Err(LienardError::OddN)
        ));
        // a center (F = 0) always refuses: dB/dt = 0 is never negative
        let center = LienardSystem { f: Poly1::new(vec![RatPoly1::zero()]) };
        assert!(matches!(
            nonexistence_certificate(&center, 4, &q(0, 1)),
            Err(LienardError::NotNegative)
        ));
    }

    #[test]
    fn bisection_reaches_the_n4_threshold() {
        // the unique positive discriminant root is near 0.2362516
        let fam = rychkov_family(Rat::one());
        let b = bound_bisection(&fam, 4, &q(1, 5), &q(3, 10), &q(1, 1_000_000)).unwrap();
        let target = q(2362516, 10_000_000);
        assert!((b - target).abs() < q(3, 1_000_000));
        // invalid bracket: test already passes at the low end
        assert!(matches!(
            bound_bisection(&fam, 4, &q(29, 100), &q(3, 10), &q(1, 100)),
            Err(LienardError::BadBracket)
        ));
    }
}
