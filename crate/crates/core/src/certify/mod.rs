//! Exact certification: the contact function of a rational curve against a
//! rational field, reduced to A(u) + v B(u) on the unit circle; a no-zero
//! proof through R(u) = A^2 + (u^2 - 1) B^2 and Sturm's theorem on [-1, 1];
//! orientation, simplicity and containment evidence; and assembly of
//! Poincare-Bendixson annulus certificates.

pub mod grid;
pub mod harmonic;
pub mod simple;
pub mod winding;

use crate::band::CurveOrientation;
use crate::error::CertifyError;
use crate::exact::interval::RatBox;
use crate::exact::sturm::{primitive_int, sign_table, sturm_sequence, IntPoly};
use crate::system::PolyVectorField;
use crate::trig::RatCurve;
use crate::{Rat, RatPoly1};
use grid::CurveEval;
use harmonic::curve_components;
use num_traits::{Signed, Zero};
use simple::{DisjointnessEvidence, SimplicityEvidence};
use winding::WindingEvidence;

/// Exact contact function data: f(theta) = P(w) w2' - Q(w) w1' reduced to
/// A(u) + v B(u) with (u, v) = (cos theta, sin theta).
#[derive(Debug, Clone)]
pub struct ContactFunction {
    pub a: RatPoly1,
    pub b: RatPoly1,
    /// trigonometric degree of f (at most (deg X + 1) * deg w)
    pub trig_degree: usize,
}

/// Builds the contact function exactly. The expansion happens in the
/// harmonic basis (products of trig polynomials stay trig polynomials),
/// and the multiple-angle identities cos k = T_k(u), sin k = v U_{k-1}(u)
/// produce the reduced A + vB form directly.
pub fn contact_function(field: &PolyVectorField, curve: &RatCurve) -> ContactFunction {
    use harmonic::ScaledHarm;
    let (w1, w2) = curve_components(curve);
    let w1s = ScaledHarm::from_harm(&w1);
    let w2s = ScaledHarm::from_harm(&w2);
    let d1 = w1s.derivative();
    let d2 = w2s.derivative();
    let p_on_curve = field.p.compose(|c| ScaledHarm::constant(c.clone()), &w1s, &w2s);
    let q_on_curve = field.q.compose(|c| ScaledHarm::constant(c.clone()), &w1s, &w2s);
    let f = p_on_curve.mul_ref(&d2).sub_ref(&q_on_curve.mul_ref(&d1));
    let d = field.p.total_degree().unwrap_or(0).max(field.q.total_degree().unwrap_or(0)) as usize;
    let m = curve.degree();
    debug_assert!(f.degree() <= (d + 1) * m, "contact degree exceeded the bound");
    let cheb = f.to_cheb();
    ContactFunction { a: cheb.a, b: cheb.b, trig_degree: f.degree() }
}

/// Sturm transcript for the no-zero proof of R on [-1, 1].
#[derive(Debug, Clone)]
pub struct SturmEvidence {
    /// signs of the Sturm sequence at u = -1
    pub table_lo: Vec<i32>,
    /// signs at u = +1
    pub table_hi: Vec<i32>,
    /// distinct real roots of R in [-1, 1]
    pub root_count: usize,
}

/// How the "no roots of R in [-1, 1]" fact was established.
#[derive(Debug, Clone)]
pub enum NoZeroEvidence {
    /// full Sturm sequence sign tables at the endpoints
    Sturm(SturmEvidence),
    /// Descartes-rule interval bisection reached zero variations everywhere
    DescartesBisection,
}

#[derive(Debug, Clone)]
pub enum NoZeroOutcome {
    /// f never vanishes: R has no root in [-1, 1] and (A, B) != (0, 0)
    Proved {
        /// primitive integer form of R = A^2 + (u^2 - 1) B^2
        resultant: IntPoly,
        evidence: NoZeroEvidence,
    },
    /// R vanishes somewhere in [-1, 1]; the method is one-sided, so this
    /// only means the proof failed, not that f has a zero
    Inconclusive { root_count: usize },
    /// A = B = 0: the curve is invariant (contact everywhere)
    IdenticallyZero,
}

/// The resultant route: R(u) = A^2 + (u^2 - 1) B^2, which equals
/// Res_v(A + vB, u^2 + v^2 - 1) (identity checked in the resultant tests).
/// f does not vanish iff R has no root on [-1, 1].
pub fn prove_no_zero(a: &RatPoly1, b: &RatPoly1) -> NoZeroOutcome {
    prove_no_zero_with(a, b, false)
}

/// Above roughly degree x coefficient-bits = 1.2e5 a Sturm sequence gets
/// expensive (its coefficients are subresultant-sized); Descartes
/// bisection settles the same question in near-input-size arithmetic, so
/// the dispatcher switches unless the caller pins Sturm.
const STURM_WORK_CAP: u64 = 15_000;

pub fn prove_no_zero_with(a: &RatPoly1, b: &RatPoly1, force_sturm: bool) -> NoZeroOutcome {
    if a.is_zero() && b.is_zero() {
        return NoZeroOutcome::IdenticallyZero;
    }
    let u2m1 =
        RatPoly1::new(vec![-Rat::from_integer(1.into()), Rat::zero(), Rat::from_integer(1.into())]);
    let r = a.mul_ref(a).add_ref(&u2m1.mul_ref(&b.mul_ref(b)));
    let r_int = primitive_int(&r);
    let one = Rat::from_integer(1.into());
    // roots exactly at the endpoints are contacts at theta = 0 or pi;
    // R(+-1) = A(+-1)^2, so nonvanishing certificates have A(+-1) != 0
    if crate::exact::sturm::sign_at(&r_int, &one) == 0
        || crate::exact::sturm::sign_at(&r_int, &-one.clone()) == 0
    {
        return NoZeroOutcome::Inconclusive { root_count: 1 };
    }
    let deg = r_int.deg_or_zero() as u64;
    let bits = r_int.coeffs().iter().map(|c| c.bits()).max().unwrap_or(0);
    if force_sturm || deg * bits <= STURM_WORK_CAP {
        // endpoints are non-roots here, so the variation difference counts
        // every root in the closed interval
        let seq = sturm_sequence(&r_int);
        let table_lo = sign_table(&seq, &-one.clone());
        let table_hi = sign_table(&seq, &one);
        let total = crate::exact::sturm::variations_of_table(&table_lo)
            - crate::exact::sturm::variations_of_table(&table_hi);
        if total > 0 {
            return NoZeroOutcome::Inconclusive { root_count: total };
        }
        let sturm = SturmEvidence { table_lo, table_hi, root_count: 0 };
        NoZeroOutcome::Proved { resultant: r_int, evidence: NoZeroEvidence::Sturm(sturm) }
    } else {
        match crate::exact::descartes::roots_in_interval(&r_int, &-one.clone(), &one, 64) {
            Some(crate::exact::descartes::RootStatus::None) => NoZeroOutcome::Proved {
                resultant: r_int,
                evidence: NoZeroEvidence::DescartesBisection,
            },
            // an existing root or an unresolvable cluster both fail the proof
            Some(crate::exact::descartes::RootStatus::Exists) | None => {
                NoZeroOutcome::Inconclusive { root_count: 1 }
            }
        }
    }
}

/// Sign of f everywhere, given a nonvanishing proof: the exact sign of
/// f(0) = A(1).
pub fn global_sign(a: &RatPoly1, outcome: &NoZeroOutcome) -> Result<i8, CertifyError> {
    match outcome {
        NoZeroOutcome::Proved { .. } => {
            let v = a.eval(&Rat::from_integer(1.into()));
            if v.is_positive() {
                Ok(1)
            } else if v.is_negative() {
                Ok(-1)
            } else {
                Err(CertifyError::NoProof)
            }
        }
        _ => Err(CertifyError::NoProof),
    }
}

/// Exact signed area over pi: for trig curves the orthogonality relations
/// collapse the loop integral to sum_k k (xc_k ys_k - xs_k yc_k).
pub fn orientation(curve: &RatCurve) -> Result<(CurveOrientation, Rat), CertifyError> {
    let m = curve.degree();
    let mut area = Rat::zero();
    for k in 1..=m {
        let kk = Rat::from_integer(k.into());
        area += kk * (&curve.x_cos[k] * &curve.y_sin[k] - &curve.x_sin[k] * &curve.y_cos[k]);
    }
    if area.is_zero() {
        return Err(CertifyError::DegenerateCurve);
    }
    let o = if area.is_positive() { CurveOrientation::Ccw } else { CurveOrientation::Cw };
    Ok((o, area))
}

/// A complete transversality certificate for one curve.
#[derive(Debug, Clone)]
pub struct TransversalityCertificate {
    pub curve: RatCurve,
    pub contact_a: RatPoly1,
    pub contact_b: RatPoly1,
    pub resultant: IntPoly,
    pub evidence: NoZeroEvidence,
    /// sign of f everywhere (exactly the sign of A(1))
    pub f_sign: i8,
    pub orientation: CurveOrientation,
    pub area_over_pi: Rat,
    pub simplicity: SimplicityEvidence,
    /// whether the flow crosses the curve toward its unbounded side
    pub crosses_outward: bool,
}

#[derive(Debug, Clone)]
pub struct CertifyOptions {
    pub grid_max_depth: u32,
    pub quad_max_depth: u32,
    pub max_boxes: usize,
    /// pin the no-zero proof to a full Sturm sequence
    pub force_sturm: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            grid_max_depth: 30,
            quad_max_depth: 34,
            max_boxes: 40_000_000,
            force_sturm: false,
        }
    }
}

/// The full certification pipeline for one rational curve against a
/// rational field. `Err(GridCap)`-style failures mean "inconclusive".
pub fn certify_curve(
    field: &PolyVectorField,
    curve: &RatCurve,
    opts: &CertifyOptions,
) -> Result<TransversalityCertificate, CertifyFailure> {
    let contact = contact_function(field, curve);
    let outcome = prove_no_zero_with(&contact.a, &contact.b, opts.force_sturm);
    let (resultant, evidence) = match outcome {
        NoZeroOutcome::Proved { ref resultant, ref evidence } => {
            (resultant.clone(), evidence.clone())
        }
        NoZeroOutcome::Inconclusive { root_count } => {
            return Err(CertifyFailure::Inconclusive { root_count });
        }
        NoZeroOutcome::IdenticallyZero => return Err(CertifyFailure::IdenticallyZero),
    };
    // degree sanity: deg R <= 2 (d+1) m
    let d = field.p.total_degree().unwrap_or(0).max(field.q.total_degree().unwrap_or(0)) as usize;
    assert!(
        resultant.degree().unwrap_or(0) <= 2 * (d + 1) * curve.degree(),
        "resultant degree exceeded its bound"
    );
    let f_sign = global_sign(&contact.a, &outcome).map_err(CertifyFailure::Error)?;
    let (orient, area) = orientation(curve).map_err(CertifyFailure::Error)?;
    let eval = CurveEval::new(curve);
    let simplicity = simple::prove_simple(curve, &eval, opts.quad_max_depth, opts.max_boxes)
        .map_err(CertifyFailure::Error)?;
    let crosses_outward = (f_sign > 0) == (orient == CurveOrientation::Ccw);
    Ok(TransversalityCertificate {
        curve: curve.clone(),
        contact_a: contact.a,
        contact_b: contact.b,
        resultant,
        evidence,
        f_sign,
        orientation: orient,
        area_over_pi: area,
        simplicity,
        crosses_outward,
    })
}

#[derive(Debug, Clone)]
pub enum CertifyFailure {
    /// R has roots in [-1, 1]; retry with a better fit or tighter rationals
    Inconclusive { root_count: usize },
    /// the curve is invariant under the flow
    IdenticallyZero,
    Error(CertifyError),
}

impl std::fmt::Display for CertifyFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CertifyFailure::Inconclusive { root_count } => {
                write!(f, "inconclusive: resultant has {root_count} root(s) in [-1, 1]")
            }
            CertifyFailure::IdenticallyZero => write!(f, "contact function is identically zero"),
            CertifyFailure::Error(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnnulusDirection {
    /// flow enters the annulus through both boundary curves
    InwardTrapping,
    /// flow leaves through both
    OutwardRepelling,
}

#[derive(Debug, Clone)]
pub struct ContainmentEvidence {
    /// winding of the outer curve around a point of the inner curve
    pub winding: WindingEvidence,
    pub disjoint: DisjointnessEvidence,
}

#[derive(Debug, Clone)]
pub struct EquilibriumExclusion {
    pub eq_box: RatBox,
    /// true: strictly inside the inner curve; false: strictly outside the
    /// outer curve
    pub inside_inner: bool,
    pub winding: WindingEvidence,
}

/// Certificate that the region between two certified transversal curves is
/// a Poincare-Bendixson annulus: an odd number of limit cycles (counted
/// with multiplicity) lies inside it.
#[derive(Debug, Clone)]
pub struct AnnulusCertificate {
    pub inner: TransversalityCertificate,
    pub outer: TransversalityCertificate,
    pub direction: AnnulusDirection,
    pub containment: ContainmentEvidence,
    pub exclusions: Vec<EquilibriumExclusion>,
    pub conclusion: String,
}

/// Assembles an annulus certificate: containment, equilibrium exclusion,
/// and opposite crossing directions.
pub fn build_annulus(
    inner: TransversalityCertificate,
    outer: TransversalityCertificate,
    equilibria: &[RatBox],
    opts: &CertifyOptions,
) -> Result<AnnulusCertificate, CertifyError> {
    let inner_eval = CurveEval::new(&inner.curve);
    let outer_eval = CurveEval::new(&outer.curve);
    // (a) the inner curve lies strictly inside the outer one: the curves
    // are disjoint and one inner point has winding +-1 in the outer curve
    let disjoint = simple::prove_disjoint(&inner_eval, &outer_eval, opts.quad_max_depth, opts.max_boxes)?;
    let probe = inner.curve.point_at_zero();
    let winding = winding::winding_around(&outer_eval, &probe, &Rat::zero(), 6)?;
    if winding.winding.abs() != 1 {
        return Err(CertifyError::ContainmentUnproved);
    }
    // (b) every equilibrium box is strictly inside the inner curve or
    // strictly outside the outer curve
    let mut exclusions = Vec::new();
    for eq in equilibria {
        let center = eq.center();
        // clearance covering the whole box: half diagonal <= (w + h)/2
        let clearance = (eq.x.width() + eq.y.width()) / Rat::from_integer(2.into());
        let wi = winding::winding_around(&inner_eval, &center, &clearance, 6)?;
        if wi.winding.abs() == 1 {
            exclusions.push(EquilibriumExclusion { eq_box: eq.clone(), inside_inner: true, winding: wi });
            continue;
        }
        let wo = winding::winding_around(&outer_eval, &center, &clearance, 6)?;
        if wo.winding == 0 {
            exclusions.push(EquilibriumExclusion { eq_box: eq.clone(), inside_inner: false, winding: wo });
            continue;
        }
        return Err(CertifyError::EquilibriumInAnnulus);
    }
    // (c) crossing directions must be opposite relative to the annulus
    let direction = match (inner.crosses_outward, outer.crosses_outward) {
        (true, false) => AnnulusDirection::InwardTrapping,
        (false, true) => AnnulusDirection::OutwardRepelling,
        _ => return Err(CertifyError::DirectionMismatch),
    };
    let conclusion = format!(
        "the region between the two certified transversal curves is a \
         Poincare-Bendixson annulus ({}): it contains an odd number of \
         limit cycles, counted with multiplicity",
        match direction {
            AnnulusDirection::InwardTrapping => "flow enters through both boundaries",
            AnnulusDirection::OutwardRepelling => "flow leaves through both boundaries",
        }
    );
    Ok(AnnulusCertificate {
        inner,
        outer,
        direction,
        containment: ContainmentEvidence { winding, disjoint },
        exclusions,
        conclusion,
    })
}

/// Numeric soundness cross-check: dense sampling of f must agree with a
/// claimed nonvanishing proof (used by tests and the CLI pre-check).
pub fn numeric_contact_scan(field: &PolyVectorField, curve: &RatCurve, n: usize) -> (f64, bool) {
    let fe: crate::system::FieldEval<f64> = field.compile();
    let fc = curve.to_float();
    let dc = fc.deriv();
    let mut min_abs = f64::INFINITY;
    let mut pos = false;
    let mut neg = false;
    for i in 0..n {
        let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
        let w = fc.eval(t);
        let dw = dc.eval(t);
        let x = fe.eval(w.0, w.1);
        let f = x.0 * dw.1 - x.1 * dw.0;
        min_abs = min_abs.min(f.abs());
        pos |= f > 0.0;
        neg |= f < 0.0;
    }
    (min_abs, !(pos && neg))
}
