//! Plain-text file formats: system specs and certificates as JSON with
//! every rational encoded exactly as a "num/den" decimal string, so an
//! independent checker can re-verify a certificate from file contents
//! alone.

use anyhow::{anyhow, bail, Context, Result};
use cyclecert::certify::{
    AnnulusCertificate, AnnulusDirection, NoZeroEvidence, TransversalityCertificate,
};
use cyclecert::exact::interval::RatBox;
use cyclecert::flow::{Orientation, Section};
use cyclecert::lienard::{
    LienardSystem, NegativityEvidence, NonexistenceCertificate, RootFreeEvidence,
};
use cyclecert::system::PolyVectorField;
use cyclecert::trig::RatCurve;
use cyclecert::{rat_from_str, rat_to_string, Int, Rat, RatPoly1, RatPoly2};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

fn rat(s: &str) -> Result<Rat> {
    rat_from_str(s).ok_or_else(|| anyhow!("invalid rational: {s:?}"))
}

fn rats(v: &[String]) -> Result<Vec<Rat>> {
    v.iter().map(|s| rat(s)).collect()
}

fn strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_to_string).collect()
}

/// One monomial c * x^i y^j with c = num/den.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonomialRecord {
    pub i: u32,
    pub j: u32,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SectionSpec {
    pub anchor: [String; 2],
    pub direction: [String; 2],
    #[serde(default = "default_range")]
    pub range: [f64; 2],
    /// "positive" or "negative": required sign of n . X at crossings
    #[serde(default = "default_orientation")]
    pub orientation: String,
}

fn default_range() -> [f64; 2] {
    [1e-9, 1e9]
}

fn default_orientation() -> String {
    "positive".into()
}

/// A planar polynomial system with exact rational coefficients.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemSpec {
    pub name: String,
    pub p: Vec<MonomialRecord>,
    pub q: Vec<MonomialRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section: Option<SectionSpec>,
    /// displacement-map bracket hint for the cycle finder
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub unstable: bool,
}

fn records_to_poly2(records: &[MonomialRecord]) -> Result<RatPoly2> {
    let mut p = RatPoly2::zero();
    for r in records {
        let num: Int = r.num.parse().map_err(|_| anyhow!("bad numerator {:?}", r.num))?;
        let den: Int = r.den.parse().map_err(|_| anyhow!("bad denominator {:?}", r.den))?;
        if num_traits::Zero::is_zero(&den) {
            bail!("zero denominator in monomial record");
        }
        p.add_term(r.i, r.j, Rat::new(num, den));
    }
    Ok(p)
}

impl SystemSpec {
    pub fn to_field(&self) -> Result<PolyVectorField> {
        let p = records_to_poly2(&self.p)?;
        let q = records_to_poly2(&self.q)?;
        Ok(PolyVectorField::new(p, q)
            .map_err(|e| anyhow!("{e}"))?
            .named(&self.name))
    }

    pub fn to_section(&self) -> Result<Section> {
        let Some(spec) = &self.section else {
            return Ok(Section::positive_x_axis());
        };
        let orientation = match spec.orientation.as_str() {
            "positive" => Orientation::Positive,
            "negative" => Orientation::Negative,
            other => bail!("unknown orientation {other:?} (want positive|negative)"),
        };
        Ok(Section {
            anchor: (rat(&spec.anchor[0])?, rat(&spec.anchor[1])?),
            direction: (rat(&spec.direction[0])?, rat(&spec.direction[1])?),
            r_min: spec.range[0],
            r_max: spec.range[1],
            orientation,
        })
    }

    pub fn load(path: &std::path::Path) -> Result<SystemSpec> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading system file {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

/// Coefficient of x^k in a Liénard F, itself a polynomial in the family
/// parameter.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LienardCoefficient {
    pub k: usize,
    /// delta-polynomial: list of (power, num, den)
    pub coef: Vec<ParamTerm>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamTerm {
    pub j: usize,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LienardSpec {
    pub name: String,
    pub f: Vec<LienardCoefficient>,
}

impl LienardSpec {
    pub fn to_family(&self) -> Result<LienardSystem<RatPoly1>> {
        let max_k = self.f.iter().map(|c| c.k).max().unwrap_or(0);
        let mut coeffs = vec![<RatPoly1 as Zero>::zero(); max_k + 1];
        for c in &self.f {
            let max_j = c.coef.iter().map(|t| t.j).max().unwrap_or(0);
            let mut pc = vec![Rat::from_integer(0.into()); max_j + 1];
            for t in &c.coef {
                let num: Int = t.num.parse().map_err(|_| anyhow!("bad num {:?}", t.num))?;
                let den: Int = t.den.parse().map_err(|_| anyhow!("bad den {:?}", t.den))?;
                pc[t.j] = Rat::new(num, den);
            }
            coeffs[c.k] = RatPoly1::new(pc);
        }
        Ok(LienardSystem { f: cyclecert::exact::Poly1::new(coeffs) })
    }

    pub fn load(path: &std::path::Path) -> Result<LienardSpec> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading Lienard file {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveRecord {
    pub degree: usize,
    pub x_cos: Vec<String>,
    pub x_sin: Vec<String>,
    pub y_cos: Vec<String>,
    pub y_sin: Vec<String>,
}

impl CurveRecord {
    pub fn from_curve(c: &RatCurve) -> CurveRecord {
        CurveRecord {
            degree: c.degree(),
            x_cos: strings(&c.x_cos),
            x_sin: strings(&c.x_sin),
            y_cos: strings(&c.y_cos),
            y_sin: strings(&c.y_sin),
        }
    }

    pub fn to_curve(&self) -> Result<RatCurve> {
        let c = RatCurve {
            x_cos: rats(&self.x_cos)?,
            x_sin: rats(&self.x_sin)?,
            y_cos: rats(&self.y_cos)?,
            y_sin: rats(&self.y_sin)?,
            period: None,
        };
        if c.x_cos.len() != c.x_sin.len()
            || c.y_cos.len() != c.y_sin.len()
            || c.x_cos.len() != c.y_cos.len()
        {
            bail!("curve coefficient arrays must have equal length");
        }
        Ok(c)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum NoZeroRecord {
    Sturm { table_lo: Vec<i32>, table_hi: Vec<i32> },
    DescartesBisection,
}

impl NoZeroRecord {
    fn from_evidence(e: &NoZeroEvidence) -> NoZeroRecord {
        match e {
            NoZeroEvidence::Sturm(s) => NoZeroRecord::Sturm {
                table_lo: s.table_lo.clone(),
                table_hi: s.table_hi.clone(),
            },
            NoZeroEvidence::DescartesBisection => NoZeroRecord::DescartesBisection,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimplicityRecord {
    pub min_speed: String,
    pub accel_bound: String,
    pub s_eta: String,
    pub boxes: usize,
    pub max_depth: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransversalityRecord {
    pub system: SystemSpec,
    pub curve: CurveRecord,
    pub contact_a: Vec<String>,
    pub contact_b: Vec<String>,
    /// primitive integer coefficients of R = A^2 + (u^2-1) B^2
    pub resultant: Vec<String>,
    pub no_zero: NoZeroRecord,
    pub f_sign: i8,
    pub orientation: String,
    pub area_over_pi: String,
    pub simplicity: SimplicityRecord,
    pub crosses_outward: bool,
}

impl TransversalityRecord {
    pub fn from_certificate(
        system: &SystemSpec,
        cert: &TransversalityCertificate,
    ) -> TransversalityRecord {
        TransversalityRecord {
            system: system.clone(),
            curve: CurveRecord::from_curve(&cert.curve),
            contact_a: strings(cert.contact_a.coeffs()),
            contact_b: strings(cert.contact_b.coeffs()),
            resultant: cert.resultant.coeffs().iter().map(|c| c.to_string()).collect(),
            no_zero: NoZeroRecord::from_evidence(&cert.evidence),
            f_sign: cert.f_sign,
            orientation: match cert.orientation {
                cyclecert::band::CurveOrientation::Ccw => "ccw".into(),
                cyclecert::band::CurveOrientation::Cw => "cw".into(),
            },
            area_over_pi: rat_to_string(&cert.area_over_pi),
            simplicity: SimplicityRecord {
                min_speed: rat_to_string(&cert.simplicity.min_speed),
                accel_bound: rat_to_string(&cert.simplicity.accel_bound),
                s_eta: rat_to_string(&cert.simplicity.s_eta),
                boxes: cert.simplicity.boxes,
                max_depth: cert.simplicity.max_depth,
            },
            crosses_outward: cert.crosses_outward,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoxRecord {
    pub x_lo: String,
    pub x_hi: String,
    pub y_lo: String,
    pub y_hi: String,
}

impl BoxRecord {
    pub fn from_box(b: &RatBox) -> BoxRecord {
        BoxRecord {
            x_lo: rat_to_string(&b.x.lo),
            x_hi: rat_to_string(&b.x.hi),
            y_lo: rat_to_string(&b.y.lo),
            y_hi: rat_to_string(&b.y.hi),
        }
    }

}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExclusionRecord {
    pub eq_box: BoxRecord,
    pub inside_inner: bool,
    pub winding: i32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnnulusRecord {
    pub inner: TransversalityRecord,
    pub outer: TransversalityRecord,
    pub direction: String,
    pub containment_winding: i32,
    pub exclusions: Vec<ExclusionRecord>,
    pub conclusion: String,
}

impl AnnulusRecord {
    pub fn from_certificate(system: &SystemSpec, ann: &AnnulusCertificate) -> AnnulusRecord {
        AnnulusRecord {
            inner: TransversalityRecord::from_certificate(system, &ann.inner),
            outer: TransversalityRecord::from_certificate(system, &ann.outer),
            direction: match ann.direction {
                AnnulusDirection::InwardTrapping => "inward-trapping".into(),
                AnnulusDirection::OutwardRepelling => "outward-repelling".into(),
            },
            containment_winding: ann.containment.winding.winding,
            exclusions: ann
                .exclusions
                .iter()
                .map(|e| ExclusionRecord {
                    eq_box: BoxRecord::from_box(&e.eq_box),
                    inside_inner: e.inside_inner,
                    winding: e.winding.winding,
                })
                .collect(),
            conclusion: ann.conclusion.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum RootFreeRecord {
    Sturm { table_lo: Vec<i32>, table_hi: Vec<i32> },
    DescartesBisection,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NegativityRecord {
    pub bound: String,
    pub even_reduced: bool,
    #[serde(flatten)]
    pub root_free: RootFreeRecord,
}

impl NegativityRecord {
    pub fn from_evidence(e: &NegativityEvidence) -> NegativityRecord {
        NegativityRecord {
            bound: rat_to_string(&e.bound),
            even_reduced: e.even_reduced,
            root_free: match &e.root_free {
                RootFreeEvidence::Sturm { table_lo, table_hi } => RootFreeRecord::Sturm {
                    table_lo: table_lo.clone(),
                    table_hi: table_hi.clone(),
                },
                RootFreeEvidence::DescartesBisection => RootFreeRecord::DescartesBisection,
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NonexistenceRecord {
    pub lienard: LienardSpec,
    pub n: usize,
    pub delta: String,
    /// F at the substituted parameter
    pub f: Vec<String>,
    pub x_power: usize,
    pub sign_poly: Vec<String>,
    pub negativity: NegativityRecord,
    pub non_invariance: String,
    /// sha256 of each B_i's canonical coefficient list
    pub b_hashes: Vec<String>,
}

/// sha256 over the canonical "num/den" coefficient listing.
pub fn poly_hash(p: &RatPoly1) -> String {
    let mut h = Sha256::new();
    for c in p.coeffs() {
        h.update(rat_to_string(c).as_bytes());
        h.update(b",");
    }
    let digest = h.finalize();
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

impl NonexistenceRecord {
    pub fn from_certificate(
        spec: &LienardSpec,
        cert: &NonexistenceCertificate,
        b_hashes: Vec<String>,
    ) -> NonexistenceRecord {
        NonexistenceRecord {
            lienard: spec.clone(),
            n: cert.n,
            delta: rat_to_string(&cert.delta),
            f: strings(cert.f.coeffs()),
            x_power: cert.x_power,
            sign_poly: strings(cert.sign_poly.coeffs()),
            negativity: NegativityRecord::from_evidence(&cert.negativity),
            non_invariance: cert.non_invariance.clone(),
            b_hashes,
        }
    }
}

/// The on-disk certificate envelope.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertificateFile {
    Transversality {
        tool_version: String,
        #[serde(flatten)]
        body: TransversalityRecord,
    },
    Annulus {
        tool_version: String,
        #[serde(flatten)]
        body: AnnulusRecord,
    },
    Nonexistence {
        tool_version: String,
        #[serde(flatten)]
        body: NonexistenceRecord,
    },
}

impl CertificateFile {
    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text)
            .with_context(|| format!("writing certificate {}", path.display()))
    }

    pub fn load(path: &std::path::Path) -> Result<CertificateFile> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading certificate {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

pub fn parse_rat_arg(s: &str) -> Result<Rat> {
    if let Some(r) = rat_from_str(s) {
        return Ok(r);
    }
    // accept plain decimals like 0.05 too, converted exactly
    let f: f64 = s.parse().with_context(|| format!("not a rational or decimal: {s:?}"))?;
    cyclecert::rat_from_f64(f).ok_or_else(|| anyhow!("non-finite value: {s:?}"))
}

pub fn poly1_from_strings(v: &[String]) -> Result<RatPoly1> {
    Ok(RatPoly1::new(rats(v)?))
}
