//! Subcommand implementations: the detect -> band -> fit -> rationalize ->
//! certify pipeline, annulus assembly, Liénard certificates, bounds, plot
//! data, and certificate re-verification.

use crate::formats::*;
use crate::Tier;
use anyhow::{anyhow, bail, Context, Result};
use cyclecert::band::{build_band, horizontal_crossing, numeric_transversality, sample_points};
use cyclecert::certify::{
    build_annulus, certify_curve, contact_function, numeric_contact_scan, prove_no_zero_with,
    CertifyOptions, NoZeroEvidence, NoZeroOutcome, TransversalityCertificate,
};
use cyclecert::cycle::{find_cycle, fourier_spectrum, hyperbolicity, CycleEstimate, FindCycleOptions};
use cyclecert::lienard::{
    bound_bisection, cherkas_build, negativity_evidence_with, two_sided_bound, LienardSystem,
    NonexistenceCertificate,
};
use cyclecert::system::PolyVectorField;
use cyclecert::trig::{interpolate, RatCurve};
use cyclecert::{rat_to_f64, rat_to_string, Int, Rat};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_REFUTED: u8 = 4;

fn parse_bracket(s: &str) -> Result<(f64, f64)> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| anyhow!("bracket must look like lo:hi, got {s:?}"))?;
    Ok((lo.trim().parse()?, hi.trim().parse()?))
}

fn locate_cycle(
    spec: &SystemSpec,
    field: &PolyVectorField,
    bracket_flag: Option<&str>,
    unstable_flag: bool,
    tol: f64,
) -> Result<CycleEstimate> {
    let section = spec.to_section()?;
    let bracket = match bracket_flag {
        Some(s) => parse_bracket(s)?,
        None => spec
            .bracket
            .map(|[a, b]| (a, b))
            .ok_or_else(|| anyhow!("no bracket given (use --bracket lo:hi or a bracket in the system file)"))?,
    };
    let opts = FindCycleOptions {
        ode_tol: tol,
        unstable: unstable_flag || spec.unstable,
        ..Default::default()
    };
    find_cycle(field, &section, bracket, &opts).map_err(|e| anyhow!("{e}"))
}

pub fn detect(
    system: &Path,
    bracket: Option<&str>,
    unstable: bool,
    tol: f64,
    spectrum_max: usize,
) -> Result<ExitCode> {
    let spec = SystemSpec::load(system)?;
    let field = spec.to_field()?;
    let ce = locate_cycle(&spec, &field, bracket, unstable, tol)?;
    let h = hyperbolicity(&ce);
    println!("system:      {}", spec.name);
    println!("crossing:    ({:.8}, {:.8})", ce.point_star.0, ce.point_star.1);
    println!("parameter:   {:.8}", ce.x0_star);
    println!("period:      {:.8}", ce.period);
    println!("kappa:       {:.8}", ce.kappa);
    println!("multiplier:  {:.6e}", h.multiplier);
    println!("stability:   {:?}{}", ce.stability, if h.non_hyperbolic { " (numerically non-hyperbolic)" } else { "" });
    println!("residual:    {:.3e}", ce.residual);
    let sp = fourier_spectrum(&ce, spectrum_max);
    println!("spectrum (per-harmonic magnitude, components 1 and 2):");
    for k in 0..=spectrum_max {
        println!("  {:3}  {:9.3e}  {:9.3e}", k, sp.magnitude(0, k), sp.magnitude(1, k));
    }
    Ok(ExitCode::from(EXIT_OK))
}

pub struct CertifyArgs {
    pub system: PathBuf,
    pub eps: f64,
    pub m: usize,
    pub denbound: u64,
    pub side: Option<String>,
    pub bracket: Option<String>,
    pub unstable: bool,
    pub tol: f64,
    pub force_sturm: bool,
    pub cert: Option<PathBuf>,
    pub out: PathBuf,
    pub tier: Tier,
}

/// The five-step pipeline with the retry ladder: on an inconclusive proof,
/// first raise the denominator bound a hundredfold, then raise the degree
/// and refit.
pub fn certify(args: CertifyArgs) -> Result<ExitCode> {
    if args.tier == Tier::Desk && args.m > 60 {
        bail!("degree m = {} is a long-running fit; pass --tier long", args.m);
    }
    let spec = SystemSpec::load(&args.system)?;
    let field = spec.to_field()?;
    let ce = locate_cycle(&spec, &field, args.bracket.as_deref(), args.unstable, args.tol)?;

    // shrink |eps| until the numeric pre-check passes
    let mut eps = args.eps;
    let mut band = None;
    for _ in 0..20 {
        let b = build_band(&field, &ce, eps).map_err(|e| anyhow!("{e}"))?;
        let scan = numeric_transversality(&field, &b);
        if scan.sign_constant {
            band = Some(b);
            break;
        }
        eps *= 0.5;
        eprintln!("numeric transversality failed; retrying with eps = {eps}");
    }
    let Some(band) = band else {
        eprintln!("no transversal band found down to eps = {eps}");
        return Ok(ExitCode::from(EXIT_REFUTED));
    };
    if let Some(want) = &args.side {
        let got = match band.side {
            cyclecert::band::Side::Inner => "inner",
            cyclecert::band::Side::Outer => "outer",
        };
        if want != got {
            bail!("requested side {want:?} but eps = {eps} builds the {got} curve");
        }
    }

    let opts = CertifyOptions { force_sturm: args.force_sturm, ..Default::default() };
    let mut last_failure = None;
    let mut last_curve: Option<RatCurve> = None;
    for m_bump in 0..3usize {
        let m = args.m + m_bump;
        let pts = sample_points(&band, 2 * m + 1).map_err(|e| anyhow!("{e}"))?;
        let fit = interpolate(&pts).map_err(|e| anyhow!("{e}"))?;
        for den_mult in [1u64, 100] {
            let den = Int::from(args.denbound) * Int::from(den_mult);
            let rat = fit.rationalize(&den);
            match certify_curve(&field, &rat, &opts) {
                Ok(cert) => {
                    if m_bump > 0 || den_mult > 1 {
                        eprintln!("certified after retry (m = {m}, denominator bound x{den_mult})");
                    }
                    return finish_certificate(&args, &spec, &band, eps, cert);
                }
                Err(f) => {
                    eprintln!("attempt m = {m}, bound x{den_mult}: {f}");
                    last_failure = Some(f);
                    last_curve = Some(rat);
                }
            }
        }
    }
    // distinguish a numeric refutation from a mere failure to prove
    if let Some(curve) = &last_curve {
        let (_, constant_sign) = numeric_contact_scan(&field, curve, 10_000);
        if !constant_sign {
            eprintln!("contact function changes sign numerically: curve is not transversal");
            return Ok(ExitCode::from(EXIT_REFUTED));
        }
    }
    eprintln!(
        "inconclusive after retries: {}",
        last_failure.map(|f| f.to_string()).unwrap_or_default()
    );
    Ok(ExitCode::from(EXIT_INCONCLUSIVE))
}

fn finish_certificate(
    args: &CertifyArgs,
    spec: &SystemSpec,
    band: &cyclecert::band::BandCurve,
    eps: f64,
    cert: TransversalityCertificate,
) -> Result<ExitCode> {
    let side = match band.side {
        cyclecert::band::Side::Inner => "inner",
        cyclecert::band::Side::Outer => "outer",
    };
    let stem = args
        .system
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "system".into());
    let cert_path = args
        .cert
        .clone()
        .unwrap_or_else(|| args.out.join(format!("{stem}-{side}.cert.json")));
    std::fs::create_dir_all(&args.out).ok();
    let record = TransversalityRecord::from_certificate(spec, &cert);
    CertificateFile::Transversality { tool_version: TOOL_VERSION.into(), body: record }
        .save(&cert_path)?;
    let csv_path = cert_path.with_extension("csv");
    write_curve_csv(&csv_path, &cert.curve, 720)?;
    if let Some(x) = horizontal_crossing(band, rat_to_f64(&spec.to_section()?.anchor.1), 0.0) {
        println!("band crosses the section line at x = {x:.6}");
    }
    println!("eps used:    {eps}");
    println!("side:        {side}");
    println!("f sign:      {}", cert.f_sign);
    println!("orientation: {:?}", cert.orientation);
    println!("resultant:   degree {}", cert.resultant.deg_or_zero());
    println!("certificate: {}", cert_path.display());
    println!("curve csv:   {}", csv_path.display());
    Ok(ExitCode::from(EXIT_OK))
}

fn write_curve_csv(path: &Path, curve: &RatCurve, samples: usize) -> Result<()> {
    let f = curve.to_float();
    let mut text = String::from("theta,x,y\n");
    for i in 0..=samples {
        let t = 2.0 * std::f64::consts::PI * i as f64 / samples as f64;
        let (x, y) = f.eval(t);
        text.push_str(&format!("{t:.8},{x:.12},{y:.12}\n"));
    }
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Rebuilds a TransversalityCertificate from its file record, re-verifying
/// the exact claims along the way.
fn certificate_from_record(body: &TransversalityRecord) -> Result<(PolyVectorField, TransversalityCertificate)> {
    let field = body.system.to_field()?;
    let curve = body.curve.to_curve()?;
    let contact = contact_function(&field, &curve);
    let claimed_a = poly1_from_strings(&body.contact_a)?;
    let claimed_b = poly1_from_strings(&body.contact_b)?;
    if contact.a != claimed_a || contact.b != claimed_b {
        bail!("contact function does not match the certificate");
    }
    let force_sturm = matches!(body.no_zero, NoZeroRecord::Sturm { .. });
    let outcome = prove_no_zero_with(&contact.a, &contact.b, force_sturm);
    let NoZeroOutcome::Proved { resultant, evidence } = outcome else {
        bail!("no-zero proof does not reproduce");
    };
    let claimed_r: Vec<Int> = body
        .resultant
        .iter()
        .map(|s| s.parse().map_err(|_| anyhow!("bad integer {s:?}")))
        .collect::<Result<_>>()?;
    if resultant.coeffs() != claimed_r.as_slice() {
        bail!("resultant does not match the certificate");
    }
    if let (NoZeroEvidence::Sturm(s), NoZeroRecord::Sturm { table_lo, table_hi }) =
        (&evidence, &body.no_zero)
    {
        if &s.table_lo != table_lo || &s.table_hi != table_hi {
            bail!("Sturm sign tables do not match the certificate");
        }
    }
    let f_sign = cyclecert::certify::global_sign(&contact.a, &NoZeroOutcome::Proved {
        resultant: resultant.clone(),
        evidence: evidence.clone(),
    })
    .map_err(|e| anyhow!("{e}"))?;
    if f_sign != body.f_sign {
        bail!("global sign does not match the certificate");
    }
    let (orientation, area) = cyclecert::certify::orientation(&curve).map_err(|e| anyhow!("{e}"))?;
    if rat_to_string(&area) != body.area_over_pi {
        bail!("orientation area does not match the certificate");
    }
    let eval = cyclecert::certify::grid::CurveEval::new(&curve);
    let simplicity = cyclecert::certify::simple::prove_simple(&curve, &eval, 34, 40_000_000)
        .map_err(|e| anyhow!("simplicity re-verification failed: {e}"))?;
    let crosses_outward = (f_sign > 0) == (orientation == cyclecert::band::CurveOrientation::Ccw);
    if crosses_outward != body.crosses_outward {
        bail!("crossing direction does not match the certificate");
    }
    Ok((
        field,
        TransversalityCertificate {
            curve,
            contact_a: contact.a,
            contact_b: contact.b,
            resultant,
            evidence,
            f_sign,
            orientation,
            area_over_pi: area,
            simplicity,
            crosses_outward,
        },
    ))
}

pub fn annulus(certs: &[PathBuf], cert_out: Option<PathBuf>, out: &Path) -> Result<ExitCode> {
    if certs.len() != 2 {
        bail!("annulus needs exactly two transversality certificates, got {}", certs.len());
    }
    let mut loaded = Vec::new();
    for p in certs {
        match CertificateFile::load(p)? {
            CertificateFile::Transversality { body, .. } => loaded.push(body),
            _ => bail!("{} is not a transversality certificate", p.display()),
        }
    }
    if serde_json::to_string(&loaded[0].system.p)? != serde_json::to_string(&loaded[1].system.p)?
        || serde_json::to_string(&loaded[0].system.q)? != serde_json::to_string(&loaded[1].system.q)?
    {
        bail!("the two certificates are for different systems");
    }
    let (field, c0) = certificate_from_record(&loaded[0])?;
    let (_, c1) = certificate_from_record(&loaded[1])?;
    // order by area: the smaller enclosed area is the inner curve
    let (inner, outer, spec) = {
        let a0 = rat_to_f64(&c0.area_over_pi).abs();
        let a1 = rat_to_f64(&c1.area_over_pi).abs();
        if a0 <= a1 {
            (c0, c1, &loaded[0].system)
        } else {
            (c1, c0, &loaded[0].system)
        }
    };
    let width = Rat::new(1.into(), 1_000_000.into());
    let eqs = field.equilibria(&width).map_err(|e| anyhow!("{e}"))?;
    let opts = CertifyOptions::default();
    let ann = match build_annulus(inner, outer, &eqs, &opts) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("annulus assembly failed: {e}");
            return Ok(ExitCode::from(EXIT_INPUT));
        }
    };
    println!("{}", ann.conclusion);
    let path = cert_out.unwrap_or_else(|| out.join("annulus.cert.json"));
    std::fs::create_dir_all(out).ok();
    let record = AnnulusRecord::from_certificate(spec, &ann);
    CertificateFile::Annulus { tool_version: TOOL_VERSION.into(), body: record }.save(&path)?;
    println!("certificate: {}", path.display());
    Ok(ExitCode::from(EXIT_OK))
}

pub fn nonexist(
    system: &Path,
    n: usize,
    delta: &str,
    force_sturm: bool,
    cert_out: Option<PathBuf>,
    out: &Path,
    tier: Tier,
) -> Result<ExitCode> {
    if tier == Tier::Desk && n > 150 {
        bail!("Cherkas order n = {n} is long-running; pass --tier long");
    }
    let spec = LienardSpec::load(system)?;
    let family = spec.to_family()?;
    let delta = parse_rat_arg(delta)?;
    let cert = match build_nonexistence(&family, n, &delta, force_sturm) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("refused: {e}");
            return Ok(ExitCode::from(EXIT_INCONCLUSIVE));
        }
    };
    let ch = cherkas_build(&family.at(&delta), n).map_err(|e| anyhow!("{e}"))?;
    let hashes = ch.b_table.iter().map(poly_hash).collect();
    let record = NonexistenceRecord::from_certificate(&spec, &cert, hashes);
    let path = cert_out.unwrap_or_else(|| out.join("nonexistence.cert.json"));
    std::fs::create_dir_all(out).ok();
    CertificateFile::Nonexistence { tool_version: TOOL_VERSION.into(), body: record }.save(&path)?;
    println!(
        "no periodic orbits at delta = {}: dB/dt = x^{} R(x) with R negative definite",
        rat_to_string(&cert.delta),
        cert.x_power
    );
    println!("certificate: {}", path.display());
    Ok(ExitCode::from(EXIT_OK))
}

fn build_nonexistence(
    family: &LienardSystem<cyclecert::RatPoly1>,
    n: usize,
    delta: &Rat,
    force_sturm: bool,
) -> Result<NonexistenceCertificate> {
    use cyclecert::error::LienardError;
    if force_sturm {
        // same construction, but pin the negativity evidence to Sturm
        if n % 2 == 1 {
            bail!("{}", LienardError::OddN);
        }
        let l = family.at(delta);
        let ch = cherkas_build(&l, n).map_err(|e| anyhow!("{e}"))?;
        if ch.x_power % 2 == 1 {
            bail!("{}", LienardError::OddN);
        }
        let negativity = negativity_evidence_with(&ch.sign_poly, true)
            .ok_or_else(|| anyhow!("{}", LienardError::NotNegative))?;
        let mut cert = cyclecert::lienard::nonexistence_certificate(family, n, delta)
            .map_err(|e| anyhow!("{e}"))?;
        cert.negativity = negativity;
        Ok(cert)
    } else {
        cyclecert::lienard::nonexistence_certificate(family, n, delta).map_err(|e| anyhow!("{e}"))
    }
}

#[allow(clippy::too_many_arguments)]
pub fn bound(
    system: &Path,
    n: usize,
    bracket: &str,
    tol: &str,
    annulus_files: &[PathBuf],
    report_out: Option<PathBuf>,
    out: &Path,
    tier: Tier,
) -> Result<ExitCode> {
    if tier == Tier::Desk && n > 150 {
        bail!("Cherkas order n = {n} is long-running; pass --tier long");
    }
    let spec = LienardSpec::load(system)?;
    let family = spec.to_family()?;
    let (lo, hi) = {
        let (a, b) = bracket
            .split_once(':')
            .ok_or_else(|| anyhow!("bracket must look like lo:hi"))?;
        (parse_rat_arg(a)?, parse_rat_arg(b)?)
    };
    let tol = parse_rat_arg(tol)?;
    let certified = match bound_bisection(&family, n, &lo, &hi, &tol) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("{e}");
            return Ok(ExitCode::from(EXIT_INPUT));
        }
    };
    println!(
        "certified upper bound at n = {n}: delta < {} ({:.8})",
        rat_to_string(&certified),
        rat_to_f64(&certified)
    );
    // optional combined two-sided report from annulus certificates
    let mut report = serde_json::json!({
        "n": n,
        "upper_bound": rat_to_string(&certified),
        "upper_bound_float": rat_to_f64(&certified),
        "tolerance": rat_to_string(&tol),
    });
    if !annulus_files.is_empty() {
        // each annulus certificate must belong to this family at a single
        // delta, recovered from the linear coefficient of P = y - F(x)
        let mut lower: Option<Rat> = None;
        let mut directions = Vec::new();
        for p in annulus_files {
            let CertificateFile::Annulus { body, .. } = CertificateFile::load(p)? else {
                bail!("{} is not an annulus certificate", p.display());
            };
            let field = body.inner.system.to_field()?;
            let mut delta = None;
            for ((i, j), c) in field.p.terms() {
                if (*i, *j) == (1, 0) {
                    delta = Some(-c.clone());
                }
            }
            let delta = delta.ok_or_else(|| anyhow!("cannot read the parameter from {}", p.display()))?;
            let expect = family.at(&delta).vector_field();
            if expect.p != field.p || expect.q != field.q {
                bail!("{} does not certify a member of this family", p.display());
            }
            match &lower {
                None => lower = Some(delta),
                Some(d) if *d == delta => {}
                Some(d) => bail!(
                    "annulus certificates disagree on delta: {} vs {}",
                    rat_to_string(d),
                    rat_to_string(&delta)
                ),
            }
            directions.push(body.direction.clone());
        }
        let lower_val = lower.unwrap();
        if annulus_files.len() < 2
            || !directions.iter().any(|d| d == "inward-trapping")
            || !directions.iter().any(|d| d == "outward-repelling")
        {
            bail!(
                "the two-cycle lower bound needs a repelling and a trapping annulus                  at the same delta (got {directions:?})"
            );
        }
        let ts = two_sided_bound(lower_val, annulus_files.len(), certified.clone(), n);
        report["lower_bound"] = serde_json::json!(rat_to_string(&ts.lower));
        report["lower_evidence"] = serde_json::json!(ts.lower_evidence);
        report["assumption"] = serde_json::json!(ts.assumption);
        report["upper_evidence"] = serde_json::json!(ts.upper_evidence);
        println!("two-sided: {} < delta* < {}", rat_to_string(&ts.lower), rat_to_string(&ts.upper));
        println!("assumption: {}", ts.assumption);
    }
    let path = report_out.unwrap_or_else(|| out.join("bound-report.json"));
    std::fs::create_dir_all(out).ok();
    std::fs::write(&path, serde_json::to_string_pretty(&report)?)?;
    println!("report: {}", path.display());
    Ok(ExitCode::from(EXIT_OK))
}

#[allow(clippy::too_many_arguments)]
pub fn plotdata(
    artifacts: &[PathBuf],
    system: Option<&Path>,
    bracket: Option<&str>,
    unstable: bool,
    tol: f64,
    samples: usize,
    out: &Path,
) -> Result<ExitCode> {
    std::fs::create_dir_all(out).ok();
    let mut wrote = 0usize;
    if let Some(system) = system {
        let spec = SystemSpec::load(system)?;
        let field = spec.to_field()?;
        let ce = locate_cycle(&spec, &field, bracket, unstable, tol)?;
        let path = out.join("cycle.csv");
        let mut text = String::from("t,x,y\n");
        for s in &ce.samples {
            text.push_str(&format!("{:.8},{:.12},{:.12}\n", s.t, s.pos.0, s.pos.1));
        }
        std::fs::write(&path, text)?;
        println!("wrote {}", path.display());
        wrote += 1;
    }
    for (idx, artifact) in artifacts.iter().enumerate() {
        match CertificateFile::load(artifact)? {
            CertificateFile::Transversality { body, .. } => {
                let curve = body.curve.to_curve()?;
                let path = out.join(format!("curve-{idx}.csv"));
                write_curve_csv(&path, &curve, samples)?;
                println!("wrote {}", path.display());
                wrote += 1;
            }
            CertificateFile::Annulus { body, .. } => {
                for (tag, rec) in [("inner", &body.inner), ("outer", &body.outer)] {
                    let curve = rec.curve.to_curve()?;
                    let path = out.join(format!("curve-{idx}-{tag}.csv"));
                    write_curve_csv(&path, &curve, samples)?;
                    println!("wrote {}", path.display());
                    wrote += 1;
                }
            }
            CertificateFile::Nonexistence { .. } => {
                eprintln!("{}: nonexistence certificates carry no curves; skipped", artifact.display());
            }
        }
    }
    if wrote == 0 {
        println!("nothing to plot");
    }
    Ok(ExitCode::from(EXIT_OK))
}

pub fn verify(cert: &Path) -> Result<ExitCode> {
    match CertificateFile::load(cert)? {
        CertificateFile::Transversality { body, .. } => {
            match certificate_from_record(&body) {
                Ok(_) => {
                    println!("transversality certificate verifies");
                    Ok(ExitCode::from(EXIT_OK))
                }
                Err(e) => {
                    eprintln!("verification failed: {e}");
                    Ok(ExitCode::from(EXIT_INCONCLUSIVE))
                }
            }
        }
        CertificateFile::Annulus { body, .. } => {
            let (field, inner) = certificate_from_record(&body.inner)?;
            let (_, outer) = certificate_from_record(&body.outer)?;
            let width = Rat::new(1.into(), 1_000_000.into());
            let eqs = field.equilibria(&width).map_err(|e| anyhow!("{e}"))?;
            match build_annulus(inner, outer, &eqs, &CertifyOptions::default()) {
                Ok(ann) => {
                    let dir = match ann.direction {
                        cyclecert::certify::AnnulusDirection::InwardTrapping => "inward-trapping",
                        cyclecert::certify::AnnulusDirection::OutwardRepelling => "outward-repelling",
                    };
                    if dir != body.direction {
                        eprintln!("direction mismatch: {dir} vs {}", body.direction);
                        return Ok(ExitCode::from(EXIT_INCONCLUSIVE));
                    }
                    println!("annulus certificate verifies: {}", ann.conclusion);
                    Ok(ExitCode::from(EXIT_OK))
                }
                Err(e) => {
                    eprintln!("verification failed: {e}");
                    Ok(ExitCode::from(EXIT_INCONCLUSIVE))
                }
            }
        }
        CertificateFile::Nonexistence { body, .. } => {
            let family = body.lienard.to_family()?;
            let delta = parse_rat_arg(&body.delta)?;
            let l = family.at(&delta);
            let claimed_f = poly1_from_strings(&body.f)?;
            if l.f != claimed_f {
                eprintln!("substituted F does not match the certificate");
                return Ok(ExitCode::from(EXIT_INCONCLUSIVE));
            }
            let ch = cherkas_build(&l, body.n).map_err(|e| anyhow!("{e}"))?;
            let hashes: Vec<String> = ch.b_table.iter().map(poly_hash).collect();
            if hashes != body.b_hashes {
                eprintln!("B-polynomial hashes do not match");
                return Ok(ExitCode::from(EXIT_INCONCLUSIVE));
            }
            let claimed_sign = poly1_from_strings(&body.sign_poly)?;
            if ch.sign_poly != claimed_sign || ch.x_power != body.x_power {
                eprintln!("sign polynomial does not match");
                return Ok(ExitCode::from(EXIT_INCONCLUSIVE));
            }
            let force = matches!(body.negativity.root_free, RootFreeRecord::Sturm { .. });
            if negativity_evidence_with(&ch.sign_poly, force).is_none() {
                eprintln!("negativity does not reproduce");
                return Ok(ExitCode::from(EXIT_INCONCLUSIVE));
            }
            if body.n % 2 == 1 || ch.x_power % 2 == 1 {
                eprintln!("parity conditions violated");
                return Ok(ExitCode::from(EXIT_INCONCLUSIVE));
            }
            println!("nonexistence certificate verifies");
            Ok(ExitCode::from(EXIT_OK))
        }
    }
}
