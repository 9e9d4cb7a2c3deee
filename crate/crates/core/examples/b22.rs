use cyclecert::band::{build_band, numeric_transversality, sample_points};
use cyclecert::certify::{contact_function, prove_no_zero, NoZeroOutcome};
use cyclecert::cycle::{find_cycle, FindCycleOptions};
use cyclecert::flow::Section;
use cyclecert::system::gallery;
use cyclecert::trig::interpolate;
use cyclecert::{Int, Rat};
use num_traits::One;
use std::io::Write;

fn ts(msg: &str) {
    eprintln!("{msg}");
    std::io::stderr().flush().unwrap();
}

fn main() {
    let b = gallery::brusselator(Rat::one(), Rat::new(11.into(), 5.into()));
    let sect = Section::horizontal_ray((Rat::one(), Rat::new(11.into(), 5.into())));
    let t = std::time::Instant::now();
    let ce = find_cycle(&b, &sect, (0.05, 1.2), &FindCycleOptions::default()).unwrap();
    ts(&format!("cycle {:?} x0={:.6}", t.elapsed(), ce.point_star.0));
    let t = std::time::Instant::now();
    let band = build_band(&b, &ce, 0.007).unwrap();
    let scan = numeric_transversality(&b, &band);
    ts(&format!("band {:?} sign_const={} min|f|={:.3e}", t.elapsed(), scan.sign_constant, scan.min_abs));
    let pts = sample_points(&band, 61).unwrap();
    let fit = interpolate(&pts).unwrap();
    let rat = fit.rationalize(&Int::from(1_000_000));
    let t = std::time::Instant::now();
    let contact = contact_function(&b, &rat);
    ts(&format!("contact {:?} trig deg {}", t.elapsed(), contact.trig_degree));
    let t = std::time::Instant::now();
    let out = prove_no_zero(&contact.a, &contact.b);
    let tag = match &out {
        NoZeroOutcome::Proved { resultant, .. } => format!("PROVED degR={:?}", resultant.degree()),
        NoZeroOutcome::Inconclusive { root_count } => format!("INCONCLUSIVE {root_count}"),
        NoZeroOutcome::IdenticallyZero => "ZERO".into(),
    };
    ts(&format!("no_zero {:?}: {tag}", t.elapsed()));
    let t = std::time::Instant::now();
    let eval = cyclecert::certify::grid::CurveEval::new(&rat);
    ts(&format!("eval built {:?}", t.elapsed()));
    let t = std::time::Instant::now();
    match cyclecert::certify::simple::prove_simple(&rat, &eval, 34, 40_000_000) {
        Ok(ev) => ts(&format!("simple {:?}: boxes {} depth {}", t.elapsed(), ev.boxes, ev.max_depth)),
        Err(e) => ts(&format!("simple FAILED {:?}: {e}", t.elapsed())),
    }
}
