use cyclecert::flow::{section_return, Section};
use cyclecert::system::gallery;
use cyclecert::Rat;
use num_traits::One;

fn main() {
    let f = gallery::rychkov(Rat::one(), Rat::new(1.into(), 5.into()));
    let sect = Section::positive_x_axis();
    for r0 in [0.632018, 0.6321163, 0.63211633] {
        // forward displacement: unstable cycle repels, so displacement
        // grows away from the fixed point
        let ret = section_return(&f, &sect, r0, 1e-12, None).unwrap();
        eprintln!("r0 = {r0:.7}: forward P(r0) - r0 = {:+.3e}, T = {:.6}", ret.r1 - r0, ret.t_return);
    }
    // second forward return from the paper's value
    let ret = section_return(&f, &sect, 0.632018, 1e-12, None).unwrap();
    let ret2 = section_return(&f, &sect, ret.r1, 1e-12, None).unwrap();
    eprintln!("paper value after two returns: {:.7} -> {:.7} -> {:.7}", 0.632018, ret.r1, ret2.r1);
}
