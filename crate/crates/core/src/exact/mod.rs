//! Exact arithmetic foundation: arbitrary-precision rationals, polynomials
//! over them, resultants, Sturm sequences, real-root isolation, and
//! rational interval arithmetic.
//!
//! Everything here is deterministic and pure: identical inputs give
//! bit-identical outputs, and values are immutable after construction.

pub mod descartes;
pub mod interval;
pub mod poly1;
pub mod poly2;
pub mod resultant;
pub mod roots;
pub mod sturm;

pub use descartes::{roots_in_interval, RootStatus};
pub use interval::{eval_on_box, RatBox, RatInterval};
pub use poly1::Poly1;
pub use poly2::Poly2;
pub use resultant::{discriminant, resultant2, resultant_poly, Var};
pub use roots::{isolate_real_roots, multiplicity_in, RootInterval};
pub use sturm::{cauchy_bound, count_real_roots, sturm_count, RootCount};
