//! Liu–Osserman polytopes as inequality systems, exact lattice point
//! counting, and Ehrhart quasi-polynomials.

mod checks;
mod count;
mod quasi;
mod system;
mod verlinde;

pub use checks::{semi_reflexive_check, volume_checks, SemiReflexiveReport, SemiReflexiveSample, VolumeReport};
pub use count::{
    count, count_backtracking, count_points, count_tree_dp, lattice_points, CountMethod, CountReport,
};
pub use quasi::{eval_poly, interpolate, quasi_polynomial, QuasiPolynomial};
pub use system::{inequality_system, InequalitySystem, Row};
pub(crate) use system::vertex_rows;
pub use verlinde::{
    bernoulli, cubic_volume, verlinde_count, verlinde_count_with_budget, x_over_sin_powers, zagier_polynomial,
    PRECISION_BUDGET,
};
