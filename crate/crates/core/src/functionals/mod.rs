//! Volumes of model bodies, mean width, Wills functional and Gaussian
//! measures.
//!
//! Monte Carlo estimators draw from counter-addressed ChaCha streams: sample
//! block `i` always uses stream `i` of the given seed, so results do not
//! depend on the number of worker threads.

mod constants;
mod distance;
mod estimate;
mod gauss;
mod mean_width;
mod rng;
mod wills;

pub use constants::{
    cross_polytope_volume, cube_polar_wills_integral, expected_max_gaussian, gaussian_width_constant,
    intrinsic_coefficient, quermass_conversion, simplex_constants, unit_ball_volume, width_cross_polytope, width_cube,
    width_simplex, SimplexConstants,
};
pub use distance::project_onto_polytope;
pub use estimate::McEstimate;
pub use gauss::{gaussian_measure_grid_mc, gaussian_measure_mc, polar_wills_integral_mc};
pub use mean_width::{gaussian_support_mc, mean_width_mc, polar_volume_mc};
pub use rng::{Stream, BLOCK};
pub use wills::{wills_mc, wills_mc_v, WILLS_MARGIN};
