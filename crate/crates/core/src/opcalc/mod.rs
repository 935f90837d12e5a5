//! Catalan functional calculus on dense matrices.

pub mod families;
mod functions;
mod identities;
mod power;

pub use functions::{catalan_of_matrix_quadrature, catalan_of_matrix_series, sqrt_one_minus_4t};
pub use identities::{
    inve_equivalences, left_inverse_check, quadratic_map, quadratic_residual, resolvent_of_t_from_y,
    resolvent_of_y, spectral_map_check, InveReport, SpectralMapOutcome,
};
pub use power::{power_bound_probe, PowerBoundReport, DEFAULT_PROBE, MAX_TERMS};
