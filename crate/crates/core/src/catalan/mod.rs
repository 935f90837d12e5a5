//! Scalar Catalan machinery: coefficients, generating functions, integral identities.

mod gf;
mod integrals;
mod numbers;

pub use gf::{biquadratic_mean_check, biquadratic_residual, catalan_gf, catalan_gf_even, catalan_gf_odd};
pub use integrals::{
    catalan_tail_series, integral_identity, integral_rhs, IntegralIdentity, TailSeries, MAX_J,
};
pub use numbers::{
    catalan_closed_form, catalan_numbers, even_tail_bound, even_weighted_sum_extrapolated,
    richardson, tail_bound, weighted_catalan, weighted_partial_sums, weighted_sum_extrapolated,
    CatalanCoefficients, MAX_N,
};
