//! The weighted convolution algebra `l1(N0, 4^-n)` and the Catalan sequence in it.

mod backward;
mod boundary;
mod resolvent;
mod weighted;

pub use backward::{backward_difference_catalan, BackwardDifference};
pub use boundary::{
    boundary_csv, omega_boundary_samples, omega_radius, omega_ratio, sigma_boundary,
    sigma_boundary_as_printed, sigma_boundary_samples, BoundaryPoint, Curve, DEFAULT_SAMPLES,
};
pub use resolvent::{catalan_inverse, catalan_moments, geometric_seq, in_omega, resolvent_catalan};
pub use weighted::{convolve, WeightedSeq, DEFAULT_LEN};
