//! Iterative solvers for `T Y^2 - Y + I = 0`.

mod config;
mod solver;
mod steps;

pub use config::{Method, Precision, SolverConfig, SylvesterForm};
pub use solver::{
    estimate_order, qbd_example, qbd_example_ext, solve_qbd, solve_qme, solve_qme_in,
    IterationTrace, StepRecord, Validation,
};
pub use steps::{
    catalan4_step, catalan_corrections, catalan_corrections_direct, catalan_step, catalan_weight,
    newton_step, q_of, q_prime_apply, q_second_apply, step,
};
