//! Dense complex linear algebra: matrices, LU, Schur, Sylvester solvers.

pub mod lu;
pub mod matrix;
pub mod scalar;
pub mod schur;
pub mod sylvester;

pub use lu::{inverse, lu_solve, Lu};
pub use matrix::{format_complex, matmul, parse_complex, CMatrix, Matrix};
pub use scalar::{bits_for_digits, ExtComplex, PrecisionGuard, Scalar};
pub use schur::{eigenvalues, eigenvectors, multiset_eq, schur, spectral_radius, SchurForm};
pub use sylvester::{
    generalized_sylvester_kron, sylvester_solve, GenSylvester, Strategy, SylvesterProblem,
    SylvesterSolver,
};
