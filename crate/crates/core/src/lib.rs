pub mod catalan;
pub mod error;
pub mod linalg;
pub mod opcalc;
pub mod qme;
pub mod quadrature;
pub mod seq;

pub use error::{Error, Result};
