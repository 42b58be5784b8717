//! Exact integer linear algebra.

mod group;
mod matrix;
mod smith;

pub use group::AbelianGroup;
pub use matrix::Matrix;
pub use smith::{kernel_basis, smith, solve, Smith, Track};
