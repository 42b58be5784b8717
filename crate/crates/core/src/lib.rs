pub mod bundles;
pub mod cli;
pub mod clutch;
pub mod cohomology;
pub mod complex;
pub mod cuntz;
pub mod error;
pub mod io;
pub mod k0star;
pub mod linalg;
pub mod rofp;
pub mod scalar;

pub use error::{Error, Result};

pub type Int = i64;
pub type IntMatrix = linalg::Matrix<Int>;
pub type BigIntMatrix = linalg::Matrix<num_bigint::BigInt>;
pub type Rational = num_rational::Ratio<i64>;
pub type RationalProfile = rofp::EigenvalueProfile<Rational>;
