//! Parametrized orthonormal bases of C^n, projector-based entanglement
//! witnesses, and entanglement detection in Jaynes-Cummings atom-field
//! states via fidelity maximization, cross-checked against exact
//! partial-transpose negativity.
//!
//! All numerics are generic over the real scalar type through
//! [`scalar::Scalar`]; the `*64` aliases below fix `f64`, which every
//! stated tolerance assumes.

pub mod basis;
pub mod detect;
pub mod error;
pub mod jcmodel;
pub mod linalg;
pub mod optim;
pub mod scalar;
pub mod witness;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Ket64 = linalg::Ket<f64>;
pub type DensityMatrix64 = linalg::DensityMatrix<f64>;
pub type BasisParams64 = basis::BasisParams<f64>;
pub type SchmidtForm64 = witness::SchmidtForm<f64>;
pub type WitnessOperator64 = witness::WitnessOperator<f64>;
pub type JCConfig64 = jcmodel::JCConfig<f64>;
pub type DetectionReport64 = detect::DetectionReport<f64>;
pub type OptimizerSettings64 = detect::OptimizerSettings<f64>;
