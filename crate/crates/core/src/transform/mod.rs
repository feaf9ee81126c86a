//! Measures, inner products and integral transforms attached to `𝐃`.

pub mod dunkl_transform;
pub mod fourier;
pub mod kelvin;
pub mod measure;
pub mod orthogonality;
pub mod quadrature;

pub use dunkl_transform::*;
pub use fourier::*;
pub use kelvin::*;
pub use measure::*;
pub use orthogonality::*;
pub use quadrature::{gauss_jacobi, gauss_laguerre, gauss_legendre, AngularRule, Rule};
