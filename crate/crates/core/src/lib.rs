//! Exact symbolic and numeric machinery for a three-parameter deformation of
//! the Dunkl-Clifford Dirac operator, its Fischer decomposition, the
//! Clifford-Laguerre eigenfunctions and the associated integral transforms.

pub mod cli;
pub mod clifford;
pub mod deformed;
pub mod dunkl;
pub mod error;
pub mod fischer;
pub mod laguerre;
pub mod linalg;
pub mod reflection;
pub mod report;
pub mod sampling;
pub mod symalg;
pub mod transform;

pub use clifford::Multivector;
pub use error::{Error, Result};
pub use symalg::{parse_q, q, Coefficient, DeformParams, ExactScalar, Monomial, Poly, RadialExpr, Q};
