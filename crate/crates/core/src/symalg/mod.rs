//! Exact scalars, Clifford-valued polynomials and radial expressions.

mod params;
mod poly;
mod radial;
mod scalar;

pub use params::DeformParams;
pub use poly::{scalar_add_term, scalar_mul, scalar_partial, Monomial, Poly, ScalarPoly};
pub use radial::{PolarEval, PolyTermJson, RadialBuilder, RadialExpr, RadialTermJson};
pub use scalar::{floor_q, parse_q, q, q_to_f64, qser, Coefficient, ExactScalar, Q};
