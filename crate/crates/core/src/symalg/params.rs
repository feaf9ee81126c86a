use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symalg::Q;

/// The deformation parameters `(a, b, c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformParams {
    #[serde(with = "crate::symalg::qser")]
    pub a: Q,
    #[serde(with = "crate::symalg::qser")]
    pub b: Q,
    #[serde(with = "crate::symalg::qser")]
    pub c: Q,
}

impl DeformParams {
    pub fn new(a: Q, b: Q, c: Q) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::Invalid("a must be nonzero".into()));
        }
        if c == -Q::one() {
            return Err(Error::SingularC);
        }
        Ok(DeformParams { a, b, c })
    }

    /// The graded choice `c = 2/a - 1` for given `a` and `b`.
    pub fn graded(a: Q, b: Q) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::Invalid("a must be nonzero".into()));
        }
        let c = Q::from_integer(2.into()) / &a - Q::one();
        Self::new(a, b, c)
    }

    pub fn is_graded(&self) -> bool {
        self.c == Q::from_integer(2.into()) / &self.a - Q::one()
    }

    /// `l = 1 - a/2`, the power of `r` in front of the Dunkl-Dirac term.
    pub fn l(&self) -> Q {
        Q::one() - &self.a / Q::from_integer(2.into())
    }

    pub fn one_plus_c(&self) -> Q {
        Q::one() + &self.c
    }

    /// `δ = a/2 + (2b + μ - 1)/(1 + c)`.
    pub fn delta(&self, mu: &Q) -> Q {
        &self.a / Q::from_integer(2.into()) + (Q::from_integer(2.into()) * &self.b + mu - Q::one()) / self.one_plus_c()
    }

    /// `β_ℓ = -(b + cℓ)/(1 + c)`.
    pub fn beta(&self, ell: u32) -> Q {
        -(&self.b + &self.c * Q::from_integer(ell.into())) / self.one_plus_c()
    }

    /// `γ_ℓ = 2β_ℓ + 2ℓ + δ`.
    pub fn gamma(&self, ell: u32, mu: &Q) -> Q {
        Q::from_integer(2.into()) * self.beta(ell) + Q::from_integer((2 * ell).into()) + self.delta(mu)
    }

    /// Exponent `e` of the radial weight `h(r) = r^e`.
    pub fn measure_exponent(&self, mu: &Q) -> Q {
        &self.a / Q::from_integer(2.into())
            + (Q::from_integer(2.into()) * &self.b - Q::one() - &self.c * mu) / self.one_plus_c()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::q;

    #[test]
    fn graded_measure_exponent() {
        // with c = 2/a - 1 the weight is r^{ab - (1 - a/2) μ}
        let p = DeformParams::graded(q(4, 3), q(1, 2)).unwrap();
        let mu = q(7, 2);
        let expect = &p.a * &p.b - (Q::one() - &p.a / q(2, 1)) * &mu;
        assert_eq!(p.measure_exponent(&mu), expect);
    }

    #[test]
    fn c_minus_one_rejected() {
        assert!(matches!(DeformParams::new(q(1, 1), q(0, 1), q(-1, 1)), Err(Error::SingularC)));
    }
}
