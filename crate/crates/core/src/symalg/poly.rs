use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use smallvec::SmallVec;

use crate::clifford::Multivector;
use crate::symalg::{Coefficient, Q};

/// Exponent vector of `x_1^{α_1} ... x_m^{α_m}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub SmallVec<[u16; 4]>);

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Monomial(SmallVec::from_elem(0, dim))
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    /// `x_i`, `i` 0-based.
    pub fn var(dim: usize, i: usize) -> Self {
        let mut m = Self::one(dim);
        m.0[i] = 1;
        m
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn with_exp(&self, i: usize, e: u16) -> Monomial {
        let mut m = self.clone();
        m.0[i] = e;
        m
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.0.iter().zip(x).map(|(&e, &xi)| xi.powi(i32::from(e))).product()
    }

    /// All exponent vectors of total degree `d` in `dim` variables, in
    /// lexicographic order.
    pub fn all_of_degree(dim: usize, d: u32) -> Vec<Monomial> {
        fn rec(dim: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            if cur.len() + 1 == dim {
                cur.push(left as u16);
                out.push(Monomial::from_exps(cur));
                cur.pop();
                return;
            }
            for e in (0..=left).rev() {
                cur.push(e as u16);
                rec(dim, left - e, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if dim == 0 {
            return out;
        }
        rec(dim, d, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Scalar polynomial with rational coefficients.
pub type ScalarPoly = BTreeMap<Monomial, Q>;

pub fn scalar_add_term(p: &mut ScalarPoly, m: Monomial, c: Q) {
    if c.is_zero() {
        return;
    }
    match p.entry(m) {
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

pub fn scalar_mul(a: &ScalarPoly, b: &ScalarPoly) -> ScalarPoly {
    let mut out = ScalarPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            scalar_add_term(&mut out, ma.mul(mb), ca * cb);
        }
    }
    out
}

/// Classical partial derivative in variable `i` (0-based).
pub fn scalar_partial(p: &ScalarPoly, i: usize) -> ScalarPoly {
    let mut out = ScalarPoly::new();
    for (m, c) in p {
        let e = m.exp(i);
        if e > 0 {
            scalar_add_term(&mut out, m.with_exp(i, e - 1), c * Q::from_integer(e.into()));
        }
    }
    out
}

/// Clifford-valued polynomial: monomial -> multivector coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<S = Q> {
    dim: usize,
    terms: BTreeMap<Monomial, Multivector<S>>,
}

impl<S: Coefficient> Poly<S> {
    pub fn zero(dim: usize) -> Self {
        Poly { dim, terms: BTreeMap::new() }
    }

    pub fn monomial(m: Monomial, c: Multivector<S>) -> Self {
        let mut p = Self::zero(m.dim());
        p.add_term(m, &c);
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Multivector<S>)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: &Multivector<S>) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign(c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn scale_q(&self, q: &Q) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &c.scale_q(q));
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Multivector<S>) -> Multivector<S>) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    /// `Σ_β c_β · q_β` with `q_β` a scalar polynomial attached to each monomial.
    pub fn substitute(&self, mut image: impl FnMut(&Monomial) -> std::sync::Arc<ScalarPoly>) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            for (mm, q) in image(m).iter() {
                out.add_term(mm.clone(), &c.scale_q(q));
            }
        }
        out
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; 1 << self.dim];
        for (m, c) in &self.terms {
            let v = m.eval(x);
            for (b, cc) in c.blades() {
                out[b as usize] += v * cc.approx();
            }
        }
        out
    }
}

impl<S: Coefficient> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})*{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomials_of_degree() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(2, 4).len(), 5);
        assert!(Monomial::all_of_degree(3, 3).iter().all(|m| m.degree() == 3));
    }

    #[test]
    fn partial_derivative() {
        let mut p = ScalarPoly::new();
        scalar_add_term(&mut p, Monomial::from_exps(&[2, 1]), Q::from_integer(3.into()));
        let d = scalar_partial(&p, 0);
        assert_eq!(d.get(&Monomial::from_exps(&[1, 1])), Some(&Q::from_integer(6.into())));
    }
}
