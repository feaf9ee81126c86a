use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::clifford::{Multivector, MultivectorJson};
use crate::error::{Error, Result};
use crate::symalg::poly::{Monomial, Poly};
use crate::symalg::{parse_q, q_to_f64, Coefficient, Q};

/// `Σ_s r^s p_s(x)` with `r = |x|`, rational `s` and Clifford-valued
/// polynomials `p_s`.
///
/// Kept in a canonical form where the last variable never appears with
/// exponent two or more (`x_m^2` is rewritten as `r^2 - Σ_{i<m} x_i^2`), so
/// two expressions are equal as functions exactly when they are equal as
/// values of this type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadialExpr<S = Q> {
    dim: usize,
    terms: BTreeMap<Q, Poly<S>>,
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, i| acc * BigInt::from(i))
}

/// Accumulates raw `(s, monomial, coefficient)` terms; `finish` produces the
/// canonical form.
pub struct RadialBuilder<S: Coefficient> {
    dim: usize,
    raw: BTreeMap<(Q, Monomial), Multivector<S>>,
}

impl<S: Coefficient> RadialBuilder<S> {
    pub fn new(dim: usize) -> Self {
        RadialBuilder { dim, raw: BTreeMap::new() }
    }

    pub fn add(&mut self, s: Q, m: Monomial, c: &Multivector<S>) {
        if c.is_zero() {
            return;
        }
        match self.raw.entry((s, m)) {
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

    pub fn add_expr(&mut self, e: &RadialExpr<S>) {
        for (s, m, c) in e.iter() {
            self.add(s.clone(), m.clone(), c);
        }
    }

    pub fn finish(self) -> RadialExpr<S> {
        let dim = self.dim;
        let last = dim - 1;
        let mut out: BTreeMap<Q, Poly<S>> = BTreeMap::new();
        let mut put = |s: Q, m: Monomial, c: &Multivector<S>| {
            out.entry(s).or_insert_with(|| Poly::zero(dim)).add_term(m, c);
        };
        for ((s, m), c) in self.raw {
            let e = u32::from(m.exp(last));
            if e < 2 {
                put(s, m, &c);
                continue;
            }
            // x_m^e = x_m^(e mod 2) (r^2 - ρ)^j, ρ = Σ_{i<m} x_i^2
            let j = e / 2;
            let base = m.with_exp(last, (e % 2) as u16);
            for t in 0..=j {
                let sign = if t % 2 == 0 { 1 } else { -1 };
                let binom = binomial(j, t) * BigInt::from(sign);
                let s_new = &s + Q::from_integer(BigInt::from(2 * (j - t)));
                for g in
                    Monomial::all_of_degree(last, t).into_iter().chain((last == 0 && t == 0).then(|| Monomial::one(0)))
                {
                    let multi = g.0.iter().fold(factorial(t), |acc, &gi| acc / factorial(u32::from(gi)));
                    let mut mm = base.clone();
                    for (i, &gi) in g.0.iter().enumerate() {
                        mm.0[i] += 2 * gi;
                    }
                    let coef = Q::from_integer(&binom * multi);
                    put(s_new.clone(), mm, &c.scale_q(&coef));
                }
            }
        }
        out.retain(|_, p| !p.is_zero());
        RadialExpr { dim, terms: out }
    }
}

impl<S: Coefficient> RadialExpr<S> {
    pub fn zero(dim: usize) -> Self {
        RadialExpr { dim, terms: BTreeMap::new() }
    }

    pub fn term(s: Q, m: Monomial, c: Multivector<S>) -> Self {
        let mut b = RadialBuilder::new(m.dim());
        b.add(s, m, &c);
        b.finish()
    }

    pub fn constant(c: Multivector<S>) -> Self {
        let dim = c.dim();
        Self::term(Q::from_integer(0.into()), Monomial::one(dim), c)
    }

    pub fn from_poly(p: &Poly<S>) -> Self {
        let mut b = RadialBuilder::new(p.dim());
        for (m, c) in p.terms() {
            b.add(Q::from_integer(0.into()), m.clone(), c);
        }
        b.finish()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn polys(&self) -> impl Iterator<Item = (&Q, &Poly<S>)> {
        self.terms.iter()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Q, &Monomial, &Multivector<S>)> {
        self.terms.iter().flat_map(|(s, p)| p.terms().map(move |(m, c)| (s, m, c)))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.values().map(Poly::len).sum()
    }

    /// Applies `f` to each term and collects the canonical result.
    pub fn map_terms(&self, mut f: impl FnMut(&Q, &Monomial, &Multivector<S>, &mut RadialBuilder<S>)) -> Self {
        let mut b = RadialBuilder::new(self.dim);
        for (s, m, c) in self.iter() {
            f(s, m, c, &mut b);
        }
        b.finish()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut b = RadialBuilder::new(self.dim);
        b.add_expr(self);
        b.add_expr(other);
        b.finish()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale_q(&Q::from_integer((-1).into()))
    }

    pub fn scale_q(&self, k: &Q) -> Self {
        self.map_terms(|s, m, c, b| b.add(s.clone(), m.clone(), &c.scale_q(k)))
    }

    pub fn scale(&self, k: &S) -> Self {
        self.map_terms(|s, m, c, b| b.add(s.clone(), m.clone(), &c.scale(k)))
    }

    /// Multiplication by `r^t`.
    pub fn mul_r(&self, t: &Q) -> Self {
        RadialExpr { dim: self.dim, terms: self.terms.iter().map(|(s, p)| (s + t, p.clone())).collect() }
    }

    /// Multiplication by the coordinate `x_i`, `i` 0-based.
    pub fn mul_x(&self, i: usize) -> Self {
        let xi = Monomial::var(self.dim, i);
        self.map_terms(|s, m, c, b| b.add(s.clone(), m.mul(&xi), c))
    }

    /// Left Clifford multiplication by the vector variable `x = Σ e_i x_i`.
    pub fn mul_vector_left(&self) -> Self {
        let dim = self.dim;
        let gens: Vec<_> = (0..dim).map(|i| (Monomial::var(dim, i), Multivector::<S>::e(dim, i + 1))).collect();
        self.map_terms(|s, m, c, b| {
            for (xi, ei) in &gens {
                b.add(s.clone(), m.mul(xi), &ei.mul(c));
            }
        })
    }

    pub fn left_mul_mv(&self, a: &Multivector<S>) -> Self {
        self.map_terms(|s, m, c, b| b.add(s.clone(), m.clone(), &a.mul(c)))
    }

    pub fn right_mul_mv(&self, a: &Multivector<S>) -> Self {
        self.map_terms(|s, m, c, b| b.add(s.clone(), m.clone(), &c.mul(a)))
    }

    /// Pointwise Clifford product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut b = RadialBuilder::new(self.dim);
        for (s1, m1, c1) in self.iter() {
            for (s2, m2, c2) in other.iter() {
                b.add(s1 + s2, m1.mul(m2), &c1.mul(c2));
            }
        }
        b.finish()
    }

    pub fn bar(&self) -> Self {
        self.map_terms(|s, m, c, b| b.add(s.clone(), m.clone(), &c.bar()))
    }

    /// Euler operator `Σ x_i ∂_i`: multiplies `r^s x^α` by `s + |α|`.
    pub fn euler(&self) -> Self {
        self.map_terms(|s, m, c, b| {
            let h = s + Q::from_integer(m.degree().into());
            b.add(s.clone(), m.clone(), &c.scale_q(&h));
        })
    }

    /// `∂_r = r^{-1} 𝔼`.
    pub fn partial_r(&self) -> Self {
        self.euler().mul_r(&Q::from_integer((-1).into()))
    }

    /// Classical partial derivative `∂_i`, `i` 0-based.
    pub fn partial(&self, i: usize) -> Self {
        let xi = Monomial::var(self.dim, i);
        let two = Q::from_integer(2.into());
        self.map_terms(|s, m, c, b| {
            if !s.is_zero() {
                b.add(s - &two, m.mul(&xi), &c.scale_q(s));
            }
            let e = m.exp(i);
            if e > 0 {
                b.add(s.clone(), m.with_exp(i, e - 1), &c.scale_q(&Q::from_integer(e.into())));
            }
        })
    }

    /// Distinct total homogeneity degrees `s + |α|` of the terms.
    pub fn homogeneities(&self) -> BTreeSet<Q> {
        self.iter().map(|(s, m, _)| s + Q::from_integer(m.degree().into())).collect()
    }

    /// The component of total homogeneity `h`.
    pub fn homogeneous_part(&self, h: &Q) -> Self {
        self.map_terms(|s, m, c, b| {
            if &(s + Q::from_integer(m.degree().into())) == h {
                b.add(s.clone(), m.clone(), c);
            }
        })
    }

    pub fn lift<T: Coefficient>(&self, f: impl Fn(&S) -> T) -> RadialExpr<T> {
        let mut b = RadialBuilder::new(self.dim);
        for (s, m, c) in self.iter() {
            b.add(s.clone(), m.clone(), &c.map(&f));
        }
        b.finish()
    }

    /// Dense real value at `x != 0`, indexed by blade bitmask.
    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let xi: Vec<f64> = x.iter().map(|v| v / r).collect();
        self.eval_polar(&xi, r, &Q::from_integer(0.into()))
    }

    /// Value at `r ξ` divided by `r^shift`, computed without forming large
    /// powers of `r`.
    pub fn eval_polar(&self, xi: &[f64], r: f64, shift: &Q) -> Vec<f64> {
        self.polar(shift).eval(xi, r)
    }

    /// [`Self::eval_polar`] with the exact coefficients converted once, for
    /// repeated evaluation.
    pub fn polar(&self, shift: &Q) -> PolarEval {
        let terms = self
            .iter()
            .map(|(s, m, c)| {
                let h = q_to_f64(&(s + Q::from_integer(m.degree().into()) - shift));
                (h, m.clone(), c.blades().map(|(b, cc)| (b as usize, cc.approx())).collect())
            })
            .collect();
        PolarEval { dim: self.dim, terms }
    }
}

/// `(r exponent, monomial, blade coefficients)`.
type PolarTerm = (f64, Monomial, Vec<(usize, f64)>);

/// Floating-point snapshot of a radial expression in polar form.
#[derive(Clone, Debug)]
pub struct PolarEval {
    dim: usize,
    terms: Vec<PolarTerm>,
}

impl PolarEval {
    pub fn eval(&self, xi: &[f64], r: f64) -> Vec<f64> {
        let mut out = vec![0.0; 1 << self.dim];
        for (h, m, blades) in &self.terms {
            let v = r.powf(*h) * m.eval(xi);
            for &(b, c) in blades {
                out[b] += v * c;
            }
        }
        out
    }
}

impl<S: Coefficient> fmt::Display for RadialExpr<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(s, p)| format!("r^({s})*[{p}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct PolyTermJson {
    pub exp: Vec<u16>,
    pub coeff: MultivectorJson,
}

/// JSON form `[{"r_exp": "3/2", "poly": [{"exp": [..], "coeff": {..}}]}]`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct RadialTermJson {
    pub r_exp: String,
    pub poly: Vec<PolyTermJson>,
}

impl RadialExpr<Q> {
    pub fn to_json(&self) -> Vec<RadialTermJson> {
        self.terms
            .iter()
            .map(|(s, p)| RadialTermJson {
                r_exp: s.to_string(),
                poly: p.terms().map(|(m, c)| PolyTermJson { exp: m.0.to_vec(), coeff: c.into() }).collect(),
            })
            .collect()
    }

    pub fn from_json(dim: usize, j: &[RadialTermJson]) -> Result<Self> {
        let mut b = RadialBuilder::new(dim);
        for t in j {
            let s = parse_q(&t.r_exp)?;
            for pt in &t.poly {
                if pt.exp.len() != dim {
                    return Err(Error::Dimension { expected: dim, got: pt.exp.len() });
                }
                let c = Multivector::try_from(&pt.coeff)?;
                b.add(s.clone(), Monomial::from_exps(&pt.exp), &c);
            }
        }
        Ok(b.finish())
    }
}
