//! The Clifford algebra `Cl(0,m)`: `e_i e_j + e_j e_i = -2 δ_ij`.
//!
//! Blades are bitmasks, bit `i-1` standing for `e_i`; indices are 1-based in
//! every textual or JSON form.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symalg::{parse_q, Coefficient, Q};

pub type Blade = u32;

/// Sign of `e_A e_B` in `Cl(0,m)`; the product blade is `A ^ B`.
pub fn blade_product_sign(a: Blade, b: Blade) -> i32 {
    let mut swaps = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        // factors of A with index above j must be passed over
        swaps += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    swaps += (a & b).count_ones();
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign picked up by a grade-`g` blade under the conjugation anti-involution.
pub fn bar_sign(g: u32) -> i32 {
    if (g * (g + 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multivector<S = Q> {
    dim: usize,
    blades: BTreeMap<Blade, S>,
}

impl<S: Coefficient> Multivector<S> {
    pub fn zero(dim: usize) -> Self {
        Multivector { dim, blades: BTreeMap::new() }
    }

    pub fn scalar(dim: usize, c: S) -> Self {
        Self::blade(dim, 0, c)
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, S::one())
    }

    pub fn blade(dim: usize, blade: Blade, c: S) -> Self {
        let mut out = Self::zero(dim);
        out.add_blade(blade, c);
        out
    }

    /// The generator `e_i`, `i` 1-based.
    pub fn e(dim: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= dim, "generator index {i} outside 1..={dim}");
        Self::blade(dim, 1 << (i - 1), S::one())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.blades.is_empty()
    }

    pub fn blades(&self) -> impl Iterator<Item = (Blade, &S)> {
        self.blades.iter().map(|(b, c)| (*b, c))
    }

    pub fn coeff(&self, blade: Blade) -> S {
        self.blades.get(&blade).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_blade(&mut self, blade: Blade, c: S) {
        if c.is_zero() {
            return;
        }
        match self.blades.entry(blade) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (b, c) in &other.blades {
            self.add_blade(*b, c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg_ref())
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero(self.dim);
        for (b, c) in &self.blades {
            out.add_blade(*b, c.mul_ref(s));
        }
        out
    }

    pub fn scale_q(&self, q: &Q) -> Self {
        let mut out = Self::zero(self.dim);
        for (b, c) in &self.blades {
            out.add_blade(*b, c.scale(q));
        }
        out
    }

    pub fn map<T: Coefficient>(&self, f: impl Fn(&S) -> T) -> Multivector<T> {
        let mut out = Multivector::zero(self.dim);
        for (b, c) in &self.blades {
            out.add_blade(*b, f(c));
        }
        out
    }

    /// Geometric product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.dim);
        for (a, x) in &self.blades {
            for (b, y) in &other.blades {
                let p = x.mul_ref(y);
                let p = if blade_product_sign(*a, *b) < 0 { p.neg_ref() } else { p };
                out.add_blade(a ^ b, p);
            }
        }
        out
    }

    /// Conjugation: the anti-involution with `bar(e_i) = -e_i`.
    pub fn bar(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (b, c) in &self.blades {
            let c = if bar_sign(b.count_ones()) < 0 { c.neg_ref() } else { c.clone() };
            out.add_blade(*b, c);
        }
        out
    }

    pub fn grade0(&self) -> S {
        self.coeff(0)
    }

    pub fn grade_part(&self, g: u32) -> Self {
        Multivector {
            dim: self.dim,
            blades: self.blades.iter().filter(|(b, _)| b.count_ones() == g).map(|(b, c)| (*b, c.clone())).collect(),
        }
    }

    pub fn to_f64_dense(&self) -> Vec<f64> {
        let mut out = vec![0.0; 1 << self.dim];
        for (b, c) in &self.blades {
            out[*b as usize] = c.approx();
        }
        out
    }
}

/// Geometric product of dense real multivectors indexed by blade bitmask.
pub fn dense_mul<T>(a: &[T], b: &[T]) -> Vec<T>
where
    T: Copy + Default + std::ops::Add<Output = T> + std::ops::Neg<Output = T> + std::ops::Mul<Output = T>,
{
    let mut out = vec![T::default(); a.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let p = *x * *y;
            let k = i ^ j;
            out[k] = if blade_product_sign(i as u32, j as u32) < 0 { out[k] + (-p) } else { out[k] + p };
        }
    }
    out
}

pub fn dense_bar(a: &[f64]) -> Vec<f64> {
    a.iter().enumerate().map(|(b, x)| f64::from(bar_sign((b as u32).count_ones())) * x).collect()
}

pub fn blade_name(b: Blade) -> String {
    (0..32).filter(|i| b & (1 << i) != 0).map(|i| format!("e{}", i + 1)).collect()
}

pub fn blade_indices(b: Blade) -> Vec<usize> {
    (0..32).filter(|i| b & (1 << i) != 0).map(|i| i + 1).collect()
}

/// Builds a blade from 1-based generator indices, reordering into canonical
/// position; returns the blade and the reordering sign.
pub fn blade_from_indices(dim: usize, idx: &[usize]) -> Result<(Blade, i32)> {
    let mut mv = Multivector::<Q>::one(dim);
    for &i in idx {
        if i == 0 || i > dim {
            return Err(Error::Parse(format!("generator e{i} outside dimension {dim}")));
        }
        mv = mv.mul(&Multivector::e(dim, i));
    }
    let (b, c) = mv.blades().next().map(|(b, c)| (b, c.clone())).expect("product of generators is nonzero");
    Ok((b, if c > Q::from_integer(0.into()) { 1 } else { -1 }))
}

impl<S: Coefficient> fmt::Display for Multivector<S> {
    /// `c * e1e2 + c'` with the scalar blade printed bare.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blades.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .blades
            .iter()
            .map(|(b, c)| if *b == 0 { format!("{c}") } else { format!("{c} * {}", blade_name(*b)) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Multivector<Q> {
    /// Parses the textual form produced by `Display`, e.g. `3/2 * e1e2 + -1`.
    pub fn parse(dim: usize, s: &str) -> Result<Self> {
        let mut out = Self::zero(dim);
        let s = s.trim();
        if s == "0" {
            return Ok(out);
        }
        for term in s.split(" + ") {
            let (c, blade) = match term.split_once('*') {
                Some((c, b)) => (parse_q(c)?, b.trim()),
                None => (parse_q(term)?, ""),
            };
            let idx = parse_blade_name(blade)?;
            let (b, sign) = blade_from_indices(dim, &idx)?;
            out.add_blade(b, c * Q::from_integer(sign.into()));
        }
        Ok(out)
    }
}

fn parse_blade_name(s: &str) -> Result<Vec<usize>> {
    if s.is_empty() || s == "1" {
        return Ok(vec![]);
    }
    s.split('e')
        .skip(1)
        .map(|i| i.parse::<usize>().map_err(|_| Error::Parse(format!("bad blade {s:?}"))))
        .collect::<Result<Vec<_>>>()
        .and_then(|v| if s.starts_with('e') { Ok(v) } else { Err(Error::Parse(format!("bad blade {s:?}"))) })
}

impl FromStr for Multivector<Q> {
    type Err = Error;
    /// Infers the dimension from the largest generator index present.
    fn from_str(s: &str) -> Result<Self> {
        let dim = s
            .split(|c: char| !c.is_ascii_alphanumeric())
            .filter_map(|t| t.strip_prefix('e'))
            .flat_map(|t| t.split('e'))
            .filter_map(|i| i.parse::<usize>().ok())
            .max()
            .unwrap_or(1);
        Self::parse(dim, s)
    }
}

/// JSON form `{"dim": m, "blades": [[[1, 2], "3/2"], ...]}`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct MultivectorJson {
    pub dim: usize,
    pub blades: Vec<(Vec<usize>, String)>,
}

impl From<&Multivector<Q>> for MultivectorJson {
    fn from(mv: &Multivector<Q>) -> Self {
        MultivectorJson { dim: mv.dim, blades: mv.blades().map(|(b, c)| (blade_indices(b), c.to_string())).collect() }
    }
}

impl TryFrom<&MultivectorJson> for Multivector<Q> {
    type Error = Error;
    fn try_from(j: &MultivectorJson) -> Result<Self> {
        let mut out = Multivector::zero(j.dim);
        for (idx, c) in &j.blades {
            let (b, sign) = blade_from_indices(j.dim, idx)?;
            out.add_blade(b, parse_q(c)? * Q::from_integer(sign.into()));
        }
        Ok(out)
    }
}
