use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational numbers.
pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p/q` or an integer. Decimal notation is rejected so that every
/// parameter entering the symbolic layer is exact.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational `p/q`: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod qser {
    use super::{parse_q, Q};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // numerator and denominator both overflow f64: scale them down together
        let shift = x.denom().bits().max(x.numer().bits()).saturating_sub(1000);
        let n = (x.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (x.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn floor_q(x: &Q) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// Coefficient field used by the symbolic layer: exact rationals, or exact
/// rationals extended by fractional powers of a fixed positive rational.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static + Zero + One {
    fn from_q(q: &Q) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn scale(&self, q: &Q) -> Self;
    fn neg_ref(&self) -> Self;
    fn approx(&self) -> f64;

    fn sub_assign_ref(&mut self, other: &Self) {
        self.add_assign_ref(&other.neg_ref());
    }
}

impl Coefficient for Q {
    fn from_q(q: &Q) -> Self {
        q.clone()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, q: &Q) -> Self {
        self * q
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn approx(&self) -> f64 {
        q_to_f64(self)
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
}

/// `Σ c_f · B^f` with `B` a positive rational that is not a perfect power
/// and every exponent `f` in `[0, 1)`. This normal form is unique, so
/// structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    base: Option<Q>,
    terms: BTreeMap<Q, Q>,
}

/// Writes `x = b^e` with `e` maximal. Returns `None` for `x = 1`.
fn primitive_power(x: &Q) -> Option<(Q, u32)> {
    if x.is_one() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let max_e = n.bits().max(d.bits()) as u32;
    for e in (2..=max_e).rev() {
        let rn = n.nth_root(e);
        let rd = d.nth_root(e);
        if rn.pow(e) == *n && rd.pow(e) == *d {
            return Some((Q::new(rn, rd), e));
        }
    }
    Some((x.clone(), 1))
}

impl ExactScalar {
    pub fn rational(c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Q::zero(), c);
        }
        ExactScalar { base: None, terms }
    }

    /// `base^exp` for a positive rational base.
    pub fn power(base: &Q, exp: &Q) -> Result<Self> {
        Self::from_terms(base, [(exp.clone(), Q::one())])
    }

    /// `Σ c · base^q` over the given `(q, c)` pairs, brought to normal form.
    pub fn from_terms(base: &Q, terms: impl IntoIterator<Item = (Q, Q)>) -> Result<Self> {
        if !base.is_positive() {
            return Err(Error::NonPositive("exact-scalar base"));
        }
        let Some((b0, e)) = primitive_power(base) else {
            let total = terms.into_iter().fold(Q::zero(), |acc, (_, c)| acc + c);
            return Ok(Self::rational(total));
        };
        let e = Q::from_integer(BigInt::from(e));
        let mut out = ExactScalar { base: Some(b0.clone()), terms: BTreeMap::new() };
        for (exp, c) in terms {
            let x = &exp * &e;
            let n = floor_q(&x);
            let frac = x - Q::from_integer(n.clone());
            let n = n.to_i32().expect("exponent out of range");
            let coeff = c * b0.pow(n);
            add_term(&mut out.terms, frac, coeff);
        }
        out.fix_base();
        Ok(out)
    }

    /// Re-establishes the normal form. Values built through the public
    /// constructors are already canonical, so this is the identity on them.
    pub fn canonicalize(&self) -> Self {
        match &self.base {
            None => self.clone(),
            Some(b) => Self::from_terms(b, self.terms.clone()).expect("base is positive"),
        }
    }

    fn fix_base(&mut self) {
        if self.terms.keys().all(|k| k.is_zero()) {
            self.base = None;
        }
    }

    /// The primitive base `B` when irrational terms are present.
    pub fn base(&self) -> Option<&Q> {
        self.base.as_ref()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Q, &Q)> {
        self.terms.iter()
    }

    pub fn as_rational(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Q::zero()).cloned(),
            _ => None,
        }
    }

    fn merged_base(&self, other: &Self) -> Option<Q> {
        match (&self.base, &other.base) {
            (Some(x), Some(y)) => {
                assert!(x == y, "{}", Error::IncompatibleBase(x.to_string(), y.to_string()));
                Some(x.clone())
            }
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }

    /// Fixed-point value `round(self * 10^digits)` computed with integer
    /// roots only; used to cross-check exact arithmetic numerically.
    pub fn eval_fixed(&self, digits: u32) -> BigInt {
        let scale = BigInt::from(10u32).pow(digits);
        let mut acc = BigInt::zero();
        for (f, c) in &self.terms {
            let root = match &self.base {
                Some(b) if !f.is_zero() => fixed_power(b, f, digits),
                _ => scale.clone(),
            };
            acc += root * c.numer() / c.denom();
        }
        acc
    }
}

/// `floor(b^f * 10^digits)` for `0 < f < 1`.
fn fixed_power(b: &Q, f: &Q, digits: u32) -> BigInt {
    let n = f.numer().to_u32().expect("small exponent");
    let d = f.denom().to_u32().expect("small exponent");
    let scale = BigInt::from(10u32).pow(digits * d);
    let radicand = b.numer().pow(n) * scale / b.denom().pow(n);
    radicand.nth_root(d)
}

fn add_term(terms: &mut BTreeMap<Q, Q>, exp: Q, c: Q) {
    if c.is_zero() {
        return;
    }
    match terms.entry(exp) {
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

impl Zero for ExactScalar {
    fn zero() -> Self {
        ExactScalar { base: None, terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        Self::rational(Q::one())
    }
}

impl std::ops::Add for ExactScalar {
    type Output = ExactScalar;
    fn add(mut self, rhs: Self) -> Self {
        self.add_assign_ref(&rhs);
        self
    }
}

impl std::ops::Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl Coefficient for ExactScalar {
    fn from_q(q: &Q) -> Self {
        Self::rational(q.clone())
    }
    fn add_assign_ref(&mut self, other: &Self) {
        self.base = self.merged_base(other);
        for (f, c) in &other.terms {
            add_term(&mut self.terms, f.clone(), c.clone());
        }
        self.fix_base();
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let base = self.merged_base(other);
        let mut terms = BTreeMap::new();
        for (f1, c1) in &self.terms {
            for (f2, c2) in &other.terms {
                let mut f = f1 + f2;
                let mut c = c1 * c2;
                if f >= Q::one() {
                    f -= Q::one();
                    c *= base.as_ref().expect("fractional exponent implies a base");
                }
                add_term(&mut terms, f, c);
            }
        }
        let mut out = ExactScalar { base, terms };
        out.fix_base();
        out
    }
    fn scale(&self, q: &Q) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        ExactScalar { base: self.base.clone(), terms: self.terms.iter().map(|(f, c)| (f.clone(), c * q)).collect() }
    }
    fn neg_ref(&self) -> Self {
        self.scale(&-Q::one())
    }
    fn approx(&self) -> f64 {
        self.terms
            .iter()
            .map(|(f, c)| {
                let v = q_to_f64(c);
                match &self.base {
                    Some(b) if !f.is_zero() => v * q_to_f64(b).powf(q_to_f64(f)),
                    _ => v,
                }
            })
            .sum()
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match &self.base {
                Some(b) if !e.is_zero() => write!(f, "{c}*({b})^({e})")?,
                _ => write!(f, "{c}")?,
            }
        }
        Ok(())
    }
}
