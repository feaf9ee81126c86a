//! Root systems with rational coordinates, their reflections and the
//! associated weight function.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symalg::{parse_q, q_to_f64, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// `Z_2^m`: roots `e_i`, one orbit per coordinate.
    Z2,
    /// `A_{m-1}` acting on `R^m`: roots `e_i - e_j`.
    A,
    /// `B_m`: short roots `e_i`, long roots `e_i ± e_j`.
    B,
    /// Dihedral `I_2(n)`, only for the orders with a rational realisation:
    /// 2 and 4 in the plane, 6 inside the plane `x + y + z = 0` of `R^3`.
    I2(u32),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Z2 => write!(f, "Z2"),
            Family::A => write!(f, "A"),
            Family::B => write!(f, "B"),
            Family::I2(n) => write!(f, "I2({n})"),
        }
    }
}

/// A positive root stored as a primitive integer vector `v`; the normalised
/// root is `α = n v` with `n^2 = 2/⟨v,v⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub v: Vec<Q>,
    pub norm_sq: Q,
    pub orbit: usize,
}

impl Root {
    pub fn dot(&self, x: &[Q]) -> Q {
        self.v.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn dot_f64(&self, x: &[f64]) -> f64 {
        self.v.iter().zip(x).map(|(a, b)| q_to_f64(a) * b).sum()
    }

    /// `x - 2⟨v,x⟩/⟨v,v⟩ v`.
    pub fn reflect(&self, x: &[Q]) -> Vec<Q> {
        let t = Q::from_integer(2.into()) * self.dot(x) / &self.norm_sq;
        x.iter().zip(&self.v).map(|(xi, vi)| xi - &t * vi).collect()
    }

    pub fn reflect_f64(&self, x: &[f64]) -> Vec<f64> {
        let t = 2.0 * self.dot_f64(x) / q_to_f64(&self.norm_sq);
        x.iter().zip(&self.v).map(|(xi, vi)| xi - t * q_to_f64(vi)).collect()
    }

    /// Matrix of the reflection, row `j` giving `(r_α x)_j` as a linear form.
    pub fn matrix(&self) -> Vec<Vec<Q>> {
        let n = self.v.len();
        (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| {
                        let id = if j == k { Q::one() } else { Q::zero() };
                        id - Q::from_integer(2.into()) * &self.v[j] * &self.v[k] / &self.norm_sq
                    })
                    .collect()
            })
            .collect()
    }
}

/// A root system together with a multiplicity per reflection orbit.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSystem {
    dim: usize,
    family: Family,
    roots: Vec<Root>,
    multiplicities: Vec<Q>,
}

fn unit(dim: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

fn diff(dim: usize, i: usize, j: usize, sign: i64) -> Vec<i64> {
    let mut v = unit(dim, i);
    v[j] = sign;
    v
}

impl RootSystem {
    /// A builtin root system acting on `R^dim`. `ks` holds one multiplicity
    /// per orbit, or a single value used for every orbit.
    pub fn builtin(family: Family, dim: usize, ks: &[Q]) -> Result<Self> {
        let vecs: Vec<Vec<i64>> = match family {
            Family::Z2 => (0..dim).map(|i| unit(dim, i)).collect(),
            Family::A => {
                let mut v = Vec::new();
                for i in 0..dim {
                    for j in i + 1..dim {
                        v.push(diff(dim, i, j, -1));
                    }
                }
                v
            }
            Family::B => {
                let mut v: Vec<_> = (0..dim).map(|i| unit(dim, i)).collect();
                for i in 0..dim {
                    for j in i + 1..dim {
                        v.push(diff(dim, i, j, -1));
                        v.push(diff(dim, i, j, 1));
                    }
                }
                v
            }
            Family::I2(2) if dim == 2 => vec![vec![1, 0], vec![0, 1]],
            Family::I2(4) if dim == 2 => vec![vec![1, 0], vec![0, 1], vec![1, -1], vec![1, 1]],
            Family::I2(6) if dim == 3 => {
                vec![vec![1, -1, 0], vec![1, 0, -1], vec![0, 1, -1], vec![2, -1, -1], vec![1, -2, 1], vec![1, 1, -2]]
            }
            other => return Err(Error::UnsupportedGroup(format!("{other} on R^{dim}"))),
        };
        if dim == 0 || (family == Family::A && dim < 2) {
            return Err(Error::UnsupportedGroup(format!("{family} on R^{dim}")));
        }
        let mut roots: Vec<Root> = vecs
            .into_iter()
            .map(|v| {
                let v: Vec<Q> = v.into_iter().map(|x| Q::from_integer(x.into())).collect();
                let norm_sq = v.iter().map(|x| x * x).sum();
                Root { v, norm_sq, orbit: 0 }
            })
            .collect();
        let orbits = orbit_labels(&roots);
        for (r, o) in roots.iter_mut().zip(orbits) {
            r.orbit = o;
        }
        let n_orbits = roots.iter().map(|r| r.orbit + 1).max().unwrap_or(0);
        let multiplicities = match ks.len() {
            1 => vec![ks[0].clone(); n_orbits],
            n if n == n_orbits => ks.to_vec(),
            n => {
                return Err(Error::Invalid(format!(
                    "{family} on R^{dim} has {n_orbits} orbits, got {n} multiplicities"
                )))
            }
        };
        let rs = RootSystem { dim, family, roots, multiplicities };
        rs.validate()?;
        Ok(rs)
    }

    pub fn trivial(dim: usize) -> Self {
        RootSystem::builtin(Family::Z2, dim, &[Q::zero()]).expect("Z2 exists in every dimension")
    }

    pub fn from_config(cfg: &RootSystemConfig) -> Result<Self> {
        let family = match (cfg.family.to_ascii_uppercase().as_str(), cfg.order) {
            ("Z2", _) => Family::Z2,
            ("A", _) => Family::A,
            ("B", _) => Family::B,
            ("I2", Some(n)) => Family::I2(n),
            (f, _) => return Err(Error::UnsupportedGroup(f.to_string())),
        };
        let dim = match family {
            Family::A => cfg.rank + 1,
            Family::I2(6) => 3,
            Family::I2(_) => 2,
            _ => cfg.rank,
        };
        let ks = cfg.multiplicities.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>()?;
        Self::builtin(family, dim, &ks)
    }

    /// Checks reducedness, closure of `±R_+` under its reflections and that
    /// multiplicities are constant on orbits.
    pub fn validate(&self) -> Result<()> {
        let pos: Vec<Vec<Q>> = self.roots.iter().map(|r| primitive_dir(r.v.clone())).collect();
        for (i, a) in pos.iter().enumerate() {
            for b in &pos[i + 1..] {
                if a == b {
                    return Err(Error::Invalid("root system is not reduced".into()));
                }
            }
        }
        for r in &self.roots {
            for s in &self.roots {
                let img = primitive_dir(r.reflect(&s.v));
                let Some(j) = pos.iter().position(|p| *p == img) else {
                    return Err(Error::Invalid("root system is not closed under its reflections".into()));
                };
                if self.roots[j].orbit != s.orbit {
                    return Err(Error::NotInvariant);
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn multiplicities(&self) -> &[Q] {
        &self.multiplicities
    }

    pub fn k(&self, root: &Root) -> &Q {
        &self.multiplicities[root.orbit]
    }

    pub fn is_trivial(&self) -> bool {
        self.multiplicities.iter().all(Zero::is_zero)
    }

    /// `γ = Σ_{α ∈ R_+} k_α`.
    pub fn gamma(&self) -> Q {
        self.roots.iter().map(|r| self.k(r).clone()).sum()
    }

    /// Dunkl dimension `μ = m + 2γ`.
    pub fn mu(&self) -> Q {
        Q::from_integer(self.dim.into()) + Q::from_integer(2.into()) * self.gamma()
    }

    /// `w_k(x) = Π_{α ∈ R_+} |⟨α, x⟩|^{2 k_α}` with normalised roots.
    pub fn weight(&self, x: &[f64]) -> f64 {
        self.roots
            .iter()
            .map(|r| {
                let k = q_to_f64(self.k(r));
                if k == 0.0 {
                    1.0
                } else {
                    let n2 = 2.0 / q_to_f64(&r.norm_sq);
                    (n2 * r.dot_f64(x).powi(2)).powf(k)
                }
            })
            .product()
    }

    /// Number of roots in each orbit.
    pub fn orbit_sizes(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for r in &self.roots {
            *out.entry(r.orbit).or_insert(0) += 1;
        }
        out
    }

    pub fn to_config(&self) -> RootSystemConfig {
        let (family, order, rank) = match self.family {
            Family::Z2 => ("Z2", None, self.dim),
            Family::A => ("A", None, self.dim - 1),
            Family::B => ("B", None, self.dim),
            Family::I2(n) => ("I2", Some(n), 2),
        };
        RootSystemConfig {
            family: family.into(),
            rank,
            order,
            multiplicities: self.multiplicities.iter().map(ToString::to_string).collect(),
        }
    }
}

fn primitive_dir(v: Vec<Q>) -> Vec<Q> {
    let Some(p) = v.iter().find(|x| !x.is_zero()).cloned() else { return v };
    v.into_iter().map(|x| x / &p).collect()
}

fn orbit_labels(roots: &[Root]) -> Vec<usize> {
    let dirs: Vec<Vec<Q>> = roots.iter().map(|r| primitive_dir(r.v.clone())).collect();
    let mut label = vec![usize::MAX; roots.len()];
    let mut next = 0;
    for start in 0..roots.len() {
        if label[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        label[start] = next;
        while let Some(i) = stack.pop() {
            for r in roots {
                let img = primitive_dir(r.reflect(&roots[i].v));
                if let Some(j) = dirs.iter().position(|d| *d == img) {
                    if label[j] == usize::MAX {
                        label[j] = next;
                        stack.push(j);
                    }
                }
            }
        }
        next += 1;
    }
    label
}

/// JSON configuration, e.g. `{"family": "A", "rank": 2, "multiplicities": ["1/3"]}`.
/// `rank` is the ambient dimension for `Z2` and `B`, and `m - 1` for `A`;
/// `I2` takes `order` instead.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RootSystemConfig {
    pub family: String,
    #[serde(default)]
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    pub multiplicities: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::q;

    #[test]
    fn orbit_counts() {
        let z = RootSystem::builtin(Family::Z2, 3, &[q(1, 2)]).unwrap();
        assert_eq!(z.orbit_sizes().len(), 3);
        let a = RootSystem::builtin(Family::A, 3, &[q(1, 3)]).unwrap();
        assert_eq!(a.orbit_sizes().len(), 1);
        assert_eq!(a.roots().len(), 3);
        let b = RootSystem::builtin(Family::B, 3, &[q(1, 2), q(1, 3)]).unwrap();
        assert_eq!(b.orbit_sizes().values().copied().collect::<Vec<_>>(), vec![3, 6]);
        let g = RootSystem::builtin(Family::I2(6), 3, &[q(1, 1), q(2, 1)]).unwrap();
        assert_eq!(g.orbit_sizes().values().copied().collect::<Vec<_>>(), vec![3, 3]);
        assert!(RootSystem::builtin(Family::I2(8), 2, &[q(1, 1)]).is_err());
    }

    #[test]
    fn reflections_are_involutions_preserving_weight() {
        let b = RootSystem::builtin(Family::B, 2, &[q(1, 2), q(3, 2)]).unwrap();
        let x = vec![q(3, 7), q(-2, 5)];
        let xf = [3.0 / 7.0, -0.4];
        for r in b.roots() {
            assert_eq!(r.reflect(&r.reflect(&x)), x);
            let w0 = b.weight(&xf);
            let w1 = b.weight(&r.reflect_f64(&xf));
            assert!((w0 - w1).abs() < 1e-14 * w0.abs().max(1.0));
        }
    }

    #[test]
    fn gamma_and_mu() {
        let b = RootSystem::builtin(Family::B, 2, &[q(1, 2), q(1, 3)]).unwrap();
        assert_eq!(b.gamma(), q(1, 1) + q(2, 3));
        assert_eq!(b.mu(), q(2, 1) + q(10, 3));
    }

    #[test]
    fn config_round_trip() {
        let a = RootSystem::builtin(Family::A, 3, &[q(1, 3)]).unwrap();
        let cfg = a.to_config();
        let json = serde_json::to_string(&cfg).unwrap();
        let back: RootSystemConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(RootSystem::from_config(&back).unwrap(), a);
    }
}
