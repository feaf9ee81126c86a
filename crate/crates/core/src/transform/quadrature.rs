//! Gauss rules from the Golub–Welsch eigenvalue problem, and sphere rules
//! that absorb the reflection-group weight `w_k`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::Zero;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::reflection::{Family, RootSystem};
use crate::symalg::{q_to_f64, Q};

/// Nodes and weights of a one-dimensional rule.
#[derive(Clone, Debug)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

fn golub_welsch(diag: &[f64], off: &[f64], mu0: f64) -> Rule {
    let n = diag.len();
    let mut j = DMatrix::zeros(n, n);
    for i in 0..n {
        j[(i, i)] = diag[i];
        if i + 1 < n {
            j[(i, i + 1)] = off[i];
            j[(i + 1, i)] = off[i];
        }
    }
    let eig = SymmetricEigen::new(j);
    let mut pairs: Vec<(f64, f64)> =
        (0..n).map(|k| (eig.eigenvalues[k], mu0 * eig.eigenvectors[(0, k)].powi(2))).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Rule { nodes: pairs.iter().map(|p| p.0).collect(), weights: pairs.iter().map(|p| p.1).collect() }
}

/// Gauss–Jacobi rule on `[-1, 1]` for the weight `(1-x)^α (1+x)^β`.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> Rule {
    assert!(alpha > -1.0 && beta > -1.0, "Jacobi exponents must exceed -1");
    let ab = alpha + beta;
    let diag: Vec<f64> = (0..n)
        .map(|k| {
            let k = k as f64;
            if k == 0.0 {
                (beta - alpha) / (ab + 2.0)
            } else {
                (beta * beta - alpha * alpha) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0))
            }
        })
        .collect();
    let off: Vec<f64> = (1..n)
        .map(|k| {
            let k = k as f64;
            let s = 2.0 * k + ab;
            if k == 1.0 {
                (4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))).sqrt()
            } else {
                (4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0))).sqrt()
            }
        })
        .collect();
    let ln_mu0 = (ab + 1.0) * 2f64.ln() + ln_gamma(alpha + 1.0) + ln_gamma(beta + 1.0) - ln_gamma(ab + 2.0);
    golub_welsch(&diag, &off, ln_mu0.exp())
}

pub fn gauss_legendre(n: usize) -> Rule {
    gauss_jacobi(n, 0.0, 0.0)
}

/// Generalized Gauss–Laguerre rule on `(0, ∞)` for the weight `u^α e^{-u}`.
pub fn gauss_laguerre(n: usize, alpha: f64) -> Rule {
    assert!(alpha > -1.0, "Laguerre exponent must exceed -1");
    let diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + alpha + 1.0).collect();
    let off: Vec<f64> = (1..n).map(|k| (k as f64 * (k as f64 + alpha)).sqrt()).collect();
    golub_welsch(&diag, &off, ln_gamma(alpha + 1.0).exp())
}

/// Rule for `∫_0^L F(z) z^β dz` built from Gauss–Jacobi.
pub fn interval_power_rule(n: usize, length: f64, beta: f64) -> Rule {
    let gj = gauss_jacobi(n, 0.0, beta);
    let half = length / 2.0;
    let scale = half.powf(beta + 1.0);
    Rule {
        nodes: gj.nodes.iter().map(|x| half * (1.0 + x)).collect(),
        weights: gj.weights.iter().map(|w| w * scale).collect(),
    }
}

/// Points on `S^{m-1}` with weights that already include `w_k(ξ)`:
/// `Σ_j w_j F(ξ_j) ≈ ∫_S F(ξ) w_k(ξ) dσ(ξ)`.
#[derive(Clone, Debug)]
pub struct AngularRule {
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

/// Angles in `[0, 2π)` where `w_k` vanishes on the circle, each with the
/// total exponent of the vanishing.
fn circle_zeros(system: &RootSystem) -> Vec<(f64, f64)> {
    let mut zeros: Vec<(f64, f64)> = Vec::new();
    for root in system.roots() {
        let k = q_to_f64(system.k(root));
        if k == 0.0 {
            continue;
        }
        let (vx, vy) = (q_to_f64(&root.v[0]), q_to_f64(&root.v[1]));
        let base = vy.atan2(vx) + PI / 2.0;
        for shift in [0.0, PI] {
            let theta = (base + shift).rem_euclid(2.0 * PI);
            match zeros.iter_mut().find(|(t, _)| ((t - theta + PI).rem_euclid(2.0 * PI) - PI).abs() < 1e-12) {
                Some(z) => z.1 += 2.0 * k,
                None => zeros.push((theta, 2.0 * k)),
            }
        }
    }
    zeros.sort_by(|a, b| a.0.total_cmp(&b.0));
    zeros
}

impl AngularRule {
    /// About `n` nodes in total: a trapezoid rule in the plane when `w_k`
    /// is constant, Gauss–Jacobi on every arc between zeros of `w_k`
    /// otherwise; in three dimensions a product rule (trivial or `Z_2^3`
    /// weights only).
    pub fn new(system: &RootSystem, n: usize) -> Result<Self> {
        match system.dim() {
            1 => {
                let nodes = vec![vec![-1.0], vec![1.0]];
                let weights = nodes.iter().map(|x| system.weight(x)).collect();
                Ok(AngularRule { nodes, weights })
            }
            2 => Ok(Self::circle(system, n)),
            3 => Self::sphere3(system, n),
            m => Err(Error::UnsupportedGroup(format!("no sphere rule in dimension {m}"))),
        }
    }

    fn circle(system: &RootSystem, n: usize) -> Self {
        let zeros = circle_zeros(system);
        if zeros.is_empty() {
            let w = 2.0 * PI / n as f64;
            let nodes = (0..n).map(|j| {
                let t = w * j as f64;
                vec![t.cos(), t.sin()]
            });
            return AngularRule { nodes: nodes.collect(), weights: vec![w; n] };
        }
        let per = n.div_ceil(zeros.len()).max(2);
        let mut out = AngularRule { nodes: Vec::new(), weights: Vec::new() };
        for (i, &(t0, e0)) in zeros.iter().enumerate() {
            let (t1, e1) = zeros[(i + 1) % zeros.len()];
            let t1 = if t1 <= t0 { t1 + 2.0 * PI } else { t1 };
            let (mid, half) = ((t0 + t1) / 2.0, (t1 - t0) / 2.0);
            let gj = gauss_jacobi(per, e1, e0);
            for (x, w) in gj.nodes.iter().zip(&gj.weights) {
                let t = mid + half * x;
                let xi = vec![t.cos(), t.sin()];
                let jac = (1.0 - x).powf(e1) * (1.0 + x).powf(e0);
                out.weights.push(w * half * system.weight(&xi) / jac);
                out.nodes.push(xi);
            }
        }
        out
    }

    fn sphere3(system: &RootSystem, n: usize) -> Result<Self> {
        let kq: Vec<Q> = if system.is_trivial() {
            vec![Q::zero(); 3]
        } else if system.family() == Family::Z2 {
            system.roots().iter().map(|r| system.k(r).clone()).collect()
        } else {
            return Err(Error::UnsupportedGroup("numeric sphere rule in dimension 3 needs k = 0 or Z2^3".into()));
        };
        let nphi = n.max(8);
        let nz = (n / 2).max(4);
        let ks: Vec<f64> = kq.iter().map(q_to_f64).collect();
        let circle = Self::circle(&RootSystem::builtin(Family::Z2, 2, &kq[..2])?, nphi);
        // z on each half [0, 1] with |z|^{2k_3} at 0 and (1 - z^2)^{k_1 + k_2} at 1
        let e_top = ks[0] + ks[1];
        let e_mid = 2.0 * ks[2];
        let gj = gauss_jacobi(nz, e_top, e_mid);
        let mut out = AngularRule { nodes: Vec::new(), weights: Vec::new() };
        for sign in [-1.0, 1.0] {
            for (x, w) in gj.nodes.iter().zip(&gj.weights) {
                let z = (1.0 + x) / 2.0;
                let rho = (1.0 - z * z).sqrt();
                // w_k(ξ) = (2z^2)^{k_3} (1-z^2)^{k_1+k_2} w_k^{plane}(φ)
                let jac = (1.0 - x).powf(e_top) * (1.0 + x).powf(e_mid);
                let radial = (2.0 * z * z).powf(ks[2]) * (1.0 - z * z).powf(e_top) / jac;
                for (c, wc) in circle.nodes.iter().zip(&circle.weights) {
                    out.nodes.push(vec![rho * c[0], rho * c[1], sign * z]);
                    out.weights.push(w / 2.0 * radial * wc);
                }
            }
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::q;

    #[test]
    fn jacobi_integrates_polynomials() {
        let r = gauss_jacobi(12, 0.5, 1.5);
        // ∫ x^2 (1-x)^{1/2} (1+x)^{3/2} dx over [-1, 1]
        let num: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x * x).sum();
        let mu0: f64 = r.weights.iter().sum();
        assert!((mu0 - PI / 2.0).abs() < 1e-13);
        assert!((num - PI / 8.0).abs() < 1e-13);
    }

    #[test]
    fn laguerre_moments() {
        let r = gauss_laguerre(30, 0.7);
        for k in 0..20 {
            let approx: f64 = r.nodes.iter().zip(&r.weights).map(|(u, w)| w * u.powi(k)).sum();
            let exact = (ln_gamma(0.7 + 1.0 + k as f64)).exp();
            assert!((approx / exact - 1.0).abs() < 1e-11, "k={k}");
        }
    }

    #[test]
    fn circle_with_weight() {
        // ∫ (2cos²)^{1/2} (2sin²)^{1/2} dθ = 2 ∫ |cos sin| dθ = 4
        let s = RootSystem::builtin(Family::Z2, 2, &[q(1, 2)]).unwrap();
        let rule = AngularRule::new(&s, 64).unwrap();
        let total: f64 = rule.weights.iter().sum();
        assert!((total - 4.0).abs() < 1e-12, "{total}");
    }

    #[test]
    fn sphere_area() {
        let rule = AngularRule::new(&RootSystem::trivial(3), 32).unwrap();
        let total: f64 = rule.weights.iter().sum();
        assert!((total - 4.0 * PI).abs() < 1e-12);
    }
}
