//! Clifford–Laguerre families `ψ_t = (𝐃 - 2(1+c) x_a)^t r^{β_ℓ} M_ℓ` and the
//! damped functions `φ_t = ψ_t e^{-r^a/a}`.
//!
//! The damping factor is never expanded: on `g e^{-r^a/a}` the operator `𝐃`
//! acts as `g ↦ 𝐃g - (1+c) x_a g`, so every identity about `φ_t` is checked
//! on the polynomial side.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::deformed::DeformedContext;
use crate::error::{Error, Result};
use crate::fischer::singular_locus;
use crate::report::{CheckRecord, Report};
use crate::symalg::{q_to_f64, RadialExpr, Q};

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn qpow(x: &Q, n: u32) -> Q {
    (0..n).fold(Q::one(), |acc, _| acc * x)
}

fn factorial(n: u32) -> Q {
    (1..=n).fold(Q::one(), |acc, i| acc * qi(i as i64))
}

fn binomial(n: u32, k: u32) -> Q {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `Γ(z + n) / Γ(z) = z (z+1) ⋯ (z+n-1)`.
pub fn pochhammer(z: &Q, n: u32) -> Q {
    (0..n).fold(Q::one(), |acc, i| acc * (z + qi(i as i64)))
}

/// Coefficients of the generalized Laguerre polynomial `L_n^α` in powers of
/// its argument, from the finite sum
/// `Σ_i Γ(n+α+1) / (i! (n-i)! Γ(i+α+1)) (-x)^i`.
pub fn laguerre_coeffs(n: u32, alpha: &Q) -> Vec<Q> {
    (0..=n)
        .map(|i| {
            let ratio = pochhammer(&(alpha + qi(i as i64 + 1)), n - i);
            let sign = if i % 2 == 0 { Q::one() } else { -Q::one() };
            sign * ratio / (factorial(i) * factorial(n - i))
        })
        .collect()
}

/// `L_n^α(x)` by the three-term recurrence
/// `(k+1) L_{k+1} = (2k+1+α-x) L_k - (k+α) L_{k-1}`.
pub fn laguerre_eval(n: u32, alpha: f64, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 1.0 + alpha - x);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// A squared norm `prefactor · Γ(gamma_arg) · (a/2)^{half_a_exponent}`; the
/// Γ value at a rational point is kept symbolic until `value`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormConstant {
    #[serde(with = "crate::symalg::qser")]
    pub prefactor: Q,
    #[serde(with = "crate::symalg::qser")]
    pub gamma_arg: Q,
    #[serde(with = "crate::symalg::qser")]
    pub half_a_exponent: Q,
    #[serde(with = "crate::symalg::qser")]
    pub a: Q,
}

impl NormConstant {
    pub fn value(&self) -> f64 {
        let ln = ln_gamma(q_to_f64(&self.gamma_arg)) + q_to_f64(&self.half_a_exponent) * (q_to_f64(&self.a) / 2.0).ln();
        q_to_f64(&self.prefactor) * ln.exp()
    }
}

/// Which overall factor the norm constants carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormConvention {
    /// `1/a`, the value obtained by integrating `r^{γ_ℓ-1} e^{-2r^a/a}` over `(0, ∞)`.
    Integrated,
    /// A fixed factor `½`, which agrees with `Integrated` only when `a = 2`.
    Half,
}

/// One row of the Laguerre table emitted by the CLI.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LaguerreRow {
    pub t: u32,
    pub l: u32,
    /// `b_j^t` for `j = 0..=t`, as `p/q` strings.
    pub coefficients: Vec<String>,
    pub lowering_constant: String,
    pub norm_constant: f64,
}

/// The family `ψ_t` over a fixed shifted monogenic `r^{β_ℓ} M_ℓ`.
#[derive(Clone)]
pub struct LaguerreFamily {
    dctx: DeformedContext,
    ell: u32,
    monogenic: RadialExpr<Q>,
    psi: Vec<RadialExpr<Q>>,
}

impl LaguerreFamily {
    /// `monogenic` must be a degree-`ℓ` Dunkl monogenic (unshifted).
    pub fn new(dctx: DeformedContext, ell: u32, monogenic: RadialExpr<Q>) -> Result<Self> {
        let mu = dctx.mu();
        if singular_locus(dctx.params(), &mu, ell) {
            return Err(Error::SingularLocus(format!("gamma_{ell}/a is a non-positive integer")));
        }
        if monogenic.is_zero() || !dctx.dunkl().dirac(&monogenic).is_zero() {
            return Err(Error::Invalid("expected a nonzero Dunkl monogenic".into()));
        }
        let deg = Q::from_integer(ell.into());
        if monogenic.homogeneities().into_iter().any(|h| h != deg) {
            return Err(Error::Invalid(format!("monogenic is not homogeneous of degree {ell}")));
        }
        let base = monogenic.mul_r(&dctx.params().beta(ell));
        Ok(LaguerreFamily { dctx, ell, monogenic, psi: vec![base] })
    }

    pub fn context(&self) -> &DeformedContext {
        &self.dctx
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn monogenic(&self) -> &RadialExpr<Q> {
        &self.monogenic
    }

    pub fn gamma(&self) -> Q {
        self.dctx.params().gamma(self.ell, &self.dctx.mu())
    }

    fn opc(&self) -> Q {
        self.dctx.params().one_plus_c()
    }

    /// `x_a^j r^{β_ℓ} M_ℓ`.
    pub fn tower(&self, j: u32) -> RadialExpr<Q> {
        (0..j).fold(self.psi[0].clone(), |g, _| self.dctx.x_a(&g))
    }

    /// `ψ_t` from the defining recursion `ψ_{t+1} = (𝐃 - 2(1+c) x_a) ψ_t`.
    pub fn psi(&mut self, t: u32) -> &RadialExpr<Q> {
        let two_opc = qi(2) * self.opc();
        while self.psi.len() <= t as usize {
            let last = self.psi.last().expect("psi_0 is always present");
            let next = self.dctx.dirac(last).sub(&self.dctx.x_a(last).scale_q(&two_opc));
            self.psi.push(next);
        }
        &self.psi[t as usize]
    }

    /// Closed-form `b_j^t` for `j = 0..=t` (zero for the wrong parity).
    pub fn closed_coeffs(&self, t: u32) -> Vec<Q> {
        let a = &self.dctx.params().a;
        let opc = self.opc();
        let g = self.gamma() / a;
        let half_a = a / qi(2);
        let s = t / 2;
        let mut out = vec![Q::zero(); t as usize + 1];
        for i in 0..=s {
            let common = binomial(s, i) * qpow(&half_a, s - i);
            if t.is_multiple_of(2) {
                let ratio = pochhammer(&(&g + qi(i as i64)), s - i);
                out[2 * i as usize] = qpow(&qi(2), t) * qpow(&opc, t) * common * ratio;
            } else {
                let ratio = pochhammer(&(&g + qi(i as i64 + 1)), s - i);
                out[2 * i as usize + 1] = -(qpow(&qi(2), t) * qpow(&opc, t) * common * ratio);
            }
        }
        out
    }

    /// `Σ_j b_j^t x_a^j r^{β_ℓ} M_ℓ` from the closed-form coefficients.
    pub fn closed(&self, t: u32) -> RadialExpr<Q> {
        let mut acc = RadialExpr::zero(self.dctx.dim());
        let mut g = self.psi[0].clone();
        for b in self.closed_coeffs(t) {
            if !b.is_zero() {
                acc = acc.add(&g.scale_q(&b));
            }
            g = self.dctx.x_a(&g);
        }
        acc
    }

    /// Reads off the coefficients of `ψ_t` along the tower. The tower
    /// elements have distinct homogeneities, so each coefficient is the ratio
    /// of one homogeneous part to the matching tower element.
    pub fn psi_coeffs(&mut self, t: u32) -> Result<Vec<Q>> {
        let psi = self.psi(t).clone();
        let half_a = &self.dctx.params().a / qi(2);
        let h0 = self.dctx.params().beta(self.ell) + qi(self.ell as i64);
        let mut seen = RadialExpr::zero(self.dctx.dim());
        let mut out = Vec::with_capacity(t as usize + 1);
        for j in 0..=t {
            let tower = self.tower(j);
            let part = psi.homogeneous_part(&(&h0 + &half_a * qi(j as i64)));
            let (s, m, c) = tower.iter().next().ok_or_else(|| Error::Invalid("zero tower element".into()))?;
            let (blade, x) = c.blades().next().expect("nonzero coefficient");
            let y = part
                .iter()
                .find(|(s2, m2, _)| *s2 == s && *m2 == m)
                .map(|(_, _, c2)| c2.coeff(blade))
                .unwrap_or_else(Q::zero);
            let b = y / x;
            if part != tower.scale_q(&b) {
                return Err(Error::Invalid(format!("psi_{t} is not a multiple of the tower element at j = {j}")));
            }
            seen = seen.add(&part);
            out.push(b);
        }
        if seen != psi {
            return Err(Error::Invalid(format!("psi_{t} has parts outside the tower")));
        }
        Ok(out)
    }

    /// `C(2s) = 2(1+c)^2 a s`, `C(2s+1) = 2(1+c)^2 (γ_ℓ + a s)`.
    pub fn lowering_constant(&self, t: u32) -> Q {
        let a = &self.dctx.params().a;
        let opc = self.opc();
        let s = qi((t / 2) as i64);
        let inner = if t.is_multiple_of(2) { a * s } else { self.gamma() + a * s };
        qi(2) * &opc * &opc * inner
    }

    /// `⟨φ_t, φ_t⟩` divided by the sphere integral of `M̄_ℓ M_ℓ`.
    pub fn norm_constant(&self, t: u32, convention: NormConvention) -> NormConstant {
        let a = self.dctx.params().a.clone();
        let opc = self.opc();
        let s = t / 2;
        let g = self.gamma() / &a;
        let lead = match convention {
            NormConvention::Integrated => Q::one() / &a,
            NormConvention::Half => Q::new(1.into(), 2.into()),
        };
        let two_a = qi(2) * &a;
        let prefactor = lead * qpow(&two_a, t) * qpow(&opc, 2 * t) * factorial(s);
        let gamma_arg = &g + qi(s as i64) + if t.is_multiple_of(2) { Q::zero() } else { Q::one() };
        NormConstant { prefactor, gamma_arg, half_a_exponent: g, a }
    }

    pub fn table_row(&self, t: u32) -> LaguerreRow {
        LaguerreRow {
            t,
            l: self.ell,
            coefficients: self.closed_coeffs(t).iter().map(ToString::to_string).collect(),
            lowering_constant: self.lowering_constant(t).to_string(),
            norm_constant: self.norm_constant(t, NormConvention::Integrated).value(),
        }
    }

    fn input(&self, t: u32) -> String {
        format!("l={} t={} M={}", self.ell, t, self.monogenic)
    }

    /// Recursion against closed form, both as coefficient lists and as
    /// functions, plus the coefficient recursion among the closed forms.
    pub fn closed_form_check(&mut self, t_max: u32) -> Result<Report> {
        let mut rep = Report::new("laguerre-closed-form");
        let a = self.dctx.params().a.clone();
        let opc = self.opc();
        let gamma = self.gamma();
        for t in 0..=t_max {
            let rec = self.psi_coeffs(t)?;
            let closed = self.closed_coeffs(t);
            for (j, (x, y)) in rec.iter().zip(&closed).enumerate() {
                rep.push(CheckRecord::compare(format!("b_{j}^{t} recursion = closed form"), self.input(t), x, y));
            }
            let psi = self.psi(t).clone();
            rep.push(CheckRecord::compare("psi_t = sum b_j x_a^j r^beta M", self.input(t), &psi, &self.closed(t)));
            if t == 0 {
                continue;
            }
            let prev = self.closed_coeffs(t - 1);
            let at = |v: &[Q], j: i64| if j < 0 || j as usize >= v.len() { Q::zero() } else { v[j as usize].clone() };
            for j in 0..=t as i64 {
                let i = qi(j / 2);
                // minus the lowering constant of the tower element one step up
                let lowered = if j % 2 == 0 { &gamma + &a * &i } else { &a * (&i + Q::one()) };
                let expected = -&opc * lowered * at(&prev, j + 1) - qi(2) * &opc * at(&prev, j - 1);
                rep.push(CheckRecord::compare(
                    "b coefficient recursion",
                    format!("{} j={j}", self.input(t)),
                    &at(&closed, j),
                    &expected,
                ));
            }
        }
        Ok(rep)
    }

    /// `ψ_{2t}` and `ψ_{2t+1}` against the one-variable Laguerre polynomials
    /// `L_t^{γ_ℓ/a - 1}` and `L_t^{γ_ℓ/a}` in `2r^a/a`.
    pub fn laguerre_match_check(&mut self, t_max: u32) -> Report {
        let mut rep = Report::new("laguerre-match");
        let a = self.dctx.params().a.clone();
        let opc = self.opc();
        let g = self.gamma() / &a;
        let half_a = &a / qi(2);
        let two_over_a = qi(2) / &a;
        for t in 0..=t_max {
            for odd in [false, true] {
                let n = 2 * t + odd as u32;
                let alpha = if odd { g.clone() } else { &g - Q::one() };
                let lag = laguerre_coeffs(t, &alpha);
                let scale = qpow(&qi(2), n) * qpow(&opc, n) * factorial(t) * qpow(&half_a, t);
                let scale = if odd { -scale } else { scale };
                let base = if odd { self.tower(1) } else { self.tower(0) };
                let expected = lag.iter().enumerate().fold(RadialExpr::zero(self.dctx.dim()), |acc, (i, li)| {
                    let coeff = &scale * li * qpow(&two_over_a, i as u32);
                    acc.add(&base.mul_r(&(&a * qi(i as i64))).scale_q(&coeff))
                });
                let psi = self.psi(n).clone();
                rep.push(CheckRecord::compare("psi = Laguerre in 2r^a/a", self.input(n), &psi, &expected));
            }
            // finite sum against the recurrence at a sample point
            let alpha = q_to_f64(&g) - 1.0;
            let x = 0.7 + t as f64;
            let sum: f64 = laguerre_coeffs(t, &(&g - Q::one()))
                .iter()
                .enumerate()
                .map(|(i, c)| q_to_f64(c) * x.powi(i as i32))
                .sum();
            rep.push(CheckRecord::numeric(
                "Laguerre finite sum = recurrence",
                format!("t={t} alpha={alpha}"),
                sum,
                laguerre_eval(t, alpha, x),
                1e-10,
            ));
        }
        rep
    }

    /// `𝐃ψ_0 = 0`, `𝐃ψ_t = C(t) ψ_{t-1}` and
    /// `𝐃²ψ_t - 2(1+c) x_a 𝐃ψ_t - C(t) ψ_t = 0`.
    pub fn lowering_check(&mut self, t_max: u32) -> Report {
        let mut rep = Report::new("laguerre-lowering");
        let dim = self.dctx.dim();
        let two_opc = qi(2) * self.opc();
        for t in 0..=t_max {
            let psi = self.psi(t).clone();
            let d = self.dctx.dirac(&psi);
            let c = self.lowering_constant(t);
            let expected = if t == 0 { RadialExpr::zero(dim) } else { self.psi(t - 1).scale_q(&c) };
            rep.push(CheckRecord::compare("D psi_t = C(t) psi_{t-1}", self.input(t), &d, &expected));
            let lhs = self.dctx.dirac(&d).sub(&self.dctx.x_a(&d).scale_q(&two_opc)).sub(&psi.scale_q(&c));
            rep.push(CheckRecord::compare(
                "D^2 psi - 2(1+c) x_a D psi - C psi = 0",
                self.input(t),
                &lhs,
                &RadialExpr::zero(dim),
            ));
        }
        rep
    }

    /// `𝐃` on `g e^{-r^a/a}`, expressed on `g`.
    pub fn gauged_dirac(&self, g: &RadialExpr<Q>) -> RadialExpr<Q> {
        self.dctx.dirac(g).sub(&self.dctx.x_a(g).scale_q(&self.opc()))
    }

    /// The oscillator equation `(𝐃² - (1+c)² x_a²) φ_t = (1+c)²(γ_ℓ + a t) φ_t`,
    /// the eigen-actions of `[𝐃, x_a]` on `ψ_t` and `[[𝐃, x_a], x_a²] = 0`.
    pub fn oscillator_check(&mut self, t_max: u32) -> Report {
        let mut rep = Report::new("laguerre-oscillator");
        let a = self.dctx.params().a.clone();
        let opc = self.opc();
        let opc2 = &opc * &opc;
        let gamma = self.gamma();
        let dim = self.dctx.dim();
        let comm = |ctx: &DeformedContext, g: &RadialExpr<Q>| ctx.dirac(&ctx.x_a(g)).sub(&ctx.x_a(&ctx.dirac(g)));
        for t in 0..=t_max {
            let psi = self.psi(t).clone();
            let lhs = self.gauged_dirac(&self.gauged_dirac(&psi)).sub(&self.dctx.x_a_squared(&psi).scale_q(&opc2));
            let eig = &opc2 * (&gamma + &a * qi(t as i64));
            rep.push(CheckRecord::compare(
                "(D^2 - (1+c)^2 x_a^2) phi_t = (1+c)^2 (gamma + a t) phi_t",
                self.input(t),
                &lhs,
                &psi.scale_q(&eig),
            ));
            // 𝐃(r^{an} ψ) - r^{an} 𝐃ψ = (1+c) a n r^{a(n-1)} x_a ψ, the termwise
            // form of 𝐃(e^{-r^a/a} ψ) = e^{-r^a/a}(𝐃ψ - (1+c) x_a ψ)
            for n in 0..3i64 {
                let p = &a * qi(n);
                let lhs = self.dctx.dirac(&psi.mul_r(&p)).sub(&self.dctx.dirac(&psi).mul_r(&p));
                let rhs = self.dctx.x_a(&psi).mul_r(&(&a * qi(n - 1))).scale_q(&(&opc * &p));
                rep.push(CheckRecord::compare(
                    "radial product rule behind the gauge identity",
                    format!("{} n={n}", self.input(t)),
                    &lhs,
                    &rhs,
                ));
            }
            let c1 = comm(&self.dctx, &psi);
            let k = if t % 2 == 0 { -&opc * &gamma } else { -&opc * (&a - &gamma) };
            rep.push(CheckRecord::compare("[D, x_a] psi_t eigen-action", self.input(t), &c1, &psi.scale_q(&k)));
            let x2 = self.dctx.x_a_squared(&psi);
            let cc = comm(&self.dctx, &x2).sub(&self.dctx.x_a_squared(&c1));
            rep.push(CheckRecord::compare("[[D, x_a], x_a^2] psi_t = 0", self.input(t), &cc, &RadialExpr::zero(dim)));
        }
        rep
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::clifford::Multivector;
    use crate::dunkl::DunklContext;
    use crate::fischer::monogenic_basis;
    use crate::reflection::{Family, RootSystem};
    use crate::symalg::{q, DeformParams, Monomial};

    fn family(system: RootSystem, p: DeformParams, ell: u32) -> LaguerreFamily {
        let d = Arc::new(DunklContext::new(system));
        let basis = monogenic_basis(&d, ell);
        let m = basis.element(0);
        LaguerreFamily::new(DeformedContext::new(d, p), ell, m).unwrap()
    }

    #[test]
    fn laguerre_low_orders() {
        let a = q(3, 2);
        assert_eq!(laguerre_coeffs(0, &a), vec![q(1, 1)]);
        assert_eq!(laguerre_coeffs(1, &a), vec![q(5, 2), q(-1, 1)]);
        assert!(
            (laguerre_eval(3, 1.5, 0.4)
                - laguerre_coeffs(3, &a)
                    .iter()
                    .enumerate()
                    .map(|(i, c)| q_to_f64(c) * 0.4f64.powi(i as i32))
                    .sum::<f64>())
            .abs()
                < 1e-12
        );
    }

    #[test]
    fn first_members() {
        let p = DeformParams::new(q(4, 3), q(1, 2), q(1, 5)).unwrap();
        let mut f = family(RootSystem::builtin(Family::Z2, 2, &[q(1, 2)]).unwrap(), p.clone(), 1);
        let base = f.psi(0).clone();
        let opc = p.one_plus_c();
        let psi1 = f.psi(1).clone();
        assert_eq!(psi1, f.dctx.x_a(&base).scale_q(&(qi(-2) * &opc)));
        let b = f.closed_coeffs(2);
        assert_eq!(b[0], qi(2) * &opc * &opc * f.gamma());
        assert_eq!(b[2], qi(4) * &opc * &opc);
    }

    #[test]
    fn classical_hermite_degree_two() {
        let p = DeformParams::new(q(2, 1), q(0, 1), q(0, 1)).unwrap();
        let mut f = family(RootSystem::trivial(2), p, 0);
        // scalar monogenic 1 gives ψ_2 = 4 x^2 + 2m = -4 r^2 + 4
        let one = Multivector::one(2);
        let mut f0 = LaguerreFamily::new(f.dctx.clone(), 0, RadialExpr::constant(one)).unwrap();
        let psi2 = f0.psi(2).clone();
        let expected = RadialExpr::term(q(2, 1), Monomial::one(2), Multivector::scalar(2, q(-4, 1)))
            .add(&RadialExpr::constant(Multivector::scalar(2, q(4, 1))));
        assert_eq!(psi2, expected);
        assert!(f.closed_form_check(3).unwrap().all_passed());
    }

    #[test]
    fn all_checks_pass_on_random_like_params() {
        let p = DeformParams::new(q(3, 2), q(-1, 3), q(2, 7)).unwrap();
        let mut f = family(RootSystem::builtin(Family::Z2, 2, &[q(1, 3), q(2, 3)]).unwrap(), p, 2);
        assert!(f.closed_form_check(4).unwrap().all_passed());
        assert!(f.laguerre_match_check(2).all_passed());
        assert!(f.lowering_check(4).all_passed());
        assert!(f.oscillator_check(4).all_passed());
    }

    #[test]
    fn norm_ratios() {
        let p = DeformParams::graded(q(4, 1), q(0, 1)).unwrap();
        let f = family(RootSystem::trivial(2), p, 0);
        let c0 = f.norm_constant(0, NormConvention::Integrated).value();
        let c1 = f.norm_constant(1, NormConvention::Integrated).value();
        let ratio = 2.0 * 4.0 * q_to_f64(&f.opc()).powi(2) * q_to_f64(&(f.gamma() / q(4, 1)));
        assert!((c1 / c0 - ratio).abs() < 1e-12 * ratio);
        let half = f.norm_constant(0, NormConvention::Half).value();
        assert!((half / c0 - 2.0).abs() < 1e-12);
    }
}
