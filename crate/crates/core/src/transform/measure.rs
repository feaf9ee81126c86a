//! The weight `h(r) w_k(x)` that makes the components of `𝐃` skew, and
//! inner products `⟨f, g⟩ = ∫ f̄ g e^{-2r^a/a} h w_k dx` of damped functions
//! `f e^{-r^a/a}`, `g e^{-r^a/a}`.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use statrs::function::gamma::ln_gamma;

use super::quadrature::{gauss_laguerre, AngularRule, Rule};
use crate::clifford::{dense_bar, dense_mul};
use crate::deformed::DeformedContext;
use crate::error::{Error, Result};
use crate::reflection::{Family, RootSystem};
use crate::report::{CheckRecord, Report};
use crate::symalg::{q_to_f64, DeformParams, Monomial, RadialExpr, Q};

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// `h(r) w_k(x) dx` with `h(r) = r^{e}` and
/// `e = a/2 + (2b - 1 - cμ)/(1 + c)`.
#[derive(Clone, Debug)]
pub struct Measure {
    params: DeformParams,
    system: RootSystem,
    mu: Q,
    exponent: Q,
}

impl Measure {
    pub fn new(dctx: &DeformedContext) -> Self {
        let mu = dctx.mu();
        Measure {
            params: dctx.params().clone(),
            system: dctx.dunkl().system().clone(),
            exponent: dctx.params().measure_exponent(&mu),
            mu,
        }
    }

    pub fn params(&self) -> &DeformParams {
        &self.params
    }

    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    pub fn mu(&self) -> &Q {
        &self.mu
    }

    /// Exponent of `h(r) = r^e`.
    pub fn exponent(&self) -> &Q {
        &self.exponent
    }

    /// Power of `r` in `h(r) w_k(x) dx` after passing to polar coordinates;
    /// equals `δ - 1`.
    pub fn radial_exponent(&self) -> Q {
        &self.exponent + &self.mu - Q::one()
    }

    pub fn h(&self, r: f64) -> f64 {
        r.powf(q_to_f64(&self.exponent))
    }
}

/// `∫_0^∞ r^p e^{-λ r^a} dr = λ^{-(p+1)/a} Γ((p+1)/a) / a` for `a > 0`.
pub fn radial_moment(p: &Q, a: &Q, lambda: f64) -> Result<f64> {
    if !a.is_positive() {
        return Err(Error::NonPositive("a"));
    }
    let s = (p + Q::one()) / a;
    if !s.is_positive() {
        return Err(Error::Divergent(format!("r^{p} is not integrable at 0")));
    }
    let s = q_to_f64(&s);
    Ok((ln_gamma(s) - s * lambda.ln()).exp() / q_to_f64(a))
}

/// `∫_{S^{m-1}} ξ^α w_k(ξ) dσ` in closed form for `k = 0` or `Z_2^m`:
/// `2^{1+Σk} Π Γ((α_i + 2k_i + 1)/2) / Γ((|α| + μ)/2)` when every `α_i` is
/// even, zero otherwise.
pub fn sphere_moment(system: &RootSystem, alpha: &Monomial) -> Result<f64> {
    let dim = system.dim();
    let ks: Vec<Q> = if system.is_trivial() {
        vec![Q::zero(); dim]
    } else if system.family() == Family::Z2 {
        system.roots().iter().map(|r| system.k(r).clone()).collect()
    } else {
        return Err(Error::UnsupportedGroup("closed-form sphere moments need k = 0 or Z2^m".into()));
    };
    if (0..dim).any(|i| alpha.exp(i) % 2 == 1) {
        return Ok(0.0);
    }
    let ksum: f64 = ks.iter().map(q_to_f64).sum();
    let mut ln = (1.0 + ksum) * 2f64.ln();
    for (i, k) in ks.iter().enumerate() {
        ln += ln_gamma((alpha.exp(i) as f64 + 2.0 * q_to_f64(k) + 1.0) / 2.0);
    }
    ln -= ln_gamma((alpha.degree() as f64 + q_to_f64(&system.mu())) / 2.0);
    Ok(ln.exp())
}

/// `∫ F e^{-2r^a/a} h w_k dx` term by term through `Γ` values, returned
/// per blade.
pub fn exact_integral(measure: &Measure, integrand: &RadialExpr<Q>) -> Result<Vec<f64>> {
    let a = &measure.params.a;
    let lambda = 2.0 / q_to_f64(a);
    let radial = measure.radial_exponent();
    let mut out = vec![0.0; 1 << integrand.dim()];
    for (s, m, c) in integrand.iter() {
        let sph = sphere_moment(&measure.system, m)?;
        let p = s + qi(m.degree() as i64) + &radial;
        let rad = radial_moment(&p, a, lambda)?;
        if sph == 0.0 {
            continue;
        }
        for (b, x) in c.blades() {
            out[b as usize] += q_to_f64(x) * rad * sph;
        }
    }
    Ok(out)
}

/// Quadrature in polar coordinates: generalized Gauss–Laguerre in
/// `u = 2r^a/a` for the radius, an [`AngularRule`] for the sphere.
#[derive(Debug)]
pub struct Grid {
    nr: usize,
    angular: AngularRule,
    radial: std::sync::Mutex<HashMap<u64, Rule>>,
}

impl Grid {
    pub fn new(system: &RootSystem, nr: usize, nangular: usize) -> Result<Self> {
        Ok(Grid { nr, angular: AngularRule::new(system, nangular)?, radial: Default::default() })
    }

    pub fn angular(&self) -> &AngularRule {
        &self.angular
    }

    fn laguerre(&self, alpha: f64) -> Rule {
        let mut cache = self.radial.lock().expect("quadrature cache poisoned");
        cache.entry(alpha.to_bits()).or_insert_with(|| gauss_laguerre(self.nr, alpha)).clone()
    }

    /// `⟨f, g⟩` by quadrature, with `f` and `g` evaluated pointwise.
    pub fn inner_product(&self, measure: &Measure, f: &RadialExpr<Q>, g: &RadialExpr<Q>) -> Result<Vec<f64>> {
        let dim = f.dim();
        if f.is_zero() || g.is_zero() {
            return Ok(vec![0.0; 1 << dim]);
        }
        let a = &measure.params.a;
        if !a.is_positive() {
            return Err(Error::NonPositive("a"));
        }
        let hf = f.homogeneities().into_iter().next().expect("nonzero");
        let hg = g.homogeneities().into_iter().next().expect("nonzero");
        let p0 = &hf + &hg + measure.radial_exponent();
        let s = (&p0 + Q::one()) / a;
        if !s.is_positive() {
            return Err(Error::Divergent(format!("r^{p0} is not integrable at 0")));
        }
        let af = q_to_f64(a);
        let sf = q_to_f64(&s);
        let rule = self.laguerre(sf - 1.0);
        let pref = (sf * (af / 2.0).ln()).exp() / af;
        let (fp, gp) = (f.polar(&hf), g.polar(&hg));
        let mut out = vec![0.0; 1 << dim];
        for (u, wu) in rule.nodes.iter().zip(&rule.weights) {
            let r = (af * u / 2.0).powf(1.0 / af);
            for (xi, wa) in self.angular.nodes.iter().zip(&self.angular.weights) {
                let fv = dense_bar(&fp.eval(xi, r));
                let gv = gp.eval(xi, r);
                let w = pref * wu * wa;
                for (o, v) in out.iter_mut().zip(dense_mul(&fv, &gv)) {
                    *o += w * v;
                }
            }
        }
        Ok(out)
    }
}

/// How an integral is evaluated.
#[derive(Clone, Copy, Debug)]
pub enum IntegrationPath<'a> {
    Exact,
    Grid(&'a Grid),
}

/// `⟨f e^{-r^a/a}, g e^{-r^a/a}⟩` as a dense multivector.
pub fn inner_product(
    measure: &Measure,
    f: &RadialExpr<Q>,
    g: &RadialExpr<Q>,
    path: IntegrationPath<'_>,
) -> Result<Vec<f64>> {
    match path {
        IntegrationPath::Exact => exact_integral(measure, &f.bar().mul(g)),
        IntegrationPath::Grid(grid) => grid.inner_product(measure, f, g),
    }
}

/// `D_i (f e^{-r^a/a}) = (D_i f - (1+c) r^{a/2-1} x_i f) e^{-r^a/a}`, on `f`.
pub fn damped_component(dctx: &DeformedContext, i: usize, f: &RadialExpr<Q>) -> RadialExpr<Q> {
    let p = dctx.params();
    let shift = &p.a / qi(2) - Q::one();
    dctx.component(i, f).sub(&f.mul_x(i).mul_r(&shift).scale_q(&p.one_plus_c()))
}

/// `∫ (D_i f) g h w_k = -∫ f (D_i g) h w_k` for damped scalar monomials of
/// degree at most `max_degree`, with relative tolerance `tol`.
pub fn integration_by_parts_check(
    dctx: &DeformedContext,
    max_degree: u32,
    path: IntegrationPath<'_>,
    tol: f64,
) -> Result<Report> {
    let measure = Measure::new(dctx);
    let dim = dctx.dim();
    let mut rep = Report::new("integration-by-parts");
    rep.push(CheckRecord::compare(
        "radial part of h dx is r^{delta-1}",
        "",
        &measure.radial_exponent(),
        &(dctx.delta() - Q::one()),
    ));
    let inputs = crate::deformed::test_inputs(dim, max_degree, false);
    for (n, f) in inputs.iter().enumerate() {
        for g in &inputs[n..] {
            for i in 0..dim {
                let lhs = inner_product(&measure, &damped_component(dctx, i, f), g, path)?[0];
                let rhs = -inner_product(&measure, f, &damped_component(dctx, i, g), path)?[0];
                let scale = lhs.abs().max(rhs.abs()).max(1.0);
                rep.push(CheckRecord::numeric(
                    format!("<D_{} f, g> = -<f, D_{} g>", i + 1, i + 1),
                    format!("f={f} g={g}"),
                    lhs / scale,
                    rhs / scale,
                    tol,
                ));
            }
        }
    }
    Ok(rep)
}
