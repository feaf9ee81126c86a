//! The deformed vector variable `x_a = r^{a/2-1} x` and the deformed Dirac
//! operator `𝐃 = r^{1-a/2} 𝒟_k + b r^{-a/2-1} x + c r^{-a/2-1} x 𝔼`.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::clifford::Multivector;
use crate::dunkl::DunklContext;
use crate::error::Result;
use crate::report::{CheckRecord, Report};
use crate::symalg::{Coefficient, DeformParams, Monomial, RadialBuilder, RadialExpr, Q};

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Dunkl operators together with a parameter tuple `(a, b, c)`.
#[derive(Clone)]
pub struct DeformedContext {
    dunkl: Arc<DunklContext>,
    params: DeformParams,
}

impl DeformedContext {
    pub fn new(dunkl: Arc<DunklContext>, params: DeformParams) -> Self {
        DeformedContext { dunkl, params }
    }

    pub fn dunkl(&self) -> &DunklContext {
        &self.dunkl
    }

    pub fn dunkl_arc(&self) -> Arc<DunklContext> {
        self.dunkl.clone()
    }

    pub fn params(&self) -> &DeformParams {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.dunkl.dim()
    }

    pub fn mu(&self) -> Q {
        self.dunkl.system().mu()
    }

    pub fn delta(&self) -> Q {
        self.params.delta(&self.mu())
    }

    /// `x_a f = r^{a/2-1} x f`.
    pub fn x_a<S: Coefficient>(&self, f: &RadialExpr<S>) -> RadialExpr<S> {
        f.mul_vector_left().mul_r(&(&self.params.a / qi(2) - Q::one()))
    }

    /// `x_a^2 f = -r^a f`.
    pub fn x_a_squared<S: Coefficient>(&self, f: &RadialExpr<S>) -> RadialExpr<S> {
        f.mul_r(&self.params.a).neg()
    }

    /// `𝐃 f`.
    pub fn dirac<S: Coefficient>(&self, f: &RadialExpr<S>) -> RadialExpr<S> {
        let l = self.params.l();
        let lm2 = &l - qi(2);
        let mut b = RadialBuilder::new(self.dim());
        b.add_expr(&self.dunkl.dirac(f).mul_r(&l));
        let xf = f.mul_vector_left();
        if !self.params.b.is_zero() {
            b.add_expr(&xf.scale_q(&self.params.b).mul_r(&lm2));
        }
        if !self.params.c.is_zero() {
            b.add_expr(&f.euler().mul_vector_left().scale_q(&self.params.c).mul_r(&lm2));
        }
        b.finish()
    }

    /// The scalar component `D_i = r^l T_i + b r^{l-2} x_i + c r^{l-1} x_i ∂_r`,
    /// so that `𝐃 = Σ e_i D_i`.
    pub fn component<S: Coefficient>(&self, i: usize, f: &RadialExpr<S>) -> RadialExpr<S> {
        let l = self.params.l();
        let mut b = RadialBuilder::new(self.dim());
        b.add_expr(&self.dunkl.dunkl(i, f).mul_r(&l));
        if !self.params.b.is_zero() {
            b.add_expr(&f.mul_x(i).scale_q(&self.params.b).mul_r(&(&l - qi(2))));
        }
        if !self.params.c.is_zero() {
            b.add_expr(&f.partial_r().mul_x(i).scale_q(&self.params.c).mul_r(&(&l - Q::one())));
        }
        b.finish()
    }

    pub fn dirac_squared<S: Coefficient>(&self, f: &RadialExpr<S>) -> RadialExpr<S> {
        self.dirac(&self.dirac(f))
    }

    /// `𝐃^2` assembled from its expansion in `r^{2-a}Δ_k`, `∂_r`, `∂_r^2`,
    /// `Σ x_i T_i` and the bivector part `Σ_{i<j} e_i e_j (x_i T_j - x_j T_i)`.
    pub fn dirac_squared_closed<S: Coefficient>(&self, f: &RadialExpr<S>) -> RadialExpr<S> {
        let DeformParams { a, b, c } = &self.params;
        let mu = self.mu();
        let dim = self.dim();
        let one = Q::one();
        let half_a = a / qi(2);
        let kappa = &one - &half_a * (&one + c);
        let t: Vec<_> = self.dunkl.dunkl_all(f);
        let mut out = RadialBuilder::new(dim);
        out.add_expr(&self.dunkl.laplacian(f).mul_r(&(qi(2) - a)).neg());
        let c0 = b * (b - &one - &half_a * (&one + c) + &mu);
        out.add_expr(&f.mul_r(&-a.clone()).scale_q(&-c0));
        let c1 = qi(2) * b * c + (c * c + c) * (&one - &half_a) + c * &mu + qi(2) * b;
        let dr = f.partial_r();
        out.add_expr(&dr.mul_r(&(&one - a)).scale_q(&-c1));
        let c2 = c * c + qi(2) * c;
        out.add_expr(&dr.partial_r().mul_r(&(qi(2) - a)).scale_q(&-c2));
        let mut xt = RadialBuilder::new(dim);
        for (i, ti) in t.iter().enumerate() {
            xt.add_expr(&ti.mul_x(i));
        }
        out.add_expr(&xt.finish().mul_r(&-a.clone()).scale_q(&-kappa.clone()));
        let mut biv = RadialBuilder::new(dim);
        for i in 0..dim {
            for j in i + 1..dim {
                let eij = Multivector::e(dim, i + 1).mul(&Multivector::e(dim, j + 1));
                biv.add_expr(&t[j].mul_x(i).sub(&t[i].mul_x(j)).left_mul_mv(&eij));
            }
        }
        out.add_expr(&biv.finish().mul_r(&-a.clone()).scale_q(&kappa));
        out.finish()
    }

    /// `(𝔼 + δ/2) f`.
    pub fn shifted_euler<S: Coefficient>(&self, f: &RadialExpr<S>) -> RadialExpr<S> {
        f.euler().add(&f.scale_q(&(self.delta() / qi(2))))
    }

    /// `Σ_i D_i^2 f`.
    pub fn component_square_sum<S: Coefficient>(&self, f: &RadialExpr<S>) -> RadialExpr<S> {
        let mut b = RadialBuilder::new(self.dim());
        for i in 0..self.dim() {
            b.add_expr(&self.component(i, &self.component(i, f)));
        }
        b.finish()
    }

    /// `D_i D_j - D_j D_i` applied to `f`.
    pub fn component_commutator<S: Coefficient>(&self, i: usize, j: usize, f: &RadialExpr<S>) -> RadialExpr<S> {
        self.component(i, &self.component(j, f)).sub(&self.component(j, &self.component(i, f)))
    }

    /// The reference operator `-½ [x_a, r^{2-a} Δ_k]`.
    pub fn reference_dirac<S: Coefficient>(&self, f: &RadialExpr<S>) -> RadialExpr<S> {
        let e = qi(2) - &self.params.a;
        let lhs = self.x_a(&self.dunkl.laplacian(f).mul_r(&e));
        let rhs = self.dunkl.laplacian(&self.x_a(f)).mul_r(&e);
        lhs.sub(&rhs).scale_q(&Q::new((-1).into(), 2.into()))
    }
}

/// Parameters `(b, c)` for which `𝐃` coincides with `-½ [x_a, r^{2-a} Δ_k]`.
pub fn reference_params(a: &Q, mu: &Q) -> Result<DeformParams> {
    let half_a = a / qi(2);
    let b = (&half_a - Q::one()) * (&half_a + mu - Q::one()) / qi(2);
    let c = &half_a - Q::one();
    DeformParams::new(a.clone(), b, c)
}

/// Monomial times blade test inputs of total degree at most `max_degree`.
pub fn test_inputs(dim: usize, max_degree: u32, with_blades: bool) -> Vec<RadialExpr<Q>> {
    let blades: Vec<u32> = if with_blades { (0..1u32 << dim).collect() } else { vec![0] };
    let mut out = Vec::new();
    for d in 0..=max_degree {
        for m in Monomial::all_of_degree(dim, d) {
            for &bl in &blades {
                out.push(RadialExpr::term(Q::zero(), m.clone(), Multivector::blade(dim, bl, Q::one())));
            }
        }
    }
    out
}

/// Outcome of testing pairwise commutation of the components `D_i`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CommuteResult {
    pub commute: bool,
    /// `c = 2/a - 1`, the predicted criterion.
    pub predicted: bool,
    pub witness: Option<CommuteWitness>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CommuteWitness {
    pub i: usize,
    pub j: usize,
    pub input: String,
    pub commutator: String,
}

/// Tests `D_i D_j = D_j D_i` on scalar monomials up to `max_degree`.
pub fn components_commute(ctx: &DeformedContext, max_degree: u32) -> CommuteResult {
    let dim = ctx.dim();
    let predicted = ctx.params().is_graded();
    for f in test_inputs(dim, max_degree, false) {
        for i in 0..dim {
            for j in i + 1..dim {
                let comm = ctx.component_commutator(i, j, &f);
                if !comm.is_zero() {
                    let witness =
                        CommuteWitness { i: i + 1, j: j + 1, input: f.to_string(), commutator: comm.to_string() };
                    return CommuteResult { commute: false, predicted, witness: Some(witness) };
                }
            }
        }
    }
    CommuteResult { commute: true, predicted, witness: None }
}

/// Verifies the eight defining relations of `osp(1|2)` on `f`:
/// `{x_a, 𝐃} = -2(1+c)(𝔼 + δ/2)`, `[x_a^2, 𝐃] = a(1+c) x_a`,
/// `[𝐃^2, x_a] = -a(1+c) 𝐃`, `[𝐃^2, x_a^2] = 2a(1+c)^2 (𝔼 + δ/2)` and the
/// grading by `𝔼 + δ/2` with weights `-a/2, a/2, -a, a`.
pub fn osp_relations_check<S: Coefficient>(ctx: &DeformedContext, f: &RadialExpr<S>) -> Report {
    let DeformParams { a, c, .. } = ctx.params().clone();
    let opc = Q::one() + &c;
    let input = f.to_string();
    let df = ctx.dirac(f);
    let ddf = ctx.dirac(&df);
    let xf = ctx.x_a(f);
    let dxf = ctx.dirac(&xf);
    let ddxf = ctx.dirac(&dxf);
    let x2f = ctx.x_a_squared(f);
    let dx2f = ctx.dirac(&x2f);
    let ddx2f = ctx.dirac(&dx2f);
    let ef = ctx.shifted_euler(f);
    let half_a = &a / qi(2);
    let mut rep = Report::new("osp-relations");
    let mut push = |name: &str, lhs: RadialExpr<S>, rhs: RadialExpr<S>| {
        rep.push(CheckRecord::compare(name, &input, &lhs, &rhs));
    };
    push("{x_a, D} = -2(1+c)(E + delta/2)", ctx.x_a(&df).add(&dxf), ef.scale_q(&(qi(-2) * &opc)));
    push("[x_a^2, D] = a(1+c) x_a", ctx.x_a_squared(&df).sub(&dx2f), xf.scale_q(&(&a * &opc)));
    push("[D^2, x_a] = -a(1+c) D", ddxf.sub(&ctx.x_a(&ddf)), df.scale_q(&(-&a * &opc)));
    push(
        "[D^2, x_a^2] = 2a(1+c)^2 (E + delta/2)",
        ddx2f.sub(&ctx.x_a_squared(&ddf)),
        ef.scale_q(&(qi(2) * &a * &opc * &opc)),
    );
    push("[E + delta/2, D] = -(a/2) D", ctx.shifted_euler(&df).sub(&ctx.dirac(&ef)), df.scale_q(&-half_a.clone()));
    push("[E + delta/2, x_a] = (a/2) x_a", ctx.shifted_euler(&xf).sub(&ctx.x_a(&ef)), xf.scale_q(&half_a));
    push(
        "[E + delta/2, D^2] = -a D^2",
        ctx.shifted_euler(&ddf).sub(&ctx.dirac(&ctx.dirac(&ef))),
        ddf.scale_q(&-a.clone()),
    );
    push("[E + delta/2, x_a^2] = a x_a^2", ctx.shifted_euler(&x2f).sub(&ctx.x_a_squared(&ef)), x2f.scale_q(&a));
    rep
}

/// A parameter tuple for which `Σ D_i^2 = r^{2-a} Δ_k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FactorizationTuple {
    #[serde(with = "crate::symalg::qser")]
    pub a: Q,
    #[serde(with = "crate::symalg::qser")]
    pub b: Q,
    #[serde(with = "crate::symalg::qser")]
    pub c: Q,
    #[serde(with = "crate::symalg::qser")]
    pub l: Q,
}

impl FactorizationTuple {
    pub fn new(a: Q, b: Q, c: Q) -> Self {
        let l = Q::one() - &a / qi(2);
        FactorizationTuple { a, b, c, l }
    }

    pub fn params(&self) -> Result<DeformParams> {
        DeformParams::new(self.a.clone(), self.b.clone(), self.c.clone())
    }
}

/// Solves the coefficient system of `Σ D_i^2 - r^{2-a} Δ_k = 0` for the
/// Dunkl dimension `mu` in ambient dimension `m`.
///
/// Writing `Σ D_i^2` in terms of `Δ_k`, `∂_r`, `∂_r^2` and `Σ x_i T_i` gives
/// `c(c+2) = 0`, `b(b + c(l-1) + μ + l - 2) = 0` and, when `k ≠ 0`,
/// `2b + c(l+μ) + l c^2 + 2bc = 0` together with `l + cl - c = 0`. For
/// `k = 0` the operator `Σ x_i T_i` is the Euler operator and the last two
/// merge into `2b + l + c(2l + m - 1) + l c^2 + 2bc = 0`.
pub fn factorization_classify(m: usize, mu: &Q, k_zero: bool) -> Vec<FactorizationTuple> {
    let one = Q::one();
    let mut out = Vec::new();
    for c in [Q::zero(), qi(-2)] {
        // linear constraint α l + β b + γ = 0 from the ∂_r coefficient
        let (alpha, beta, gamma) = if k_zero {
            (&one + qi(2) * &c + &c * &c, qi(2) + qi(2) * &c, &c * (Q::from_integer(m.into()) - &one))
        } else {
            (&c + &c * &c, qi(2) + qi(2) * &c, &c * mu)
        };
        let b0 = &c - mu + qi(2);
        let b1 = -(&one + &c);
        let mut candidates: Vec<(Q, Q)> = Vec::new();
        if k_zero {
            // branch b = 0
            if !alpha.is_zero() {
                candidates.push((Q::zero(), -&gamma / &alpha));
            }
            // branch b = -(c(l-1) + μ + l - 2) = b0 + b1 l, substituted into the linear constraint
            let denom = &alpha + &beta * &b1;
            if !denom.is_zero() {
                let l = -(&beta * &b0 + &gamma) / &denom;
                candidates.push((&b0 + &b1 * &l, l));
            }
        } else {
            // l + cl - c = 0 fixes l; both branches for b must then meet the linear constraint
            let l = &c / (&one + &c);
            for b in [Q::zero(), &b0 + &b1 * &l] {
                if (&alpha * &l + &beta * &b + &gamma).is_zero() {
                    candidates.push((b, l.clone()));
                }
            }
        }
        for (b, l) in candidates {
            let a = qi(2) * (&one - &l);
            if a.is_zero() {
                continue;
            }
            let t = FactorizationTuple { a, b, c: c.clone(), l };
            if !out.contains(&t) {
                out.push(t);
            }
        }
    }
    out.sort();
    out
}

/// Directly compares `Σ D_i^2 f` with `r^{2-a} Δ_k f` on the given inputs.
pub fn factorization_check(dunkl: &Arc<DunklContext>, params: &DeformParams, inputs: &[RadialExpr<Q>]) -> Report {
    let ctx = DeformedContext::new(dunkl.clone(), params.clone());
    let mut rep = Report::new("factorization");
    let rel = format!("sum D_i^2 = r^(2-a) Delta_k at (a,b,c) = ({}, {}, {})", params.a, params.b, params.c);
    for f in inputs {
        let lhs = ctx.component_square_sum(f);
        let rhs = dunkl.laplacian(f).mul_r(&(qi(2) - &params.a));
        rep.push(CheckRecord::compare(rel.clone(), f.to_string(), &lhs, &rhs));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reflection::{Family, RootSystem};
    use crate::symalg::q;

    fn ctx(family: Family, dim: usize, k: &[Q], a: Q, b: Q, c: Q) -> DeformedContext {
        let d = Arc::new(DunklContext::new(RootSystem::builtin(family, dim, k).unwrap()));
        DeformedContext::new(d, DeformParams::new(a, b, c).unwrap())
    }

    #[test]
    fn classical_dirac_squares_to_minus_laplacian() {
        let c = ctx(Family::Z2, 2, &[q(1, 2), q(1, 3)], q(2, 1), q(0, 1), q(0, 1));
        for f in test_inputs(2, 3, true) {
            assert_eq!(c.dirac_squared(&f), c.dunkl().laplacian(&f).neg());
        }
    }

    #[test]
    fn dirac_is_sum_of_components() {
        let c = ctx(Family::B, 2, &[q(1, 2), q(1, 3)], q(4, 3), q(1, 5), q(-1, 3));
        for f in test_inputs(2, 2, true) {
            let mut b = RadialBuilder::new(2);
            for i in 0..2 {
                b.add_expr(&c.component(i, &f).left_mul_mv(&Multivector::e(2, i + 1)));
            }
            assert_eq!(b.finish(), c.dirac(&f));
        }
    }

    #[test]
    fn closed_square_matches_iterated() {
        let c = ctx(Family::A, 3, &[q(1, 3)], q(3, 2), q(1, 4), q(2, 5));
        for f in test_inputs(3, 2, false) {
            assert_eq!(c.dirac_squared_closed(&f), c.dirac_squared(&f), "input {f}");
        }
    }

    #[test]
    fn reference_operator_matches_ansatz() {
        let d = Arc::new(DunklContext::new(RootSystem::builtin(Family::Z2, 2, &[q(1, 2), q(1, 4)]).unwrap()));
        let a = q(2, 3);
        let p = reference_params(&a, &d.system().mu()).unwrap();
        let c = DeformedContext::new(d, p);
        for f in test_inputs(2, 2, true) {
            assert_eq!(c.reference_dirac(&f), c.dirac(&f));
        }
    }

    #[test]
    fn classifier_general_k_has_two_tuples() {
        let mu = q(5, 1);
        let t = factorization_classify(3, &mu, false);
        assert_eq!(
            t,
            vec![
                FactorizationTuple::new(q(-2, 1), q(-3, 1), q(-2, 1)),
                FactorizationTuple::new(q(2, 1), q(0, 1), q(0, 1))
            ]
        );
    }
}
