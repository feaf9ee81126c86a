//! Kelvin-type substitutions `P`, `Q` relating `𝐃` in the graded case to the
//! Dunkl Dirac operator, and the inversion `I_k` behind the `a = -2` member
//! of the family.

use std::sync::Arc;

use crate::deformed::{test_inputs, DeformedContext};
use crate::dunkl::DunklContext;
use crate::error::{Error, Result};
use crate::fischer::monogenic_basis;
use crate::report::{CheckRecord, Report};
use crate::symalg::{Coefficient, DeformParams, ExactScalar, RadialExpr, Q};

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn half_a(params: &DeformParams) -> Result<Q> {
    let h = &params.a / qi(2);
    if h <= Q::from_integer(0.into()) {
        return Err(Error::NonPositive("a"));
    }
    Ok(h)
}

/// Lifts a rational expression into the ring of `(a/2)`-powers.
pub fn exact(f: &RadialExpr<Q>) -> RadialExpr<ExactScalar> {
    f.lift(|c| ExactScalar::rational(c.clone()))
}

/// `P(r^s p_d) = (a/2)^{(s+d)/a} r^{b + 2s/a + d(2/a-1)} p_d`.
pub fn kelvin_p(params: &DeformParams, f: &RadialExpr<ExactScalar>) -> Result<RadialExpr<ExactScalar>> {
    let h = half_a(params)?;
    let a = &params.a;
    let mut err = None;
    let out = f.map_terms(|s, m, c, out| {
        let d = qi(m.degree().into());
        let factor = ExactScalar::power(&h, &((s + &d) / a));
        let shift = &params.b + qi(2) * s / a + &d * (qi(2) / a - qi(1));
        match factor {
            Ok(k) => out.add(shift, m.clone(), &c.scale(&k)),
            Err(e) => err = Some(e),
        }
    });
    err.map_or(Ok(out), Err)
}

/// `Q(r^s p_d) = (2/a)^{(s+d)/2} r^{-ab/2 + d(a/2-1) + as/2} p_d`.
pub fn kelvin_q(params: &DeformParams, f: &RadialExpr<ExactScalar>) -> Result<RadialExpr<ExactScalar>> {
    let h = half_a(params)?;
    let mut err = None;
    let out = f.map_terms(|s, m, c, out| {
        let d = qi(m.degree().into());
        let factor = ExactScalar::power(&h, &(-(s + &d) / qi(2)));
        let shift = -(&h * &params.b) + &d * (&h - qi(1)) + &h * s;
        match factor {
            Ok(k) => out.add(shift, m.clone(), &c.scale(&k)),
            Err(e) => err = Some(e),
        }
    });
    err.map_or(Ok(out), Err)
}

/// `I_k f(x) = r^{2-μ} f(x/r^2)`, i.e. `r^s p_d ↦ r^{2-μ-s-2d} p_d`.
pub fn inversion_ik<S: Coefficient>(mu: &Q, f: &RadialExpr<S>) -> RadialExpr<S> {
    f.map_terms(|s, m, c, out| {
        let d = qi(m.degree().into());
        out.add(qi(2) - mu - s - qi(2) * d, m.clone(), c);
    })
}

fn require_graded(params: &DeformParams) -> Result<()> {
    if params.is_graded() {
        Ok(())
    } else {
        Err(Error::Invalid("Kelvin intertwining needs c = 2/a - 1".into()))
    }
}

/// `QP = PQ = (2/a)^{b/2}` on one input.
pub fn qp_check(params: &DeformParams, f: &RadialExpr<Q>) -> Result<Report> {
    let h = half_a(params)?;
    let scale = ExactScalar::power(&h, &(-&params.b / qi(2)))?;
    let fe = exact(f);
    let expect = fe.scale(&scale);
    let mut rep = Report::new("kelvin-qp");
    let qp = kelvin_q(params, &kelvin_p(params, &fe)?)?;
    let pq = kelvin_p(params, &kelvin_q(params, &fe)?)?;
    rep.push(CheckRecord::compare("QP f = (2/a)^(b/2) f", f.to_string(), &qp, &expect));
    rep.push(CheckRecord::compare("PQ f = (2/a)^(b/2) f", f.to_string(), &pq, &expect));
    Ok(rep)
}

/// `D_i = (a/2)^{(b-1)/2} Q T_i P` for every component and
/// `𝐃 = (a/2)^{(b-1)/2} Q 𝒟_k P` on monomial×blade inputs up to
/// `max_degree`, plus `QP = PQ = (2/a)^{b/2}` and the vanishing of both
/// sides on shifted monogenics.
pub fn kelvin_intertwine_check(dctx: &DeformedContext, max_degree: u32) -> Result<Report> {
    let params = dctx.params();
    require_graded(params)?;
    let h = half_a(params)?;
    let lead = ExactScalar::power(&h, &((&params.b - qi(1)) / qi(2)))?;
    let dunkl = dctx.dunkl();
    let conjugated = |f: &RadialExpr<ExactScalar>, i: Option<usize>| -> Result<RadialExpr<ExactScalar>> {
        let pf = kelvin_p(params, f)?;
        let inner = match i {
            Some(i) => dunkl.dunkl(i, &pf),
            None => dunkl.dirac(&pf),
        };
        Ok(kelvin_q(params, &inner)?.scale(&lead))
    };
    let mut rep = Report::new("kelvin-intertwining");
    for f in test_inputs(dctx.dim(), max_degree, true) {
        rep.extend(qp_check(params, &f)?);
        let fe = exact(&f);
        for i in 0..dctx.dim() {
            let lhs = dctx.component(i, &fe);
            rep.push(CheckRecord::compare(
                format!("D_{} = (a/2)^((b-1)/2) Q T_{} P", i + 1, i + 1),
                f.to_string(),
                &lhs,
                &conjugated(&fe, Some(i))?,
            ));
        }
        rep.push(CheckRecord::compare(
            "D = (a/2)^((b-1)/2) Q Dirac_k P",
            f.to_string(),
            &dctx.dirac(&fe),
            &conjugated(&fe, None)?,
        ));
    }
    for l in 0..=max_degree {
        let basis = monogenic_basis(dunkl, l);
        for i in 0..basis.len() {
            let g = exact(&basis.shifted(params, i));
            let zero = RadialExpr::zero(dctx.dim());
            rep.push(CheckRecord::compare("D(r^beta M) = 0", g.to_string(), &dctx.dirac(&g), &zero));
            rep.push(CheckRecord::compare("Q Dirac_k P (r^beta M) = 0", g.to_string(), &conjugated(&g, None)?, &zero));
        }
    }
    Ok(rep)
}

/// The member `(a, b, c) = (-2, 2-μ, -2)` of the family.
pub fn minus2_params(mu: &Q) -> Result<DeformParams> {
    DeformParams::new(qi(-2), qi(2) - mu, qi(-2))
}

/// `I_k² = id`, `I_k(1) = r^{2-μ}`, `𝒟_{k,-2} = I_k 𝒟_k I_k` and
/// `𝒟_{k,-2}² = -r⁴ Δ_k` on monomial×blade inputs up to `max_degree`.
pub fn a_minus2_suite(ctx: &Arc<DunklContext>, max_degree: u32) -> Result<Report> {
    let dim = ctx.dim();
    let mu = ctx.system().mu();
    let lowered = DeformedContext::new(ctx.clone(), minus2_params(&mu)?);
    let mut rep = Report::new("a-minus2");
    let one = RadialExpr::<Q>::constant(crate::Multivector::one(dim));
    rep.push(CheckRecord::compare("I_k(1) = r^(2-mu)", "1", &inversion_ik(&mu, &one), &one.mul_r(&(qi(2) - &mu))));
    for f in test_inputs(dim, max_degree, true) {
        let input = f.to_string();
        rep.push(CheckRecord::compare("I_k I_k f = f", input.clone(), &inversion_ik(&mu, &inversion_ik(&mu, &f)), &f));
        let d = lowered.dirac(&f);
        let conj = inversion_ik(&mu, &ctx.dirac(&inversion_ik(&mu, &f)));
        rep.push(CheckRecord::compare("D_(k,-2) = I_k Dirac_k I_k", input.clone(), &d, &conj));
        let square = lowered.dirac(&d);
        let expect = ctx.laplacian(&f).mul_r(&qi(4)).neg();
        rep.push(CheckRecord::compare("D_(k,-2)^2 = -r^4 Laplacian_k", input, &square, &expect));
    }
    Ok(rep)
}
