//! Numerical orthogonality of the damped Clifford–Laguerre functions.

use serde::{Deserialize, Serialize};

use super::measure::{sphere_moment, Grid, Measure};
use crate::deformed::DeformedContext;
use crate::error::Result;
use crate::fischer::monogenic_basis;
use crate::laguerre::{LaguerreFamily, NormConvention};
use crate::report::{CheckRecord, Report};
use crate::symalg::{q_to_f64, RadialExpr, Q};

/// `∫_S M̄ M w_k dσ` per blade, in closed form when available and by the
/// grid's sphere rule otherwise.
pub fn sphere_norm(measure: &Measure, grid: &Grid, m: &RadialExpr<Q>) -> Vec<f64> {
    let prod = m.bar().mul(m);
    closed_sphere_integral(measure, &prod).unwrap_or_else(|_| {
        let prod = prod.polar(&Q::from_integer(0.into()));
        let mut acc = vec![0.0; 1 << m.dim()];
        for (xi, w) in grid.angular().nodes.iter().zip(&grid.angular().weights) {
            for (o, v) in acc.iter_mut().zip(prod.eval(xi, 1.0)) {
                *o += w * v;
            }
        }
        acc
    })
}

/// Integral over the unit sphere of a homogeneous polynomial expression.
fn closed_sphere_integral(measure: &Measure, p: &RadialExpr<Q>) -> Result<Vec<f64>> {
    let mut out = vec![0.0; 1 << p.dim()];
    for (_, mono, c) in p.iter() {
        let v = sphere_moment(measure.system(), mono)?;
        for (b, x) in c.blades() {
            out[b as usize] += q_to_f64(x) * v;
        }
    }
    Ok(out)
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// One Gram entry `⟨φ_{t,ℓ}, φ_{s,m}⟩`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GramEntry {
    pub t: u32,
    pub l: u32,
    pub s: u32,
    pub m: u32,
    pub measured: Vec<f64>,
    pub expected: Vec<f64>,
    pub rel_err: f64,
}

/// Gram entries of `φ_{t,ℓ}` for `t ≤ t_max`, `ℓ ≤ l_max`, one monogenic
/// per degree, against `c(t,ℓ) δ_{ts} δ_{ℓm} ∫_S M̄ M w_k`.
pub fn gram_table(
    dctx: &DeformedContext,
    grid: &Grid,
    t_max: u32,
    l_max: u32,
    convention: NormConvention,
) -> Result<Vec<GramEntry>> {
    let measure = Measure::new(dctx);
    let mut fams = Vec::new();
    for l in 0..=l_max {
        let basis = monogenic_basis(dctx.dunkl(), l);
        let mut fam = LaguerreFamily::new(dctx.clone(), l, basis.element(0))?;
        let sph = sphere_norm(&measure, grid, fam.monogenic());
        for t in 0..=t_max {
            let psi = fam.psi(t).clone();
            let c = fam.norm_constant(t, convention).value();
            fams.push((t, l, psi, sph.iter().map(|x| c * x).collect::<Vec<f64>>()));
        }
    }
    let mut out = Vec::new();
    for (t, l, f, diag_f) in &fams {
        for (s, m, g, diag_g) in &fams {
            let measured = grid.inner_product(&measure, f, g)?;
            let diagonal = t == s && l == m;
            let expected = if diagonal { diag_f.clone() } else { vec![0.0; measured.len()] };
            let scale = if diagonal { norm(diag_f) } else { (norm(diag_f) * norm(diag_g)).sqrt() };
            let diff: Vec<f64> = measured.iter().zip(&expected).map(|(x, y)| x - y).collect();
            out.push(GramEntry { t: *t, l: *l, s: *s, m: *m, rel_err: norm(&diff) / scale, measured, expected });
        }
    }
    Ok(out)
}

/// Diagonal entries within `diag_tol` relative, off-diagonal ones below
/// `off_tol` times the geometric mean of the two diagonal scales.
pub fn orthogonality_check(
    dctx: &DeformedContext,
    grid: &Grid,
    t_max: u32,
    l_max: u32,
    convention: NormConvention,
    diag_tol: f64,
    off_tol: f64,
) -> Result<Report> {
    let table = gram_table(dctx, grid, t_max, l_max, convention)?;
    let mut rep = Report::new("orthogonality");
    for e in table {
        let diagonal = e.t == e.s && e.l == e.m;
        let tol = if diagonal { diag_tol } else { off_tol };
        let rel = if diagonal { "<phi_t, phi_t> = c(t,l) int_S M^bar M" } else { "<phi_t,l, phi_s,m> = 0" };
        rep.push(CheckRecord::numeric(rel, format!("t={} l={} s={} m={}", e.t, e.l, e.s, e.m), e.rel_err, 0.0, tol));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::dunkl::DunklContext;
    use crate::reflection::{Family, RootSystem};
    use crate::symalg::{q, DeformParams};

    fn ctx(system: RootSystem, a: i64) -> DeformedContext {
        let p = DeformParams::graded(q(a, 1), q(1, 3)).unwrap();
        DeformedContext::new(Arc::new(DunklContext::new(system)), p)
    }

    #[test]
    fn integrated_constant_matches_at_a4() {
        let d = ctx(RootSystem::trivial(2), 4);
        let grid = Grid::new(d.dunkl().system(), 40, 128).unwrap();
        let rep = orthogonality_check(&d, &grid, 2, 1, NormConvention::Integrated, 1e-9, 1e-9).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        let half = gram_table(&d, &grid, 0, 0, NormConvention::Half).unwrap();
        assert!((half[0].rel_err - 0.5).abs() < 1e-9);
    }

    #[test]
    fn weighted_circle() {
        let s = RootSystem::builtin(Family::Z2, 2, &[q(1, 2), q(1, 4)]).unwrap();
        let d = ctx(s, 2);
        let grid = Grid::new(d.dunkl().system(), 40, 128).unwrap();
        let rep = orthogonality_check(&d, &grid, 1, 1, NormConvention::Integrated, 1e-8, 1e-8).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    }
}
