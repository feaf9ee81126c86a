//! The transform `ℱ_D` in the graded case `c = 2/a - 1`, `k = 0`, where
//! its kernel is an explicit deformed plane wave.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::quadrature::{interval_power_rule, AngularRule};
use crate::clifford::dense_mul;
use crate::deformed::DeformedContext;
use crate::error::{Error, Result};
use crate::fischer::monogenic_basis;
use crate::laguerre::LaguerreFamily;
use crate::reflection::RootSystem;
use crate::report::{CheckRecord, Report};
use crate::symalg::{q_to_f64, DeformParams, RadialExpr, Q};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn length(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

/// `K(x, y) = d (r_x r_y)^{-ab/2} exp(-(2i/a) ⟨x,y⟩ (r_x r_y)^{a/2-1})`.
#[derive(Clone, Debug)]
pub struct KernelSpec {
    params: DeformParams,
    dim: usize,
    a: f64,
    b: f64,
    d: f64,
}

impl KernelSpec {
    pub fn new(params: DeformParams, dim: usize) -> Result<Self> {
        if !params.is_graded() {
            return Err(Error::Invalid("the explicit kernel needs c = 2/a - 1".into()));
        }
        let a = q_to_f64(&params.a);
        if a <= 0.0 {
            return Err(Error::NonPositive("a"));
        }
        let m = dim as f64;
        let d = (2.0 * PI).powf(-m / 2.0) * (2.0 / a).powf(m / 2.0 - 1.0);
        Ok(KernelSpec { b: q_to_f64(&params.b), params, dim, a, d })
    }

    pub fn params(&self) -> &DeformParams {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self) -> f64 {
        self.d
    }

    pub fn eval(&self, x: &[f64], y: &[f64]) -> Complex64 {
        let rho = length(x) * length(y);
        let phase = -(2.0 / self.a) * dot(x, y) * rho.powf(self.a / 2.0 - 1.0);
        self.d * rho.powf(-self.a * self.b / 2.0) * Complex64::from_polar(1.0, phase)
    }

    /// `∇_x log K`, differentiated by hand.
    pub fn log_gradient(&self, x: &[f64], y: &[f64]) -> Vec<Complex64> {
        let (a, b) = (self.a, self.b);
        let r2 = dot(x, x);
        let rho_pow = (length(x) * length(y)).powf(a / 2.0 - 1.0);
        let u = dot(x, y);
        (0..self.dim)
            .map(|j| {
                -a * b / 2.0 * x[j] / r2 - (2.0 / a) * I * (y[j] * rho_pow + u * (a / 2.0 - 1.0) * rho_pow * x[j] / r2)
            })
            .collect()
    }

    /// `|lhs - rhs|` for the `j`-th equation
    /// `(r^{1-a/2}∂_j + b r^{-1-a/2}x_j + (2/a-1) r^{-a/2} x_j ∂_r) K = -(2i/a) y_j r_y^{a/2-1} K`.
    pub fn pde_residual(&self, j: usize, x: &[f64], y: &[f64]) -> f64 {
        let (a, b) = (self.a, self.b);
        let r = length(x);
        let k = self.eval(x, y);
        let grad = self.log_gradient(x, y);
        let d_r: Complex64 = x.iter().zip(&grad).map(|(xi, g)| xi / r * g).sum();
        let lhs = (r.powf(1.0 - a / 2.0) * grad[j]
            + b * r.powf(-1.0 - a / 2.0) * x[j]
            + (2.0 / a - 1.0) * r.powf(-a / 2.0) * x[j] * d_r)
            * k;
        let rhs = -(2.0 / a) * I * y[j] * length(y).powf(a / 2.0 - 1.0) * k;
        (lhs - rhs).norm()
    }

    /// `|(r∂_r + ab/2)K + i⟨x,y⟩(r_x r_y)^{a/2-1} K|`.
    pub fn radial_contraction_residual(&self, x: &[f64], y: &[f64]) -> f64 {
        let k = self.eval(x, y);
        let grad = self.log_gradient(x, y);
        let euler: Complex64 = x.iter().zip(&grad).map(|(xi, g)| xi * g).sum();
        let lhs = (euler + self.a * self.b / 2.0) * k;
        let rhs = -I * dot(x, y) * (length(x) * length(y)).powf(self.a / 2.0 - 1.0) * k;
        (lhs - rhs).norm()
    }
}

/// Largest residual of the kernel system over `points` pairs `(x, y)`,
/// together with the largest radial-contraction residual.
pub fn kernel_pde_residual(spec: &KernelSpec, points: &[(Vec<f64>, Vec<f64>)]) -> (f64, f64) {
    let mut worst = (0.0f64, 0.0f64);
    for (x, y) in points {
        for j in 0..spec.dim {
            worst.0 = worst.0.max(spec.pde_residual(j, x, y));
        }
        worst.1 = worst.1.max(spec.radial_contraction_residual(x, y));
    }
    worst
}

/// Quadrature for `∫ F(x) h(x) dx` on `ℝ^m` in the variable `z = r^{a/2}`,
/// where the measure becomes `(2/a) z^{2b+μ-1} dz dσ`.
#[derive(Clone, Debug)]
pub struct TransformGrid {
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl TransformGrid {
    pub const DEFAULT_NZ: usize = 160;

    /// `z` runs over `[0, z_max]` with `z_max^2 = 70a`, far into the tail of
    /// `e^{-z^2/a}`.
    pub fn new(spec: &KernelSpec, nz: usize, nangular: usize) -> Result<Self> {
        Self::weighted(spec.a, spec.b, &RootSystem::trivial(spec.dim), 70.0, nz, nangular)
    }

    /// Grid for `∫ F h w_k dx` with `h = r^{ab-(1-a/2)μ}`, the measure of the
    /// graded case, cut off at `z_max^2 = tail · a`.
    pub fn weighted(a: f64, b: f64, system: &RootSystem, tail: f64, nz: usize, nangular: usize) -> Result<Self> {
        let mu = q_to_f64(&system.mu());
        let z_max = (tail * a).sqrt();
        let radial = interval_power_rule(nz, z_max, mu - 1.0);
        let angular = AngularRule::new(system, nangular)?;
        let mut out = TransformGrid { points: Vec::new(), weights: Vec::new() };
        for (z, wz) in radial.nodes.iter().zip(&radial.weights) {
            let r = z.powf(2.0 / a);
            let w = wz * (2.0 / a) * z.powf(2.0 * b);
            for (xi, wa) in angular.nodes.iter().zip(&angular.weights) {
                out.points.push(xi.iter().map(|v| r * v).collect());
                out.weights.push(w * wa);
            }
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Values of `f e^{-r^a/a}` at the grid points.
    pub fn sample_damped(&self, f: &RadialExpr<Q>, a: f64) -> Vec<Vec<Complex64>> {
        self.points
            .iter()
            .map(|x| {
                let damp = (-length(x).powf(a) / a).exp();
                f.eval(x).into_iter().map(|v| Complex64::new(v * damp, 0.0)).collect()
            })
            .collect()
    }
}

/// `ℱ_D f(y) = ∫ K(x, y) f(x) h(x) dx` at every target, from samples of `f`
/// on the grid. Values are dense multivectors.
pub fn fourier_apply(
    spec: &KernelSpec,
    grid: &TransformGrid,
    samples: &[Vec<Complex64>],
    targets: &[Vec<f64>],
) -> Vec<Vec<Complex64>> {
    let nblades = samples.first().map_or(1 << spec.dim, Vec::len);
    targets
        .iter()
        .map(|y| {
            let mut acc = vec![Complex64::new(0.0, 0.0); nblades];
            for ((x, w), f) in grid.points.iter().zip(&grid.weights).zip(samples) {
                let kw = spec.eval(x, y) * w;
                for (o, v) in acc.iter_mut().zip(f) {
                    *o += kw * v;
                }
            }
            acc
        })
        .collect()
}

/// Target points for eigenvalue probes, away from the origin.
pub fn probe_targets(dim: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for (i, r) in [0.45, 0.8, 1.2].into_iter().enumerate() {
        for (j, t) in [0.3f64, 1.9, 4.1].into_iter().enumerate() {
            let mut y = vec![r * t.cos(), r * t.sin()];
            y.resize(dim, 0.0);
            if dim == 1 {
                y[0] = if (i + j) % 2 == 0 { r } else { -r };
            } else if dim >= 3 {
                y[2] = 0.3 * (j as f64) - 0.2;
            }
            out.push(y);
        }
    }
    out
}

/// `(-i)^n`.
pub fn minus_i_pow(n: u32) -> Complex64 {
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, -1.0), Complex64::new(-1.0, 0.0), I][(n % 4) as usize]
}

/// One row of the eigenvalue table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EigenRow {
    pub t: u32,
    pub l: u32,
    pub expected_eigenvalue: [f64; 2],
    pub measured: [f64; 2],
    pub rel_err: f64,
    pub runtime_ms: f64,
}

/// Least-squares eigenvalue of `ℱ_D` on `φ_{t,ℓ}` at the probe targets,
/// and `‖ℱ_D φ - (-i)^{t+ℓ} φ‖ / ‖φ‖` over the same points.
pub fn transform_eigen(
    dctx: &DeformedContext,
    grid: &TransformGrid,
    spec: &KernelSpec,
    t_max: u32,
    l_max: u32,
    total_max: Option<u32>,
) -> Result<Vec<EigenRow>> {
    let targets = probe_targets(dctx.dim());
    let mut rows = Vec::new();
    for l in 0..=l_max {
        let basis = monogenic_basis(dctx.dunkl(), l);
        let mut fam = LaguerreFamily::new(dctx.clone(), l, basis.element(0))?;
        for t in 0..=t_max {
            if total_max.is_some_and(|n| t + l > n) {
                continue;
            }
            let start = Instant::now();
            let psi = fam.psi(t).clone();
            let samples = grid.sample_damped(&psi, spec.a);
            let image = fourier_apply(spec, grid, &samples, &targets);
            let exact: Vec<Vec<Complex64>> = grid_free_values(&psi, &targets, spec.a);
            let expected = minus_i_pow(t + l);
            let (mut num, mut den, mut err) = (Complex64::new(0.0, 0.0), 0.0, 0.0);
            for (fy, py) in image.iter().zip(&exact) {
                for (u, v) in fy.iter().zip(py) {
                    num += v.conj() * u;
                    den += v.norm_sqr();
                    err += (u - expected * v).norm_sqr();
                }
            }
            let measured = num / den;
            rows.push(EigenRow {
                t,
                l,
                expected_eigenvalue: [expected.re, expected.im],
                measured: [measured.re, measured.im],
                rel_err: (err / den).sqrt(),
                runtime_ms: start.elapsed().as_secs_f64() * 1e3,
            });
        }
    }
    Ok(rows)
}

fn grid_free_values(f: &RadialExpr<Q>, targets: &[Vec<f64>], a: f64) -> Vec<Vec<Complex64>> {
    let probe = TransformGrid { points: targets.to_vec(), weights: vec![0.0; targets.len()] };
    probe.sample_damped(f, a)
}

/// Eigenvalue table as a report with relative tolerance `tol`.
pub fn transform_eigen_check(rows: &[EigenRow], tol: f64) -> Report {
    let mut rep = Report::new("transform-eigen");
    for row in rows {
        rep.push(CheckRecord::numeric(
            "F_D(phi_t,l) = (-i)^(t+l) phi_t,l",
            format!("t={} l={}", row.t, row.l),
            row.rel_err,
            0.0,
            tol,
        ));
    }
    rep
}

/// Left product of a complex multivector by the real vector `v`.
fn vector_times(v: &[f64], f: &[Complex64]) -> Vec<Complex64> {
    let mut lhs = vec![Complex64::new(0.0, 0.0); f.len()];
    for (i, vi) in v.iter().enumerate() {
        lhs[1 << i] = Complex64::new(*vi, 0.0);
    }
    dense_mul(&lhs, f)
}

/// `ℱ_D(𝐃f) = i(1+c) x_a ℱ_D(f)` on damped inputs `f = g e^{-r^a/a}`,
/// using `𝐃(g e^{-r^a/a}) = (𝐃g - (1+c) x_a g) e^{-r^a/a}`. The grid is
/// spectral only for `g` in the span of `x_a^t r^{β_ℓ} M_ℓ`, which is smooth
/// in `z = r^{a/2}`.
pub fn eigen_relations_check(
    dctx: &DeformedContext,
    grid: &TransformGrid,
    spec: &KernelSpec,
    inputs: &[RadialExpr<Q>],
    tol: f64,
) -> Result<Report> {
    let mut rep = Report::new("fourier-eigen-relations");
    let a = spec.a;
    let opc = q_to_f64(&dctx.params().one_plus_c());
    let targets = probe_targets(dctx.dim());
    let gauged = |g: &RadialExpr<Q>| dctx.dirac(g).sub(&dctx.x_a(g).scale_q(&dctx.params().one_plus_c()));
    for g in inputs {
        let lhs = fourier_apply(spec, grid, &grid.sample_damped(&gauged(g), a), &targets);
        let fg = fourier_apply(spec, grid, &grid.sample_damped(g, a), &targets);
        let (mut err, mut scale) = (0.0, 0.0);
        for ((l, f), y) in lhs.iter().zip(&fg).zip(&targets) {
            let xa: Vec<f64> = y.iter().map(|v| v * length(y).powf(a / 2.0 - 1.0)).collect();
            let rhs: Vec<Complex64> = vector_times(&xa, f).into_iter().map(|v| I * opc * v).collect();
            for (u, v) in l.iter().zip(&rhs) {
                err += (u - v).norm_sqr();
                scale += v.norm_sqr().max(u.norm_sqr());
            }
        }
        let rel = if scale > 0.0 { (err / scale).sqrt() } else { err.sqrt() };
        rep.push(CheckRecord::numeric("F_D(D f) = i(1+c) x_a F_D(f)", g.to_string(), rel, 0.0, tol));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::dunkl::DunklContext;
    use crate::symalg::q;

    fn spec(a: i64, b: Q, m: usize) -> (DeformedContext, KernelSpec) {
        let p = DeformParams::graded(q(a, 1), b).unwrap();
        let d = DeformedContext::new(Arc::new(DunklContext::new(RootSystem::trivial(m))), p.clone());
        (d, KernelSpec::new(p, m).unwrap())
    }

    #[test]
    fn classical_plane_wave() {
        let (_, s) = spec(2, q(0, 1), 2);
        let (x, y) = ([0.3, -1.1], [0.7, 0.2]);
        let expect = Complex64::from_polar(1.0 / (2.0 * PI), -dot(&x, &y));
        assert!((s.eval(&x, &y) - expect).norm() < 1e-15);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let (_, s) = spec(4, q(1, 1), 2);
        let (x, y) = (vec![0.6, -0.4], vec![0.9, 1.3]);
        let grad = s.log_gradient(&x, &y);
        let k = s.eval(&x, &y);
        for j in 0..2 {
            let h = 1e-6;
            let (mut xp, mut xm) = (x.clone(), x.clone());
            xp[j] += h;
            xm[j] -= h;
            let fd = (s.eval(&xp, &y) - s.eval(&xm, &y)) / (2.0 * h);
            assert!((fd - grad[j] * k).norm() < 1e-7 * k.norm().max(1.0));
        }
    }

    #[test]
    fn unimodular_phase() {
        let (_, s) = spec(4, q(1, 2), 3);
        let (x, y) = ([0.3, 0.5, -0.2], [1.0, -0.7, 0.4]);
        let rho = length(&x) * length(&y);
        // ab/2 = 1
        assert!((s.eval(&x, &y).norm() * rho - s.constant()).abs() < 1e-14);
    }

    #[test]
    fn rejects_ungraded() {
        let p = DeformParams::new(q(4, 1), q(0, 1), q(1, 3)).unwrap();
        assert!(KernelSpec::new(p, 2).is_err());
    }

    #[test]
    fn ground_state_is_fixed() {
        let (d, s) = spec(4, q(1, 2), 2);
        let g = TransformGrid::new(&s, 120, 128).unwrap();
        let rows = transform_eigen(&d, &g, &s, 0, 0, None).unwrap();
        assert!(rows[0].rel_err < 1e-8, "{rows:?}");
    }

    #[test]
    fn dirac_goes_to_vector_multiplication() {
        let (d, s) = spec(4, q(0, 1), 2);
        let g = TransformGrid::new(&s, 120, 128).unwrap();
        let mut inputs = Vec::new();
        for l in 0..2 {
            let m = monogenic_basis(d.dunkl(), l).element(0);
            let fam = LaguerreFamily::new(d.clone(), l, m).unwrap();
            inputs.push(fam.tower(2).add(&fam.tower(1).scale_q(&q(-3, 2))).add(&fam.tower(0)));
        }
        let rep = eigen_relations_check(&d, &g, &s, &inputs, 1e-8).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    }
}
