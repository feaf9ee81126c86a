//! Dunkl harmonics and monogenics, their radially shifted versions and the
//! decomposition of functions into `x_a`-towers over shifted monogenics.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::clifford::{blade_product_sign, Multivector};
use crate::deformed::DeformedContext;
use crate::dunkl::DunklContext;
use crate::error::{Error, Result};
use crate::linalg;
use crate::report::{CheckRecord, Report};
use crate::symalg::{DeformParams, Monomial, Poly, RadialExpr, RadialTermJson, ScalarPoly, Q};

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim 𝒫_ℓ` in `m` variables.
pub fn poly_space_dim(m: usize, ell: u32) -> usize {
    binomial(ell as u64 + m as u64 - 1, m as u64 - 1) as usize
}

/// Dimension of the classical spherical harmonics of degree `ℓ`.
pub fn harmonic_dim(m: usize, ell: u32) -> usize {
    if ell < 2 {
        poly_space_dim(m, ell)
    } else {
        poly_space_dim(m, ell) - poly_space_dim(m, ell - 2)
    }
}

/// `dim(𝒫_ℓ ⊗ S) - dim(𝒫_{ℓ-1} ⊗ S)` with `S` the full Clifford algebra.
pub fn monogenic_dim(m: usize, ell: u32) -> usize {
    let lower = if ell == 0 { 0 } else { poly_space_dim(m, ell - 1) };
    (poly_space_dim(m, ell) - lower) << m
}

fn index_of<K: Ord + Clone>(keys: &[K]) -> BTreeMap<K, usize> {
    keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect()
}

/// Scalar Dunkl harmonics of degree `ℓ`: the exact nullspace of `Δ_k` on `𝒫_ℓ`.
pub fn harmonic_basis(ctx: &DunklContext, ell: u32) -> Vec<Poly<Q>> {
    let dim = ctx.dim();
    let cols = Monomial::all_of_degree(dim, ell);
    let rows = if ell >= 2 { Monomial::all_of_degree(dim, ell - 2) } else { Vec::new() };
    let row_idx = index_of(&rows);
    let mut mat = vec![vec![Q::zero(); cols.len()]; rows.len()];
    for (j, mono) in cols.iter().enumerate() {
        let mut lap = ScalarPoly::new();
        for i in 0..dim {
            for (m1, c1) in ctx.dunkl_monomial(i, mono).iter() {
                for (m2, c2) in ctx.dunkl_monomial(i, m1).iter() {
                    crate::symalg::scalar_add_term(&mut lap, m2.clone(), c1 * c2);
                }
            }
        }
        for (m, c) in lap {
            mat[row_idx[&m]][j] = c;
        }
    }
    linalg::nullspace(&mat, cols.len())
        .into_iter()
        .map(|v| {
            let mut p = Poly::zero(dim);
            for (c, m) in v.into_iter().zip(&cols) {
                if !c.is_zero() {
                    p.add_term(m.clone(), &Multivector::scalar(dim, c));
                }
            }
            p
        })
        .collect()
}

/// A basis of the Dunkl monogenics `ℳ_ℓ = ker 𝒟_k ∩ (𝒫_ℓ ⊗ S)`.
#[derive(Clone, Debug)]
pub struct MonogenicBasis {
    pub degree: u32,
    pub basis: Vec<Poly<Q>>,
    /// Sphere Gram matrix `∫ M̄_i M_j w_k dσ` (scalar part), filled in by the
    /// quadrature layer on request.
    pub gram: Option<Vec<Vec<f64>>>,
}

impl MonogenicBasis {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn element(&self, i: usize) -> RadialExpr<Q> {
        RadialExpr::from_poly(&self.basis[i])
    }

    /// `r^{β_ℓ} M_i`.
    pub fn shifted(&self, params: &DeformParams, i: usize) -> RadialExpr<Q> {
        self.element(i).mul_r(&params.beta(self.degree))
    }

    pub fn to_json(&self) -> MonogenicBasisJson {
        MonogenicBasisJson {
            degree: self.degree,
            dimension: self.basis.len(),
            basis: self.basis.iter().map(|p| RadialExpr::from_poly(p).to_json()).collect(),
            gram: self.gram.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MonogenicBasisJson {
    pub degree: u32,
    pub dimension: usize,
    pub basis: Vec<Vec<RadialTermJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<f64>>>,
}

/// Exact nullspace of `𝒟_k` on `𝒫_ℓ ⊗ S`, coordinates being monomial times
/// basis blade.
pub fn monogenic_basis(ctx: &DunklContext, ell: u32) -> MonogenicBasis {
    let dim = ctx.dim();
    let blades: Vec<u32> = (0..1u32 << dim).collect();
    let cols: Vec<(Monomial, u32)> = Monomial::all_of_degree(dim, ell)
        .into_iter()
        .flat_map(|m| blades.iter().map(move |&b| (m.clone(), b)))
        .collect();
    let rows: Vec<(Monomial, u32)> = if ell == 0 {
        Vec::new()
    } else {
        Monomial::all_of_degree(dim, ell - 1)
            .into_iter()
            .flat_map(|m| blades.iter().map(move |&b| (m.clone(), b)))
            .collect()
    };
    let row_idx = index_of(&rows);
    let mut mat = vec![vec![Q::zero(); cols.len()]; rows.len()];
    for (j, (mono, blade)) in cols.iter().enumerate() {
        for i in 0..dim {
            let ei = 1u32 << i;
            let sign = blade_product_sign(ei, *blade);
            let target = ei ^ blade;
            for (m, c) in ctx.dunkl_monomial(i, mono).iter() {
                let entry = &mut mat[row_idx[&(m.clone(), target)]][j];
                if sign > 0 {
                    *entry += c;
                } else {
                    *entry -= c;
                }
            }
        }
    }
    let basis = linalg::nullspace(&mat, cols.len())
        .into_iter()
        .map(|v| {
            let mut p = Poly::zero(dim);
            for (c, (m, b)) in v.into_iter().zip(&cols) {
                if !c.is_zero() {
                    p.add_term(m.clone(), &Multivector::blade(dim, *b, c));
                }
            }
            p
        })
        .collect();
    MonogenicBasis { degree: ell, basis, gram: None }
}

/// `γ_ℓ / a ∈ {0, -1, -2, ...}`, where the `x_a`-tower over `ℳ_ℓ` degenerates.
pub fn singular_locus(params: &DeformParams, mu: &Q, ell: u32) -> bool {
    let g = params.gamma(ell, mu) / &params.a;
    g.is_integer() && !g.is_positive()
}

/// The scalar `κ` in `𝐃(x_a^t r^{β_ℓ} M_ℓ) = κ x_a^{t-1} r^{β_ℓ} M_ℓ`:
/// `-(1+c) a s` for `t = 2s` and `-(1+c)(γ_ℓ + a s)` for `t = 2s + 1`.
pub fn lowering_constant(params: &DeformParams, mu: &Q, ell: u32, t: u32) -> Q {
    let opc = params.one_plus_c();
    let s = qi((t / 2) as i64);
    if t.is_multiple_of(2) {
        -opc * &params.a * s
    } else {
        -opc * (params.gamma(ell, mu) + &params.a * s)
    }
}

/// `x_a^t f`.
pub fn x_a_power(dctx: &DeformedContext, t: u32, f: &RadialExpr<Q>) -> RadialExpr<Q> {
    (0..t).fold(f.clone(), |g, _| dctx.x_a(&g))
}

/// Checks `𝐃(r^{β_ℓ}M) = 0` and both lowering formulas for `t ≤ t_max` on
/// every basis monogenic of degree `ℓ`.
pub fn tower_lowering_check(dctx: &DeformedContext, ell: u32, t_max: u32) -> Result<Report> {
    let mu = dctx.mu();
    let params = dctx.params();
    if singular_locus(params, &mu, ell) {
        return Err(Error::SingularLocus(format!("gamma_{ell}/a is a non-positive integer")));
    }
    let basis = monogenic_basis(dctx.dunkl(), ell);
    let mut rep = Report::new("fischer-tower-lowering");
    for i in 0..basis.len() {
        let g0 = basis.shifted(params, i);
        let input = format!("l={ell} M={}", basis.basis[i]);
        rep.push(CheckRecord::compare("D(r^beta M) = 0", &input, &dctx.dirac(&g0), &RadialExpr::zero(dctx.dim())));
        let mut prev = g0;
        for t in 1..=t_max {
            let cur = dctx.x_a(&prev);
            let k = lowering_constant(params, &mu, ell, t);
            let rel = if t % 2 == 0 {
                "D x_a^{2s} = -(1+c) a s x_a^{2s-1}"
            } else {
                "D x_a^{2s+1} = -(1+c)(gamma + a s) x_a^{2s}"
            };
            rep.push(CheckRecord::compare(rel, format!("{input} t={t}"), &dctx.dirac(&cur), &prev.scale_q(&k)));
            prev = cur;
        }
    }
    Ok(rep)
}

/// One summand `x_a^t r^{β_j} M` of a decomposition.
#[derive(Clone, Debug)]
pub struct FischerComponent {
    pub t: u32,
    pub j: u32,
    /// The monogenic `M ∈ ℳ_j` (unshifted polynomial).
    pub monogenic: RadialExpr<Q>,
    /// `x_a^t r^{β_j} M`.
    pub component: RadialExpr<Q>,
}

/// `x_a^t r^{β_j} M` for every basis monogenic `M ∈ ℳ_j` and `t + j ≤ max_level`.
pub fn tower_generators(dctx: &DeformedContext, max_level: u32) -> Vec<FischerComponent> {
    let params = dctx.params();
    let mut out = Vec::new();
    for j in 0..=max_level {
        let basis = monogenic_basis(dctx.dunkl(), j);
        for i in 0..basis.len() {
            let monogenic = basis.element(i);
            let mut g = basis.shifted(params, i);
            for t in 0..=max_level - j {
                out.push(FischerComponent { t, j, monogenic: monogenic.clone(), component: g.clone() });
                g = dctx.x_a(&g);
            }
        }
    }
    out
}

/// A random rational combination of the tower generators up to `max_level`.
pub fn random_span_element(dctx: &DeformedContext, max_level: u32, rng: &mut impl rand::Rng) -> RadialExpr<Q> {
    tower_generators(dctx, max_level).iter().fold(RadialExpr::zero(dctx.dim()), |acc, g| {
        acc.add(&g.component.scale_q(&crate::sampling::rational(rng, -3, 3, 4)))
    })
}

/// Splits `f` into summands `x_a^t r^{β_j} M_j` with `t + j ≤ max_level`.
///
/// For `c = 2/a - 1` the summands with `t + j = n` share one homogeneity and
/// together span `r^{β_n}(𝒫_n ⊗ S)`; otherwise every tower is separated by
/// its own homogeneity. Both cases reduce to one exact linear solve since the
/// summands for distinct `(t, j)` are linearly independent.
pub fn fischer_decompose(dctx: &DeformedContext, f: &RadialExpr<Q>, max_level: u32) -> Result<Vec<FischerComponent>> {
    let mu = dctx.mu();
    let params = dctx.params();
    if let Some(ell) = (0..=max_level).find(|&l| singular_locus(params, &mu, l)) {
        return Err(Error::SingularLocus(format!("gamma_{ell}/a is a non-positive integer")));
    }
    let dim = dctx.dim();
    let generators = tower_generators(dctx, max_level);
    let mut keys = BTreeMap::new();
    let coords = |e: &RadialExpr<Q>, keys: &mut BTreeMap<(Q, Monomial, u32), usize>| {
        let mut v = Vec::new();
        for (s, m, c) in e.iter() {
            for (b, x) in c.blades() {
                let n = keys.len();
                let idx = *keys.entry((s.clone(), m.clone(), b)).or_insert(n);
                v.push((idx, x.clone()));
            }
        }
        v
    };
    let cols: Vec<_> = generators.iter().map(|g| coords(&g.component, &mut keys)).collect();
    let rhs = coords(f, &mut keys);
    let mut a = vec![vec![Q::zero(); cols.len()]; keys.len()];
    for (j, col) in cols.iter().enumerate() {
        for (i, x) in col {
            a[*i][j] = x.clone();
        }
    }
    let mut b = vec![vec![Q::zero()]; keys.len()];
    for (i, x) in rhs {
        b[i][0] = x;
    }
    let sol = linalg::solve(&a, &b, cols.len()).map_err(|e| match e {
        Error::Inconsistent => Error::Invalid("input does not lie in the span of the requested towers".into()),
        other => other,
    })?;
    let mut grouped: BTreeMap<(u32, u32), (RadialExpr<Q>, RadialExpr<Q>)> = BTreeMap::new();
    for (g, x) in generators.iter().zip(&sol[0]) {
        if x.is_zero() {
            continue;
        }
        let e = grouped.entry((g.t, g.j)).or_insert_with(|| (RadialExpr::zero(dim), RadialExpr::zero(dim)));
        e.0 = e.0.add(&g.monogenic.scale_q(x));
        e.1 = e.1.add(&g.component.scale_q(x));
    }
    Ok(grouped
        .into_iter()
        .map(|((t, j), (monogenic, component))| FischerComponent { t, j, monogenic, component })
        .collect())
}

/// Checks that the components sum to `f` and that `t` applications of `𝐃`
/// to each component return the product of lowering constants times the
/// shifted monogenic.
pub fn fischer_components_check(dctx: &DeformedContext, f: &RadialExpr<Q>, comps: &[FischerComponent]) -> Report {
    let mu = dctx.mu();
    let params = dctx.params();
    let mut rep = Report::new("fischer-decomposition");
    let total = comps.iter().fold(RadialExpr::zero(dctx.dim()), |acc, c| acc.add(&c.component));
    rep.push(CheckRecord::compare("components sum to f", f.to_string(), &total, f));
    for c in comps {
        let lowered = (0..c.t).fold(c.component.clone(), |g, _| dctx.dirac(&g));
        let k = (1..=c.t).fold(Q::one(), |acc, s| acc * lowering_constant(params, &mu, c.j, s));
        let expected = c.monogenic.mul_r(&params.beta(c.j)).scale_q(&k);
        rep.push(CheckRecord::compare(
            "D^t component = prod kappa r^beta M",
            format!("t={} j={}", c.t, c.j),
            &lowered,
            &expected,
        ));
        let killed = dctx.dirac(&lowered);
        rep.push(CheckRecord::compare(
            "D^{t+1} component = 0",
            format!("t={} j={}", c.t, c.j),
            &killed,
            &RadialExpr::zero(dctx.dim()),
        ));
    }
    rep
}
