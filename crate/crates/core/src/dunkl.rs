//! Rational Dunkl operators `T_i f = ∂_i f + Σ_{α>0} k_α α_i (f - f∘r_α)/⟨α, x⟩`
//! acting exactly on radial expressions, and the Dunkl kernel series.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_complex::Complex64;
use num_traits::Zero;

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::linalg;
use crate::reflection::RootSystem;
use crate::report::{CheckRecord, Report};
use crate::symalg::{
    q_to_f64, scalar_add_term, scalar_mul, scalar_partial, Coefficient, Monomial, Poly, RadialBuilder, RadialExpr,
    ScalarPoly, Q,
};

type MonoCache = Mutex<HashMap<(usize, Monomial), Arc<ScalarPoly>>>;

/// Dunkl operators for a fixed root system and multiplicity function.
/// Images of monomials are cached, so one context should be reused across
/// many applications.
pub struct DunklContext {
    system: RootSystem,
    reflections: Vec<Vec<Vec<Q>>>,
    reflected: MonoCache,
    differences: MonoCache,
    images: MonoCache,
}

impl DunklContext {
    pub fn new(system: RootSystem) -> Self {
        let reflections = system.roots().iter().map(|r| r.matrix()).collect();
        DunklContext {
            system,
            reflections,
            reflected: Mutex::default(),
            differences: Mutex::default(),
            images: Mutex::default(),
        }
    }

    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    pub fn dim(&self) -> usize {
        self.system.dim()
    }

    /// `x^β ∘ r_α` for root index `root`.
    pub fn reflect_monomial(&self, root: usize, m: &Monomial) -> Arc<ScalarPoly> {
        if let Some(p) = self.reflected.lock().expect("cache lock").get(&(root, m.clone())) {
            return p.clone();
        }
        let dim = self.dim();
        let mat = &self.reflections[root];
        let mut out = ScalarPoly::new();
        scalar_add_term(&mut out, Monomial::one(dim), Q::from_integer(1.into()));
        for (j, &e) in m.0.iter().enumerate() {
            let mut form = ScalarPoly::new();
            for (k, c) in mat[j].iter().enumerate() {
                scalar_add_term(&mut form, Monomial::var(dim, k), c.clone());
            }
            for _ in 0..e {
                out = scalar_mul(&out, &form);
            }
        }
        let out = Arc::new(out);
        self.reflected.lock().expect("cache lock").insert((root, m.clone()), out.clone());
        out
    }

    /// The divided difference `(x^β - x^β∘r_α)/⟨v_α, x⟩`.
    pub fn difference_monomial(&self, root: usize, m: &Monomial) -> Arc<ScalarPoly> {
        if let Some(p) = self.differences.lock().expect("cache lock").get(&(root, m.clone())) {
            return p.clone();
        }
        let mut num = ScalarPoly::new();
        scalar_add_term(&mut num, m.clone(), Q::from_integer(1.into()));
        for (mm, c) in self.reflect_monomial(root, m).iter() {
            scalar_add_term(&mut num, mm.clone(), -c);
        }
        let out =
            Arc::new(divide_linear(&num, &self.system.roots()[root].v).expect("reflection difference is divisible"));
        self.differences.lock().expect("cache lock").insert((root, m.clone()), out.clone());
        out
    }

    /// `T_i x^β` as a scalar polynomial, `i` 0-based.
    pub fn dunkl_monomial(&self, i: usize, m: &Monomial) -> Arc<ScalarPoly> {
        if let Some(p) = self.images.lock().expect("cache lock").get(&(i, m.clone())) {
            return p.clone();
        }
        let mut single = ScalarPoly::new();
        scalar_add_term(&mut single, m.clone(), Q::from_integer(1.into()));
        let mut out = scalar_partial(&single, i);
        for (idx, root) in self.system.roots().iter().enumerate() {
            let k = self.system.k(root);
            if k.is_zero() || root.v[i].is_zero() {
                continue;
            }
            let w = k * &root.v[i];
            for (mm, c) in self.difference_monomial(idx, m).iter() {
                scalar_add_term(&mut out, mm.clone(), c * &w);
            }
        }
        let out = Arc::new(out);
        self.images.lock().expect("cache lock").insert((i, m.clone()), out.clone());
        out
    }

    pub fn dunkl_poly<S: Coefficient>(&self, i: usize, p: &Poly<S>) -> Poly<S> {
        p.substitute(|m| self.dunkl_monomial(i, m))
    }

    /// `T_i f`, `i` 0-based, using `T_i(r^s p) = s r^{s-2} x_i p + r^s T_i p`.
    pub fn dunkl<S: Coefficient>(&self, i: usize, f: &RadialExpr<S>) -> RadialExpr<S> {
        let dim = self.dim();
        let xi = Monomial::var(dim, i);
        let two = Q::from_integer(2.into());
        let mut b = RadialBuilder::new(dim);
        for (s, p) in f.polys() {
            for (m, c) in p.terms() {
                if !s.is_zero() {
                    b.add(s - &two, m.mul(&xi), &c.scale_q(s));
                }
                for (mm, q) in self.dunkl_monomial(i, m).iter() {
                    b.add(s.clone(), mm.clone(), &c.scale_q(q));
                }
            }
        }
        b.finish()
    }

    pub fn dunkl_all<S: Coefficient>(&self, f: &RadialExpr<S>) -> Vec<RadialExpr<S>> {
        (0..self.dim()).map(|i| self.dunkl(i, f)).collect()
    }

    /// `Δ_k = Σ_i T_i^2`.
    pub fn laplacian<S: Coefficient>(&self, f: &RadialExpr<S>) -> RadialExpr<S> {
        let mut b = RadialBuilder::new(self.dim());
        for i in 0..self.dim() {
            b.add_expr(&self.dunkl(i, &self.dunkl(i, f)));
        }
        b.finish()
    }

    /// Dunkl Laplacian from the closed formula
    /// `Δf + 2 Σ k_α (⟨∇f, α⟩/⟨α, x⟩ - |α|^2/2 (f - f∘r_α)/⟨α, x⟩^2)`.
    pub fn laplacian_explicit<S: Coefficient>(&self, f: &RadialExpr<S>) -> Result<RadialExpr<S>> {
        let dim = self.dim();
        let mut b = RadialBuilder::new(dim);
        for i in 0..dim {
            b.add_expr(&f.partial(i).partial(i));
        }
        let two = Q::from_integer(2.into());
        for (idx, root) in self.system.roots().iter().enumerate() {
            let k = self.system.k(root);
            if k.is_zero() {
                continue;
            }
            for (s, p) in f.polys() {
                // radial factor: ⟨∇r^s, v⟩/⟨v, x⟩ = s r^{s-2}
                if !s.is_zero() {
                    for (m, c) in p.terms() {
                        b.add(s - &two, m.clone(), &c.scale_q(&(&two * k * s)));
                    }
                }
                // ⟨∇p, v⟩⟨v, x⟩ - |v|^2/2 (p - p∘r_α), divided by ⟨v, x⟩^2
                let mut num = Poly::zero(dim);
                let lin = linear_form(dim, &root.v);
                for (j, vj) in root.v.iter().enumerate() {
                    if vj.is_zero() {
                        continue;
                    }
                    let dj = poly_partial(p, j);
                    num.add_assign(&poly_mul_scalar(&dj, &lin).scale_q(vj));
                }
                let half = &root.norm_sq / &two;
                num.add_assign(&p.scale_q(&-&half));
                num.add_assign(&p.substitute(|m| self.reflect_monomial(idx, m)).scale_q(&half));
                let quot = divide_linear_poly(&divide_linear_poly(&num, &root.v)?, &root.v)?;
                for (m, c) in quot.terms() {
                    b.add(s.clone(), m.clone(), &c.scale_q(&(&two * k)));
                }
            }
        }
        Ok(b.finish())
    }

    /// `𝒟_k = Σ e_i T_i`.
    pub fn dirac<S: Coefficient>(&self, f: &RadialExpr<S>) -> RadialExpr<S> {
        let dim = self.dim();
        let mut b = RadialBuilder::new(dim);
        for i in 0..dim {
            b.add_expr(&self.dunkl(i, f).left_mul_mv(&Multivector::e(dim, i + 1)));
        }
        b.finish()
    }

    /// `f∘r_α` for a radial expression (`r` is reflection invariant).
    pub fn reflect<S: Coefficient>(&self, root: usize, f: &RadialExpr<S>) -> RadialExpr<S> {
        let mut b = RadialBuilder::new(self.dim());
        for (s, p) in f.polys() {
            for (m, c) in p.substitute(|m| self.reflect_monomial(root, m)).terms() {
                b.add(s.clone(), m.clone(), c);
            }
        }
        b.finish()
    }
}

fn linear_form(dim: usize, v: &[Q]) -> ScalarPoly {
    let mut out = ScalarPoly::new();
    for (k, c) in v.iter().enumerate() {
        scalar_add_term(&mut out, Monomial::var(dim, k), c.clone());
    }
    out
}

fn poly_partial<S: Coefficient>(p: &Poly<S>, i: usize) -> Poly<S> {
    let mut out = Poly::zero(p.dim());
    for (m, c) in p.terms() {
        let e = m.exp(i);
        if e > 0 {
            out.add_term(m.with_exp(i, e - 1), &c.scale_q(&Q::from_integer(e.into())));
        }
    }
    out
}

fn poly_mul_scalar<S: Coefficient>(p: &Poly<S>, s: &ScalarPoly) -> Poly<S> {
    let mut out = Poly::zero(p.dim());
    for (m, c) in p.terms() {
        for (mm, q) in s {
            out.add_term(m.mul(mm), &c.scale_q(q));
        }
    }
    out
}

/// Exact quotient of a scalar polynomial by `⟨v, x⟩`.
pub fn divide_linear(p: &ScalarPoly, v: &[Q]) -> Result<ScalarPoly> {
    let dim = v.len();
    let pv: Poly<Q> = {
        let mut out = Poly::zero(dim);
        for (m, c) in p {
            out.add_term(m.clone(), &Multivector::scalar(1, c.clone()));
        }
        out
    };
    let quot = divide_linear_poly(&pv, v)?;
    Ok(quot.terms().map(|(m, c)| (m.clone(), c.grade0())).collect())
}

/// Exact quotient of a Clifford-valued polynomial by `⟨v, x⟩`: repeatedly
/// cancels the term of highest degree in a variable with `v_j != 0`.
pub fn divide_linear_poly<S: Coefficient>(p: &Poly<S>, v: &[Q]) -> Result<Poly<S>> {
    let dim = v.len();
    let j = v.iter().rposition(|c| !c.is_zero()).ok_or_else(|| Error::Invalid("zero linear form".into()))?;
    let inv = Q::from_integer(1.into()) / &v[j];
    let mut rest: BTreeMap<(u16, Monomial), Multivector<S>> =
        p.terms().map(|(m, c)| ((m.exp(j), m.clone()), c.clone())).collect();
    let mut quot = Poly::zero(dim);
    while let Some(((e, m), c)) = rest.pop_last() {
        if e == 0 {
            return Err(Error::NotDivisible(format!("({c})*{m}")));
        }
        let qm = m.with_exp(j, e - 1);
        let qc = c.scale_q(&inv);
        for (k, vk) in v.iter().enumerate() {
            if k == j || vk.is_zero() {
                continue;
            }
            let nm = qm.mul(&Monomial::var(dim, k));
            let key = (nm.exp(j), nm);
            let delta = qc.scale_q(&-vk);
            let entry = rest.entry(key.clone()).or_insert_with(|| Multivector::zero(delta.dim()));
            entry.add_assign(&delta);
            if entry.is_zero() {
                rest.remove(&key);
            }
        }
        quot.add_term(qm, &qc);
    }
    Ok(quot)
}

/// Spot checks of the structural properties of the Dunkl operators on `f`:
/// commutativity, the product rule with the invariant factor `r^2`,
/// reflection equivariance, and agreement of `Σ T_i^2` with the closed
/// Laplacian formula.
pub fn basic_props_check(ctx: &DunklContext, f: &RadialExpr<Q>) -> Result<Report> {
    let dim = ctx.dim();
    let mut report = Report::new("dunkl-basic-properties");
    let input = f.to_string();
    let t: Vec<_> = ctx.dunkl_all(f);
    for i in 0..dim {
        for j in i + 1..dim {
            let lhs = ctx.dunkl(i, &t[j]);
            let rhs = ctx.dunkl(j, &t[i]);
            report.push(CheckRecord::compare(
                format!("T{}T{} = T{}T{}", i + 1, j + 1, j + 1, i + 1),
                &input,
                &lhs,
                &rhs,
            ));
        }
    }
    let two = Q::from_integer(2.into());
    let g = f.mul_r(&two);
    for (i, ti) in t.iter().enumerate() {
        let lhs = ctx.dunkl(i, &g);
        let rhs = ti.mul_r(&two).add(&f.mul_x(i).scale_q(&two));
        report.push(CheckRecord::compare(
            format!("T{}(r^2 f) = r^2 T{} f + 2 x{} f", i + 1, i + 1, i + 1),
            &input,
            &lhs,
            &rhs,
        ));
    }
    for (idx, root) in ctx.system().roots().iter().enumerate() {
        let mat = root.matrix();
        let wf = ctx.reflect(idx, f);
        for i in 0..dim {
            let lhs = ctx.reflect(idx, &ctx.dunkl(i, &wf));
            let mut b = RadialBuilder::new(dim);
            for (row, tj) in mat.iter().zip(&t) {
                if !row[i].is_zero() {
                    b.add_expr(&tj.scale_q(&row[i]));
                }
            }
            let rhs = b.finish();
            report.push(CheckRecord::compare(
                format!("w T{} w = T(w e{}) for root {}", i + 1, i + 1, idx + 1),
                &input,
                &lhs,
                &rhs,
            ));
        }
    }
    let lap = ctx.laplacian(f);
    let explicit = ctx.laplacian_explicit(f)?;
    report.push(CheckRecord::compare("Σ T_i^2 = closed Dunkl Laplacian", &input, &lap, &explicit));
    Ok(report)
}

/// Homogeneous components `K_n(x, y)` of the Dunkl kernel, determined by
/// `T_i^x K_n = y_i K_{n-1}`, `K_0 = 1`.
#[derive(Clone, Debug)]
pub struct KernelSeries {
    dim: usize,
    orders: Vec<BTreeMap<(Monomial, Monomial), Q>>,
}

pub fn kernel_series(ctx: &DunklContext, order: u32) -> Result<KernelSeries> {
    let dim = ctx.dim();
    let mut orders = Vec::with_capacity(order as usize + 1);
    let mut k0 = BTreeMap::new();
    k0.insert((Monomial::one(dim), Monomial::one(dim)), Q::from_integer(1.into()));
    orders.push(k0);
    for n in 1..=order {
        let cols = Monomial::all_of_degree(dim, n);
        let lower = Monomial::all_of_degree(dim, n - 1);
        let row_index: HashMap<(usize, Monomial), usize> =
            (0..dim).flat_map(|i| lower.iter().map(move |m| (i, m.clone()))).enumerate().map(|(r, k)| (k, r)).collect();
        let nrows = row_index.len();
        let mut a = vec![vec![Q::zero(); cols.len()]; nrows];
        for (c, m) in cols.iter().enumerate() {
            for i in 0..dim {
                for (mm, v) in ctx.dunkl_monomial(i, m).iter() {
                    a[row_index[&(i, mm.clone())]][c] += v;
                }
            }
        }
        let ys = Monomial::all_of_degree(dim, n);
        let mut b = vec![vec![Q::zero(); ys.len()]; nrows];
        let prev = &orders[n as usize - 1];
        for (yc, ym) in ys.iter().enumerate() {
            for i in 0..dim {
                if ym.exp(i) == 0 {
                    continue;
                }
                let yl = ym.with_exp(i, ym.exp(i) - 1);
                for xm in &lower {
                    if let Some(v) = prev.get(&(xm.clone(), yl.clone())) {
                        b[row_index[&(i, xm.clone())]][yc] = v.clone();
                    }
                }
            }
        }
        let sol = linalg::solve(&a, &b, cols.len())?;
        let mut kn = BTreeMap::new();
        for (yc, ym) in ys.iter().enumerate() {
            for (c, xm) in cols.iter().enumerate() {
                if !sol[yc][c].is_zero() {
                    kn.insert((xm.clone(), ym.clone()), sol[yc][c].clone());
                }
            }
        }
        orders.push(kn);
    }
    Ok(KernelSeries { dim, orders })
}

impl KernelSeries {
    pub fn order(&self) -> u32 {
        self.orders.len() as u32 - 1
    }

    pub fn component(&self, n: usize) -> &BTreeMap<(Monomial, Monomial), Q> {
        &self.orders[n]
    }

    /// `K_n(·, y)` for a rational point `y`.
    pub fn at_y(&self, n: usize, y: &[Q]) -> ScalarPoly {
        let mut out = ScalarPoly::new();
        for ((xm, ym), c) in &self.orders[n] {
            let yv: Q = ym.0.iter().zip(y).map(|(&e, yi)| num_traits::pow(yi.clone(), e.into())).product();
            scalar_add_term(&mut out, xm.clone(), c * yv);
        }
        out
    }

    /// `Σ_{n ≤ N} K_n(·, y)` as a radial expression.
    pub fn truncated(&self, y: &[Q]) -> RadialExpr<Q> {
        let mut b = RadialBuilder::new(self.dim);
        for n in 0..self.orders.len() {
            for (m, c) in self.at_y(n, y) {
                b.add(Q::zero(), m, &Multivector::scalar(self.dim, c));
            }
        }
        b.finish()
    }

    /// `max_{n,i}` of the defect `T_i K_n - y_i K_{n-1}`, as an exact check.
    pub fn residual_is_zero(&self, ctx: &DunklContext) -> bool {
        (1..self.orders.len()).all(|n| {
            (0..self.dim).all(|i| {
                let mut defect: BTreeMap<(Monomial, Monomial), Q> = BTreeMap::new();
                for ((xm, ym), c) in &self.orders[n] {
                    for (mm, v) in ctx.dunkl_monomial(i, xm).iter() {
                        *defect.entry((mm.clone(), ym.clone())).or_insert_with(Q::zero) += c * v;
                    }
                }
                for ((xm, ym), c) in &self.orders[n - 1] {
                    let key = (xm.clone(), ym.with_exp(i, ym.exp(i) + 1));
                    *defect.entry(key).or_insert_with(Q::zero) -= c;
                }
                defect.values().all(Zero::is_zero)
            })
        })
    }

    /// Numeric form with `f64` coefficients for fast evaluation.
    pub fn numeric(&self) -> NumericKernel {
        NumericKernel {
            orders: self
                .orders
                .iter()
                .map(|kn| kn.iter().map(|((xm, ym), c)| (xm.clone(), ym.clone(), q_to_f64(c))).collect())
                .collect(),
        }
    }
}

/// `D(x, y) ≈ Σ_n K_n(x, y)` in floating point.
#[derive(Clone, Debug)]
pub struct NumericKernel {
    orders: Vec<Vec<(Monomial, Monomial, f64)>>,
}

impl NumericKernel {
    /// `Σ_n (-i)^n K_n(·, y)` collapsed to a complex polynomial in `x`.
    pub fn oscillatory_in_x(&self, y: &[f64]) -> Vec<(Monomial, Complex64)> {
        let mut acc: BTreeMap<Monomial, Complex64> = BTreeMap::new();
        let mut phase = Complex64::new(1.0, 0.0);
        for kn in &self.orders {
            for (xm, ym, c) in kn {
                *acc.entry(xm.clone()).or_insert_with(Complex64::zero) += phase * (c * ym.eval(y));
            }
            phase *= Complex64::new(0.0, -1.0);
        }
        acc.into_iter().collect()
    }

    pub fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        self.orders.iter().flatten().map(|(xm, ym, c)| c * xm.eval(x) * ym.eval(y)).sum()
    }
}

pub fn eval_complex_poly(p: &[(Monomial, Complex64)], x: &[f64]) -> Complex64 {
    p.iter().map(|(m, c)| c * m.eval(x)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reflection::Family;
    use crate::symalg::q;

    fn mono(e: &[u16]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn rank_one_dunkl_on_powers() {
        // T x^n = (n + 2k [n odd]) x^{n-1} for Z_2
        let ctx = DunklContext::new(RootSystem::builtin(Family::Z2, 1, &[q(3, 4)]).unwrap());
        for n in 1..6u16 {
            let img = ctx.dunkl_monomial(0, &mono(&[n]));
            let expect = Q::from_integer(n.into()) + if n % 2 == 1 { q(3, 2) } else { q(0, 1) };
            assert_eq!(img.get(&mono(&[n - 1])), Some(&expect));
            assert_eq!(img.len(), 1);
        }
    }

    #[test]
    fn classical_case_is_partial_derivative() {
        let ctx = DunklContext::new(RootSystem::trivial(2));
        let f = RadialExpr::term(q(1, 3), mono(&[2, 1]), Multivector::<Q>::one(2));
        assert_eq!(ctx.dunkl(0, &f), f.partial(0));
    }

    #[test]
    fn division_by_linear_form() {
        let mut p = ScalarPoly::new();
        // (x1 - x2)(x1 + 2 x2) = x1^2 + x1 x2 - 2 x2^2
        scalar_add_term(&mut p, mono(&[2, 0]), q(1, 1));
        scalar_add_term(&mut p, mono(&[1, 1]), q(1, 1));
        scalar_add_term(&mut p, mono(&[0, 2]), q(-2, 1));
        let quot = divide_linear(&p, &[q(1, 1), q(-1, 1)]).unwrap();
        assert_eq!(quot.get(&mono(&[1, 0])), Some(&q(1, 1)));
        assert_eq!(quot.get(&mono(&[0, 1])), Some(&q(2, 1)));
        scalar_add_term(&mut p, mono(&[0, 0]), q(1, 1));
        assert!(divide_linear(&p, &[q(1, 1), q(-1, 1)]).is_err());
    }

    #[test]
    fn basic_properties_for_a2() {
        let ctx = DunklContext::new(RootSystem::builtin(Family::A, 3, &[q(2, 3)]).unwrap());
        let f = RadialExpr::term(q(1, 2), mono(&[2, 1, 0]), Multivector::one(3)).add(&RadialExpr::term(
            q(0, 1),
            mono(&[0, 1, 1]),
            Multivector::e(3, 2),
        ));
        let rep = basic_props_check(&ctx, &f).unwrap();
        assert!(rep.all_passed(), "{}", rep.failures().next().map(|r| r.relation.clone()).unwrap_or_default());
    }

    #[test]
    fn kernel_series_rank_one_matches_bessel_type_series() {
        // for Z_2 with k: K_n(x,y) = (xy)^n / (b_n) with b_{2j} = 2^{2j} j! (k+1/2)_j and b_{2j+1} = b_{2j} (2j+1+2k)... checked via T K_n = y K_{n-1}
        let ctx = DunklContext::new(RootSystem::builtin(Family::Z2, 1, &[q(1, 2)]).unwrap());
        let ks = kernel_series(&ctx, 6).unwrap();
        assert!(ks.residual_is_zero(&ctx));
        // k = 1/2: K_1 = xy/(1 + 2k) = xy/2
        assert_eq!(ks.component(1).get(&(mono(&[1]), mono(&[1]))), Some(&q(1, 2)));
    }

    #[test]
    fn kernel_series_is_symmetric() {
        let ctx = DunklContext::new(RootSystem::builtin(Family::B, 2, &[q(1, 2), q(1, 3)]).unwrap());
        let ks = kernel_series(&ctx, 4).unwrap();
        for n in 0..=4 {
            for ((xm, ym), c) in ks.component(n) {
                assert_eq!(ks.component(n).get(&(ym.clone(), xm.clone())), Some(c));
            }
        }
    }
}
