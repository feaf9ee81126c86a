//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use deformed_dirac::deformed::{
    components_commute, factorization_check, factorization_classify, osp_relations_check, test_inputs, DeformedContext,
    FactorizationTuple,
};
use deformed_dirac::dunkl::{kernel_series, DunklContext};
use deformed_dirac::fischer::{monogenic_basis, singular_locus};
use deformed_dirac::laguerre::{LaguerreFamily, NormConvention};
use deformed_dirac::reflection::{Family, RootSystem};
use deformed_dirac::report::Report;
use deformed_dirac::sampling;
use deformed_dirac::transform::{
    a_minus2_suite, dunkl_eigen_probe, kelvin_intertwine_check, kernel_pde_residual, orthogonality_check,
    transform_eigen, transform_eigen_check, DunklTransform, Grid, KernelSpec, TransformGrid,
};
use deformed_dirac::{q, DeformParams, Monomial, Multivector, RadialExpr, Result, Q};
use rand::Rng;

const SEED: u64 = 20_240_611;

const OSP_TUPLES: usize = 20;
const OSP_DEGREE: u32 = 3;
const OSP_BUDGET: Duration = Duration::from_secs(60);

const FACTOR_DEGREE: u32 = 3;

const COMMUTE_DEGREE: u32 = 3;

const LAGUERRE_TUPLES: usize = 10;
const CLOSED_T_MAX: u32 = 6;
const CLOSED_L_MAX: u32 = 3;
const LOWERING_T_MAX: u32 = 4;
const LOWERING_L_MAX: u32 = 2;

const ORTHO_T_MAX: u32 = 3;
const ORTHO_L_MAX: u32 = 2;
const ORTHO_NR: usize = 40;
const ORTHO_NTHETA: usize = 256;
const ORTHO_DIAG_TOL: f64 = 1e-8;
const ORTHO_OFF_TOL: f64 = 1e-10;
const ORTHO_WEIGHTED_TOL: f64 = 1e-6;
const ORTHO_BUDGET: Duration = Duration::from_secs(120);

const EIGEN_TOTAL_MAX: u32 = 4;
const EIGEN_TOL: f64 = 1e-6;
const EIGEN_NANG: usize = 256;
const KERNEL_POINTS: usize = 100;
const KERNEL_TOL: f64 = 1e-10;

const KELVIN_TUPLES: usize = 10;
const KELVIN_DEGREE: u32 = 3;

const SERIES_ORDER: u32 = 6;
const PROBE_ORDER: u32 = 30;
const PROBE_NANG: usize = 96;
const PROBE_TOL: f64 = 1e-4;

type Criterion = (&'static str, fn() -> Result<Outcome>);

struct Outcome {
    pass: bool,
    detail: String,
    notes: Vec<String>,
}

impl Outcome {
    fn from_report(rep: &Report) -> Self {
        let s = rep.summary();
        let mut detail = format!("{}/{} checks", s.passed, s.total);
        if let Some(f) = rep.failures().next() {
            detail.push_str(&format!("; first failure: {} on {}", f.relation, f.input));
        }
        Outcome { pass: s.pass, detail, notes: Vec::new() }
    }

    fn within(mut self, budget: Duration, elapsed: Duration) -> Self {
        if elapsed > budget {
            self.pass = false;
            self.detail.push_str(&format!("; over the {budget:?} budget"));
        }
        self
    }
}

fn z2(dim: usize, ks: &[Q]) -> RootSystem {
    RootSystem::builtin(Family::Z2, dim, ks).expect("valid Z2 system")
}

fn random_ks(rng: &mut impl Rng, n: usize) -> Vec<Q> {
    (0..n).map(|_| sampling::multiplicity(rng)).collect()
}

fn ctx(system: RootSystem) -> Arc<DunklContext> {
    Arc::new(DunklContext::new(system))
}

/// Random groups from `Z2²`, `Z2³` and `A_2` acting on `R³`.
fn random_groups(rng: &mut impl Rng) -> Vec<RootSystem> {
    vec![
        z2(2, &random_ks(rng, 2)),
        z2(3, &random_ks(rng, 3)),
        RootSystem::builtin(Family::A, 3, &random_ks(rng, 1)).expect("valid A2"),
    ]
}

fn osp() -> Result<Outcome> {
    let start = Instant::now();
    let mut rng = sampling::rng(SEED);
    let mut rep = Report::new("osp");
    for _ in 0..OSP_TUPLES {
        let params = sampling::deform_params(&mut rng);
        for system in random_groups(&mut rng) {
            let d = DeformedContext::new(ctx(system), params.clone());
            for f in test_inputs(d.dim(), OSP_DEGREE, true) {
                rep.extend(osp_relations_check(&d, &f));
            }
        }
    }
    Ok(Outcome::from_report(&rep).within(OSP_BUDGET, start.elapsed()))
}

fn tuple(a: i64, b: i64, c: i64) -> FactorizationTuple {
    FactorizationTuple::new(q(a, 1), q(b, 1), q(c, 1))
}

/// The tuple list the classification is held against: for `k = 0`,
/// `(2,0,0)`, `(2m-2, 0, -2)`, `(4m-6, m-2, 0)`, `(-2, 2-m, -2)`; for
/// `k ≠ 0`, `(2,0,0)` and `(-2, 2-μ, -2)`.
fn reference_tuples(m: i64, mu: Option<&Q>) -> Vec<FactorizationTuple> {
    let mut v = match mu {
        None => vec![tuple(2, 0, 0), tuple(2 * m - 2, 0, -2), tuple(4 * m - 6, m - 2, 0), tuple(-2, 2 - m, -2)],
        Some(mu) => vec![tuple(2, 0, 0), FactorizationTuple::new(q(-2, 1), q(2, 1) - mu, q(-2, 1))],
    };
    v.sort();
    v.dedup();
    v
}

fn show(ts: &[FactorizationTuple]) -> String {
    ts.iter().map(|t| format!("({}, {}, {})", t.a, t.b, t.c)).collect::<Vec<_>>().join(" ")
}

fn factorization() -> Result<Outcome> {
    let mut pass = true;
    let mut notes = Vec::new();
    let mut checks = 0;
    for m in [2usize, 3] {
        let ks = vec![q(1, 2); m];
        for system in [RootSystem::trivial(m), z2(m, &ks)] {
            let mu = system.mu();
            let k_zero = system.is_trivial();
            let d = ctx(system);
            let inputs = test_inputs(m, FACTOR_DEGREE, false);
            let got = factorization_classify(m, &mu, k_zero);
            let want = reference_tuples(m as i64, (!k_zero).then_some(&mu));
            let label = if k_zero { format!("m={m} k=0") } else { format!("m={m} k=1/2") };
            if got != want {
                pass = false;
                notes.push(format!(
                    "{label}: classifier gives {} but the reference list is {}",
                    show(&got),
                    show(&want)
                ));
            }
            for t in &want {
                let rep = factorization_check(&d, &t.params()?, &inputs);
                checks += 1;
                if !rep.all_passed() {
                    pass = false;
                    notes.push(format!(
                        "{label}: sum D_i^2 != r^(2-a) Laplacian_k at reference tuple ({}, {}, {})",
                        t.a, t.b, t.c
                    ));
                }
            }
            for t in &got {
                let p = t.params()?;
                checks += 2;
                if !factorization_check(&d, &p, &inputs).all_passed() {
                    pass = false;
                    notes.push(format!("{label}: classifier tuple ({}, {}, {}) fails the direct check", t.a, t.b, t.c));
                }
                let shifted = DeformParams::new(p.a.clone(), &p.b + q(1, 7), p.c.clone())?;
                if factorization_check(&d, &shifted, &inputs).all_passed() {
                    pass = false;
                    notes.push(format!("{label}: shifting b by 1/7 at ({}, {}, {}) does not break it", t.a, t.b, t.c));
                }
            }
        }
    }
    Ok(Outcome { pass, detail: format!("{checks} tuple checks"), notes })
}

fn commutativity() -> Result<Outcome> {
    let mut pass = true;
    let mut notes = Vec::new();
    let mut cases = 0;
    let groups = [RootSystem::trivial(3), z2(2, &[q(1, 2), q(1, 3)])];
    for a in [q(2, 1), q(4, 1), q(2, 3)] {
        let graded = q(2, 1) / &a - q(1, 1);
        for system in &groups {
            let d = ctx(system.clone());
            let others = [q(0, 1), q(1, 3), q(-1, 2), q(2, 1)].into_iter().filter(|c| *c != graded);
            for c in std::iter::once(graded.clone()).chain(others) {
                let p = DeformParams::new(a.clone(), q(1, 5), c.clone())?;
                let r = components_commute(&DeformedContext::new(d.clone(), p), COMMUTE_DEGREE);
                cases += 1;
                let ok = r.commute == (c == graded) && (r.commute || r.witness.is_some());
                if !ok {
                    pass = false;
                    notes.push(format!("a={a} c={c}: commute={} predicted={}", r.commute, r.predicted));
                }
            }
        }
    }
    Ok(Outcome { pass, detail: format!("{cases} (a, c, group) cases"), notes })
}

/// Random non-singular tuples on alternating groups, with a monogenic
/// family for every `ℓ ≤ l_max`.
fn laguerre_families(seed: u64, tuples: usize, l_max: u32) -> Vec<Vec<LaguerreFamily>> {
    let mut rng = sampling::rng(seed);
    let mut out = Vec::new();
    while out.len() < tuples {
        let params = sampling::deform_params(&mut rng);
        let system = if out.len() % 2 == 0 { z2(2, &random_ks(&mut rng, 2)) } else { RootSystem::trivial(3) };
        let mu = system.mu();
        if (0..=l_max).any(|l| singular_locus(&params, &mu, l)) {
            continue;
        }
        let d = ctx(system);
        let dctx = DeformedContext::new(d.clone(), params);
        let fams = (0..=l_max)
            .map(|l| {
                LaguerreFamily::new(dctx.clone(), l, monogenic_basis(&d, l).element(0)).expect("non-singular family")
            })
            .collect();
        out.push(fams);
    }
    out
}

fn laguerre_closed_form() -> Result<Outcome> {
    let mut rep = Report::new("laguerre-closed-form");
    for fams in laguerre_families(SEED + 4, LAGUERRE_TUPLES, CLOSED_L_MAX) {
        for mut fam in fams {
            rep.extend(fam.closed_form_check(CLOSED_T_MAX)?);
            rep.extend(fam.laguerre_match_check(CLOSED_T_MAX));
        }
    }
    Ok(Outcome::from_report(&rep))
}

fn lowering_oscillator() -> Result<Outcome> {
    let mut rep = Report::new("laguerre-lowering");
    for fams in laguerre_families(SEED + 5, LAGUERRE_TUPLES, LOWERING_L_MAX) {
        for mut fam in fams {
            rep.extend(fam.lowering_check(LOWERING_T_MAX));
            rep.extend(fam.oscillator_check(LOWERING_T_MAX));
        }
    }
    Ok(Outcome::from_report(&rep))
}

fn orthogonality_run(convention: NormConvention) -> Result<(Report, Duration)> {
    let start = Instant::now();
    let mut rep = Report::new("orthogonality");
    for a in [2, 4] {
        for b in [q(0, 1), q(1, 2)] {
            let params = DeformParams::graded(q(a, 1), b)?;
            for (system, diag, off) in [
                (RootSystem::trivial(2), ORTHO_DIAG_TOL, ORTHO_OFF_TOL),
                (z2(2, &[q(1, 2), q(1, 2)]), ORTHO_WEIGHTED_TOL, ORTHO_WEIGHTED_TOL),
            ] {
                let grid = Grid::new(&system, ORTHO_NR, ORTHO_NTHETA)?;
                let d = DeformedContext::new(ctx(system), params.clone());
                rep.extend(orthogonality_check(&d, &grid, ORTHO_T_MAX, ORTHO_L_MAX, convention, diag, off)?);
            }
        }
    }
    Ok((rep, start.elapsed()))
}

fn orthogonality() -> Result<Outcome> {
    let (rep, elapsed) = orthogonality_run(NormConvention::Half)?;
    let mut out = Outcome::from_report(&rep).within(ORTHO_BUDGET, elapsed);
    if !out.pass {
        let (alt, _) = orthogonality_run(NormConvention::Integrated)?;
        let s = alt.summary();
        out.notes.push(format!(
            "with the prefactor 1/a in place of 1/2 the same Gram matrices give {}/{} checks passing",
            s.passed, s.total
        ));
    }
    Ok(out)
}

fn fourier_eigen() -> Result<Outcome> {
    let mut rep = Report::new("fourier");
    let mut worst: f64 = 0.0;
    for a in [2, 4] {
        for b in [q(0, 1), q(1, 2)] {
            let params = DeformParams::graded(q(a, 1), b)?;
            let spec = KernelSpec::new(params.clone(), 2)?;
            let grid = TransformGrid::new(&spec, TransformGrid::DEFAULT_NZ, EIGEN_NANG)?;
            let d = DeformedContext::new(ctx(RootSystem::trivial(2)), params);
            let rows = transform_eigen(&d, &grid, &spec, EIGEN_TOTAL_MAX, EIGEN_TOTAL_MAX, Some(EIGEN_TOTAL_MAX))?;
            worst = rows.iter().map(|r| r.rel_err).fold(worst, f64::max);
            rep.extend(transform_eigen_check(&rows, EIGEN_TOL));
            let mut rng = sampling::rng(SEED + 7);
            let points: Vec<(Vec<f64>, Vec<f64>)> = (0..KERNEL_POINTS)
                .map(|_| {
                    let mut pt = || {
                        let r: f64 = rng.random_range(0.5..2.0);
                        let th: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                        vec![r * th.cos(), r * th.sin()]
                    };
                    (pt(), pt())
                })
                .collect();
            let (pde, radial) = kernel_pde_residual(&spec, &points);
            rep.push(deformed_dirac::report::CheckRecord::numeric(
                "kernel system residual",
                format!("a={a}"),
                pde.max(radial),
                0.0,
                KERNEL_TOL,
            ));
        }
    }
    let mut out = Outcome::from_report(&rep);
    out.detail.push_str(&format!("; worst eigenvalue error {worst:.1e}"));
    Ok(out)
}

fn kelvin() -> Result<Outcome> {
    let mut rng = sampling::rng(SEED + 8);
    let mut rep = Report::new("kelvin");
    for i in 0..KELVIN_TUPLES {
        let params = sampling::graded_params(&mut rng);
        let system = if i % 2 == 0 { z2(2, &random_ks(&mut rng, 2)) } else { RootSystem::trivial(3) };
        let d = ctx(system);
        rep.extend(kelvin_intertwine_check(&DeformedContext::new(d.clone(), params), KELVIN_DEGREE)?);
        rep.extend(a_minus2_suite(&d, KELVIN_DEGREE)?);
    }
    Ok(Outcome::from_report(&rep))
}

/// `Σ_{n ≤ N} ⟨x, y⟩^n / n!`.
fn exp_taylor(y: &[Q], order: u32) -> RadialExpr<Q> {
    let dim = y.len();
    let linear = (0..dim).fold(RadialExpr::zero(dim), |acc, i| {
        acc.add(&RadialExpr::term(q(0, 1), Monomial::var(dim, i), Multivector::scalar(dim, y[i].clone())))
    });
    let mut power = RadialExpr::constant(Multivector::one(dim));
    let mut sum = power.clone();
    for n in 1..=order {
        power = power.mul(&linear).scale_q(&q(1, n.into()));
        sum = sum.add(&power);
    }
    sum
}

fn dunkl_kernel() -> Result<Outcome> {
    let mut pass = true;
    let mut notes = Vec::new();
    let mut rng = sampling::rng(SEED + 9);
    for system in random_groups(&mut rng).into_iter().chain([RootSystem::builtin(Family::B, 2, &[q(1, 2), q(1, 3)])?]) {
        let label = format!("{:?} in R^{}", system.family(), system.dim());
        let d = DunklContext::new(system);
        if !kernel_series(&d, SERIES_ORDER)?.residual_is_zero(&d) {
            pass = false;
            notes.push(format!("{label}: nonzero re-substitution residual"));
        }
    }
    for dim in [2usize, 3] {
        let d = DunklContext::new(RootSystem::trivial(dim));
        let y: Vec<Q> = (0..dim).map(|_| sampling::rational(&mut rng, -2, 2, 5)).collect();
        if kernel_series(&d, SERIES_ORDER)?.truncated(&y) != exp_taylor(&y, SERIES_ORDER) {
            pass = false;
            notes.push(format!("k=0, m={dim}: series differs from the exponential's Taylor polynomial"));
        }
    }
    let tr = DunklTransform::new(ctx(z2(2, &[q(1, 2), q(1, 3)])), PROBE_ORDER, PROBE_NANG)?;
    let probe = dunkl_eigen_probe(&tr, 1, 1, PROBE_TOL)?;
    let mut out = Outcome::from_report(&probe);
    out.pass &= pass;
    out.detail = format!(
        "series residual and Taylor check {}; eigen-probe {}",
        if pass { "exact" } else { "failed" },
        out.detail
    );
    out.notes = notes;
    Ok(out)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("osp(1|2) relations", osp),
        ("factorization classification", factorization),
        ("commutativity boundary", commutativity),
        ("Laguerre closed form", laguerre_closed_form),
        ("lowering and oscillator", lowering_oscillator),
        ("orthogonality", orthogonality),
        ("Fourier eigenvalues", fourier_eigen),
        ("Kelvin machinery", kelvin),
        ("Dunkl kernel oracle", dunkl_kernel),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            run().unwrap_or_else(|e| Outcome { pass: false, detail: format!("error: {e}"), notes: Vec::new() });
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {} {name}: {verdict} ({}, {:.1} s)", i + 1, outcome.detail, start.elapsed().as_secs_f64());
        for n in &outcome.notes {
            println!("    note: {n}");
        }
        failed += usize::from(!outcome.pass);
    }
    println!("acceptance: {}/9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
