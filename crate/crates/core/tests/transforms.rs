use std::sync::Arc;

use deformed_dirac::deformed::DeformedContext;
use deformed_dirac::dunkl::DunklContext;
use deformed_dirac::reflection::{Family, RootSystem};
use deformed_dirac::symalg::q_to_f64;
use deformed_dirac::transform::{
    gauss_jacobi, gauss_laguerre, kernel_pde_residual, mehta_constant, mehta_constant_z2, transform_eigen,
    transform_eigen_check, AngularRule, KernelSpec, TransformGrid,
};
use deformed_dirac::{q, DeformParams};
use proptest::prelude::*;
use statrs::function::beta::beta;
use statrs::function::gamma::gamma;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jacobi_rule_is_exact_on_low_degrees(n in 2usize..20, alpha in -0.9f64..3.0, beta_ in -0.9f64..3.0, j in 0u32..6) {
        prop_assume!((j as usize) < 2 * n);
        // ∫ (1-x)^α (1+x)^{β+j} = 2^{α+β+j+1} B(α+1, β+j+1)
        let rule = gauss_jacobi(n, alpha, beta_);
        let got: f64 = rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * (1.0 + x).powi(j as i32)).sum();
        let expect = 2f64.powf(alpha + beta_ + j as f64 + 1.0) * beta(alpha + 1.0, beta_ + j as f64 + 1.0);
        prop_assert!((got - expect).abs() <= 1e-11 * expect.abs());
    }

    #[test]
    fn laguerre_rule_reproduces_gamma(n in 2usize..30, alpha in -0.9f64..4.0, j in 0u32..8) {
        prop_assume!((j as usize) < 2 * n);
        let rule = gauss_laguerre(n, alpha);
        let got: f64 = rule.nodes.iter().zip(&rule.weights).map(|(u, w)| w * u.powi(j as i32)).sum();
        let expect = gamma(alpha + j as f64 + 1.0);
        prop_assert!((got - expect).abs() <= 1e-10 * expect);
    }

    #[test]
    fn mehta_constant_matches_product_formula(k1 in 0i64..8, k2 in 0i64..8) {
        let s = RootSystem::builtin(Family::Z2, 2, &[q(k1, 4), q(k2, 4)]).unwrap();
        let numeric = mehta_constant(&s, 64).unwrap();
        let closed = mehta_constant_z2(&s).unwrap();
        prop_assert!((numeric - closed).abs() <= 1e-10 * closed);
    }

    #[test]
    fn kernel_solves_its_system(an in 1i64..16, bn in -4i64..4, seed in any::<u64>()) {
        let p = DeformParams::graded(q(an, 4), q(bn, 4)).unwrap();
        let spec = KernelSpec::new(p, 3).unwrap();
        let mut s = seed;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 11) as f64 / (1u64 << 53) as f64
        };
        let mut point = || (0..3).map(|_| 0.4 + 1.2 * next()).collect::<Vec<f64>>();
        let pts: Vec<(Vec<f64>, Vec<f64>)> = (0..20).map(|_| (point(), point())).collect();
        let (pde, radial) = kernel_pde_residual(&spec, &pts);
        prop_assert!(pde < 1e-10 && radial < 1e-10, "{} {}", pde, radial);
    }
}

#[test]
fn sphere_rule_integrates_the_weight() {
    // roots have |α|² = 2, so w_k = 2^k |x_1|^{2k} and ∫_{S^1} w_k = 2^{k+1} B(k+1/2, 1/2)
    let k = q(3, 4);
    let s = RootSystem::builtin(Family::Z2, 2, &[k.clone(), q(0, 1)]).unwrap();
    let rule = AngularRule::new(&s, 48).unwrap();
    let mass: f64 = rule.weights.iter().sum();
    let kf = q_to_f64(&k);
    assert!((mass - 2f64.powf(kf + 1.0) * beta(kf + 0.5, 0.5)).abs() < 1e-12);
}

#[test]
fn eigenvalues_at_irrational_scale() {
    // a = 3 makes every constant of the transform irrational
    let p = DeformParams::graded(q(3, 1), q(1, 4)).unwrap();
    let spec = KernelSpec::new(p.clone(), 3).unwrap();
    let grid = TransformGrid::new(&spec, TransformGrid::DEFAULT_NZ, 32).unwrap();
    let d = DeformedContext::new(Arc::new(DunklContext::new(RootSystem::trivial(3))), p);
    let rows = transform_eigen(&d, &grid, &spec, 2, 1, Some(2)).unwrap();
    let rep = transform_eigen_check(&rows, 1e-8);
    assert!(rep.all_passed(), "{:?}", rows);
}

#[test]
fn transform_needs_the_graded_case() {
    let p = DeformParams::new(q(3, 1), q(0, 1), q(0, 1)).unwrap();
    assert!(KernelSpec::new(p, 2).is_err());
}
