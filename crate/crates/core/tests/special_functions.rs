use std::sync::Arc;

use deformed_dirac::deformed::DeformedContext;
use deformed_dirac::dunkl::DunklContext;
use deformed_dirac::fischer::{
    fischer_components_check, fischer_decompose, harmonic_basis, harmonic_dim, monogenic_basis, monogenic_dim,
    random_span_element, singular_locus,
};
use deformed_dirac::laguerre::{laguerre_coeffs, laguerre_eval, LaguerreFamily};
use deformed_dirac::reflection::{Family, RootSystem};
use deformed_dirac::sampling;
use deformed_dirac::symalg::q_to_f64;
use deformed_dirac::{q, DeformParams, Error};
use proptest::prelude::*;

fn z2(k1: (i64, i64), k2: (i64, i64)) -> RootSystem {
    RootSystem::builtin(Family::Z2, 2, &[q(k1.0, k1.1), q(k2.0, k2.1)]).unwrap()
}

fn dctx(system: RootSystem, p: DeformParams) -> DeformedContext {
    DeformedContext::new(Arc::new(DunklContext::new(system)), p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn span_elements_decompose_back(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let p = sampling::deform_params(&mut rng);
        let d = dctx(z2((1, 2), (1, 3)), p);
        prop_assume!((0..=2).all(|l| !singular_locus(d.params(), &d.mu(), l)));
        let f = random_span_element(&d, 2, &mut rng);
        let comps = fischer_decompose(&d, &f, 2).unwrap();
        let rep = fischer_components_check(&d, &f, &comps);
        prop_assert!(rep.all_passed(), "{:?}", rep.failures().next());
    }

    #[test]
    fn laguerre_table_matches_pointwise(n in 0u32..7, an in 0i64..12, u in 0.05f64..6.0) {
        let alpha = q(an, 4);
        let value: f64 = laguerre_coeffs(n, &alpha).iter().enumerate().map(|(j, c)| q_to_f64(c) * u.powi(j as i32)).sum();
        let reference = laguerre_eval(n, q_to_f64(&alpha), u);
        prop_assert!((value - reference).abs() <= 1e-10 * (1.0 + reference.abs()));
    }

    #[test]
    fn families_satisfy_their_identities(seed in any::<u64>(), ell in 0u32..3) {
        let mut rng = sampling::rng(seed);
        let p = sampling::deform_params(&mut rng);
        let system = RootSystem::builtin(Family::A, 3, &[sampling::multiplicity(&mut rng)]).unwrap();
        let d = dctx(system, p);
        prop_assume!(!singular_locus(d.params(), &d.mu(), ell));
        let m = monogenic_basis(d.dunkl(), ell).element(0);
        let mut fam = LaguerreFamily::new(d, ell, m).unwrap();
        let mut rep = fam.closed_form_check(3).unwrap();
        rep.extend(fam.lowering_check(3));
        rep.extend(fam.oscillator_check(3));
        prop_assert!(rep.all_passed(), "{:?}", rep.failures().next());
    }
}

#[test]
fn basis_dimensions() {
    for system in
        [RootSystem::trivial(3), z2((1, 2), (2, 3)), RootSystem::builtin(Family::B, 2, &[q(1, 3), q(1, 5)]).unwrap()]
    {
        let ctx = DunklContext::new(system);
        for l in 0..4 {
            assert_eq!(harmonic_basis(&ctx, l).len(), harmonic_dim(ctx.dim(), l));
            assert_eq!(monogenic_basis(&ctx, l).len(), monogenic_dim(ctx.dim(), l));
        }
    }
}

#[test]
fn singular_parameters_are_refused() {
    // γ_0 = a/2 + (μ-1)/(1+c) vanishes at a = 2, μ = 2, c = -2
    let p = DeformParams::new(q(2, 1), q(0, 1), q(-2, 1)).unwrap();
    let d = dctx(RootSystem::trivial(2), p);
    assert!(singular_locus(d.params(), &d.mu(), 0));
    let m = monogenic_basis(d.dunkl(), 0).element(0);
    assert!(matches!(LaguerreFamily::new(d.clone(), 0, m), Err(Error::SingularLocus(_))));
    let f = random_span_element(&d, 1, &mut sampling::rng(1));
    assert!(matches!(fischer_decompose(&d, &f, 1), Err(Error::SingularLocus(_))));
}
