use deformed_dirac::symalg::q_to_f64;
use deformed_dirac::{q, ExactScalar, Monomial, Multivector, RadialExpr, Q};
use proptest::prelude::*;

const DIM: usize = 3;

fn small_q() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn multivector() -> impl Strategy<Value = Multivector<Q>> {
    prop::collection::vec(small_q(), 1 << DIM).prop_map(|cs| {
        let mut m = Multivector::zero(DIM);
        for (b, c) in cs.into_iter().enumerate() {
            m.add_blade(b as u32, c);
        }
        m
    })
}

/// A few terms `r^s x^α e_B` with small exponents.
fn radial() -> impl Strategy<Value = RadialExpr<Q>> {
    let term = (-2i64..=2, prop::collection::vec(0u16..=2, DIM), 0u32..(1 << DIM), small_q())
        .prop_map(|(s, e, b, c)| RadialExpr::term(q(s, 2), Monomial::from_exps(&e), Multivector::blade(DIM, b, c)));
    prop::collection::vec(term, 1..4).prop_map(|ts| ts.iter().fold(RadialExpr::zero(DIM), |acc, t| acc.add(t)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn clifford_product_is_associative(a in multivector(), b in multivector(), c in multivector()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn conjugation_reverses_products(a in multivector(), b in multivector()) {
        prop_assert_eq!(a.mul(&b).bar(), b.bar().mul(&a.bar()));
    }

    #[test]
    fn exact_powers_add_exponents(n in 1i64..6, d in 1i64..6, x in small_q(), y in small_q()) {
        let base = q(n, d);
        prop_assume!(base != q(1, 1));
        let lhs = ExactScalar::power(&base, &x).unwrap() * ExactScalar::power(&base, &y).unwrap();
        prop_assert_eq!(lhs.canonicalize(), ExactScalar::power(&base, &(x + y)).unwrap().canonicalize());
    }

    #[test]
    fn radial_product_is_associative(f in radial(), g in radial(), h in radial()) {
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
    }

    #[test]
    fn radial_product_distributes(f in radial(), g in radial(), h in radial()) {
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in radial(), g in radial(), x in prop::collection::vec(0.3f64..1.5, DIM)) {
        let (fv, gv) = (f.eval(&x), g.eval(&x));
        let prod = deformed_dirac::clifford::dense_mul(&fv, &gv);
        for (p, e) in prod.iter().zip(f.mul(&g).eval(&x)) {
            prop_assert!((p - e).abs() <= 1e-9 * (1.0 + e.abs()));
        }
    }
}

#[test]
fn generators_anticommute() {
    for i in 1..=DIM {
        for j in 1..=DIM {
            let (ei, ej) = (Multivector::<Q>::e(DIM, i), Multivector::<Q>::e(DIM, j));
            let anti = ei.mul(&ej).add(&ej.mul(&ei));
            let expect = if i == j { Multivector::scalar(DIM, q(-2, 1)) } else { Multivector::zero(DIM) };
            assert_eq!(anti, expect);
        }
    }
}

#[test]
fn last_coordinate_squared_is_rewritten() {
    let x = |i| RadialExpr::<Q>::term(q(0, 1), Monomial::var(DIM, i), Multivector::one(DIM));
    let sum = (0..DIM).fold(RadialExpr::zero(DIM), |acc, i| acc.add(&x(i).mul(&x(i))));
    assert_eq!(sum, RadialExpr::constant(Multivector::one(DIM)).mul_r(&q(2, 1)));
}

#[test]
fn irrational_scalar_evaluates() {
    let s = ExactScalar::power(&q(3, 2), &q(1, 2)).unwrap();
    assert!(s.as_rational().is_none());
    let digits = 12;
    let fixed = s.eval_fixed(digits);
    let approx = q_to_f64(&Q::new(fixed, num_bigint::BigInt::from(10).pow(digits)));
    assert!((approx - 1.5f64.sqrt()).abs() < 1e-11);
}
