//! Which (a, b, c) make the sum of squared components a multiple of the
//! Dunkl Laplacian.

use std::sync::Arc;

use deformed_dirac::deformed::{factorization_check, factorization_classify, test_inputs};
use deformed_dirac::dunkl::DunklContext;
use deformed_dirac::q;
use deformed_dirac::reflection::{Family, RootSystem};

fn main() -> deformed_dirac::Result<()> {
    for m in [2usize, 3, 4] {
        let ctx = Arc::new(DunklContext::new(RootSystem::trivial(m)));
        let inputs = test_inputs(m, 2, false);
        println!("k = 0, m = {m}:");
        for t in factorization_classify(m, &q(m as i64, 1), true) {
            let ok = factorization_check(&ctx, &t.params()?, &inputs).all_passed();
            println!("  (a, b, c) = ({}, {}, {})  direct check: {ok}", t.a, t.b, t.c);
        }
    }
    let system = RootSystem::builtin(Family::Z2, 3, &[q(1, 2), q(1, 3), q(1, 4)])?;
    let mu = system.mu();
    println!("Z2^3, mu = {mu}:");
    for t in factorization_classify(3, &mu, false) {
        println!("  (a, b, c) = ({}, {}, {})", t.a, t.b, t.c);
    }
    Ok(())
}
