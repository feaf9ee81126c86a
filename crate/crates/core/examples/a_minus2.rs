//! The `a = -2` operator as the inversion conjugate of the Dunkl Dirac
//! operator, and its transform.

use std::sync::Arc;

use deformed_dirac::deformed::test_inputs;
use deformed_dirac::dunkl::DunklContext;
use deformed_dirac::q;
use deformed_dirac::reflection::{Family, RootSystem};
use deformed_dirac::transform::{a_minus2_suite, fourier_minus2_check, minus2_params, DunklTransform};

fn main() -> deformed_dirac::Result<()> {
    let ctx = Arc::new(DunklContext::new(RootSystem::builtin(Family::Z2, 2, &[q(1, 2), q(1, 2)])?));
    let p = minus2_params(&ctx.system().mu())?;
    println!("(a, b, c) = ({}, {}, {})", p.a, p.b, p.c);
    let rep = a_minus2_suite(&ctx, 3)?;
    println!("{}/{} exact checks", rep.summary().passed, rep.summary().total);
    let tr = DunklTransform::new(ctx.clone(), 40, 96)?;
    let f = &test_inputs(2, 1, false)[1];
    let rep = fourier_minus2_check(&tr, f, 80, 96, 1e-6)?;
    println!("integral form against I_k F_k I_k: {}/{}", rep.summary().passed, rep.summary().total);
    Ok(())
}
