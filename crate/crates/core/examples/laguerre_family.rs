//! Clifford-Laguerre polynomials by recursion and in closed form.

use std::sync::Arc;

use deformed_dirac::deformed::DeformedContext;
use deformed_dirac::dunkl::DunklContext;
use deformed_dirac::fischer::monogenic_basis;
use deformed_dirac::laguerre::LaguerreFamily;
use deformed_dirac::reflection::RootSystem;
use deformed_dirac::{q, DeformParams};

fn main() -> deformed_dirac::Result<()> {
    let dunkl = Arc::new(DunklContext::new(RootSystem::trivial(3)));
    let m = monogenic_basis(&dunkl, 1).element(0);
    let ctx = DeformedContext::new(dunkl, DeformParams::graded(q(4, 1), q(1, 3))?);
    let mut fam = LaguerreFamily::new(ctx, 1, m)?;
    println!("gamma = {}", fam.gamma());
    for t in 0..4 {
        let row = fam.table_row(t);
        println!(
            "t = {t}: coefficients {:?}, lowering {}, norm {:.6e}",
            row.coefficients, row.lowering_constant, row.norm_constant
        );
    }
    let mut rep = fam.closed_form_check(4)?;
    rep.extend(fam.laguerre_match_check(4));
    rep.extend(fam.lowering_check(4));
    rep.extend(fam.oscillator_check(4));
    println!("{}/{} identities hold", rep.summary().passed, rep.summary().total);
    Ok(())
}
