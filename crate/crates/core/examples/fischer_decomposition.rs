//! Splits a random element of the polynomial span into `x_a`-towers over
//! radially shifted monogenics.

use std::sync::Arc;

use deformed_dirac::deformed::DeformedContext;
use deformed_dirac::dunkl::DunklContext;
use deformed_dirac::fischer::{fischer_components_check, fischer_decompose, random_span_element};
use deformed_dirac::reflection::{Family, RootSystem};
use deformed_dirac::sampling;
use deformed_dirac::{q, DeformParams};

fn main() -> deformed_dirac::Result<()> {
    let dunkl = Arc::new(DunklContext::new(RootSystem::builtin(Family::Z2, 2, &[q(1, 2), q(1, 4)])?));
    let ctx = DeformedContext::new(dunkl, DeformParams::new(q(3, 1), q(1, 2), q(-1, 3))?);
    let f = random_span_element(&ctx, 2, &mut sampling::rng(7));
    println!("f = {f}");
    let comps = fischer_decompose(&ctx, &f, 2)?;
    for c in &comps {
        println!("  t = {}, degree {}: M = {}", c.t, c.j, c.monogenic);
    }
    let rep = fischer_components_check(&ctx, &f, &comps);
    println!("{}/{} checks", rep.summary().passed, rep.summary().total);
    Ok(())
}
