//! The components `D_i` commute exactly on the line `c = 2/a - 1`.

use std::sync::Arc;

use deformed_dirac::deformed::{components_commute, DeformedContext};
use deformed_dirac::dunkl::DunklContext;
use deformed_dirac::reflection::{Family, RootSystem};
use deformed_dirac::{q, DeformParams};

fn main() -> deformed_dirac::Result<()> {
    let dunkl = Arc::new(DunklContext::new(RootSystem::builtin(Family::B, 2, &[q(1, 2), q(1, 3)])?));
    let a = q(2, 3);
    for c in [q(2, 1), q(0, 1), q(1, 2)] {
        let r = components_commute(
            &DeformedContext::new(dunkl.clone(), DeformParams::new(a.clone(), q(1, 4), c.clone())?),
            3,
        );
        println!("a = {a}, c = {c}: commute = {}", r.commute);
        if let Some(w) = r.witness {
            println!("  [D_{}, D_{}] ({}) = {}", w.i, w.j, w.input, w.commutator);
        }
    }
    Ok(())
}
