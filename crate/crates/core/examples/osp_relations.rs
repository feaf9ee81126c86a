//! The eight osp(1|2) relations for one deformed operator on the `A_2` group.

use std::sync::Arc;

use deformed_dirac::deformed::{osp_relations_check, test_inputs, DeformedContext};
use deformed_dirac::dunkl::DunklContext;
use deformed_dirac::reflection::{Family, RootSystem};
use deformed_dirac::{q, DeformParams};

fn main() -> deformed_dirac::Result<()> {
    let system = RootSystem::builtin(Family::A, 3, &[q(2, 3)])?;
    let params = DeformParams::new(q(4, 3), q(-1, 2), q(1, 5))?;
    let ctx = DeformedContext::new(Arc::new(DunklContext::new(system)), params);
    println!("mu = {}, delta = {}", ctx.mu(), ctx.delta());
    let mut total = 0;
    for f in test_inputs(ctx.dim(), 2, true) {
        let rep = osp_relations_check(&ctx, &f);
        assert!(rep.all_passed(), "{:?}", rep.failures().next());
        total += rep.summary().total;
    }
    println!("{total} relation checks hold exactly");
    Ok(())
}
