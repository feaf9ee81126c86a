//! Gram matrix of the damped Laguerre functions by quadrature.

use std::sync::Arc;

use deformed_dirac::deformed::DeformedContext;
use deformed_dirac::dunkl::DunklContext;
use deformed_dirac::laguerre::NormConvention;
use deformed_dirac::reflection::RootSystem;
use deformed_dirac::transform::{gram_table, Grid};
use deformed_dirac::{q, DeformParams};

fn main() -> deformed_dirac::Result<()> {
    let system = RootSystem::trivial(2);
    let grid = Grid::new(&system, 40, 128)?;
    let ctx = DeformedContext::new(Arc::new(DunklContext::new(system)), DeformParams::graded(q(4, 1), q(1, 2))?);
    for e in gram_table(&ctx, &grid, 2, 1, NormConvention::Integrated)? {
        if e.t == e.s && e.l == e.m {
            println!(
                "<phi_{0},{1}, phi_{0},{1}> = {2:.12}  relative error {3:.1e}",
                e.t, e.l, e.measured[0], e.rel_err
            );
        }
    }
    let half = gram_table(&ctx, &grid, 0, 0, NormConvention::Half)?;
    println!("with a 1/2 prefactor instead of 1/a the ground state is off by {:.3}", half[0].rel_err);
    Ok(())
}
