//! Eigenvalues of the explicit-kernel transform on the Laguerre basis.

use std::sync::Arc;

use deformed_dirac::deformed::DeformedContext;
use deformed_dirac::dunkl::DunklContext;
use deformed_dirac::reflection::RootSystem;
use deformed_dirac::transform::{kernel_pde_residual, transform_eigen, KernelSpec, TransformGrid};
use deformed_dirac::{q, DeformParams};

fn main() -> deformed_dirac::Result<()> {
    let params = DeformParams::graded(q(4, 1), q(1, 2))?;
    let spec = KernelSpec::new(params.clone(), 2)?;
    let grid = TransformGrid::new(&spec, TransformGrid::DEFAULT_NZ, 256)?;
    let ctx = DeformedContext::new(Arc::new(DunklContext::new(RootSystem::trivial(2))), params);
    for row in transform_eigen(&ctx, &grid, &spec, 3, 2, Some(4))? {
        let [mr, mi] = row.measured;
        println!("t = {}, l = {}: {mr:+.12} {mi:+.12}i  (relative error {:.1e})", row.t, row.l, row.rel_err);
    }
    let pts = vec![(vec![0.7, -0.4], vec![1.1, 0.3]), (vec![-1.5, 0.2], vec![0.6, 0.9])];
    let (pde, radial) = kernel_pde_residual(&spec, &pts);
    println!("kernel system residuals: {pde:.1e}, {radial:.1e}");
    Ok(())
}
