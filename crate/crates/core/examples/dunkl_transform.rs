//! Dunkl kernel series, Mehta constant, Dunkl transform eigenvalues and the
//! three routes to the deformed transform.

use std::sync::Arc;

use deformed_dirac::deformed::DeformedContext;
use deformed_dirac::dunkl::{kernel_series, DunklContext};
use deformed_dirac::reflection::{Family, RootSystem};
use deformed_dirac::transform::{
    dunkl_eigen_probe, exp_fourier_routes, mehta_constant, mehta_constant_z2, DunklTransform, TransformGrid,
};
use deformed_dirac::{q, DeformParams};

fn main() -> deformed_dirac::Result<()> {
    let system = RootSystem::builtin(Family::Z2, 2, &[q(1, 2), q(1, 2)])?;
    println!(
        "c_k = {:.15} (closed form {:.15})",
        mehta_constant(&system, 96)?,
        mehta_constant_z2(&system).unwrap_or(f64::NAN)
    );
    let ctx = Arc::new(DunklContext::new(system.clone()));
    let series = kernel_series(&ctx, 4)?;
    for ((xm, ym), c) in series.component(2) {
        println!("K_2 term: {c} x^{:?} y^{:?}", xm.0, ym.0);
    }
    println!("series residual vanishes: {}", series.residual_is_zero(&ctx));

    let tr = DunklTransform::new(ctx.clone(), 56, 96)?;
    for rec in dunkl_eigen_probe(&tr, 1, 2, 1e-8)?.records {
        println!("{} [{}]: gap {}", rec.relation, rec.input, rec.lhs);
    }
    let dctx = DeformedContext::new(ctx, DeformParams::graded(q(4, 1), q(1, 2))?);
    let grid = TransformGrid::weighted(4.0, 0.5, &system, 40.0, 100, 96)?;
    for row in exp_fourier_routes(&dctx, &tr, &grid, 1, 1)? {
        println!(
            "t = {}, l = {}: Kelvin route {:.1e}, integral route {:.1e}",
            row.t, row.l, row.kelvin_gap, row.integral_gap
        );
    }
    Ok(())
}
