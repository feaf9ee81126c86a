//! Kelvin maps conjugating the deformed operator to the Dunkl Dirac operator,
//! with scale factors kept exact.

use std::sync::Arc;

use deformed_dirac::deformed::{test_inputs, DeformedContext};
use deformed_dirac::dunkl::DunklContext;
use deformed_dirac::reflection::{Family, RootSystem};
use deformed_dirac::transform::{exact, kelvin_intertwine_check, kelvin_p, kelvin_q};
use deformed_dirac::{q, DeformParams};

fn main() -> deformed_dirac::Result<()> {
    let params = DeformParams::graded(q(3, 1), q(2, 7))?;
    let f = exact(&test_inputs(2, 2, true)[9]);
    let pf = kelvin_p(&params, &f)?;
    println!("f = {f}\nP f = {pf}\nQ P f = {}", kelvin_q(&params, &pf)?);
    let dunkl = Arc::new(DunklContext::new(RootSystem::builtin(Family::Z2, 2, &[q(1, 2), q(1, 3)])?));
    let rep = kelvin_intertwine_check(&DeformedContext::new(dunkl, params), 3)?;
    println!("{}/{} intertwining checks", rep.summary().passed, rep.summary().total);
    Ok(())
}
