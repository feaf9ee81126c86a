//! Seeded random rationals and parameter tuples for randomized checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::symalg::{DeformParams, Q};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform-ish rational `p/q` in `[lo, hi]` with `1 ≤ q ≤ max_den`.
pub fn rational(rng: &mut impl Rng, lo: i64, hi: i64, max_den: i64) -> Q {
    let d = rng.random_range(1..=max_den);
    let n = rng.random_range(lo * d..=hi * d);
    Q::new(n.into(), d.into())
}

/// `a ∈ (0, 4]`, `b ∈ [-2, 2]`, `c ∈ [-2, 3] \ {-1}`.
pub fn deform_params(rng: &mut impl Rng) -> DeformParams {
    loop {
        let a = rational(rng, 0, 4, 5);
        let b = rational(rng, -2, 2, 5);
        let c = rational(rng, -2, 3, 5);
        if let Ok(p) = DeformParams::new(a.clone(), b, c) {
            if a > Q::from_integer(0.into()) {
                return p;
            }
        }
    }
}

/// Graded tuple `c = 2/a - 1` with `a ∈ (0, 4]`, `b ∈ [-1, 1]`.
pub fn graded_params(rng: &mut impl Rng) -> DeformParams {
    loop {
        let a = rational(rng, 0, 4, 4);
        let b = rational(rng, -1, 1, 4);
        if a > Q::from_integer(0.into()) {
            return DeformParams::graded(a, b).expect("a > 0");
        }
    }
}

/// Multiplicity in `[0, 2]`.
pub fn multiplicity(rng: &mut impl Rng) -> Q {
    rational(rng, 0, 2, 4)
}
