//! Deterministic seeded sampling of small rationals for randomized exact
//! checks. Every randomized test routes through these helpers so runs are
//! reproducible from a single seed.

use super::poly::Assignment;
use super::{rat_int, Rational};
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Default seed used across the whole crate when none is configured.
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

/// Deterministic stream cipher RNG from a 64-bit seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational with integer part in [-97, 97] and denominator in
/// [1, 13]; suitable for exact linear algebra without coefficient blowup.
pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let numer = rng.random_range(-97i64..=97);
    let denom = rng.random_range(1i64..=13);
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Small nonzero rational, same bounds as `small_rational`.
pub fn small_nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = small_rational(rng);
        if !num_traits::Zero::is_zero(&r) {
            return r;
        }
    }
}

/// Small positive rational that is a perfect square, returned along with
/// its exact square root.
pub fn square_sample(rng: &mut ChaCha8Rng) -> (Rational, Rational) {
    let root = small_nonzero_rational(rng);
    let root = if num_traits::Signed::is_negative(&root) {
        -root
    } else {
        root
    };
    (&root * &root, root)
}

/// Assignment binding each listed variable to an independent small
/// rational.
pub fn random_assignment(rng: &mut ChaCha8Rng, names: &[&str]) -> Assignment {
    let mut at = Assignment::new();
    for name in names {
        at = at.set(name, small_rational(rng));
    }
    at
}

/// A batch of assignments for rank sampling.
pub fn assignment_batch(rng: &mut ChaCha8Rng, names: &[&str], count: usize) -> Vec<Assignment> {
    (0..count).map(|_| random_assignment(rng, names)).collect()
}

/// Integer sample in a small symmetric range, as a rational.
pub fn small_int(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    rat_int(rng.random_range(-bound..=bound))
}
