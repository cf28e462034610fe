//! Deterministic sampling of random polynomials for tests, demos, and the
//! seeded CLI commands. All randomness flows through a ChaCha stream cipher
//! keyed by an explicit seed, so a (seed, shape) pair names one polynomial
//! forever.

use crate::poly::{Monomial, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random polynomial with `terms` attempted monomials of total degree at
/// most `max_degree` and small integer coefficients in [-9, 9] \ {0}.
/// Colliding monomials merge, so the result may have fewer terms; it may
/// even be zero.
pub fn random_polynomial(
    rng: &mut ChaCha8Rng,
    nvars: usize,
    max_degree: u32,
    terms: usize,
) -> Polynomial {
    let mut f = Polynomial::zero(nvars);
    for _ in 0..terms {
        let d = rng.gen_range(0..=max_degree);
        let mut exps = vec![0u32; nvars];
        let mut rem = d;
        for slot in 0..nvars {
            let e = if slot + 1 == nvars { rem } else { rng.gen_range(0..=rem) };
            exps[slot] = e;
            rem -= e;
        }
        let mut c = 0i64;
        while c == 0 {
            c = rng.gen_range(-9..=9);
        }
        f.add_term(Monomial(exps), BigRational::from_integer(BigInt::from(c)));
    }
    f
}
