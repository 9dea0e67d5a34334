//! Seeded generators of test maps and polynomials.

use dynlab_core::exactnum::{int, Rational, UniPoly};
use dynlab_core::ratmap::RationalMap;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_d1a1;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int_poly(rng: &mut ChaCha8Rng, degree: usize, bound: i64) -> UniPoly<Rational> {
    loop {
        let c: Vec<i64> = (0..=degree)
            .map(|_| rng.gen_range(-bound..=bound))
            .collect();
        if c[degree] != 0 {
            return UniPoly::from_ints(&(), &c);
        }
    }
}

/// A map of exact degree d with small integer coefficients.
pub fn map_of_degree(rng: &mut ChaCha8Rng, d: usize, bound: i64) -> RationalMap<Rational> {
    loop {
        let (df, dg) = if rng.gen_bool(0.5) {
            (d, rng.gen_range(0..=d))
        } else {
            (rng.gen_range(0..=d), d)
        };
        let f = int_poly(rng, df, bound);
        let g = int_poly(rng, dg, bound);
        if let Ok(m) = RationalMap::from_polys(f, g) {
            if m.degree() == d {
                return m;
            }
        }
    }
}

/// Product of (t - r)^e over the given roots.
pub fn from_roots(roots: &[(i64, u32)]) -> UniPoly<Rational> {
    roots.iter().fold(UniPoly::one(&()), |acc, &(r, e)| {
        acc.mul(&UniPoly::new((), vec![int(-r), int(1)]).pow(e))
    })
}
