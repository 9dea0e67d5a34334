use dynlab_core::exactnum::{
    int, split_eval, AlgElem, AlgebraError, ExtContext, Field, Rational, UniPoly,
};
use dynlab_core::orbit::{bad_primes, congruent_points, orbit, reduce_point, ReducedMap};
use dynlab_core::primeledger::primes_up_to;
use dynlab_core::ratmap::ProjPoint;
use num_bigint::{BigInt, BigUint};
use rand::seq::SliceRandom;
use rand::Rng;

use super::SuiteConfig;
use crate::oracle::sylvester_resultant;
use crate::random;
use crate::report::{Check, SuiteResult};

const ALGEBRA: &str = "algebra-properties";
const PROPAGATION: &str = "congruence-propagation";

fn int_coeffs(p: &UniPoly<Rational>) -> Vec<BigInt> {
    p.coeffs().iter().map(|c| c.to_integer()).collect()
}

fn radical_cases(cfg: &SuiteConfig) -> (usize, Vec<String>) {
    let mut rng = random::rng(cfg.seed ^ 0x21);
    let quadratics = [1i64, 2, 3, 5, 7];
    let mut failures = Vec::new();
    for case in 0..200 {
        // irreducible pieces: t - r for small r, t^2 + k
        let mut pool: Vec<(bool, i64)> = (-4..=4)
            .map(|r| (true, r))
            .chain(quadratics.iter().map(|&k| (false, k)))
            .collect();
        pool.shuffle(&mut rng);
        let piece = |&(lin, v): &(bool, i64)| {
            if lin {
                UniPoly::<Rational>::from_ints(&(), &[-v, 1])
            } else {
                UniPoly::from_ints(&(), &[v, 0, 1])
            }
        };
        let na = rng.gen_range(1..=3);
        let a_set = &pool[..na];
        let b_set: Vec<(bool, i64)> = pool.iter().filter(|_| rng.gen_bool(0.6)).cloned().collect();
        let build = |set: &[(bool, i64)], rng: &mut rand_chacha::ChaCha8Rng| {
            set.iter().fold(
                UniPoly::from_ints(&(), &[rng.gen_range(1..=3)]),
                |acc, x| acc.mul(&piece(x).pow(rng.gen_range(1..=3))),
            )
        };
        let a = build(a_set, &mut rng);
        let b = build(&b_set, &mut rng);
        let expected = a_set.iter().all(|x| b_set.contains(x));
        match a.radical_divides(&b) {
            Ok(got) if got == expected => {}
            other => failures.push(format!("case {case}: got {other:?}, expected {expected}")),
        }
    }
    (200, failures)
}

fn gcd_resultant_cases(cfg: &SuiteConfig) -> (usize, Vec<String>) {
    let mut rng = random::rng(cfg.seed ^ 0x22);
    let mut failures = Vec::new();
    for case in 0..100 {
        let da = rng.gen_range(1..=4);
        let db = rng.gen_range(1..=4);
        let dc = rng.gen_range(0..=2);
        let a = random::int_poly(&mut rng, da, 6);
        let b = random::int_poly(&mut rng, db, 6);
        let c = random::int_poly(&mut rng, dc, 6);
        let g = a.gcd(&b).unwrap();
        let lhs = a.mul(&c).gcd(&b.mul(&c)).unwrap();
        let rhs = c.mul(&g).monic().unwrap();
        let r_ab = a.resultant(&b).unwrap();
        let r_ac = a.resultant(&c).unwrap();
        let r_abc = a.resultant(&b.mul(&c)).unwrap();
        let oracle = Rational::from(sylvester_resultant(&int_coeffs(&a), &int_coeffs(&b)));
        let checks = [
            ("gcd(ac, bc) = c gcd(a, b)", lhs == rhs),
            ("Res(a, bc) = Res(a, b) Res(a, c)", r_abc == &r_ab * &r_ac),
            ("Res matches Sylvester determinant", r_ab == oracle),
            (
                "Res = 0 iff common factor",
                num_traits::Zero::is_zero(&r_ab) == (g.deg0() > 0),
            ),
            (
                "gcd divides both",
                g.divides(&a).unwrap() && g.divides(&b).unwrap(),
            ),
        ];
        for (name, ok) in checks {
            if !ok {
                failures.push(format!("case {case} ({a}, {b}, {c}): {name}"));
            }
        }
    }
    (100, failures)
}

fn split_cases(cfg: &SuiteConfig) -> (usize, Vec<String>) {
    let mut rng = random::rng(cfg.seed ^ 0x23);
    let mut failures = Vec::new();
    for case in 0..50 {
        // modulus a*b with a, b coprime monic; element sometimes shares a factor
        let (a, b) = loop {
            let a = {
                let d = rng.gen_range(1..=2);
                random::int_poly(&mut rng, d, 5)
            }
            .monic()
            .unwrap();
            let b = {
                let d = rng.gen_range(1..=2);
                random::int_poly(&mut rng, d, 5)
            }
            .monic()
            .unwrap();
            if a.gcd(&b).unwrap().deg0() == 0 {
                break (a, b);
            }
        };
        let m = a.mul(&b);
        let r = {
            let d = rng.gen_range(0..=1);
            random::int_poly(&mut rng, d, 5)
        };
        let e = match case % 3 {
            0 => a.mul(&r),
            1 => b
                .mul(&r)
                .add(&UniPoly::from_ints(&(), &[rng.gen_range(-3..=3)])),
            _ => random::int_poly(&mut rng, m.deg0() - 1, 5),
        };
        let e = e.rem(&m).unwrap();
        let ctx = ExtContext::new("a", m.clone()).unwrap();
        let outcome = split_eval(&ctx, 8, |k| {
            let x = AlgElem::from_poly(k, UniPoly::new((), e.coeffs().to_vec()));
            if x.is_zero() {
                return Ok::<_, AlgebraError>(None);
            }
            let inv = x.inv()?;
            Ok(Some(x.mul(&inv).is_one()))
        });
        match outcome {
            Ok(branches) => {
                let product = branches
                    .iter()
                    .fold(UniPoly::one(&()), |acc, (k, _)| acc.mul(k.modulus()));
                if product != m.monic().unwrap() {
                    failures.push(format!(
                        "case {case}: branch moduli multiply to {product}, not {m}"
                    ));
                }
                for (k, v) in &branches {
                    let zero_here = k.modulus().divides(&e).unwrap();
                    let consistent = match v {
                        None => zero_here,
                        Some(ok) => *ok && !zero_here && e.gcd(k.modulus()).unwrap().deg0() == 0,
                    };
                    if !consistent {
                        failures.push(format!("case {case}: branch {} inconsistent", k.modulus()));
                    }
                }
            }
            Err(err) => failures.push(format!("case {case}: {err}")),
        }
    }
    (50, failures)
}

fn propagation_cases(cfg: &SuiteConfig) -> (usize, usize, Vec<String>) {
    let mut rng = random::rng(cfg.seed ^ 0x24);
    let small: Vec<u64> = primes_up_to(30);
    let mut failures = Vec::new();
    let mut exercised = 0;
    let mut pairs = 0;
    while pairs < 20 {
        let phi = random::map_of_degree(&mut rng, 2, 4);
        let Ok(bad) = bad_primes(&phi, cfg.budget) else {
            continue;
        };
        let p = BigUint::from(*small.choose(&mut rng).unwrap());
        if bad.contains(&p) {
            continue;
        }
        pairs += 1;
        let x0 = ProjPoint::Finite(int(rng.gen_range(-5..=5)));
        let Ok(orb) = orbit(&phi, &x0, 14, cfg.digit_cap) else {
            failures.push(format!("{phi}: orbit exceeded digit cap"));
            continue;
        };
        // reduction commutes with the map
        let red = ReducedMap::new(&phi, &p).expect("good reduction");
        for w in orb.windows(2) {
            if red.apply(&reduce_point(&w[0].to_proj(), &p)) != reduce_point(&w[1].to_proj(), &p) {
                failures.push(format!(
                    "{phi} mod {p}: reduction does not commute at x_{}",
                    w[0].n
                ));
            }
        }
        for n in 0..=1 {
            for d in 1..=3 {
                if !congruent_points(&orb[n + d], &orb[n], &p) {
                    continue;
                }
                exercised += 1;
                for m in n + 1..=n + 10 {
                    if !congruent_points(&orb[m + d], &orb[m], &p) {
                        failures.push(format!(
                            "{phi}, x0 = {}, p = {p}: congruent at ({n}, {d}) but not at m = {m}",
                            orb[0]
                        ));
                    }
                }
            }
        }
    }
    (pairs, exercised, failures)
}

pub fn algebra(cfg: &SuiteConfig) -> SuiteResult {
    let summarize = |f: &[String]| {
        if f.is_empty() {
            "zero failures".to_string()
        } else {
            f.join("; ")
        }
    };
    let (n1, f1) = radical_cases(cfg);
    let (n2, f2) = gcd_resultant_cases(cfg);
    let (n3, f3) = split_cases(cfg);
    let (n4, ex, f4) = propagation_cases(cfg);
    SuiteResult::new(
        "algebra",
        vec![
            Check::new(
                "radical-divides",
                ALGEBRA,
                f1.is_empty(),
                format!("{n1} constructed cases: {}", summarize(&f1)),
            ),
            Check::new(
                "gcd-resultant-identities",
                ALGEBRA,
                f2.is_empty(),
                format!("{n2} random triples: {}", summarize(&f2)),
            ),
            Check::new(
                "dynamic-evaluation-splits",
                ALGEBRA,
                f3.is_empty(),
                format!("{n3} reducible moduli: {}", summarize(&f3)),
            ),
            Check::new(
                "congruence-propagation",
                PROPAGATION,
                f4.is_empty() && ex > 0,
                format!(
                    "{n4} map/prime pairs, {ex} congruences propagated over 10 steps: {}",
                    summarize(&f4)
                ),
            ),
        ],
    )
}
