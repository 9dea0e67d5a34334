//! Property tests for the library invariants.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use dynlab_core::classify::{in_e, in_f1, in_f2, in_t, FamilyTag};
use dynlab_core::exactnum::{int, Rational, UniPoly};
use dynlab_core::orbit::{classify_orbit, congruent_points, diff_numerator, orbit, OrbitStatus};
use dynlab_core::par::Exec;
use dynlab_core::primeledger::{
    doubly_primitive_factors, factor, is_prime, primitive_factors, DiffLedger, FactorBudget,
    LedgerMode, TermLedger, TermPart,
};
use dynlab_core::ratmap::{parse_rational_map, Mobius, ProjPoint, RationalMap};

const CAP: usize = 2_000;

/// Small rho budget: incomplete factorizations are legal and keep cases fast.
fn budget() -> FactorBudget {
    FactorBudget::from_millis(20)
}

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn poly(c: &[i64]) -> UniPoly<Rational> {
    UniPoly::from_ints(&(), c)
}

fn map_strategy(max_deg: usize) -> impl Strategy<Value = RationalMap<Rational>> {
    (
        prop::collection::vec(-4i64..=4, 1..=max_deg + 1),
        prop::collection::vec(-4i64..=4, 1..=max_deg + 1),
    )
        .prop_filter_map("dynamical map", |(f, g)| {
            let m = RationalMap::from_polys(poly(&f), poly(&g)).ok()?;
            (m.degree() >= 2).then_some(m)
        })
}

fn mobius_strategy() -> impl Strategy<Value = Mobius<Rational>> {
    (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3).prop_filter_map("invertible", |(a, b, c, d)| {
        Mobius::new(int(a), int(b), int(c), int(d)).ok()
    })
}

fn affine_strategy() -> impl Strategy<Value = Mobius<Rational>> {
    (prop_oneof![-3i64..=-1, 1i64..=3], -3i64..=3)
        .prop_map(|(l, b)| Mobius::affine(int(l), int(b)).unwrap())
}

fn point_strategy() -> impl Strategy<Value = ProjPoint<Rational>> {
    prop_oneof![
        1 => Just(ProjPoint::Infinity),
        8 => (-6i64..=6, 1i64..=4).prop_map(|(a, b)| ProjPoint::Finite(Rational::new(a.into(), b.into()))),
    ]
}

const SEEDS: &[&str] = &[
    "t^2",
    "1/t^2",
    "t^3",
    "t^2/(2*t+1)",
    "t^2/(t+1)",
    "(t-1)^2/(1-2*t)",
    "t^2-2*t+2",
    "t^2+1",
];

fn check_witness(
    phi: &RationalMap<Rational>,
    tag: &FamilyTag<Rational>,
) -> Result<(), TestCaseError> {
    if let (Some(s), Some(c)) = (&tag.witness, &tag.canonical) {
        prop_assert_eq!(&phi.conjugate(s).unwrap(), c, "witness {} for {}", s, phi);
    }
    Ok(())
}

proptest! {
    #![proptest_config(cfg(48))]

    #[test]
    fn f1_membership_is_affine_invariant(seed in 0..SEEDS.len(), sigma in affine_strategy(), tau in affine_strategy()) {
        let phi = parse_rational_map(SEEDS[seed]).unwrap().conjugate(&sigma).unwrap();
        let psi = phi.conjugate(&tau).unwrap();
        prop_assert_eq!(in_f1(&phi).unwrap().is_none(), in_f1(&psi).unwrap().is_none());
    }

    #[test]
    fn witnesses_conjugate_to_canonical(seed in 0..SEEDS.len(), sigma in mobius_strategy()) {
        let phi = parse_rational_map(SEEDS[seed]).unwrap().conjugate(&sigma).unwrap();
        for tag in [in_t(&phi).unwrap(), in_e(&phi).unwrap(), in_f1(&phi).unwrap(), in_f2(&phi).unwrap()] {
            check_witness(&phi, &tag)?;
        }
    }

    #[test]
    fn members_of_t_have_periodic_zero(phi in map_strategy(3), seed in 0..SEEDS.len(), lambda in 1i64..=3) {
        // scaling t -> lambda t keeps 0 in place, so T-members stay candidates
        let scaled = parse_rational_map(SEEDS[seed]).unwrap().conjugate(&Mobius::affine(int(lambda), int(0)).unwrap()).unwrap();
        for m in [phi, scaled] {
            if !in_t(&m).unwrap().is_none() {
                let zero = ProjPoint::Finite(int(0));
                let x1 = m.evaluate(&zero).unwrap();
                let x2 = m.evaluate(&x1).unwrap();
                prop_assert!(x1 == zero || x2 == zero, "{} tagged T but 0 -> {} -> {}", m, x1, x2);
            }
        }
    }

    #[test]
    fn orbit_points_are_reduced_and_exact(phi in map_strategy(3), x0 in point_strategy()) {
        let orb = orbit(&phi, &x0, 6, CAP);
        prop_assume!(orb.is_ok());
        let orb = orb.unwrap();
        let mut x = x0;
        for p in &orb {
            prop_assert!(p.u.gcd(&p.v).is_one());
            prop_assert!(!p.v.is_negative());
            prop_assert_eq!(&p.to_proj(), &x);
            x = phi.evaluate(&x).unwrap();
        }
    }

    #[test]
    fn orbit_certificates_are_sound(phi in map_strategy(2), x0 in point_strategy()) {
        let status = classify_orbit(&phi, &x0, 16, CAP);
        prop_assume!(status.is_ok());
        match status.unwrap() {
            OrbitStatus::Wandering { certificate } => {
                let orb = orbit(&phi, &x0, certificate.n0 + 20, CAP);
                prop_assume!(orb.is_ok());
                let orb = orb.unwrap();
                for w in orb[certificate.n0..].windows(2) {
                    prop_assert!(w[1].height() > w[0].height(), "height did not grow past n0 = {}", certificate.n0);
                }
            }
            OrbitStatus::Preperiodic { tail, period } => {
                let orb = orbit(&phi, &x0, tail + period, CAP).unwrap();
                prop_assert!(orb[tail + period].same_point(&orb[tail]));
                prop_assert!(period >= 1);
            }
            OrbitStatus::Unknown { .. } => {}
        }
    }

    #[test]
    fn factorization_reassembles(n in any::<i64>().prop_filter("nonzero", |n| *n != 0), k in 0u32..3) {
        let v = BigInt::from(n).pow(k + 1) + BigInt::from(k);
        prop_assume!(!v.is_zero());
        let f = factor(&v, budget());
        prop_assert_eq!(f.reassemble(), v.clone());
        if v.bits() <= 64 {
            prop_assert!(f.is_complete());
        }
        for p in f.primes.keys() {
            prop_assert!(is_prime(p));
        }
    }

    #[test]
    fn ledger_modes_agree_off_denominators(phi in map_strategy(2), x0 in -3i64..=3) {
        let orb = orbit(&phi, &ProjPoint::Finite(int(x0)), 5, CAP);
        prop_assume!(orb.is_ok());
        let orb = orb.unwrap();
        let budget = budget();
        let num = DiffLedger::from_orbit(orb.clone(), 2, LedgerMode::Numerator, budget, Exec::Sequential);
        let proj = DiffLedger::from_orbit(orb.clone(), 2, LedgerMode::Projective, budget, Exec::Parallel);
        for (a, b) in num.entries.iter().zip(&proj.entries) {
            let (x, y) = (&orb[a.n + a.delta], &orb[a.n]);
            let candidates: std::collections::BTreeSet<BigUint> = a.primes.iter().chain(&b.primes).cloned().collect();
            for p in candidates {
                let off_denominators = !(&x.v * &y.v % BigInt::from(p.clone())).is_zero();
                if off_denominators {
                    let divides = (diff_numerator(x, y).magnitude() % &p).is_zero();
                    prop_assert_eq!(congruent_points(x, y, &p), divides);
                    prop_assert_eq!(b.primes.contains(&p), a.primes.contains(&p));
                }
            }
        }
    }

    #[test]
    fn primitive_notions_nest(phi in map_strategy(2), x0 in -3i64..=3) {
        let orb = orbit(&phi, &ProjPoint::Finite(int(x0)), 5, CAP);
        prop_assume!(orb.is_ok());
        let orb = orb.unwrap();
        let l = DiffLedger::from_orbit(orb.clone(), 3, LedgerMode::Numerator, budget(), Exec::Parallel);
        for e in &l.entries {
            let prim = primitive_factors(&l, e.n, e.delta);
            for p in doubly_primitive_factors(&l, e.n, e.delta) {
                prop_assert!(prim.contains(&p));
            }
        }
        let terms = TermLedger::build(orb, TermPart::Numerator, budget(), Exec::Parallel);
        for n in 0..terms.len() {
            let prim = terms.primitive_factors(n);
            for p in terms.super_primitive_factors(n) {
                prop_assert!(prim.contains(&p));
            }
        }
    }

    #[test]
    fn render_parse_roundtrip(phi in map_strategy(4)) {
        prop_assert_eq!(parse_rational_map(&phi.to_string()).unwrap(), phi);
    }

    #[test]
    fn resultant_is_multiplicative(a in prop::collection::vec(-5i64..=5, 2..5), b in prop::collection::vec(-5i64..=5, 1..4), c in prop::collection::vec(-5i64..=5, 1..4)) {
        let (a, b, c) = (poly(&a), poly(&b), poly(&c));
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        let lhs = a.resultant(&b.mul(&c)).unwrap();
        let rhs = a.resultant(&b).unwrap() * a.resultant(&c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn monic_gcd_divides_both(a in prop::collection::vec(-5i64..=5, 1..5), b in prop::collection::vec(-5i64..=5, 1..5), c in prop::collection::vec(-3i64..=3, 1..3)) {
        let (a, b, c) = (poly(&a), poly(&b), poly(&c));
        prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
        let g = a.mul(&c).gcd(&b.mul(&c)).unwrap();
        prop_assert!(c.divides(&g).unwrap());
        prop_assert!(g.divides(&a.mul(&c)).unwrap() && g.divides(&b.mul(&c)).unwrap());
        prop_assert!(g.lead().is_one());
    }
}

#[test]
fn spec_factor_examples() {
    let f = factor(&((BigInt::one() << 64) + 1), FactorBudget::default());
    let primes: Vec<String> = f.primes.keys().map(|p| p.to_string()).collect();
    assert_eq!(primes, ["274177", "67280421310721"]);
    let f = factor(&BigInt::from(-12), FactorBudget::default());
    assert_eq!(
        (
            f.sign,
            f.exponent(&BigUint::from(2u32)),
            f.exponent(&BigUint::from(3u32))
        ),
        (-1, 2, 1)
    );
    assert_eq!(
        factor(&BigInt::from(65537), FactorBudget::default()).prime_list(),
        [BigUint::from(65537u32)]
    );
}
