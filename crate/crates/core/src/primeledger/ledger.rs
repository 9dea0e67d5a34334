//! Ledgers of orbit terms and orbit differences, and the primitive-prime
//! notions read off them. Every answer is relative to the computed window.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::factor::{factor, FactorBudget, Factorization};
use crate::exactnum::{Rational, UniPoly};
use crate::orbit::{bad_primes, congruent_points, diff_numerator, orbit, OrbitError, OrbitPoint};
use crate::par::{map_vec, Exec};
use crate::ratmap::{ProjPoint, RationalMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum LedgerMode {
    /// p belongs to cell (n, D) iff p divides numerator(x_{n+D} - x_n).
    #[default]
    Numerator,
    /// p belongs to cell (n, D) iff x_{n+D} and x_n agree in P^1(F_p).
    Projective,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub n: usize,
    pub delta: usize,
    /// numerator(x_{n+delta} - x_n) in lowest terms.
    #[serde(with = "crate::dec::bigint")]
    pub value: BigInt,
    pub factorization: Factorization,
    /// Primes of the cell under the ledger's mode, ascending.
    #[serde(with = "crate::dec::biguint_vec")]
    pub primes: Vec<BigUint>,
}

impl LedgerEntry {
    /// The factorization stopped with an unfactored part.
    pub fn censored(&self) -> bool {
        !self.factorization.is_complete()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiffLedger {
    pub n_max: usize,
    pub m: usize,
    pub mode: LedgerMode,
    pub orbit: Vec<OrbitPoint>,
    /// Sorted by (delta, n).
    pub entries: Vec<LedgerEntry>,
}

fn prime_union(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let s: BTreeSet<BigUint> = a.iter().chain(b).cloned().collect();
    s.into_iter().collect()
}

impl DiffLedger {
    #[allow(clippy::too_many_arguments)]
    pub fn build(
        phi: &RationalMap<Rational>,
        x0: &ProjPoint<Rational>,
        n_max: usize,
        m: usize,
        mode: LedgerMode,
        budget: FactorBudget,
        exec: Exec,
        digit_cap: usize,
    ) -> Result<Self, OrbitError> {
        let orb = orbit(phi, x0, n_max, digit_cap)?;
        Ok(Self::from_orbit(orb, m, mode, budget, exec))
    }

    /// Cells (n, D) with 1 <= D <= m and n + D <= N_max, N_max = len - 1.
    pub fn from_orbit(
        orb: Vec<OrbitPoint>,
        m: usize,
        mode: LedgerMode,
        budget: FactorBudget,
        exec: Exec,
    ) -> Self {
        let n_max = orb.len().saturating_sub(1);
        let cells: Vec<(usize, usize)> = (1..=m)
            .flat_map(|d| {
                (0..=n_max.saturating_sub(d))
                    .filter(move |n| n + d <= n_max)
                    .map(move |n| (n, d))
            })
            .collect();
        let entries = map_vec(exec, cells, |(n, d)| {
            let (a, b) = (&orb[n + d], &orb[n]);
            let value = diff_numerator(a, b);
            let factorization = factor(&value, budget);
            let primes = match mode {
                LedgerMode::Numerator => factorization.prime_list(),
                LedgerMode::Projective => {
                    let shared = if a.v.is_zero() && b.v.is_zero() {
                        BigInt::zero()
                    } else {
                        a.v.gcd(&b.v)
                    };
                    let extra = if shared.is_zero() {
                        Vec::new()
                    } else {
                        factor(&shared, budget).prime_list()
                    };
                    prime_union(&factorization.prime_list(), &extra)
                        .into_iter()
                        .filter(|p| congruent_points(a, b, p))
                        .collect()
                }
            };
            LedgerEntry {
                n,
                delta: d,
                value,
                factorization,
                primes,
            }
        });
        DiffLedger {
            n_max,
            m,
            mode,
            orbit: orb,
            entries,
        }
    }

    pub fn entry(&self, n: usize, delta: usize) -> Option<&LedgerEntry> {
        self.entries.iter().find(|e| e.n == n && e.delta == delta)
    }

    /// Whether p belongs to cell (n, delta) under the ledger's mode.
    pub fn divides(&self, p: &BigUint, n: usize, delta: usize) -> bool {
        let (a, b) = (&self.orbit[n + delta], &self.orbit[n]);
        match self.mode {
            LedgerMode::Numerator => (diff_numerator(a, b).magnitude() % p).is_zero(),
            LedgerMode::Projective => congruent_points(a, b, p),
        }
    }

    fn in_window(&self, n: usize, delta: usize) -> bool {
        delta >= 1 && delta <= self.m && n + delta <= self.n_max
    }
}

/// Primes of cell (n, delta) absent from every cell (m, delta), m < n.
pub fn primitive_factors(l: &DiffLedger, n: usize, delta: usize) -> Vec<BigUint> {
    let Some(e) = l.entry(n, delta) else {
        return Vec::new();
    };
    e.primes
        .iter()
        .filter(|p| (0..n).all(|m| !l.divides(p, m, delta)))
        .cloned()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveStatus {
    #[serde(with = "crate::dec::biguint_vec")]
    pub primes: Vec<BigUint>,
    /// The unfactored part keeps a factor coprime to every earlier cell, so
    /// some unlisted prime of it is primitive.
    pub cofactor_certified: bool,
    pub censored: bool,
}

impl PrimitiveStatus {
    pub fn exists(&self) -> bool {
        !self.primes.is_empty() || self.cofactor_certified
    }
}

/// Listed primitive primes, plus certification through the cofactor when
/// factoring stopped early.
pub fn primitive_status(l: &DiffLedger, n: usize, delta: usize) -> PrimitiveStatus {
    let primes = primitive_factors(l, n, delta);
    let Some(e) = l.entry(n, delta) else {
        return PrimitiveStatus {
            primes,
            cofactor_certified: false,
            censored: false,
        };
    };
    let mut cofactor_certified = false;
    if let Some(c) = &e.factorization.cofactor {
        let mut c = BigInt::from(c.clone());
        for m in 0..n {
            let (a, b) = (&l.orbit[m + delta], &l.orbit[m]);
            let mut shared = vec![diff_numerator(a, b)];
            if l.mode == LedgerMode::Projective {
                shared.push(if a.v.is_zero() && b.v.is_zero() {
                    BigInt::zero()
                } else {
                    a.v.gcd(&b.v)
                });
            }
            for s in shared {
                loop {
                    let g = c.gcd(&s);
                    if g.is_one() {
                        break;
                    }
                    if s.is_zero() {
                        c = BigInt::one();
                        break;
                    }
                    c /= g;
                }
            }
        }
        cofactor_certified = c > BigInt::one();
    }
    PrimitiveStatus {
        primes,
        cofactor_certified,
        censored: e.censored(),
    }
}

/// Primes p of cell (n, delta) such that every window cell (N, D)
/// containing p has N >= n and D >= delta.
pub fn doubly_primitive_factors(l: &DiffLedger, n: usize, delta: usize) -> Vec<BigUint> {
    let Some(e) = l.entry(n, delta) else {
        return Vec::new();
    };
    e.primes
        .iter()
        .filter(|p| {
            l.entries
                .iter()
                .filter(|c| c.n < n || c.delta < delta)
                .all(|c| !l.divides(p, c.n, c.delta))
        })
        .cloned()
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermPart {
    Numerator,
    Denominator,
}

/// Factored u_n (or v_n) along an orbit window.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermLedger {
    pub part: TermPart,
    pub orbit: Vec<OrbitPoint>,
    pub factorizations: Vec<Factorization>,
}

impl TermLedger {
    pub fn build(orb: Vec<OrbitPoint>, part: TermPart, budget: FactorBudget, exec: Exec) -> Self {
        let values: Vec<BigInt> = orb.iter().map(|x| Self::pick(part, x)).collect();
        let factorizations = map_vec(exec, values, |v| factor(&v, budget));
        TermLedger {
            part,
            orbit: orb,
            factorizations,
        }
    }

    fn pick(part: TermPart, x: &OrbitPoint) -> BigInt {
        match part {
            TermPart::Numerator => x.u.clone(),
            TermPart::Denominator => x.v.clone(),
        }
    }

    pub fn value(&self, n: usize) -> BigInt {
        Self::pick(self.part, &self.orbit[n])
    }

    pub fn len(&self) -> usize {
        self.orbit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbit.is_empty()
    }

    fn divides(&self, p: &BigUint, m: usize) -> bool {
        (self.value(m).magnitude() % p).is_zero()
    }

    /// Primes of term n dividing no earlier term.
    pub fn primitive_factors(&self, n: usize) -> Vec<BigUint> {
        self.factorizations[n]
            .primes
            .keys()
            .filter(|p| (0..n).all(|m| !self.divides(p, m)))
            .cloned()
            .collect()
    }

    /// Primes of term n dividing no other term of the window.
    pub fn super_primitive_factors(&self, n: usize) -> Vec<BigUint> {
        self.factorizations[n]
            .primes
            .keys()
            .filter(|p| (0..self.len()).all(|m| m == n || !self.divides(p, m)))
            .cloned()
            .collect()
    }

    /// Every listed prime of every term, ascending.
    pub fn observed_primes(&self) -> BTreeSet<BigUint> {
        self.factorizations
            .iter()
            .flat_map(|f| f.primes.keys().cloned())
            .collect()
    }
}

/// p-adic valuation; None for 0.
pub fn valuation(x: &BigInt, p: &BigUint) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let mut m = x.magnitude().clone();
    let mut e = 0;
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return Some(e);
        }
        m = q;
        e += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PersistenceReport {
    #[serde(with = "crate::dec::biguint")]
    pub p: BigUint,
    pub n: usize,
    pub delta: usize,
    /// Exponent of p in cell (n, delta).
    pub exponent: Option<u32>,
    /// Res(numerator(phi^delta(t) - t), numerator(phi'(t))) of the
    /// primitive integral polynomials; zero when they share a factor.
    #[serde(with = "crate::dec::bigint")]
    pub resultant: BigInt,
    /// p is primitive for the column, avoids Res(F, G) and the resultant
    /// above is nonzero and prime to p.
    pub condition_met: bool,
    /// (N, exponent of p in cell (N, delta)) for N >= n in the window.
    pub exponents: Vec<(usize, Option<u32>)>,
    /// First N whose exponent differs, when the condition holds.
    pub first_violation: Option<usize>,
}

fn integral(p: &UniPoly<Rational>) -> UniPoly<Rational> {
    let c = crate::exactnum::rational_content(p.coeffs());
    if c.is_zero() {
        p.clone()
    } else {
        p.scale(&c.recip())
    }
}

/// Checks that p^e divides cell (N, delta) exactly for every N >= n in the
/// window, where p^e exactly divides cell (n, delta).
pub fn power_persistence(
    l: &DiffLedger,
    phi: &RationalMap<Rational>,
    p: &BigUint,
    n: usize,
    delta: usize,
    budget: FactorBudget,
) -> Result<PersistenceReport, OrbitError> {
    let it = phi.iterate(delta)?;
    let a = integral(&it.numerator().sub(&it.denominator().shift(1)));
    let b = integral(&phi.wronskian());
    let res = a.resultant(&b).map_err(crate::ratmap::RatMapError::from)?;
    let resultant = res.to_integer();
    let bad = bad_primes(phi, budget)?;
    let value = |m: usize| diff_numerator(&l.orbit[m + delta], &l.orbit[m]);
    let exponent = valuation(&value(n), p);
    let primitive = primitive_factors(l, n, delta).contains(p);
    let condition_met = primitive
        && !bad.contains(p)
        && !resultant.is_zero()
        && !(resultant.abs().magnitude() % p).is_zero();
    let exponents: Vec<(usize, Option<u32>)> = (n..=l.n_max)
        .filter(|&m| l.in_window(m, delta))
        .map(|m| (m, valuation(&value(m), p)))
        .collect();
    let first_violation = if condition_met {
        exponents
            .iter()
            .find(|(_, e)| *e != exponent)
            .map(|(m, _)| *m)
    } else {
        None
    };
    Ok(PersistenceReport {
        p: p.clone(),
        n,
        delta,
        exponent,
        resultant,
        condition_met,
        exponents,
        first_violation,
    })
}

/// |{p in primes : p <= x}|
pub fn density_count(primes: &BTreeSet<BigUint>, x: &BigUint) -> usize {
    primes.range(..=x.clone()).count()
}

/// Primes p <= x dividing some Fermat number 2^(2^n) + 1, via
/// p | F_n  <=>  ord_p(2) = 2^(n+1).
pub fn fermat_order_oracle(x: u64, exec: Exec) -> BTreeSet<u64> {
    let odd: Vec<u64> = super::factor::primes_up_to(x)
        .into_iter()
        .filter(|&p| p > 2)
        .collect();
    let keep = map_vec(exec, odd, |p| {
        let o = super::factor::multiplicative_order(2, p);
        (o >= 2 && o.is_power_of_two()).then_some(p)
    });
    keep.into_iter().flatten().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub n: usize,
    pub delta: usize,
    #[serde(with = "crate::dec::bigint")]
    pub value: BigInt,
    pub primitive: PrimitiveStatus,
    #[serde(with = "crate::dec::biguint_vec")]
    pub doubly_primitive: Vec<BigUint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperPrimitiveRow {
    pub n: usize,
    #[serde(with = "crate::dec::biguint_vec")]
    pub primes: Vec<BigUint>,
    pub censored: bool,
}

/// Window-certified summary of a difference ledger and, optionally, of the
/// numerators u_n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveReport {
    pub scope: String,
    pub rows: Vec<ReportRow>,
    pub super_primitive: Vec<SuperPrimitiveRow>,
}

pub fn primitive_report(l: &DiffLedger, terms: Option<&TermLedger>) -> PrimitiveReport {
    let rows = l
        .entries
        .iter()
        .map(|e| ReportRow {
            n: e.n,
            delta: e.delta,
            value: e.value.clone(),
            primitive: primitive_status(l, e.n, e.delta),
            doubly_primitive: doubly_primitive_factors(l, e.n, e.delta),
        })
        .collect();
    let super_primitive = terms
        .map(|t| {
            (0..t.len())
                .map(|n| SuperPrimitiveRow {
                    n,
                    primes: t.super_primitive_factors(n),
                    censored: !t.factorizations[n].is_complete(),
                })
                .collect()
        })
        .unwrap_or_default();
    PrimitiveReport {
        scope: format!(
            "window-certified: 0 <= n, n + D <= {}, 1 <= D <= {}, mode {}",
            l.n_max,
            l.m,
            format!("{:?}", l.mode).to_lowercase()
        ),
        rows,
        super_primitive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;
    use crate::ratmap::parse_rational_map;

    fn ledger(map: &str, x0: i64, n_max: usize, m: usize, mode: LedgerMode) -> DiffLedger {
        let phi = parse_rational_map(map).unwrap();
        DiffLedger::build(
            &phi,
            &ProjPoint::Finite(int(x0)),
            n_max,
            m,
            mode,
            FactorBudget::default(),
            Exec::Parallel,
            100_000,
        )
        .unwrap()
    }

    #[test]
    fn closed_form_differences() {
        let l = ledger("t^2/(2*t+1)", 1, 5, 1, LedgerMode::Numerator);
        for n in 0..=4 {
            assert_eq!(
                l.entry(n, 1).unwrap().value,
                -(BigInt::one() << (1usize << n))
            );
        }
        assert!(primitive_factors(&l, 3, 1).is_empty());
        let l = ledger("t^2/(t+1)", 1, 5, 1, LedgerMode::Numerator);
        assert!(l.entries.iter().all(|e| e.value.abs().is_one()));
        let l = ledger("t^2-2*t+2", 3, 3, 1, LedgerMode::Numerator);
        assert_eq!(l.entry(1, 1).unwrap().value, BigInt::from(12));
    }

    #[test]
    fn primitive_and_doubly_primitive() {
        let l = ledger("t^2+1", 1, 8, 3, LedgerMode::Numerator);
        for n in 1..=7 {
            assert!(primitive_status(&l, n, 1).exists(), "n = {n}");
            for p in doubly_primitive_factors(&l, n, 1) {
                assert!(primitive_factors(&l, n, 1).contains(&p));
            }
        }
    }

    #[test]
    fn projective_matches_numerator_away_from_denominators() {
        let a = ledger("t^2/(2*t+1)", 1, 5, 2, LedgerMode::Numerator);
        let b = ledger("t^2/(2*t+1)", 1, 5, 2, LedgerMode::Projective);
        for (x, y) in a.entries.iter().zip(&b.entries) {
            let v1 = &a.orbit[x.n + x.delta].v * &a.orbit[x.n].v;
            for p in &y.primes {
                if !(v1.magnitude() % p).is_zero() {
                    assert!(x.primes.contains(p));
                }
            }
        }
    }

    #[test]
    fn terms_and_super_primitive() {
        let phi = parse_rational_map("t^2-2*t+2").unwrap();
        let orb = orbit(&phi, &ProjPoint::Finite(int(3)), 5, 100_000).unwrap();
        let t = TermLedger::build(
            orb,
            TermPart::Numerator,
            FactorBudget::default(),
            Exec::Sequential,
        );
        for n in 0..=5 {
            let f = &t.factorizations[n];
            assert!(f.is_complete());
            assert_eq!(t.super_primitive_factors(n), f.prime_list());
        }
    }

    #[test]
    fn persistence() {
        let phi = parse_rational_map("t^2+1").unwrap();
        let l = ledger("t^2+1", 1, 9, 1, LedgerMode::Numerator);
        let r = power_persistence(
            &l,
            &phi,
            &BigUint::from(3u32),
            1,
            1,
            FactorBudget::default(),
        )
        .unwrap();
        assert!(r.condition_met);
        assert_eq!(r.exponent, Some(1));
        assert_eq!(r.first_violation, None);
        // the Fermat map: numerators of phi(t) - t and phi'(t) share t - 1
        let phi = parse_rational_map("t^2-2*t+2").unwrap();
        let l = ledger("t^2-2*t+2", 3, 5, 1, LedgerMode::Numerator);
        let r = power_persistence(
            &l,
            &phi,
            &BigUint::from(2u32),
            0,
            1,
            FactorBudget::default(),
        )
        .unwrap();
        assert!(r.resultant.is_zero());
        assert!(!r.condition_met);
    }

    #[test]
    fn fermat_density() {
        let oracle = fermat_order_oracle(100_000, Exec::Parallel);
        assert_eq!(
            oracle.iter().copied().collect::<Vec<_>>(),
            vec![3, 5, 17, 257, 641, 65537]
        );
        assert_eq!(density_count(&BTreeSet::new(), &BigUint::from(10u32)), 0);
    }
}
