//! Exact orbits over Q, eventual-periodicity detection with height
//! certificates, and canonical reduction of P^1(Q) modulo primes.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactnum::{rational_content, Rational};
use crate::primeledger::{factor, FactorBudget};
use crate::ratmap::{ProjPoint, RatMapError, RationalMap};

pub const DEFAULT_DIGIT_CAP: usize = 100_000;

#[derive(Debug, thiserror::Error)]
pub enum OrbitError {
    #[error(transparent)]
    Map(#[from] RatMapError),
    #[error("orbit term x_{n} has about {digits} digits, above the cap of {cap}")]
    DigitCap { n: usize, digits: usize, cap: usize },
    #[error("resultant not fully factored; unfactored part {cofactor}")]
    FactorBudgetExceeded {
        primes: Vec<BigUint>,
        cofactor: BigUint,
    },
}

pub type Result<T> = std::result::Result<T, OrbitError>;

/// x_n = u/v in lowest terms with v >= 0; infinity is (1, 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitPoint {
    pub n: usize,
    #[serde(with = "crate::dec::bigint")]
    pub u: BigInt,
    #[serde(with = "crate::dec::bigint")]
    pub v: BigInt,
}

fn normalize(u: BigInt, v: BigInt) -> (BigInt, BigInt) {
    if v.is_zero() {
        return (BigInt::one(), BigInt::zero());
    }
    let g = u.gcd(&v);
    let (mut u, mut v) = (u / &g, v / &g);
    if v.is_negative() {
        u = -u;
        v = -v;
    }
    (u, v)
}

impl OrbitPoint {
    pub fn new(n: usize, u: BigInt, v: BigInt) -> Self {
        let (u, v) = normalize(u, v);
        OrbitPoint { n, u, v }
    }

    pub fn from_proj(n: usize, x: &ProjPoint<Rational>) -> Self {
        match x {
            ProjPoint::Infinity => OrbitPoint {
                n,
                u: BigInt::one(),
                v: BigInt::zero(),
            },
            ProjPoint::Finite(q) => OrbitPoint {
                n,
                u: q.numer().clone(),
                v: q.denom().clone(),
            },
        }
    }

    pub fn to_proj(&self) -> ProjPoint<Rational> {
        if self.is_infinity() {
            ProjPoint::Infinity
        } else {
            ProjPoint::Finite(Rational::new(self.u.clone(), self.v.clone()))
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.v.is_zero()
    }

    /// max(|u|, |v|)
    pub fn height(&self) -> BigInt {
        self.u.abs().max(self.v.clone())
    }

    pub fn same_point(&self, o: &OrbitPoint) -> bool {
        self.u == o.u && self.v == o.v
    }
}

impl fmt::Display for OrbitPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            f.write_str("inf")
        } else if self.v.is_one() {
            write!(f, "{}", self.u)
        } else {
            write!(f, "{}/{}", self.u, self.v)
        }
    }
}

/// Numerator of a - b in lowest terms. Infinity minus a finite point is
/// infinity, numerator 1; infinity minus infinity is treated as 0, which
/// every prime divides (both points reduce to infinity everywhere).
pub fn diff_numerator(a: &OrbitPoint, b: &OrbitPoint) -> BigInt {
    match (a.is_infinity(), b.is_infinity()) {
        (true, true) => BigInt::zero(),
        (true, false) | (false, true) => BigInt::one(),
        (false, false) => {
            let n = &a.u * &b.v - &b.u * &a.v;
            if n.is_zero() {
                return n;
            }
            let g = n.gcd(&(&a.v * &b.v));
            n / g
        }
    }
}

/// The map's homogeneous forms scaled to jointly primitive integer
/// coefficients. Index i holds the coefficient of x^i y^(d-i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerForms {
    pub degree: usize,
    pub f: Vec<BigInt>,
    pub g: Vec<BigInt>,
    /// Res(F, G) of these integer forms.
    pub resultant: BigInt,
}

impl IntegerForms {
    pub fn of(phi: &RationalMap<Rational>) -> Self {
        let (bf, bg) = phi.forms();
        let d = phi.degree();
        let all: Vec<Rational> = bf.coeffs().iter().chain(bg.coeffs()).cloned().collect();
        let c = rational_content(&all);
        let conv = |v: &[Rational]| -> Vec<BigInt> {
            (0..=d)
                .map(|i| (v.get(i).cloned().unwrap_or_else(Rational::zero) / &c).to_integer())
                .collect()
        };
        let res = phi.resultant() / c.pow(2 * d as i32);
        debug_assert!(res.is_integer());
        IntegerForms {
            degree: d,
            f: conv(bf.coeffs()),
            g: conv(bg.coeffs()),
            resultant: res.to_integer(),
        }
    }

    fn eval_form(c: &[BigInt], u: &BigInt, vpow: &[BigInt]) -> BigInt {
        let d = c.len() - 1;
        let mut acc = c[d].clone();
        for i in (0..d).rev() {
            acc = acc * u + &c[i] * &vpow[d - i];
        }
        acc
    }

    /// (F(u, v), G(u, v)), not reduced.
    pub fn apply(&self, u: &BigInt, v: &BigInt) -> (BigInt, BigInt) {
        let mut vpow = Vec::with_capacity(self.degree + 1);
        vpow.push(BigInt::one());
        for i in 0..self.degree {
            let next = &vpow[i] * v;
            vpow.push(next);
        }
        (
            Self::eval_form(&self.f, u, &vpow),
            Self::eval_form(&self.g, u, &vpow),
        )
    }

    pub fn step(&self, x: &OrbitPoint) -> OrbitPoint {
        let (a, b) = self.apply(&x.u, &x.v);
        OrbitPoint::new(x.n + 1, a, b)
    }
}

fn approx_digits(x: &OrbitPoint) -> usize {
    (x.height().bits() as f64 * std::f64::consts::LOG10_2) as usize + 1
}

fn check_cap(x: &OrbitPoint, cap: usize) -> Result<()> {
    let digits = approx_digits(x);
    if digits > cap {
        return Err(OrbitError::DigitCap {
            n: x.n,
            digits,
            cap,
        });
    }
    Ok(())
}

/// x_0, ..., x_steps exactly. Poles give infinity and iteration continues.
pub fn orbit(
    phi: &RationalMap<Rational>,
    x0: &ProjPoint<Rational>,
    steps: usize,
    digit_cap: usize,
) -> Result<Vec<OrbitPoint>> {
    if phi.degree() == 0 {
        return Err(RatMapError::DegreeZero.into());
    }
    let forms = IntegerForms::of(phi);
    let mut out = Vec::with_capacity(steps + 1);
    out.push(OrbitPoint::from_proj(0, x0));
    for _ in 0..steps {
        let next = forms.step(out.last().unwrap());
        check_cap(&next, digit_cap)?;
        out.push(next);
    }
    Ok(out)
}

/// Proof that an orbit is not eventually periodic: every x with
/// H(x) = max(|u|, |v|) > h_star satisfies H(phi(x)) > H(x).
///
/// Derivation: solving the Sylvester system gives integer forms U_x, V_x,
/// U_y, V_y of degree d-1 with U_x F + V_x G = D x^(2d-1) and
/// U_y F + V_y G = D y^(2d-1). For coprime (u, v) the gcd of F(u,v) and
/// G(u,v) divides D, and |U(u,v)| + |V(u,v)| <= C H^(d-1) with C the largest
/// coefficient-norm sum. So H(phi(x)) >= H^d / C, which exceeds H once
/// H^(d-1) > C; h_star is the least integer with h_star^(d-1) >= C.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WanderingCertificate {
    #[serde(with = "crate::dec::bigint")]
    pub c: BigInt,
    #[serde(with = "crate::dec::bigint")]
    pub h_star: BigInt,
    /// Index of the first orbit term with height above h_star.
    pub n0: usize,
    #[serde(with = "crate::dec::bigint")]
    pub height: BigInt,
}

/// (C, h_star) for a map of degree >= 2.
pub fn height_growth_bound(phi: &RationalMap<Rational>) -> Result<(BigInt, BigInt)> {
    phi.require_dynamical()?;
    let forms = IntegerForms::of(phi);
    let d = forms.degree;
    let n = 2 * d;
    // columns: a_0..a_{d-1} (U), b_0..b_{d-1} (V); row k: coefficient of x^k y^(2d-1-k)
    let mut m = vec![vec![Rational::zero(); n]; n];
    for j in 0..d {
        for i in 0..=d {
            m[i + j][j] = Rational::from(forms.f[i].clone());
            m[i + j][d + j] = Rational::from(forms.g[i].clone());
        }
    }
    let solve = |rhs_row: usize| -> Option<Vec<Rational>> {
        let mut a: Vec<Vec<Rational>> = m.clone();
        for (k, row) in a.iter_mut().enumerate() {
            row.push(if k == rhs_row {
                Rational::one()
            } else {
                Rational::zero()
            });
        }
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, piv);
            let inv = a[col][col].recip();
            for x in a[col].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    let pivot_row = a[col].clone();
                    for (x, p) in a[r].iter_mut().zip(&pivot_row).skip(col) {
                        *x -= p * &factor;
                    }
                }
            }
        }
        Some(a.into_iter().map(|row| row[n].clone()).collect())
    };
    let sx =
        solve(n - 1).ok_or_else(|| RatMapError::Internal("singular Sylvester system".into()))?;
    let sy = solve(0).ok_or_else(|| RatMapError::Internal("singular Sylvester system".into()))?;
    let scale = sx
        .iter()
        .chain(&sy)
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let norm = |s: &[Rational]| {
        s.iter().fold(BigInt::zero(), |acc, q| {
            acc + (q * Rational::from(scale.clone())).to_integer().abs()
        })
    };
    let c = norm(&sx).max(norm(&sy));
    let k = (d - 1) as u32;
    let mut h = c.nth_root(k);
    while h.pow(k) < c {
        h += 1;
    }
    Ok((c, h))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum OrbitStatus {
    Preperiodic { tail: usize, period: usize },
    Wandering { certificate: WanderingCertificate },
    Unknown { steps_tried: usize },
}

impl OrbitStatus {
    pub fn is_wandering(&self) -> bool {
        matches!(self, OrbitStatus::Wandering { .. })
    }
}

/// Iterates until an exact repeat (minimal tail and period, by hashing) or
/// until the height certificate fires.
pub fn classify_orbit(
    phi: &RationalMap<Rational>,
    x0: &ProjPoint<Rational>,
    max_steps: usize,
    digit_cap: usize,
) -> Result<OrbitStatus> {
    let (c, h_star) = height_growth_bound(phi)?;
    let forms = IntegerForms::of(phi);
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut x = OrbitPoint::from_proj(0, x0);
    loop {
        if let Some(&m) = seen.get(&(x.u.clone(), x.v.clone())) {
            return Ok(OrbitStatus::Preperiodic {
                tail: m,
                period: x.n - m,
            });
        }
        let h = x.height();
        if h > h_star {
            let certificate = WanderingCertificate {
                c,
                h_star,
                n0: x.n,
                height: h,
            };
            return Ok(OrbitStatus::Wandering { certificate });
        }
        if x.n >= max_steps {
            return Ok(OrbitStatus::Unknown { steps_tried: x.n });
        }
        seen.insert((x.u.clone(), x.v.clone()), x.n);
        x = forms.step(&x);
        check_cap(&x, digit_cap)?;
    }
}

/// A point of P^1(F_p).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReducedPoint {
    Finite(BigUint),
    Infinity,
}

impl fmt::Display for ReducedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReducedPoint::Finite(a) => write!(f, "{a}"),
            ReducedPoint::Infinity => f.write_str("inf"),
        }
    }
}

fn residue(a: &BigInt, p: &BigUint) -> BigUint {
    let pi = BigInt::from(p.clone());
    a.mod_floor(&pi).magnitude().clone()
}

fn reduce_pair(u: &BigInt, v: &BigInt, p: &BigUint) -> ReducedPoint {
    let vr = residue(v, p);
    if vr.is_zero() {
        return ReducedPoint::Infinity;
    }
    // p prime: v^(p-2) is the inverse
    let inv = vr.modpow(&(p - 2u32), p);
    ReducedPoint::Finite((residue(u, p) * inv) % p)
}

/// Canonical reduction (u mod p : v mod p), for coprime u, v.
pub fn reduce_point(x: &ProjPoint<Rational>, p: &BigUint) -> ReducedPoint {
    let o = OrbitPoint::from_proj(0, x);
    reduce_pair(&o.u, &o.v, p)
}

pub fn reduce_orbit_point(x: &OrbitPoint, p: &BigUint) -> ReducedPoint {
    reduce_pair(&x.u, &x.v, p)
}

/// Extended congruence: equal reductions in P^1(F_p).
pub fn congruent(a: &ProjPoint<Rational>, b: &ProjPoint<Rational>, p: &BigUint) -> bool {
    reduce_point(a, p) == reduce_point(b, p)
}

pub fn congruent_points(a: &OrbitPoint, b: &OrbitPoint, p: &BigUint) -> bool {
    reduce_orbit_point(a, p) == reduce_orbit_point(b, p)
}

/// phi modulo a prime of good reduction.
#[derive(Clone, Debug)]
pub struct ReducedMap {
    p: BigUint,
    forms: IntegerForms,
}

impl ReducedMap {
    /// None when p divides the resultant (bad reduction).
    pub fn new(phi: &RationalMap<Rational>, p: &BigUint) -> Option<Self> {
        let forms = IntegerForms::of(phi);
        if residue(&forms.resultant, p).is_zero() {
            return None;
        }
        Some(ReducedMap {
            p: p.clone(),
            forms,
        })
    }

    pub fn apply(&self, x: &ReducedPoint) -> ReducedPoint {
        let (u, v) = match x {
            ReducedPoint::Finite(a) => (BigInt::from(a.clone()), BigInt::one()),
            ReducedPoint::Infinity => (BigInt::one(), BigInt::zero()),
        };
        let (a, b) = self.forms.apply(&u, &v);
        reduce_pair(&a, &b, &self.p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadPrimeSet {
    #[serde(with = "crate::dec::bigint")]
    pub resultant: BigInt,
    /// Primes of the resultant, ascending.
    #[serde(with = "crate::dec::biguint_vec")]
    pub primes: Vec<BigUint>,
    /// Further primes excluded by a particular suite, ascending.
    #[serde(with = "crate::dec::biguint_vec")]
    pub exclusions: Vec<BigUint>,
}

impl BadPrimeSet {
    pub fn contains(&self, p: &BigUint) -> bool {
        self.primes.binary_search(p).is_ok() || self.exclusions.binary_search(p).is_ok()
    }

    /// Adds the primes of each nonzero integer (trial division up to 10^6
    /// plus the rho budget; unfactored parts are reported as an error).
    pub fn exclude_primes_of(&mut self, values: &[BigInt], budget: FactorBudget) -> Result<()> {
        for v in values {
            if v.is_zero() {
                continue;
            }
            let f = factor(v, budget);
            if let Some(c) = f.cofactor.clone() {
                return Err(OrbitError::FactorBudgetExceeded {
                    primes: f.prime_list(),
                    cofactor: c,
                });
            }
            self.exclusions.extend(f.prime_list());
        }
        self.exclusions.sort();
        self.exclusions.dedup();
        Ok(())
    }

    pub fn all(&self) -> Vec<BigUint> {
        let mut v: Vec<BigUint> = self
            .primes
            .iter()
            .chain(&self.exclusions)
            .cloned()
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Primes dividing Res(F, G) of the integral normalized forms.
pub fn bad_primes(phi: &RationalMap<Rational>, budget: FactorBudget) -> Result<BadPrimeSet> {
    let forms = IntegerForms::of(phi);
    let f = factor(&forms.resultant, budget);
    if let Some(c) = f.cofactor.clone() {
        return Err(OrbitError::FactorBudgetExceeded {
            primes: f.prime_list(),
            cofactor: c,
        });
    }
    Ok(BadPrimeSet {
        resultant: forms.resultant,
        primes: f.prime_list(),
        exclusions: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;
    use crate::ratmap::parse_rational_map;

    fn m(s: &str) -> RationalMap<Rational> {
        parse_rational_map(s).unwrap()
    }

    fn render(o: &[OrbitPoint]) -> Vec<String> {
        o.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn orbits() {
        let fin = |q: i64| ProjPoint::Finite(int(q));
        assert_eq!(
            render(&orbit(&m("t^2-2*t+2"), &fin(3), 4, DEFAULT_DIGIT_CAP).unwrap()),
            ["3", "5", "17", "257", "65537"]
        );
        assert_eq!(
            render(&orbit(&m("t^2/(2*t+1)"), &fin(1), 3, DEFAULT_DIGIT_CAP).unwrap()),
            ["1", "1/3", "1/15", "1/255"]
        );
        assert_eq!(
            render(&orbit(&m("t^2/(t+1)"), &fin(1), 3, DEFAULT_DIGIT_CAP).unwrap()),
            ["1", "1/2", "1/6", "1/42"]
        );
        // pole then infinity is fixed for a polynomial
        assert_eq!(
            render(&orbit(&m("1/t"), &fin(0), 2, DEFAULT_DIGIT_CAP).unwrap()),
            ["0", "inf", "0"]
        );
        assert!(matches!(
            orbit(&m("t^2+1"), &fin(1), 30, 1000),
            Err(OrbitError::DigitCap { .. })
        ));
    }

    #[test]
    fn statuses() {
        let fin = |q: i64| ProjPoint::Finite(int(q));
        assert_eq!(
            classify_orbit(&m("t^2-1"), &fin(0), 50, DEFAULT_DIGIT_CAP).unwrap(),
            OrbitStatus::Preperiodic { tail: 0, period: 2 }
        );
        assert_eq!(
            classify_orbit(&m("t^2"), &fin(1), 50, DEFAULT_DIGIT_CAP).unwrap(),
            OrbitStatus::Preperiodic { tail: 0, period: 1 }
        );
        assert_eq!(
            classify_orbit(&m("t^2-t+1"), &fin(0), 50, DEFAULT_DIGIT_CAP).unwrap(),
            OrbitStatus::Preperiodic { tail: 1, period: 1 }
        );
        match classify_orbit(&m("t^2-2*t+2"), &fin(3), 50, DEFAULT_DIGIT_CAP).unwrap() {
            OrbitStatus::Wandering { certificate } => {
                assert_eq!(
                    (certificate.c, certificate.h_star, certificate.n0),
                    (BigInt::from(9), BigInt::from(9), 2)
                );
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reduction() {
        let p = BigUint::from(5u32);
        let q = |a: i64, b: i64| ProjPoint::Finite(Rational::new(a.into(), b.into()));
        assert_eq!(reduce_point(&q(1, 5), &p), ReducedPoint::Infinity);
        assert_eq!(
            reduce_point(&q(3, 1), &p),
            ReducedPoint::Finite(3u32.into())
        );
        assert_eq!(
            reduce_point(&ProjPoint::Infinity, &p),
            ReducedPoint::Infinity
        );
        assert_eq!(
            reduce_point(&q(1, 2), &p),
            ReducedPoint::Finite(3u32.into())
        );
        assert!(congruent(&q(1, 5), &q(1, 25), &p));
        assert!(congruent(&q(2, 1), &q(7, 1), &p));
        assert!(!congruent(&q(2, 1), &q(7, 1), &BigUint::from(3u32)));
    }

    #[test]
    fn resultants_and_bad_primes() {
        let b = bad_primes(&m("t^2-2*t+2"), FactorBudget::default()).unwrap();
        assert!(b.primes.is_empty());
        // Res(x^2, 2xy + y^2) = 1: the double root (0:1) of x^2 is not a root of 2xy + y^2
        let b = bad_primes(&m("t^2/(2*t+1)"), FactorBudget::default()).unwrap();
        assert_eq!(b.resultant, BigInt::from(1));
        let b = bad_primes(&m("(t^2-t)/(t+1)"), FactorBudget::default()).unwrap();
        assert_eq!(b.resultant.abs(), BigInt::from(2));
        assert_eq!(b.primes, vec![BigUint::from(2u32)]);
    }

    #[test]
    fn differences() {
        let a = OrbitPoint::new(0, 17.into(), 1.into());
        let b = OrbitPoint::new(1, 5.into(), 1.into());
        assert_eq!(diff_numerator(&a, &b), BigInt::from(12));
        let a = OrbitPoint::new(0, 1.into(), 3.into());
        let b = OrbitPoint::new(1, 1.into(), 15.into());
        // 1/15 - 1/3 = -4/15
        assert_eq!(diff_numerator(&b, &a), BigInt::from(-4));
    }
}
