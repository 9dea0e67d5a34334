//! Primality testing and budgeted factorization.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Work limits for `factor`. Time budgets are converted into a
/// deterministic count of rho iterations, so results never depend on
/// machine speed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorBudget {
    /// Trial division by every prime up to this bound.
    pub trial_bound: u64,
    /// Total Pollard-Brent iterations across all rho attempts.
    pub rho_iterations: u64,
    /// Parts larger than this many bits are left as cofactors after trial
    /// division: neither primality-tested nor attacked by rho.
    pub max_bits: u64,
}

/// Rho iterations granted per millisecond of a wall-clock style budget.
pub const RHO_ITERATIONS_PER_MS: u64 = 2_000;

impl FactorBudget {
    pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;
    pub const DEFAULT_MAX_BITS: u64 = 4096;

    pub fn from_millis(ms: u64) -> Self {
        FactorBudget {
            trial_bound: Self::DEFAULT_TRIAL_BOUND,
            rho_iterations: ms.saturating_mul(RHO_ITERATIONS_PER_MS),
            max_bits: Self::DEFAULT_MAX_BITS,
        }
    }

    /// Trial division only, up to `bound`.
    pub fn trial_only(bound: u64) -> Self {
        FactorBudget {
            trial_bound: bound,
            rho_iterations: 0,
            max_bits: 64,
        }
    }
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget::from_millis(500)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    /// -1, 0 or 1.
    pub sign: i8,
    #[serde(with = "crate::dec::prime_map")]
    pub primes: BTreeMap<BigUint, u32>,
    /// Unfactored part (> 1) left when the budget ran out; composite or
    /// of unknown status, never a certified prime.
    #[serde(with = "crate::dec::opt_biguint")]
    pub cofactor: Option<BigUint>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_none()
    }

    pub fn prime_list(&self) -> Vec<BigUint> {
        self.primes.keys().cloned().collect()
    }

    pub fn exponent(&self, p: &BigUint) -> u32 {
        self.primes.get(p).copied().unwrap_or(0)
    }

    pub fn reassemble(&self) -> BigInt {
        let mut acc = BigUint::one();
        for (p, e) in &self.primes {
            acc *= p.pow(*e);
        }
        if let Some(c) = &self.cofactor {
            acc *= c;
        }
        match self.sign {
            0 => BigInt::zero(),
            s if s < 0 => -BigInt::from(acc),
            _ => BigInt::from(acc),
        }
    }
}

fn small_primes(bound: u64) -> &'static [u32] {
    static SIEVE: OnceLock<Vec<u32>> = OnceLock::new();
    let all = SIEVE.get_or_init(|| {
        let n = FactorBudget::DEFAULT_TRIAL_BOUND as usize;
        let mut comp = vec![false; n + 1];
        let mut out = Vec::new();
        for i in 2..=n {
            if !comp[i] {
                out.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    comp[j] = true;
                    j += i;
                }
            }
        }
        out
    });
    let end = all.partition_point(|&p| (p as u64) <= bound);
    &all[..end]
}

/// Primes up to `bound` (at most 10^6 from the shared sieve, beyond that by
/// segmented trial).
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound <= FactorBudget::DEFAULT_TRIAL_BOUND {
        return small_primes(bound).iter().map(|&p| p as u64).collect();
    }
    let mut out: Vec<u64> = small_primes(FactorBudget::DEFAULT_TRIAL_BOUND)
        .iter()
        .map(|&p| p as u64)
        .collect();
    let mut n = FactorBudget::DEFAULT_TRIAL_BOUND + 1;
    while n <= bound {
        if is_prime_u64(n) {
            out.push(n);
        }
        n += 1;
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn strong_probable_prime(n: &BigUint, a: &BigUint) -> bool {
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    let n = BigInt::from(n.clone());
    let mut a = a.mod_floor(&n);
    let mut n = n;
    let mut t = 1;
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

/// Strong Lucas probable-prime test with Selfridge parameters.
fn strong_lucas(n: &BigUint) -> bool {
    let sq = n.sqrt();
    if &sq * &sq == *n {
        return false;
    }
    let mut d = BigInt::from(5);
    loop {
        let j = jacobi(&d, n);
        if j == -1 {
            break;
        }
        if j == 0 && d.magnitude() != n {
            return false;
        }
        let two = BigInt::from(2);
        d = if d.sign() == Sign::Plus {
            -(d + two)
        } else {
            -(d - two)
        };
    }
    let ni = BigInt::from(n.clone());
    let q: BigInt = (BigInt::one() - &d) / BigInt::from(4);
    let md = |x: BigInt| x.mod_floor(&ni);
    let half = |x: BigInt| {
        let x = if x.is_odd() { x + &ni } else { x };
        md(x >> 1)
    };
    let np1 = n + 1u32;
    let s = np1.trailing_zeros().unwrap_or(0);
    let k = &np1 >> s;
    // Binary ladder for U_k, V_k, Q^k with P = 1.
    let (mut u, mut v, mut qk) = (BigInt::one(), BigInt::one(), md(q.clone()));
    let bits = k.bits();
    for i in (0..bits - 1).rev() {
        u = md(&u * &v);
        v = md(&v * &v - (&qk << 1));
        qk = md(&qk * &qk);
        if k.bit(i) {
            let u2 = half(&u + &v);
            let v2 = half(&d * &u + &v);
            u = u2;
            v = v2;
            qk = md(&qk * &q);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = md(&v * &v - (&qk << 1));
        if v.is_zero() {
            return true;
        }
        qk = md(&qk * &qk);
    }
    false
}

/// Deterministic below 2^64; Baillie-PSW (base-2 Miller-Rabin plus strong
/// Lucas) above, preceded by extra Miller-Rabin bases.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    for &p in small_primes(1000) {
        if (n % p).is_zero() {
            return false;
        }
    }
    for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if !strong_probable_prime(n, &BigUint::from(a)) {
            return false;
        }
    }
    strong_lucas(n)
}

/// One Pollard-Brent run with constant `c`. Returns a nontrivial factor,
/// or None when the run fails or the iteration allowance is exhausted.
fn brent(n: &BigUint, c: u64, budget: &mut u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let m: u64 = 128;
    let mut q = BigUint::one();
    let mut x;
    let mut ys;
    loop {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r {
            ys = y.clone();
            let steps = m.min(r - k);
            if *budget < steps {
                *budget = 0;
                return None;
            }
            *budget -= steps;
            for _ in 0..steps {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            let g = q.gcd(n);
            if !g.is_one() {
                if &g != n {
                    return Some(g);
                }
                // backtrack one step at a time
                let mut z = ys;
                loop {
                    z = f(&z);
                    let diff = if x > z { &x - &z } else { &z - &x };
                    let g = diff.gcd(n);
                    if !g.is_one() {
                        return (&g != n).then_some(g);
                    }
                }
            }
            k += steps;
        }
        r *= 2;
    }
}

/// Splits a composite into factors using the rho allowance; unsplit parts
/// are returned as cofactors.
fn split_composite(
    n: BigUint,
    max_bits: u64,
    budget: &mut u64,
    primes: &mut BTreeMap<BigUint, u32>,
    rest: &mut Vec<BigUint>,
) {
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if m.bits() > max_bits.max(64) {
            rest.push(m);
            continue;
        }
        if is_prime(&m) {
            *primes.entry(m).or_insert(0) += 1;
            continue;
        }
        let r = m.sqrt();
        if &r * &r == m {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        let mut found = None;
        for c in 1..=32u64 {
            if *budget == 0 {
                break;
            }
            if let Some(g) = brent(&m, c, budget) {
                found = Some(g);
                break;
            }
        }
        match found {
            Some(g) => {
                let h = &m / &g;
                stack.push(g);
                stack.push(h);
            }
            None => rest.push(m),
        }
    }
}

pub fn factor_biguint(n: &BigUint, budget: FactorBudget) -> Factorization {
    factor(&BigInt::from(n.clone()), budget)
}

/// Factors `n` within `budget`. Deterministic for a fixed budget.
pub fn factor(n: &BigInt, budget: FactorBudget) -> Factorization {
    let sign = match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    };
    let mut primes = BTreeMap::new();
    if sign == 0 {
        return Factorization {
            sign,
            primes,
            cofactor: None,
        };
    }
    let mut m = n.magnitude().clone();
    let bound = budget.trial_bound.min(FactorBudget::DEFAULT_TRIAL_BOUND);
    for &p in small_primes(bound) {
        if m.is_one() {
            break;
        }
        let pp = p as u64;
        if m.bits() <= 64 && pp * pp > m.to_u64().unwrap() {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&BigUint::from(p));
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            primes.insert(BigUint::from(p), e);
        }
    }
    let mut rest = Vec::new();
    let mut allowance = budget.rho_iterations;
    if !m.is_one() {
        split_composite(m, budget.max_bits, &mut allowance, &mut primes, &mut rest);
    }
    let cofactor = if rest.is_empty() {
        None
    } else {
        Some(rest.iter().product())
    };
    Factorization {
        sign,
        primes,
        cofactor,
    }
}

/// Multiplicative order of `a` modulo the prime `p`.
pub fn multiplicative_order(a: u64, p: u64) -> u64 {
    let n = p - 1;
    let mut order = n;
    let mut m = n;
    let mut q = 2;
    while q * q <= m {
        if m.is_multiple_of(q) {
            while m.is_multiple_of(q) {
                m /= q;
            }
            while order.is_multiple_of(q) && pow_mod(a, order / q, p) == 1 {
                order /= q;
            }
        }
        q += 1;
    }
    if m > 1 && pow_mod(a, order / m, p) == 1 {
        order /= m;
    }
    order
}
