//! Acceptance run: one PASS/FAIL line per criterion 1-14.
//!
//! Each criterion combines the named verification suite with an oracle
//! computed here from scratch (plain integer or modular arithmetic), so a
//! bug shared by the library and its suite cannot make a line green.
//! The target runs without the libtest harness so the lines always show:
//! `cargo test -p dynlab --test acceptance`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use dynlab::oracle::{euclid, fermat, sylvester_resultant};
use dynlab::report::{Status, SuiteResult};
use dynlab::suites::{run_suite, SuiteConfig};

/// Criteria whose literal statement is contradicted by exact computation.
/// Each entry is explained in the decision log; the test asserts they stay
/// red so that the list cannot silently go stale.
const KNOWN_RED: &[u32] = &[11];

// Pinned windows and tolerances. Every comparison is exact.
const FERMAT_N: u32 = 6;
const COUNTER_N: u32 = 5;
const EUCLID_N: usize = 6;
const APPLICATION_M: u32 = 6;
const THEOREM1_N: usize = 10;
const PARITY_N: usize = 10;
const PARITY_D: usize = 4;
const LEMMA6_SPAN: usize = 6;
const LEMMA6_D: usize = 3;
const DENSITY_X: u64 = 100_000;
const DENSITY_BOUND: usize = 317;
const ORACLE_PRIME_BOUND: u64 = 1_000_000;

struct Line {
    id: u32,
    ok: bool,
    detail: String,
}

fn suite(id: &str) -> SuiteResult {
    run_suite(id, &SuiteConfig::default()).expect("known suite")
}

fn all_pass(r: &SuiteResult, only: Option<&[&str]>) -> (bool, String) {
    let picked: Vec<_> = r
        .checks
        .iter()
        .filter(|c| only.is_none_or(|o| o.contains(&c.name.as_str())))
        .collect();
    assert!(
        !picked.is_empty(),
        "no checks selected from suite {}",
        r.suite
    );
    let bad: Vec<String> = picked
        .iter()
        .filter(|c| c.status != Status::Pass)
        .map(|c| format!("{} ({:?})", c.name, c.status))
        .collect();
    let ok = bad.is_empty();
    let s = if ok {
        format!("suite {}: {} checks pass", r.suite, picked.len())
    } else {
        format!("suite {}: not passing {}", r.suite, bad.join(", "))
    };
    (ok, s)
}

fn primes_below(n: u64) -> Vec<u64> {
    let mut sieve = vec![true; n as usize];
    let mut out = Vec::new();
    for i in 2..n as usize {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < n as usize {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Plain reduced fraction with positive denominator; (1, 0) is infinity.
#[derive(Clone, Debug, PartialEq)]
struct Frac(BigInt, BigInt);

impl Frac {
    fn new(u: BigInt, v: BigInt) -> Self {
        if v.is_zero() {
            return Frac(BigInt::one(), BigInt::zero());
        }
        let g = u.gcd(&v);
        let (u, v) = (u / &g, v / &g);
        if v.is_negative() {
            Frac(-u, -v)
        } else {
            Frac(u, v)
        }
    }

    fn int(n: i64) -> Self {
        Frac(BigInt::from(n), BigInt::one())
    }

    /// numerator of self - o, in lowest terms.
    fn diff_numerator(&self, o: &Frac) -> BigInt {
        Frac::new(&self.0 * &o.1 - &o.0 * &self.1, &self.1 * &o.1).0
    }
}

fn c1_fermat() -> (bool, String) {
    let (s_ok, s) = all_pass(&suite("fermat"), None);
    let mut x = BigInt::from(3);
    let mut ok = true;
    for n in 0..=FERMAT_N {
        ok &= x == fermat(n);
        if n < FERMAT_N {
            let next = &x * &x - 2 * &x + 2;
            ok &= &next - 2 == &x * (&x - 2);
            x = next;
        }
    }
    for m in 0..FERMAT_N {
        for n in m + 1..=FERMAT_N {
            ok &= fermat(m).gcd(&fermat(n)).is_one();
        }
    }
    (s_ok && ok, format!("{s}; oracle: integer iteration matches 2^(2^n) + 1 for n <= {FERMAT_N}, coprime, recurrence holds"))
}

fn c2_counterexample() -> (bool, String) {
    let (s_ok, s) = all_pass(&suite("counterexample"), None);
    let mut x = Frac::int(1);
    let mut orb = vec![x.clone()];
    for _ in 0..COUNTER_N {
        x = Frac::new(&x.0 * &x.0, (2 * &x.0 + &x.1) * &x.1);
        orb.push(x.clone());
    }
    let mut ok = true;
    for (n, x) in orb.iter().enumerate() {
        ok &= *x == Frac::new(BigInt::one(), fermat(n as u32) - 2);
    }
    for n in 0..COUNTER_N as usize {
        ok &= orb[n + 1].diff_numerator(&orb[n]) == -(BigInt::one() << (1usize << n));
    }
    // 17 | v_3 and v_4, 257 | v_4 and v_5, neither divides an earlier v
    let divides = |p: u32, n: usize| (&orb[n].1 % BigInt::from(p)).is_zero();
    ok &= divides(17, 3) && divides(17, 4) && (0..3).all(|m| !divides(17, m));
    ok &= divides(257, 4) && divides(257, 5) && (0..4).all(|m| !divides(257, m));
    (
        s_ok && ok,
        format!(
            "{s}; oracle: x_n = 1/(F_n - 2), differences -2^(2^n), 17 and 257 primitive in v_n"
        ),
    )
}

fn c3_euclid() -> (bool, String) {
    let (s_ok, s) = all_pass(&suite("euclid"), None);
    let mut x = Frac::int(1);
    let mut ok = true;
    for n in 0..=EUCLID_N {
        ok &= x == Frac::new(BigInt::one(), euclid(n) - 1);
        // x^2/(x+1)
        let next = Frac::new(&x.0 * &x.0, (&x.0 + &x.1) * &x.1);
        let d = Frac::new(&next.0 * &x.1 - &x.0 * &next.1, &next.1 * &x.1);
        ok &= d == Frac::new(BigInt::from(-1), euclid(n));
        x = next;
    }
    (
        s_ok && ok,
        format!("{s}; oracle: x_n = 1/(E_n - 1) and x_(n+1) - x_n = -1/E_n for n <= {EUCLID_N}"),
    )
}

fn c4_closed_forms() -> (bool, String) {
    let (ok, s) = all_pass(&suite("closed-forms"), None);
    // numeric spot check of 1 + 1/psi^(r)(t) = (1 + 1/t)^(2^r) at t = 3
    let mut x = Frac::int(3);
    let mut spot = true;
    for r in 1..=4u32 {
        x = Frac::new(&x.0 * &x.0, (2 * &x.0 + &x.1) * &x.1);
        let lhs = Frac::new(&x.0 + &x.1, x.0.clone());
        let rhs = Frac::new(BigInt::from(4).pow(1 << r), BigInt::from(3).pow(1 << r));
        spot &= lhs == rhs;
    }
    (
        ok && spot,
        format!("{s}; oracle: t = 3 instance of (1 + 1/t)^(2^r), r <= 4"),
    )
}

fn c5_lemma5() -> (bool, String) {
    let (s_ok, s) = all_pass(&suite("lemma5-identities"), None);
    let i = |v: i64| BigInt::from(v);
    let mut ok = true;
    for (b, c) in [(1i64, 1i64), (2, 1), (0, 3), (-1, 2), (3, -2)] {
        let f = [i(-1), i(0), i(c), i(b), i(1)];
        let g = [i(1), i(b * c), i(b * b + c), i(2 * b), i(1)];
        ok &= sylvester_resultant(&f, &g) == i(b.pow(4) - 4 * b * b * c + 16);
    }
    (
        s_ok && ok,
        format!("{s}; oracle: Sylvester determinant equals b^4 - 4b^2c + 16 at 5 samples"),
    )
}

fn suite_only(id: &str) -> (bool, String) {
    all_pass(&suite(id), None)
}

fn c9_application() -> (bool, String) {
    let (s_ok, s) = all_pass(&suite("application"), None);
    // p | 2^(3^m) + 1  <=>  2^(3^m) = -1 mod p
    let mut ok = true;
    let mut found = 0;
    for p in primes_below(ORACLE_PRIME_BOUND)
        .into_iter()
        .filter(|&p| p > 2)
    {
        let mut y = 2 % p; // 2^(3^m) mod p, m = 0
        let mut first = None;
        for m in 0..=APPLICATION_M {
            if first.is_none() && (y + 1) % p == 0 {
                first = Some(m);
            }
            y = mulmod(mulmod(y, y, p), y, p);
        }
        if let Some(m) = first.filter(|&m| m >= 1) {
            found += 1;
            ok &= p % 3 == 1;
            if m >= 2 {
                ok &= p % 9 == 1;
            }
        }
    }
    (s_ok && ok && found > 0, format!("{s}; oracle: {found} primitive primes below 10^6 by modular powering, all 1 mod 3 (1 mod 9 for m >= 2)"))
}

fn c10_theorem1() -> (bool, String) {
    let (s_ok, s) = all_pass(&suite("theorem1"), None);
    // x_n mod p for t^2 + 1, x_0 = 1; p primitive for n when p | x_(n+1) - x_n only first at n
    let mut covered = [false; THEOREM1_N + 1];
    for p in primes_below(ORACLE_PRIME_BOUND) {
        let mut xs = vec![1 % p];
        for _ in 0..=THEOREM1_N {
            let x = *xs.last().unwrap();
            xs.push((mulmod(x, x, p) + 1) % p);
        }
        if let Some(n) = (0..=THEOREM1_N).find(|&n| xs[n + 1] == xs[n]) {
            covered[n] = true;
        }
    }
    let ok = (1..=THEOREM1_N).all(|n| covered[n]);
    (
        s_ok && ok,
        format!(
            "{s}; oracle: a primitive prime below 10^6 exists for every 1 <= n <= {THEOREM1_N}"
        ),
    )
}

/// Literal parity law for 1/(t^2 + t), x_0 = 2, tested on window-primitive
/// primes of u_n below 10^4.
fn parity_oracle() -> Vec<String> {
    let mut x = Frac::int(2);
    let mut orb = vec![x.clone()];
    for _ in 0..PARITY_N + PARITY_D {
        x = Frac::new(&x.1 * &x.1, &x.0 * (&x.0 + &x.1));
        orb.push(x.clone());
    }
    let divides = |p: u64, v: &BigInt| (v % BigInt::from(p)).is_zero();
    let mut bad = Vec::new();
    for p in primes_below(10_000) {
        let Some(n) = (0..=PARITY_N).find(|&n| divides(p, &orb[n].0)) else {
            continue;
        };
        for big_n in 0..=PARITY_N {
            for d in 1..=PARITY_D {
                let got = divides(p, &orb[big_n + d].diff_numerator(&orb[big_n]));
                let want = big_n >= n && d % 2 == 0;
                if got != want {
                    bad.push(format!("p={p} n={n} N={big_n} D={d}"));
                }
            }
        }
    }
    bad
}

fn c11_theorem2() -> (bool, String) {
    let r = suite("theorem2");
    let (a_ok, a) = all_pass(&r, Some(&["conj-inverse-square-subset-y0"]));
    let (b_ok, b) = all_pass(&r, Some(&["infinity-two-cycle-literal"]));
    let oracle = parity_oracle();
    let b_oracle = oracle.is_empty();
    let first = oracle.first().cloned().unwrap_or_default();
    (
        a_ok && b_ok && b_oracle,
        format!(
            "(a) {a}; (b) {b}; oracle for (b): {} literal-law mismatches{}",
            oracle.len(),
            if first.is_empty() {
                String::new()
            } else {
                format!(", first {first}")
            }
        ),
    )
}

fn c12_lemma6() -> (bool, String) {
    let (s_ok, s) = all_pass(&suite("lemma6"), None);
    // prime factors of F_0..F_5
    let table: [(usize, u64); 7] = [
        (0, 3),
        (1, 5),
        (2, 17),
        (3, 257),
        (4, 65537),
        (5, 641),
        (5, 6700417),
    ];
    let mut ok = true;
    for (n, p) in table {
        ok &= (fermat(n as u32) % BigInt::from(p)).is_zero();
        let mut xs = vec![3 % p];
        for _ in 0..n + LEMMA6_SPAN + LEMMA6_D {
            let x = *xs.last().unwrap();
            xs.push((mulmod(x, x, p) + p - mulmod(2, x, p) + 2) % p);
        }
        for big_n in 0..=n + LEMMA6_SPAN {
            for d in 1..=LEMMA6_D {
                ok &= (xs[big_n + d] == xs[big_n]) == (big_n > n);
            }
        }
    }
    (
        s_ok && ok,
        format!("{s}; oracle: modular iteration for the 7 primes of F_0..F_5"),
    )
}

fn c13_density() -> (bool, String) {
    let (s_ok, s) = all_pass(&suite("density"), None);
    // p | F_n for some n <= 16  <=>  2^(2^n) = -1 mod p
    let count = primes_below(DENSITY_X + 1)
        .into_iter()
        .filter(|&p| p > 2)
        .filter(|&p| {
            let mut y = 2 % p;
            (0..=16).any(|_| {
                let hit = (y + 1) % p == 0;
                y = mulmod(y, y, p);
                hit
            })
        })
        .count();
    (
        s_ok && count == 6 && count < DENSITY_BOUND,
        format!("{s}; oracle: P(10^5) = {count} by repeated squaring"),
    )
}

fn main() {
    type Criterion = fn() -> (bool, String);
    let criteria: Vec<(u32, Criterion)> = vec![
        (1, c1_fermat),
        (2, c2_counterexample),
        (3, c3_euclid),
        (4, c4_closed_forms),
        (5, c5_lemma5),
        (6, || suite_only("kisaka")),
        (7, || suite_only("fixed-points")),
        (8, || suite_only("linear-factors")),
        (9, c9_application),
        (10, c10_theorem1),
        (11, c11_theorem2),
        (12, c12_lemma6),
        (13, c13_density),
        (14, || suite_only("algebra")),
    ];
    let lines: Vec<Line> = criteria
        .into_iter()
        .map(|(id, f)| {
            let (ok, detail) = f();
            Line { id, ok, detail }
        })
        .collect();
    for l in &lines {
        println!(
            "criterion {}: {} {}",
            l.id,
            if l.ok { "PASS" } else { "FAIL" },
            l.detail
        );
    }
    let mut unexpected = Vec::new();
    for l in &lines {
        match (KNOWN_RED.contains(&l.id), l.ok) {
            (true, true) => unexpected.push(format!(
                "criterion {} is now green; remove it from KNOWN_RED",
                l.id
            )),
            (false, false) => unexpected.push(format!("criterion {} failed", l.id)),
            _ => {}
        }
    }
    let red: Vec<String> = lines
        .iter()
        .filter(|l| !l.ok)
        .map(|l| l.id.to_string())
        .collect();
    println!(
        "acceptance: {} of {} criteria pass; known red: [{}]",
        lines.len() - red.len(),
        lines.len(),
        red.join(", ")
    );
    if !unexpected.is_empty() {
        eprintln!("{}", unexpected.join("\n"));
        std::process::exit(1);
    }
}
