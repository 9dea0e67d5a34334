use dynlab_core::exactnum::{int, Rational};
use dynlab_core::orbit::{diff_numerator, orbit, OrbitPoint};
use dynlab_core::ratmap::{delta_form, ProjPoint};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::{difference, map, poly, SuiteConfig};
use crate::oracle;
use crate::report::{Check, SuiteResult};

const FERMAT: &str = "fermat-numbers";
const COUNTER: &str = "counterexample-2t-plus-1";
const EUCLID: &str = "euclid-numbers";
const CLOSED: &str = "iterate-closed-forms";
const LEMMA5: &str = "period-three-identities";

fn pt(x: i64) -> ProjPoint<Rational> {
    ProjPoint::Finite(int(x))
}

fn frac(o: &OrbitPoint) -> (BigInt, BigInt) {
    (o.u.clone(), o.v.clone())
}

pub fn fermat(cfg: &SuiteConfig) -> SuiteResult {
    let phi = map("t^2 - 2*t + 2");
    let orb = orbit(&phi, &pt(3), 6, cfg.digit_cap).expect("orbit");
    let f: Vec<BigInt> = (0..=6).map(oracle::fermat).collect();
    let values_ok = orb
        .iter()
        .zip(&f)
        .all(|(o, e)| frac(o) == (e.clone(), BigInt::one()));
    let mut coprime = true;
    for m in 0..=6 {
        for n in m + 1..=6 {
            coprime &= orb[m].u.gcd(&orb[n].u).is_one();
        }
    }
    let numeric = (0..6).all(|n| &orb[n + 1].u - 2 == &orb[n].u * (&orb[n].u - 2));
    // phi(t) - 2 = t (t - 2) as polynomials
    let symbolic = phi.denominator().is_constant()
        && phi
            .numerator()
            .scale(&phi.denominator().lead().recip())
            .sub(&poly(&[2]))
            == poly(&[0, -2, 1]);
    SuiteResult::new(
        "fermat",
        vec![
            Check::new(
                "orbit-equals-2^(2^n)+1",
                FERMAT,
                values_ok,
                "x_n for n <= 6 against 2^(2^n) + 1",
            ),
            Check::new(
                "pairwise-coprime",
                FERMAT,
                coprime,
                "gcd(x_m, x_n) = 1 for m < n <= 6",
            ),
            Check::new(
                "recurrence-numeric",
                FERMAT,
                numeric,
                "F_(n+1) - 2 = F_n (F_n - 2), n <= 5",
            ),
            Check::new(
                "recurrence-symbolic",
                FERMAT,
                symbolic,
                "phi(t) - 2 = t (t - 2)",
            ),
        ],
    )
}

pub fn counterexample(cfg: &SuiteConfig) -> SuiteResult {
    let phi = map("t^2/(2*t + 1)");
    let orb = orbit(&phi, &pt(1), 5, cfg.digit_cap).expect("orbit");
    let values = (0..=5).all(|n| frac(&orb[n]) == (BigInt::one(), oracle::fermat(n as u32) - 2));
    let diffs =
        (0..=4).all(|n| diff_numerator(&orb[n + 1], &orb[n]) == -(BigInt::one() << (1usize << n)));
    let support = (0..=4).all(|n| {
        let mut v = diff_numerator(&orb[n + 1], &orb[n]);
        while v.is_even() {
            v /= 2;
        }
        v == BigInt::from(-1)
    });
    let den_primitive = |n: usize, p: u64| {
        let p = BigInt::from(p);
        orb[n].v.is_multiple_of(&p)
            && (0..n).all(|m| !orb[m].v.is_multiple_of(&p))
            && orb[n + 1].v.is_multiple_of(&p)
    };
    SuiteResult::new(
        "counterexample",
        vec![
            Check::new(
                "orbit-equals-1/(F_n-2)",
                COUNTER,
                values,
                "x_n = 1/(F_n - 2), n <= 5",
            ),
            Check::new(
                "difference-numerators",
                COUNTER,
                diffs,
                "numerator(x_(n+1) - x_n) = -2^(2^n), n <= 4",
            ),
            Check::new(
                "support-is-2",
                COUNTER,
                support,
                "2 is the only prime of every difference numerator",
            ),
            Check::new(
                "denominator-primitive-primes",
                COUNTER,
                den_primitive(3, 17) && den_primitive(4, 257),
                "17 (n = 3) and 257 (n = 4) are primitive in v_n and divide v_(n+1)",
            ),
        ],
    )
}

pub fn euclid(cfg: &SuiteConfig) -> SuiteResult {
    let phi = map("t^2/(t + 1)");
    let orb = orbit(&phi, &pt(1), 7, cfg.digit_cap).expect("orbit");
    let e: Vec<BigInt> = (0..=7).map(oracle::euclid).collect();
    let values = (0..=6).all(|n| frac(&orb[n]) == (BigInt::one(), &e[n] - 1));
    // x_(n+1) - x_n = -1/E_n
    let diffs = (0..=6).all(|n| {
        let (a, b) = (&orb[n + 1], &orb[n]);
        let num = &a.u * &b.v - &b.u * &a.v;
        let den = &a.v * &b.v;
        num * &e[n] == -den
    });
    SuiteResult::new(
        "euclid",
        vec![
            Check::new(
                "orbit-equals-1/(E_n-1)",
                EUCLID,
                values,
                "x_n = 1/(E_n - 1), n <= 6",
            ),
            Check::new(
                "differences",
                EUCLID,
                diffs,
                "x_(n+1) - x_n = -1/E_n, n <= 6",
            ),
        ],
    )
}

pub fn closed_forms(_cfg: &SuiteConfig) -> SuiteResult {
    let psi = map("t^2/(t + 1)");
    let mut ok_a = true;
    let mut detail_a = Vec::new();
    for r in 0..=4usize {
        let (n, d) = difference(&psi.iterate(r + 1).unwrap(), &psi.iterate(r).unwrap());
        let good = n == poly(&[1]).shift(1 << r).neg() && d.degree() == Some(1 << r);
        ok_a &= good;
        detail_a.push(format!("r={r}:{}", if good { "ok" } else { "bad" }));
    }
    let chi = map("t^2/(2*t + 1)");
    let mut ok_b = true;
    for r in 0..=4usize {
        let it = chi.iterate(r).unwrap();
        let (f, g) = (it.numerator(), it.denominator());
        // 1 + g/f = (t+1)^(2^r) / t^(2^r)
        let lhs = f.add(g).shift(1 << r);
        let rhs = poly(&[1, 1]).pow(1 << r).mul(f);
        ok_b &= lhs == rhs;
    }
    SuiteResult::new(
        "closed-forms",
        vec![
            Check::new(
                "t2-over-t-plus-1",
                CLOSED,
                ok_a,
                format!(
                    "psi^(r+1) - psi^(r) = -t^(2^r)/g_r, g_r monic of degree 2^r ({})",
                    detail_a.join(" ")
                ),
            ),
            Check::new(
                "t2-over-2t-plus-1",
                CLOSED,
                ok_b,
                "1 + 1/psi^(r) = (1 + 1/t)^(2^r), r <= 4",
            ),
        ],
    )
}

pub fn lemma5_identities(_cfg: &SuiteConfig) -> SuiteResult {
    let phi = map("8*(t-1)^2/(8*(t-1)^2 - (t-2)^2)");
    let n3 = phi.iterate(3).unwrap();
    let num3 = n3.numerator().sub(&n3.denominator().shift(1));
    let n1 = delta_form(&phi, 1).unwrap().dehomogenize();
    let expected = poly(&[0, 1])
        .mul(&poly(&[-1, 1]))
        .mul(&poly(&[-2, 1]))
        .mul(&poly(&[8, 0, -14, 7]))
        .mul(&n1);
    let cubic_ok = match num3.div_rem(&expected) {
        Ok((q, r)) => r.is_zero() && q.is_constant() && !q.is_zero(),
        Err(_) => false,
    };
    let samples = [(1i64, 1i64), (2, 1), (0, 3), (-1, 2), (3, -2)];
    let mut res_ok = true;
    let mut details = Vec::new();
    for (b, c) in samples {
        let p = poly(&[-1, 0, c, b, 1]);
        let q = poly(&[1, b * c, b * b + c, 2 * b, 1]);
        let got = p.resultant(&q).unwrap();
        let want = int(b.pow(4) - 4 * b * b * c + 16);
        let to_big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let bareiss = oracle::sylvester_resultant(
            &to_big(&[-1, 0, c, b, 1]),
            &to_big(&[1, b * c, b * b + c, 2 * b, 1]),
        );
        let good = got == want && Rational::from(bareiss) == want;
        res_ok &= good;
        details.push(format!("(b,c)=({b},{c}):{got}"));
    }
    SuiteResult::new(
        "lemma5-identities",
        vec![
            Check::new(
                "period-three-cubic",
                LEMMA5,
                cubic_ok,
                format!("numerator(phi^3(t) - t) = const * t (t-1) (t-2) (7t^3 - 14t^2 + 8) N_1(t), N_1 = {n1}"),
            ),
            Check::new("quartic-resultant", LEMMA5, res_ok, format!("Res = b^4 - 4b^2c + 16 [{}]", details.join(", "))),
        ],
    )
}
