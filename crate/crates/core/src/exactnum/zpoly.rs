//! Dense integer polynomials (lowest degree first) and the subresultant
//! machinery used to keep rational gcds and resultants fraction-free.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{Field, Rational};
use super::poly::UniPoly;

pub type ZPoly = Vec<BigInt>;

pub fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &[BigInt]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive(p: &[BigInt]) -> ZPoly {
    let c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    let c = if p.last().unwrap().is_negative() {
        -c
    } else {
        c
    };
    p.iter().map(|a| a / &c).collect()
}

/// Writes `p` as `scale * z` with `z` integral, primitive and positive-leading.
pub fn from_rational_poly(p: &UniPoly<Rational>) -> (ZPoly, Rational) {
    if p.is_zero() {
        return (Vec::new(), <Rational as One>::one());
    }
    let scale = Rational::canonical_divisor(p.coeffs(), &p.lead()).expect("nonzero polynomial");
    let z = p
        .coeffs()
        .iter()
        .map(|c| {
            let q = c / &scale;
            debug_assert!(q.is_integer());
            q.to_integer()
        })
        .collect();
    (z, scale)
}

pub fn to_rational_poly(z: &[BigInt]) -> UniPoly<Rational> {
    UniPoly::new(
        (),
        z.iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect(),
    )
}

fn sub_scaled_shift(a: &mut ZPoly, b: &[BigInt], c: &BigInt, shift: usize) {
    for (i, bi) in b.iter().enumerate() {
        a[i + shift] -= bi * c;
    }
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
pub fn prem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return a.to_vec();
    }
    let mut r = a.to_vec();
    let lb = &b[db];
    let mut steps = a.len() - b.len() + 1;
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        for c in r.iter_mut() {
            *c *= lb;
        }
        sub_scaled_shift(&mut r, b, &lr, shift);
        r.pop();
        trim(&mut r);
        steps -= 1;
    }
    if steps > 0 {
        let f = num_traits::pow(lb.clone(), steps);
        for c in r.iter_mut() {
            *c *= &f;
        }
    }
    r
}

fn div_scalar(p: &[BigInt], c: &BigInt) -> ZPoly {
    p.iter()
        .map(|a| {
            debug_assert!((a % c).is_zero());
            a / c
        })
        .collect()
}

/// Subresultant PRS gcd (Cohen, Algorithm 3.3.1). Result is primitive with
/// positive leading coefficient times the gcd of the contents.
pub fn subresultant_gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let (mut a, mut b) = if a.len() < b.len() {
        (b.to_vec(), a.to_vec())
    } else {
        (a.to_vec(), b.to_vec())
    };
    trim(&mut a);
    trim(&mut b);
    if b.is_empty() {
        return primitive(&a);
    }
    let d = content(&a).gcd(&content(&b));
    a = primitive(&a);
    b = primitive(&b);
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = (a.len() - b.len()) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            b = vec![BigInt::one()];
            break;
        }
        a = b;
        let div = &g * num_traits::pow(h.clone(), delta as usize);
        b = div_scalar(&r, &div);
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta as usize)
                / num_traits::pow(h.clone(), delta as usize - 1)
        };
    }
    primitive(&b).into_iter().map(|c| c * &d).collect()
}

/// Resultant over Z (Cohen, Algorithm 3.3.7); agrees with the Sylvester
/// determinant whose first deg(b) rows hold the coefficients of a.
pub fn subresultant_resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let mut s = BigInt::one();
    if a.len() < b.len() {
        if ((a.len() - 1) * (b.len() - 1)) % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let (da0, db0) = (a.len() - 1, b.len() - 1);
    if db0 == 0 {
        return s * num_traits::pow(b[0].clone(), da0);
    }
    let ca = content(&a);
    let cb = content(&b);
    let t = num_traits::pow(ca.clone(), db0) * num_traits::pow(cb.clone(), da0);
    a = div_scalar(&a, &ca);
    b = div_scalar(&b, &cb);
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        let delta = da - db;
        if (da * db) % 2 == 1 {
            s = -s;
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return BigInt::zero();
        }
        a = b;
        let div = &g * num_traits::pow(h.clone(), delta);
        b = div_scalar(&r, &div);
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
        };
        if b.len() == 1 {
            let da = a.len() - 1;
            let hb = num_traits::pow(b[0].clone(), da);
            // h^(1-da) * lc(b)^da
            let h = if da == 0 {
                h * hb
            } else {
                hb / num_traits::pow(h, da - 1)
            };
            return s * t * h;
        }
    }
}

pub fn derivative(p: &[BigInt]) -> ZPoly {
    let mut out: ZPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    trim(&mut out);
    out
}

/// Exact division; panics if `b` does not divide `a` over Z.
pub fn exact_div(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        assert!(r.is_empty(), "inexact polynomial division");
        return Vec::new();
    }
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let (qc, rem) = r.last().unwrap().div_rem(lb);
        assert!(rem.is_zero(), "inexact polynomial division");
        let shift = r.len() - b.len();
        sub_scaled_shift(&mut r, b, &qc, shift);
        q[shift] = qc;
        r.pop();
        trim(&mut r);
    }
    assert!(r.is_empty(), "inexact polynomial division");
    q
}

pub fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn eval_mod(p: &[u64], x: u64, m: u64) -> u64 {
    p.iter().rev().fold(0u64, |acc, &c| {
        ((acc as u128 * x as u128 + c as u128) % m as u128) as u64
    })
}

fn reduce_mod(p: &[BigInt], m: u64) -> Vec<u64> {
    let mb = BigInt::from(m);
    p.iter()
        .map(|c| c.mod_floor(&mb).to_u64().unwrap())
        .collect()
}

fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let e = num_integer::Integer::extended_gcd(&(a as i128), &(m as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i128) as u64)
}

/// gcd over F_p, only the degree matters to callers.
fn gcd_degree_mod(a: &[u64], b: &[u64], p: u64) -> usize {
    let norm = |mut v: Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let (mut a, mut b) = (norm(a.to_vec()), norm(b.to_vec()));
    while !b.is_empty() {
        let inv = inv_mod(*b.last().unwrap(), p).unwrap();
        while a.len() >= b.len() {
            let c = (*a.last().unwrap() as u128 * inv as u128 % p as u128) as u64;
            let shift = a.len() - b.len();
            for (i, bi) in b.iter().enumerate() {
                let sub = (c as u128 * *bi as u128 % p as u128) as u64;
                a[i + shift] = (a[i + shift] + p - sub) % p;
            }
            a = norm(a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Distinct integer roots of a monic squarefree integer polynomial, found
/// by brute force modulo a good prime followed by Hensel lifting.
fn integer_roots_monic_squarefree(h: &[BigInt]) -> Vec<BigInt> {
    let n = h.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![-h[0].clone()];
    }
    let dh = derivative(h);
    let bound: BigInt = h.iter().map(|c| c.abs()).max().unwrap() + 1u32;
    let mut p = 2u64;
    let p = loop {
        p += 1;
        if !num_integer::Integer::is_odd(&p)
            || (3..p)
                .take_while(|q| q * q <= p)
                .any(|q| p.is_multiple_of(q))
        {
            continue;
        }
        let hp = reduce_mod(h, p);
        let dp = reduce_mod(&dh, p);
        if gcd_degree_mod(&hp, &dp, p) == 0 {
            break p;
        }
    };
    let hp = reduce_mod(h, p);
    let roots_mod_p: Vec<u64> = (0..p).filter(|&x| eval_mod(&hp, x, p) == 0).collect();
    let target = bound * 2u32;
    let mut out = Vec::new();
    for r0 in roots_mod_p {
        let mut r = BigInt::from(r0);
        let mut modulus = BigInt::from(p);
        while modulus <= target {
            modulus = &modulus * &modulus;
            let fr = eval(h, &r).mod_floor(&modulus);
            let dr = eval(&dh, &r).mod_floor(&modulus);
            let inv = mod_inverse(&dr, &modulus).expect("simple root mod p lifts");
            r = (r - fr * inv).mod_floor(&modulus);
        }
        let half = &modulus / 2u32;
        if r > half {
            r -= &modulus;
        }
        if eval(h, &r).is_zero() {
            out.push(r);
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else if (-&e.gcd).is_one() {
        Some((-e.x).mod_floor(m))
    } else {
        None
    }
}

/// All distinct rational roots, ascending.
pub fn rational_roots(p: &[BigInt]) -> Vec<Rational> {
    let mut p = p.to_vec();
    trim(&mut p);
    if p.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let lead_zeros = p.iter().take_while(|c| c.is_zero()).count();
    if lead_zeros > 0 {
        out.push(<Rational as Zero>::zero());
        p.drain(..lead_zeros);
    }
    if p.len() > 1 {
        let sf = squarefree_part(&p);
        let n = sf.len() - 1;
        let a = sf[n].clone();
        // h(y) = a^(n-1) f(y/a), monic
        let mut h = vec![BigInt::zero(); n + 1];
        h[n] = BigInt::one();
        let mut pw = BigInt::one();
        for i in (0..n).rev() {
            h[i] = &sf[i] * &pw;
            pw *= &a;
        }
        for y in integer_roots_monic_squarefree(&h) {
            out.push(Rational::new(y, a.clone()));
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn squarefree_part(p: &[BigInt]) -> ZPoly {
    let dp = derivative(p);
    if dp.is_empty() {
        return primitive(p);
    }
    let g = subresultant_gcd(p, &dp);
    primitive(&exact_div(&primitive(p), &primitive(&g)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn gcd_of_shared_linear_factor() {
        // (t-1)(t-2), (t-1)(t-3)
        assert_eq!(
            subresultant_gcd(&z(&[2, -3, 1]), &z(&[3, -4, 1])),
            z(&[-1, 1])
        );
    }

    #[test]
    fn resultant_matches_known_values() {
        // lc(a)^deg(b) * b(1) = 1 - 2
        assert_eq!(
            subresultant_resultant(&z(&[-1, 1]), &z(&[-2, 1])),
            BigInt::from(-1)
        );
        let a = z(&[-1, 0, 1, 2, 1]);
        let b = z(&[1, 2, 5, 4, 1]);
        assert_eq!(subresultant_resultant(&a, &b), BigInt::from(16));
        // swap sign: (-1)^(4*4) = 1
        assert_eq!(subresultant_resultant(&b, &a), BigInt::from(16));
        // Res(t^2, t+1) = 1, Res(t+1, t^2) = 1 ; Res(t, t^2+1) = 1
        assert_eq!(
            subresultant_resultant(&z(&[0, 1]), &z(&[1, 0, 1])),
            BigInt::from(1)
        );
        // Res(t^2+1, t) = 1 ; Res(2t+1, t^2) = (1/2)^2 * 4 = 1
        assert_eq!(
            subresultant_resultant(&z(&[1, 2]), &z(&[0, 0, 1])),
            BigInt::from(1)
        );
        // Res(t, t-3): lc(t)^1 * (0 - 3) = -3
        assert_eq!(
            subresultant_resultant(&z(&[0, 1]), &z(&[-3, 1])),
            BigInt::from(-3)
        );
    }

    #[test]
    fn rational_roots_found() {
        // (2t-1)(t+3)(t^2+1) t
        let p = z(&[0, -3, 5, -1, 5, 2]);
        let r = rational_roots(&p);
        assert_eq!(
            r,
            vec![
                Rational::from_integer((-3).into()),
                <Rational as Zero>::zero(),
                Rational::new(1.into(), 2.into())
            ]
        );
        assert!(rational_roots(&z(&[1, 0, 1])).is_empty());
    }
}
