use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::error::AlgebraError;
use super::poly::UniPoly;
use super::zpoly;

/// Arbitrary-precision fraction, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Coefficient field of the polynomial and map machinery.
///
/// Addition and multiplication are total. Inversion is fallible because
/// extension contexts are allowed to have reducible moduli, in which case a
/// failed inversion reports the factorization it found.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    fn context(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_rational(ctx: &Self::Ctx, q: &Rational) -> Self;

    fn from_int(ctx: &Self::Ctx, n: i64) -> Self {
        Self::from_rational(ctx, &Rational::from_integer(BigInt::from(n)))
    }

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one(&self.context())
    }

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, AlgebraError>;

    fn div(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self.mul(&other.inv()?))
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.context());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// The element as a rational number, when it lies in the prime field.
    fn to_rational(&self) -> Option<Rational>;

    /// True when the rendering needs no parentheses as a coefficient.
    fn is_atomic(&self) -> bool;

    /// Monic gcd. Fields with a better algorithm override this.
    fn poly_gcd(a: &UniPoly<Self>, b: &UniPoly<Self>) -> Result<UniPoly<Self>, AlgebraError> {
        super::poly::euclid_gcd(a, b)
    }

    /// Sylvester resultant (a-block above b-block).
    fn poly_resultant(a: &UniPoly<Self>, b: &UniPoly<Self>) -> Result<Self, AlgebraError> {
        super::poly::euclid_resultant(a, b)
    }

    /// Scalar that a coefficient list is divided by to reach canonical form;
    /// `lead` is the coefficient that must become "positive"/one.
    fn canonical_divisor(_coeffs: &[Self], lead: &Self) -> Result<Self, AlgebraError> {
        Ok(lead.clone())
    }

    /// Roots of `p` that lie in this field. The default only handles linear
    /// polynomials.
    fn base_roots(p: &UniPoly<Self>) -> Result<Vec<Self>, AlgebraError> {
        match p.degree() {
            Some(1) => Ok(vec![p.coeff(0).neg().div(&p.coeff(1))?]),
            _ => Ok(Vec::new()),
        }
    }

    /// Exact k-th root inside the field, if one is easy to certify.
    fn nth_root(&self, k: u32) -> Option<Self> {
        if k == 1 {
            Some(self.clone())
        } else {
            None
        }
    }

    /// Deterministic total order used where the crate promises a stable
    /// order; numeric for rationals, lexicographic on renderings otherwise.
    fn total_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.to_string().cmp(&other.to_string())
    }
}

impl Field for Rational {
    type Ctx = ();

    fn context(&self) {}
    fn zero(_: &()) -> Self {
        Zero::zero()
    }
    fn one(_: &()) -> Self {
        One::one()
    }
    fn from_rational(_: &(), q: &Rational) -> Self {
        q.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self, AlgebraError> {
        if Zero::is_zero(self) {
            Err(AlgebraError::ZeroInversion)
        } else {
            Ok(self.recip())
        }
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn is_atomic(&self) -> bool {
        true
    }

    fn poly_gcd(a: &UniPoly<Self>, b: &UniPoly<Self>) -> Result<UniPoly<Self>, AlgebraError> {
        let (za, _) = zpoly::from_rational_poly(a);
        let (zb, _) = zpoly::from_rational_poly(b);
        let g = zpoly::subresultant_gcd(&za, &zb);
        zpoly::to_rational_poly(&g).monic()
    }

    fn poly_resultant(a: &UniPoly<Self>, b: &UniPoly<Self>) -> Result<Self, AlgebraError> {
        if a.is_zero() || b.is_zero() {
            return Ok(Zero::zero());
        }
        let (za, sa) = zpoly::from_rational_poly(a);
        let (zb, sb) = zpoly::from_rational_poly(b);
        // a = sa * za, b = sb * zb
        let r = zpoly::subresultant_resultant(&za, &zb);
        let da = a.degree().unwrap_or(0) as u64;
        let db = b.degree().unwrap_or(0) as u64;
        Ok(Rational::from_integer(r) * Field::pow(&sa, db) * Field::pow(&sb, da))
    }

    fn canonical_divisor(coeffs: &[Self], lead: &Self) -> Result<Self, AlgebraError> {
        let c = rational_content(coeffs);
        if Zero::is_zero(&c) {
            return Err(AlgebraError::ZeroInversion);
        }
        Ok(if lead.is_negative() { -c } else { c })
    }

    fn base_roots(p: &UniPoly<Self>) -> Result<Vec<Self>, AlgebraError> {
        let (z, _) = zpoly::from_rational_poly(p);
        Ok(zpoly::rational_roots(&z))
    }

    fn nth_root(&self, k: u32) -> Option<Self> {
        if k == 0 {
            return None;
        }
        let root = |n: &BigInt| -> Option<BigInt> {
            if n.is_negative() {
                if k.is_multiple_of(2) {
                    return None;
                }
                let r = (-n).nth_root(k);
                (Signed::abs(&r).pow(k) == -n).then(|| -r)
            } else {
                let r = n.nth_root(k);
                (r.pow(k) == *n).then_some(r)
            }
        };
        Some(Rational::new(root(self.numer())?, root(self.denom())?))
    }

    fn total_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.cmp(other)
    }
}

/// Positive rational c with coeffs / c integral and coprime.
pub fn rational_content(coeffs: &[Rational]) -> Rational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for c in coeffs {
        if Zero::is_zero(c) {
            continue;
        }
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        <Rational as Zero>::zero()
    } else {
        Rational::new(num, den)
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
