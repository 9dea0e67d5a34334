use std::fmt;
use std::sync::Arc;

use super::error::{RatMapError, Result};
use crate::exactnum::{lift, AlgElem, BiForm, ExtContext, Field, UniPoly};

/// A point of P^1 over K.
#[derive(Clone, Debug, PartialEq)]
pub enum ProjPoint<K: Field> {
    Finite(K),
    Infinity,
}

impl<K: Field> ProjPoint<K> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjPoint::Infinity)
    }

    pub fn finite(&self) -> Option<&K> {
        match self {
            ProjPoint::Finite(x) => Some(x),
            ProjPoint::Infinity => None,
        }
    }
}

impl<K: Field> fmt::Display for ProjPoint<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(x) => write!(f, "{x}"),
            ProjPoint::Infinity => f.write_str("inf"),
        }
    }
}

/// phi = f/g with gcd(f, g) = 1 and a fixed scaling: over Q the joint
/// coefficients are primitive integers with lc(g) > 0; over an extension
/// g is monic. Equal maps therefore compare equal.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMap<K: Field> {
    f: UniPoly<K>,
    g: UniPoly<K>,
    degree: usize,
    big_f: BiForm<K>,
    big_g: BiForm<K>,
    resultant: K,
}

/// Homogeneous iterate pair (F_r, G_r), both of degree d^r.
#[derive(Clone, Debug, PartialEq)]
pub struct FormPair<K: Field> {
    pub r: usize,
    pub f: BiForm<K>,
    pub g: BiForm<K>,
}

/// Res(F, G) for the degree-d forms of f/g, via the univariate resultant.
pub(crate) fn form_resultant<K: Field>(f: &UniPoly<K>, g: &UniPoly<K>, d: usize) -> Result<K> {
    let r = f.resultant(g)?;
    let (df, dg) = (f.deg0(), g.deg0());
    Ok(if df == d {
        f.lead().pow((d - dg) as u64).mul(&r)
    } else {
        let v = g.lead().pow((d - df) as u64).mul(&r);
        if (d * (d - df)) % 2 == 1 {
            v.neg()
        } else {
            v
        }
    })
}

impl<K: Field> RationalMap<K> {
    pub fn from_polys(f: UniPoly<K>, g: UniPoly<K>) -> Result<Self> {
        if g.is_zero() {
            return Err(RatMapError::ZeroDenominator);
        }
        let h = f.gcd(&g)?;
        let (f, g) = if h.is_constant() {
            (f, g)
        } else {
            (f.exact_div(&h)?, g.exact_div(&h)?)
        };
        let degree = f.deg0().max(g.deg0());
        if degree == 0 {
            return Err(RatMapError::DegreeZero);
        }
        let joint: Vec<K> = f.coeffs().iter().chain(g.coeffs()).cloned().collect();
        let inv = K::canonical_divisor(&joint, &g.lead())?.inv()?;
        let (f, g) = (f.scale(&inv), g.scale(&inv));
        let big_f = BiForm::homogenize(&f, degree);
        let big_g = BiForm::homogenize(&g, degree);
        let resultant = form_resultant(&f, &g, degree)?;
        if resultant.is_zero() {
            return Err(RatMapError::Internal(
                "coprime pair with zero resultant".into(),
            ));
        }
        Ok(RationalMap {
            f,
            g,
            degree,
            big_f,
            big_g,
            resultant,
        })
    }

    pub fn from_forms(f: &BiForm<K>, g: &BiForm<K>) -> Result<Self> {
        Self::from_polys(f.dehomogenize(), g.dehomogenize())
    }

    pub fn identity(ctx: &K::Ctx) -> Self {
        Self::from_polys(UniPoly::var(ctx), UniPoly::one(ctx)).expect("identity is a valid map")
    }

    pub fn ctx(&self) -> &K::Ctx {
        self.f.ctx()
    }
    pub fn numerator(&self) -> &UniPoly<K> {
        &self.f
    }
    pub fn denominator(&self) -> &UniPoly<K> {
        &self.g
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    /// (F, G) = (y^d f(x/y), y^d g(x/y)).
    pub fn forms(&self) -> (&BiForm<K>, &BiForm<K>) {
        (&self.big_f, &self.big_g)
    }
    pub fn resultant(&self) -> &K {
        &self.resultant
    }

    pub fn require_dynamical(&self) -> Result<()> {
        if self.degree < 2 {
            Err(RatMapError::DegreeTooSmall(self.degree))
        } else {
            Ok(())
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.g.is_constant()
    }

    pub fn evaluate(&self, p: &ProjPoint<K>) -> Result<ProjPoint<K>> {
        let (u, v) = match p {
            ProjPoint::Finite(x) => {
                let one = K::one(self.ctx());
                (self.big_f.eval(x, &one), self.big_g.eval(x, &one))
            }
            ProjPoint::Infinity => (
                self.big_f.coeff(self.degree).clone(),
                self.big_g.coeff(self.degree).clone(),
            ),
        };
        if v.is_zero() {
            Ok(ProjPoint::Infinity)
        } else {
            Ok(ProjPoint::Finite(u.div(&v)?))
        }
    }

    /// self o other.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let (of, og) = other.forms();
        let f = self.big_f.substitute(of, og)?;
        let g = self.big_g.substitute(of, og)?;
        Self::from_forms(&f, &g)
    }

    pub fn iterate(&self, n: usize) -> Result<Self> {
        let mut acc = Self::identity(self.ctx());
        for _ in 0..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// F_0 = x, G_0 = y, F_{r+1} = F(F_r, G_r), G_{r+1} = G(F_r, G_r). No
    /// content is removed, so over Z the pair is the literal recursion.
    pub fn iterate_forms(&self, r: usize) -> Result<FormPair<K>> {
        let ctx = self.ctx();
        let (mut a, mut b) = (BiForm::x(ctx), BiForm::y(ctx));
        for _ in 0..r {
            let na = self.big_f.substitute(&a, &b)?;
            let nb = self.big_g.substitute(&a, &b)?;
            a = na;
            b = nb;
        }
        Ok(FormPair { r, f: a, g: b })
    }

    /// sigma^-1 o self o sigma.
    pub fn conjugate(&self, sigma: &Mobius<K>) -> Result<Self> {
        sigma
            .inverse()
            .as_map()
            .compose(&self.compose(&sigma.as_map())?)
    }

    /// psi(t) = 1/phi(1/t), which moves infinity to 0.
    pub fn chart_at_infinity(&self) -> Result<Self> {
        Self::from_polys(
            self.big_g.dehomogenize_at_infinity(),
            self.big_f.dehomogenize_at_infinity(),
        )
    }

    /// f'g - fg'.
    pub fn wronskian(&self) -> UniPoly<K> {
        self.f
            .derivative()
            .mul(&self.g)
            .sub(&self.f.mul(&self.g.derivative()))
    }

    /// Numerator of phi(t) - c, i.e. f - c g.
    pub fn level_numerator(&self, c: &K) -> UniPoly<K> {
        self.f.sub(&self.g.scale(c))
    }

    /// Base change into an extension of the coefficient field.
    pub fn lift_to(&self, ctx: &Arc<ExtContext<K>>) -> Result<RationalMap<AlgElem<K>>> {
        let up = |p: &UniPoly<K>| {
            UniPoly::new(
                ctx.clone(),
                p.coeffs().iter().map(|c| lift(ctx, c.clone())).collect(),
            )
        };
        RationalMap::from_polys(up(&self.f), up(&self.g))
    }

    /// Maps every coefficient through `h` (e.g. restriction to Q).
    pub fn map_coeffs<L: Field>(
        &self,
        ctx: &L::Ctx,
        h: impl Fn(&K) -> Option<L>,
    ) -> Option<Result<RationalMap<L>>> {
        let conv = |p: &UniPoly<K>| -> Option<UniPoly<L>> {
            Some(UniPoly::new(
                ctx.clone(),
                p.coeffs().iter().map(&h).collect::<Option<Vec<_>>>()?,
            ))
        };
        Some(RationalMap::from_polys(conv(&self.f)?, conv(&self.g)?))
    }
}

fn needs_parens<K: Field>(p: &UniPoly<K>) -> bool {
    let terms = p.coeffs().iter().filter(|c| !c.is_zero()).count();
    terms > 1 || (terms == 1 && !p.lead().is_atomic())
}

impl<K: Field> fmt::Display for RationalMap<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.g.is_one() {
            return write!(f, "{}", self.f);
        }
        let wrap = |p: &UniPoly<K>| {
            if needs_parens(p) {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        let gs = self.g.to_string();
        let bare = gs.chars().all(|c| c.is_alphanumeric() || c == '^');
        let g_wrap = if bare { gs } else { format!("({gs})") };
        write!(f, "{}/{}", wrap(&self.f), g_wrap)
    }
}

trait IsOne {
    fn is_one(&self) -> bool;
}

impl<K: Field> IsOne for UniPoly<K> {
    fn is_one(&self) -> bool {
        self.degree() == Some(0) && self.lead().is_one()
    }
}

/// sigma(t) = (a t + b) / (c t + d), ad - bc != 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Mobius<K: Field> {
    a: K,
    b: K,
    c: K,
    d: K,
}

impl<K: Field> Mobius<K> {
    pub fn new(a: K, b: K, c: K, d: K) -> Result<Self> {
        if a.mul(&d).sub(&b.mul(&c)).is_zero() {
            return Err(RatMapError::SingularMobius);
        }
        Ok(Mobius { a, b, c, d })
    }

    pub fn identity(ctx: &K::Ctx) -> Self {
        Mobius {
            a: K::one(ctx),
            b: K::zero(ctx),
            c: K::zero(ctx),
            d: K::one(ctx),
        }
    }

    /// t -> lambda t + beta.
    pub fn affine(lambda: K, beta: K) -> Result<Self> {
        let ctx = lambda.context();
        Self::new(lambda, beta, K::zero(&ctx), K::one(&ctx))
    }

    pub fn translation(beta: K) -> Self {
        let ctx = beta.context();
        Mobius {
            a: K::one(&ctx),
            b: beta,
            c: K::zero(&ctx),
            d: K::one(&ctx),
        }
    }

    pub fn coefficients(&self) -> [&K; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_affine(&self) -> bool {
        self.c.is_zero()
    }

    pub fn inverse(&self) -> Self {
        Mobius {
            a: self.d.clone(),
            b: self.b.neg(),
            c: self.c.neg(),
            d: self.a.clone(),
        }
    }

    /// self o other.
    pub fn compose(&self, o: &Self) -> Self {
        Mobius {
            a: self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            c: self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            d: self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        }
    }

    pub fn apply(&self, p: &ProjPoint<K>) -> Result<ProjPoint<K>> {
        let (u, v) = match p {
            ProjPoint::Finite(x) => (self.a.mul(x).add(&self.b), self.c.mul(x).add(&self.d)),
            ProjPoint::Infinity => (self.a.clone(), self.c.clone()),
        };
        if v.is_zero() {
            Ok(ProjPoint::Infinity)
        } else {
            Ok(ProjPoint::Finite(u.div(&v)?))
        }
    }

    pub fn as_map(&self) -> RationalMap<K> {
        let ctx = self.a.context();
        RationalMap::from_polys(
            UniPoly::new(ctx.clone(), vec![self.b.clone(), self.a.clone()]),
            UniPoly::new(ctx, vec![self.d.clone(), self.c.clone()]),
        )
        .expect("nonsingular Mobius map has degree 1")
    }

    /// Same transformation, scaled so that it compares canonically.
    pub fn normalized(&self) -> Self {
        let m = self.as_map();
        let (f, g) = (m.numerator(), m.denominator());
        Mobius {
            a: f.coeff(1),
            b: f.coeff(0),
            c: g.coeff(1),
            d: g.coeff(0),
        }
    }
}

impl<K: Field> fmt::Display for Mobius<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_map())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat, Rational};

    fn p(v: &[i64]) -> UniPoly<Rational> {
        UniPoly::from_ints(&(), v)
    }

    fn map(f: &[i64], g: &[i64]) -> RationalMap<Rational> {
        RationalMap::from_polys(p(f), p(g)).unwrap()
    }

    #[test]
    fn normalization_cancels_content_and_factors() {
        let m = map(&[0, 2, 2], &[2]);
        assert_eq!(m, map(&[0, 1, 1], &[1]));
        assert_eq!(m.degree(), 2);
        // (t^2 - 1)/(t - 1) = t + 1, degree 1
        let m = map(&[-1, 0, 1], &[-1, 1]);
        assert_eq!(m.degree(), 1);
        assert!(matches!(
            RationalMap::from_polys(p(&[1]), p(&[])),
            Err(RatMapError::ZeroDenominator)
        ));
        assert!(matches!(
            RationalMap::from_polys(p(&[2, 2]), p(&[1, 1])),
            Err(RatMapError::DegreeZero)
        ));
        // sign moves to the numerator
        assert_eq!(map(&[1], &[0, 0, -1]).numerator(), &p(&[-1]));
    }

    #[test]
    fn evaluation() {
        let fermat = map(&[2, -2, 1], &[1]);
        assert_eq!(
            fermat.evaluate(&ProjPoint::Finite(int(3))).unwrap(),
            ProjPoint::Finite(int(5))
        );
        let cex = map(&[0, 0, 1], &[1, 2]);
        assert_eq!(
            cex.evaluate(&ProjPoint::Finite(rat(-1, 2))).unwrap(),
            ProjPoint::Infinity
        );
        assert_eq!(
            cex.evaluate(&ProjPoint::Infinity).unwrap(),
            ProjPoint::Infinity
        );
        assert_eq!(
            map(&[1], &[0, 0, 1])
                .evaluate(&ProjPoint::Infinity)
                .unwrap(),
            ProjPoint::Finite(int(0))
        );
    }

    #[test]
    fn homogeneous_resultants() {
        assert_eq!(map(&[2, -2, 1], &[1]).resultant(), &int(1));
        assert_eq!(map(&[0, 0, 1], &[1, 2]).resultant(), &int(1));
        assert_eq!(map(&[0, -1, 1], &[0, 1]).degree(), 1);
    }

    #[test]
    fn iterate_forms_first_steps() {
        let fermat = map(&[2, -2, 1], &[1]);
        let fp = fermat.iterate_forms(0).unwrap();
        assert_eq!(
            (fp.f.to_string(), fp.g.to_string()),
            ("x".to_string(), "y".to_string())
        );
        let fp = fermat.iterate_forms(1).unwrap();
        assert_eq!(fp.f.to_string(), "x^2 - 2*x*y + 2*y^2");
        assert_eq!(fp.g.to_string(), "y^2");
        assert_eq!(fermat.iterate_forms(3).unwrap().f.degree(), 8);
    }

    #[test]
    fn conjugation_examples() {
        let phi = map(&[1, 3, 1], &[1]);
        let sigma = Mobius::translation(int(-2));
        assert_eq!(phi.conjugate(&sigma).unwrap(), map(&[1, -1, 1], &[1]));
        let sq = map(&[0, 0, 1], &[1]);
        let s = Mobius::new(int(1), int(0), int(1), int(1)).unwrap();
        assert_eq!(sq.conjugate(&s).unwrap(), map(&[0, 0, 1], &[1, 2]));
        assert_eq!(sq.conjugate(&Mobius::identity(&())).unwrap(), sq);
    }

    #[test]
    fn display() {
        assert_eq!(map(&[0, 0, 1], &[1, 2]).to_string(), "t^2/(2*t + 1)");
        assert_eq!(map(&[0, -1, 1], &[1, 1]).to_string(), "(t^2 - t)/(t + 1)");
        assert_eq!(map(&[1], &[0, 0, 1]).to_string(), "1/t^2");
        assert_eq!(map(&[1], &[0, 0, 2]).to_string(), "1/(2*t^2)");
    }
}
