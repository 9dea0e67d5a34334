use std::fmt;

use num_bigint::BigInt;

use super::error::AlgebraError;
use super::field::{rational_content, Field, Rational};
use super::poly::{render_terms, UniPoly};

/// Homogeneous form in x, y of fixed degree; `coeffs[i]` multiplies
/// x^i y^(degree - i). The zero form keeps its nominal degree.
#[derive(Clone, PartialEq, Debug)]
pub struct BiForm<K: Field> {
    ctx: K::Ctx,
    degree: usize,
    coeffs: Vec<K>,
}

impl<K: Field> BiForm<K> {
    pub fn new(ctx: K::Ctx, degree: usize, mut coeffs: Vec<K>) -> Self {
        assert!(
            coeffs.len() <= degree + 1,
            "too many coefficients for degree {degree}"
        );
        coeffs.resize(degree + 1, K::zero(&ctx));
        BiForm {
            ctx,
            degree,
            coeffs,
        }
    }

    pub fn zero(ctx: &K::Ctx, degree: usize) -> Self {
        Self::new(ctx.clone(), degree, Vec::new())
    }

    pub fn x(ctx: &K::Ctx) -> Self {
        Self::new(ctx.clone(), 1, vec![K::zero(ctx), K::one(ctx)])
    }

    pub fn y(ctx: &K::Ctx) -> Self {
        Self::new(ctx.clone(), 1, vec![K::one(ctx)])
    }

    pub fn constant(c: K) -> Self {
        Self::new(c.context(), 0, vec![c])
    }

    /// y^degree * p(x/y); requires deg p <= degree.
    pub fn homogenize(p: &UniPoly<K>, degree: usize) -> Self {
        assert!(p.deg0() <= degree, "polynomial degree exceeds form degree");
        Self::new(p.ctx().clone(), degree, p.coeffs().to_vec())
    }

    pub fn ctx(&self) -> &K::Ctx {
        &self.ctx
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    /// Coefficient of x^i y^(degree - i).
    pub fn coeff(&self, i: usize) -> &K {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Result<Self, AlgebraError> {
        if self.degree != o.degree {
            return Err(AlgebraError::DegreeMismatch(self.degree, o.degree));
        }
        Ok(Self::new(
            self.ctx.clone(),
            self.degree,
            self.coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        ))
    }

    pub fn sub(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(
            self.ctx.clone(),
            self.degree,
            self.coeffs.iter().map(|c| c.neg()).collect(),
        )
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::new(
            self.ctx.clone(),
            self.degree,
            self.coeffs.iter().map(|a| a.mul(c)).collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = vec![K::zero(&self.ctx); self.degree + o.degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(self.ctx.clone(), self.degree + o.degree, out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(K::one(&self.ctx));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// self(p, q) for forms p, q of a common degree e; result has degree
    /// degree * e.
    pub fn substitute(&self, p: &Self, q: &Self) -> Result<Self, AlgebraError> {
        if p.degree != q.degree {
            return Err(AlgebraError::DegreeMismatch(p.degree, q.degree));
        }
        let k = self.degree;
        let mut ppow = vec![Self::constant(K::one(&self.ctx))];
        let mut qpow = vec![Self::constant(K::one(&self.ctx))];
        for i in 0..k {
            ppow.push(ppow[i].mul(p));
            qpow.push(qpow[i].mul(q));
        }
        let mut acc = Self::zero(&self.ctx, k * p.degree);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&ppow[i].mul(&qpow[k - i]).scale(c))?;
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &K, y: &K) -> K {
        // Horner in x with y powers folded in
        let mut acc = K::zero(&self.ctx);
        let mut ypow = K::one(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&c.mul(&ypow));
            ypow = ypow.mul(y);
        }
        acc
    }

    /// F(t, 1).
    pub fn dehomogenize(&self) -> UniPoly<K> {
        UniPoly::new(self.ctx.clone(), self.coeffs.clone())
    }

    /// F(1, t): the chart at infinity.
    pub fn dehomogenize_at_infinity(&self) -> UniPoly<K> {
        UniPoly::new(
            self.ctx.clone(),
            self.coeffs.iter().rev().cloned().collect(),
        )
    }

    /// Largest k with y^k | F.
    pub fn y_valuation(&self) -> usize {
        self.coeffs.iter().rev().take_while(|c| c.is_zero()).count()
    }

    /// Largest k with x^k | F.
    pub fn x_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn partial_x(&self) -> Self {
        if self.degree == 0 {
            return Self::zero(&self.ctx, 0);
        }
        let v = (1..=self.degree)
            .map(|i| self.coeffs[i].mul(&K::from_int(&self.ctx, i as i64)))
            .collect();
        Self::new(self.ctx.clone(), self.degree - 1, v)
    }

    pub fn partial_y(&self) -> Self {
        if self.degree == 0 {
            return Self::zero(&self.ctx, 0);
        }
        let v = (0..self.degree)
            .map(|i| self.coeffs[i].mul(&K::from_int(&self.ctx, (self.degree - i) as i64)))
            .collect();
        Self::new(self.ctx.clone(), self.degree - 1, v)
    }

    pub fn swap_xy(&self) -> Self {
        Self::new(
            self.ctx.clone(),
            self.degree,
            self.coeffs.iter().rev().cloned().collect(),
        )
    }

    /// Divided by the field's canonical divisor keyed on the highest
    /// nonzero x-power coefficient: primitive integral with positive
    /// leading term over Q, monic over extensions.
    pub fn canonical(&self) -> Result<Self, AlgebraError> {
        let Some(lead) = self.coeffs.iter().rev().find(|c| !c.is_zero()) else {
            return Ok(self.clone());
        };
        let div = K::canonical_divisor(&self.coeffs, lead)?;
        let inv = div.inv()?;
        Ok(self.scale(&inv))
    }

    /// Product of the distinct linear factors, monic in its finite part.
    pub fn radical(&self) -> Result<Self, AlgebraError> {
        let yv = self.y_valuation().min(1);
        let fin = self.dehomogenize().radical()?;
        let deg = fin.deg0() + yv;
        Ok(Self::homogenize(&fin, deg))
    }

    pub fn gcd(&self, o: &Self) -> Result<Self, AlgebraError> {
        let yv = self.y_valuation().min(o.y_valuation());
        let fin = self.dehomogenize().gcd(&o.dehomogenize())?;
        let deg = fin.deg0() + yv;
        Ok(Self::homogenize(&fin, deg))
    }

    pub fn divides(&self, o: &Self) -> Result<bool, AlgebraError> {
        if o.is_zero() {
            return Ok(true);
        }
        if self.degree > o.degree || self.y_valuation() > o.y_valuation() {
            return Ok(false);
        }
        self.dehomogenize().divides(&o.dehomogenize())
    }

    /// o / self for a divisor self of o.
    pub fn divide_into(&self, o: &Self) -> Result<Self, AlgebraError> {
        let q = o.dehomogenize().exact_div(&self.dehomogenize())?;
        Ok(Self::homogenize(&q, o.degree - self.degree))
    }

    /// Number of distinct linear factors over an algebraic closure.
    pub fn distinct_linear_factor_count(&self) -> Result<usize, AlgebraError> {
        Ok(usize::from(self.y_valuation() > 0) + self.dehomogenize().radical()?.deg0())
    }
}

impl BiForm<Rational> {
    /// Positive content, so that self / content is primitive integral.
    pub fn content(&self) -> Rational {
        rational_content(&self.coeffs)
    }

    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if num_traits::Zero::is_zero(&c) {
            return self.clone();
        }
        self.scale(&c.recip())
    }

    /// Integer coefficients; None if some coefficient is not integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl<K: Field> fmt::Display for BiForm<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree;
        let mono = |i: usize| {
            let part = |v: &str, e: usize| match e {
                0 => String::new(),
                1 => v.to_string(),
                _ => format!("{v}^{e}"),
            };
            let (a, b) = (part("x", i), part("y", d - i));
            match (a.is_empty(), b.is_empty()) {
                (true, _) => b,
                (_, true) => a,
                _ => format!("{a}*{b}"),
            }
        };
        f.write_str(&render_terms(
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .map(|(i, c)| (c, mono(i))),
            &self.ctx,
        ))
    }
}
