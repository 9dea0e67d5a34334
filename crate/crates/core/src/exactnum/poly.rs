use std::fmt;

use super::error::AlgebraError;
use super::field::Field;

/// Dense univariate polynomial, coefficients lowest degree first.
///
/// The zero polynomial has no coefficients and `degree() == None`.
#[derive(Clone, PartialEq, Debug)]
pub struct UniPoly<K: Field> {
    ctx: K::Ctx,
    coeffs: Vec<K>,
}

impl<K: Field> UniPoly<K> {
    pub fn new(ctx: K::Ctx, mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { ctx, coeffs }
    }

    pub fn zero(ctx: &K::Ctx) -> Self {
        UniPoly {
            ctx: ctx.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(ctx: &K::Ctx) -> Self {
        Self::constant(K::one(ctx))
    }

    pub fn constant(c: K) -> Self {
        Self::new(c.context(), vec![c])
    }

    /// The indeterminate t.
    pub fn var(ctx: &K::Ctx) -> Self {
        Self::new(ctx.clone(), vec![K::zero(ctx), K::one(ctx)])
    }

    /// c * t^k
    pub fn monomial(c: K, k: usize) -> Self {
        let ctx = c.context();
        let mut v = vec![K::zero(&ctx); k];
        v.push(c);
        Self::new(ctx, v)
    }

    pub fn from_ints(ctx: &K::Ctx, v: &[i64]) -> Self {
        Self::new(
            ctx.clone(),
            v.iter().map(|&c| K::from_int(ctx, c)).collect(),
        )
    }

    pub fn ctx(&self) -> &K::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<K> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> K {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| K::zero(&self.ctx))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0; for bookkeeping only.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> K {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| K::zero(&self.ctx))
    }

    /// Largest k with t^k dividing self (0 for the zero polynomial).
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(
            self.ctx.clone(),
            (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(
            self.ctx.clone(),
            (0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(
            self.ctx.clone(),
            self.coeffs.iter().map(|c| c.neg()).collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.ctx);
        }
        let mut out = vec![K::zero(&self.ctx); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(self.ctx.clone(), out)
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::new(
            self.ctx.clone(),
            self.coeffs.iter().map(|a| a.mul(c)).collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiply by t^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![K::zero(&self.ctx); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(self.ctx.clone(), v)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.ctx.clone(),
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&K::from_int(&self.ctx, i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &K) -> K {
        self.coeffs
            .iter()
            .rev()
            .fold(K::zero(&self.ctx), |acc, c| acc.mul(x).add(c))
    }

    /// self(q(t))
    pub fn compose(&self, q: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(&self.ctx), |acc, c| {
                acc.mul(q).add(&Self::constant(c.clone()))
            })
    }

    pub fn div_rem(&self, b: &Self) -> Result<(Self, Self), AlgebraError> {
        let db = b.degree().ok_or(AlgebraError::DivisionByZero)?;
        let inv = b.lead().inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Self::zero(&self.ctx), self.clone()));
        }
        let mut q = vec![K::zero(&self.ctx); r.len() - db];
        while r.len() > db {
            let c = r.last().unwrap().mul(&inv);
            let shift = r.len() - 1 - db;
            for (i, bi) in b.coeffs.iter().enumerate() {
                r[i + shift] = r[i + shift].sub(&c.mul(bi));
            }
            q[shift] = c;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        Ok((
            Self::new(self.ctx.clone(), q),
            Self::new(self.ctx.clone(), r),
        ))
    }

    pub fn rem(&self, b: &Self) -> Result<Self, AlgebraError> {
        Ok(self.div_rem(b)?.1)
    }

    /// Quotient of an exact division; errors are propagated, a nonzero
    /// remainder is a logic error of the caller.
    pub fn exact_div(&self, b: &Self) -> Result<Self, AlgebraError> {
        let (q, r) = self.div_rem(b)?;
        debug_assert!(r.is_zero(), "inexact division");
        Ok(q)
    }

    pub fn divides(&self, b: &Self) -> Result<bool, AlgebraError> {
        Ok(b.rem(self)?.is_zero())
    }

    pub fn monic(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let inv = self.lead().inv()?;
        Ok(self.scale(&inv))
    }

    pub fn gcd(&self, o: &Self) -> Result<Self, AlgebraError> {
        K::poly_gcd(self, o)
    }

    pub fn resultant(&self, o: &Self) -> Result<K, AlgebraError> {
        K::poly_resultant(self, o)
    }

    /// Monic squarefree part p / gcd(p, p').
    pub fn radical(&self) -> Result<Self, AlgebraError> {
        if self.is_constant() {
            return Self::one(&self.ctx).monic();
        }
        let g = self.gcd(&self.derivative())?;
        self.exact_div(&g)?.monic()
    }

    /// True iff every irreducible factor of self divides b.
    pub fn radical_divides(&self, b: &Self) -> Result<bool, AlgebraError> {
        self.radical()?.divides(b)
    }

    /// Yun's algorithm: monic squarefree, pairwise coprime a_1, a_2, ...
    /// with self = lc * prod a_i^i. Entry i-1 of the result is a_i.
    pub fn squarefree_decomposition(&self) -> Result<Vec<Self>, AlgebraError> {
        let mut out = Vec::new();
        if self.is_constant() {
            return Ok(out);
        }
        let f = self.monic()?;
        let df = f.derivative();
        let a0 = f.gcd(&df)?;
        let mut b = f.exact_div(&a0)?;
        let mut c = df.exact_div(&a0)?;
        let mut d = c.sub(&b.derivative());
        loop {
            let a = b.gcd(&d)?;
            out.push(a.clone());
            b = b.exact_div(&a)?;
            if b.is_constant() {
                break;
            }
            c = d.exact_div(&a)?;
            d = c.sub(&b.derivative());
        }
        while out.last().is_some_and(|a| a.is_constant()) {
            out.pop();
        }
        Ok(out)
    }

    /// Extended Euclid: (g, s) with s*self = g (mod m), g the monic gcd.
    pub fn gcd_inverse(&self, m: &Self) -> Result<(Self, Self), AlgebraError> {
        let (mut r0, mut r1) = (m.clone(), self.rem(m)?);
        let (mut s0, mut s1) = (Self::zero(&self.ctx), Self::one(&self.ctx));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.is_zero() {
            return Ok((r0, s0));
        }
        let inv = r0.lead().inv()?;
        Ok((r0.scale(&inv), s0.scale(&inv)))
    }

    /// Render with a chosen variable name.
    pub fn render(&self, var: &str) -> String {
        render_terms(
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .map(|(i, c)| (c, mono(var, i))),
            &self.ctx,
        )
    }
}

fn mono(var: &str, i: usize) -> String {
    match i {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{i}"),
    }
}

/// Shared renderer for `c1*m1 + c2*m2 ...`, skipping zero coefficients.
pub(crate) fn render_terms<'a, K: Field, I>(terms: I, ctx: &K::Ctx) -> String
where
    I: Iterator<Item = (&'a K, String)>,
{
    let mut out = String::new();
    for (c, m) in terms {
        if c.is_zero() {
            continue;
        }
        let (neg, body) = if c.is_atomic() {
            let s = c.to_string();
            match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            }
        } else {
            (false, format!("({c})"))
        };
        let term = if m.is_empty() {
            body
        } else if body == "1" {
            m
        } else {
            format!("{body}*{m}")
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        K::zero(ctx).to_string()
    } else {
        out
    }
}

impl<K: Field> fmt::Display for UniPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

pub(crate) fn euclid_gcd<K: Field>(
    a: &UniPoly<K>,
    b: &UniPoly<K>,
) -> Result<UniPoly<K>, AlgebraError> {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.rem(&y)?;
        x = y;
        y = r;
    }
    x.monic()
}

pub(crate) fn euclid_resultant<K: Field>(
    a: &UniPoly<K>,
    b: &UniPoly<K>,
) -> Result<K, AlgebraError> {
    let ctx = a.ctx().clone();
    let (Some(m), Some(n)) = (a.degree(), b.degree()) else {
        return Ok(K::zero(&ctx));
    };
    if n == 0 {
        return Ok(b.lead().pow(m as u64));
    }
    if m == 0 {
        return Ok(a.lead().pow(n as u64));
    }
    // Res(a,b) = (-1)^(mn) Res(b,a); Res(b,a) = lc(b)^(m - deg r) Res(b, r), r = a mod b
    let r = a.rem(b)?;
    let Some(k) = r.degree() else {
        return Ok(K::zero(&ctx));
    };
    let inner = euclid_resultant(b, &r)?;
    let mut out = b.lead().pow((m - k) as u64).mul(&inner);
    if (m * n) % 2 == 1 {
        out = out.neg();
    }
    Ok(out)
}
