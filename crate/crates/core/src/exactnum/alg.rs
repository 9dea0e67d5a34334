//! Simple extensions K[θ]/(m) with dynamic evaluation: the modulus need
//! not be irreducible, and a failed inversion splits it instead of failing.

use std::fmt;
use std::sync::Arc;

use super::error::{AlgebraError, SplitInfo};
use super::field::{Field, Rational};
use super::poly::UniPoly;

#[derive(Debug, PartialEq)]
pub struct ExtContext<K: Field> {
    name: String,
    modulus: UniPoly<K>,
}

/// Payload of a split: `ctx.modulus = left * right`, both nonconstant and monic.
#[derive(Debug, Clone)]
pub struct SplitFactors<K: Field> {
    pub ctx: Arc<ExtContext<K>>,
    pub left: UniPoly<K>,
    pub right: UniPoly<K>,
}

impl<K: Field> ExtContext<K> {
    /// Extension by a root `name` of `modulus` (made monic; degree at least 1).
    pub fn new(name: &str, modulus: UniPoly<K>) -> Result<Arc<Self>, AlgebraError> {
        if modulus.degree().unwrap_or(0) == 0 {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Arc::new(ExtContext {
            name: name.to_string(),
            modulus: modulus.monic()?,
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn modulus(&self) -> &UniPoly<K> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg0()
    }

    pub fn base_ctx(&self) -> &K::Ctx {
        self.modulus.ctx()
    }
}

pub fn generator<K: Field>(ctx: &Arc<ExtContext<K>>) -> AlgElem<K> {
    AlgElem::from_poly(ctx, UniPoly::var(ctx.base_ctx()))
}

pub fn lift<K: Field>(ctx: &Arc<ExtContext<K>>, c: K) -> AlgElem<K> {
    AlgElem::from_poly(ctx, UniPoly::constant(c))
}

/// Element of K[θ]/(m), stored as its reduced representative.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgElem<K: Field = Rational> {
    ctx: Arc<ExtContext<K>>,
    coords: UniPoly<K>,
}

impl<K: Field> AlgElem<K> {
    pub fn from_poly(ctx: &Arc<ExtContext<K>>, p: UniPoly<K>) -> Self {
        let coords = p.rem(&ctx.modulus).expect("monic modulus");
        AlgElem {
            ctx: ctx.clone(),
            coords,
        }
    }

    pub fn coords(&self) -> &UniPoly<K> {
        &self.coords
    }

    /// Image in a child context whose modulus divides ours.
    pub fn reduce_into(&self, child: &Arc<ExtContext<K>>) -> Self {
        Self::from_poly(child, self.coords.clone())
    }

    /// The base-field value when the element has no θ component.
    pub fn to_base(&self) -> Option<K> {
        self.coords.is_constant().then(|| self.coords.coeff(0))
    }
}

impl<K: Field> fmt::Display for AlgElem<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.coords.render(&self.ctx.name))
    }
}

impl<K: Field> Field for AlgElem<K> {
    type Ctx = Arc<ExtContext<K>>;

    fn context(&self) -> Self::Ctx {
        self.ctx.clone()
    }
    fn zero(ctx: &Self::Ctx) -> Self {
        AlgElem {
            ctx: ctx.clone(),
            coords: UniPoly::zero(ctx.base_ctx()),
        }
    }
    fn one(ctx: &Self::Ctx) -> Self {
        AlgElem {
            ctx: ctx.clone(),
            coords: UniPoly::one(ctx.base_ctx()),
        }
    }
    fn from_rational(ctx: &Self::Ctx, q: &Rational) -> Self {
        lift(ctx, K::from_rational(ctx.base_ctx(), q))
    }
    fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        AlgElem {
            ctx: self.ctx.clone(),
            coords: self.coords.add(&o.coords),
        }
    }
    fn sub(&self, o: &Self) -> Self {
        AlgElem {
            ctx: self.ctx.clone(),
            coords: self.coords.sub(&o.coords),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        Self::from_poly(&self.ctx, self.coords.mul(&o.coords))
    }
    fn neg(&self) -> Self {
        AlgElem {
            ctx: self.ctx.clone(),
            coords: self.coords.neg(),
        }
    }

    fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroInversion);
        }
        let (g, s) = self.coords.gcd_inverse(&self.ctx.modulus)?;
        if g.is_constant() {
            return Ok(Self::from_poly(&self.ctx, s));
        }
        let right = self.ctx.modulus.exact_div(&g)?;
        let name = &self.ctx.name;
        Err(AlgebraError::SplitRequired(SplitInfo {
            generator: name.clone(),
            left: g.render(name),
            right: right.render(name),
            factors: Arc::new(SplitFactors {
                ctx: self.ctx.clone(),
                left: g,
                right,
            }),
        }))
    }

    fn to_rational(&self) -> Option<Rational> {
        self.to_base()?.to_rational()
    }

    fn is_atomic(&self) -> bool {
        match self.coords.degree() {
            None => true,
            Some(0) => self.coords.coeff(0).is_atomic(),
            Some(1) => self.coords.coeff(0).is_zero() && self.coords.coeff(1).is_one(),
            _ => false,
        }
    }

    /// Roots lying in K (common roots of all θ-components), plus the root of
    /// a linear polynomial.
    fn base_roots(p: &UniPoly<Self>) -> Result<Vec<Self>, AlgebraError> {
        let ctx = p.ctx().clone();
        let mut out = Vec::new();
        if p.degree() == Some(1) {
            out.push(p.coeff(0).neg().div(&p.coeff(1))?);
        }
        let mut g: Option<UniPoly<K>> = None;
        for j in 0..ctx.degree() {
            let comp = UniPoly::new(
                ctx.base_ctx().clone(),
                p.coeffs().iter().map(|c| c.coords.coeff(j)).collect(),
            );
            if comp.is_zero() {
                continue;
            }
            g = Some(match g {
                None => comp,
                Some(h) => h.gcd(&comp)?,
            });
        }
        if let Some(g) = g {
            for r in K::base_roots(&g)? {
                let r = lift(&ctx, r);
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
        Ok(out)
    }

    fn nth_root(&self, k: u32) -> Option<Self> {
        if k == 1 {
            return Some(self.clone());
        }
        Some(lift(&self.ctx, self.to_base()?.nth_root(k)?))
    }
}

/// One result per leaf context of a dynamic evaluation.
pub type Branches<K, T> = Vec<(Arc<ExtContext<K>>, T)>;

/// Runs `f` in `ctx`; whenever `f` reports a split of this very context,
/// reruns it in both child contexts. Returns one result per leaf, in a
/// deterministic left-first order.
pub fn split_eval<K: Field, T>(
    ctx: &Arc<ExtContext<K>>,
    max_branches: usize,
    mut f: impl FnMut(&Arc<ExtContext<K>>) -> Result<T, AlgebraError>,
) -> Result<Branches<K, T>, AlgebraError> {
    let mut stack = vec![ctx.clone()];
    let mut out = Vec::new();
    let mut leaves = 1usize;
    while let Some(c) = stack.pop() {
        match f(&c) {
            Ok(v) => out.push((c, v)),
            Err(AlgebraError::SplitRequired(info)) => {
                let Some(sf) = info.factors::<SplitFactors<K>>() else {
                    return Err(AlgebraError::SplitRequired(info));
                };
                if sf.ctx != c {
                    return Err(AlgebraError::SplitRequired(info));
                }
                leaves += 1;
                if leaves > max_branches {
                    return Err(AlgebraError::BranchBudget(max_branches));
                }
                stack.push(ExtContext::new(c.name(), sf.right.clone())?);
                stack.push(ExtContext::new(c.name(), sf.left.clone())?);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(v: &[i64]) -> Arc<ExtContext<Rational>> {
        ExtContext::new("θ", UniPoly::from_ints(&(), v)).unwrap()
    }

    #[test]
    fn inverse_mod_sum_of_squares() {
        let c = ctx(&[1, 0, 1]);
        let th = generator(&c);
        assert_eq!(th.inv().unwrap(), th.neg());
    }

    #[test]
    fn inverse_mod_cyclotomic() {
        let c = ctx(&[1, 1, 1]);
        let th = generator(&c);
        let expect = AlgElem::from_poly(&c, UniPoly::from_ints(&(), &[-1, -1]));
        assert_eq!(th.inv().unwrap(), expect);
        assert!(th.mul(&expect).is_one());
    }

    #[test]
    fn reducible_modulus_splits() {
        let c = ctx(&[-1, 0, 1]);
        let e = generator(&c).sub(&AlgElem::one(&c));
        match e.inv() {
            Err(AlgebraError::SplitRequired(info)) => {
                let sf = info.factors::<SplitFactors<Rational>>().unwrap();
                assert_eq!(sf.left, UniPoly::from_ints(&(), &[-1, 1]));
                assert_eq!(sf.right, UniPoly::from_ints(&(), &[1, 1]));
                assert_eq!(info.left, "θ - 1");
            }
            other => panic!("expected split, got {other:?}"),
        }
    }

    #[test]
    fn split_eval_visits_both_branches() {
        let c = ctx(&[-1, 0, 1]);
        let res = split_eval(&c, 8, |k| {
            let e = generator(k).sub(&AlgElem::one(k));
            Ok(e.inv().map(|_| "unit").unwrap_or_else(|_| "zero-divisor"))
        })
        .unwrap();
        // θ - 1 becomes 0 in the θ - 1 branch: inv reports ZeroInversion there
        assert_eq!(res.len(), 1);
        let res = split_eval(&c, 8, |k| {
            generator(k)
                .sub(&AlgElem::one(k))
                .inv()
                .map(|x| x.to_string())
        });
        let err = res.unwrap_err();
        assert!(matches!(err, AlgebraError::ZeroInversion));
        let res = split_eval(&c, 8, |k| {
            let e = generator(k).sub(&AlgElem::one(k));
            if e.is_zero() {
                return Ok("vanishes".to_string());
            }
            e.inv().map(|x| x.to_string())
        })
        .unwrap();
        let moduli: Vec<String> = res.iter().map(|(k, _)| k.modulus().render("θ")).collect();
        assert_eq!(moduli, vec!["θ - 1", "θ + 1"]);
        assert_eq!(res[0].1, "vanishes");
        assert_eq!(res[1].1, "-1/2");
    }

    #[test]
    fn nested_tower_arithmetic() {
        // Q(√2)(√3): (√2 + √3) inverse = √3 - √2
        let c2 = ctx(&[-2, 0, 1]);
        let s2 = generator(&c2);
        let m = UniPoly::new(
            c2.clone(),
            vec![
                AlgElem::from_rational(&c2, &crate::exactnum::field::int(-3)),
                AlgElem::zero(&c2),
                AlgElem::one(&c2),
            ],
        );
        let c3 = ExtContext::new("u", m).unwrap();
        let s3 = generator(&c3);
        let x = lift(&c3, s2.clone()).add(&s3);
        let y = x.inv().unwrap();
        assert_eq!(y, s3.sub(&lift(&c3, s2)));
    }
}
