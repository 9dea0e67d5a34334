//! Exact-period points and marginal preperiodic points.

use super::error::{RatMapError, Result};
use super::fixed::{delta_form, split_roots, Locus};
use super::map::{ProjPoint, RationalMap};
use crate::classify::{lemma5_case, Lemma5Case};
use crate::exactnum::{generator, split_eval, BiForm, ExtContext, Field, UniPoly};

pub const DEFAULT_TOWER_BUDGET: usize = 24;

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Form whose roots (each simple) are exactly the points of exact period
/// `delta`: rad(N_delta) with the roots of every N_{delta/q} removed.
pub fn exact_period_form<K: Field>(phi: &RationalMap<K>, delta: usize) -> Result<BiForm<K>> {
    phi.require_dynamical()?;
    if delta == 0 {
        return Err(RatMapError::UnsupportedPeriod(0));
    }
    let mut r = delta_form(phi, delta)?.radical()?;
    for q in prime_divisors(delta) {
        let lower = delta_form(phi, delta / q)?;
        let g = r.gcd(&lower)?;
        r = g.divide_into(&r)?;
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactPeriod<K: Field> {
    pub exists: bool,
    /// rad(N_delta) / gcd(rad(N_delta), N_1): its roots have exact period delta.
    pub witness: BiForm<K>,
}

/// Existence of a point of exact period 2 or 3 over an algebraic closure.
/// Only prime periods are supported, where every root of N_delta that is
/// not fixed has exact period delta.
pub fn has_exact_period_point<K: Field>(
    phi: &RationalMap<K>,
    delta: usize,
) -> Result<ExactPeriod<K>> {
    if delta != 2 && delta != 3 {
        return Err(RatMapError::UnsupportedPeriod(delta));
    }
    let witness = exact_period_form(phi, delta)?;
    Ok(ExactPeriod {
        exists: witness.degree() > 0,
        witness,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub allow_tower_growth: bool,
    pub tower_budget: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            allow_tower_growth: true,
            tower_budget: DEFAULT_TOWER_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Marginal<K: Field> {
    /// alpha (or every root of the cluster polynomial) satisfies: phi(alpha)
    /// has exact period delta, phi(alpha) is finite, phi^delta(alpha) != alpha.
    Found(Locus<K>),
    NotFound(Lemma5Case),
}

/// Searches for alpha with phi(alpha) of exact period delta, phi(alpha)
/// finite and alpha not periodic. Candidates are tried in a fixed order:
/// points of K ascending, then infinity, then (if allowed) the remaining
/// conjugate cluster, validated by dynamic evaluation.
pub fn find_marginal_preperiodic<K: Field>(
    phi: &RationalMap<K>,
    delta: usize,
    opts: SearchOptions,
) -> Result<Marginal<K>> {
    let exact = exact_period_form(phi, delta)?;
    let e_fin = exact.dehomogenize();
    let candidates = if e_fin.is_constant() {
        None
    } else {
        let k = e_fin.deg0();
        let (f, g) = phi.forms();
        let pull = BiForm::homogenize(&e_fin, k).substitute(f, g)?;
        let rad = pull.radical()?;
        let common = rad.gcd(&exact)?;
        let c = common.divide_into(&rad)?;
        (c.degree() > 0).then_some(c)
    };
    let Some(c) = candidates else {
        return Ok(Marginal::NotFound(lemma5_case(phi, delta)?));
    };
    let (roots, rest) = split_roots(&c.dehomogenize().monic()?)?;
    if let Some(r) = roots.into_iter().next() {
        return Ok(Marginal::Found(Locus::Point(r)));
    }
    if c.y_valuation() > 0 {
        return Ok(Marginal::Found(Locus::Infinity));
    }
    let rest = rest.ok_or_else(|| RatMapError::Internal("empty candidate set".into()))?;
    if !opts.allow_tower_growth {
        return Err(RatMapError::UnrepresentableRoot(rest.to_string()));
    }
    if rest.deg0() > opts.tower_budget {
        return Err(RatMapError::TowerBudgetExceeded {
            needed: rest.deg0(),
            budget: opts.tower_budget,
        });
    }
    verify_cluster(phi, delta, &rest, &e_fin)?;
    Ok(Marginal::Found(Locus::Conjugates(rest)))
}

/// Re-checks the defining properties at a generic root of `h` in K[a]/(h),
/// on every branch dynamic evaluation produces.
fn verify_cluster<K: Field>(
    phi: &RationalMap<K>,
    delta: usize,
    h: &UniPoly<K>,
    e_fin: &UniPoly<K>,
) -> Result<()> {
    let ctx = ExtContext::new("a", h.clone())?;
    let mut failure = None;
    split_eval(&ctx, h.deg0().max(1), |k| {
        let lifted = phi.lift_to(k).map_err(into_algebra)?;
        let e = UniPoly::new(
            k.clone(),
            e_fin
                .coeffs()
                .iter()
                .map(|c| crate::exactnum::lift(k, c.clone()))
                .collect(),
        );
        let alpha = ProjPoint::Finite(generator(k));
        let image = lifted.evaluate(&alpha).map_err(into_algebra)?;
        let Some(beta) = image.finite() else {
            failure = Some("image is infinite");
            return Ok(());
        };
        if !e.eval(beta).is_zero() {
            failure = Some("image lacks exact period");
            return Ok(());
        }
        let mut z = alpha.clone();
        for _ in 0..delta {
            z = lifted.evaluate(&z).map_err(into_algebra)?;
        }
        match z {
            ProjPoint::Finite(z) => {
                // must be nonzero on every branch: invert it
                z.sub(&generator(k)).inv()?;
            }
            ProjPoint::Infinity => {}
        }
        Ok(())
    })?;
    match failure {
        Some(msg) => Err(RatMapError::Internal(format!(
            "cluster {h} failed verification: {msg}"
        ))),
        None => Ok(()),
    }
}

fn into_algebra(e: RatMapError) -> crate::exactnum::AlgebraError {
    match e {
        RatMapError::Algebra(a) => a,
        other => panic!("unexpected error during dynamic evaluation: {other}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, Rational};

    fn map(f: &[i64], g: &[i64]) -> RationalMap<Rational> {
        RationalMap::from_polys(UniPoly::from_ints(&(), f), UniPoly::from_ints(&(), g)).unwrap()
    }

    #[test]
    fn exact_period_two() {
        let sq = map(&[0, 0, 1], &[1]);
        let w = has_exact_period_point(&sq, 2).unwrap();
        assert!(w.exists);
        assert_eq!(w.witness.dehomogenize().to_string(), "t^2 + t + 1");
        let inv_sq = map(&[1], &[0, 0, 1]);
        let w = has_exact_period_point(&inv_sq, 2).unwrap();
        assert!(w.exists);
        assert_eq!(w.witness.to_string(), "x*y");
        let kisaka = map(&[0, -1, 1], &[1, 1]);
        assert!(!has_exact_period_point(&kisaka, 2).unwrap().exists);
        assert!(matches!(
            has_exact_period_point(&sq, 4),
            Err(RatMapError::UnsupportedPeriod(4))
        ));
    }

    #[test]
    fn marginal_points() {
        let opts = SearchOptions::default();
        let fermat = map(&[2, -2, 1], &[1]);
        assert_eq!(
            find_marginal_preperiodic(&fermat, 1, opts).unwrap(),
            Marginal::Found(Locus::Point(int(0)))
        );
        let sq = map(&[0, 0, 1], &[1]);
        assert_eq!(
            find_marginal_preperiodic(&sq, 1, opts).unwrap(),
            Marginal::Found(Locus::Point(int(-1)))
        );
        let cex = map(&[0, 0, 1], &[1, 2]);
        assert_eq!(
            find_marginal_preperiodic(&cex, 1, opts).unwrap(),
            Marginal::NotFound(Lemma5Case::E)
        );
    }

    #[test]
    fn marginal_point_needs_extension() {
        // t^2 + 1, delta = 1: phi(alpha) must be a root of t^2 - t + 1
        let phi = map(&[1, 0, 1], &[1]);
        let strict = SearchOptions {
            allow_tower_growth: false,
            ..Default::default()
        };
        assert!(matches!(
            find_marginal_preperiodic(&phi, 1, strict),
            Err(RatMapError::UnrepresentableRoot(_))
        ));
        let found = find_marginal_preperiodic(&phi, 1, SearchOptions::default()).unwrap();
        match found {
            Marginal::Found(Locus::Conjugates(h)) => assert_eq!(h.to_string(), "t^2 + t + 1"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
