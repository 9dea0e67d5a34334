//! Fixed points, multipliers, ramification and critical points.

use std::fmt;

use super::error::{RatMapError, Result};
use super::map::{ProjPoint, RationalMap};
use crate::exactnum::{BiForm, Field, UniPoly};

/// Where a root of a form lies: infinity, a point of K, or the full set of
/// roots of a monic squarefree polynomial without roots in K.
#[derive(Clone, Debug, PartialEq)]
pub enum Locus<K: Field> {
    Infinity,
    Point(K),
    Conjugates(UniPoly<K>),
}

impl<K: Field> Locus<K> {
    /// Number of geometric points represented.
    pub fn size(&self) -> usize {
        match self {
            Locus::Conjugates(p) => p.deg0(),
            _ => 1,
        }
    }

    pub fn as_point(&self) -> Option<ProjPoint<K>> {
        match self {
            Locus::Infinity => Some(ProjPoint::Infinity),
            Locus::Point(x) => Some(ProjPoint::Finite(x.clone())),
            Locus::Conjugates(_) => None,
        }
    }
}

impl<K: Field> fmt::Display for Locus<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Locus::Infinity => f.write_str("inf"),
            Locus::Point(x) => write!(f, "{x}"),
            Locus::Conjugates(p) => write!(f, "roots of {p}"),
        }
    }
}

/// Multiplier of a fixed point; for conjugate clusters, the residue class
/// of the multiplier modulo the cluster polynomial.
#[derive(Clone, Debug, PartialEq)]
pub enum Multiplier<K: Field> {
    Exact(K),
    Residue {
        modulus: UniPoly<K>,
        value: UniPoly<K>,
    },
}

impl<K: Field> Multiplier<K> {
    pub fn is_one(&self) -> bool {
        match self {
            Multiplier::Exact(x) => x.is_one(),
            Multiplier::Residue { value, .. } => value.degree() == Some(0) && value.lead().is_one(),
        }
    }
}

impl<K: Field> fmt::Display for Multiplier<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplier::Exact(x) => write!(f, "{x}"),
            Multiplier::Residue { modulus, value } => write!(f, "{value} mod {modulus}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointRecord<K: Field> {
    pub locus: Locus<K>,
    pub multiplicity: usize,
    pub multiplier: Multiplier<K>,
    pub totally_ramified: bool,
}

/// N_delta: canonical form of y F_delta - x G_delta, degree d^delta + 1.
pub fn delta_form<K: Field>(phi: &RationalMap<K>, delta: usize) -> Result<BiForm<K>> {
    let fp = phi.iterate_forms(delta)?;
    let ctx = phi.ctx();
    let n = BiForm::y(ctx).mul(&fp.f).sub(&BiForm::x(ctx).mul(&fp.g))?;
    Ok(n.canonical()?)
}

/// Splits a squarefree monic polynomial into roots in K (ordered) and the
/// remaining cofactor (None when constant).
pub(crate) fn split_roots<K: Field>(p: &UniPoly<K>) -> Result<(Vec<K>, Option<UniPoly<K>>)> {
    let mut roots = K::base_roots(p)?;
    roots.sort_by(|a, b| a.total_cmp(b));
    let mut rest = p.clone();
    for r in &roots {
        let lin = UniPoly::new(p.ctx().clone(), vec![r.neg(), K::one(p.ctx())]);
        rest = rest.exact_div(&lin)?;
    }
    let rest = if rest.is_constant() {
        None
    } else {
        Some(rest.monic()?)
    };
    Ok((roots, rest))
}

/// Loci of a squarefree monic polynomial.
pub(crate) fn loci_of<K: Field>(p: &UniPoly<K>) -> Result<Vec<Locus<K>>> {
    let (roots, rest) = split_roots(p)?;
    let mut out: Vec<Locus<K>> = roots.into_iter().map(Locus::Point).collect();
    out.extend(rest.map(Locus::Conjugates));
    Ok(out)
}

/// Distinct roots of a nonzero form with multiplicities, infinity first.
pub fn root_loci<K: Field>(form: &BiForm<K>) -> Result<Vec<(Locus<K>, usize)>> {
    let mut out = Vec::new();
    let yv = form.y_valuation();
    if yv > 0 {
        out.push((Locus::Infinity, yv));
    }
    for (i, a) in form
        .dehomogenize()
        .squarefree_decomposition()?
        .iter()
        .enumerate()
    {
        if a.is_constant() {
            continue;
        }
        for l in loci_of(a)? {
            out.push((l, i + 1));
        }
    }
    Ok(out)
}

type Pieces<K> = (Option<UniPoly<K>>, Option<UniPoly<K>>);

/// Split `p` into (gcd(p, q), p / gcd), dropping constant pieces.
fn refine<K: Field>(p: &UniPoly<K>, q: &UniPoly<K>) -> Result<Pieces<K>> {
    let g = p.gcd(q)?;
    let rest = p.exact_div(&g)?.monic()?;
    let keep = |x: UniPoly<K>| if x.is_constant() { None } else { Some(x) };
    Ok((keep(g), keep(rest)))
}

/// Product of finite totally ramified points: roots of the Wronskian with
/// multiplicity d - 1.
fn finite_total_ramification<K: Field>(phi: &RationalMap<K>) -> Result<UniPoly<K>> {
    let d = phi.degree();
    let sq = phi.wronskian().squarefree_decomposition()?;
    Ok(sq
        .get(d - 2)
        .cloned()
        .unwrap_or_else(|| UniPoly::one(phi.ctx())))
}

/// Ramification index minus one at infinity, read off the chart t -> 1/t.
fn infinity_critical_order<K: Field>(phi: &RationalMap<K>) -> Result<usize> {
    Ok(phi.chart_at_infinity()?.wronskian().valuation())
}

pub fn multiplier<K: Field>(phi: &RationalMap<K>, p: &ProjPoint<K>) -> Result<K> {
    if phi.evaluate(p)? != *p {
        return Err(RatMapError::NotFixed);
    }
    match p {
        ProjPoint::Finite(x) => {
            let g = phi.denominator().eval(x);
            Ok(phi.wronskian().eval(x).div(&g.mul(&g))?)
        }
        ProjPoint::Infinity => {
            let psi = phi.chart_at_infinity()?;
            multiplier(&psi, &ProjPoint::Finite(K::zero(phi.ctx())))
        }
    }
}

pub fn fixed_points<K: Field>(phi: &RationalMap<K>) -> Result<Vec<FixedPointRecord<K>>> {
    phi.require_dynamical()?;
    let d = phi.degree();
    let ctx = phi.ctx();
    let n1 = delta_form(phi, 1)?;
    let mut out = Vec::new();

    let y_mult = n1.y_valuation();
    let psi = phi.chart_at_infinity()?;
    let chart_mult = psi
        .level_numerator(&K::zero(ctx))
        .sub(&psi.denominator().shift(1))
        .valuation();
    if y_mult != chart_mult {
        return Err(RatMapError::Internal(format!(
            "multiplicity at infinity: y-power {y_mult}, chart {chart_mult}"
        )));
    }
    if y_mult > 0 {
        out.push(FixedPointRecord {
            locus: Locus::Infinity,
            multiplicity: y_mult,
            multiplier: Multiplier::Exact(multiplier(phi, &ProjPoint::Infinity)?),
            totally_ramified: infinity_critical_order(phi)? == d - 1,
        });
    }

    let w = phi.wronskian();
    let g = phi.denominator();
    let g2 = g.mul(g);
    let parabolic = w.sub(&g2);
    let ramified = finite_total_ramification(phi)?;
    for (i, a) in n1
        .dehomogenize()
        .squarefree_decomposition()?
        .iter()
        .enumerate()
    {
        if a.is_constant() {
            continue;
        }
        let (para, rest) = refine(a, &parabolic)?;
        for piece in [para, rest].into_iter().flatten() {
            let (tr, ntr) = refine(&piece, &ramified)?;
            for (cluster, is_tr) in [(tr, true), (ntr, false)] {
                let Some(cluster) = cluster else { continue };
                for locus in loci_of(&cluster)? {
                    let multiplier = match &locus {
                        Locus::Point(x) => {
                            Multiplier::Exact(multiplier(phi, &ProjPoint::Finite(x.clone()))?)
                        }
                        Locus::Conjugates(m) => {
                            let (unit, inv) = g2.gcd_inverse(m)?;
                            if !unit.is_constant() {
                                return Err(RatMapError::Internal("fixed point at a pole".into()));
                            }
                            Multiplier::Residue {
                                modulus: m.clone(),
                                value: w.mul(&inv).rem(m)?,
                            }
                        }
                        Locus::Infinity => unreachable!("finite part"),
                    };
                    out.push(FixedPointRecord {
                        locus,
                        multiplicity: i + 1,
                        multiplier,
                        totally_ramified: is_tr,
                    });
                }
            }
        }
    }
    let total: usize = out.iter().map(|r| r.multiplicity * r.locus.size()).sum();
    if total != d + 1 {
        return Err(RatMapError::Internal(format!(
            "fixed point count {total} != d + 1 = {}",
            d + 1
        )));
    }
    Ok(out)
}

/// Points P whose fibre over phi(P) is {P}; at most two.
pub fn totally_ramified_points<K: Field>(phi: &RationalMap<K>) -> Result<Vec<Locus<K>>> {
    phi.require_dynamical()?;
    let mut out = Vec::new();
    let r = finite_total_ramification(phi)?;
    if !r.is_constant() {
        out.extend(loci_of(&r)?);
    }
    if infinity_critical_order(phi)? == phi.degree() - 1 {
        out.push(Locus::Infinity);
    }
    Ok(out)
}

/// Critical points with multiplicity: deg(f'g - fg') plus the order at
/// infinity. Always 2d - 2; a mismatch is reported as an internal error.
pub fn critical_point_count<K: Field>(phi: &RationalMap<K>) -> Result<usize> {
    phi.require_dynamical()?;
    let finite = phi.wronskian().deg0();
    let count = finite + infinity_critical_order(phi)?;
    if count != 2 * phi.degree() - 2 {
        return Err(RatMapError::Internal(format!(
            "critical count {count} != 2d - 2"
        )));
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, Rational};

    fn map(f: &[i64], g: &[i64]) -> RationalMap<Rational> {
        RationalMap::from_polys(UniPoly::from_ints(&(), f), UniPoly::from_ints(&(), g)).unwrap()
    }

    fn census(phi: &RationalMap<Rational>) -> Vec<(String, usize, String, bool)> {
        fixed_points(phi)
            .unwrap()
            .into_iter()
            .map(|r| {
                (
                    r.locus.to_string(),
                    r.multiplicity,
                    r.multiplier.to_string(),
                    r.totally_ramified,
                )
            })
            .collect()
    }

    #[test]
    fn square_map_census() {
        let mut c = census(&map(&[0, 0, 1], &[1]));
        c.sort();
        assert_eq!(
            c,
            vec![
                ("0".into(), 1, "0".into(), true),
                ("1".into(), 1, "2".into(), false),
                ("inf".into(), 1, "0".into(), true)
            ]
        );
    }

    #[test]
    fn parabolic_infinity() {
        let c = census(&map(&[0, 0, 1], &[1, 1]));
        assert_eq!(
            c,
            vec![
                ("inf".into(), 2, "1".into(), false),
                ("0".into(), 1, "0".into(), true)
            ]
        );
    }

    #[test]
    fn three_simple_fixed_points() {
        let c = census(&map(&[0, 0, 1], &[1, 2]));
        let pts: Vec<_> = c.iter().map(|r| (r.0.as_str(), r.1)).collect();
        assert_eq!(pts, vec![("inf", 1), ("-1", 1), ("0", 1)]);
    }

    #[test]
    fn conjugate_cluster_multiplier() {
        // t^2 + 1: fixed points are the roots of t^2 - t + 1, lambda = 2t
        let c = fixed_points(&map(&[1, 0, 1], &[1])).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[1].locus.to_string(), "roots of t^2 - t + 1");
        assert_eq!(c[1].multiplier.to_string(), "2*t mod t^2 - t + 1");
    }

    #[test]
    fn multipliers() {
        let sq = map(&[0, 0, 1], &[1]);
        assert_eq!(multiplier(&sq, &ProjPoint::Finite(int(0))).unwrap(), int(0));
        assert_eq!(multiplier(&sq, &ProjPoint::Infinity).unwrap(), int(0));
        assert_eq!(
            multiplier(&map(&[0, 0, 1], &[1, 1]), &ProjPoint::Infinity).unwrap(),
            int(1)
        );
        assert!(matches!(
            multiplier(&sq, &ProjPoint::Finite(int(2))),
            Err(RatMapError::NotFixed)
        ));
    }

    #[test]
    fn ramification() {
        let show = |phi: &RationalMap<Rational>| {
            let mut v: Vec<String> = totally_ramified_points(phi)
                .unwrap()
                .iter()
                .map(|l| l.to_string())
                .collect();
            v.sort();
            v
        };
        assert_eq!(show(&map(&[0, 0, 0, 1], &[1])), vec!["0", "inf"]);
        assert_eq!(show(&map(&[0, 0, 1], &[1, 2])), vec!["-1", "0"]);
        assert_eq!(show(&map(&[2, -2, 1], &[1])), vec!["1", "inf"]);
        assert_eq!(critical_point_count(&map(&[0, 0, 1], &[1, 2])).unwrap(), 2);
        assert_eq!(critical_point_count(&map(&[0, 0, 1], &[1])).unwrap(), 2);
    }

    #[test]
    fn delta_forms() {
        // 1/t^2: y^3 - x^3 up to sign and content
        let inv_sq = map(&[1], &[0, 0, 1]);
        let n1 = delta_form(&inv_sq, 1).unwrap();
        assert_eq!(n1.to_string(), "x^3 - y^3");
        let n2 = delta_form(&inv_sq, 2).unwrap();
        assert_eq!(n2.degree(), 5);
        assert_eq!(n2.to_string(), "x^4*y - x*y^4");
        assert_eq!(
            delta_form(&map(&[1, 0, 1], &[1]), 1).unwrap().y_valuation(),
            1
        );
    }
}
