use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactnum::{generator, ExtContext, Field, UniPoly};
use crate::ratmap::{
    fixed_points, has_exact_period_point, totally_ramified_points, FixedPointRecord, Locus, Mobius,
    ProjPoint, RatMapError, RationalMap, Result,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    #[serde(rename = "T_i")]
    Ti,
    #[serde(rename = "T_ii")]
    Tii,
    #[serde(rename = "T_iii")]
    Tiii,
    #[serde(rename = "E_i")]
    Ei,
    #[serde(rename = "E_ii")]
    Eii,
    #[serde(rename = "E_iii")]
    Eiii,
    #[serde(rename = "F1_a")]
    F1a,
    #[serde(rename = "F1_b")]
    F1b,
    #[serde(rename = "B_2_2")]
    B22,
    #[serde(rename = "B_2_3")]
    B23,
    #[serde(rename = "B_2_4")]
    B24,
    #[serde(rename = "B_3_2")]
    B32,
    #[serde(rename = "F2_conj_inv_square")]
    F2ConjInvSquare,
    None,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Ti => "T_i",
            FamilyKind::Tii => "T_ii",
            FamilyKind::Tiii => "T_iii",
            FamilyKind::Ei => "E_i",
            FamilyKind::Eii => "E_ii",
            FamilyKind::Eiii => "E_iii",
            FamilyKind::F1a => "F1_a",
            FamilyKind::F1b => "F1_b",
            FamilyKind::B22 => "B_2_2",
            FamilyKind::B23 => "B_2_3",
            FamilyKind::B24 => "B_2_4",
            FamilyKind::B32 => "B_3_2",
            FamilyKind::F2ConjInvSquare => "F2_conj_inv_square",
            FamilyKind::None => "None",
        }
    }

    fn baker(delta: usize, d: usize) -> Option<Self> {
        match (delta, d) {
            (2, 2) => Some(FamilyKind::B22),
            (2, 3) => Some(FamilyKind::B23),
            (2, 4) => Some(FamilyKind::B24),
            (3, 2) => Some(FamilyKind::B32),
            _ => None,
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of a membership test. When `witness` is present,
/// `phi.conjugate(witness) == canonical` has been re-checked.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyTag<K: Field> {
    pub kind: FamilyKind,
    pub witness: Option<Mobius<K>>,
    pub canonical: Option<RationalMap<K>>,
    pub detail: String,
}

impl<K: Field> FamilyTag<K> {
    pub fn none() -> Self {
        FamilyTag {
            kind: FamilyKind::None,
            witness: None,
            canonical: None,
            detail: String::new(),
        }
    }

    pub fn is_none(&self) -> bool {
        self.kind == FamilyKind::None
    }

    fn plain(kind: FamilyKind, detail: impl Into<String>) -> Self {
        FamilyTag {
            kind,
            witness: None,
            canonical: None,
            detail: detail.into(),
        }
    }

    fn witnessed(
        phi: &RationalMap<K>,
        kind: FamilyKind,
        sigma: Option<Mobius<K>>,
        canonical: RationalMap<K>,
        detail: impl Into<String>,
    ) -> Result<Self> {
        if let Some(s) = &sigma {
            let got = phi.conjugate(s)?;
            if got != canonical {
                return Err(RatMapError::Internal(format!(
                    "witness {s} gives {got}, expected {canonical}"
                )));
            }
        }
        Ok(FamilyTag {
            kind,
            witness: sigma.map(|s| s.normalized()),
            canonical: Some(canonical),
            detail: detail.into(),
        })
    }
}

/// Which exception of the marginal-preperiodic lemma a map falls under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma5Case {
    /// delta = 1 and phi in the family E.
    E,
    /// delta = 2, phi(t) = a + 1/g(t - a), g quadratic with g(0) = 0, g != c t^2.
    InfinityTwoCycle,
    /// delta = 2, phi conjugate to 1/t^2.
    ConjInverseSquare,
    /// delta in {2, 3}, phi without points of exact period delta.
    Baker { delta: usize, degree: usize },
    /// None of the listed exceptions was recognized.
    Unclassified,
}

impl fmt::Display for Lemma5Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lemma5Case::E => f.write_str("E"),
            Lemma5Case::InfinityTwoCycle => f.write_str("infinity_two_cycle"),
            Lemma5Case::ConjInverseSquare => f.write_str("conj_inverse_square"),
            Lemma5Case::Baker { delta, degree } => write!(f, "B_{delta}_{degree}"),
            Lemma5Case::Unclassified => f.write_str("unclassified"),
        }
    }
}

fn map_from<K: Field>(ctx: &K::Ctx, f: &[i64], g: &[i64]) -> RationalMap<K> {
    RationalMap::from_polys(UniPoly::from_ints(ctx, f), UniPoly::from_ints(ctx, g))
        .expect("canonical form")
}

fn is_monomial<K: Field>(p: &UniPoly<K>, k: usize) -> bool {
    p.degree() == Some(k) && p.coeffs()[..k].iter().all(|c| c.is_zero())
}

/// phi^(2) has a totally ramified fixed point at 0, i.e. F_2 = c x^(d^2).
pub fn in_t<K: Field>(phi: &RationalMap<K>) -> Result<FamilyTag<K>> {
    phi.require_dynamical()?;
    let f2 = phi.iterate_forms(2)?.f;
    let n = f2.degree();
    if !f2.coeffs()[..n].iter().all(|c| c.is_zero()) {
        return Ok(FamilyTag::none());
    }
    let kind = match phi.evaluate(&ProjPoint::Finite(K::zero(phi.ctx())))? {
        ProjPoint::Finite(x) if x.is_zero() => FamilyKind::Ti,
        ProjPoint::Infinity => FamilyKind::Tii,
        ProjPoint::Finite(_) => FamilyKind::Tiii,
    };
    Ok(FamilyTag::plain(kind, "F_2 is a monomial in x"))
}

fn finite_points<K: Field>(fp: &[FixedPointRecord<K>]) -> Vec<&FixedPointRecord<K>> {
    fp.iter()
        .filter(|r| !matches!(r.locus, Locus::Infinity))
        .collect()
}

fn infinity_multiplicity<K: Field>(fp: &[FixedPointRecord<K>]) -> usize {
    fp.iter()
        .find(|r| r.locus == Locus::Infinity)
        .map(|r| r.multiplicity)
        .unwrap_or(0)
}

pub fn in_e<K: Field>(phi: &RationalMap<K>) -> Result<FamilyTag<K>> {
    phi.require_dynamical()?;
    let d = phi.degree();
    let ctx = phi.ctx().clone();
    // E(i): phi(t) - t = c / g(t)
    let n = phi
        .level_numerator(&K::zero(&ctx))
        .sub(&phi.denominator().shift(1));
    if n.degree() == Some(0) {
        return Ok(FamilyTag::plain(
            FamilyKind::Ei,
            format!("phi(t) - t = {}/({})", n, phi.denominator()),
        ));
    }
    let fp = fixed_points(phi)?;
    let fin = finite_points(&fp);
    let inf = infinity_multiplicity(&fp);

    // E(iii): t^2/(2t+1); infinity simple, two totally ramified finite fixed points
    if d == 2
        && inf == 1
        && fin
            .iter()
            .all(|r| r.totally_ramified && r.multiplicity == 1)
    {
        let canonical = map_from(&ctx, &[0, 0, 1], &[1, 2]);
        let rational: Vec<K> = fin
            .iter()
            .filter_map(|r| match &r.locus {
                Locus::Point(x) => Some(x.clone()),
                _ => None,
            })
            .collect();
        if rational.len() == 2 {
            let (p, q) = (&rational[0], &rational[1]);
            let sigma = Mobius::affine(p.sub(q), p.clone())?;
            return FamilyTag::witnessed(
                phi,
                FamilyKind::Eiii,
                Some(sigma),
                canonical,
                "two ramified fixed points",
            );
        }
        if fin.len() == 1 && fin[0].locus.size() == 2 {
            return FamilyTag::witnessed(
                phi,
                FamilyKind::Eiii,
                None,
                canonical,
                "ramified conjugate fixed points",
            );
        }
    }

    // E(ii): t^d/(t^(d-1)+1); infinity of multiplicity d, one ramified finite fixed point
    if inf == d && fin.len() == 1 && fin[0].totally_ramified {
        if let Locus::Point(beta) = &fin[0].locus {
            let phi0 = phi.conjugate(&Mobius::translation(beta.clone()))?;
            let (f, g) = (phi0.numerator(), phi0.denominator());
            let two_terms = g.degree() == Some(d - 1)
                && !g.coeff(0).is_zero()
                && (1..d - 1).all(|i| g.coeff(i).is_zero());
            if is_monomial(f, d) && two_terms && f.lead() == g.lead() {
                let ratio = g.coeff(0).div(&g.lead())?;
                let mut canon_g = vec![0i64; d];
                canon_g[0] = 1;
                canon_g[d - 1] = 1;
                let mut canon_f = vec![0i64; d + 1];
                canon_f[d] = 1;
                let canonical = map_from(&ctx, &canon_f, &canon_g);
                let sigma = match ratio.nth_root((d - 1) as u32) {
                    Some(l) => Some(Mobius::affine(l, beta.clone())?),
                    None => None,
                };
                let detail = format!("translate by {beta}, scale^{} = {ratio}", d - 1);
                return FamilyTag::witnessed(phi, FamilyKind::Eii, sigma, canonical, detail);
            }
        }
    }
    Ok(FamilyTag::none())
}

/// Affine conjugates of t^2/(t+1) (F1_a) and t^2/(2t+1) (F1_b) over the
/// coefficient field.
pub fn in_f1<K: Field>(phi: &RationalMap<K>) -> Result<FamilyTag<K>> {
    if phi.degree() != 2 {
        return Ok(FamilyTag::none());
    }
    let ctx = phi.ctx().clone();
    let fp = fixed_points(phi)?;
    if infinity_multiplicity(&fp) == 0 {
        return Ok(FamilyTag::none());
    }
    for r in finite_points(&fp) {
        let Locus::Point(beta) = &r.locus else {
            continue;
        };
        if !r.totally_ramified {
            continue;
        }
        let phi0 = phi.conjugate(&Mobius::translation(beta.clone()))?;
        let (f, g) = (phi0.numerator(), phi0.denominator());
        if !is_monomial(f, 2) || g.degree() != Some(1) || g.coeff(0).is_zero() {
            continue;
        }
        let a = g.coeff(1).div(&f.lead())?;
        let b = g.coeff(0).div(&f.lead())?;
        let kind = if a.is_one() {
            FamilyKind::F1a
        } else if a == K::from_int(&ctx, 2) {
            FamilyKind::F1b
        } else {
            continue;
        };
        let canonical = if kind == FamilyKind::F1a {
            map_from(&ctx, &[0, 0, 1], &[1, 1])
        } else {
            map_from(&ctx, &[0, 0, 1], &[1, 2])
        };
        let sigma = Mobius::affine(b.clone(), beta.clone())?;
        return FamilyTag::witnessed(
            phi,
            kind,
            Some(sigma),
            canonical,
            format!("fixed point {beta}, scale {b}"),
        );
    }
    Ok(FamilyTag::none())
}

/// Baker exception: no point of exact period delta. Outside the four
/// admissible (delta, d) pairs this cannot happen; if it does, an internal
/// error is raised.
pub fn in_b<K: Field>(phi: &RationalMap<K>, delta: usize) -> Result<FamilyTag<K>> {
    let ep = has_exact_period_point(phi, delta)?;
    if ep.exists {
        return Ok(FamilyTag::none());
    }
    match FamilyKind::baker(delta, phi.degree()) {
        Some(kind) => Ok(FamilyTag::plain(
            kind,
            format!("no point of exact period {delta}"),
        )),
        None => Err(RatMapError::Internal(format!(
            "degree {} map without exact period {delta} points",
            phi.degree()
        ))),
    }
}

/// d = 2 and the two totally ramified points form a 2-cycle: conjugate to 1/t^2.
pub fn conj_inverse_square<K: Field>(phi: &RationalMap<K>) -> Result<FamilyTag<K>> {
    if phi.degree() != 2 {
        return Ok(FamilyTag::none());
    }
    let ctx = phi.ctx().clone();
    let tr = totally_ramified_points(phi)?;
    let pts: Vec<ProjPoint<K>> = tr.iter().filter_map(|l| l.as_point()).collect();
    let canonical = map_from(&ctx, &[1], &[0, 0, 1]);
    if pts.len() == 2 {
        let (p, q) = (&pts[0], &pts[1]);
        if phi.evaluate(p)? != *q || phi.evaluate(q)? != *p {
            return Ok(FamilyTag::none());
        }
        let one = K::one(&ctx);
        let zero = K::zero(&ctx);
        // sigma0(0) = p, sigma0(inf) = q
        let sigma0 = match (p, q) {
            (ProjPoint::Finite(p), ProjPoint::Finite(q)) => {
                Mobius::new(q.clone(), p.clone(), one.clone(), one.clone())?
            }
            (ProjPoint::Infinity, ProjPoint::Finite(q)) => {
                Mobius::new(q.clone(), one.clone(), one.clone(), zero.clone())?
            }
            (ProjPoint::Finite(p), ProjPoint::Infinity) => Mobius::translation(p.clone()),
            _ => unreachable!("distinct points"),
        };
        let psi = phi.conjugate(&sigma0)?;
        let (f, g) = (psi.numerator(), psi.denominator());
        if !(f.is_constant() && is_monomial(g, 2)) {
            return Err(RatMapError::Internal(format!(
                "ramified 2-cycle normal form is {psi}"
            )));
        }
        let c = f.lead().div(&g.lead())?;
        let sigma = c
            .nth_root(3)
            .map(|mu| sigma0.compose(&Mobius::affine(mu, zero.clone()).expect("mu != 0")));
        return FamilyTag::witnessed(
            phi,
            FamilyKind::F2ConjInvSquare,
            sigma,
            canonical,
            format!("ramified 2-cycle {p} <-> {q}"),
        );
    }
    if let [Locus::Conjugates(j)] = tr.as_slice() {
        if j.deg0() == 2 {
            let ext = ExtContext::new("r", j.clone())?;
            let lifted = phi.lift_to(&ext)?;
            let th = generator(&ext);
            if let ProjPoint::Finite(z) = lifted.evaluate(&ProjPoint::Finite(th.clone()))? {
                let jz = UniPoly::new(
                    ext.clone(),
                    j.coeffs()
                        .iter()
                        .map(|c| crate::exactnum::lift(&ext, c.clone()))
                        .collect(),
                )
                .eval(&z);
                if z != th && jz.is_zero() {
                    return FamilyTag::witnessed(
                        phi,
                        FamilyKind::F2ConjInvSquare,
                        None,
                        canonical,
                        format!("ramified 2-cycle on roots of {j}"),
                    );
                }
            }
        }
    }
    Ok(FamilyTag::none())
}

pub fn in_f2<K: Field>(phi: &RationalMap<K>) -> Result<FamilyTag<K>> {
    let b = in_b(phi, 2)?;
    if !b.is_none() {
        return Ok(b);
    }
    conj_inverse_square(phi)
}

pub fn in_f3<K: Field>(phi: &RationalMap<K>) -> Result<FamilyTag<K>> {
    in_b(phi, 3)
}

/// phi(t) = a + 1/g(t - a) with g quadratic, g(0) = 0, g != c t^2.
pub fn is_infinity_two_cycle<K: Field>(phi: &RationalMap<K>) -> Result<bool> {
    if phi.degree() != 2 {
        return Ok(false);
    }
    let ProjPoint::Finite(a) = phi.evaluate(&ProjPoint::Infinity)? else {
        return Ok(false);
    };
    let g = phi.denominator();
    let numer_const = phi.level_numerator(&a).is_constant();
    let pole_at_a = g.eval(&a).is_zero();
    let double_pole = g.derivative().eval(&a).is_zero();
    Ok(g.degree() == Some(2) && numer_const && pole_at_a && !double_pole)
}

pub fn lemma5_case<K: Field>(phi: &RationalMap<K>, delta: usize) -> Result<Lemma5Case> {
    Ok(match delta {
        1 if !in_e(phi)?.is_none() => Lemma5Case::E,
        2 if is_infinity_two_cycle(phi)? => Lemma5Case::InfinityTwoCycle,
        2 if !conj_inverse_square(phi)?.is_none() => Lemma5Case::ConjInverseSquare,
        2 | 3 if !has_exact_period_point(phi, delta)?.exists => Lemma5Case::Baker {
            delta,
            degree: phi.degree(),
        },
        _ => Lemma5Case::Unclassified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, Rational};
    use crate::ratmap::parse_rational_map;

    fn m(s: &str) -> RationalMap<Rational> {
        parse_rational_map(s).unwrap()
    }

    #[test]
    fn family_t() {
        assert_eq!(in_t(&m("t^2/(2*t+1)")).unwrap().kind, FamilyKind::Ti);
        assert_eq!(in_t(&m("5/t^3")).unwrap().kind, FamilyKind::Tii);
        assert_eq!(in_t(&m("t^2-2*t+2")).unwrap().kind, FamilyKind::None);
        // alpha (t - alpha)^d / ((t - alpha)^d - c t^d) with alpha = 1, c = 1
        assert_eq!(in_t(&m("(t-1)^2/(1-2*t)")).unwrap().kind, FamilyKind::Tiii);
    }

    #[test]
    fn family_e() {
        assert_eq!(in_e(&m("t + 1/(t^2+1)")).unwrap().kind, FamilyKind::Ei);
        let e2 = in_e(&m("t^3/(t^2+1)")).unwrap();
        assert_eq!(e2.kind, FamilyKind::Eii);
        assert!(e2.witness.is_some());
        let e3 = in_e(&m("t^2/(2*t+1)")).unwrap();
        assert_eq!(e3.kind, FamilyKind::Eiii);
        assert_eq!(in_e(&m("t^2+1")).unwrap().kind, FamilyKind::None);
    }

    #[test]
    fn family_f1() {
        let t = in_f1(&m("t^2/(t+1)")).unwrap();
        assert_eq!(t.kind, FamilyKind::F1a);
        assert_eq!(t.witness, Some(Mobius::identity(&())));
        let psi = m("t^2/(2*t+1)");
        let sigma = Mobius::affine(int(3), int(5)).unwrap();
        let phi = psi.conjugate(&sigma.inverse()).unwrap();
        let t = in_f1(&phi).unwrap();
        assert_eq!(t.kind, FamilyKind::F1b);
        assert_eq!(phi.conjugate(t.witness.as_ref().unwrap()).unwrap(), psi);
        assert!(in_f1(&m("t^2+1")).unwrap().is_none());
    }

    #[test]
    fn family_b_and_f2() {
        assert_eq!(in_b(&m("(t^2-t)/(t+1)"), 2).unwrap().kind, FamilyKind::B22);
        assert!(in_b(&m("t^2"), 2).unwrap().is_none());
        let inv = m("1/t^2");
        assert_eq!(in_f2(&inv).unwrap().kind, FamilyKind::F2ConjInvSquare);
        let sigma = Mobius::new(int(1), int(1), int(1), int(-1)).unwrap();
        let conj = inv.conjugate(&sigma).unwrap();
        let tag = in_f2(&conj).unwrap();
        assert_eq!(tag.kind, FamilyKind::F2ConjInvSquare);
        assert_eq!(conj.conjugate(tag.witness.as_ref().unwrap()).unwrap(), inv);
        assert!(in_f2(&m("t^2+1")).unwrap().is_none());
        assert!(in_f3(&m("t^2+1")).unwrap().is_none());
    }

    #[test]
    fn lemma5_cases() {
        assert_eq!(lemma5_case(&m("t^2/(2*t+1)"), 1).unwrap(), Lemma5Case::E);
        // 0 + 1/g(t), g = t^2 + t
        assert_eq!(
            lemma5_case(&m("1/(t^2+t)"), 2).unwrap(),
            Lemma5Case::InfinityTwoCycle
        );
        assert_eq!(
            lemma5_case(&m("1/t^2"), 2).unwrap(),
            Lemma5Case::ConjInverseSquare
        );
    }
}
