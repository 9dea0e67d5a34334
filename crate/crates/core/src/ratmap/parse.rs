//! Recursive-descent parser for rational expressions in one variable.
//!
//! Accepted syntax is a superset of `poly | poly "/" poly`: sums,
//! products (explicit or by juxtaposition), quotients, parentheses, unary
//! signs and natural-number powers, over integer literals, the variable
//! and declared field generators.

use std::sync::Arc;

use super::error::{RatMapError, Result};
use super::map::RationalMap;
use crate::exactnum::{generator, AlgElem, ExtContext, Field, Rational, UniPoly};

/// Coefficient field for parsing: Q, or Q adjoined a declared root.
#[derive(Clone, Debug, PartialEq)]
pub enum AlgebraicContext {
    Rationals,
    Extension(Arc<ExtContext<Rational>>),
}

/// A map over whichever field the input required.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMap {
    Rational(RationalMap<Rational>),
    Algebraic(RationalMap<AlgElem>),
}

impl AnyMap {
    pub fn degree(&self) -> usize {
        match self {
            AnyMap::Rational(m) => m.degree(),
            AnyMap::Algebraic(m) => m.degree(),
        }
    }
}

impl std::fmt::Display for AnyMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AnyMap::Rational(m) => write!(f, "{m}"),
            AnyMap::Algebraic(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(num_bigint::BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = s.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, d)) = it.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = j + d.len_utf8();
                it.next();
            }
            out.push((i, Tok::Num(s[i..end].parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let mut end = i;
            while let Some(&(j, d)) = it.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                end = j + d.len_utf8();
                it.next();
            }
            out.push((i, Tok::Ident(s[i..end].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            it.next();
        } else {
            return Err(RatMapError::Syntax {
                pos: i,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

/// A value of K(t) as numerator/denominator.
#[derive(Clone)]
struct Frac<K: Field> {
    n: UniPoly<K>,
    d: UniPoly<K>,
}

impl<K: Field> Frac<K> {
    fn poly(p: UniPoly<K>) -> Self {
        let d = UniPoly::one(p.ctx());
        Frac { n: p, d }
    }
    fn add(&self, o: &Self) -> Self {
        Frac {
            n: self.n.mul(&o.d).add(&o.n.mul(&self.d)),
            d: self.d.mul(&o.d),
        }
    }
    fn sub(&self, o: &Self) -> Self {
        Frac {
            n: self.n.mul(&o.d).sub(&o.n.mul(&self.d)),
            d: self.d.mul(&o.d),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        Frac {
            n: self.n.mul(&o.n),
            d: self.d.mul(&o.d),
        }
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if o.n.is_zero() {
            return Err(RatMapError::ZeroDenominator);
        }
        Ok(Frac {
            n: self.n.mul(&o.d),
            d: self.d.mul(&o.n),
        })
    }
    fn neg(&self) -> Self {
        Frac {
            n: self.n.neg(),
            d: self.d.clone(),
        }
    }
    fn pow(&self, e: u32) -> Self {
        Frac {
            n: self.n.pow(e),
            d: self.d.pow(e),
        }
    }
}

struct Parser<'a, K: Field> {
    toks: Vec<(usize, Tok)>,
    i: usize,
    len: usize,
    ctx: &'a K::Ctx,
    var: &'a str,
    symbols: &'a [(String, K)],
}

impl<K: Field> Parser<'_, K> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(_, t)| t)
    }
    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|(p, _)| *p).unwrap_or(self.len)
    }
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(RatMapError::Syntax {
            pos: self.pos(),
            msg: msg.to_string(),
        })
    }
    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Frac<K>> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Frac<K>> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                acc = acc.div(&self.unary()?)?;
            } else if matches!(
                self.peek(),
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('('))
            ) {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Frac<K>> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Frac<K>> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    let e: u32 = match u32::try_from(&n) {
                        Ok(e) if e <= 4096 => e,
                        _ => return self.err("exponent too large"),
                    };
                    self.i += 1;
                    Ok(base.pow(e))
                }
                _ => self.err("expected a natural-number exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Frac<K>> {
        let ctx = self.ctx;
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                Ok(Frac::poly(UniPoly::constant(K::from_rational(
                    ctx,
                    &Rational::from_integer(n),
                ))))
            }
            Some(Tok::Ident(name)) => {
                if name == self.var {
                    self.i += 1;
                    return Ok(Frac::poly(UniPoly::var(ctx)));
                }
                match self.symbols.iter().find(|(s, _)| *s == name) {
                    Some((_, v)) => {
                        self.i += 1;
                        Ok(Frac::poly(UniPoly::constant(v.clone())))
                    }
                    None => self.err(&format!("unknown symbol '{name}'")),
                }
            }
            Some(Tok::Op('(')) => {
                self.i += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(v)
            }
            Some(_) => self.err("expected a number, symbol or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` as an element of K(var), returned as (numerator, denominator).
pub fn parse_fraction<K: Field>(
    text: &str,
    ctx: &K::Ctx,
    var: &str,
    symbols: &[(String, K)],
) -> Result<(UniPoly<K>, UniPoly<K>)> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        i: 0,
        len: text.len(),
        ctx,
        var,
        symbols,
    };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok((v.n, v.d))
}

/// Parses a map over a given field.
pub fn parse_map_in<K: Field>(
    text: &str,
    ctx: &K::Ctx,
    symbols: &[(String, K)],
) -> Result<RationalMap<K>> {
    let (n, d) = parse_fraction(text, ctx, "t", symbols)?;
    RationalMap::from_polys(n, d)
}

pub fn parse_rational_map(text: &str) -> Result<RationalMap<Rational>> {
    parse_map_in(text, &(), &[])
}

/// Parses a declaration such as `w: w^2+w+1`.
pub fn parse_field_decl(text: &str) -> Result<AlgebraicContext> {
    let Some((name, poly)) = text.split_once(':') else {
        return Err(RatMapError::Syntax {
            pos: 0,
            msg: "expected 'name: polynomial'".into(),
        });
    };
    let name = name.trim();
    let valid = name.chars().next().is_some_and(|c| c.is_alphabetic())
        && name.chars().all(|c| c.is_alphanumeric() || c == '_')
        && name != "t";
    if !valid {
        return Err(RatMapError::Syntax {
            pos: 0,
            msg: format!("invalid generator name '{name}'"),
        });
    }
    let offset = name.len() + 1;
    let (n, d) = parse_fraction::<Rational>(poly, &(), name, &[]).map_err(|e| match e {
        RatMapError::Syntax { pos, msg } => RatMapError::Syntax {
            pos: pos + offset,
            msg,
        },
        e => e,
    })?;
    if !d.is_constant() || n.deg0() == 0 {
        return Err(RatMapError::Syntax {
            pos: offset,
            msg: "modulus must be a nonconstant polynomial".into(),
        });
    }
    let m = n.scale(&d.lead().recip());
    Ok(AlgebraicContext::Extension(ExtContext::new(name, m)?))
}

/// Parses a map; over an extension, a map whose coefficients all lie in Q
/// is returned as a rational map.
pub fn parse_map(text: &str, ctx: &AlgebraicContext) -> Result<AnyMap> {
    match ctx {
        AlgebraicContext::Rationals => Ok(AnyMap::Rational(parse_rational_map(text)?)),
        AlgebraicContext::Extension(ext) => {
            let symbols = vec![(ext.name().to_string(), generator(ext))];
            let m = parse_map_in(text, ext, &symbols)?;
            match m.map_coeffs::<Rational>(&(), |c| c.to_rational()) {
                Some(r) => Ok(AnyMap::Rational(r?)),
                None => Ok(AnyMap::Algebraic(m)),
            }
        }
    }
}

/// Parses a point: a rational number or "inf".
pub fn parse_point(text: &str) -> Result<super::map::ProjPoint<Rational>> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("inf") || t == "∞" {
        return Ok(super::map::ProjPoint::Infinity);
    }
    let (n, d) = parse_fraction::<Rational>(t, &(), "t", &[])?;
    if !n.is_constant() || !d.is_constant() {
        return Err(RatMapError::Syntax {
            pos: 0,
            msg: "expected a rational constant".into(),
        });
    }
    Ok(super::map::ProjPoint::Finite(n.coeff(0) / d.coeff(0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_reference_maps() {
        let m = parse_rational_map("t^2 - 2*t + 2").unwrap();
        assert_eq!(
            (m.degree(), m.denominator().to_string()),
            (2, "1".to_string())
        );
        assert_eq!(parse_rational_map("t^2/(2*t+1)").unwrap().degree(), 2);
        assert_eq!(
            parse_rational_map("(2*t^2+2*t)/(2)").unwrap().to_string(),
            "t^2 + t"
        );
        assert_eq!(
            parse_rational_map("2t^2 + 3(t - 1)").unwrap().to_string(),
            "2*t^2 + 3*t - 3"
        );
        assert_eq!(
            parse_rational_map("(t-1)^3 + 1").unwrap().to_string(),
            "t^3 - 3*t^2 + 3*t"
        );
        assert_eq!(parse_rational_map("1/t^2").unwrap().to_string(), "1/t^2");
        assert_eq!(
            parse_rational_map("t + 1/(t^2+1)").unwrap().to_string(),
            "(t^3 + t + 1)/(t^2 + 1)"
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_rational_map("t^2 +"),
            Err(RatMapError::Syntax { pos: 5, .. })
        ));
        assert!(matches!(
            parse_rational_map("t $ 2"),
            Err(RatMapError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse_rational_map("t/(t-t)"),
            Err(RatMapError::ZeroDenominator)
        ));
        assert!(matches!(
            parse_rational_map("(t^2+t)/(t^2+t)"),
            Err(RatMapError::DegreeZero)
        ));
        assert!(matches!(
            parse_rational_map("s*t"),
            Err(RatMapError::Syntax { pos: 0, .. })
        ));
    }

    #[test]
    fn extension_maps() {
        let ctx = parse_field_decl("w: w^2+w+1").unwrap();
        let m = parse_map("(t^2 + w*t)/(w*t + 1)", &ctx).unwrap();
        match &m {
            AnyMap::Algebraic(m) => {
                assert_eq!(m.degree(), 2);
                assert_eq!(m.to_string(), "((-w - 1)*t^2 + t)/(t + (-w - 1))");
            }
            AnyMap::Rational(_) => panic!("expected algebraic map"),
        }
        assert!(matches!(
            parse_map("t^2 + 1", &ctx).unwrap(),
            AnyMap::Rational(_)
        ));
        assert!(parse_field_decl("t: t^2+1").is_err());
    }

    #[test]
    fn points() {
        assert_eq!(
            parse_point("inf").unwrap(),
            super::super::map::ProjPoint::Infinity
        );
        assert_eq!(
            parse_point("-3/6").unwrap(),
            super::super::map::ProjPoint::Finite(crate::exactnum::rat(-1, 2))
        );
    }
}
