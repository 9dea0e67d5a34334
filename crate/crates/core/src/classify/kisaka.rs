//! Kisaka's list of maps without points of exact period 2 (d = 2, 3, 4)
//! or exact period 3 (d = 2), up to conjugacy.

use std::sync::Arc;

use super::ClassifyError;
use crate::exactnum::{generator, rat, AlgElem, ExtContext, Field, Rational};
use crate::ratmap::{parse_map_in, AnyMap, RationalMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub delta: usize,
    pub degree: usize,
    /// Parameter names, in order.
    pub params: &'static [&'static str],
    /// Generator and minimal polynomial of the extension the entry lives in.
    pub extension: Option<(&'static str, &'static str)>,
    template: &'static str,
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry { id: "kisaka-2-2", delta: 2, degree: 2, params: &["a"], extension: None, template: "(t^2 - t)/(a*t + 1)" },
    CatalogEntry {
        id: "kisaka-2-3-a",
        delta: 2,
        degree: 3,
        params: &["a"],
        extension: None,
        template: "(t^3 + a*t^2 - t)/((a^2 - 1)*t^2 - 2*a*t + 1)",
    },
    CatalogEntry { id: "kisaka-2-3-b", delta: 2, degree: 3, params: &["b"], extension: None, template: "(t^3 - t)/(-t^2 + b*t + 1)" },
    CatalogEntry {
        id: "kisaka-2-3-c",
        delta: 2,
        degree: 3,
        params: &["c"],
        extension: None,
        template: "(t^3 + (4/c)*t^2 - t)/(-t^2 + c*t + 1)",
    },
    CatalogEntry { id: "kisaka-2-4-1", delta: 2, degree: 4, params: &[], extension: None, template: "(t^4 - t)/(-2*t^3 + 1)" },
    CatalogEntry {
        id: "kisaka-2-4-2",
        delta: 2,
        degree: 4,
        params: &[],
        extension: None,
        template: "(t^4 + t^3 + t^2 - t)/(-t^3 + t^2 - 3*t + 1)",
    },
    // s = 3^(1/3): 3^(2/3) = s^2, 3^(4/3) = 3s, 5*3^(-1/3) = 5s^2/3
    CatalogEntry {
        id: "kisaka-2-4-3",
        delta: 2,
        degree: 4,
        params: &[],
        extension: Some(("s", "s^3 - 3")),
        template: "(t^4 - s*t^3 + s^2*t^2 - t)/(-t^3 + 3*s*t^2 - (5*s^2/3)*t + 1)",
    },
    // r = sqrt(5)
    CatalogEntry {
        id: "kisaka-2-4-4",
        delta: 2,
        degree: 4,
        params: &[],
        extension: Some(("r", "r^2 - 5")),
        template: "(t^4 + ((-5 + r)/2)*t^3 + ((3 - r)/2)*t^2 - t)/(-t^3 + ((3 + r)/2)*t^2 + ((-5 - r)/2)*t + 1)",
    },
    // w a primitive cube root of unity
    CatalogEntry {
        id: "kisaka-3-2-a",
        delta: 3,
        degree: 2,
        params: &[],
        extension: Some(("w", "w^2 + w + 1")),
        template: "(t^2 + w*t)/(((w + 5)/(w - 1))*t + 1)",
    },
    CatalogEntry {
        id: "kisaka-3-2-b",
        delta: 3,
        degree: 2,
        params: &[],
        extension: Some(("w", "w^2 + w + 1")),
        template: "(t^2 + w*t)/(w*t + 1)",
    },
];

pub fn catalog_entry(id: &str) -> Result<&'static CatalogEntry, ClassifyError> {
    CATALOG
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| ClassifyError::UnknownCase(id.to_string()))
}

/// Three admissible small-integer parameter tuples (one empty tuple for
/// entries without parameters).
pub fn sample_params(entry: &CatalogEntry) -> Vec<Vec<Rational>> {
    let ints: &[i64] = match entry.id {
        "kisaka-2-2" => &[0, 1, 2],
        "kisaka-2-3-a" | "kisaka-2-3-b" | "kisaka-2-3-c" => &[1, 2, -3],
        _ => return vec![vec![]],
    };
    ints.iter().map(|&v| vec![rat(v, 1)]).collect()
}

fn check_params<K: Field>(
    entry: &CatalogEntry,
    ctx: &K::Ctx,
    params: &[K],
) -> Result<(), ClassifyError> {
    if params.len() != entry.params.len() {
        return Err(ClassifyError::ParamCount {
            case: entry.id.into(),
            expected: entry.params.len(),
            got: params.len(),
        });
    }
    let violated = |constraint: &str| {
        Err(ClassifyError::ParamViolation {
            case: entry.id.into(),
            constraint: constraint.into(),
        })
    };
    match entry.id {
        "kisaka-2-2" if params[0] == K::from_int(ctx, -1) => violated("a != -1"),
        "kisaka-2-3-a" if params[0].is_zero() => violated("a != 0"),
        "kisaka-2-3-b" if params[0].is_zero() => violated("b != 0"),
        "kisaka-2-3-c" if params[0].is_zero() => violated("c != 0"),
        "kisaka-2-3-c"
            if params[0]
                .mul(&params[0])
                .add(&K::from_int(ctx, 4))
                .is_zero() =>
        {
            violated("c != 2i, -2i")
        }
        _ => Ok(()),
    }
}

fn build<K: Field>(
    entry: &CatalogEntry,
    ctx: &K::Ctx,
    symbols: &[(String, K)],
) -> Result<RationalMap<K>, ClassifyError> {
    let m = parse_map_in(entry.template, ctx, symbols)?;
    if m.degree() != entry.degree {
        return Err(ClassifyError::ParamViolation {
            case: entry.id.into(),
            constraint: format!("degree {}", entry.degree),
        });
    }
    Ok(m)
}

/// A parametric entry (one without an extension) over any field.
pub fn kisaka_map_in<K: Field>(
    id: &str,
    ctx: &K::Ctx,
    params: &[K],
) -> Result<RationalMap<K>, ClassifyError> {
    let entry = catalog_entry(id)?;
    if entry.extension.is_some() {
        return Err(ClassifyError::NeedsExtension(id.to_string()));
    }
    check_params(entry, ctx, params)?;
    let symbols: Vec<(String, K)> = entry
        .params
        .iter()
        .map(|s| s.to_string())
        .zip(params.iter().cloned())
        .collect();
    build(entry, ctx, &symbols)
}

/// The extension an entry lives in, if any.
pub fn catalog_extension(entry: &CatalogEntry) -> Option<Arc<ExtContext<Rational>>> {
    let (name, modulus) = entry.extension?;
    let (n, _) = crate::ratmap::parse_fraction::<Rational>(modulus, &(), name, &[])
        .expect("catalog modulus");
    Some(ExtContext::new(name, n).expect("catalog modulus is nonconstant"))
}

/// Builds a catalog map with rational parameters. Entries with irrational
/// coefficients are built over their own extension, declared here.
pub fn kisaka_map(id: &str, params: &[Rational]) -> Result<AnyMap, ClassifyError> {
    let entry = catalog_entry(id)?;
    match catalog_extension(entry) {
        None => Ok(AnyMap::Rational(kisaka_map_in(id, &(), params)?)),
        Some(ext) => {
            check_params::<Rational>(entry, &(), params)?;
            let symbols = vec![(ext.name().to_string(), generator(&ext))];
            let m: RationalMap<AlgElem> = build(entry, &ext, &symbols)?;
            Ok(AnyMap::Algebraic(m))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, UniPoly};
    use crate::ratmap::has_exact_period_point;

    #[test]
    fn catalog_examples() {
        assert_eq!(
            kisaka_map("kisaka-2-2", &[int(1)]).unwrap().to_string(),
            "(t^2 - t)/(t + 1)"
        );
        assert_eq!(
            kisaka_map("kisaka-2-4-1", &[]).unwrap().to_string(),
            "(-t^4 + t)/(2*t^3 - 1)"
        );
        let b = kisaka_map("kisaka-3-2-b", &[]).unwrap();
        assert!(matches!(b, AnyMap::Algebraic(_)));
        assert_eq!(b.degree(), 2);
    }

    #[test]
    fn constraints() {
        assert!(matches!(
            kisaka_map("kisaka-2-2", &[int(-1)]),
            Err(ClassifyError::ParamViolation { .. })
        ));
        assert!(matches!(
            kisaka_map("kisaka-2-3-c", &[int(0)]),
            Err(ClassifyError::ParamViolation { .. })
        ));
        assert!(matches!(
            kisaka_map("kisaka-2-3-b", &[]),
            Err(ClassifyError::ParamCount { .. })
        ));
        assert!(matches!(
            kisaka_map("kisaka-9", &[]),
            Err(ClassifyError::UnknownCase(_))
        ));
        // over Q(i), c = 2i is excluded
        let ext = ExtContext::new("i", UniPoly::<Rational>::from_ints(&(), &[1, 0, 1])).unwrap();
        let two_i = generator(&ext).add(&generator(&ext));
        assert!(matches!(
            kisaka_map_in("kisaka-2-3-c", &ext, &[two_i]),
            Err(ClassifyError::ParamViolation { .. })
        ));
    }

    #[test]
    fn no_exact_period_points() {
        for e in CATALOG {
            for p in sample_params(e) {
                let exists = match kisaka_map(e.id, &p).unwrap() {
                    AnyMap::Rational(m) => has_exact_period_point(&m, e.delta).unwrap().exists,
                    AnyMap::Algebraic(m) => has_exact_period_point(&m, e.delta).unwrap().exists,
                };
                assert!(!exists, "{} {:?}", e.id, p);
            }
        }
    }
}
