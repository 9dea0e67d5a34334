use dynlab_core::classify::{in_t, kisaka_map, sample_params, CATALOG};
use dynlab_core::ratmap::{
    critical_point_count, distinct_linear_factor_count, fixed_points as fixed_point_records,
    has_exact_period_point, totally_ramified_points, AnyMap,
};

use super::{map, SuiteConfig};
use crate::random;
use crate::report::{Check, SuiteResult};

const KISAKA: &str = "kisaka-catalog";
const FIXED: &str = "fixed-point-census";
const LINEAR: &str = "distinct-linear-factors";

pub fn kisaka(_cfg: &SuiteConfig) -> SuiteResult {
    let mut checks = Vec::new();
    for e in CATALOG {
        for params in sample_params(e) {
            let label = if params.is_empty() {
                e.id.to_string()
            } else {
                format!(
                    "{}[{}]",
                    e.id,
                    params
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            };
            let outcome = kisaka_map(e.id, &params)
                .map_err(|err| err.to_string())
                .and_then(|m| {
                    let exists = match &m {
                        AnyMap::Rational(r) => has_exact_period_point(r, e.delta).map(|x| x.exists),
                        AnyMap::Algebraic(a) => {
                            has_exact_period_point(a, e.delta).map(|x| x.exists)
                        }
                    };
                    exists
                        .map(|x| (m.to_string(), x))
                        .map_err(|err| err.to_string())
                });
            checks.push(match outcome {
                Ok((text, exists)) => Check::new(
                    format!("catalog {label}"),
                    KISAKA,
                    !exists,
                    format!("{text}: exact period {} points exist = {exists}", e.delta),
                ),
                Err(err) => Check::new(format!("catalog {label}"), KISAKA, false, err),
            });
        }
    }
    for text in ["t^2", "t^2 + 1", "1/t^2"] {
        for delta in [2, 3] {
            let exists = has_exact_period_point(&map(text), delta)
                .map(|x| x.exists)
                .unwrap_or(false);
            checks.push(Check::new(
                format!("control {text} period {delta}"),
                KISAKA,
                exists,
                format!("exact period {delta} points exist = {exists}"),
            ));
        }
    }
    SuiteResult::new("kisaka", checks)
}

pub fn fixed_points(cfg: &SuiteConfig) -> SuiteResult {
    let mut rng = random::rng(cfg.seed);
    let maps: Vec<_> = (0..50)
        .map(|i| random::map_of_degree(&mut rng, 2 + i % 4, 6))
        .collect();
    // structured maps with multiple fixed points
    let extra = [
        "t + 1/(t^2 + 1)",
        "t^2 + 1/4",
        "t^3/(t^2 + 1)",
        "t^2/(t + 1)",
        "t^2/(2*t + 1)",
        "t - t^3",
    ];
    let (mut census, mut mult, mut ramified, mut critical) = (true, true, true, true);
    let mut notes = Vec::new();
    for (i, phi) in maps
        .iter()
        .chain(extra.iter().map(|t| map(t)).collect::<Vec<_>>().iter())
        .enumerate()
    {
        let d = phi.degree();
        let Ok(fp) = fixed_point_records(phi) else {
            census = false;
            notes.push(format!("map {i} {phi}: fixed-point computation failed"));
            continue;
        };
        let total: usize = fp.iter().map(|r| r.multiplicity * r.locus.size()).sum();
        if total != d + 1 {
            census = false;
            notes.push(format!("map {i} {phi}: {total} fixed points"));
        }
        for r in &fp {
            if (r.multiplicity > 1) != r.multiplier.is_one() {
                mult = false;
                notes.push(format!(
                    "map {i} {phi}: multiplicity {} vs multiplier",
                    r.multiplicity
                ));
            }
        }
        let tr: usize = totally_ramified_points(phi)
            .map(|v| v.iter().map(|l| l.size()).sum())
            .unwrap_or(usize::MAX);
        if tr > 2 {
            ramified = false;
            notes.push(format!("map {i} {phi}: {tr} totally ramified points"));
        }
        if critical_point_count(phi).ok() != Some(2 * d - 2) {
            critical = false;
            notes.push(format!("map {i} {phi}: critical count"));
        }
    }
    let detail = |s: &str| {
        if notes.is_empty() {
            s.to_string()
        } else {
            format!("{s}; {}", notes.join("; "))
        }
    };
    SuiteResult::new(
        "fixed-points",
        vec![
            Check::new("census-d-plus-1", FIXED, census, detail("sum of multiplicities = d + 1 on 50 random maps of degree 2..5 and 6 structured maps")),
            Check::new("multiplicity-vs-multiplier", FIXED, mult, detail("multiplicity > 1 iff multiplier = 1")),
            Check::new("totally-ramified-at-most-2", FIXED, ramified, detail("at most two totally ramified points")),
            Check::new("critical-count-2d-2", FIXED, critical, detail("2d - 2 critical points with multiplicity")),
        ],
    )
}

pub fn linear_factors(cfg: &SuiteConfig) -> SuiteResult {
    let mut rng = random::rng(cfg.seed ^ 0x11);
    let mut maps = Vec::new();
    while maps.len() < 20 {
        let phi = random::map_of_degree(&mut rng, 2, 5);
        if in_t(&phi).map(|t| t.is_none()).unwrap_or(false) {
            maps.push(phi);
        }
    }
    let counts: Vec<(usize, usize)> = dynlab_core::par::map_vec(cfg.exec, maps.clone(), |phi| {
        let c = |r| distinct_linear_factor_count(&phi.iterate_forms(r).unwrap().f).unwrap();
        (c(4), c(5))
    });
    let ok = counts.iter().all(|&(a, b)| a >= 3 && b >= 4);
    let min4 = counts.iter().map(|c| c.0).min().unwrap_or(0);
    let min5 = counts.iter().map(|c| c.1).min().unwrap_or(0);
    SuiteResult::new(
        "linear-factors",
        vec![Check::new(
            "iterate-forms-degree-2",
            LINEAR,
            ok,
            format!("20 random degree-2 maps outside T: min distinct linear factors of F_4 = {min4} (>= 3), of F_5 = {min5} (>= 4)"),
        )],
    )
}
