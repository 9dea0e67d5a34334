//! Named verification suites. Each check carries the slug of the statement
//! it reproduces; claims about "all sufficiently large n" are only ever
//! checked inside an explicit window.

mod algebra;
mod families;
mod identities;
mod primes;

use dynlab_core::exactnum::{Rational, UniPoly};
use dynlab_core::orbit::DEFAULT_DIGIT_CAP;
use dynlab_core::par::Exec;
use dynlab_core::primeledger::FactorBudget;
use dynlab_core::ratmap::{parse_rational_map, RationalMap, DEFAULT_TOWER_BUDGET};

use crate::random::DEFAULT_SEED;
use crate::report::SuiteResult;

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub budget: FactorBudget,
    pub digit_cap: usize,
    pub tower_budget: usize,
    pub exec: Exec,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            budget: FactorBudget::default(),
            digit_cap: DEFAULT_DIGIT_CAP,
            tower_budget: DEFAULT_TOWER_BUDGET,
            exec: Exec::Parallel,
            seed: DEFAULT_SEED,
        }
    }
}

pub struct SuiteSpec {
    pub id: &'static str,
    pub summary: &'static str,
    pub run: fn(&SuiteConfig) -> SuiteResult,
}

/// In acceptance order.
pub const SUITES: &[SuiteSpec] = &[
    SuiteSpec {
        id: "fermat",
        summary: "Fermat numbers as an orbit of t^2 - 2t + 2",
        run: identities::fermat,
    },
    SuiteSpec {
        id: "counterexample",
        summary: "t^2/(2t+1): differences supported on {2}",
        run: identities::counterexample,
    },
    SuiteSpec {
        id: "euclid",
        summary: "t^2/(t+1) and the Euclid numbers",
        run: identities::euclid,
    },
    SuiteSpec {
        id: "closed-forms",
        summary: "closed forms for iterates of the two degree-2 exceptions",
        run: identities::closed_forms,
    },
    SuiteSpec {
        id: "lemma5-identities",
        summary: "period-3 cubic factors and a quartic resultant",
        run: identities::lemma5_identities,
    },
    SuiteSpec {
        id: "kisaka",
        summary: "catalog maps without exact-period points",
        run: families::kisaka,
    },
    SuiteSpec {
        id: "fixed-points",
        summary: "fixed-point census on random maps",
        run: families::fixed_points,
    },
    SuiteSpec {
        id: "linear-factors",
        summary: "distinct linear factors of iterate forms",
        run: families::linear_factors,
    },
    SuiteSpec {
        id: "application",
        summary: "primitive primes of 2^(3^m) + 1 are 1 mod 3 and 1 mod 9",
        run: primes::application,
    },
    SuiteSpec {
        id: "theorem1",
        summary: "primitive primes of x_(n+1) - x_n for t^2 + 1",
        run: primes::theorem1,
    },
    SuiteSpec {
        id: "theorem2",
        summary: "exceptional behavior for the 1/t^2 class and 1/(t^2+t)",
        run: primes::theorem2,
    },
    SuiteSpec {
        id: "lemma6",
        summary: "when the primitive prime of a Fermat number divides a difference",
        run: primes::lemma6,
    },
    SuiteSpec {
        id: "density",
        summary: "counting Fermat-number primes up to 10^5",
        run: primes::density,
    },
    SuiteSpec {
        id: "algebra",
        summary: "randomized algebra and reduction properties",
        run: algebra::algebra,
    },
];

pub fn find_suite(id: &str) -> Option<&'static SuiteSpec> {
    SUITES.iter().find(|s| s.id == id)
}

pub fn run_suite(id: &str, cfg: &SuiteConfig) -> Option<SuiteResult> {
    find_suite(id).map(|s| (s.run)(cfg))
}

pub(crate) fn map(text: &str) -> RationalMap<Rational> {
    parse_rational_map(text).expect("suite map parses")
}

pub(crate) fn poly(c: &[i64]) -> UniPoly<Rational> {
    UniPoly::from_ints(&(), c)
}

/// a - b as a reduced fraction (numerator, monic denominator).
pub(crate) fn difference(
    a: &RationalMap<Rational>,
    b: &RationalMap<Rational>,
) -> (UniPoly<Rational>, UniPoly<Rational>) {
    let n = a
        .numerator()
        .mul(b.denominator())
        .sub(&b.numerator().mul(a.denominator()));
    let d = a.denominator().mul(b.denominator());
    let g = n.gcd(&d).expect("gcd over Q");
    let (n, d) = (n.exact_div(&g).unwrap(), d.exact_div(&g).unwrap());
    let lc = d.lead();
    (n.scale(&lc.recip()), d.monic().unwrap())
}
