//! Sequential vs rayon execution of the two embarrassingly parallel hot
//! paths: difference-ledger cells and the Fermat order oracle.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dynlab_core::exactnum::int;
use dynlab_core::orbit::{orbit, DEFAULT_DIGIT_CAP};
use dynlab_core::par::Exec;
use dynlab_core::primeledger::{fermat_order_oracle, DiffLedger, FactorBudget, LedgerMode};
use dynlab_core::ratmap::{parse_rational_map, ProjPoint};

fn ledger(c: &mut Criterion) {
    let phi = parse_rational_map("t^2 + 1").unwrap();
    let orb = orbit(&phi, &ProjPoint::Finite(int(1)), 8, DEFAULT_DIGIT_CAP).unwrap();
    let budget = FactorBudget::from_millis(50);
    let mut g = c.benchmark_group("diff-ledger t^2+1 N=8 M=3");
    g.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        g.bench_with_input(
            BenchmarkId::from_parameter(format!("{exec:?}")),
            &exec,
            |b, &exec| {
                b.iter(|| {
                    DiffLedger::from_orbit(orb.clone(), 3, LedgerMode::Projective, budget, exec)
                })
            },
        );
    }
    g.finish();
}

fn order_oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("fermat order oracle x=1e6");
    g.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        g.bench_with_input(
            BenchmarkId::from_parameter(format!("{exec:?}")),
            &exec,
            |b, &exec| b.iter(|| fermat_order_oracle(1_000_000, exec)),
        );
    }
    g.finish();
}

criterion_group!(benches, ledger, order_oracle);
criterion_main!(benches);
