//! Sequential against parallel execution of an exact averaging profile and a
//! norm-equivalence fit.

use criterion::{criterion_group, criterion_main, Criterion};
use experiments::families::{member, Family};
use experiments::stabilize::scan_depth_zero;
use haar::{averaging_profile, ExactOptions};
use norm_zoo::samplers::{PairKind, PairSampler};
use norm_zoo::{fit_equivalence, Exec, FitConfig};

fn averaging(c: &mut Criterion) {
    let m = scan_depth_zero(2).unwrap();
    let x = member(Family::TraceShift, 2, 2).unwrap();
    let mut g = c.benchmark_group("averaging_profile");
    g.sample_size(10);
    for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        let opts = ExactOptions { exec, ..ExactOptions::default() };
        g.bench_function(name, |b| b.iter(|| averaging_profile(&m, x.matrix(), 2, &opts, None).unwrap()));
    }
    g.finish();
}

fn norm_fit(c: &mut Criterion) {
    let sampler = PairSampler { p: 2, k: 2, kind: PairKind::Units };
    let mut g = c.benchmark_group("fit_equivalence");
    g.sample_size(10);
    for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        let cfg = FitConfig { trials: 200, seed: 1, spread: 8, strata: 8, exec };
        g.bench_function(name, |b| b.iter(|| fit_equivalence(&sampler, "S^x", "S^x'", &cfg).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, averaging, norm_fit);
criterion_main!(benches);
