use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hbsqueeze::figures::log_grid;
use hbsqueeze::{run_figure, Execution, FigureId, SweepSpec};

fn force_sweep(c: &mut Criterion) {
    let spec = SweepSpec {
        bingham: log_grid(1e-2, 1e2, 9),
        index: vec![0.5, 1.0],
        ..SweepSpec::default()
    };
    let mut group = c.benchmark_group("force_sweep");
    group.sample_size(10);
    for exec in [Execution::Sequential, Execution::Parallel] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{exec:?}")),
            &exec,
            |b, &exec| b.iter(|| run_figure(&spec, FigureId::Fig6, exec).unwrap()),
        );
    }
    group.finish();
}

fn pressure_profile(c: &mut Criterion) {
    let spec = SweepSpec {
        bingham: vec![0.1, 1.0, 10.0],
        index: vec![0.5, 1.0, 1.5],
        ..SweepSpec::default()
    };
    let mut group = c.benchmark_group("pressure_profile");
    group.sample_size(10);
    for exec in [Execution::Sequential, Execution::Parallel] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{exec:?}")),
            &exec,
            |b, &exec| b.iter(|| run_figure(&spec, FigureId::Fig4b, exec).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, force_sweep, pressure_profile);
criterion_main!(benches);
