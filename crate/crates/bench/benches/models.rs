use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use num_complex::Complex64 as C64;

use spinbath_core::tessieri_wilkie::{tw_evolve, TWConfig};
use spinbath_core::zurek::{default_time_grid, simulate_zurek_exact, BathKind, ZurekConfig};

fn zurek_cfg(n_bath: usize) -> ZurekConfig {
    let h = C64::new(1.0 / 2f64.sqrt(), 0.0);
    ZurekConfig {
        n_bath,
        g: 1.0,
        chi: h,
        gamma: h,
        bath: BathKind::Entangled {
            a: 0.8f64.sqrt(),
            d: 0.2f64.sqrt(),
        },
    }
}

fn bench_zurek_simulation(c: &mut Criterion) {
    let mut group = c.benchmark_group("zurek_exact_50_points");
    group.sample_size(10);
    for n_bath in [4usize, 6, 8] {
        let cfg = zurek_cfg(n_bath);
        let grid = default_time_grid(cfg.g, 50);
        group.bench_with_input(BenchmarkId::from_parameter(n_bath), &cfg, |b, cfg| {
            b.iter(|| simulate_zurek_exact(cfg, &grid).unwrap());
        });
    }
    group.finish();
}

fn bench_tw_trajectory(c: &mut Criterion) {
    let mut group = c.benchmark_group("tw_trajectory_50_steps");
    group.sample_size(10);
    for n_bath in [3usize, 5] {
        let cfg = TWConfig {
            n_bath,
            lambda: 5.0,
            n_steps: 50,
            time_max: 30.0,
            ..TWConfig::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(n_bath), &cfg, |b, cfg| {
            b.iter(|| tw_evolve(cfg).unwrap());
        });
    }
    group.finish();
}

criterion_group!(benches, bench_zurek_simulation, bench_tw_trajectory);
criterion_main!(benches);
