use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use noon_sim::{
    dilated_mode_map, lbs_channel, simulate_dilation, sweep_phase, ExperimentConfig, PhaseGrid, Pipeline, PureState,
};

fn channels(c: &mut Criterion) {
    let lbs = ExperimentConfig::default().lbs;
    c.bench_function("lbs_channel", |b| b.iter(|| lbs_channel(black_box(lbs)).unwrap()));

    let map = dilated_mode_map(lbs).unwrap();
    let rho = PureState::noon(0.0).density();
    c.bench_function("simulate_dilation", |b| b.iter(|| simulate_dilation(black_box(&rho), &map)));
}

fn pipeline(c: &mut Criterion) {
    let cfg = ExperimentConfig::default();
    c.bench_function("pipeline_new", |b| b.iter(|| Pipeline::new(black_box(&cfg)).unwrap()));

    let p = Pipeline::new(&cfg).unwrap();
    c.bench_function("record_one_phase", |b| b.iter(|| p.record(black_box(0.3)).unwrap()));

    let mut group = c.benchmark_group("sweep");
    for steps in [64, 1024] {
        let cfg =
            ExperimentConfig { phases: PhaseGrid::uniform(0.0, std::f64::consts::PI, steps).unwrap(), ..cfg.clone() };
        group.bench_function(format!("{steps}_phases"), |b| b.iter(|| sweep_phase(black_box(&cfg)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, channels, pipeline);
criterion_main!(benches);
