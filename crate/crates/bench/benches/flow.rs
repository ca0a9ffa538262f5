use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use curvflow::concentration::{critical_radius, SearchOptions};
use curvflow::flow::{evolve, stable_dt, step_polygon, step_theta, theta_dt, FlowParams, State};
use curvflow::presets::Preset;

fn steps(c: &mut Criterion) {
    let params = FlowParams::default();
    let mut g = c.benchmark_group("step");
    for n in [128, 512, 2048] {
        let curve = Preset::Ellipse { a: 2.0, b: 1.0 }.curve(n).unwrap();
        let dt = stable_dt(&curve.geometry().unwrap(), &params);
        g.bench_with_input(BenchmarkId::new("polygon", n), &curve, |b, c| {
            b.iter(|| step_polygon(black_box(c), &params, dt).unwrap())
        });
        let profile = Preset::Ellipse { a: 2.0, b: 1.0 }.profile(n).unwrap();
        let dt = theta_dt(&profile, &params);
        g.bench_with_input(BenchmarkId::new("theta", n), &profile, |b, p| {
            b.iter(|| step_theta(black_box(p), &params, dt).unwrap())
        });
    }
    g.finish();
}

fn extinction(c: &mut Criterion) {
    let mut g = c.benchmark_group("extinction");
    g.sample_size(10);
    let params = FlowParams::default();
    g.bench_function("circle_128", |b| {
        b.iter(|| {
            let init = State::Curve(Preset::Circle { radius: 1.0 }.curve(128).unwrap());
            evolve(init, &params).unwrap().t_est
        })
    });
    g.finish();
}

fn concentration(c: &mut Criterion) {
    let mut g = c.benchmark_group("critical_radius");
    g.sample_size(10);
    let curve = Preset::Flower { radius: 1.0, amp: 0.3, modes: 3 }.curve(256).unwrap();
    for (name, opts) in [("plane", SearchOptions::default()), ("on_curve", SearchOptions::on_curve())] {
        g.bench_function(name, |b| b.iter(|| critical_radius(black_box(&curve), 1.0, &opts).unwrap().radius));
    }
    g.finish();
}

criterion_group!(benches, steps, extinction, concentration);
criterion_main!(benches);
