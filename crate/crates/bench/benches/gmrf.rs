use criterion::{criterion_group, criterion_main, Criterion};
use rand::Rng;

use gdm_bench::desk_world;
use gdm_core::gas::{GasMap, GasObservation};
use gdm_core::rng::stream;

fn bench_solve(c: &mut Criterion) {
    let (sc, grid, _field) = desk_world();
    let mut gas = GasMap::new(sc.gmrf).unwrap();
    gas.rebuild_structure(&grid);
    let free = gas.free_cells().to_vec();
    let mut rng = stream(2, "bench-gmrf", 0);
    for k in 0..200 {
        let cell = free[rng.gen_range(0..free.len())];
        gas.add_observation(GasObservation {
            position: grid.lattice().cell_center(cell),
            concentration: rng.gen_range(0.0..50.0),
            timestamp: k as f64 * 0.5,
        })
        .unwrap();
    }
    c.bench_function("gmrf_solve_desk_200obs", |b| {
        b.iter(|| gas.solve_iterative(100.0, 1e-8, 50_000).unwrap())
    });
    let post = gas.solve_iterative(100.0, 1e-8, 50_000).unwrap();
    c.bench_function("gmrf_means_refresh_desk_200obs", |b| {
        b.iter(|| gas.solve_means_only(100.0, 1e-8, 50_000, &post).unwrap())
    });
}

criterion_group!(benches, bench_solve);
criterion_main!(benches);
