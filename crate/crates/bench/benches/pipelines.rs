//! Benchmarks for the three cost centers: stabilizer-chain construction,
//! subgroup-lattice enumeration, and the full bound pipeline.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use nilpotwo_core::{
    main_pipeline, parse_family, Caps, GeneratedGroup, SeedState, TableGroup,
};

fn realize(expr: &str) -> GeneratedGroup {
    parse_family(expr)
        .expect("family parses")
        .realize()
        .expect("family realizes")
}

fn chain_construction(c: &mut Criterion) {
    let spec = parse_family("dixon_tower(2)").expect("family parses");
    c.bench_function("chain_build_dixon_tower_2", |b| {
        b.iter(|| {
            let group = spec.realize().expect("tower realizes");
            black_box(group.order())
        })
    });
}

fn lattice_enumeration(c: &mut Criterion) {
    let table = TableGroup::from_generated(&realize("extraspecial(2,5)"), 64)
        .expect("order 32 fits in a table");
    c.bench_function("subgroup_lattice_extraspecial_2_5", |b| {
        b.iter(|| black_box(table.enumerate_subgroups(64).expect("lattice fits").len()))
    });
    let sym4 = TableGroup::from_generated(&realize("symmetric(4)"), 64)
        .expect("order 24 fits in a table");
    c.bench_function("subgroup_lattice_symmetric_4", |b| {
        b.iter(|| black_box(sym4.enumerate_subgroups(64).expect("lattice fits").len()))
    });
}

fn bound_pipeline(c: &mut Criterion) {
    let caps = Caps::default();
    let solvable = realize("symmetric(4)");
    c.bench_function("pipeline_symmetric_4", |b| {
        b.iter(|| {
            let mut rng = SeedState::from_seed(0).derive("bench");
            black_box(main_pipeline(&solvable, &caps, &mut rng).expect("pipeline"))
        })
    });

    let simple = realize("alternating(8)");
    let mut slow = c.benchmark_group("large");
    slow.sample_size(10);
    slow.bench_function("pipeline_alternating_8", |b| {
        b.iter(|| {
            let mut rng = SeedState::from_seed(0).derive("bench");
            black_box(main_pipeline(&simple, &caps, &mut rng).expect("pipeline"))
        })
    });
    slow.finish();
}

criterion_group!(
    benches,
    chain_construction,
    lattice_enumeration,
    bound_pipeline
);
criterion_main!(benches);
