use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use fvs_core::generators::{gen_disk_digraph, gen_grid, gen_random_subgrid};
use fvs_core::patterns::{count_noncrossing, generate, induced_pattern, simplify};
use fvs_core::planar_dp::{solve_dfvs_planar, solve_dfvs_planar_full};
use fvs_core::treewidth::{make_nice, solve_dfas_tw, solve_dfvs_tw, td_heuristic};

fn treewidth_dp(c: &mut Criterion) {
    let mut group = c.benchmark_group("treewidth_dp");
    for (r, cols) in [(2, 4), (3, 3), (3, 4)] {
        let inst = gen_grid(r, cols, 1).unwrap();
        let td = td_heuristic(&inst.graph);
        let nice = make_nice(&td, td.root());
        group.bench_with_input(BenchmarkId::new("dfvs_grid", format!("{r}x{cols}")), &nice, |b, nice| {
            b.iter(|| solve_dfvs_tw(black_box(&inst.graph), nice).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("dfas_grid", format!("{r}x{cols}")), &nice, |b, nice| {
            b.iter(|| solve_dfas_tw(black_box(&inst.graph), nice).unwrap())
        });
    }
    group.finish();
}

fn planar_dp(c: &mut Criterion) {
    let mut group = c.benchmark_group("planar_dp");
    for (r, cols) in [(3, 3), (4, 4), (5, 5), (6, 6)] {
        let inst = gen_grid(r, cols, 1).unwrap();
        group.bench_function(BenchmarkId::new("grid_given_sc", format!("{r}x{cols}")), |b| {
            b.iter(|| solve_dfvs_planar(black_box(&inst.graph), &inst.embedding, &inst.scd).unwrap())
        });
    }
    let sub = gen_random_subgrid(4, 5, true, 7).unwrap();
    group.bench_function("subgrid_full_pipeline", |b| {
        b.iter(|| solve_dfvs_planar_full(black_box(&sub.graph), &sub.embedding).unwrap())
    });
    group.finish();
}

fn patterns(c: &mut Criterion) {
    let d = gen_disk_digraph(8, 6, 0.7, 3);
    let t: Vec<usize> = (1..=6).collect();
    let p = induced_pattern(&d.graph, &t).unwrap();
    let r = p.as_relation();
    c.bench_function("patterns/generate_6", |b| b.iter(|| generate(black_box(&r))));
    c.bench_function("patterns/simplify_6", |b| b.iter(|| simplify(black_box(&r)).unwrap()));
    c.bench_function("patterns/count_noncrossing_60", |b| b.iter(|| count_noncrossing(black_box(60)).unwrap()));
}

criterion_group!(benches, treewidth_dp, planar_dp, patterns);
criterion_main!(benches);
