use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use toric_bench::{full_ring, ideal, p2_diagram, ray_multiple};
use toric_core::charts::{chart_monoid, compare_cox_toric};
use toric_core::cohomology::{serre_grothendieck_report, sheaf_cohomology, twist_grid};
use toric_core::fan::{examples, generate_random_fan};
use toric_core::graded::{irrelevant_ideal, saturate};
use toric_core::picard::{build_diagram, picard_group, picard_via_polytopes};

fn picard(c: &mut Criterion) {
    let f = examples::ex_3_290();
    c.bench_function("picard/intersection ex-3.290", |b| {
        b.iter(|| picard_group(&build_diagram(black_box(&f))))
    });
    let g = generate_random_fan(7, 3, 7);
    let d = build_diagram(&g);
    c.bench_function("picard/polytopes random 3d", |b| b.iter(|| picard_via_polytopes(black_box(&d))));
}

fn charts(c: &mut Criterion) {
    let d = build_diagram(&examples::ex_3_290());
    c.bench_function("charts/chart monoid", |b| b.iter(|| chart_monoid(black_box(&d), &[0, 2]).unwrap()));
    let h = build_diagram(&examples::hirzebruch(2));
    c.bench_function("charts/cox vs toric hirzebruch", |b| {
        b.iter(|| compare_cox_toric(black_box(&h)).unwrap())
    });
}

fn saturation(c: &mut Criterion) {
    let r = full_ring(&examples::p2());
    let irr = irrelevant_ideal(&r).unwrap();
    let n = ideal(&r, &["Z_0^3*Z_1", "Z_0^2*Z_2^2", "Z_0*Z_1^2*Z_2", "Z_1^4 - Z_0*Z_2^3"]);
    c.bench_function("graded/saturate p2", |b| b.iter(|| saturate(black_box(&n), &irr).unwrap()));
}

fn cohomology(c: &mut Criterion) {
    let d = p2_diagram();
    let zero = [d.group().zero()];
    let tw = ray_multiple(&d, -6);
    c.bench_function("cohomology/p2 O(-6)", |b| {
        b.iter(|| sheaf_cohomology(black_box(&d), &zero, &tw, None).unwrap())
    });
    let h = build_diagram(&examples::hirzebruch(2));
    let twists = twist_grid(&h, -2, 2);
    let shifts = [h.group().zero()];
    c.bench_function("cohomology/sheaf-local hirzebruch grid", |b| {
        b.iter(|| serre_grothendieck_report(black_box(&h), &shifts, &twists, None).unwrap())
    });
}

criterion_group!(benches, picard, charts, saturation, cohomology);
criterion_main!(benches);
