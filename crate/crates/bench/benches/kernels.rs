use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use sepinv::graphs;
use sepinv::multisym::{self, TauVector};
use sepinv::{FieldSpec, Group, Mat, OrbitDecomp, Poly, SigmaSpec, DEFAULT_ORDER_CAP, DEFAULT_POINT_CAP};

fn field_mul(c: &mut Criterion) {
    let spec = FieldSpec::of_order(27).unwrap();
    let elems: Vec<_> = spec.elements().collect();
    c.bench_function("gf27_mul_all_pairs", |b| {
        b.iter(|| {
            let mut acc = spec.one();
            for &x in &elems {
                for &y in &elems {
                    acc = spec.add(acc, spec.mul(x, y));
                }
            }
            black_box(acc)
        })
    });
}

fn poly_act(c: &mut Criterion) {
    let spec = FieldSpec::of_order(3).unwrap();
    let f = Poly::parse("x1^2*x2 + x2*x3^2 + x1*x2*x3 + x3", 3, &spec).unwrap();
    let g = Mat::permutation(&spec, &[1, 2, 0]);
    c.bench_function("poly_act_cycle_f3", |b| b.iter(|| black_box(f.act(&g).unwrap())));
}

fn orbits(c: &mut Criterion) {
    let spec = FieldSpec::of_order(3).unwrap();
    let group = Group::symmetric(&spec, 5, DEFAULT_ORDER_CAP).unwrap();
    c.bench_function("orbits_sym5_f3", |b| b.iter(|| black_box(OrbitDecomp::new(&group, DEFAULT_POINT_CAP).unwrap().k())));
}

fn multisym_kernels(c: &mut Criterion) {
    let sigma = SigmaSpec::new(3, vec![1, 1]);
    let pt = multisym::e_tau(&TauVector(vec![2, 1, 3, 2]), 2, 8).unwrap();
    c.bench_function("sigma_eval_gf2", |b| b.iter(|| black_box(multisym::sigma_eval(&sigma, &pt).unwrap())));
    c.bench_function("verify_s_nm_8_2", |b| b.iter(|| black_box(multisym::verify_s_nm(8, 2).unwrap().separating)));
}

fn graphs_report(c: &mut Criterion) {
    let mut g = c.benchmark_group("graphs");
    g.sample_size(10);
    g.bench_function("report_n4", |b| b.iter(|| black_box(graphs::theorem_report(4).unwrap().all_pass())));
    g.finish();
}

criterion_group!(benches, field_mul, poly_act, orbits, multisym_kernels, graphs_report);
criterion_main!(benches);
