use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cherednik::par::Exec;
use cherednik::pbw::{DeformationGl, GlAlgebra};
use cherednik::poisson::verify_center_gl;
use cherednik::sp::{verify_center_sp, DeformationSp};
use cherednik::verma::{gram_in, QPlusElement, Verma};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn gram(c: &mut Criterion) {
    let mut group = c.benchmark_group("gram_assembly");
    group.sample_size(10);
    let d = DeformationGl::symbolic(2, 1);
    let nu = QPlusElement::new(vec![2, 2]).unwrap();
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "gl2_nu22"), &exec, |b, &exec| {
            // A fresh module each iteration so the action cache starts cold.
            b.iter(|| {
                let alg = GlAlgebra::new(d.clone());
                let verma = Verma::symbolic(&alg);
                gram_in(&verma, &nu, exec).tau()
            })
        });
    }
    group.finish();
}

fn centers(c: &mut Criterion) {
    let mut group = c.benchmark_group("center_verification");
    group.sample_size(10);
    let gl = DeformationGl::symbolic(3, 1);
    let sp = DeformationSp::symbolic(2, 1);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "gl3"), &exec, |b, &exec| b.iter(|| verify_center_gl(&gl, exec).unwrap().passed()));
        group.bench_with_input(BenchmarkId::new(name, "sp4"), &exec, |b, &exec| b.iter(|| verify_center_sp(&sp, exec).unwrap().passed()));
    }
    group.finish();
}

criterion_group!(benches, gram, centers);
criterion_main!(benches);
