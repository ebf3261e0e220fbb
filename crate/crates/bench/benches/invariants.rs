use std::hint::black_box;

use alexandrite_core::complexes::random::{item_rng, random_complex, RandomComplexParams};
use alexandrite_core::complexes::{alexander_invariant, homology, reidemeister_torsion, Convention};
use alexandrite_core::corpus;
use alexandrite_core::knots::KnotPipeline;
use alexandrite_core::linalg::smith_normal_form;
use alexandrite_core::mapping_torus::{random_semisimple, theorem35, MonodromyInput};
use alexandrite_core::numeric::NumericContext;
use criterion::{criterion_group, criterion_main, Criterion};

fn knots(c: &mut Criterion) {
    let mut g = c.benchmark_group("twisted_alexander");
    for (knot, rep) in [("trefoil", "trivial"), ("figure_eight", "d5"), ("5_2", "d7_twisted")] {
        let p = corpus::knot(knot).unwrap();
        let r = corpus::rep(rep).unwrap();
        g.bench_function(format!("{knot}/{rep}"), |b| {
            b.iter(|| KnotPipeline::new(black_box(&p), black_box(&r)).unwrap().default_alexander().unwrap())
        });
    }
    g.finish();

    let kp = KnotPipeline::new(&corpus::knot("5_2").unwrap(), &corpus::rep("d7").unwrap()).unwrap();
    c.bench_function("dual_torsion/5_2/d7", |b| b.iter(|| kp.theorem41().unwrap()));
}

fn complexes(c: &mut Criterion) {
    let params = RandomComplexParams::default();
    let corpus: Vec<_> = (0..16).map(|i| random_complex(&mut item_rng(42, i), &params)).collect();
    c.bench_function("torsion/random16", |b| {
        b.iter(|| corpus.iter().map(|x| reidemeister_torsion(x).unwrap().0).count())
    });
    c.bench_function("alexander_invariant/random16", |b| {
        b.iter(|| corpus.iter().map(|x| alexander_invariant(x, Convention::Chain).unwrap()).count())
    });
    let big = corpus.iter().max_by_key(|x| x.ranks().iter().sum::<usize>()).unwrap();
    c.bench_function("homology/largest", |b| b.iter(|| homology(black_box(big))));
    let m = big.boundaries().iter().max_by_key(|m| m.rows() * m.cols()).unwrap().clone();
    c.bench_function("smith_normal_form/largest", |b| b.iter(|| smith_normal_form(black_box(&m))));
}

fn monodromy(c: &mut Criterion) {
    let inputs: Vec<_> = (0..8)
        .map(|i| MonodromyInput::new(random_semisimple(&mut item_rng(5, i), 4, &[1, 3, 4]), true).unwrap())
        .collect();
    c.bench_function("mapping_torus/random8", |b| {
        b.iter(|| {
            let mut ctx = NumericContext::new(128);
            inputs.iter().map(|m| theorem35(m, &mut ctx).unwrap().0.beta).sum::<usize>()
        })
    });
}

criterion_group!(benches, knots, complexes, monodromy);
criterion_main!(benches);
