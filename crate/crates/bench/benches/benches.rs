//! Hot paths: closed-form classification, 4×4 Hermitian spectra, the
//! Schwarz-defect search, block positivity, and Monte Carlo volumes.

use criterion::{black_box, criterion_group, criterion_main, Criterion, Throughput};

use qmap_core::classify::classify;
use qmap_core::linalg::eig_hermitian4;
use qmap_core::map::MapParams;
use qmap_core::oracle::{block_positivity, find_schwarz_violation, schwarz_defect, TracelessX};
use qmap_core::pauli::estimate_volumes;
use qmap_core::rng::SplitMix64;
use qmap_core::C64;

fn sample_maps(n: usize) -> Vec<MapParams> {
    let mut rng = SplitMix64::new(0xBE);
    (0..n)
        .map(|_| {
            MapParams::unital(
                rng.next_f64(),
                rng.next_f64(),
                rng.next_phase().scale(rng.next_f64()),
                rng.next_phase().scale(rng.next_f64()),
            )
        })
        .collect()
}

fn bench_classify(c: &mut Criterion) {
    let maps = sample_maps(1024);
    let mut group = c.benchmark_group("classify");
    group.throughput(Throughput::Elements(maps.len() as u64));
    group.bench_function("unital_batch", |b| {
        b.iter(|| {
            for p in &maps {
                black_box(classify(black_box(p)));
            }
        })
    });
    group.finish();
}

fn bench_choi_spectrum(c: &mut Criterion) {
    let maps = sample_maps(256);
    let chois: Vec<_> = maps.iter().map(|p| p.choi().m).collect();
    let mut group = c.benchmark_group("linalg");
    group.throughput(Throughput::Elements(chois.len() as u64));
    group.bench_function("eig_hermitian4_batch", |b| {
        b.iter(|| {
            for m in &chois {
                black_box(eig_hermitian4(black_box(m)).unwrap());
            }
        })
    });
    group.finish();
}

fn bench_defect(c: &mut Criterion) {
    let p = MapParams::choi_map();
    let x = TracelessX::new(0.1, C64::new(0.6, 0.2), C64::new(-0.3, 0.4));
    c.bench_function("schwarz_defect", |b| {
        b.iter(|| black_box(schwarz_defect(black_box(&p), black_box(&x))))
    });
}

fn bench_oracles(c: &mut Criterion) {
    let schwarz = MapParams::unital(0.7, 0.7, C64::new(0.8, 0.0), C64::ZERO);
    let violating = MapParams::unital(0.5, 0.5, C64::new(0.6, 0.0), C64::new(0.39, 0.0));
    let mut group = c.benchmark_group("oracle");
    group.sample_size(20);
    group.bench_function("violation_search_clean", |b| {
        b.iter(|| black_box(find_schwarz_violation(&schwarz, 10_000, 1).unwrap()))
    });
    group.bench_function("violation_search_found", |b| {
        b.iter(|| black_box(find_schwarz_violation(&violating, 10_000, 1).unwrap()))
    });
    let choi = violating.choi();
    group.bench_function("block_positivity", |b| {
        b.iter(|| black_box(block_positivity(&choi, 10_000, 1)))
    });
    group.finish();
}

fn bench_volumes(c: &mut Criterion) {
    let mut group = c.benchmark_group("pauli");
    group.sample_size(20);
    group.throughput(Throughput::Elements(1_000_000));
    group.bench_function("estimate_volumes_1e6", |b| {
        b.iter(|| black_box(estimate_volumes(1_000_000, 7)))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_classify,
    bench_choi_spectrum,
    bench_defect,
    bench_oracles,
    bench_volumes
);
criterion_main!(benches);
