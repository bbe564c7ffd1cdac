use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use nonsolv_bench::{catalog_group, symmetric_with_transposition};
use nonsolv_core::bounds::{load_table, psl2_bounds, Psl2Case};
use nonsolv_core::chartab::character_table;
use nonsolv_core::perm::named::{alternating, symmetric};
use nonsolv_core::search::{exhaustive_all_solvable, find_nonsolvable, Mode, SearchTask, SweepOptions};
use nonsolv_core::PermGroup;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn schreier_sims(c: &mut Criterion) {
    let sp = catalog_group("Sp", 6, 2);
    let gens = sp.perm.generators().to_vec();
    c.bench_function("bsgs Sp(6,2) on 63 points", |b| b.iter(|| PermGroup::new(gens.clone()).unwrap().order().clone()));
    let s12 = symmetric(12).generators().to_vec();
    c.bench_function("bsgs S12", |b| b.iter(|| PermGroup::new(s12.clone()).unwrap().order().clone()));
}

fn solvability(c: &mut Criterion) {
    let a8 = alternating(8);
    let s4 = symmetric(4);
    c.bench_function("is_solvable A8", |b| b.iter(|| a8.is_solvable()));
    c.bench_function("is_solvable S4", |b| b.iter(|| s4.is_solvable()));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    c.bench_function("random element A8", |b| b.iter(|| a8.random_element(&mut rng)));
}

fn searches(c: &mut Criterion) {
    let (s7, x) = symmetric_with_transposition(7);
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    g.bench_function("sweep S7 transpositions", |b| {
        b.iter(|| exhaustive_all_solvable(&s7, &x, Mode::TripleConjugate, &SweepOptions::default()).unwrap())
    });
    let sl = catalog_group("SL", 3, 3);
    let x13 = sl.perm.elements().into_iter().find(|p| p.order_u64() == Some(13)).unwrap();
    g.bench_function("involution partner PSL(3,3)", |b| {
        b.iter_batched(
            || SearchTask::new(sl.perm.clone(), x13.clone(), Mode::InvolutionPartner),
            |t| find_nonsolvable(&t).unwrap(),
            BatchSize::SmallInput,
        )
    });
    g.finish();
}

fn tables(c: &mut Criterion) {
    let s5 = symmetric(5);
    let mut g = c.benchmark_group("chartab");
    g.sample_size(10);
    g.bench_function("dixon S5", |b| b.iter(|| character_table("S5", &s5).unwrap()));
    g.finish();
}

fn bounds(c: &mut Criterion) {
    let e8 = load_table("E8").unwrap();
    c.bench_function("ppart E8 all rows q=5", |b| b.iter(|| e8.check_all(&[5]).unwrap()));
    c.bench_function("psl2 bounds q=32", |b| b.iter(|| psl2_bounds(32, Psl2Case::PDivQMinus).unwrap()));
}

criterion_group!(benches, schreier_sims, solvability, searches, tables, bounds);
criterion_main!(benches);
