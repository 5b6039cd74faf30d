use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use esgame_core::games::copycat;
use esgame_core::interaction::compose;
use esgame_core::limits::Limits;
use esgame_core::{par, Esp, EventStructure, Polarity};

/// `n` events in pairs `a_i ≤ b_i`, neighbouring pairs in conflict on their tops.
fn ladder(n: usize) -> Esp {
    let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let prec: Vec<(&str, &str)> = (0..n / 2).map(|i| (refs[2 * i], refs[2 * i + 1])).collect();
    let clash: Vec<[&str; 2]> = (1..n / 2)
        .step_by(2)
        .map(|i| [refs[2 * i - 1], refs[2 * i + 1]])
        .collect();
    let clash_refs: Vec<&[&str]> = clash.iter().map(|c| &c[..]).collect();
    let s = EventStructure::from_lists(&refs, &prec, &clash_refs).unwrap();
    let pol = (0..n)
        .map(|i| {
            if i % 2 == 0 {
                Polarity::Neg
            } else {
                Polarity::Pos
            }
        })
        .collect();
    Esp::new(s, pol).unwrap()
}

fn modes() -> [(&'static str, bool); 2] {
    [("parallel", true), ("sequential", false)]
}

fn configurations(c: &mut Criterion) {
    let a = ladder(16);
    let mut group = c.benchmark_group("configurations");
    for (name, on) in modes() {
        group.bench_function(BenchmarkId::new(name, a.len()), |b| {
            par::set_parallel(on);
            b.iter(|| a.configurations().unwrap().len());
        });
    }
    group.finish();
}

fn composition(c: &mut Criterion) {
    Limits::set_override(Some(Limits {
        max_events: 32,
        ..Limits::default()
    }));
    let a = ladder(6);
    let cc = copycat(&a).unwrap();
    let mut group = c.benchmark_group("compose_copycats");
    group.sample_size(20);
    for (name, on) in modes() {
        group.bench_function(BenchmarkId::new(name, a.len()), |b| {
            par::set_parallel(on);
            b.iter(|| compose(&cc, &cc).unwrap().strategy().inner().len());
        });
    }
    group.finish();
    par::set_parallel(true);
}

criterion_group!(benches, configurations, composition);
criterion_main!(benches);
