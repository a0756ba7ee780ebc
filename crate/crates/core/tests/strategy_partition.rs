use std::collections::BTreeMap;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use scm_core::strategy::{classify_pair, StrategyLabel};
use scm_core::{AntonymResource, EmbeddingSpace, PolarSubspace};

fn tally(flip: bool) -> BTreeMap<StrategyLabel, usize> {
    let sign = if flip { -1.0 } else { 1.0 };
    let mut rng = StdRng::seed_from_u64(2021);
    let n = 10_000;
    let mut entries = Vec::with_capacity(2 * n);
    for i in 0..n {
        for side in ["s", "a"] {
            let (w, c): (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            entries.push((format!("{side}{i}"), vec![sign * w, sign * c, 0.3]));
        }
    }
    let space = EmbeddingSpace::from_vectors("pairs", 3, entries).unwrap();
    let sub = PolarSubspace::from_directions(vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]).unwrap();
    let res = AntonymResource::default();
    let mut counts = BTreeMap::new();
    for i in 0..n {
        let pair = classify_pair(&res, &space, &sub, &format!("s{i}"), &format!("a{i}")).unwrap();
        *counts.entry(pair.label).or_insert(0) += 1;
    }
    counts
}

#[test]
fn every_pair_gets_one_geometric_label() {
    let start = Instant::now();
    let counts = tally(false);
    assert!(start.elapsed().as_secs_f64() < 2.0);
    assert!(!counts.contains_key(&StrategyLabel::DirectAntonym));
    assert_eq!(counts.values().sum::<usize>(), 10_000);
    assert_eq!(counts.len(), 4);
    assert_eq!(counts, tally(true));
}
