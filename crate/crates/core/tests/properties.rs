use proptest::prelude::*;

use scm_core::embedding::EmbeddingSpace;
use scm_core::evaluate_lexicon;
use scm_core::lexicon::{
    read_lexicon, write_lexicon, Facet, LexiconEntry, Polarity, Tier, ValidationSet,
};
use scm_core::polar::{classify_point, PolarPoint, PolarSubspace};
use scm_core::stereoset::extract_fill_word;

const D: usize = 6;

fn vec_d() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0f64..5.0, D)
}

fn subspace() -> impl Strategy<Value = PolarSubspace> {
    (vec_d(), vec_d()).prop_filter_map("near-parallel", |(a, b)| {
        PolarSubspace::from_directions(a, b).ok()
    })
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #[test]
    fn projection_is_linear(sub in subspace(), u in vec_d(), v in vec_d(), a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let mix: Vec<f64> = u.iter().zip(&v).map(|(x, y)| a * x + b * y).collect();
        let (pu, pv, pm) = (sub.project(&u).unwrap(), sub.project(&v).unwrap(), sub.project(&mix).unwrap());
        let cond = {
            let g = sub.gram_inverse();
            1.0 + g[0][0].abs() + g[0][1].abs() + g[1][1].abs()
        };
        prop_assert!(close(pm.warmth, a * pu.warmth + b * pv.warmth, 1e-9 * cond));
        prop_assert!(close(pm.competence, a * pu.competence + b * pv.competence, 1e-9 * cond));
    }

    #[test]
    fn reconstruction_round_trips(sub in subspace(), w in -4.0f64..4.0, c in -4.0f64..4.0) {
        let v = sub.reconstruct(PolarPoint::new(w, c));
        let p = sub.project(&v).unwrap();
        let g = sub.gram_inverse();
        let cond = 1.0 + (g[0][0].abs() + g[0][1].abs() + g[1][1].abs()) * 100.0;
        prop_assert!(close(p.warmth, w, 1e-9 * cond));
        prop_assert!(close(p.competence, c, 1e-9 * cond));
    }

    #[test]
    fn classification_is_scale_invariant(w in -10.0f64..10.0, c in -10.0f64..10.0, k in 0.01f64..100.0) {
        let a = classify_point(PolarPoint::new(w, c));
        let b = classify_point(PolarPoint::new(k * w, k * c));
        prop_assert_eq!(a.quadrant, b.quadrant);
        if !a.tie && !b.tie {
            prop_assert_eq!(a.salient, b.salient);
        }
    }

    #[test]
    fn mean_ignores_order(vs in prop::collection::vec(vec_d(), 1..8), seed in any::<u64>()) {
        let vs: Vec<Vec<f64>> = vs.into_iter().filter(|v| v.iter().any(|x| *x != 0.0)).collect();
        prop_assume!(!vs.is_empty());
        let words: Vec<String> = (0..vs.len()).map(|i| format!("w{i}")).collect();
        let space = EmbeddingSpace::from_vectors("p", D, words.iter().cloned().zip(vs)).unwrap();
        let mut shuffled = words.clone();
        let n = shuffled.len();
        shuffled.rotate_left((seed as usize) % n);
        shuffled.reverse();
        let a = space.mean_vector(&words).unwrap().vector;
        let b = space.mean_vector(&shuffled).unwrap().vector;
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn fill_word_recovered(
        prefix in prop::collection::vec("[a-z]{1,8}", 0..5),
        suffix in prop::collection::vec("[a-z]{1,8}", 0..5),
        fill in "[a-z]{1,10}",
    ) {
        let join = |ws: &[String]| ws.join(" ");
        let ctx = [join(&prefix), "BLANK".to_owned(), join(&suffix)].join(" ");
        let sentence = [join(&prefix), fill.clone(), join(&suffix)].join(" ");
        prop_assert_eq!(extract_fill_word(&ctx, &sentence).unwrap(), fill);
    }

    #[test]
    fn lexicon_round_trips(entries in prop::collection::btree_map(
        "[a-z]{2,10}",
        (0usize..4, any::<bool>(), any::<bool>()),
        1..30,
    )) {
        let facets = [Facet::Sociability, Facet::Morality, Facet::Agency, Facet::Ability];
        let entries: Vec<LexiconEntry> = entries
            .into_iter()
            .map(|(word, (f, pos, seed))| LexiconEntry {
                word,
                dimension: facets[f].dimension(),
                facet: facets[f],
                polarity: if pos { Polarity::Positive } else { Polarity::Negative },
                tier: if seed { Tier::Seed } else { Tier::Extended },
            })
            .collect();
        let mut buf = Vec::new();
        write_lexicon(&mut buf, &entries).unwrap();
        let parsed = read_lexicon(buf.as_slice()).unwrap();
        prop_assert!(parsed.warnings.is_empty());
        prop_assert_eq!(parsed.entries, entries);
    }

    #[test]
    fn accuracy_flips_and_ignores_order(
        coords in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0, any::<bool>(), 0usize..4), 2..40),
    ) {
        let facets = [Facet::Sociability, Facet::Morality, Facet::Agency, Facet::Ability];
        let mut has = [false; 2];
        for (_, _, _, f) in &coords {
            has[usize::from(*f >= 2)] = true;
        }
        prop_assume!(has[0] && has[1]);
        let words: Vec<String> = (0..coords.len()).map(|i| format!("w{i}")).collect();
        let space = EmbeddingSpace::from_vectors(
            "acc",
            3,
            coords.iter().zip(&words).map(|((w, c, _, _), word)| (word.clone(), vec![*w, *c, 0.5])),
        )
        .unwrap();
        let sub = PolarSubspace::from_directions(vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]).unwrap();
        let entries: Vec<LexiconEntry> = coords
            .iter()
            .zip(&words)
            .map(|((_, _, pos, f), word)| LexiconEntry {
                word: word.clone(),
                dimension: facets[*f].dimension(),
                facet: facets[*f],
                polarity: if *pos { Polarity::Positive } else { Polarity::Negative },
                tier: Tier::Extended,
            })
            .collect();
        let set = |entries: Vec<LexiconEntry>| ValidationSet { entries, ..Default::default() };

        let base = evaluate_lexicon(&sub, &space, &set(entries.clone())).unwrap();
        let flipped: Vec<LexiconEntry> = entries
            .iter()
            .cloned()
            .map(|mut e| {
                e.polarity = e.polarity.flipped();
                e
            })
            .collect();
        let inv = evaluate_lexicon(&sub, &space, &set(flipped)).unwrap();
        prop_assert!((inv.warmth_accuracy - (100.0 - base.warmth_accuracy)).abs() < 1e-9);
        prop_assert!((inv.competence_accuracy - (100.0 - base.competence_accuracy)).abs() < 1e-9);

        let mut reversed = entries;
        reversed.reverse();
        let again = evaluate_lexicon(&sub, &space, &set(reversed)).unwrap();
        prop_assert_eq!(again.warmth_accuracy, base.warmth_accuracy);
        prop_assert_eq!(again.competence_accuracy, base.competence_accuracy);
    }
}
