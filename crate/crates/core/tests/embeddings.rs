mod common;

use std::collections::HashMap;

use procmap_core::embeddings::{
    apply_bigrams, bigram_score, cosine_distance, detect_bigrams, embed_text, read_model, train, write_model,
    EmbeddingError, EmbeddingModel, Hyperparameters, DIMENSION,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use common::*;

fn tokens(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_string).collect()
}

fn hp(min_count: u32) -> Hyperparameters {
    Hyperparameters { min_count, ..Hyperparameters::default() }
}

const TOPIC_A: &[&str] = &["beat", "butter", "sugar", "cream", "mixer", "fluffy", "eggs", "vanilla"];
const TOPIC_B: &[&str] = &["bake", "oven", "minutes", "golden", "toothpick", "center", "rack", "cool"];

fn topic_corpus(n: usize, seed: u64) -> Vec<Vec<String>> {
    let mut rng = rng(seed);
    (0..n)
        .map(|i| {
            let topic = if i % 2 == 0 { TOPIC_A } else { TOPIC_B };
            let len = rng.gen_range(5..9);
            (0..len).map(|_| topic.choose(&mut rng).unwrap().to_string()).collect()
        })
        .collect()
}

fn similarity(m: &EmbeddingModel, a: &str, b: &str) -> f64 {
    1.0 - cosine_distance(m.vector(a).unwrap(), m.vector(b).unwrap())
}

#[test]
fn topics_separate() {
    let model = train(&topic_corpus(1000, 3), &hp(5)).unwrap();
    let mean = |pairs: Vec<(&str, &str)>| {
        pairs.iter().map(|&(a, b)| similarity(&model, a, b)).sum::<f64>() / pairs.len() as f64
    };
    let within = |t: &[&'static str]| -> Vec<(&'static str, &'static str)> {
        t.iter().enumerate().flat_map(|(i, a)| t[i + 1..].iter().map(move |b| (*a, *b))).collect()
    };
    let intra = mean([within(TOPIC_A), within(TOPIC_B)].concat());
    let inter = mean(TOPIC_A.iter().flat_map(|a| TOPIC_B.iter().map(move |b| (*a, *b))).collect());
    assert!(intra > inter, "intra {intra} <= inter {inter}");
}

#[test]
fn single_token_vocabulary() {
    let model = train(&[tokens("stir stir"), tokens("stir")], &hp(1)).unwrap();
    assert_eq!(model.vocabulary, ["stir"]);
    assert_eq!(model.vectors.len(), DIMENSION);
    assert!((similarity(&model, "stir", "stir") - 1.0).abs() < 1e-6);
}

#[test]
fn empty_vocabulary_is_an_error() {
    assert!(matches!(train(&[tokens("rare word")], &hp(5)), Err(EmbeddingError::EmptyVocabulary)));
    assert!(matches!(train(&[], &hp(1)), Err(EmbeddingError::EmptyVocabulary)));
}

#[test]
fn training_is_deterministic_and_respects_min_count() {
    let mut corpus = topic_corpus(200, 9);
    corpus.push(tokens("seldom seen words"));
    let a = train(&corpus, &hp(5)).unwrap();
    let b = train(&corpus, &hp(5)).unwrap();
    assert_eq!(a.vocabulary, b.vocabulary);
    assert_eq!(a.vectors, b.vectors);
    assert!(a.vocabulary.iter().all(|t| !["seldom", "seen", "words"].contains(&t.as_str())));
    let mut counts: HashMap<&str, u64> = HashMap::new();
    for t in corpus.iter().flatten() {
        *counts.entry(t).or_default() += 1;
    }
    for (t, &c) in a.vocabulary.iter().zip(&a.counts) {
        assert_eq!(counts[t.as_str()], c);
        assert!(c >= 5);
    }
    assert!(a.vectors.iter().all(|x| x.is_finite()));
    let different_seed = train(&corpus, &Hyperparameters { seed: 2, ..hp(5) }).unwrap();
    assert_ne!(a.vectors, different_seed.vectors);
}

#[test]
fn model_round_trip() {
    let model = train(&topic_corpus(100, 1), &hp(5)).unwrap();
    let mut buf = Vec::new();
    write_model(&model, &mut buf).unwrap();
    let back = read_model(buf.as_slice()).unwrap();
    assert_eq!(back.vocabulary, model.vocabulary);
    assert_eq!(back.counts, model.counts);
    assert_eq!(back.vectors, model.vectors);
    assert_eq!(back.bigrams, model.bigrams);
    assert_eq!(back.hyperparameters, model.hyperparameters);
    assert!(matches!(read_model(&b"not a model"[..]), Err(EmbeddingError::Format(_))));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.bin");
    model.save(&path).unwrap();
    assert_eq!(EmbeddingModel::load(&path).unwrap().vectors, model.vectors);
}

#[test]
fn baking_powder_example() {
    // N = 1000 tokens; "baking" and "powder" occur 50 times, always adjacent.
    let mut corpus: Vec<Vec<String>> = (0..50).map(|_| tokens("baking powder")).collect();
    let fillers = ["stir", "mix", "fold", "bake", "cool", "serve", "add", "pour", "whisk", "sift"];
    for i in 0..900 {
        corpus.push(vec![fillers[i % fillers.len()].to_string()]);
    }
    assert_eq!(corpus.iter().map(Vec::len).sum::<usize>(), 1000);
    assert_eq!(bigram_score(50, 50, 50, 1000, 5), 18.0);
    let table = detect_bigrams(&corpus, 10.0, 5);
    assert_eq!(table.get(&("baking".into(), "powder".into())).map(String::as_str), Some("baking_powder"));
    assert_eq!(table.len(), 1);

    let model = train(&corpus, &hp(5)).unwrap();
    assert!(model.index_of("baking_powder").is_some());
    assert_eq!(embed_text("Add the baking powder", &model).vector, embed_text("baking powder add", &model).vector);
}

#[test]
fn rare_and_empty_bigrams() {
    assert!(bigram_score(1, 1, 1, 100, 5) <= 0.0);
    assert!(detect_bigrams(&[tokens("once upon")], 10.0, 5).is_empty());
    assert!(detect_bigrams(&[], 10.0, 5).is_empty());
}

#[test]
fn embedding_is_the_mean_of_known_vectors() {
    let model = train(&topic_corpus(200, 4), &hp(5)).unwrap();
    let one = embed_text("butter", &model);
    assert_eq!(one.vector, model.vector("butter").unwrap());
    let two = embed_text("butter oven", &model);
    let (a, b) = (model.vector("butter").unwrap(), model.vector("oven").unwrap());
    for i in 0..DIMENSION {
        assert!((two.vector[i] - (a[i] + b[i]) / 2.0).abs() < 1e-6);
    }
    let oov = embed_text("xylophone zeppelin", &model);
    assert!(oov.out_of_vocabulary && oov.vector.iter().all(|&x| x == 0.0));
    assert_eq!(cosine_distance(&oov.vector, &one.vector), 2.0);
}

#[test]
fn cosine_examples() {
    let v = [1.0, 2.0, 3.0];
    assert!(cosine_distance(&v, &v).abs() < 1e-12);
    assert!((cosine_distance(&[1.0, 0.0], &[0.0, 1.0]) - 1.0).abs() < 1e-12);
    assert!((cosine_distance(&[1.0, 0.0], &[-1.0, 0.0]) - 2.0).abs() < 1e-12);
}

fn word_sentences() -> impl Strategy<Value = Vec<Vec<String>>> {
    prop::collection::vec(
        prop::collection::vec(prop::sample::select(&["a", "b", "c", "d", "e"][..]).prop_map(String::from), 0..10),
        0..40,
    )
}

proptest! {
    #[test]
    fn cosine_symmetric_and_bounded(
        a in prop::collection::vec(-5.0f32..5.0, 8),
        b in prop::collection::vec(-5.0f32..5.0, 8),
    ) {
        let d = cosine_distance(&a, &b);
        prop_assert_eq!(d, cosine_distance(&b, &a));
        prop_assert!((0.0..=2.0).contains(&d));
        if a.iter().any(|&x| x != 0.0) {
            prop_assert!(cosine_distance(&a, &a) < 1e-6);
        }
    }

    #[test]
    fn bigram_entries_match_brute_force_scores(sentences in word_sentences(), threshold in 0.0f64..5.0, min_count in 1u32..4) {
        let table = detect_bigrams(&sentences, threshold, min_count);
        let total: usize = sentences.iter().map(Vec::len).sum();
        let count = |t: &str| sentences.iter().flatten().filter(|x| *x == t).count() as u64;
        for ((a, b), merged) in &table {
            prop_assert_eq!(merged, &format!("{a}_{b}"));
            let pair = sentences.iter().flat_map(|s| s.windows(2)).filter(|w| &w[0] == a && &w[1] == b).count() as u64;
            prop_assert!(bigram_score(pair, count(a), count(b), total as u64, min_count) > threshold);
            let merged_count = sentences.iter().flat_map(|s| apply_bigrams(s, &table)).filter(|t| t == merged).count();
            prop_assert!(merged_count >= min_count as usize);
        }
    }

    #[test]
    fn merging_is_single_pass(sentences in word_sentences(), threshold in 0.0f64..5.0) {
        let table = detect_bigrams(&sentences, threshold, 1);
        for s in &sentences {
            let once = apply_bigrams(s, &table);
            prop_assert_eq!(apply_bigrams(&once, &table), once.clone());
            prop_assert_eq!(once.join("_").replace('_', ""), s.concat());
        }
        let merged: Vec<Vec<String>> = sentences.iter().map(|s| apply_bigrams(s, &table)).collect();
        let again = detect_bigrams(&merged, threshold, 1);
        prop_assert!(again.keys().all(|k| !table.contains_key(k)));
    }
}
