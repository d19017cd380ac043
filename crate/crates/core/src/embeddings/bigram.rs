use std::collections::{BTreeMap, HashMap};

/// Maps a token pair to its merged token `a_b`.
pub type BigramTable = BTreeMap<(String, String), String>;

/// Phrase score `(count(ab) − min_count) · N / (count(a) · count(b))`, where
/// `N` is the total number of tokens.
pub fn bigram_score(pair_count: u64, count_a: u64, count_b: u64, total: u64, min_count: u32) -> f64 {
    (pair_count as f64 - min_count as f64) * total as f64 / (count_a as f64 * count_b as f64)
}

/// Finds adjacent token pairs whose phrase score exceeds `threshold`.
///
/// Merging is a single greedy left-to-right pass (see [`apply_bigrams`]).
/// Pairs whose merged form would occur fewer than `min_count` times after
/// merging are dropped, so every merged token survives vocabulary
/// filtering.
pub fn detect_bigrams(sentences: &[Vec<String>], threshold: f64, min_count: u32) -> BigramTable {
    let mut unigrams: HashMap<&str, u64> = HashMap::new();
    let mut pairs: HashMap<(&str, &str), u64> = HashMap::new();
    let mut total = 0u64;
    for s in sentences {
        total += s.len() as u64;
        for t in s {
            *unigrams.entry(t).or_default() += 1;
        }
        for w in s.windows(2) {
            *pairs.entry((&w[0], &w[1])).or_default() += 1;
        }
    }
    let mut table: BigramTable = pairs
        .into_iter()
        .filter(|&((a, b), c)| bigram_score(c, unigrams[a], unigrams[b], total, min_count) > threshold)
        .map(|((a, b), _)| ((a.to_string(), b.to_string()), format!("{a}_{b}")))
        .collect();

    // Overlapping candidates ("a b c" with both "a b" and "b c") can starve
    // each other; drop entries that no longer reach min_count until stable.
    loop {
        let mut merged_counts: HashMap<&str, u64> = HashMap::new();
        for s in sentences {
            for t in apply_bigrams(s, &table) {
                if t.contains('_') {
                    if let Some(m) = table.values().find(|m| **m == t) {
                        *merged_counts.entry(m.as_str()).or_default() += 1;
                    }
                }
            }
        }
        let before = table.len();
        let keep: Vec<(String, String)> = table
            .iter()
            .filter(|(_, m)| merged_counts.get(m.as_str()).copied().unwrap_or(0) >= min_count as u64)
            .map(|(k, _)| k.clone())
            .collect();
        table.retain(|k, _| keep.contains(k));
        if table.len() == before {
            return table;
        }
    }
}

/// Greedy left-to-right merge of known pairs; merged tokens are not merged
/// again.
pub fn apply_bigrams(sentence: &[String], table: &BigramTable) -> Vec<String> {
    let mut out = Vec::with_capacity(sentence.len());
    let mut i = 0;
    while i < sentence.len() {
        if i + 1 < sentence.len() {
            if let Some(m) = table.get(&(sentence[i].clone(), sentence[i + 1].clone())) {
                out.push(m.clone());
                i += 2;
                continue;
            }
        }
        out.push(sentence[i].clone());
        i += 1;
    }
    out
}
