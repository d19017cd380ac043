use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bigram::BigramTable;
use super::{EmbeddingError, EmbeddingModel, Hyperparameters, DIMENSION};

const MAX_EXP: f32 = 6.0;

fn sigmoid(x: f32) -> f32 {
    1.0 / (1.0 + (-x).exp())
}

/// Cumulative unigram^0.75 distribution for negative sampling.
struct NegativeTable {
    cumulative: Vec<f64>,
}

impl NegativeTable {
    fn new(counts: &[u64]) -> Self {
        let mut acc = 0.0;
        let cumulative = counts
            .iter()
            .map(|&c| {
                acc += (c as f64).powf(0.75);
                acc
            })
            .collect();
        NegativeTable { cumulative }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> usize {
        let total = *self.cumulative.last().expect("non-empty vocabulary");
        let x = rng.gen::<f64>() * total;
        self.cumulative.partition_point(|&c| c <= x).min(self.cumulative.len() - 1)
    }
}

/// Trains CBOW with negative sampling on already bigram-merged sentences.
///
/// Tokens below `min_count` are dropped from the vocabulary and removed from
/// the sentences before windows are formed. Training is single-threaded and
/// fully determined by `hp.seed`.
pub fn train_cbow(
    sentences: &[Vec<String>],
    hp: &Hyperparameters,
    bigrams: BigramTable,
) -> Result<EmbeddingModel, EmbeddingError> {
    let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
    for s in sentences {
        for t in s {
            *counts.entry(t).or_default() += 1;
        }
    }
    // Vocabulary order: descending count, then lexicographic.
    let mut vocab: Vec<(&str, u64)> = counts.into_iter().filter(|&(_, c)| c >= hp.min_count as u64).collect();
    if vocab.is_empty() {
        return Err(EmbeddingError::EmptyVocabulary);
    }
    vocab.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
    let index: BTreeMap<&str, usize> = vocab.iter().enumerate().map(|(i, (t, _))| (*t, i)).collect();
    let freqs: Vec<u64> = vocab.iter().map(|v| v.1).collect();

    let corpus: Vec<Vec<usize>> = sentences
        .iter()
        .map(|s| s.iter().filter_map(|t| index.get(t.as_str()).copied()).collect::<Vec<_>>())
        .filter(|s| !s.is_empty())
        .collect();

    let v = vocab.len();
    let mut rng = ChaCha8Rng::seed_from_u64(hp.seed);
    let mut syn0: Vec<f32> = (0..v * DIMENSION).map(|_| (rng.gen::<f32>() - 0.5) / DIMENSION as f32).collect();
    let mut syn1 = vec![0f32; v * DIMENSION];
    let negatives = NegativeTable::new(&freqs);

    let total_words: u64 = corpus.iter().map(|s| s.len() as u64).sum::<u64>() * hp.epochs as u64;
    let mut processed = 0u64;
    let mut neu1 = vec![0f32; DIMENSION];
    let mut neu1e = vec![0f32; DIMENSION];
    let mut context = Vec::with_capacity(2 * hp.window);

    for _ in 0..hp.epochs {
        for sentence in &corpus {
            for (pos, &target) in sentence.iter().enumerate() {
                let progress = processed as f32 / (total_words as f32 + 1.0);
                let alpha = (hp.learning_rate * (1.0 - progress)).max(hp.learning_rate * 1e-4);
                processed += 1;

                let reduced = if hp.window > 0 { rng.gen_range(0..hp.window) } else { 0 };
                let span = hp.window - reduced;
                context.clear();
                let lo = pos.saturating_sub(span);
                let hi = (pos + span).min(sentence.len() - 1);
                context.extend((lo..=hi).filter(|&c| c != pos).map(|c| sentence[c]));
                if context.is_empty() {
                    continue;
                }

                neu1.iter_mut().for_each(|x| *x = 0.0);
                neu1e.iter_mut().for_each(|x| *x = 0.0);
                for &c in &context {
                    let row = &syn0[c * DIMENSION..(c + 1) * DIMENSION];
                    neu1.iter_mut().zip(row).for_each(|(a, b)| *a += b);
                }
                let inv = 1.0 / context.len() as f32;
                neu1.iter_mut().for_each(|x| *x *= inv);

                for d in 0..=hp.negative {
                    let (word, label) = if d == 0 {
                        (target, 1.0)
                    } else {
                        let w = negatives.sample(&mut rng);
                        if w == target {
                            continue;
                        }
                        (w, 0.0)
                    };
                    let out = &mut syn1[word * DIMENSION..(word + 1) * DIMENSION];
                    let f: f32 = neu1.iter().zip(out.iter()).map(|(a, b)| a * b).sum();
                    let g = if f > MAX_EXP {
                        (label - 1.0) * alpha
                    } else if f < -MAX_EXP {
                        label * alpha
                    } else {
                        (label - sigmoid(f)) * alpha
                    };
                    neu1e.iter_mut().zip(out.iter()).for_each(|(e, o)| *e += g * o);
                    out.iter_mut().zip(&neu1).for_each(|(o, h)| *o += g * h);
                }
                for &c in &context {
                    syn0[c * DIMENSION..(c + 1) * DIMENSION].iter_mut().zip(&neu1e).for_each(|(a, e)| *a += e);
                }
            }
        }
    }

    Ok(EmbeddingModel::new(vocab.iter().map(|(t, _)| t.to_string()).collect(), freqs, syn0, bigrams, hp.clone()))
}
