//! Corpus-specific word embeddings: bigram phrase detection, CBOW word2vec
//! with negative sampling, averaged instruction embeddings and cosine
//! distance.

mod bigram;
mod cbow;
mod io;

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bigram::{apply_bigrams, bigram_score, detect_bigrams, BigramTable};
pub use cbow::train_cbow;
pub use io::{read_model, write_model};

use crate::parser::{Instruction, ParsedRecipe};
use crate::text::lower_tokens;

/// Embedding dimension.
pub const DIMENSION: usize = 100;

#[derive(Debug, Error)]
pub enum EmbeddingError {
    #[error("no token reaches the minimum count; nothing to train")]
    EmptyVocabulary,
    #[error("model i/o failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid model file: {0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hyperparameters {
    pub window: usize,
    pub epochs: usize,
    pub negative: usize,
    pub min_count: u32,
    pub bigram_threshold: f64,
    pub learning_rate: f32,
    pub seed: u64,
}

impl Default for Hyperparameters {
    fn default() -> Self {
        Hyperparameters {
            window: 5,
            epochs: 15,
            negative: 5,
            min_count: 5,
            bigram_threshold: 10.0,
            learning_rate: 0.025,
            seed: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EmbeddingModel {
    /// Tokens in row order.
    pub vocabulary: Vec<String>,
    pub counts: Vec<u64>,
    /// Row-major |V| × [`DIMENSION`].
    pub vectors: Vec<f32>,
    pub bigrams: BigramTable,
    pub hyperparameters: Hyperparameters,
    index: OnceLock<HashMap<String, usize>>,
}

impl EmbeddingModel {
    pub(crate) fn new(
        vocabulary: Vec<String>,
        counts: Vec<u64>,
        vectors: Vec<f32>,
        bigrams: BigramTable,
        hyperparameters: Hyperparameters,
    ) -> Self {
        debug_assert_eq!(vectors.len(), vocabulary.len() * DIMENSION);
        EmbeddingModel { vocabulary, counts, vectors, bigrams, hyperparameters, index: OnceLock::new() }
    }

    pub fn index_of(&self, token: &str) -> Option<usize> {
        self.index
            .get_or_init(|| self.vocabulary.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect())
            .get(token)
            .copied()
    }

    pub fn vector(&self, token: &str) -> Option<&[f32]> {
        self.index_of(token).map(|i| &self.vectors[i * DIMENSION..(i + 1) * DIMENSION])
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), EmbeddingError> {
        write_model(self, BufWriter::new(File::create(path)?))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, EmbeddingError> {
        read_model(BufReader::new(File::open(path)?))
    }

    /// Bigram-merged tokens of a text, as seen by the model.
    pub fn tokens(&self, text: &str) -> Vec<String> {
        apply_bigrams(&lower_tokens(text), &self.bigrams)
    }
}

/// One sentence per instruction fragment, lowercased and tokenized.
pub fn instruction_sentences<'a>(recipes: impl IntoIterator<Item = &'a ParsedRecipe>) -> Vec<Vec<String>> {
    recipes
        .into_iter()
        .flat_map(|r| r.instructions.iter().map(|i| lower_tokens(&i.raw_text)))
        .filter(|s| !s.is_empty())
        .collect()
}

/// Detects bigrams, merges them and trains CBOW.
pub fn train(sentences: &[Vec<String>], hp: &Hyperparameters) -> Result<EmbeddingModel, EmbeddingError> {
    let bigrams = detect_bigrams(sentences, hp.bigram_threshold, hp.min_count);
    let merged: Vec<Vec<String>> = sentences.iter().map(|s| apply_bigrams(s, &bigrams)).collect();
    train_cbow(&merged, hp, bigrams)
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstructionEmbedding {
    pub vector: Vec<f32>,
    /// No token of the instruction is in the vocabulary; `vector` is zero.
    pub out_of_vocabulary: bool,
}

/// Average of the in-vocabulary token vectors of the instruction text.
pub fn embed_text(text: &str, model: &EmbeddingModel) -> InstructionEmbedding {
    let mut sum = vec![0f64; DIMENSION];
    let mut n = 0usize;
    for t in model.tokens(text) {
        if let Some(v) = model.vector(&t) {
            sum.iter_mut().zip(v).for_each(|(s, x)| *s += *x as f64);
            n += 1;
        }
    }
    if n == 0 {
        return InstructionEmbedding { vector: vec![0.0; DIMENSION], out_of_vocabulary: true };
    }
    InstructionEmbedding { vector: sum.into_iter().map(|s| (s / n as f64) as f32).collect(), out_of_vocabulary: false }
}

pub fn embed_instruction(instruction: &Instruction, model: &EmbeddingModel) -> InstructionEmbedding {
    embed_text(&instruction.raw_text, model)
}

/// `1 − cos(a, b)`, or the maximum distance 2 when either vector is zero.
pub fn cosine_distance(a: &[f32], b: &[f32]) -> f64 {
    let (mut dot, mut na, mut nb) = (0f64, 0f64, 0f64);
    for (x, y) in a.iter().zip(b) {
        let (x, y) = (*x as f64, *y as f64);
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if na == 0.0 || nb == 0.0 {
        return 2.0;
    }
    (1.0 - dot / (na.sqrt() * nb.sqrt())).clamp(0.0, 2.0)
}
