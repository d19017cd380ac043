use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::corpus::IngredientFrequencyTable;
use crate::embeddings::{cosine_distance, embed_instruction, EmbeddingModel};
use crate::parser::Lexicons;

use super::similarity::{ingredients_compatible, LinkedInstruction};
use super::{canonicalize_verb, SimilarityConfig};

/// Symmetric distance matrix in condensed form; entries default to
/// infinity and the diagonal is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    upper: Vec<f64>,
}

impl DistanceMatrix {
    pub fn new(n: usize) -> Self {
        DistanceMatrix { n, upper: vec![f64::INFINITY; n * n.saturating_sub(1) / 2] }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i == j {
            0.0
        } else {
            self.upper[self.slot(i, j)]
        }
    }

    /// Sets a symmetric entry. Setting the diagonal is ignored.
    pub fn set(&mut self, i: usize, j: usize, d: f64) {
        if i != j {
            let s = self.slot(i, j);
            self.upper[s] = d;
        }
    }

    /// Finite off-diagonal entries `(i, j, d)` with `i < j`.
    pub fn finite_entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).map(move |j| (i, j, self.get(i, j)))).filter(|e| e.2.is_finite())
    }
}

/// Cosine distance between instruction embeddings for candidate pairs and
/// infinity for all other pairs. Only instructions sharing a canonical verb
/// are compared.
pub fn build_distance_matrix(
    items: &[LinkedInstruction<'_>],
    model: &EmbeddingModel,
    freq: &IngredientFrequencyTable,
    config: &SimilarityConfig,
    lexicons: &Lexicons,
) -> DistanceMatrix {
    let embeddings: Vec<_> = items.par_iter().map(|it| embed_instruction(it.instruction, model)).collect();
    let mut by_verb: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, it) in items.iter().enumerate() {
        by_verb.entry(canonicalize_verb(&it.instruction.main_verb, lexicons)).or_default().push(i);
    }
    let pairs: Vec<(usize, usize)> = by_verb
        .values()
        .flat_map(|g| g.iter().enumerate().flat_map(move |(k, &i)| g[k + 1..].iter().map(move |&j| (i, j))))
        .collect();
    let entries: Vec<(usize, usize, f64)> = pairs
        .par_iter()
        .filter(|&&(i, j)| ingredients_compatible(&items[i].ingredients, &items[j].ingredients, freq, config))
        .map(|&(i, j)| (i, j, cosine_distance(&embeddings[i].vector, &embeddings[j].vector)))
        .collect();
    let mut m = DistanceMatrix::new(items.len());
    for (i, j, d) in entries {
        m.set(i, j, d);
    }
    m
}
