//! Instruction clustering: verb canonicalization, ingredient similarity,
//! candidate-pair filtering and complete-linkage clustering over embedding
//! distances.

mod distance;
mod linkage;
mod similarity;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use distance::{build_distance_matrix, DistanceMatrix};
pub use linkage::complete_linkage;
pub use similarity::{
    candidate_pair, frequency_of, ingredient_object_similarity, match_ingredients, weighted_jaccard, word_jaccard,
    LinkedInstruction,
};

use crate::corpus::IngredientFrequencyTable;
use crate::embeddings::EmbeddingModel;
use crate::parser::{Lexicons, ParsedRecipe};

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("threshold {name} = {value} is outside [0, 1]")]
    ThresholdOutOfRange { name: &'static str, value: f64 },
}

/// Similarity thresholds: `t1` for ingredient-object matching, `t2` for the
/// weighted ingredient-set overlap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimilarityConfig {
    pub t1: f64,
    pub t2: f64,
}

impl Default for SimilarityConfig {
    fn default() -> Self {
        SimilarityConfig { t1: 0.35, t2: 0.325 }
    }
}

impl SimilarityConfig {
    pub fn new(t1: f64, t2: f64) -> Result<Self, ConfigError> {
        for (name, value) in [("t1", t1), ("t2", t2)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(ConfigError::ThresholdOutOfRange { name, value });
            }
        }
        Ok(SimilarityConfig { t1, t2 })
    }
}

/// Replaces a verb by the representative of its verb cluster.
pub fn canonicalize_verb(verb: &str, lexicons: &Lexicons) -> String {
    lexicons.verb_clusters.get(verb).cloned().unwrap_or_else(|| verb.to_string())
}

/// Identifies one instruction of one recipe.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct InstructionRef {
    pub recipe_id: String,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    pub id: usize,
    #[serde(rename = "verb")]
    pub representative_verb: String,
    /// In corpus order.
    pub members: Vec<InstructionRef>,
}

/// On-disk form of a clustering (`procmap cluster` output).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterFile {
    pub config: SimilarityConfig,
    pub clusters: Vec<Cluster>,
}

/// Clusters every instruction of the corpus. Cluster ids follow the corpus
/// order of each cluster's first member.
pub fn cluster_instructions(
    recipes: &[ParsedRecipe],
    model: &EmbeddingModel,
    freq: &IngredientFrequencyTable,
    config: &SimilarityConfig,
    lexicons: &Lexicons,
) -> Vec<Cluster> {
    let items = LinkedInstruction::all(recipes);
    let matrix = build_distance_matrix(&items, model, freq, config, lexicons);
    complete_linkage(&matrix)
        .into_iter()
        .enumerate()
        .map(|(id, group)| Cluster {
            id,
            representative_verb: canonicalize_verb(&items[group[0]].instruction.main_verb, lexicons),
            members: group
                .iter()
                .map(|&i| InstructionRef {
                    recipe_id: items[i].instruction.recipe_id.clone(),
                    position: items[i].instruction.position,
                })
                .collect(),
        })
        .collect()
}
