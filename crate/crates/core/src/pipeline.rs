//! End-to-end orchestration: corpus → parse → embed → cluster → graph.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clustering::{cluster_instructions, Cluster, SimilarityConfig};
use crate::corpus::{ingredient_frequencies, Corpus, IngredientFrequencyTable};
use crate::embeddings::{instruction_sentences, train, EmbeddingError, EmbeddingModel, Hyperparameters};
use crate::graph::{summarize_corpus, GraphBundle, GraphError, PruneConfig};
use crate::parser::{parse_recipes, Lexicons, ParsedCorpus, ParsedRecipe};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub embeddings: Hyperparameters,
    pub similarity: SimilarityConfig,
    pub prune: PruneConfig,
}

pub struct PipelineOutput {
    pub parsed: ParsedCorpus,
    pub frequencies: IngredientFrequencyTable,
    pub model: EmbeddingModel,
    pub clusters: Vec<Cluster>,
    pub graph: GraphBundle,
}

pub fn parse_corpus(corpus: &Corpus, lexicons: &Lexicons) -> ParsedCorpus {
    ParsedCorpus { dish: corpus.dish.clone(), recipes: parse_recipes(&corpus.recipes, lexicons) }
}

/// Trains the embedding model on the corpus instructions plus any extra
/// parsed recipes (a larger auxiliary corpus helps small dishes).
pub fn train_embeddings(
    recipes: &[ParsedRecipe],
    extra: &[ParsedRecipe],
    hp: &Hyperparameters,
) -> Result<EmbeddingModel, EmbeddingError> {
    train(&instruction_sentences(recipes.iter().chain(extra)), hp)
}

/// Runs every stage. Output is fully determined by the inputs and
/// `config.embeddings.seed`.
pub fn run_pipeline(
    corpus: &Corpus,
    lexicons: &Lexicons,
    config: &PipelineConfig,
) -> Result<PipelineOutput, PipelineError> {
    let parsed = parse_corpus(corpus, lexicons);
    let frequencies = ingredient_frequencies(&parsed.recipes);
    let model = train_embeddings(&parsed.recipes, &[], &config.embeddings)?;
    let clusters = cluster_instructions(&parsed.recipes, &model, &frequencies, &config.similarity, lexicons);
    let graph =
        summarize_corpus(&parsed.dish, &parsed.recipes, &clusters, &frequencies, &config.prune, config.similarity.t1)?;
    Ok(PipelineOutput { parsed, frequencies, model, clusters, graph })
}
