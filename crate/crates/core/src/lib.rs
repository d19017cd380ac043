//! Summarize many procedural texts that share one goal (recipes for a single
//! dish) into a weighted summary graph whose START→END paths are execution
//! plans.
//!
//! The pipeline runs in five stages, one module each:
//!
//! 1. [`corpus`] loads and validates a corpus file and computes frequency
//!    tables.
//! 2. [`parser`] turns raw recipes into ingredient objects and instruction
//!    objects (verbs, linked ingredients, tools, time ranges).
//! 3. [`embeddings`] trains a small CBOW word2vec model on the instructions.
//! 4. [`clustering`] filters candidate instruction pairs by verb and weighted
//!    ingredient overlap, then groups them with complete linkage.
//! 5. [`graph`] builds the summary graph, prunes it, selects display paths and
//!    summarizes every node.
//!
//! [`pipeline`] glues the stages together and [`synth`] generates synthetic
//! corpora for benchmarking.

pub mod clustering;
pub mod corpus;
pub mod embeddings;
pub mod graph;
pub mod parser;
pub mod pipeline;
pub mod synth;
pub mod text;

pub use clustering::{Cluster, SimilarityConfig};
pub use corpus::{Corpus, IngredientFrequencyTable, RawRecipe};
pub use embeddings::{EmbeddingModel, Hyperparameters};
pub use graph::{PruneConfig, SummaryGraph};
pub use parser::{IngredientObject, Instruction, Lexicons, ParsedRecipe};
pub use pipeline::{PipelineConfig, PipelineOutput};
