//! Corpus files: loading, validation, statistics and ingredient frequency
//! tables.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::parser::ParsedRecipe;
use crate::text::tokenize;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read corpus file {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed corpus file: {0}")]
    MalformedFile(String),
    #[error("duplicate recipe id {0:?}")]
    DuplicateId(String),
    #[error("recipe {id:?} has no {missing}")]
    EmptyRecipe { id: String, missing: &'static str },
    #[error("corpus contains no recipes")]
    EmptyCorpus,
}

/// One recipe before parsing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawRecipe {
    pub id: String,
    /// Filled from the corpus dish when loading.
    #[serde(skip)]
    pub dish: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub servings: Option<u32>,
    #[serde(rename = "ingredients")]
    pub ingredient_lines: Vec<String>,
    #[serde(rename = "instructions")]
    pub instruction_lines: Vec<String>,
}

/// A validated set of recipes for a single dish.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    pub dish: String,
    #[serde(default)]
    pub source_note: String,
    pub recipes: Vec<RawRecipe>,
}

impl Corpus {
    /// Validates the recipes and stamps them with the corpus dish.
    pub fn new(
        dish: impl Into<String>,
        source_note: impl Into<String>,
        recipes: Vec<RawRecipe>,
    ) -> Result<Self, CorpusError> {
        let mut corpus = Corpus { dish: dish.into(), source_note: source_note.into(), recipes };
        for r in &mut corpus.recipes {
            r.dish = corpus.dish.clone();
        }
        corpus.validate()?;
        Ok(corpus)
    }

    pub fn from_json(json: &str) -> Result<Self, CorpusError> {
        let wire: Corpus = serde_json::from_str(json).map_err(|e| CorpusError::MalformedFile(e.to_string()))?;
        Corpus::new(wire.dish, wire.source_note, wire.recipes)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("corpus serializes")
    }

    fn validate(&self) -> Result<(), CorpusError> {
        let mut seen = HashSet::new();
        for r in &self.recipes {
            if r.id.trim().is_empty() {
                return Err(CorpusError::MalformedFile("recipe with empty id".into()));
            }
            if r.servings == Some(0) {
                return Err(CorpusError::MalformedFile(format!("recipe {:?} has servings 0", r.id)));
            }
            if !seen.insert(r.id.as_str()) {
                return Err(CorpusError::DuplicateId(r.id.clone()));
            }
            let blank = |lines: &[String]| lines.iter().all(|l| l.trim().is_empty());
            if blank(&r.ingredient_lines) {
                return Err(CorpusError::EmptyRecipe { id: r.id.clone(), missing: "ingredient lines" });
            }
            if blank(&r.instruction_lines) {
                return Err(CorpusError::EmptyRecipe { id: r.id.clone(), missing: "instruction lines" });
            }
        }
        Ok(())
    }

    /// Most frequent `servings` value; ties go to the smaller value, and a
    /// corpus without any servings information uses 1.
    pub fn reference_servings(&self) -> u32 {
        reference_servings(self.recipes.iter().map(|r| r.servings))
    }
}

pub(crate) fn reference_servings(values: impl IntoIterator<Item = Option<u32>>) -> u32 {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for s in values.into_iter().flatten() {
        *counts.entry(s).or_default() += 1;
    }
    // max_by_key returns the last maximum; iterate in reverse so that the
    // smallest servings value wins ties.
    counts.into_iter().rev().max_by_key(|&(_, c)| c).map_or(1, |(s, _)| s)
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Corpus, CorpusError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| CorpusError::Io { path: path.to_path_buf(), source })?;
    Corpus::from_json(&text)
}

pub fn write_corpus(corpus: &Corpus, path: impl AsRef<Path>) -> Result<(), CorpusError> {
    let path = path.as_ref();
    fs::write(path, corpus.to_json()).map_err(|source| CorpusError::Io { path: path.to_path_buf(), source })
}

/// Mean and population standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanStd {
    pub mean: f64,
    pub std: f64,
}

impl MeanStd {
    pub fn of(values: &[f64]) -> Self {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        MeanStd { mean, std: var.sqrt() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub recipes: usize,
    pub ingredients_per_recipe: MeanStd,
    pub instruction_lines_per_recipe: MeanStd,
    /// Words over ingredient and instruction lines.
    pub words_per_recipe: MeanStd,
    pub instruction_words_per_recipe: MeanStd,
    /// Distinct lowercase tokens.
    pub vocabulary_size: usize,
}

pub fn corpus_stats(corpus: &Corpus) -> Result<CorpusStats, CorpusError> {
    if corpus.recipes.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    let mut vocabulary = BTreeSet::new();
    let mut ingredients = Vec::new();
    let mut lines = Vec::new();
    let mut words = Vec::new();
    let mut instruction_words = Vec::new();
    for r in &corpus.recipes {
        ingredients.push(r.ingredient_lines.len() as f64);
        lines.push(r.instruction_lines.len() as f64);
        let mut count = |ls: &[String]| {
            ls.iter()
                .flat_map(|l| tokenize(l))
                .inspect(|t| {
                    vocabulary.insert(t.to_lowercase());
                })
                .count() as f64
        };
        let ing = count(&r.ingredient_lines);
        let ins = count(&r.instruction_lines);
        words.push(ing + ins);
        instruction_words.push(ins);
    }
    Ok(CorpusStats {
        recipes: corpus.recipes.len(),
        ingredients_per_recipe: MeanStd::of(&ingredients),
        instruction_lines_per_recipe: MeanStd::of(&lines),
        words_per_recipe: MeanStd::of(&words),
        instruction_words_per_recipe: MeanStd::of(&instruction_words),
        vocabulary_size: vocabulary.len(),
    })
}

/// Number of recipes mentioning each ingredient, keyed by lemmatized full
/// name.
pub type IngredientFrequencyTable = BTreeMap<String, u32>;

pub fn ingredient_frequencies(parsed: &[ParsedRecipe]) -> IngredientFrequencyTable {
    let mut table = IngredientFrequencyTable::new();
    for r in parsed {
        let names: BTreeSet<&str> = r.ingredients.iter().map(|i| i.full_name.as_str()).collect();
        for name in names {
            *table.entry(name.to_string()).or_default() += 1;
        }
    }
    table
}
