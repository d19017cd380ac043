//! Unsupervised recipe parser.
//!
//! Ingredient lines become [`IngredientObject`]s (quantity, unit, lemmatized
//! name, abbreviation, generalization); instruction lines are split into
//! simple steps and each step becomes an [`Instruction`] with its main verb,
//! linked ingredients, tools and time range.

mod ingredient;
mod instruction;
mod lemma;
mod lexicon;
mod quantity;
mod recipe;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use ingredient::parse_ingredient_line;
pub use instruction::{extract_main_verb, extract_time_range, extract_tools, split_instruction_line};
pub use lemma::lemmatize_with;
pub use lexicon::{LexiconError, Lexicons, Tool};
pub use quantity::Quantity;
pub use recipe::{derive_abbreviation, derive_generalization, parse_recipe, parse_recipes};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngredientObject {
    /// Lemmatized ingredient name.
    pub full_name: String,
    /// Shortened form found in the instructions; equals `full_name` when none
    /// was found.
    pub abbreviation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generalization: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantity: Option<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    pub raw_line: String,
}

impl IngredientObject {
    /// An ingredient known only by name, as used for lookups.
    pub fn named(name: &str, lexicons: &Lexicons) -> Self {
        let full_name = lexicons.lemmas(name).join(" ");
        Self {
            abbreviation: full_name.clone(),
            full_name,
            generalization: None,
            quantity: None,
            unit: None,
            raw_line: name.to_string(),
        }
    }
}

/// Inclusive duration range in seconds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimeRange {
    pub min_seconds: u32,
    pub max_seconds: u32,
}

impl TimeRange {
    pub fn span(self, other: TimeRange) -> TimeRange {
        TimeRange {
            min_seconds: self.min_seconds.min(other.min_seconds),
            max_seconds: self.max_seconds.max(other.max_seconds),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instruction {
    pub recipe_id: String,
    /// 0-based index within the recipe after splitting.
    pub position: usize,
    pub raw_text: String,
    pub main_verb: String,
    /// Indices into the owning recipe's ingredient list, ascending.
    pub ingredients: Vec<usize>,
    pub tools: BTreeSet<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_range: Option<TimeRange>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParsedRecipe {
    pub id: String,
    pub dish: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub servings: Option<u32>,
    pub ingredients: Vec<IngredientObject>,
    pub instructions: Vec<Instruction>,
}

impl ParsedRecipe {
    /// The ingredient objects linked to one instruction.
    pub fn linked<'a>(&'a self, instruction: &'a Instruction) -> impl Iterator<Item = &'a IngredientObject> + 'a {
        instruction.ingredients.iter().map(move |&i| &self.ingredients[i])
    }
}

/// On-disk form of a parsed corpus (`procmap parse` output).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParsedCorpus {
    pub dish: String,
    pub recipes: Vec<ParsedRecipe>,
}
