use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::clustering::Cluster;
use crate::corpus::IngredientFrequencyTable;
use crate::parser::{ParsedRecipe, Quantity};

use super::GraphError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IngredientStat {
    pub name: String,
    /// Share of the node's instructions that mention the ingredient.
    pub freq: f64,
    /// Number of the node's instructions that mention the ingredient.
    pub mentions: usize,
    pub qty_min: Option<f64>,
    pub qty_max: Option<f64>,
    pub unit: Option<String>,
    /// Other names the instructions use for the ingredient (abbreviations
    /// and generalizations), sorted.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub aliases: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolCount {
    pub name: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MemberInstruction {
    pub recipe_id: String,
    pub position: usize,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeSummary {
    pub verb: String,
    /// Sorted by decreasing frequency, then name.
    pub ingredients: Vec<IngredientStat>,
    /// Sorted by decreasing count, then name.
    pub tools: Vec<ToolCount>,
    pub time_min_s: Option<u32>,
    pub time_max_s: Option<u32>,
    /// Up to [`SAMPLE_LIMIT`] member texts.
    pub samples: Vec<String>,
    /// Every member instruction, ordered by (recipe id, position).
    pub instructions: Vec<MemberInstruction>,
}

pub const SAMPLE_LIMIT: usize = 10;

impl NodeSummary {
    /// Summary of a terminal node.
    pub fn terminal(label: &str) -> Self {
        NodeSummary {
            verb: label.to_string(),
            ingredients: Vec::new(),
            tools: Vec::new(),
            time_min_s: None,
            time_max_s: None,
            samples: Vec::new(),
            instructions: Vec::new(),
        }
    }
}

/// Aggregates a cluster for display.
///
/// Ingredient frequencies are relative to the cluster size. Quantities are
/// rescaled by `reference_servings / servings` (recipes without servings are
/// not rescaled) and reported as a range in the unit most often used for
/// that ingredient within the cluster (ties: alphabetical, unitless first).
pub fn summarize_node(
    cluster: &Cluster,
    recipes: &HashMap<&str, &ParsedRecipe>,
    reference_servings: u32,
) -> Result<NodeSummary, GraphError> {
    #[derive(Default)]
    struct Acc {
        mentions: usize,
        quantities: BTreeMap<Option<String>, Vec<Quantity>>,
        aliases: BTreeSet<String>,
    }
    let mut ingredients: BTreeMap<String, Acc> = BTreeMap::new();
    let mut tools: BTreeMap<String, usize> = BTreeMap::new();
    let mut time: Option<(u32, u32)> = None;
    let mut members = Vec::with_capacity(cluster.members.len());

    for m in &cluster.members {
        let unknown = || GraphError::UnknownMember { recipe_id: m.recipe_id.clone(), position: m.position };
        let recipe = recipes.get(m.recipe_id.as_str()).ok_or_else(unknown)?;
        let instruction = recipe.instructions.get(m.position).ok_or_else(unknown)?;
        members.push(MemberInstruction {
            recipe_id: m.recipe_id.clone(),
            position: m.position,
            text: instruction.raw_text.clone(),
        });
        let scale = (reference_servings as i64, recipe.servings.unwrap_or(reference_servings).max(1) as i64);
        let mut seen = BTreeSet::new();
        for ing in recipe.linked(instruction) {
            let acc = ingredients.entry(ing.full_name.clone()).or_default();
            if seen.insert(ing.full_name.as_str()) {
                acc.mentions += 1;
            }
            acc.aliases.extend(
                std::iter::once(&ing.abbreviation).chain(&ing.generalization).filter(|a| **a != ing.full_name).cloned(),
            );
            if let Some(q) = ing.quantity {
                acc.quantities.entry(ing.unit.clone()).or_default().push(q.scaled(scale.0, scale.1));
            }
        }
        for t in &instruction.tools {
            *tools.entry(t.clone()).or_default() += 1;
        }
        if let Some(t) = instruction.time_range {
            time = Some(match time {
                None => (t.min_seconds, t.max_seconds),
                Some((lo, hi)) => (lo.min(t.min_seconds), hi.max(t.max_seconds)),
            });
        }
    }

    let size = cluster.members.len().max(1) as f64;
    let mut stats: Vec<IngredientStat> = ingredients
        .into_iter()
        .map(|(name, acc)| {
            let dominant = acc
                .quantities
                .iter()
                .rev()
                .max_by_key(|(_, qs)| qs.len())
                .map(|(unit, qs)| (unit.clone(), qs.iter().min().copied(), qs.iter().max().copied()));
            let (unit, lo, hi) = dominant.unwrap_or((None, None, None));
            IngredientStat {
                name,
                freq: acc.mentions as f64 / size,
                mentions: acc.mentions,
                qty_min: lo.map(Quantity::to_f64),
                qty_max: hi.map(Quantity::to_f64),
                unit,
                aliases: acc.aliases.into_iter().collect(),
            }
        })
        .collect();
    stats.sort_by(|a, b| b.mentions.cmp(&a.mentions).then_with(|| a.name.cmp(&b.name)));

    let mut tools: Vec<ToolCount> = tools.into_iter().map(|(name, count)| ToolCount { name, count }).collect();
    tools.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.name.cmp(&b.name)));

    members.sort();
    Ok(NodeSummary {
        verb: cluster.representative_verb.clone(),
        ingredients: stats,
        tools,
        time_min_s: time.map(|t| t.0),
        time_max_s: time.map(|t| t.1),
        samples: members.iter().take(SAMPLE_LIMIT).map(|m| m.text.clone()).collect(),
        instructions: members,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RareIngredient {
    pub name: String,
    pub count: u32,
}

/// Ingredients by increasing recipe count, ties alphabetical.
pub fn rare_ingredients(freq: &IngredientFrequencyTable, limit: usize) -> Vec<RareIngredient> {
    let mut all: Vec<RareIngredient> =
        freq.iter().map(|(name, &count)| RareIngredient { name: name.clone(), count }).collect();
    all.sort_by(|a, b| a.count.cmp(&b.count).then_with(|| a.name.cmp(&b.name)));
    all.truncate(limit);
    all
}

/// Minimum instruction count after discarding the `trim_fraction` share of
/// recipes with the fewest instructions.
pub fn min_length_bound(recipes: &[ParsedRecipe], trim_fraction: f64) -> Result<usize, GraphError> {
    let counts: Vec<usize> = recipes.iter().map(|r| r.instructions.len()).collect();
    trimmed_minimum(&counts, trim_fraction).ok_or(GraphError::EmptyCorpus)
}

pub(crate) fn trimmed_minimum(counts: &[usize], trim_fraction: f64) -> Option<usize> {
    let mut sorted = counts.to_vec();
    sorted.sort_unstable();
    let drop = ((trim_fraction * sorted.len() as f64).floor() as usize).min(sorted.len().saturating_sub(1));
    sorted.get(drop).copied()
}
