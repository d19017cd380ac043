//! Summary graph construction, pruning, display-path selection, node
//! summaries and hidden-path reveal.
//!
//! The graph exists in two forms: [`Digraph`], the bare weighted structure
//! the algorithms work on, and [`SummaryGraph`], the serialized form with
//! node summaries (`graph.json`). A [`GraphBundle`] pairs the display graph
//! with the unpruned hidden graph.

mod build;
mod digraph;
mod paths;
mod prune;
mod reveal;
mod summary;

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use build::build_graph;
pub use digraph::{cluster_node, Digraph, NodeId, END, START};
pub use paths::{
    instruction_count, k_shortest_paths, path_through, rerank, select_paths, EdgeCosts, InvertedWeight, PathSelection,
};
pub use prune::prune_graph;
pub use reveal::{nodes_with_ingredient, paths_with_ingredient, Reveal, RevealedPath};
pub use summary::{
    min_length_bound, rare_ingredients, summarize_node, IngredientStat, MemberInstruction, NodeSummary, RareIngredient,
    ToolCount, SAMPLE_LIMIT,
};

use crate::clustering::Cluster;
use crate::corpus::{reference_servings, IngredientFrequencyTable};
use crate::parser::ParsedRecipe;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("instruction {position} of recipe {recipe_id:?} belongs to no cluster")]
    OrphanInstruction { recipe_id: String, position: usize },
    #[error("cluster member {position} of recipe {recipe_id:?} does not exist")]
    UnknownMember { recipe_id: String, position: usize },
    #[error("instruction {position} of recipe {recipe_id:?} belongs to several clusters")]
    DuplicateMember { recipe_id: String, position: usize },
    #[error("no START → END path survives pruning")]
    Disconnected,
    #[error("corpus contains no recipes")]
    EmptyCorpus,
    #[error("no node mentions ingredient {0:?}")]
    IngredientNotFound(String),
    #[error("invalid graph configuration: {0}")]
    InvalidConfig(String),
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed graph file: {0}")]
    Json(#[from] serde_json::Error),
}

/// Pruning and path-selection settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PruneConfig {
    /// Nodes and edges with weight ≤ this are pruned.
    pub min_weight: u32,
    /// Candidate paths enumerated before filtering.
    pub k_paths: usize,
    /// Paths kept for display.
    pub display_paths: usize,
    /// Share of shortest recipes ignored when computing the length bound.
    pub trim_fraction: f64,
    pub inverted_weight: InvertedWeight,
}

impl Default for PruneConfig {
    fn default() -> Self {
        PruneConfig {
            min_weight: 2,
            k_paths: 60,
            display_paths: 20,
            trim_fraction: 0.10,
            inverted_weight: InvertedWeight::Reciprocal,
        }
    }
}

impl PruneConfig {
    pub fn validate(&self) -> Result<(), GraphError> {
        if self.display_paths > self.k_paths {
            return Err(GraphError::InvalidConfig(format!(
                "display_paths ({}) exceeds k_paths ({})",
                self.display_paths, self.k_paths
            )));
        }
        if !(0.0..1.0).contains(&self.trim_fraction) {
            return Err(GraphError::InvalidConfig(format!("trim_fraction {} is outside [0, 1)", self.trim_fraction)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub id: NodeId,
    pub weight: u32,
    #[serde(flatten)]
    pub summary: NodeSummary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub src: NodeId,
    pub dst: NodeId,
    pub weight: u32,
}

/// Settings the graph was built with, needed to answer reveal queries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphParams {
    pub min_weight: u32,
    pub k_paths: usize,
    pub display_paths: usize,
    pub trim_fraction: f64,
    pub inverted_weight: InvertedWeight,
    pub min_len: usize,
    pub length_filter_relaxed: bool,
    pub t1: f64,
}

impl Default for GraphParams {
    fn default() -> Self {
        let p = PruneConfig::default();
        GraphParams {
            min_weight: p.min_weight,
            k_paths: p.k_paths,
            display_paths: p.display_paths,
            trim_fraction: p.trim_fraction,
            inverted_weight: p.inverted_weight,
            min_len: 0,
            length_filter_relaxed: false,
            t1: crate::clustering::SimilarityConfig::default().t1,
        }
    }
}

/// Serialized summary graph (`graph.json` / `graph.hidden.json`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryGraph {
    pub dish: String,
    pub start: NodeId,
    pub end: NodeId,
    /// In id order.
    pub nodes: Vec<Node>,
    /// In (src, dst) order.
    pub edges: Vec<Edge>,
    /// Display paths; absent in the hidden graph.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paths: Option<Vec<Vec<NodeId>>>,
    pub rare_ingredients: Vec<RareIngredient>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<GraphParams>,
}

impl SummaryGraph {
    fn assemble(
        dish: &str,
        g: &Digraph,
        summaries: &HashMap<NodeId, NodeSummary>,
        paths: Option<Vec<Vec<NodeId>>>,
        rare: Vec<RareIngredient>,
        params: GraphParams,
    ) -> Self {
        SummaryGraph {
            dish: dish.to_string(),
            start: START,
            end: END,
            nodes: g.nodes.iter().map(|(&id, &weight)| Node { id, weight, summary: summaries[&id].clone() }).collect(),
            edges: g.edges.iter().map(|(&(src, dst), &weight)| Edge { src, dst, weight }).collect(),
            paths,
            rare_ingredients: rare,
            params: Some(params),
        }
    }

    pub fn digraph(&self) -> Digraph {
        Digraph {
            nodes: self.nodes.iter().map(|n| (n.id, n.weight)).collect(),
            edges: self.edges.iter().map(|e| ((e.src, e.dst), e.weight)).collect(),
        }
    }

    pub fn node(&self, id: NodeId) -> Option<&Node> {
        self.nodes.binary_search_by_key(&id, |n| n.id).ok().map(|i| &self.nodes[i])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serializes")
    }

    pub fn from_json(json: &str) -> Result<Self, GraphError> {
        let mut g: SummaryGraph = serde_json::from_str(json)?;
        g.nodes.sort_by_key(|n| n.id);
        Ok(g)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), GraphError> {
        let path = path.as_ref();
        fs::write(path, self.to_json()).map_err(|source| GraphError::Io { path: path.to_path_buf(), source })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, GraphError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| GraphError::Io { path: path.to_path_buf(), source })?;
        Self::from_json(&text)
    }
}

/// The display graph and the full unpruned graph it was derived from.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphBundle {
    pub display: SummaryGraph,
    pub hidden: SummaryGraph,
}

impl GraphBundle {
    pub fn params(&self) -> GraphParams {
        self.display.params.or(self.hidden.params).unwrap_or_default()
    }

    /// Looks a node up in the hidden graph, which contains every node.
    pub fn node(&self, id: NodeId) -> Option<&Node> {
        self.hidden.node(id).or_else(|| self.display.node(id))
    }
}

/// Builds, prunes and summarizes the graph for a clustered corpus.
pub fn summarize_corpus(
    dish: &str,
    recipes: &[ParsedRecipe],
    clusters: &[Cluster],
    freq: &IngredientFrequencyTable,
    config: &PruneConfig,
    t1: f64,
) -> Result<GraphBundle, GraphError> {
    config.validate()?;
    let hidden = build_graph(recipes, clusters)?;
    let pruned = prune_graph(&hidden, config)?;
    let min_len = min_length_bound(recipes, config.trim_fraction)?;
    let selection = select_paths(&pruned, config, min_len)?;
    let display = pruned.union_of_paths(&selection.paths);

    let by_id: HashMap<&str, &ParsedRecipe> = recipes.iter().map(|r| (r.id.as_str(), r)).collect();
    let reference = reference_servings(recipes.iter().map(|r| r.servings));
    let mut summaries: HashMap<NodeId, NodeSummary> = HashMap::new();
    summaries.insert(START, NodeSummary::terminal("START"));
    summaries.insert(END, NodeSummary::terminal("END"));
    for c in clusters {
        summaries.insert(cluster_node(c.id), summarize_node(c, &by_id, reference)?);
    }
    let rare = rare_ingredients(freq, usize::MAX);
    let params = GraphParams {
        min_weight: config.min_weight,
        k_paths: config.k_paths,
        display_paths: config.display_paths,
        trim_fraction: config.trim_fraction,
        inverted_weight: config.inverted_weight,
        min_len,
        length_filter_relaxed: selection.length_filter_relaxed,
        t1,
    };
    Ok(GraphBundle {
        display: SummaryGraph::assemble(dish, &display, &summaries, Some(selection.paths), rare.clone(), params),
        hidden: SummaryGraph::assemble(dish, &hidden, &summaries, None, rare, params),
    })
}
