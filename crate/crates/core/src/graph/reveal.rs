use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::clustering::word_jaccard;
use crate::parser::Lexicons;

use super::paths::{k_shortest_paths, path_through, rerank, EdgeCosts};
use super::{GraphBundle, GraphError, NodeId, END, START};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RevealedPath {
    pub nodes: Vec<NodeId>,
    /// The path is one of the display paths.
    pub displayed: bool,
    /// Nodes of the path that are not in the display graph.
    pub hidden_nodes: Vec<NodeId>,
    /// Edges of the path that are not in the display graph, as `[src, dst]`.
    pub hidden_edges: Vec<[NodeId; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reveal {
    pub ingredient: String,
    /// Nodes whose instructions mention the ingredient.
    pub matched_nodes: Vec<NodeId>,
    pub paths: Vec<RevealedPath>,
}

/// Nodes of the hidden graph whose summaries mention an ingredient similar
/// to `ingredient` (word-set Jaccard ≥ t1 against the lemmatized full name
/// or any alias the instructions use for it).
pub fn nodes_with_ingredient(bundle: &GraphBundle, ingredient: &str, lexicons: &Lexicons) -> Vec<NodeId> {
    let query = lexicons.lemmas(ingredient).join(" ");
    let t1 = bundle.params().t1;
    bundle
        .hidden
        .nodes
        .iter()
        .filter(|n| n.id != START && n.id != END)
        .filter(|n| {
            n.summary
                .ingredients
                .iter()
                .any(|s| std::iter::once(&s.name).chain(&s.aliases).any(|name| word_jaccard(&query, name) >= t1))
        })
        .map(|n| n.id)
        .collect()
}

/// START → END paths through nodes mentioning `ingredient`, for revealing
/// variations that pruning hid.
///
/// Display paths through a matching node come first, in display order.
/// They are followed by the cheapest loopless paths of the hidden graph
/// (self-loops ignored) through a matching node, plus one constructed path
/// through every matching node not yet covered, re-ranked by average
/// inverted edge weight. At most `display_paths` paths are returned.
pub fn paths_with_ingredient(
    bundle: &GraphBundle,
    ingredient: &str,
    lexicons: &Lexicons,
) -> Result<Reveal, GraphError> {
    let matched = nodes_with_ingredient(bundle, ingredient, lexicons);
    if matched.is_empty() {
        return Err(GraphError::IngredientNotFound(ingredient.to_string()));
    }
    let params = bundle.params();
    let matched_set: BTreeSet<NodeId> = matched.iter().copied().collect();
    let touches = |p: &[NodeId]| p.iter().any(|n| matched_set.contains(n));

    let mut hidden = bundle.hidden.digraph();
    hidden.edges.retain(|(u, v), _| u != v);
    let costs = EdgeCosts::new(&hidden, params.inverted_weight);

    let displayed: Vec<Vec<NodeId>> = bundle.display.paths.iter().flatten().filter(|p| touches(p)).cloned().collect();
    let mut extra: Vec<Vec<NodeId>> = k_shortest_paths(&hidden, &costs, START, END, params.k_paths)
        .into_iter()
        .map(|(_, p)| p)
        .filter(|p| touches(p) && !displayed.contains(p))
        .collect();
    for &m in &matched {
        if displayed.iter().chain(&extra).any(|p| p.contains(&m)) {
            continue;
        }
        if let Some(p) = path_through(&hidden, &costs, m) {
            if !extra.contains(&p) && !displayed.contains(&p) {
                extra.push(p);
            }
        }
    }
    let room = params.display_paths.saturating_sub(displayed.len());
    let extra = rerank(extra, &costs, room);

    let display_graph = bundle.display.digraph();
    let paths = displayed
        .into_iter()
        .take(params.display_paths)
        .map(|p| (p, true))
        .chain(extra.into_iter().map(|p| (p, false)))
        .map(|(nodes, displayed)| RevealedPath {
            hidden_nodes: nodes.iter().copied().filter(|n| !display_graph.nodes.contains_key(n)).collect(),
            hidden_edges: nodes
                .windows(2)
                .filter(|e| !display_graph.edges.contains_key(&(e[0], e[1])))
                .map(|e| [e[0], e[1]])
                .collect(),
            displayed,
            nodes,
        })
        .collect();
    Ok(Reveal { ingredient: ingredient.to_string(), matched_nodes: matched, paths })
}
