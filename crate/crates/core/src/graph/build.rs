use std::collections::{BTreeSet, HashMap};

use crate::clustering::Cluster;
use crate::parser::ParsedRecipe;

use super::{cluster_node, Digraph, GraphError, NodeId, END, START};

/// Builds the unpruned summary graph.
///
/// Each cluster becomes a node weighted by its member count. An edge between
/// two clusters counts the recipes in which an instruction of the first is
/// directly followed by one of the second (each recipe counted once). Edges
/// from START (to END) count the instructions that begin (end) a recipe.
/// Consecutive instructions in the same cluster produce a self-loop.
/// Terminal nodes are weighted by the number of recipes.
pub fn build_graph(recipes: &[ParsedRecipe], clusters: &[Cluster]) -> Result<Digraph, GraphError> {
    let mut node_of: HashMap<(&str, usize), NodeId> = HashMap::new();
    let known: BTreeSet<(&str, usize)> =
        recipes.iter().flat_map(|r| r.instructions.iter().map(|i| (r.id.as_str(), i.position))).collect();
    let mut g = Digraph::default();
    for c in clusters {
        let id = cluster_node(c.id);
        for m in &c.members {
            let key = (m.recipe_id.as_str(), m.position);
            if !known.contains(&key) {
                return Err(GraphError::UnknownMember { recipe_id: m.recipe_id.clone(), position: m.position });
            }
            if node_of.insert(key, id).is_some() {
                return Err(GraphError::DuplicateMember { recipe_id: m.recipe_id.clone(), position: m.position });
            }
        }
        g.nodes.insert(id, c.members.len() as u32);
    }
    g.nodes.insert(START, recipes.len() as u32);
    g.nodes.insert(END, recipes.len() as u32);

    for r in recipes {
        let mut seq = vec![START];
        for i in &r.instructions {
            let id = node_of
                .get(&(r.id.as_str(), i.position))
                .copied()
                .ok_or_else(|| GraphError::OrphanInstruction { recipe_id: r.id.clone(), position: i.position })?;
            seq.push(id);
        }
        seq.push(END);
        let pairs: BTreeSet<(NodeId, NodeId)> = seq.windows(2).map(|w| (w[0], w[1])).collect();
        for p in pairs {
            *g.edges.entry(p).or_default() += 1;
        }
    }
    Ok(g)
}
