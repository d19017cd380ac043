use super::{Digraph, GraphError, PruneConfig, END, START};

/// Prunes the summary graph for display:
///
/// 1. drop nodes (other than START/END) and edges with weight ≤ `min_weight`;
/// 2. for every pair of opposite edges keep only the heavier one, dropping
///    both on a tie;
/// 3. drop self-loops;
/// 4. drop everything not both reachable from START and able to reach END.
pub fn prune_graph(g: &Digraph, config: &PruneConfig) -> Result<Digraph, GraphError> {
    let mut out = g.clone();
    out.nodes.retain(|&n, &mut w| n == START || n == END || w > config.min_weight);
    out.edges.retain(|_, &mut w| w > config.min_weight);
    out.retain_consistent_edges();

    let snapshot = out.edges.clone();
    out.edges.retain(|&(u, v), &mut w| u == v || snapshot.get(&(v, u)).is_none_or(|&back| w > back));

    out.edges.retain(|&(u, v), _| u != v);

    let forward = out.reachable(START, false);
    if !forward.contains(&END) {
        return Err(GraphError::Disconnected);
    }
    let backward = out.reachable(END, true);
    out.nodes.retain(|n, _| forward.contains(n) && backward.contains(n));
    out.retain_consistent_edges();
    Ok(out)
}
