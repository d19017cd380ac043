use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Digraph, GraphError, NodeId, PruneConfig, END, START};

/// How edge weights are turned into path costs so that heavy edges are
/// cheap.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvertedWeight {
    /// `1 / w`
    #[default]
    Reciprocal,
    /// `max_w − w + 1`
    MaxMinus,
}

/// Exact inverted edge costs.
#[derive(Debug, Clone)]
pub struct EdgeCosts {
    costs: HashMap<(NodeId, NodeId), BigRational>,
}

impl EdgeCosts {
    pub fn new(g: &Digraph, mode: InvertedWeight) -> Self {
        let max = g.edges.values().copied().max().unwrap_or(1) as i64;
        let costs = g
            .edges
            .iter()
            .map(|(&e, &w)| {
                let c = match mode {
                    InvertedWeight::Reciprocal => BigRational::new(BigInt::from(1), BigInt::from(w.max(1))),
                    InvertedWeight::MaxMinus => BigRational::from_integer(BigInt::from(max - w as i64 + 1)),
                };
                (e, c)
            })
            .collect();
        EdgeCosts { costs }
    }

    pub fn edge(&self, u: NodeId, v: NodeId) -> &BigRational {
        &self.costs[&(u, v)]
    }

    pub fn path_cost(&self, path: &[NodeId]) -> BigRational {
        path.windows(2).fold(BigRational::zero(), |acc, e| acc + self.edge(e[0], e[1]))
    }

    /// Path cost divided by its number of edges.
    pub fn average_cost(&self, path: &[NodeId]) -> BigRational {
        let edges = path.len().saturating_sub(1).max(1);
        self.path_cost(path) / BigRational::from_integer(BigInt::from(edges))
    }
}

/// Total order on paths: cost, then node sequence.
fn path_order(a: &(BigRational, Vec<NodeId>), b: &(BigRational, Vec<NodeId>)) -> Ordering {
    a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1))
}

/// Among the cheapest `from → to` paths avoiding the banned nodes and
/// edges, the lexicographically smallest node sequence.
fn cheapest_lex_path(
    g: &Digraph,
    costs: &EdgeCosts,
    from: NodeId,
    to: NodeId,
    banned_nodes: &HashSet<NodeId>,
    banned_edges: &HashSet<(NodeId, NodeId)>,
) -> Option<(BigRational, Vec<NodeId>)> {
    let allowed = |u: NodeId, v: NodeId| {
        !banned_edges.contains(&(u, v)) && !banned_nodes.contains(&v) && !banned_nodes.contains(&u)
    };
    let mut preds: HashMap<NodeId, Vec<NodeId>> = HashMap::new();
    for &(u, v) in g.edges.keys() {
        if u != v && allowed(u, v) {
            preds.entry(v).or_default().push(u);
        }
    }
    // Reverse Dijkstra: distance from every node to `to`.
    let mut dist: HashMap<NodeId, BigRational> = HashMap::new();
    let mut heap = BinaryHeap::new();
    dist.insert(to, BigRational::zero());
    heap.push(Reverse((BigRational::zero(), to)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if dist.get(&v).is_some_and(|best| *best < d) {
            continue;
        }
        for &u in preds.get(&v).into_iter().flatten() {
            let nd = &d + costs.edge(u, v);
            if dist.get(&u).is_none_or(|cur| nd < *cur) {
                dist.insert(u, nd.clone());
                heap.push(Reverse((nd, u)));
            }
        }
    }
    let total = dist.get(&from)?.clone();
    let mut path = vec![from];
    let mut u = from;
    while u != to {
        let du = &dist[&u];
        u = g
            .successors(u)
            .map(|(v, _)| v)
            .filter(|&v| v != u && allowed(u, v))
            .find(|&v| dist.get(&v).is_some_and(|dv| &(dv + costs.edge(u, v)) == du))
            .expect("a shortest-path successor exists");
        path.push(u);
    }
    Some((total, path))
}

/// Yen's algorithm: up to `k` loopless `from → to` paths in increasing
/// (cost, node sequence) order. Self-loops are ignored.
pub fn k_shortest_paths(
    g: &Digraph,
    costs: &EdgeCosts,
    from: NodeId,
    to: NodeId,
    k: usize,
) -> Vec<(BigRational, Vec<NodeId>)> {
    let mut accepted: Vec<(BigRational, Vec<NodeId>)> = Vec::new();
    if k == 0 {
        return accepted;
    }
    let Some(first) = cheapest_lex_path(g, costs, from, to, &HashSet::new(), &HashSet::new()) else {
        return accepted;
    };
    accepted.push(first);
    let mut candidates: BTreeMap<(BigRational, Vec<NodeId>), ()> = BTreeMap::new();
    let mut seen: BTreeSet<Vec<NodeId>> = BTreeSet::new();
    seen.insert(accepted[0].1.clone());

    while accepted.len() < k {
        let last = accepted.last().expect("non-empty").1.clone();
        for i in 0..last.len() - 1 {
            let spur = last[i];
            let root = &last[..=i];
            let banned_edges: HashSet<(NodeId, NodeId)> = accepted
                .iter()
                .filter(|(_, p)| p.len() > i + 1 && p[..=i] == *root)
                .map(|(_, p)| (p[i], p[i + 1]))
                .collect();
            let banned_nodes: HashSet<NodeId> = root[..i].iter().copied().collect();
            if let Some((spur_cost, spur_path)) = cheapest_lex_path(g, costs, spur, to, &banned_nodes, &banned_edges) {
                let mut path = root[..i].to_vec();
                path.extend(spur_path);
                if seen.insert(path.clone()) {
                    let cost = costs.path_cost(&root[..=i]) + spur_cost;
                    candidates.insert((cost, path), ());
                }
            }
        }
        let Some(((cost, path), ())) = candidates.pop_first() else {
            break;
        };
        accepted.push((cost, path));
    }
    debug_assert!(accepted.windows(2).all(|w| path_order(&w[0], &w[1]) == Ordering::Less));
    accepted
}

/// Number of instruction nodes (START/END excluded).
pub fn instruction_count(path: &[NodeId]) -> usize {
    path.iter().filter(|&&n| n != START && n != END).count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSelection {
    pub paths: Vec<Vec<NodeId>>,
    /// No candidate path met the length bound; `paths` ignores the bound.
    pub length_filter_relaxed: bool,
}

/// Selects display paths: the `k_paths` cheapest loopless START → END paths
/// under inverted weights, minus those with fewer than `min_len` instruction
/// nodes, stably re-ranked by average inverted edge weight, truncated to
/// `display_paths`.
pub fn select_paths(g: &Digraph, config: &PruneConfig, min_len: usize) -> Result<PathSelection, GraphError> {
    let costs = EdgeCosts::new(g, config.inverted_weight);
    let candidates: Vec<Vec<NodeId>> =
        k_shortest_paths(g, &costs, START, END, config.k_paths).into_iter().map(|(_, p)| p).collect();
    if candidates.is_empty() {
        return Err(GraphError::Disconnected);
    }
    let long: Vec<Vec<NodeId>> = candidates.iter().filter(|p| instruction_count(p) >= min_len).cloned().collect();
    let relaxed = long.is_empty();
    let pool = if relaxed { candidates } else { long };
    Ok(PathSelection { paths: rerank(pool, &costs, config.display_paths), length_filter_relaxed: relaxed })
}

/// Stable sort by average inverted weight, then truncate.
pub fn rerank(mut paths: Vec<Vec<NodeId>>, costs: &EdgeCosts, limit: usize) -> Vec<Vec<NodeId>> {
    let mut keyed: Vec<(BigRational, Vec<NodeId>)> = paths.drain(..).map(|p| (costs.average_cost(&p), p)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.into_iter().take(limit).map(|(_, p)| p).collect()
}

/// Cheapest simple path from START to END through `via`, built from a
/// cheapest START → via prefix and a node-disjoint via → END suffix (or the
/// other way round when that fails).
pub fn path_through(g: &Digraph, costs: &EdgeCosts, via: NodeId) -> Option<Vec<NodeId>> {
    let none: HashSet<NodeId> = HashSet::new();
    let no_edges: HashSet<(NodeId, NodeId)> = HashSet::new();
    let join = |head: Vec<NodeId>, tail: Vec<NodeId>| {
        let mut p = head;
        p.extend_from_slice(&tail[1..]);
        p
    };
    if let Some((_, head)) = cheapest_lex_path(g, costs, START, via, &none, &no_edges) {
        let banned: HashSet<NodeId> = head[..head.len() - 1].iter().copied().collect();
        if let Some((_, tail)) = cheapest_lex_path(g, costs, via, END, &banned, &no_edges) {
            return Some(join(head, tail));
        }
    }
    let (_, tail) = cheapest_lex_path(g, costs, via, END, &none, &no_edges)?;
    let banned: HashSet<NodeId> = tail[1..].iter().copied().collect();
    let (_, head) = cheapest_lex_path(g, costs, START, via, &banned, &no_edges)?;
    Some(join(head, tail))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(edges: &[(NodeId, NodeId, u32)]) -> Digraph {
        let mut g = Digraph::default();
        for &(u, v, w) in edges {
            g.nodes.insert(u, 10);
            g.nodes.insert(v, 10);
            g.edges.insert((u, v), w);
        }
        g
    }

    #[test]
    fn single_path() {
        let g = graph(&[(START, 2, 5), (2, END, 5)]);
        let s = select_paths(&g, &PruneConfig::default(), 1).unwrap();
        assert_eq!(s.paths, vec![vec![START, 2, END]]);
        assert!(!s.length_filter_relaxed);
    }

    #[test]
    fn heavier_parallel_path_first() {
        let g = graph(&[(START, 2, 3), (2, END, 3), (START, 3, 5), (3, END, 5)]);
        let s = select_paths(&g, &PruneConfig::default(), 1).unwrap();
        assert_eq!(s.paths, vec![vec![START, 3, END], vec![START, 2, END]]);
    }

    #[test]
    fn relaxes_length_filter() {
        let g = graph(&[(START, 2, 5), (2, END, 5)]);
        let s = select_paths(&g, &PruneConfig::default(), 4).unwrap();
        assert!(s.length_filter_relaxed);
        assert_eq!(s.paths.len(), 1);
    }

    #[test]
    fn via_path() {
        let g = graph(&[(START, 2, 5), (2, END, 5), (START, 3, 1), (3, 2, 1)]);
        assert_eq!(path_through(&g, &EdgeCosts::new(&g, InvertedWeight::Reciprocal), 3), Some(vec![START, 3, 2, END]));
    }
}
