//! Independent reference implementations used as test oracles. They favour
//! obviousness over speed and share no code with the library algorithms.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use num_rational::Ratio;
use procmap_core::clustering::DistanceMatrix;
use procmap_core::corpus::{load_corpus, Corpus};
use procmap_core::graph::{Digraph, NodeId, END, START};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn mini_corpus() -> Corpus {
    load_corpus(fixture_path("apple_cake_mini.json")).expect("fixture loads")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complete linkage by recomputing every inter-cluster distance from the
/// member distances at every step.
pub fn complete_linkage_oracle(m: &DistanceMatrix) -> Vec<Vec<usize>> {
    let mut clusters: Vec<BTreeSet<usize>> = (0..m.len()).map(|i| BTreeSet::from([i])).collect();
    loop {
        let mut best: Option<(f64, usize, usize, usize, usize)> = None;
        for a in 0..clusters.len() {
            for b in a + 1..clusters.len() {
                let mut d = 0.0f64;
                for &x in &clusters[a] {
                    for &y in &clusters[b] {
                        d = d.max(m.get(x, y));
                    }
                }
                if d.is_infinite() {
                    continue;
                }
                let (ma, mb) = (*clusters[a].first().unwrap(), *clusters[b].first().unwrap());
                let key = (d, ma.min(mb), ma.max(mb));
                let better = match best {
                    None => true,
                    Some((bd, lo, hi, _, _)) => key.0 < bd || (key.0 == bd && (key.1, key.2) < (lo, hi)),
                };
                if better {
                    best = Some((key.0, key.1, key.2, a, b));
                }
            }
        }
        let Some((_, _, _, a, b)) = best else { break };
        let moved = clusters.remove(b);
        clusters[a].extend(moved);
    }
    let mut out: Vec<Vec<usize>> = clusters.into_iter().map(|c| c.into_iter().collect()).collect();
    out.sort();
    out
}

/// A random symmetric matrix with a mix of finite and infinite entries and
/// deliberately repeated distances so tie-breaking matters.
pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> DistanceMatrix {
    let mut m = DistanceMatrix::new(n);
    let levels = [0.0, 0.1, 0.25, 0.25, 0.5, 0.75, 1.0, 1.5];
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.7) {
                let d =
                    if rng.gen_bool(0.5) { levels[rng.gen_range(0..levels.len())] } else { rng.gen_range(0.0..2.0) };
                m.set(i, j, d);
            }
        }
    }
    m
}

pub type Cost = Ratio<i128>;

/// Every simple START → END path, self-loops ignored.
pub fn all_simple_paths(g: &Digraph) -> Vec<Vec<NodeId>> {
    fn dfs(g: &Digraph, path: &mut Vec<NodeId>, out: &mut Vec<Vec<NodeId>>) {
        let u = *path.last().unwrap();
        if u == END {
            out.push(path.clone());
            return;
        }
        let next: Vec<NodeId> = g.edges.keys().filter(|&&(a, b)| a == u && a != b).map(|&(_, b)| b).collect();
        for v in next {
            if !path.contains(&v) {
                path.push(v);
                dfs(g, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    if g.nodes.contains_key(&START) {
        dfs(g, &mut vec![START], &mut out);
    }
    out
}

pub fn reciprocal_cost(g: &Digraph, path: &[NodeId]) -> Cost {
    path.windows(2).map(|e| Cost::new(1, g.edges[&(e[0], e[1])] as i128)).sum()
}

/// Exhaustive counterpart of path selection: all simple paths sorted by
/// (cost, node sequence), top `k`, length filter (dropped when nothing
/// survives), stable sort by average cost, top `display`.
pub fn select_paths_oracle(g: &Digraph, k: usize, display: usize, min_len: usize) -> (Vec<Vec<NodeId>>, bool) {
    let mut all: Vec<(Cost, Vec<NodeId>)> =
        all_simple_paths(g).into_iter().map(|p| (reciprocal_cost(g, &p), p)).collect();
    all.sort();
    all.truncate(k);
    let inner = |p: &Vec<NodeId>| p.iter().filter(|&&n| n != START && n != END).count();
    let filtered: Vec<(Cost, Vec<NodeId>)> = all.iter().filter(|(_, p)| inner(p) >= min_len).cloned().collect();
    let relaxed = filtered.is_empty();
    let mut pool = if relaxed { all } else { filtered };
    pool.sort_by_key(|(c, p)| *c / Cost::from_integer(p.len() as i128 - 1));
    (pool.into_iter().take(display).map(|(_, p)| p).collect(), relaxed)
}

/// Random antisymmetric, self-loop-free graph on START, END and up to
/// `max_inner` other nodes. Weights come from a small range so that equal
/// path costs are common. Cycles are allowed.
pub fn random_graph(rng: &mut ChaCha8Rng, max_inner: usize) -> Digraph {
    let inner = rng.gen_range(1..=max_inner);
    let ids: Vec<NodeId> = (0..inner).map(|i| i + 2).collect();
    let mut g = Digraph::default();
    g.nodes.insert(START, 100);
    g.nodes.insert(END, 100);
    for &id in &ids {
        g.nodes.insert(id, rng.gen_range(3..20));
    }
    let weight = |rng: &mut ChaCha8Rng| [3, 4, 4, 6, 6, 8, 12][rng.gen_range(0..7)];
    for &id in &ids {
        if rng.gen_bool(0.35) {
            g.edges.insert((START, id), weight(rng));
        }
        if rng.gen_bool(0.35) {
            g.edges.insert((id, END), weight(rng));
        }
    }
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            if rng.gen_bool(0.4) {
                let (u, v) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
                g.edges.insert((u, v), weight(rng));
            }
        }
    }
    if rng.gen_bool(0.2) {
        g.edges.insert((START, END), weight(rng));
    }
    g
}

/// Brute-force recount of graph edges: for every recipe, the consecutive
/// cluster pairs (terminals included), each counted once per recipe.
pub fn recount_edges(sequences: &[Vec<NodeId>]) -> BTreeMap<(NodeId, NodeId), u32> {
    let mut out = BTreeMap::new();
    for seq in sequences {
        let mut full = vec![START];
        full.extend(seq);
        full.push(END);
        let mut seen = BTreeSet::new();
        for i in 0..full.len() - 1 {
            let e = (full[i], full[i + 1]);
            if seen.insert(e) {
                *out.entry(e).or_insert(0) += 1;
            }
        }
    }
    out
}
