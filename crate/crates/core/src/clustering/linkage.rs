use std::cmp::Ordering;

use super::DistanceMatrix;

/// Merge priority: distance, then the pair of smallest member ids.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Candidate {
    d: f64,
    lo: usize,
    hi: usize,
}

impl Candidate {
    fn new(d: f64, x: usize, y: usize) -> Self {
        Candidate { d, lo: x.min(y), hi: x.max(y) }
    }

    fn cmp(&self, other: &Candidate) -> Ordering {
        self.d.total_cmp(&other.d).then(self.lo.cmp(&other.lo)).then(self.hi.cmp(&other.hi))
    }
}

fn components(m: &DistanceMatrix) -> Vec<Vec<usize>> {
    let n = m.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, j, _) in m.finite_entries() {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        let r = find(&mut parent, i);
        groups[r].push(i);
    }
    groups.into_iter().filter(|g| !g.is_empty()).collect()
}

/// Agglomerative complete-linkage clustering.
///
/// Repeatedly merges the two clusters with the smallest maximum pairwise
/// distance, breaking ties by the pair of smallest member ids, and stops
/// once every remaining pair of clusters is infinitely far apart. Returns
/// clusters as ascending member lists, ordered by smallest member.
pub fn complete_linkage(m: &DistanceMatrix) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = components(m).into_iter().flat_map(|c| cluster_component(m, &c)).collect();
    out.sort_by_key(|c| c[0]);
    out
}

fn cluster_component(m: &DistanceMatrix, items: &[usize]) -> Vec<Vec<usize>> {
    let k = items.len();
    if k == 1 {
        return vec![items.to_vec()];
    }
    // Local cluster-to-cluster distances, updated in place on merge. A
    // cluster is addressed by its slot; its label is its smallest member.
    let mut d: Vec<f64> = vec![0.0; k * k];
    for a in 0..k {
        for b in 0..k {
            d[a * k + b] = m.get(items[a], items[b]);
        }
    }
    let mut members: Vec<Vec<usize>> = items.iter().map(|&i| vec![i]).collect();
    let mut active = vec![true; k];
    let label = |members: &Vec<Vec<usize>>, a: usize| members[a][0];

    let best_of = |d: &[f64], active: &[bool], members: &Vec<Vec<usize>>, a: usize| -> Option<(Candidate, usize)> {
        (0..k)
            .filter(|&b| b != a && active[b] && d[a * k + b].is_finite())
            .map(|b| (Candidate::new(d[a * k + b], label(members, a), label(members, b)), b))
            .min_by(|x, y| x.0.cmp(&y.0))
    };
    let mut best: Vec<Option<(Candidate, usize)>> = (0..k).map(|a| best_of(&d, &active, &members, a)).collect();

    while let Some((_, a, b)) =
        (0..k).filter(|&a| active[a]).filter_map(|a| best[a].map(|(c, b)| (c, a, b))).min_by(|x, y| x.0.cmp(&y.0))
    {
        // Merge b into a.
        let (a, b) = if label(&members, a) < label(&members, b) { (a, b) } else { (b, a) };
        let moved = std::mem::take(&mut members[b]);
        members[a].extend(moved);
        members[a].sort_unstable();
        active[b] = false;
        best[b] = None;
        for c in 0..k {
            if active[c] && c != a {
                let v = d[a * k + c].max(d[b * k + c]);
                d[a * k + c] = v;
                d[c * k + a] = v;
            }
        }
        for c in 0..k {
            if !active[c] {
                continue;
            }
            let stale = c == a || matches!(best[c], Some((_, t)) if t == a || t == b);
            if stale {
                best[c] = best_of(&d, &active, &members, c);
            } else if d[c * k + a].is_finite() {
                let cand = Candidate::new(d[c * k + a], label(&members, c), label(&members, a));
                if best[c].is_none_or(|(cur, _)| cand.cmp(&cur) == Ordering::Less) {
                    best[c] = Some((cand, a));
                }
            }
        }
    }
    (0..k).filter(|&a| active[a]).map(|a| members[a].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_infinite_gives_singletons() {
        let m = DistanceMatrix::new(3);
        assert_eq!(complete_linkage(&m), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn two_close_items_merge() {
        let mut m = DistanceMatrix::new(2);
        m.set(0, 1, 0.1);
        assert_eq!(complete_linkage(&m), vec![vec![0, 1]]);
    }

    #[test]
    fn infinite_member_pair_blocks_merge() {
        // 0-1 close, 1-2 close, 0-2 infinite: only one merge may happen.
        let mut m = DistanceMatrix::new(3);
        m.set(0, 1, 0.2);
        m.set(1, 2, 0.1);
        assert_eq!(complete_linkage(&m), vec![vec![0], vec![1, 2]]);
    }

    #[test]
    fn ties_prefer_smallest_ids() {
        let mut m = DistanceMatrix::new(4);
        m.set(2, 3, 0.5);
        m.set(0, 1, 0.5);
        m.set(1, 2, 0.5);
        assert_eq!(complete_linkage(&m), vec![vec![0, 1], vec![2, 3]]);
    }
}
