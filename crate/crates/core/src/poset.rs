//! Finite posets with exact maximum-antichain and minimum-chain-cover
//! solvers.
//!
//! The relation is stored as an explicit list of comparable ordered pairs
//! and transitively closed on demand. Chain covers come from a maximum
//! bipartite matching on the closed relation (minimum path cover), and the
//! matching antichain via the Koenig vertex-cover construction, so
//! `|max_antichain| == |min_chain_cover|` holds by Dilworth's theorem.

use crate::{Error, Result};

/// Poset on elements `0..n` given by comparable ordered pairs `(u, v)`
/// meaning `u` strictly below `v`.
#[derive(Debug, Clone)]
pub struct Poset {
    n: usize,
    below: Vec<Vec<bool>>, // transitive closure, irreflexive
}

impl Poset {
    /// Build from strict comparable pairs; the transitive closure is taken
    /// here. Rejects relations whose closure violates antisymmetry.
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut below = vec![vec![false; n]; n];
        for &(u, v) in pairs {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("pair ({u}, {v}) outside 0..{n}")));
            }
            if u == v {
                return Err(Error::invalid("relation must be irreflexive as stored"));
            }
            below[u][v] = true;
        }
        // Floyd-Warshall closure.
        for k in 0..n {
            for u in 0..n {
                if below[u][k] {
                    for v in 0..n {
                        if below[k][v] {
                            below[u][v] = true;
                        }
                    }
                }
            }
        }
        for u in 0..n {
            for v in 0..u {
                if below[u][v] && below[v][u] {
                    return Err(Error::invalid(format!("cycle through {u} and {v}")));
                }
            }
        }
        Ok(Poset { n, below })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Strictly below in the closure.
    pub fn lt(&self, u: usize, v: usize) -> bool {
        self.below[u][v]
    }

    pub fn comparable(&self, u: usize, v: usize) -> bool {
        u == v || self.below[u][v] || self.below[v][u]
    }
}

fn kuhn_augment(
    u: usize,
    below: &[Vec<bool>],
    matched_left: &mut [Option<usize>],
    matched_right: &mut [Option<usize>],
    visited: &mut [bool],
) -> bool {
    let n = matched_right.len();
    for v in 0..n {
        if below[u][v] && !visited[v] {
            visited[v] = true;
            let free = match matched_right[v] {
                None => true,
                Some(w) => kuhn_augment(w, below, matched_left, matched_right, visited),
            };
            if free {
                matched_left[u] = Some(v);
                matched_right[v] = Some(u);
                return true;
            }
        }
    }
    false
}

struct Matching {
    matched_left: Vec<Option<usize>>,
    matched_right: Vec<Option<usize>>,
}

fn max_matching(p: &Poset) -> Matching {
    let n = p.n;
    let mut matched_left = vec![None; n];
    let mut matched_right = vec![None; n];
    for u in 0..n {
        let mut visited = vec![false; n];
        kuhn_augment(u, &p.below, &mut matched_left, &mut matched_right, &mut visited);
    }
    Matching {
        matched_left,
        matched_right,
    }
}

/// A maximum-cardinality antichain.
///
/// From the matching, alternating reachability gives a minimum vertex cover
/// (Koenig); the elements untouched by the cover on both sides are pairwise
/// incomparable and there are exactly `n - |matching|` of them.
pub fn max_antichain(p: &Poset) -> Vec<usize> {
    let n = p.n;
    let m = max_matching(p);
    // Alternating BFS/DFS from unmatched left vertices.
    let mut seen_left = vec![false; n];
    let mut seen_right = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&u| m.matched_left[u].is_none()).collect();
    for &u in &stack {
        seen_left[u] = true;
    }
    while let Some(u) = stack.pop() {
        for v in 0..n {
            if p.below[u][v] && !seen_right[v] {
                seen_right[v] = true;
                if let Some(w) = m.matched_right[v] {
                    if !seen_left[w] {
                        seen_left[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
    }
    // Cover = (left not seen) + (right seen); antichain = elements with
    // neither copy in the cover.
    (0..n)
        .filter(|&u| seen_left[u] && !seen_right[u])
        .collect()
}

/// A partition of the elements into the minimum number of chains.
///
/// Matched edge `(u, v)` makes `v` the successor of `u`; maximal successor
/// paths are chains under the closed relation.
pub fn min_chain_cover(p: &Poset) -> Vec<Vec<usize>> {
    let n = p.n;
    let m = max_matching(p);
    let mut has_pred = vec![false; n];
    for u in 0..n {
        if let Some(v) = m.matched_left[u] {
            has_pred[v] = true;
        }
    }
    let mut chains = Vec::new();
    for start in 0..n {
        if has_pred[start] {
            continue;
        }
        let mut chain = vec![start];
        let mut cur = start;
        while let Some(next) = m.matched_left[cur] {
            chain.push(next);
            cur = next;
        }
        chains.push(chain);
    }
    chains
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RandomSource;

    fn random_poset(rng: &mut RandomSource, n: usize, edge_prob_inv: usize) -> Poset {
        // Random DAG respecting the natural order of labels.
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.index(edge_prob_inv) == 0 {
                    pairs.push((u, v));
                }
            }
        }
        Poset::new(n, &pairs).unwrap()
    }

    fn exhaustive_max_antichain(p: &Poset) -> usize {
        let n = p.len();
        let mut best = 0;
        'outer: for mask in 0u32..(1 << n) {
            let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            for (a, &u) in members.iter().enumerate() {
                for &v in &members[a + 1..] {
                    if p.comparable(u, v) {
                        continue 'outer;
                    }
                }
            }
            best = best.max(members.len());
        }
        best
    }

    fn assert_valid_chain_cover(p: &Poset, chains: &[Vec<usize>]) {
        let mut seen = vec![false; p.len()];
        for chain in chains {
            for w in chain.windows(2) {
                assert!(p.lt(w[0], w[1]), "chain breaks order at {w:?}");
            }
            for &u in chain {
                assert!(!seen[u], "element {u} covered twice");
                seen[u] = true;
            }
        }
        assert!(seen.iter().all(|&s| s), "cover misses elements");
    }

    fn assert_valid_antichain(p: &Poset, ac: &[usize]) {
        for (i, &u) in ac.iter().enumerate() {
            for &v in &ac[i + 1..] {
                assert!(!p.comparable(u, v), "{u} and {v} comparable");
            }
        }
    }

    #[test]
    fn total_order_has_singleton_antichain_and_one_chain() {
        let pairs: Vec<(usize, usize)> = (0..4).map(|i| (i, i + 1)).collect();
        let p = Poset::new(5, &pairs).unwrap();
        assert_eq!(max_antichain(&p).len(), 1);
        let chains = min_chain_cover(&p);
        assert_eq!(chains.len(), 1);
        assert_valid_chain_cover(&p, &chains);
    }

    #[test]
    fn discrete_order_is_all_antichain() {
        let p = Poset::new(5, &[]).unwrap();
        let ac = max_antichain(&p);
        assert_eq!(ac.len(), 5);
        assert_eq!(min_chain_cover(&p).len(), 5);
    }

    #[test]
    fn grid_3x3_antidiagonal() {
        // Elements (row, col) -> 3*row + col, dominance order.
        let mut pairs = Vec::new();
        for r1 in 0..3usize {
            for c1 in 0..3usize {
                for r2 in 0..3usize {
                    for c2 in 0..3usize {
                        if (r1, c1) != (r2, c2) && r1 <= r2 && c1 <= c2 {
                            pairs.push((3 * r1 + c1, 3 * r2 + c2));
                        }
                    }
                }
            }
        }
        let p = Poset::new(9, &pairs).unwrap();
        assert_eq!(exhaustive_max_antichain(&p), 3);
        let ac = max_antichain(&p);
        assert_eq!(ac.len(), 3);
        assert_valid_antichain(&p, &ac);
        let chains = min_chain_cover(&p);
        assert_eq!(chains.len(), 3);
        assert_valid_chain_cover(&p, &chains);
    }

    #[test]
    fn rejects_cycles() {
        assert!(Poset::new(3, &[(0, 1), (1, 2), (2, 0)]).is_err());
        assert!(Poset::new(2, &[(0, 0)]).is_err());
    }

    #[test]
    fn dilworth_duality_on_random_posets() {
        let mut rng = RandomSource::new(5);
        for round in 0..400 {
            let n = 1 + rng.index(12);
            let density = 2 + rng.index(4);
            let p = random_poset(&mut rng, n, density);
            let ac = max_antichain(&p);
            let chains = min_chain_cover(&p);
            assert_valid_antichain(&p, &ac);
            assert_valid_chain_cover(&p, &chains);
            assert_eq!(ac.len(), chains.len(), "round {round}");
            assert_eq!(ac.len(), exhaustive_max_antichain(&p), "round {round}");
        }
    }
}
