//! Exact maximum independent set by branch and bound.

use crate::graph::{bit, Graph};

/// Size, one witness and the multiplicity of the maximum independent sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MisResult {
    pub alpha: usize,
    pub witness: u64,
    /// Number of distinct independent sets of size `alpha`.
    pub count_max: u64,
}

/// Computes `alpha(G)` together with the number of maximum independent sets.
///
/// Branches on a highest-degree candidate (take it or drop it), so every
/// independent set is reached along exactly one path. Candidates with no
/// neighbour among the remaining candidates are forced in. The bound is a
/// greedy clique cover of the candidate set: an independent set meets each
/// clique at most once. Subtrees are pruned only when they cannot reach the
/// incumbent size, which keeps ties and makes `count_max` exact.
pub fn exact_mis(g: &Graph) -> MisResult {
    let mut search = Search {
        adj: g.adjacency(),
        best: 0,
        witness: 0,
        count: 1,
    };
    search.branch(0, 0, g.full_mask());
    MisResult {
        alpha: search.best,
        witness: search.witness,
        count_max: search.count,
    }
}

struct Search<'a> {
    adj: &'a [u64],
    best: usize,
    witness: u64,
    count: u64,
}

impl Search<'_> {
    fn branch(&mut self, mut set: u64, mut size: usize, mut cand: u64) {
        // Force in candidates that are isolated within the candidate set.
        loop {
            let mut isolated = 0u64;
            let mut rest = cand;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if self.adj[v] & cand == 0 {
                    isolated |= bit(v);
                }
            }
            if isolated == 0 {
                break;
            }
            set |= isolated;
            size += isolated.count_ones() as usize;
            cand &= !isolated;
        }

        if cand == 0 {
            if size > self.best {
                self.best = size;
                self.witness = set;
                self.count = 1;
            } else if size == self.best {
                self.count += 1;
            }
            return;
        }

        if size + self.clique_cover_bound(cand) < self.best {
            return;
        }

        let pivot = self.max_degree_vertex(cand);
        let without = cand & !bit(pivot);
        self.branch(set | bit(pivot), size + 1, without & !self.adj[pivot]);
        self.branch(set, size, without);
    }

    fn max_degree_vertex(&self, cand: u64) -> usize {
        let mut best_v = cand.trailing_zeros() as usize;
        let mut best_d = 0;
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (self.adj[v] & cand).count_ones();
            if d > best_d {
                best_d = d;
                best_v = v;
            }
        }
        best_v
    }

    fn clique_cover_bound(&self, cand: u64) -> usize {
        let mut left = cand;
        let mut cliques = 0;
        while left != 0 {
            let v = left.trailing_zeros() as usize;
            left &= !bit(v);
            let mut common = self.adj[v] & left;
            while common != 0 {
                let u = common.trailing_zeros() as usize;
                left &= !bit(u);
                common &= self.adj[u] & !bit(u);
            }
            cliques += 1;
        }
        cliques
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, edgeless, gen_gnp, spider};

    fn brute(g: &Graph) -> (usize, u64) {
        let mut best = 0;
        let mut count = 0;
        for s in 0..(1u64 << g.n()) {
            if g.is_independent(s) {
                let k = s.count_ones() as usize;
                if k > best {
                    best = k;
                    count = 1;
                } else if k == best {
                    count += 1;
                }
            }
        }
        (best, count)
    }

    #[test]
    fn named_cases() {
        let k3 = exact_mis(&complete(3).unwrap());
        assert_eq!((k3.alpha, k3.count_max), (1, 3));
        let e7 = exact_mis(&edgeless(7).unwrap());
        assert_eq!((e7.alpha, e7.count_max, e7.witness), (7, 1, 0x7f));
        let s4 = exact_mis(&spider(4).unwrap());
        // centre plus the four leg tips 2, 4, 6, 8
        assert_eq!((s4.alpha, s4.count_max, s4.witness), (5, 1, 0b1_0101_0101));
    }

    #[test]
    fn matches_enumeration_on_random_graphs() {
        for seed in 0..40 {
            for &p in &[0.1, 0.3, 0.5, 0.8] {
                let g = gen_gnp(12, p, seed).unwrap();
                let r = exact_mis(&g);
                assert_eq!((r.alpha, r.count_max), brute(&g), "seed {seed} p {p}");
                assert!(g.is_independent(r.witness));
                assert_eq!(r.witness.count_ones() as usize, r.alpha);
            }
        }
    }

    #[test]
    fn handles_sixty_four_vertices() {
        let g = gen_gnp(64, 0.5, 3).unwrap();
        let r = exact_mis(&g);
        assert!(g.is_independent(r.witness));
        assert!(r.alpha >= 5);
    }
}
