//! The independent-set basis of the degenerate ground space and the
//! one-vertex hop links between its states.
//!
//! States are layered by size. A hop joins a set of size `k` to a set of
//! size `k + 1` that contains it; these are the only pairs coupled by the
//! off-diagonal part of the gauge matrix.

use alloc::vec::Vec;

use crate::graph::{bit, Graph};
use crate::Error;

/// Default cap on the number of independent sets enumerated.
pub const DEFAULT_BASIS_CAP: usize = 5_000_000;

/// Independent sets of a graph, sorted ascending by mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsBasis {
    n: usize,
    states: Vec<u64>,
    sizes: Vec<u32>,
    /// `(lo, hi)` index pairs with `states[hi] = states[lo] | one bit`,
    /// sorted by `(lo, hi)`.
    hops: Vec<(u32, u32)>,
}

impl IsBasis {
    /// Enumerates every independent set with the default cap.
    pub fn build(g: &Graph) -> Result<Self, Error> {
        Self::build_capped(g, DEFAULT_BASIS_CAP)
    }

    /// Enumerates every independent set, failing once more than `cap`
    /// states have been found.
    pub fn build_capped(g: &Graph, cap: usize) -> Result<Self, Error> {
        let n = g.n();
        let adj = g.adjacency();
        let mut states = Vec::new();

        // Depth-first extension in ascending vertex order; `cand` holds the
        // vertices above the last one added that are not adjacent to `set`.
        let mut stack: Vec<(u64, u64)> = Vec::new();
        stack.push((0, g.full_mask()));
        while let Some((set, cand)) = stack.pop() {
            if states.len() == cap {
                return Err(Error::BasisCap {
                    cap,
                    found: states.len(),
                });
            }
            states.push(set);
            let mut rest = cand;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let above = if v == 63 { 0 } else { !((bit(v) << 1) - 1) };
                stack.push((set | bit(v), cand & !adj[v] & above));
            }
        }
        states.sort_unstable();

        if states.len() > u32::MAX as usize {
            return Err(Error::BasisCap {
                cap: u32::MAX as usize,
                found: states.len(),
            });
        }
        let sizes: Vec<u32> = states.iter().map(|s| s.count_ones()).collect();

        let mut hops = Vec::new();
        for (lo, &s) in states.iter().enumerate() {
            // addable vertices: outside s and with no neighbour in s
            let mut rest = g.full_mask() & !s;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if adj[v] & s == 0 {
                    let hi = states
                        .binary_search(&(s | bit(v)))
                        .expect("extension of an independent set by a free vertex is independent");
                    hops.push((lo as u32, hi as u32));
                }
            }
        }
        hops.sort_unstable();

        Ok(Self {
            n,
            states,
            sizes,
            hops,
        })
    }

    /// Number of vertices of the source graph.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[u64] {
        &self.states
    }

    /// Set sizes `N_j` (number of up-spins of state `j`).
    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn hops(&self) -> &[(u32, u32)] {
        &self.hops
    }

    pub fn index_of(&self, mask: u64) -> Option<usize> {
        self.states.binary_search(&mask).ok()
    }

    pub fn max_size(&self) -> usize {
        self.sizes.iter().copied().max().unwrap_or(0) as usize
    }

    /// Indices of the maximum-size states.
    pub fn mis_indices(&self) -> Vec<usize> {
        let top = self.max_size() as u32;
        (0..self.dimension())
            .filter(|&j| self.sizes[j] == top)
            .collect()
    }

    /// Number of states of each size `0..=max_size`.
    pub fn layer_counts(&self) -> Vec<usize> {
        let mut counts = alloc::vec![0usize; self.max_size() + 1];
        for &s in &self.sizes {
            counts[s as usize] += 1;
        }
        counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, edgeless, gen_gnp, spider};
    use alloc::vec;

    #[test]
    fn triangle() {
        let b = IsBasis::build(&complete(3).unwrap()).unwrap();
        assert_eq!(b.states(), &[0, 1, 2, 4]);
        assert_eq!(b.hops(), &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(b.mis_indices(), vec![1, 2, 3]);
        assert_eq!(b.dimension(), 4);
    }

    #[test]
    fn edgeless_is_hypercube() {
        let b = IsBasis::build(&edgeless(3).unwrap()).unwrap();
        assert_eq!(b.dimension(), 8);
        assert_eq!(b.hops().len(), 12);
        assert_eq!(b.layer_counts(), vec![1, 3, 3, 1]);
        for n in 1..=10 {
            let b = IsBasis::build(&edgeless(n).unwrap()).unwrap();
            assert_eq!(b.dimension(), 1 << n);
            assert_eq!(b.hops().len(), n << (n - 1));
        }
    }

    #[test]
    fn path_on_three_vertices() {
        let b = IsBasis::build(&spider(1).unwrap()).unwrap();
        assert_eq!(b.states(), &[0, 1, 2, 4, 5]);
        assert_eq!(b.hops(), &[(0, 1), (0, 2), (0, 3), (1, 4), (3, 4)]);
    }

    #[test]
    fn spider_dimension_and_unique_mis() {
        for legs in 1..=6usize {
            let b = IsBasis::build(&spider(legs).unwrap()).unwrap();
            assert_eq!(b.dimension(), 3usize.pow(legs as u32) + (1 << legs));
            assert_eq!(b.mis_indices().len(), 1);
            assert_eq!(b.max_size(), legs + 1);
        }
    }

    #[test]
    fn index_lookup() {
        let b = IsBasis::build(&spider(2).unwrap()).unwrap();
        for (j, &s) in b.states().iter().enumerate() {
            assert_eq!(b.index_of(s), Some(j));
        }
        assert_eq!(b.index_of(0b11), None);
    }

    #[test]
    fn cap_is_enforced() {
        let g = edgeless(10).unwrap();
        assert_eq!(
            IsBasis::build_capped(&g, 100),
            Err(Error::BasisCap {
                cap: 100,
                found: 100
            })
        );
        assert!(IsBasis::build_capped(&g, 1024).is_ok());
    }

    #[test]
    fn dense_graph_states_are_independent() {
        let g = gen_gnp(16, 0.5, 9).unwrap();
        let b = IsBasis::build(&g).unwrap();
        assert!(b.states().iter().all(|&s| g.is_independent(s)));
        assert_eq!(b.states()[0], 0);
    }
}
