//! Simple undirected graphs on at most 64 vertices.
//!
//! Vertex subsets are `u64` bitmasks (bit `v` set means vertex `v` is in the
//! set), so adjacency is stored as one neighbour mask per vertex.

use alloc::vec;
use alloc::vec::Vec;

use crate::rng::Xoshiro256StarStar;
use crate::Error;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// An undirected simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Canonical edge list: `u < v`, sorted lexicographically.
    edges: Vec<(usize, usize)>,
    adj: Vec<u64>,
}

impl Graph {
    /// Builds a graph from an edge list. Pairs may be given in either
    /// orientation; they are stored canonically.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, Error> {
        check_vertex_count(n)?;
        let mut adj = vec![0u64; n];
        let mut canonical = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            for vertex in [a, b] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { vertex, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if adj[u] & bit(v) != 0 {
                return Err(Error::DuplicateEdge(u, v));
            }
            adj[u] |= bit(v);
            adj[v] |= bit(u);
            canonical.push((u, v));
        }
        canonical.sort_unstable();
        Ok(Self {
            n,
            edges: canonical,
            adj,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbour mask of vertex `v`.
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    /// Mask with one bit per vertex.
    pub fn full_mask(&self) -> u64 {
        full_mask(self.n)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    /// Whether no two vertices of `set` are adjacent.
    pub fn is_independent(&self, set: u64) -> bool {
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.adj[v] & set != 0 {
                return false;
            }
        }
        true
    }

    /// Whether `set` is independent and no vertex can be added to it.
    pub fn is_maximal_independent(&self, set: u64) -> bool {
        if !self.is_independent(set) {
            return false;
        }
        (0..self.n).all(|v| set & bit(v) != 0 || self.adj[v] & set != 0)
    }

    /// Average degree `2m/n`.
    pub fn average_degree(&self) -> f64 {
        2.0 * self.m() as f64 / self.n as f64
    }
}

pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_vertex_count(n: usize) -> Result<(), Error> {
    if n == 0 || n > MAX_VERTICES {
        Err(Error::VertexCount(n))
    } else {
        Ok(())
    }
}

fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Erdős–Rényi `G(n, p)`.
///
/// Pairs `(u, v)` with `u < v` are visited in lexicographic order and each is
/// kept when one `next_f64` draw is below `p`.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<Graph, Error> {
    check_vertex_count(n)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Probability(p));
    }
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_f64() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Uniform `G(n, m)`: a partial Fisher–Yates shuffle over the lexicographic
/// pair indices picks `m` distinct pairs.
pub fn gen_gnm(n: usize, m: usize, seed: u64) -> Result<Graph, Error> {
    check_vertex_count(n)?;
    let available = pair_count(n);
    if m > available {
        return Err(Error::TooManyEdges {
            requested: m,
            available,
        });
    }
    let mut pairs = Vec::with_capacity(available);
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    for k in 0..m {
        let j = k + rng.below((available - k) as u64) as usize;
        pairs.swap(k, j);
    }
    Graph::from_edges(n, &pairs[..m])
}

/// The spider `S_legs`: centre `0` and legs `0 - (2i-1) - 2i` for
/// `i = 1..=legs`, giving `2 legs + 1` vertices and `2 legs` edges.
///
/// It has `2^legs` maximal independent sets and one maximum independent set,
/// the centre plus every leg tip.
pub fn spider(legs: usize) -> Result<Graph, Error> {
    if legs == 0 || 2 * legs + 1 > MAX_VERTICES {
        return Err(Error::SpiderLegs(legs));
    }
    let mut edges = Vec::with_capacity(2 * legs);
    for i in 1..=legs {
        let (a, b) = (2 * i - 1, 2 * i);
        edges.push((0, a));
        edges.push((a, b));
    }
    Graph::from_edges(2 * legs + 1, &edges)
}

/// Graph on `n` vertices with no edges.
pub fn edgeless(n: usize) -> Result<Graph, Error> {
    Graph::from_edges(n, &[])
}

/// Complete graph `K_n`.
pub fn complete(n: usize) -> Result<Graph, Error> {
    check_vertex_count(n)?;
    let mut edges = Vec::with_capacity(pair_count(n));
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges)
}
