//! Small undirected simple graphs stored as bit rows.
//!
//! A [`Graph`] has at most [`MAX_ORDER`] vertices, so each adjacency row fits
//! in a single `u32`. Graphs are values: every operation that changes the
//! structure returns a new graph.

mod canon;
mod construct;
mod graph6;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use construct::{line_graph, named, triangle_replace, NamedGraph};
pub use graph6::{parse_graph6, parse_graph6_lines, to_graph6, Graph6Error};

use std::fmt;

use thiserror::Error;

/// Largest supported order.
pub const MAX_ORDER: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("order {0} exceeds the maximum of {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph has {0} edges; at most {MAX_ORDER} are supported")]
    TooManyEdges(usize),
    #[error("graph has no edges")]
    NoEdges,
    #[error("graph is not cubic")]
    NotCubic,
    #[error("permutation is not a bijection on 0..{0}")]
    BadPermutation(usize),
}

/// Undirected simple graph on vertices `0..order`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    rows: [u32; MAX_ORDER],
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    ///
    /// Panics if `n > MAX_ORDER`; use [`Graph::from_edges`] for checked input.
    pub fn empty(n: usize) -> Graph {
        assert!(n <= MAX_ORDER, "order {n} exceeds {MAX_ORDER}");
        Graph {
            n,
            rows: [0; MAX_ORDER],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(n));
        }
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: w,
                        order: n,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows. Rows must be symmetric and
    /// loop-free; bits at or beyond `n` must be clear.
    pub(crate) fn from_rows(n: usize, rows: &[u32]) -> Graph {
        let mut g = Graph::empty(n);
        g.rows[..n].copy_from_slice(&rows[..n]);
        debug_assert!(g.check_invariants());
        g
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    pub(crate) fn clear_edge(&mut self, u: usize, v: usize) {
        self.rows[u] &= !(1 << v);
        self.rows[v] &= !(1 << u);
    }

    fn check_invariants(&self) -> bool {
        let mask = vertex_mask(self.n);
        (0..MAX_ORDER).all(|u| {
            if u >= self.n {
                return self.rows[u] == 0;
            }
            let row = self.rows[u];
            row & !mask == 0
                && row & (1 << u) == 0
                && bits(row).all(|v| self.rows[v] & (1 << u) != 0)
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Adjacency row of `v` as a bit set.
    pub fn row(&self, v: usize) -> u32 {
        self.rows[v]
    }

    pub(crate) fn rows(&self) -> &[u32] {
        &self.rows[..self.n]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] & (1 << v) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> {
        bits(self.rows[v])
    }

    pub fn edge_count(&self) -> usize {
        self.rows()
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| bits(self.rows[u] >> u >> 1).map(move |d| (u, u + 1 + d)))
    }

    /// Common degree if the graph is regular. The order-0 graph counts as
    /// 0-regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = if self.n == 0 { 0 } else { self.degree(0) };
        (0..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    pub fn is_cubic(&self) -> bool {
        self.regular_degree() == Some(3)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.component_of(0) == vertex_mask(self.n)
    }

    /// Vertex set of the connected component containing `v`.
    pub fn component_of(&self, v: usize) -> u32 {
        let mut seen = 1u32 << v;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for u in bits(frontier) {
                next |= self.rows[u];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    pub fn triangle_count(&self) -> usize {
        self.edges()
            .map(|(u, v)| (self.rows[u] & self.rows[v]).count_ones() as usize)
            .sum::<usize>()
            / 3
    }

    /// Length of a shortest cycle, or `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for root in 0..self.n {
            let mut dist = [usize::MAX; MAX_ORDER];
            let mut parent = [usize::MAX; MAX_ORDER];
            let mut queue = std::collections::VecDeque::new();
            dist[root] = 0;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = [u8::MAX; MAX_ORDER];
        for root in 0..self.n {
            if side[root] != u8::MAX {
                continue;
            }
            side[root] = 0;
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                for w in self.neighbors(u) {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        stack.push(w);
                    } else if side[w] == side[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        let n = self.n;
        if perm.len() != n {
            return Err(GraphError::BadPermutation(n));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= n || seen & (1 << p) != 0 {
                return Err(GraphError::BadPermutation(n));
            }
            seen |= 1 << p;
        }
        Ok(self.relabel_unchecked(perm))
    }

    pub(crate) fn relabel_unchecked(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            let mut row = 0u32;
            for v in bits(self.rows[u]) {
                row |= 1 << perm[v];
            }
            g.rows[perm[u]] = row;
        }
        g
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_pair(u, v)?;
        let mut g = self.clone();
        g.set_edge(u, v);
        Ok(g)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_pair(u, v)?;
        let mut g = self.clone();
        g.clear_edge(u, v);
        Ok(g)
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: w,
                    order: self.n,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(())
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(n));
        }
        let mut g = self.clone();
        g.n = n;
        for u in 0..other.n {
            g.rows[self.n + u] = other.rows[u] << self.n;
        }
        Ok(g)
    }

    /// Dense 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|u| (0..self.n).map(|v| self.has_edge(u, v) as i64).collect())
            .collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph({}, {:?})",
            to_graph6(self),
            self.edges().collect::<Vec<_>>()
        )
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_graph6(self))
    }
}

/// Bit mask with the low `n` bits set.
pub(crate) fn vertex_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Iterates the set bit positions of `x` in ascending order.
pub(crate) fn bits(mut x: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(i)
        }
    })
}
