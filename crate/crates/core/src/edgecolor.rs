//! Chromatic index of regular graphs, 3-edge-coloring counts, and
//! Hamiltonian cycles, all by exhaustive backtracking.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bits, Graph, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeColorError {
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph is not cubic")]
    NotCubic,
    #[error("graph has {0} edges; counting supports at most 36")]
    TooLarge(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has fewer than 3 vertices")]
    TooSmall,
}

/// A proper edge coloring, as `(u, v, color)` with `u < v`, in edge order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeColoring {
    pub colors: Vec<(usize, usize, u8)>,
}

impl EdgeColoring {
    /// True if every edge of `g` is colored exactly once, with colors below
    /// `palette`, and no two edges at a vertex share a color.
    pub fn validate(&self, g: &Graph, palette: usize) -> bool {
        if self.colors.len() != g.edge_count() {
            return false;
        }
        let mut seen = [0u64; MAX_ORDER];
        let mut covered = Graph::empty(g.order());
        for &(u, v, c) in &self.colors {
            if u >= g.order() || v >= g.order() || !g.has_edge(u, v) || covered.has_edge(u, v) {
                return false;
            }
            if c as usize >= palette || (seen[u] | seen[v]) & (1 << c) != 0 {
                return false;
            }
            seen[u] |= 1 << c;
            seen[v] |= 1 << c;
            covered.set_edge(u, v);
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticIndex {
    pub index: usize,
    /// A coloring with `index` colors when the graph is class 1.
    pub witness: Option<EdgeColoring>,
}

/// Chromatic index of a k-regular graph: `k` with a witness coloring, or
/// `k + 1` once the search has ruled out every k-coloring.
pub fn chromatic_index(g: &Graph) -> Result<ChromaticIndex, EdgeColorError> {
    let k = g.regular_degree().ok_or(EdgeColorError::NotRegular)?;
    if k == 0 {
        return Ok(ChromaticIndex {
            index: 0,
            witness: Some(EdgeColoring { colors: Vec::new() }),
        });
    }
    let mut search = ColorSearch::new(g, k);
    // Colors are interchangeable: fix the edges at vertex 0.
    let first: Vec<usize> = g.neighbors(0).collect();
    for (c, &w) in first.iter().enumerate() {
        let e = search.edge_index(0, w);
        search.assign(e, c as u8);
    }
    if search.find() {
        let witness = search.coloring();
        debug_assert!(witness.validate(g, k));
        Ok(ChromaticIndex {
            index: k,
            witness: Some(witness),
        })
    } else {
        Ok(ChromaticIndex {
            index: k + 1,
            witness: None,
        })
    }
}

/// Number of proper edge colorings of a cubic graph with three labeled
/// colors.
pub fn count_3_edge_colorings(g: &Graph) -> Result<BigUint, EdgeColorError> {
    if !g.is_cubic() {
        return Err(EdgeColorError::NotCubic);
    }
    let m = g.edge_count();
    if m > 36 {
        return Err(EdgeColorError::TooLarge(m));
    }
    let mut search = ColorSearch::new(g, 3);
    Ok(BigUint::from(search.count()))
}

struct ColorSearch {
    edges: Vec<(usize, usize)>,
    color: Vec<u8>,
    used: [u64; MAX_ORDER],
    palette: u64,
    k: usize,
}

const UNSET: u8 = u8::MAX;

impl ColorSearch {
    fn new(g: &Graph, k: usize) -> ColorSearch {
        let edges: Vec<_> = g.edges().collect();
        ColorSearch {
            color: vec![UNSET; edges.len()],
            edges,
            used: [0; MAX_ORDER],
            palette: if k >= 64 { u64::MAX } else { (1 << k) - 1 },
            k,
        }
    }

    fn edge_index(&self, u: usize, v: usize) -> usize {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).expect("edge exists")
    }

    fn assign(&mut self, e: usize, c: u8) {
        let (u, v) = self.edges[e];
        self.color[e] = c;
        self.used[u] |= 1 << c;
        self.used[v] |= 1 << c;
    }

    fn unassign(&mut self, e: usize) {
        let (u, v) = self.edges[e];
        let c = self.color[e];
        self.color[e] = UNSET;
        self.used[u] &= !(1 << c);
        self.used[v] &= !(1 << c);
    }

    fn free(&self, e: usize) -> u64 {
        let (u, v) = self.edges[e];
        self.palette & !(self.used[u] | self.used[v])
    }

    /// Uncolored edge with the fewest free colors; `None` when all are set.
    /// `Some((e, 0))` signals a dead end.
    fn most_constrained(&self) -> Option<(usize, u64)> {
        let mut best: Option<(usize, u64)> = None;
        for e in 0..self.edges.len() {
            if self.color[e] != UNSET {
                continue;
            }
            let f = self.free(e);
            if f == 0 {
                return Some((e, 0));
            }
            if best.is_none_or(|(_, b)| f.count_ones() < b.count_ones()) {
                best = Some((e, f));
                if f.count_ones() == 1 {
                    break;
                }
            }
        }
        best
    }

    fn find(&mut self) -> bool {
        let Some((e, free)) = self.most_constrained() else {
            return true;
        };
        for c in bits(free as u32) {
            self.assign(e, c as u8);
            if self.find() {
                return true;
            }
            self.unassign(e);
        }
        false
    }

    fn count(&mut self) -> u64 {
        let Some((e, free)) = self.most_constrained() else {
            return 1;
        };
        let mut total = 0;
        for c in bits(free as u32) {
            self.assign(e, c as u8);
            total += self.count();
            self.unassign(e);
        }
        total
    }

    fn coloring(&self) -> EdgeColoring {
        debug_assert!(self.k <= u8::MAX as usize);
        EdgeColoring {
            colors: self
                .edges
                .iter()
                .zip(&self.color)
                .map(|(&(u, v), &c)| (u, v, c))
                .collect(),
        }
    }
}

/// Searches for a Hamiltonian cycle. The cycle starts at vertex 0 and is the
/// lexicographically least one, listed without repeating the start.
pub fn is_hamiltonian(g: &Graph) -> Result<Option<Vec<usize>>, EdgeColorError> {
    let n = g.order();
    if n < 3 {
        return Err(EdgeColorError::TooSmall);
    }
    if !g.is_connected() {
        return Err(EdgeColorError::Disconnected);
    }
    let mut path = vec![0usize];
    let unvisited = crate::graph::vertex_mask(n) & !1;
    Ok(extend_path(g, &mut path, unvisited).then_some(path))
}

fn extend_path(g: &Graph, path: &mut Vec<usize>, unvisited: u32) -> bool {
    let cur = *path.last().expect("path starts at vertex 0");
    if unvisited == 0 {
        return g.has_edge(cur, 0);
    }
    // Every unvisited vertex still needs two usable neighbors: unvisited
    // ones, the current end, or the start.
    let usable = unvisited | (1 << cur) | 1;
    for w in bits(unvisited) {
        if (g.row(w) & usable).count_ones() < 2 {
            return false;
        }
    }
    for w in bits(g.row(cur) & unvisited) {
        path.push(w);
        if extend_path(g, path, unvisited & !(1 << w)) {
            return true;
        }
        path.pop();
    }
    false
}

/// True if `cycle` visits every vertex of `g` once along edges and closes.
pub fn validate_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let n = g.order();
    if cycle.len() != n || n < 3 {
        return false;
    }
    let mut seen = 0u64;
    for &v in cycle {
        if v >= n || seen & (1 << v) != 0 {
            return false;
        }
        seen |= 1 << v;
    }
    (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named, triangle_replace, NamedGraph};

    #[test]
    fn k4_class_one() {
        let k4 = named(NamedGraph::K4);
        let ci = chromatic_index(&k4).unwrap();
        assert_eq!(ci.index, 3);
        assert!(ci.witness.unwrap().validate(&k4, 3));
        assert_eq!(count_3_edge_colorings(&k4).unwrap(), BigUint::from(6u32));
    }

    #[test]
    fn petersen_class_two() {
        let p = named(NamedGraph::Petersen);
        assert_eq!(
            chromatic_index(&p).unwrap(),
            ChromaticIndex {
                index: 4,
                witness: None
            }
        );
        assert_eq!(count_3_edge_colorings(&p).unwrap(), BigUint::from(0u32));
        assert_eq!(is_hamiltonian(&p).unwrap(), None);
    }

    #[test]
    fn triangle_replacement_keeps_count() {
        let t = triangle_replace(&named(NamedGraph::K4), &[2].into()).unwrap();
        assert_eq!(count_3_edge_colorings(&t).unwrap(), BigUint::from(6u32));
    }

    #[test]
    fn errors() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(chromatic_index(&p3), Err(EdgeColorError::NotRegular));
        assert_eq!(count_3_edge_colorings(&p3), Err(EdgeColorError::NotCubic));
        assert_eq!(
            is_hamiltonian(&Graph::empty(2)),
            Err(EdgeColorError::TooSmall)
        );
        let two_k4 = named(NamedGraph::K4)
            .disjoint_union(&named(NamedGraph::K4))
            .unwrap();
        assert_eq!(is_hamiltonian(&two_k4), Err(EdgeColorError::Disconnected));
        let big = triangle_replace(&named(NamedGraph::Petersen), &(0..10).collect()).unwrap();
        assert_eq!(
            count_3_edge_colorings(&big),
            Err(EdgeColorError::TooLarge(45))
        );
    }

    #[test]
    fn hamiltonian_witness() {
        let k4 = named(NamedGraph::K4);
        assert_eq!(is_hamiltonian(&k4).unwrap(), Some(vec![0, 1, 2, 3]));
        let k33 = named(NamedGraph::K33);
        let c = is_hamiltonian(&k33).unwrap().unwrap();
        assert!(validate_cycle(&k33, &c));
        assert_eq!(c, vec![0, 3, 1, 4, 2, 5]);
        assert!(!validate_cycle(&k33, &[0, 1, 2, 3, 4, 5]));
    }

    #[test]
    fn odd_cycle_needs_three_colors() {
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(chromatic_index(&c5).unwrap().index, 3);
        let c6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let ci = chromatic_index(&c6).unwrap();
        assert_eq!(ci.index, 2);
        assert!(ci.witness.unwrap().validate(&c6, 2));
    }
}
