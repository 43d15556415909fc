//! Canonical labeling by equitable partition refinement and a backtracking
//! search over individualizations, pruned with the automorphisms discovered
//! along the way.
//!
//! Partitions are ordered lists of vertex bit sets. Refinement only looks at
//! cell positions and neighbor counts, so it commutes with relabeling; the
//! canonical leaf is the one whose relabeled adjacency rows are
//! lexicographically greatest.

use super::{bits, Graph, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    /// The canonical representative.
    pub graph: Graph,
    /// `perm[v]` is the canonical label of input vertex `v`.
    pub perm: Vec<usize>,
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.order();
    if n == 0 {
        return CanonicalForm {
            graph: g.clone(),
            perm: Vec::new(),
        };
    }
    let mut search = Search {
        g,
        n,
        best_code: [0; MAX_ORDER],
        best_lab: Vec::new(),
        autos: Vec::new(),
    };
    let mut cells = initial_partition(g);
    let active = vec![true; cells.len()];
    refine(g, &mut cells, active);
    search.descend(cells, &mut Vec::new());

    let perm = search.best_lab;
    CanonicalForm {
        graph: Graph::from_rows(n, &search.best_code[..n]),
        perm,
    }
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut dg: Vec<_> = (0..g.order()).map(|v| g.degree(v)).collect();
    let mut dh: Vec<_> = (0..h.order()).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    dg == dh && canonical_form(g).graph == canonical_form(h).graph
}

/// Cells ordered by ascending degree.
fn initial_partition(g: &Graph) -> Vec<u32> {
    let mut by_degree = [0u32; MAX_ORDER + 1];
    for v in 0..g.order() {
        by_degree[g.degree(v)] |= 1 << v;
    }
    by_degree.into_iter().filter(|&c| c != 0).collect()
}

/// Refines `cells` to the coarsest equitable partition finer than it,
/// using the cells flagged in `active` as the initial splitters.
fn refine(g: &Graph, cells: &mut Vec<u32>, mut active: Vec<bool>) {
    let n = g.order();
    while let Some(s) = active.iter().position(|&a| a) {
        active[s] = false;
        let splitter = cells[s];
        let mut i = 0;
        while i < cells.len() {
            let cell = cells[i];
            if cell.count_ones() == 1 {
                i += 1;
                continue;
            }
            let mut groups = [0u32; MAX_ORDER + 1];
            let mut used = 0u64;
            for v in bits(cell) {
                let c = (g.row(v) & splitter).count_ones() as usize;
                groups[c] |= 1 << v;
                used |= 1 << c;
            }
            if used.count_ones() == 1 {
                i += 1;
                continue;
            }
            let pieces: Vec<u32> = groups[..=n.min(MAX_ORDER)]
                .iter()
                .copied()
                .filter(|&c| c != 0)
                .collect();
            let k = pieces.len();
            cells.splice(i..=i, pieces);
            active.splice(i..=i, std::iter::repeat_n(true, k));
            i += k;
        }
    }
}

struct Search<'g> {
    g: &'g Graph,
    n: usize,
    best_code: [u32; MAX_ORDER],
    best_lab: Vec<usize>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<u32>, prefix: &mut Vec<usize>) {
        if cells.len() == self.n {
            self.leaf(&cells);
            return;
        }
        let t = cells
            .iter()
            .position(|c| c.count_ones() > 1)
            .expect("non-discrete partition has a non-singleton cell");
        let target = cells[t];
        let mut explored: Vec<usize> = Vec::new();
        for v in bits(target) {
            if !explored.is_empty() && self.same_orbit_as_explored(v, prefix, &explored) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..t]);
            child.push(1 << v);
            child.push(target & !(1 << v));
            child.extend_from_slice(&cells[t + 1..]);
            let mut active = vec![false; child.len()];
            active[t] = true;
            refine(self.g, &mut child, active);
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
            explored.push(v);
        }
    }

    /// Orbit test under the known automorphisms that fix `prefix` pointwise.
    fn same_orbit_as_explored(&self, v: usize, prefix: &[usize], explored: &[usize]) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for a in &self.autos {
            if prefix.iter().all(|&p| a[p] == p) {
                any = true;
                for (x, &ax) in a.iter().enumerate().take(self.n) {
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, ax));
                    if rx != ry {
                        parent[rx] = ry;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&e| find(&mut parent, e) == rv)
    }

    fn leaf(&mut self, cells: &[u32]) {
        let n = self.n;
        let mut lab = vec![0usize; n];
        for (pos, &c) in cells.iter().enumerate() {
            lab[c.trailing_zeros() as usize] = pos;
        }
        let mut code = [0u32; MAX_ORDER];
        for u in 0..n {
            let mut row = 0u32;
            for w in self.g.neighbors(u) {
                row |= 1 << lab[w];
            }
            code[lab[u]] = row;
        }
        if self.best_lab.is_empty() {
            self.best_code = code;
            self.best_lab = lab;
            return;
        }
        // Compare rows with lower labels more significant.
        let ord = code[..n]
            .iter()
            .zip(&self.best_code[..n])
            .map(|(a, b)| a.reverse_bits().cmp(&b.reverse_bits()))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal);
        match ord {
            std::cmp::Ordering::Greater => {
                self.best_code = code;
                self.best_lab = lab;
            }
            std::cmp::Ordering::Equal => {
                // lab and best_lab give the same labeled graph, so
                // best_lab^-1 . lab is an automorphism.
                let mut inv_best = vec![0usize; n];
                for (v, &p) in self.best_lab.iter().enumerate() {
                    inv_best[p] = v;
                }
                let gamma: Vec<usize> = (0..n).map(|v| inv_best[lab[v]]).collect();
                if gamma.iter().enumerate().any(|(i, &x)| i != x) {
                    self.autos.push(gamma);
                }
            }
            std::cmp::Ordering::Less => {}
        }
    }
}
