//! Godsil-McKay switching.
//!
//! Cells `C_1..C_t` must be equitable among themselves; every vertex outside
//! the cells is adjacent to none, half, or all of each cell. Switching
//! complements the adjacency between each half-adjacent outside vertex and
//! the cell, which yields a cospectral graph through a rational orthogonal
//! similarity.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{lemma1_obstruction, Lemma1Verdict};
use crate::genreg::{generate, GenSpec};
use crate::graph::{bits, canonical_form, is_isomorphic, vertex_mask, Graph};
use crate::spectra::char_poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GmError {
    #[error("partition does not satisfy the switching conditions")]
    InvalidPartition,
}

/// Switching cells as vertex bit sets; the remaining vertices form `D`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GmPartition {
    pub cells: Vec<u32>,
}

impl GmPartition {
    pub fn single(cell: &[usize]) -> GmPartition {
        GmPartition {
            cells: vec![cell.iter().fold(0, |m, &v| m | (1 << v))],
        }
    }

    pub fn cell_vertices(&self) -> Vec<Vec<usize>> {
        self.cells.iter().map(|&c| bits(c).collect()).collect()
    }

    fn remainder(&self, n: usize) -> u32 {
        vertex_mask(n) & !self.cells.iter().fold(0, |m, c| m | c)
    }

    fn well_formed(&self, n: usize) -> bool {
        let mut seen = 0u32;
        self.cells.iter().all(|&c| {
            let ok = c != 0 && c & !vertex_mask(n) == 0 && c & seen == 0;
            seen |= c;
            ok
        })
    }
}

pub fn gm_validate(g: &Graph, p: &GmPartition) -> bool {
    let n = g.order();
    if !p.well_formed(n) {
        return false;
    }
    for &ci in &p.cells {
        for &cj in &p.cells {
            let mut counts = bits(ci).map(|v| (g.row(v) & cj).count_ones());
            let first = counts.next();
            if counts.any(|c| Some(c) != first) {
                return false;
            }
        }
    }
    for v in bits(p.remainder(n)) {
        for &c in &p.cells {
            let size = c.count_ones();
            let k = (g.row(v) & c).count_ones();
            if k != 0 && k != size && !(size % 2 == 0 && 2 * k == size) {
                return false;
            }
        }
    }
    true
}

pub fn gm_switch(g: &Graph, p: &GmPartition) -> Result<Graph, GmError> {
    if !gm_validate(g, p) {
        return Err(GmError::InvalidPartition);
    }
    let mut out = g.clone();
    for v in bits(p.remainder(g.order())) {
        for &c in &p.cells {
            if 2 * (g.row(v) & c).count_ones() == c.count_ones() {
                for w in bits(c) {
                    if g.has_edge(v, w) {
                        out.clear_edge(v, w);
                    } else {
                        out.set_edge(v, w);
                    }
                }
            }
        }
    }
    assert_eq!(
        char_poly(&out),
        char_poly(g),
        "switching a valid partition must preserve the spectrum"
    );
    Ok(out)
}

/// Every single-cell partition with a cell of `cell_size` vertices that
/// passes [`gm_validate`], in lexicographic order of the cell.
pub fn gm_search(g: &Graph, cell_size: usize) -> Vec<GmPartition> {
    let n = g.order();
    let mut out = Vec::new();
    if cell_size == 0 || cell_size > n {
        return out;
    }
    let mut cell = Vec::with_capacity(cell_size);
    subsets(n, cell_size, 0, &mut cell, &mut |c| {
        let p = GmPartition::single(c);
        if gm_validate(g, &p) {
            out.push(p);
        }
    });
    out
}

fn subsets(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for v in from..=n - (k - cur.len()) {
        cur.push(v);
        subsets(n, k, v + 1, cur, f);
        cur.pop();
    }
}

/// A switched pair from the positive-control corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GmPair {
    pub base: Graph,
    pub partition: GmPartition,
    pub switched: Graph,
    pub verdict: Lemma1Verdict,
}

/// Outcome of running the switching soundness checks over a corpus.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GmCorpusSummary {
    pub base_graphs: usize,
    pub validated_partitions: usize,
    /// Pairs whose switched graph is not isomorphic to the base.
    pub nonisomorphic_pairs: usize,
    pub cospectral_violations: usize,
    pub obstruction_violations: usize,
}

/// Switches every valid single cell of each size in `cell_sizes` on each
/// base graph. Returns non-isomorphic mates, one per distinct unordered pair
/// of isomorphism classes, together with a summary.
pub fn gm_corpus(bases: &[Graph], cell_sizes: &[usize]) -> (Vec<GmPair>, GmCorpusSummary) {
    let per_base: Vec<(usize, Vec<GmPair>, usize, usize)> = bases
        .par_iter()
        .map(|base| {
            let mut validated = 0;
            let mut pairs = Vec::new();
            let mut cospectral_violations = 0;
            let mut obstruction_violations = 0;
            for &size in cell_sizes {
                for p in gm_search(base, size) {
                    validated += 1;
                    let switched = gm_switch(base, &p).expect("searched partitions validate");
                    if switched == *base || is_isomorphic(base, &switched) {
                        continue;
                    }
                    let verdict = match lemma1_obstruction(base, &switched) {
                        Ok(v) => v,
                        Err(_) => {
                            cospectral_violations += 1;
                            continue;
                        }
                    };
                    if verdict.is_obstruction() {
                        obstruction_violations += 1;
                    }
                    pairs.push(GmPair {
                        base: base.clone(),
                        partition: p,
                        switched,
                        verdict,
                    });
                }
            }
            (
                validated,
                pairs,
                cospectral_violations,
                obstruction_violations,
            )
        })
        .collect();

    let mut summary = GmCorpusSummary {
        base_graphs: bases.len(),
        ..Default::default()
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut pairs = Vec::new();
    for (validated, found, cv, ov) in per_base {
        summary.validated_partitions += validated;
        summary.cospectral_violations += cv;
        summary.obstruction_violations += ov;
        for pair in found {
            let a = canonical_form(&pair.base).graph;
            let b = canonical_form(&pair.switched).graph;
            let key = if a <= b { (a, b) } else { (b, a) };
            if seen.insert(key) {
                pairs.push(pair);
            }
        }
    }
    summary.nonisomorphic_pairs = pairs.len();
    (pairs, summary)
}

/// Connected cubic graphs of the given orders, followed by the distinct
/// graphs obtained from them by deleting one edge or adding one edge.
pub fn cubic_control_bases(orders: impl IntoIterator<Item = usize>) -> Vec<Graph> {
    let mut cubic = Vec::new();
    for n in orders {
        cubic.extend(generate(GenSpec::connected(n, 3)).expect("even order"));
    }
    let near: std::collections::BTreeSet<Graph> = cubic
        .par_iter()
        .flat_map_iter(|g| {
            let n = g.order();
            (0..n)
                .flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
                .map(|(u, v)| {
                    let h = if g.has_edge(u, v) {
                        g.without_edge(u, v)
                    } else {
                        g.with_edge(u, v)
                    };
                    canonical_form(&h.expect("vertices in range")).graph
                })
                .collect::<Vec<_>>()
        })
        .collect();
    cubic.extend(near);
    cubic
}
