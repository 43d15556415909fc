//! Isomorph-free generation of k-regular graphs.
//!
//! Connected graphs are built in breadth-first order: vertex 0 is the root,
//! vertices are completed in label order, and each vertex is joined either
//! to already discovered, still deficient vertices or to fresh vertices that
//! receive the next free labels. Every labeled graph built this way is a
//! BFS labeling, and every connected graph has at least one.
//!
//! The orderly strategy keeps a labeled graph only if its adjacency rows are
//! the lexicographic maximum over all BFS labelings of the same graph. That
//! maximum is tested on partial graphs as soon as rows become fixed, which
//! prunes most of the tree. The dedup strategy builds every BFS labeling and
//! collapses them by canonical form; it serves as an independent check.
//!
//! Disconnected graphs are assembled as multisets of connected components.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bits, canonical_form, to_graph6, Graph, MAX_ORDER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenSpec {
    pub n: usize,
    pub k: usize,
    pub connected_only: bool,
}

impl GenSpec {
    pub fn connected(n: usize, k: usize) -> GenSpec {
        GenSpec {
            n,
            k,
            connected_only: true,
        }
    }

    pub fn validate(&self) -> Result<(), GenError> {
        let reason = if self.n == 0 {
            "order must be positive"
        } else if self.n > MAX_ORDER {
            "order exceeds 32"
        } else if self.k >= self.n {
            "degree must be smaller than the order"
        } else if self.n * self.k % 2 == 1 {
            "n*k must be even"
        } else {
            return Ok(());
        };
        Err(GenError::InfeasibleSpec {
            n: self.n,
            k: self.k,
            reason,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("no {k}-regular graphs on {n} vertices can be generated: {reason}")]
    InfeasibleSpec {
        n: usize,
        k: usize,
        reason: &'static str,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Canonical BFS-code pruning; no storage of seen graphs.
    Orderly,
    /// All BFS labelings, collapsed by canonical form.
    CompleteDedup,
}

/// One canonical representative per isomorphism class, sorted by graph6.
///
/// Runs on the current rayon pool; the output does not depend on its size.
pub fn generate(spec: GenSpec) -> Result<Vec<Graph>, GenError> {
    generate_with(spec, Strategy::Orderly)
}

pub fn generate_with(spec: GenSpec, strategy: Strategy) -> Result<Vec<Graph>, GenError> {
    spec.validate()?;
    if spec.connected_only {
        return Ok(connected(spec.n, spec.k, strategy));
    }
    Ok(all_graphs(spec.n, spec.k, strategy))
}

pub fn count(spec: GenSpec) -> Result<usize, GenError> {
    generate(spec).map(|g| g.len())
}

fn connected(n: usize, k: usize, strategy: Strategy) -> Vec<Graph> {
    if k == 0 {
        return if n == 1 {
            vec![Graph::empty(1)]
        } else {
            Vec::new()
        };
    }
    let raw = match strategy {
        Strategy::Orderly => bfs_search(n, k, true),
        Strategy::CompleteDedup => bfs_search(n, k, false),
    };
    let mut keyed: Vec<(String, Graph)> = raw
        .into_par_iter()
        .map(|g| {
            let c = canonical_form(&g).graph;
            (to_graph6(&c), c)
        })
        .collect();
    keyed.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    keyed.into_iter().map(|(_, g)| g).collect()
}

fn all_graphs(n: usize, k: usize, strategy: Strategy) -> Vec<Graph> {
    // Feasible component orders, with their connected graphs.
    let mut parts: BTreeMap<usize, Vec<Graph>> = BTreeMap::new();
    for m in 1..=n {
        if m > k && (m * k).is_multiple_of(2) {
            let gs = connected(m, k, strategy);
            if !gs.is_empty() {
                parts.insert(m, gs);
            }
        }
    }
    // Components as (order, index) pairs in non-increasing order.
    let atoms: Vec<(usize, usize)> = parts
        .iter()
        .rev()
        .flat_map(|(&m, gs)| (0..gs.len()).map(move |i| (m, i)))
        .collect();
    let mut out = BTreeSet::new();
    let mut chosen = Vec::new();
    combine(&atoms, 0, n, &mut chosen, &parts, &mut out);
    out.into_iter().map(|(_, g)| g).collect()
}

fn combine(
    atoms: &[(usize, usize)],
    from: usize,
    remaining: usize,
    chosen: &mut Vec<(usize, usize)>,
    parts: &BTreeMap<usize, Vec<Graph>>,
    out: &mut BTreeSet<(String, Graph)>,
) {
    if remaining == 0 {
        let mut g = Graph::empty(0);
        for &(m, i) in chosen.iter() {
            g = g.disjoint_union(&parts[&m][i]).expect("total order is n");
        }
        let c = canonical_form(&g).graph;
        out.insert((to_graph6(&c), c));
        return;
    }
    for a in from..atoms.len() {
        let (m, _) = atoms[a];
        if m <= remaining {
            chosen.push(atoms[a]);
            combine(atoms, a, remaining - m, chosen, parts, out);
            chosen.pop();
        }
    }
}

const NONE: u8 = u8::MAX;

/// Partial BFS-ordered graph.
#[derive(Clone)]
struct Builder {
    n: usize,
    k: usize,
    adj: [u32; MAX_ORDER],
    deg: [u8; MAX_ORDER],
    discovered: usize,
}

impl Builder {
    fn root(n: usize, k: usize) -> Builder {
        Builder {
            n,
            k,
            adj: [0; MAX_ORDER],
            deg: [0; MAX_ORDER],
            discovered: 1,
        }
    }

    fn join(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        self.deg[u] += 1;
        self.deg[v] += 1;
    }

    fn full(&self, v: usize) -> bool {
        self.deg[v] as usize == self.k
    }

    /// All ways of completing vertex `v`.
    fn children(&self, v: usize) -> Vec<Builder> {
        let mut out = Vec::new();
        if v >= self.discovered {
            return out;
        }
        let need = self.k - self.deg[v] as usize;
        let cand: Vec<usize> = (v + 1..self.discovered)
            .filter(|&u| !self.full(u))
            .collect();
        let mut pick = Vec::with_capacity(need);
        self.extend_choices(v, need, &cand, 0, &mut pick, &mut out);
        out
    }

    fn extend_choices(
        &self,
        v: usize,
        need: usize,
        cand: &[usize],
        from: usize,
        pick: &mut Vec<usize>,
        out: &mut Vec<Builder>,
    ) {
        let fresh = need - pick.len();
        if self.discovered + fresh <= self.n {
            let mut b = self.clone();
            for &u in pick.iter() {
                b.join(v, u);
            }
            for _ in 0..fresh {
                let w = b.discovered;
                b.discovered += 1;
                b.join(v, w);
            }
            out.push(b);
        }
        if pick.len() == need {
            return;
        }
        for i in from..cand.len() {
            pick.push(cand[i]);
            self.extend_choices(v, need, cand, i + 1, pick, out);
            pick.pop();
        }
    }

    fn into_graph(self) -> Graph {
        Graph::from_rows(self.n, &self.adj[..self.n])
    }

    /// False if some BFS labeling provably has lexicographically greater
    /// rows than the current one, looking only at rows that can no longer
    /// change.
    fn maybe_canonical(&self) -> bool {
        let mut known = 0;
        while known < self.discovered && self.full(known) {
            known += 1;
        }
        let mut alt = Alt {
            lab: [NONE; MAX_ORDER],
            order: [0; MAX_ORDER],
            count: 0,
        };
        for r in 0..self.discovered {
            if !self.full(r) {
                continue;
            }
            alt.lab[r] = 0;
            alt.order[0] = r as u8;
            alt.count = 1;
            let beats = self.alt_beats(0, known, &mut alt);
            alt.lab[r] = NONE;
            if beats {
                return false;
            }
        }
        true
    }

    fn alt_beats(&self, p: usize, known: usize, alt: &mut Alt) -> bool {
        if p == known || p >= alt.count {
            return false;
        }
        let u = alt.order[p] as usize;
        if !self.full(u) {
            return false;
        }
        let nb = self.adj[u];
        let mut row = 0u32;
        let mut fresh = [0usize; MAX_ORDER];
        let mut t = 0;
        for w in bits(nb) {
            if alt.lab[w] == NONE {
                fresh[t] = w;
                t += 1;
            } else {
                row |= 1 << alt.lab[w];
            }
        }
        if t > 0 {
            row |= (((1u64 << t) - 1) << alt.count) as u32;
        }
        match row.reverse_bits().cmp(&self.adj[p].reverse_bits()) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => self.permute_fresh(p, known, alt, &mut fresh[..t], 0),
        }
    }

    /// Tries every order of labeling the fresh neighbors found at row `p`.
    fn permute_fresh(
        &self,
        p: usize,
        known: usize,
        alt: &mut Alt,
        fresh: &mut [usize],
        i: usize,
    ) -> bool {
        if i == fresh.len() {
            let base = alt.count;
            for (j, &w) in fresh.iter().enumerate() {
                alt.lab[w] = (base + j) as u8;
                alt.order[base + j] = w as u8;
            }
            alt.count += fresh.len();
            let beats = self.alt_beats(p + 1, known, alt);
            alt.count = base;
            for &w in fresh.iter() {
                alt.lab[w] = NONE;
            }
            return beats;
        }
        for j in i..fresh.len() {
            fresh.swap(i, j);
            let beats = self.permute_fresh(p, known, alt, fresh, i + 1);
            fresh.swap(i, j);
            if beats {
                return true;
            }
        }
        false
    }
}

struct Alt {
    lab: [u8; MAX_ORDER],
    order: [u8; MAX_ORDER],
    count: usize,
}

/// Depth (in completed vertices) at which the tree is split into jobs.
const SPLIT_DEPTH: usize = 3;

fn bfs_search(n: usize, k: usize, orderly: bool) -> Vec<Graph> {
    let mut frontier = vec![Builder::root(n, k)];
    let split = SPLIT_DEPTH.min(n);
    for v in 0..split {
        frontier = frontier
            .iter()
            .flat_map(|b| b.children(v))
            .filter(|c| !orderly || c.maybe_canonical())
            .collect();
    }
    frontier
        .into_par_iter()
        .flat_map_iter(|b| {
            let mut out = Vec::new();
            dfs(b, split, orderly, &mut out);
            out
        })
        .collect()
}

fn dfs(b: Builder, v: usize, orderly: bool, out: &mut Vec<Graph>) {
    if v == b.n {
        out.push(b.into_graph());
        return;
    }
    for c in b.children(v) {
        if orderly && !c.maybe_canonical() {
            continue;
        }
        dfs(c, v + 1, orderly, out);
    }
}
