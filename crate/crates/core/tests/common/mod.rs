//! Brute-force oracles shared by the oracle, property and acceptance tests.
//! None of them calls the library's algorithms; they only read adjacency.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use cospec::genreg::{generate_with, Strategy};
use cospec::graph::Graph;
use cospec::GenSpec;
use cospec::{canonical_form, char_poly, chromatic_index, count_3_edge_colorings, is_hamiltonian};
use num_bigint::BigInt;

// ---------------------------------------------------------------- charpoly

/// `det(xI - A)` by summing over all permutations, constant term first.
///
/// The entry at `(i, p(i))` is `x` on the diagonal, `-1` on an edge and `0`
/// otherwise, so each nonzero term is `sign * (-1)^moved * x^fixed`.
pub fn leibniz_charpoly(g: &Graph) -> Vec<i64> {
    let n = g.order();
    let mut total = vec![0i64; n + 1];
    let mut perm: Vec<usize> = (0..n).collect();
    for_each_permutation(&mut perm, 0, 1, &mut |p, sign| {
        let mut fixed = 0;
        for (i, &j) in p.iter().enumerate() {
            if i == j {
                fixed += 1;
            } else if !g.has_edge(i, j) {
                return;
            }
        }
        let moved = n - fixed;
        total[fixed] += if moved.is_multiple_of(2) { sign } else { -sign };
    });
    total
}

/// Visits every permutation of `p[k..]` with its sign.
fn for_each_permutation(p: &mut [usize], k: usize, sign: i64, f: &mut impl FnMut(&[usize], i64)) {
    if k == p.len() {
        f(p, sign);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        for_each_permutation(p, k + 1, if i == k { sign } else { -sign }, f);
        p.swap(k, i);
    }
}

pub fn charpoly_matches_leibniz(g: &Graph) -> bool {
    let expected: Vec<BigInt> = leibniz_charpoly(g).into_iter().map(BigInt::from).collect();
    char_poly(g).coeffs() == &expected[..]
}

/// Every labeled graph on `n` vertices, as the bit pattern over pairs.
pub fn all_labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

// ---------------------------------------------------------- edge colorings

/// Number of assignments of `palette` colors to edges with no two edges
/// at a vertex sharing a color, by trying all `palette^m` assignments.
pub fn brute_force_colorings(g: &Graph, palette: u8) -> u64 {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let m = edges.len();
    let mut color = vec![0u8; m];
    let mut count = 0;
    loop {
        let mut seen = vec![0u8; g.order()];
        let proper = edges.iter().zip(&color).all(|(&(u, v), &c)| {
            let bit = 1 << c;
            let ok = (seen[u] | seen[v]) & bit == 0;
            seen[u] |= bit;
            seen[v] |= bit;
            ok
        });
        count += proper as u64;
        let mut i = 0;
        while i < m && color[i] + 1 == palette {
            color[i] = 0;
            i += 1;
        }
        if i == m {
            return count;
        }
        color[i] += 1;
    }
}

/// Compares chromatic index and (for cubic graphs) the coloring count.
pub fn edge_coloring_agrees(g: &Graph) -> Result<(), String> {
    let k = g.regular_degree().expect("regular input");
    let ci = chromatic_index(g).map_err(|e| e.to_string())?;
    let colorable = k == 0 || brute_force_colorings(g, k as u8) > 0;
    let expected = if colorable { k } else { k + 1 };
    if ci.index != expected {
        return Err(format!(
            "{g}: chromatic index {} but brute force says {expected}",
            ci.index
        ));
    }
    if let Some(w) = &ci.witness {
        if !w.validate(g, ci.index) {
            return Err(format!("{g}: witness coloring is not proper"));
        }
    }
    if k == 3 {
        let count = count_3_edge_colorings(g).map_err(|e| e.to_string())?;
        let brute = brute_force_colorings(g, 3);
        if count != brute.into() {
            return Err(format!(
                "{g}: {count} 3-edge-colorings, brute force {brute}"
            ));
        }
    }
    Ok(())
}

// ------------------------------------------------------------ Hamiltonicity

/// Tries every ordering of vertices `1..n` after vertex 0.
pub fn brute_force_hamiltonian(g: &Graph) -> bool {
    let n = g.order();
    if n < 3 {
        return false;
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let mut found = false;
    for_each_permutation(&mut rest, 0, 1, &mut |p, _| {
        if found {
            return;
        }
        let cycle_ok = g.has_edge(0, p[0])
            && g.has_edge(p[p.len() - 1], 0)
            && p.windows(2).all(|w| g.has_edge(w[0], w[1]));
        found |= cycle_ok;
    });
    found
}

pub fn hamiltonicity_agrees(g: &Graph) -> Result<(), String> {
    let brute = brute_force_hamiltonian(g);
    let got = match is_hamiltonian(g) {
        Ok(Some(cycle)) => {
            if !cospec::edgecolor::validate_cycle(g, &cycle) {
                return Err(format!("{g}: invalid cycle {cycle:?}"));
            }
            true
        }
        Ok(None) => false,
        // Small or disconnected graphs are never Hamiltonian.
        Err(_) => false,
    };
    if got != brute {
        return Err(format!("{g}: hamiltonian {got}, brute force {brute}"));
    }
    Ok(())
}

// ------------------------------------------------------------- isomorphism

/// Per-vertex invariant: degree, triangles through the vertex, and the
/// sorted degrees of its neighbors.
type Invariant = (usize, usize, Vec<usize>);

fn vertex_invariant(g: &Graph, v: usize) -> Invariant {
    let nb: Vec<usize> = g.neighbors(v).collect();
    let mut tri = 0;
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            tri += g.has_edge(a, b) as usize;
        }
    }
    let mut degs: Vec<usize> = nb.iter().map(|&w| g.degree(w)).collect();
    degs.sort_unstable();
    (nb.len(), tri, degs)
}

/// Isomorphism by backtracking over vertex images with invariant pruning.
pub fn oracle_isomorphic(g: &Graph, h: &Graph) -> bool {
    let n = g.order();
    if n != h.order() || g.edge_count() != h.edge_count() {
        return false;
    }
    let ig: Vec<_> = (0..n).map(|v| vertex_invariant(g, v)).collect();
    let ih: Vec<_> = (0..n).map(|v| vertex_invariant(h, v)).collect();
    let mut a = ig.clone();
    let mut b = ih.clone();
    a.sort();
    b.sort();
    if a != b {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        g: &Graph,
        h: &Graph,
        ig: &[Invariant],
        ih: &[Invariant],
        v: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = g.order();
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || ig[v] != ih[w] {
                continue;
            }
            if (0..v).any(|u| g.has_edge(u, v) != h.has_edge(map[u], w)) {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if extend(g, h, ig, ih, v + 1, map, used) {
                return true;
            }
            used[w] = false;
        }
        false
    }
    extend(g, h, &ig, &ih, 0, &mut map, &mut used)
}

/// Groups graphs into isomorphism classes with [`oracle_isomorphic`];
/// returns one representative per class.
pub fn oracle_classes(graphs: impl IntoIterator<Item = Graph>) -> Vec<Graph> {
    let mut buckets: BTreeMap<Vec<Invariant>, Vec<Graph>> = BTreeMap::new();
    for g in graphs {
        let mut key: Vec<_> = (0..g.order()).map(|v| vertex_invariant(&g, v)).collect();
        key.sort();
        let reps = buckets.entry(key).or_default();
        if !reps.iter().any(|r| oracle_isomorphic(r, &g)) {
            reps.push(g);
        }
    }
    buckets.into_values().flatten().collect()
}

// -------------------------------------------------------------- generation

/// Every labeled k-regular graph on `n` vertices in which vertex 0 is
/// adjacent to exactly `1..=k`. Every k-regular graph has such a labeling.
pub fn labeled_regular_graphs(n: usize, k: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    if k >= n || (n * k) % 2 == 1 {
        return out;
    }
    let mut g = Graph::from_edges(n, &(1..=k).map(|v| (0, v)).collect::<Vec<_>>()).unwrap();
    if k == 0 {
        return vec![g];
    }
    fn fill(g: &mut Graph, n: usize, k: usize, v: usize, from: usize, out: &mut Vec<Graph>) {
        if v == n {
            out.push(g.clone());
            return;
        }
        if g.degree(v) == k {
            fill(g, n, k, v + 1, v + 2, out);
            return;
        }
        for w in from.max(v + 1)..n {
            if g.degree(w) < k && !g.has_edge(v, w) {
                *g = g.with_edge(v, w).unwrap();
                fill(g, n, k, v, w + 1, out);
                *g = g.without_edge(v, w).unwrap();
            }
        }
    }
    fill(&mut g, n, k, 1, 2, &mut out);
    out
}

/// Checks the generator, in both strategies, against the labeled
/// enumeration quotiented by [`oracle_isomorphic`]. Returns the class count.
pub fn generator_agrees(n: usize, k: usize, connected_only: bool) -> Result<usize, String> {
    let labeled = labeled_regular_graphs(n, k)
        .into_iter()
        .filter(|g| !connected_only || g.is_connected());
    let classes = oracle_classes(labeled);
    let spec = GenSpec {
        n,
        k,
        connected_only,
    };
    for strategy in [Strategy::Orderly, Strategy::CompleteDedup] {
        let got = generate_with(spec, strategy).map_err(|e| e.to_string())?;
        if got.len() != classes.len() {
            return Err(format!(
                "n={n} k={k} connected_only={connected_only} {strategy:?}: {} graphs, oracle {}",
                got.len(),
                classes.len()
            ));
        }
        for rep in &classes {
            let hits = got.iter().filter(|g| oracle_isomorphic(g, rep)).count();
            if hits != 1 {
                return Err(format!("{strategy:?}: class of {rep} emitted {hits} times"));
            }
        }
        for g in &got {
            if g.regular_degree() != Some(k) || (connected_only && !g.is_connected()) {
                return Err(format!(
                    "{strategy:?}: emitted {g} does not match the requested order and degree"
                ));
            }
        }
    }
    Ok(classes.len())
}

// --------------------------------------------------------------- AC6 suites

/// Outcome of an oracle suite: number of cases checked, or the first
/// discrepancy.
pub type SuiteResult = Result<usize, String>;

/// All labeled graphs up to order 6, and one representative per
/// isomorphism class at order 7.
pub fn suite_charpoly() -> SuiteResult {
    let mut checked = 0;
    for n in 0..=6 {
        for g in all_labeled_graphs(n) {
            if !charpoly_matches_leibniz(&g) {
                return Err(format!("charpoly mismatch on {g}"));
            }
            checked += 1;
        }
    }
    let reps: BTreeSet<Graph> = all_labeled_graphs(7)
        .map(|g| canonical_form(&g).graph)
        .collect();
    if reps.len() != 1044 {
        return Err(format!(
            "{} classes of 7-vertex graphs, expected 1044",
            reps.len()
        ));
    }
    for g in &reps {
        if !charpoly_matches_leibniz(g) {
            return Err(format!("charpoly mismatch on {g}"));
        }
        checked += 1;
    }
    Ok(checked)
}

/// Every 2- and 3-regular graph with at most 15 edges (labeled
/// enumeration, so every labeling shape is exercised).
pub fn suite_edge_coloring() -> SuiteResult {
    let mut checked = 0;
    for (k, orders) in [(2usize, 3..=10usize), (3, 4..=10)] {
        for n in orders {
            if n * k / 2 > 15 {
                continue;
            }
            let graphs = labeled_regular_graphs(n, k);
            let reps = oracle_classes(graphs.iter().cloned());
            // Classes carry the decision; a labeled sample also checks that
            // the count is labeling-invariant.
            let stride = graphs.len() / 5 + 1;
            for g in reps.iter().chain(graphs.iter().step_by(stride)) {
                edge_coloring_agrees(g)?;
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// Every graph up to order 6 and every isomorphism class at orders 7, 8
/// among regular graphs, plus a deterministic sample of 8-vertex graphs.
pub fn suite_hamiltonicity() -> SuiteResult {
    let mut checked = 0;
    for n in 0..=6 {
        for g in all_labeled_graphs(n) {
            hamiltonicity_agrees(&g)?;
            checked += 1;
        }
    }
    for n in 7..=8 {
        for k in 2..n {
            for g in oracle_classes(labeled_regular_graphs(n, k)) {
                hamiltonicity_agrees(&g)?;
                checked += 1;
            }
        }
    }
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    for _ in 0..3000 {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        let mut edges = Vec::new();
        let mut bit = 0;
        for u in 0..8 {
            for v in u + 1..8 {
                if (state >> bit) & 3 != 0 {
                    edges.push((u, v));
                }
                bit = (bit + 2) % 62;
            }
        }
        let g = Graph::from_edges(8, &edges).unwrap();
        hamiltonicity_agrees(&g)?;
        checked += 1;
    }
    Ok(checked)
}

/// Cubic graphs up to order 10 (connected and all) and a few other degrees.
pub fn suite_generation() -> SuiteResult {
    let mut checked = 0;
    for n in (4..=10).step_by(2) {
        for connected_only in [true, false] {
            checked += generator_agrees(n, 3, connected_only)?;
        }
    }
    let expected = [(4, 1), (6, 2), (8, 5), (10, 19)];
    for (n, c) in expected {
        let got = generate_with(GenSpec::connected(n, 3), Strategy::Orderly)
            .unwrap()
            .len();
        if got != c {
            return Err(format!(
                "{got} connected cubic graphs on {n} vertices, expected {c}"
            ));
        }
    }
    for (n, k) in [(7, 2), (8, 2), (7, 4), (8, 4), (8, 5), (9, 4)] {
        for connected_only in [true, false] {
            checked += generator_agrees(n, k, connected_only)?;
        }
    }
    Ok(checked)
}
