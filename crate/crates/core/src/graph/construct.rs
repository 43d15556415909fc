use std::collections::BTreeSet;

use super::{Graph, GraphError, MAX_ORDER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedGraph {
    Petersen,
    K4,
    K33,
}

/// Standard graphs with a fixed labeling.
///
/// Petersen: outer 5-cycle `0..5`, spokes `i -- i+5`, inner pentagram
/// `5+i -- 5+(i+2)%5`. K33: parts `{0,1,2}` and `{3,4,5}`.
pub fn named(name: NamedGraph) -> Graph {
    let edges: Vec<(usize, usize)> = match name {
        NamedGraph::Petersen => (0..5)
            .flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)])
            .collect(),
        NamedGraph::K4 => vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        NamedGraph::K33 => (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect(),
    };
    let n = match name {
        NamedGraph::Petersen => 10,
        NamedGraph::K4 => 4,
        NamedGraph::K33 => 6,
    };
    Graph::from_edges(n, &edges).expect("named graphs are well formed")
}

/// Line graph; vertex `i` is the `i`-th edge of `g` in [`Graph::edges`] order.
pub fn line_graph(g: &Graph) -> Result<Graph, GraphError> {
    let edges: Vec<_> = g.edges().collect();
    let m = edges.len();
    if m == 0 {
        return Err(GraphError::NoEdges);
    }
    if m > MAX_ORDER {
        return Err(GraphError::TooManyEdges(m));
    }
    let mut lg = Graph::empty(m);
    for i in 0..m {
        for j in i + 1..m {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                lg.set_edge(i, j);
            }
        }
    }
    Ok(lg)
}

/// Replaces each selected vertex of a cubic graph by a triangle.
///
/// A replaced vertex `v` keeps its label for the first triangle corner; the
/// two further corners get fresh labels `n, n+1, ...` in ascending order of
/// the selected vertices. The former neighbors of `v`, in ascending order,
/// attach to the corners `v`, first new, second new.
pub fn triangle_replace(g: &Graph, vertices: &BTreeSet<usize>) -> Result<Graph, GraphError> {
    if !g.is_cubic() {
        return Err(GraphError::NotCubic);
    }
    let n = g.order();
    if let Some(&v) = vertices.iter().find(|&&v| v >= n) {
        return Err(GraphError::VertexOutOfRange {
            vertex: v,
            order: n,
        });
    }
    let total = n + 2 * vertices.len();
    if total > MAX_ORDER {
        return Err(GraphError::OrderTooLarge(total));
    }

    // corner[v] = the three triangle corners of v, matched to sorted neighbors.
    let mut corner: Vec<Option<[usize; 3]>> = vec![None; n];
    for (i, &v) in vertices.iter().enumerate() {
        corner[v] = Some([v, n + 2 * i, n + 2 * i + 1]);
    }
    let endpoint = |v: usize, towards: usize| -> usize {
        match corner[v] {
            None => v,
            Some(c) => {
                let slot = g
                    .neighbors(v)
                    .position(|w| w == towards)
                    .expect("edge endpoint");
                c[slot]
            }
        }
    };

    let mut out = Graph::empty(total);
    for (u, v) in g.edges() {
        out.set_edge(endpoint(u, v), endpoint(v, u));
    }
    for c in corner.iter().flatten() {
        out.set_edge(c[0], c[1]);
        out.set_edge(c[0], c[2]);
        out.set_edge(c[1], c[2]);
    }
    Ok(out)
}
