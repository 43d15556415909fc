//! Exact census of cospectral regular graphs.
//!
//! The crate generates connected regular graphs without isomorphic
//! duplicates, groups them by exact integer characteristic polynomial,
//! decides the chromatic index and Hamiltonicity of cospectral mates, and
//! checks whether a cospectral pair can be related by a rational orthogonal
//! similarity.

pub mod census;
pub mod edgecolor;
pub mod genreg;
pub mod graph;
mod serde_util;
pub mod similarity;
pub mod spectra;

pub use census::{
    run_census, run_census_cached, verify_paper_pair, CensusError, CensusOptions, CensusReport,
    CensusSource, ReportCache,
};
pub use edgecolor::{
    chromatic_index, count_3_edge_colorings, is_hamiltonian, ChromaticIndex, EdgeColoring,
};
pub use genreg::{generate, GenSpec};
pub use graph::{
    canonical_form, is_isomorphic, line_graph, named, parse_graph6, to_graph6, triangle_replace,
    CanonicalForm, Graph, GraphError, NamedGraph,
};
pub use similarity::{kernel_vector, lemma1_obstruction, norm_ratio_rational, Lemma1Verdict};
pub use spectra::{char_poly, cospectral_classes, integral_roots, CharPoly, CospectralClass};
