//! End-to-end census: generate or ingest graphs, group them by spectrum,
//! annotate cospectral mates, and check rational similarity.
//!
//! Per-graph and per-member work runs on a rayon pool of the requested size;
//! grouping and assembly are sequential and ordered, so the report does not
//! depend on the worker count.

mod cache;
mod report;

pub use cache::{CacheKey, ReportCache};
pub use report::{
    CensusReport, ClassReport, DifferingClass, KernelReport, MemberReport, PairVerdict, SourceInfo,
    SourceKind,
};

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::edgecolor::{chromatic_index, is_hamiltonian, validate_cycle, EdgeColoring};
use crate::genreg::{generate, GenError, GenSpec};
use crate::graph::{
    canonical_form, is_isomorphic, named, parse_graph6, parse_graph6_lines, to_graph6,
    triangle_replace, Graph, Graph6Error, NamedGraph,
};
use crate::similarity::{
    kernel_vector, lemma1_obstruction, simple_integral_eigenvalues, Lemma1Verdict,
};
use crate::spectra::{cospectral_classes, Poly};

#[derive(Debug, Error)]
pub enum CensusError {
    #[error(transparent)]
    InfeasibleSpec(#[from] GenError),
    #[error("cannot read {path}: {source}")]
    FileError {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}: {source}")]
    ParseError { line: usize, source: Graph6Error },
    #[error("line {line}: {reason}")]
    InputMismatch { line: usize, reason: String },
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CensusSource {
    Generate,
    Graph6File(PathBuf),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CensusOptions {
    /// Annotate every graph, not only members of classes with two or more.
    pub full_annotation: bool,
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
}

/// Tag recorded as the source digest for generated input.
pub fn generator_digest() -> String {
    format!("generate:cospec-{}", env!("CARGO_PKG_VERSION"))
}

pub fn source_digest(source: &CensusSource) -> Result<String, CensusError> {
    match source {
        CensusSource::Generate => Ok(generator_digest()),
        CensusSource::Graph6File(path) => {
            let bytes = std::fs::read(path).map_err(|source| CensusError::FileError {
                path: path.clone(),
                source,
            })?;
            Ok(hex::encode(Sha256::digest(&bytes)))
        }
    }
}

pub fn run_census(
    spec: GenSpec,
    source: &CensusSource,
    options: &CensusOptions,
) -> Result<CensusReport, CensusError> {
    spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs)
        .build()
        .map_err(|e| CensusError::Pool(e.to_string()))?;
    pool.install(|| census_in_pool(spec, source, options))
}

/// Looks the report up in `cache` first; stores fresh results.
pub fn run_census_cached(
    spec: GenSpec,
    source: &CensusSource,
    options: &CensusOptions,
    cache: &ReportCache,
) -> Result<CensusReport, CensusError> {
    let key = CacheKey {
        spec,
        source_digest: source_digest(source)?,
        full_annotation: options.full_annotation,
    };
    if let Some(hit) = cache.get(&key) {
        return Ok(hit);
    }
    let report = run_census(spec, source, options)?;
    if let Err(e) = cache.put(&key, &report) {
        log::warn!("could not write cache entry: {e}");
    }
    Ok(report)
}

fn census_in_pool(
    spec: GenSpec,
    source: &CensusSource,
    options: &CensusOptions,
) -> Result<CensusReport, CensusError> {
    let start = Instant::now();
    let (graphs, source_info) = match source {
        CensusSource::Generate => (
            generate(spec)?,
            SourceInfo {
                kind: SourceKind::Generate,
                digest: generator_digest(),
                duplicates_removed: 0,
            },
        ),
        CensusSource::Graph6File(path) => read_input(spec, path)?,
    };

    let classes = cospectral_classes(&graphs);
    let class_reports: Vec<ClassReport> = classes
        .par_iter()
        .map(|class| {
            let annotate = options.full_annotation || class.len() >= 2;
            let simple = simple_integral_eigenvalues(&class.key);
            let members: Vec<MemberReport> = class
                .members
                .iter()
                .map(|g| {
                    if annotate {
                        annotate_member(g, &simple)
                    } else {
                        MemberReport::bare(to_graph6(g))
                    }
                })
                .collect();
            let mut lemma1 = Vec::new();
            if class.len() >= 2 && !simple.is_empty() {
                for a in 0..class.len() {
                    for b in a + 1..class.len() {
                        lemma1.push(PairVerdict {
                            a,
                            b,
                            verdict: verdict_from_kernels(&members[a], &members[b], &simple),
                        });
                    }
                }
            }
            ClassReport {
                charpoly: class.key.clone(),
                members,
                lemma1,
            }
        })
        .collect();

    // Differing pairs list the member with the smaller chromatic index as
    // `a`, which supplies `xi` in the verdict.
    let mut differing = Vec::new();
    for (i, c) in class_reports.iter().enumerate() {
        let mut pairs = Vec::new();
        for x in 0..c.members.len() {
            for y in x + 1..c.members.len() {
                let (ix, iy) = (c.members[x].chromatic_index, c.members[y].chromatic_index);
                let (Some(ix), Some(iy)) = (ix, iy) else {
                    continue;
                };
                if ix == iy {
                    continue;
                }
                let verdict = match c.lemma1.iter().find(|p| p.a == x && p.b == y) {
                    Some(p) => p.verdict.clone(),
                    None => lemma1_for_members(&c.members[x], &c.members[y]),
                };
                pairs.push(if ix < iy {
                    PairVerdict {
                        a: x,
                        b: y,
                        verdict,
                    }
                } else {
                    PairVerdict {
                        a: y,
                        b: x,
                        verdict: verdict.swapped(),
                    }
                });
            }
        }
        if !pairs.is_empty() {
            differing.push(DifferingClass { class: i, pairs });
        }
    }

    let size_count = |pred: &dyn Fn(usize) -> bool| {
        class_reports
            .iter()
            .filter(|c| pred(c.members.len()))
            .count()
    };
    Ok(CensusReport {
        spec,
        source: source_info,
        full_annotation: options.full_annotation,
        total_graphs: graphs.len(),
        class_count: class_reports.len(),
        pair_count: size_count(&|s| s == 2),
        triple_count: size_count(&|s| s == 3),
        larger_class_count: size_count(&|s| s >= 4),
        classes: class_reports,
        differing_chromatic_index_classes: differing,
        runtime_ms: Some(start.elapsed().as_millis() as u64),
    })
}

fn read_input(spec: GenSpec, path: &PathBuf) -> Result<(Vec<Graph>, SourceInfo), CensusError> {
    let text = std::fs::read_to_string(path).map_err(|source| CensusError::FileError {
        path: path.clone(),
        source,
    })?;
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    let graphs = parse_graph6_lines(&text)
        .map_err(|(line, source)| CensusError::ParseError { line, source })?;
    let parsed = graphs.len();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (line, g) in graphs {
        let mismatch = |reason: String| CensusError::InputMismatch { line, reason };
        if g.order() != spec.n {
            return Err(mismatch(format!(
                "order {} but expected {}",
                g.order(),
                spec.n
            )));
        }
        if g.regular_degree() != Some(spec.k) {
            return Err(mismatch(format!("graph is not {}-regular", spec.k)));
        }
        if spec.connected_only && !g.is_connected() {
            return Err(mismatch("graph is disconnected".into()));
        }
        let c = canonical_form(&g).graph;
        if seen.insert(to_graph6(&c)) {
            out.push(c);
        }
    }
    let info = SourceInfo {
        kind: SourceKind::Graph6File,
        digest,
        duplicates_removed: parsed - out.len(),
    };
    Ok((out, info))
}

fn annotate_member(g: &Graph, simple: &[i64]) -> MemberReport {
    let mut m = MemberReport::bare(to_graph6(g));
    if let Ok(ci) = chromatic_index(g) {
        m.chromatic_index = Some(ci.index);
        m.edge_coloring = ci.witness.map(|w| w.colors);
    }
    m.hamiltonian = Some(false);
    if g.order() >= 3 && g.is_connected() {
        if let Ok(Some(cycle)) = is_hamiltonian(g) {
            m.hamiltonian = Some(true);
            m.hamiltonian_cycle = Some(cycle);
        }
    }
    m.kernels = simple
        .iter()
        .map(|&lambda| KernelReport {
            lambda,
            vector: kernel_vector(g, lambda).expect("simple integral eigenvalue"),
        })
        .collect();
    m
}

/// Same decision as `lemma1_obstruction`, reusing the stored kernels.
fn verdict_from_kernels(a: &MemberReport, b: &MemberReport, simple: &[i64]) -> Lemma1Verdict {
    use crate::similarity::{norm_ratio_rational, InconclusiveReason};
    for &lambda in simple {
        let (Some(xi), Some(eta)) = (a.kernel(lambda), b.kernel(lambda)) else {
            return lemma1_for_members(a, b);
        };
        if !norm_ratio_rational(xi, eta) {
            return Lemma1Verdict::NoRationalSimilarity {
                lambda,
                ratio_sq: BigRational::new(eta.normsq.clone(), xi.normsq.clone()),
            };
        }
    }
    Lemma1Verdict::Inconclusive {
        reason: InconclusiveReason::AllRatiosRational,
    }
}

fn lemma1_for_members(a: &MemberReport, b: &MemberReport) -> Lemma1Verdict {
    let g = parse_graph6(&a.graph6).expect("report graph6");
    let h = parse_graph6(&b.graph6).expect("report graph6");
    lemma1_obstruction(&g, &h).expect("class members are cospectral")
}

/// `(x-3) x (x+2) (x^2-2) (x^2-x-3) (x^3-4x-2) (x^3-4x+1) (x^3+2x^2-2x-2)`,
/// the characteristic polynomial of the order-16 cubic pair with different
/// chromatic indexes.
pub fn pair_polynomial() -> Poly {
    [
        Poly::linear(3),
        Poly::linear(0),
        Poly::linear(-2),
        Poly::from_i64(&[-2, 0, 1]),
        Poly::from_i64(&[-3, -1, 1]),
        Poly::from_i64(&[-2, -4, 0, 1]),
        Poly::from_i64(&[1, -4, 0, 1]),
        Poly::from_i64(&[-2, -2, 2, 1]),
    ]
    .iter()
    .fold(Poly::one(), |acc, f| &acc * f)
}

/// Petersen graph with the vertices of the path 0-1-2 replaced by triangles.
pub fn petersen_with_triangles() -> Graph {
    triangle_replace(&named(NamedGraph::Petersen), &BTreeSet::from([0, 1, 2]))
        .expect("Petersen is cubic")
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("expected a cubic census of order 16, got n={n}, k={k}")]
    WrongReport { n: usize, k: usize },
}

/// Individual outcomes of [`verify_paper_pair`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairCheck {
    pub unique_differing_pair: bool,
    pub charpoly_matches: bool,
    pub class2_member_is_petersen_construction: bool,
    pub class1_member_hamiltonian: bool,
    pub class2_member_not_hamiltonian: bool,
    /// Kernel norms at eigenvalue 0, class-1 member first.
    pub kernel_normsq: Option<(BigInt, BigInt)>,
    pub kernel_normsq_match: bool,
    pub verdict_matches: bool,
}

impl PairCheck {
    pub fn passed(&self) -> bool {
        self.unique_differing_pair
            && self.charpoly_matches
            && self.class2_member_is_petersen_construction
            && self.class1_member_hamiltonian
            && self.class2_member_not_hamiltonian
            && self.kernel_normsq_match
            && self.verdict_matches
    }
}

pub fn verify_paper_pair(report: &CensusReport) -> Result<bool, VerifyError> {
    check_pair(report).map(|c| c.passed())
}

/// Checks the order-16 report against the known pair. Roles are assigned by
/// chromatic index, not by member order.
pub fn check_pair(report: &CensusReport) -> Result<PairCheck, VerifyError> {
    let s = report.spec;
    if (s.n, s.k) != (16, 3) {
        return Err(VerifyError::WrongReport { n: s.n, k: s.k });
    }
    let mut check = PairCheck::default();
    let [differing] = report.differing_chromatic_index_classes.as_slice() else {
        return Ok(check);
    };
    let Some(class) = report.classes.get(differing.class) else {
        return Ok(check);
    };
    let [pair] = differing.pairs.as_slice() else {
        return Ok(check);
    };
    if class.members.len() != 2 {
        return Ok(check);
    }
    let (ma, mb) = (&class.members[pair.a], &class.members[pair.b]);
    let (g_member, h_member) = match (ma.chromatic_index, mb.chromatic_index) {
        (Some(3), Some(4)) => (ma, mb),
        (Some(4), Some(3)) => (mb, ma),
        _ => return Ok(check),
    };
    check.unique_differing_pair = true;

    let (Ok(g), Ok(h)) = (
        parse_graph6(&g_member.graph6),
        parse_graph6(&h_member.graph6),
    ) else {
        return Ok(check);
    };
    check.charpoly_matches = class.charpoly.poly() == &pair_polynomial()
        && crate::spectra::char_poly(&g) == class.charpoly
        && crate::spectra::char_poly(&h) == class.charpoly;
    check.class2_member_is_petersen_construction = is_isomorphic(&h, &petersen_with_triangles());

    let reported_cycle_ok = match (&g_member.hamiltonian, &g_member.hamiltonian_cycle) {
        (Some(true), Some(c)) => validate_cycle(&g, c),
        _ => false,
    };
    check.class1_member_hamiltonian =
        reported_cycle_ok && matches!(is_hamiltonian(&g), Ok(Some(_)));
    check.class2_member_not_hamiltonian =
        h_member.hamiltonian == Some(false) && matches!(is_hamiltonian(&h), Ok(None));

    let class1_witness_ok = g_member
        .edge_coloring
        .as_ref()
        .is_some_and(|c| EdgeColoring { colors: c.clone() }.validate(&g, 3));
    check.class1_member_hamiltonian &= class1_witness_ok;

    if let (Some(xi), Some(eta)) = (g_member.kernel(0), h_member.kernel(0)) {
        let exact = xi.is_eigenvector(&g, 0) && eta.is_eigenvector(&h, 0);
        check.kernel_normsq = Some((xi.normsq.clone(), eta.normsq.clone()));
        check.kernel_normsq_match =
            exact && xi.normsq == BigInt::from(8) && eta.normsq == BigInt::from(24);
    }
    let expected = Lemma1Verdict::NoRationalSimilarity {
        lambda: 0,
        ratio_sq: BigRational::from_integer(BigInt::from(3)),
    };
    let reported = if std::ptr::eq(ma, g_member) {
        pair.verdict.clone()
    } else {
        pair.verdict.swapped()
    };
    check.verdict_matches =
        reported == expected && lemma1_obstruction(&g, &h).as_ref() == Ok(&expected);
    Ok(check)
}
