use serde::{Deserialize, Serialize};

use crate::genreg::GenSpec;
use crate::serde_util::decimal;
use crate::similarity::{Lemma1Verdict, PrimitiveIntVector};
use crate::spectra::CharPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceKind {
    Generate,
    Graph6File,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceInfo {
    pub kind: SourceKind,
    /// SHA-256 of the input file, or a generator tag.
    pub digest: String,
    /// Isomorphic repeats dropped from an input file.
    pub duplicates_removed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub spec: GenSpec,
    pub source: SourceInfo,
    pub full_annotation: bool,
    pub total_graphs: usize,
    pub class_count: usize,
    pub pair_count: usize,
    pub triple_count: usize,
    /// Classes with four or more members.
    pub larger_class_count: usize,
    pub classes: Vec<ClassReport>,
    pub differing_chromatic_index_classes: Vec<DifferingClass>,
    /// Wall-clock time; only serialized on request since it breaks
    /// byte-for-byte reproducibility.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub charpoly: CharPoly,
    pub members: Vec<MemberReport>,
    /// Verdicts for every pair of members, present when the class has a
    /// simple integral eigenvalue.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lemma1: Vec<PairVerdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberReport {
    pub graph6: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chromatic_index: Option<usize>,
    /// `(u, v, color)` triples of a coloring with `chromatic_index` colors.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_coloring: Option<Vec<(usize, usize, u8)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hamiltonian: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hamiltonian_cycle: Option<Vec<usize>>,
    /// Primitive eigenvectors of the simple integral eigenvalues.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub kernels: Vec<KernelReport>,
}

impl MemberReport {
    pub fn bare(graph6: String) -> MemberReport {
        MemberReport {
            graph6,
            chromatic_index: None,
            edge_coloring: None,
            hamiltonian: None,
            hamiltonian_cycle: None,
            kernels: Vec::new(),
        }
    }

    pub fn kernel(&self, lambda: i64) -> Option<&PrimitiveIntVector> {
        self.kernels
            .iter()
            .find(|k| k.lambda == lambda)
            .map(|k| &k.vector)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReport {
    #[serde(with = "decimal")]
    pub lambda: i64,
    pub vector: PrimitiveIntVector,
}

/// Verdict for members `a < b` of a class (indices into `members`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub a: usize,
    pub b: usize,
    pub verdict: Lemma1Verdict,
}

/// A class whose members do not all share a chromatic index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferingClass {
    /// Index into `classes`.
    pub class: usize,
    /// Pairs of members with different chromatic indexes.
    pub pairs: Vec<PairVerdict>,
}

impl CensusReport {
    /// Pretty JSON with a trailing newline. Deterministic unless
    /// `with_timing` adds the runtime.
    pub fn to_json(&self, with_timing: bool) -> String {
        let mut r = self.clone();
        if !with_timing {
            r.runtime_ms = None;
        }
        let mut s = serde_json::to_string_pretty(&r).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<CensusReport> {
        serde_json::from_str(text)
    }

    /// One row per class: sizes, polynomial, and per-member annotations
    /// joined with `;`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "class",
            "size",
            "charpoly",
            "graph6",
            "chromatic_index",
            "hamiltonian",
            "lemma1",
        ])
        .expect("in-memory write");
        for (i, c) in self.classes.iter().enumerate() {
            let join = |f: &dyn Fn(&MemberReport) -> String| {
                c.members.iter().map(f).collect::<Vec<_>>().join(";")
            };
            let opt = |o: Option<String>| o.unwrap_or_default();
            let lemma1 = c
                .lemma1
                .iter()
                .map(|p| format!("{}-{}:{}", p.a, p.b, verdict_label(&p.verdict)))
                .collect::<Vec<_>>()
                .join(";");
            let charpoly = c
                .charpoly
                .coeffs()
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            w.write_record([
                i.to_string(),
                c.members.len().to_string(),
                charpoly,
                join(&|m| m.graph6.clone()),
                join(&|m| opt(m.chromatic_index.map(|x| x.to_string()))),
                join(&|m| opt(m.hamiltonian.map(|x| x.to_string()))),
                lemma1,
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("CSV is UTF-8")
    }
}

fn verdict_label(v: &Lemma1Verdict) -> String {
    match v {
        Lemma1Verdict::NoRationalSimilarity { lambda, ratio_sq } => {
            format!("NoRationalSimilarity(lambda={lambda},ratio_sq={ratio_sq})")
        }
        Lemma1Verdict::Inconclusive { reason } => format!("Inconclusive({reason:?})"),
    }
}
