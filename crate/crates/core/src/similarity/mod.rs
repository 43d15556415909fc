//! Obstructions to a rational orthogonal similarity between cospectral
//! graphs, and Godsil-McKay switching as the constructive counterpart.
//!
//! If `Q` is rational orthogonal with `A(g) = Q^T A(h) Q` and `lambda` is a
//! simple integral eigenvalue, then `Q` maps the integral kernel vector of
//! `A(g) - lambda I` to a rational multiple of that of `A(h) - lambda I`, so
//! the ratio of their norms is rational. An irrational ratio therefore rules
//! out every rational `Q`.

pub mod gm;
mod kernel;

pub use gm::{
    cubic_control_bases, gm_corpus, gm_search, gm_switch, gm_validate, GmCorpusSummary, GmError,
    GmPair, GmPartition,
};
pub use kernel::{kernel_vector, PrimitiveIntVector};

#[cfg(test)]
use num_bigint::BigInt;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::serde_util::decimal;
use crate::spectra::{char_poly, CharPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimilarityError {
    #[error("{0} is not an eigenvalue")]
    NotAnEigenvalue(i64),
    #[error("eigenvalue {0} is not simple")]
    NotSimple(i64),
    #[error("graphs are not cospectral")]
    NotCospectral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InconclusiveReason {
    NoCommonSimpleIntegralEigenvalue,
    AllRatiosRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum Lemma1Verdict {
    /// No rational orthogonal `Q` exists; `ratio_sq` is `|eta|^2 / |xi|^2`
    /// at eigenvalue `lambda`, and is not the square of a rational.
    NoRationalSimilarity {
        #[serde(with = "decimal")]
        lambda: i64,
        #[serde(with = "decimal")]
        ratio_sq: BigRational,
    },
    Inconclusive {
        reason: InconclusiveReason,
    },
}

impl Lemma1Verdict {
    pub fn is_obstruction(&self) -> bool {
        matches!(self, Lemma1Verdict::NoRationalSimilarity { .. })
    }

    /// The verdict with the roles of the two graphs exchanged.
    pub fn swapped(&self) -> Lemma1Verdict {
        match self {
            Lemma1Verdict::NoRationalSimilarity { lambda, ratio_sq } => {
                Lemma1Verdict::NoRationalSimilarity {
                    lambda: *lambda,
                    ratio_sq: ratio_sq.recip(),
                }
            }
            other => other.clone(),
        }
    }
}

/// Whether `|b| / |a|` is rational: true iff `a.normsq * b.normsq` is a
/// perfect square.
pub fn norm_ratio_rational(a: &PrimitiveIntVector, b: &PrimitiveIntVector) -> bool {
    let product = (&a.normsq * &b.normsq).abs();
    is_perfect_square(&product.to_biguint().expect("non-negative"))
}

pub fn is_perfect_square(x: &BigUint) -> bool {
    let r = x.sqrt();
    &r * &r == *x
}

/// Simple integral eigenvalues in the order the obstruction tries them:
/// by absolute value, negative first on ties.
pub fn simple_integral_eigenvalues(p: &CharPoly) -> Vec<i64> {
    let mut simple: Vec<i64> = p
        .integral_roots()
        .into_iter()
        .filter(|r| r.multiplicity == 1)
        .map(|r| r.value)
        .collect();
    simple.sort_by_key(|&l| (l.unsigned_abs(), l));
    simple
}

/// Tries each common simple integral eigenvalue (see
/// [`simple_integral_eigenvalues`]) and reports the first one whose kernel
/// vectors have an irrational norm ratio. `g` supplies `xi`, `h` supplies
/// `eta`.
pub fn lemma1_obstruction(g: &Graph, h: &Graph) -> Result<Lemma1Verdict, SimilarityError> {
    let p = char_poly(g);
    if p != char_poly(h) {
        return Err(SimilarityError::NotCospectral);
    }
    let simple = simple_integral_eigenvalues(&p);
    if simple.is_empty() {
        return Ok(Lemma1Verdict::Inconclusive {
            reason: InconclusiveReason::NoCommonSimpleIntegralEigenvalue,
        });
    }
    for lambda in simple {
        let xi = kernel_vector(g, lambda)?;
        let eta = kernel_vector(h, lambda)?;
        if !norm_ratio_rational(&xi, &eta) {
            return Ok(Lemma1Verdict::NoRationalSimilarity {
                lambda,
                ratio_sq: BigRational::new(eta.normsq.clone(), xi.normsq.clone()),
            });
        }
    }
    Ok(Lemma1Verdict::Inconclusive {
        reason: InconclusiveReason::AllRatiosRational,
    })
}

#[cfg(test)]
pub(crate) fn vector_from(entries: &[i64]) -> PrimitiveIntVector {
    PrimitiveIntVector::normalize(entries.iter().map(|&e| BigInt::from(e)).collect())
        .expect("nonzero vector")
}
