//! Exact one-dimensional eigenspaces via fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::SimilarityError;
use crate::graph::Graph;
use crate::serde_util::{decimal, decimal_vec};
use crate::spectra::char_poly;

/// Integer vector with coprime entries whose first nonzero entry is positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveIntVector {
    #[serde(with = "decimal_vec")]
    pub entries: Vec<BigInt>,
    #[serde(with = "decimal")]
    pub normsq: BigInt,
}

impl PrimitiveIntVector {
    /// Divides out the content and fixes the sign. `None` for the zero vector.
    pub fn normalize(mut entries: Vec<BigInt>) -> Option<PrimitiveIntVector> {
        let content = entries.iter().fold(BigInt::zero(), |g, e| g.gcd(e));
        if content.is_zero() {
            return None;
        }
        let first_negative = entries.iter().find(|e| !e.is_zero())?.is_negative();
        for e in entries.iter_mut() {
            *e = &*e / &content;
            if first_negative {
                *e = -&*e;
            }
        }
        let normsq = entries.iter().map(|e| e * e).sum();
        Some(PrimitiveIntVector { entries, normsq })
    }

    /// Checks `A v = lambda v` exactly.
    pub fn is_eigenvector(&self, g: &Graph, lambda: i64) -> bool {
        let n = g.order();
        if self.entries.len() != n {
            return false;
        }
        let lambda = BigInt::from(lambda);
        (0..n).all(|i| {
            let av: BigInt = g.neighbors(i).map(|j| &self.entries[j]).sum();
            av == &lambda * &self.entries[i]
        })
    }
}

/// The primitive integral eigenvector of a simple integral eigenvalue.
pub fn kernel_vector(g: &Graph, lambda: i64) -> Result<PrimitiveIntVector, SimilarityError> {
    let root = char_poly(g)
        .integral_roots()
        .into_iter()
        .find(|r| r.value == lambda)
        .ok_or(SimilarityError::NotAnEigenvalue(lambda))?;
    if root.multiplicity != 1 {
        return Err(SimilarityError::NotSimple(lambda));
    }
    let n = g.order();
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::from(-lambda)
                    } else {
                        BigInt::from(g.has_edge(i, j) as i64)
                    }
                })
                .collect()
        })
        .collect();
    let null = integer_kernel(&mut m);
    let [v] = <[Vec<BigInt>; 1]>::try_from(null).map_err(|_| SimilarityError::NotSimple(lambda))?;
    let v = PrimitiveIntVector::normalize(v).ok_or(SimilarityError::NotAnEigenvalue(lambda))?;
    debug_assert!(v.is_eigenvector(g, lambda));
    Ok(v)
}

/// Integer basis of the right kernel, one vector per free column.
///
/// Bareiss elimination to row echelon form (every division is exact), then
/// back substitution over the rationals with the denominators cleared.
fn integer_kernel(a: &mut [Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                debug_assert!((&num % &prev).is_zero());
                a[i][j] = num / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }

    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); cols];
            x[f] = BigRational::one();
            for (t, &c) in pivots.iter().enumerate().rev() {
                let mut s = BigRational::zero();
                for j in c + 1..cols {
                    if !a[t][j].is_zero() && !x[j].is_zero() {
                        s += BigRational::from_integer(a[t][j].clone()) * &x[j];
                    }
                }
                x[c] = -s / BigRational::from_integer(a[t][c].clone());
            }
            let lcm = x.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
            x.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named, NamedGraph};
    use crate::similarity::vector_from;

    #[test]
    fn path_kernel() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let v = kernel_vector(&p3, 0).unwrap();
        assert_eq!(v, vector_from(&[1, 0, -1]));
        assert_eq!(v.normsq, BigInt::from(2));
    }

    #[test]
    fn regular_graph_top_eigenvector_is_all_ones() {
        let p = named(NamedGraph::Petersen);
        let v = kernel_vector(&p, 3).unwrap();
        assert_eq!(v, vector_from(&[1; 10]));
    }

    #[test]
    fn errors() {
        let p = named(NamedGraph::Petersen);
        assert_eq!(
            kernel_vector(&p, 0),
            Err(SimilarityError::NotAnEigenvalue(0))
        );
        assert_eq!(kernel_vector(&p, 1), Err(SimilarityError::NotSimple(1)));
    }

    #[test]
    fn kernel_of_rank_deficient_matrix() {
        let mut m: Vec<Vec<BigInt>> = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let k = integer_kernel(&mut m);
        assert_eq!(k.len(), 1);
        let v = PrimitiveIntVector::normalize(k[0].clone()).unwrap();
        assert_eq!(v, vector_from(&[1, 1, -1]));
    }

    #[test]
    fn normalize_sign_and_content() {
        let v = vector_from(&[0, -4, 2, 6]);
        assert_eq!(
            v.entries,
            vec![0, 2, -1, -3]
                .into_iter()
                .map(BigInt::from)
                .collect::<Vec<_>>()
        );
        assert_eq!(v.normsq, BigInt::from(14));
        assert!(PrimitiveIntVector::normalize(vec![BigInt::zero(); 3]).is_none());
    }
}
