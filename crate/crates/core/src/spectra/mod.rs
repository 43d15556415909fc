//! Exact characteristic polynomials, integral roots, and cospectral classes.

mod poly;

pub use poly::{poly_mul, Poly};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::graph::{canonical_form, to_graph6, Graph};

/// Characteristic polynomial `det(xI - A)` of an adjacency matrix.
///
/// Ordered lexicographically by coefficients, constant term first; this is
/// the spectral key used for grouping.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharPoly(Poly);

impl CharPoly {
    pub fn poly(&self) -> &Poly {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        self.0.coeffs()
    }

    /// Wraps a polynomial that is known to be a characteristic polynomial.
    /// Returns `None` unless it is monic.
    pub fn from_poly(p: Poly) -> Option<CharPoly> {
        p.is_monic().then_some(CharPoly(p))
    }

    pub fn integral_roots(&self) -> Vec<IntegralRoot> {
        integral_roots(&self.0)
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for CharPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs().iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CharPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<CharPoly, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        let coeffs = v
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        CharPoly::from_poly(Poly::new(coeffs))
            .ok_or_else(|| serde::de::Error::custom("characteristic polynomial must be monic"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntegralRoot {
    pub value: i64,
    pub multiplicity: usize,
}

/// Faddeev-LeVerrier over the integers. With `M_0 = 0`:
/// `M_k = A M_{k-1} + c_{n-k+1} I` and `c_{n-k} = -tr(A M_k) / k`,
/// where every division is exact.
pub fn char_poly(g: &Graph) -> CharPoly {
    let coeffs = faddeev_leverrier_i128(g).unwrap_or_else(|| faddeev_leverrier_big(g));
    CharPoly(Poly::new(coeffs))
}

/// Fixed-width fast path; `None` on any overflow.
fn faddeev_leverrier_i128(g: &Graph) -> Option<Vec<BigInt>> {
    let n = g.order();
    let mut c = vec![0i128; n + 1];
    c[n] = 1;
    let mut m = vec![0i128; n * n];
    let mut next = vec![0i128; n * n];
    for k in 1..=n {
        for i in 0..n {
            for j in 0..n {
                let mut s: i128 = 0;
                for w in g.neighbors(i) {
                    s = s.checked_add(m[w * n + j])?;
                }
                next[i * n + j] = s;
            }
            next[i * n + i] = next[i * n + i].checked_add(c[n - k + 1])?;
        }
        std::mem::swap(&mut m, &mut next);
        let mut tr: i128 = 0;
        for i in 0..n {
            for w in g.neighbors(i) {
                tr = tr.checked_add(m[w * n + i])?;
            }
        }
        debug_assert_eq!(tr % k as i128, 0);
        c[n - k] = -(tr / k as i128);
    }
    Some(c.into_iter().map(BigInt::from).collect())
}

fn faddeev_leverrier_big(g: &Graph) -> Vec<BigInt> {
    let n = g.order();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut m = vec![BigInt::zero(); n * n];
    for k in 1..=n {
        let mut next = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigInt::zero();
                for w in g.neighbors(i) {
                    s += &m[w * n + j];
                }
                next[i * n + j] = s;
            }
            next[i * n + i] += &c[n - k + 1];
        }
        m = next;
        let mut tr = BigInt::zero();
        for i in 0..n {
            for w in g.neighbors(i) {
                tr += &m[w * n + i];
            }
        }
        let kk = BigInt::from(k);
        debug_assert!((&tr % &kk).is_zero());
        c[n - k] = -(tr / kk);
    }
    c
}

/// Integer roots of a monic integer polynomial with exact multiplicities.
///
/// Nonzero candidates are divisors of the lowest nonzero coefficient that
/// also lie within the Fujiwara bound `2 max |a_{d-k}|^(1/k)`; multiplicity
/// comes from repeated exact division by `x - root`. Sorted by value.
///
/// Panics if `p` is not monic.
pub fn integral_roots(p: &Poly) -> Vec<IntegralRoot> {
    assert!(p.is_monic(), "integral_roots needs a monic polynomial");
    let mut roots = Vec::new();
    let zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let mut q = Poly::new(p.coeffs()[zeros..].to_vec());
    let d = q.degree().unwrap_or(0);
    if d > 0 {
        let c0 = q.coeff(0).abs();
        let bound = fujiwara_bound(&q);
        for cand in root_candidates(&c0, &bound) {
            for value in [-cand, cand] {
                let root = BigInt::from(value);
                let mut multiplicity = 0;
                loop {
                    let (quot, rem) = q.div_linear(&root);
                    if !rem.is_zero() {
                        break;
                    }
                    q = quot;
                    multiplicity += 1;
                }
                if multiplicity > 0 {
                    roots.push(IntegralRoot {
                        value,
                        multiplicity,
                    });
                }
            }
        }
    }
    if zeros > 0 {
        roots.push(IntegralRoot {
            value: 0,
            multiplicity: zeros,
        });
    }
    roots.sort();
    roots
}

fn fujiwara_bound(q: &Poly) -> BigInt {
    let d = q.degree().expect("nonzero polynomial");
    let mut best = BigInt::zero();
    for k in 1..=d {
        let a = q.coeff(d - k).abs();
        let mut r = a.nth_root(k as u32);
        if r.pow(k as u32) < a {
            r += 1;
        }
        best = best.max(r);
    }
    best * 2
}

/// Positive divisors of `c0` not exceeding `bound`, ascending.
fn root_candidates(c0: &BigInt, bound: &BigInt) -> Vec<i64> {
    let bound = bound.min(c0).to_i64().expect("root bound fits in i64");
    let small_range = c0.sqrt() > BigInt::from(bound);
    let mut out = Vec::new();
    if small_range {
        for d in 1..=bound {
            if (c0 % d).is_zero() {
                out.push(d);
            }
        }
    } else {
        let c = c0.to_i64().expect("constant term fits in i64");
        let mut d = 1i64;
        while d * d <= c {
            if c % d == 0 {
                for e in [d, c / d] {
                    if e <= bound && !out.contains(&e) {
                        out.push(e);
                    }
                }
            }
            d += 1;
        }
        out.sort_unstable();
    }
    out
}

/// Graphs sharing a characteristic polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CospectralClass {
    pub key: CharPoly,
    /// Canonical forms, sorted by graph6.
    pub members: Vec<Graph>,
}

impl CospectralClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Partitions pairwise non-isomorphic graphs by exact characteristic
/// polynomial. Classes are sorted by key, members by canonical graph6.
pub fn cospectral_classes(graphs: &[Graph]) -> Vec<CospectralClass> {
    let keyed: Vec<(CharPoly, String, Graph)> = graphs
        .par_iter()
        .map(|g| {
            let c = canonical_form(g).graph;
            (char_poly(g), to_graph6(&c), c)
        })
        .collect();
    let mut groups: BTreeMap<CharPoly, Vec<(String, Graph)>> = BTreeMap::new();
    for (key, code, g) in keyed {
        groups.entry(key).or_default().push((code, g));
    }
    groups
        .into_iter()
        .map(|(key, mut members)| {
            members.sort_by(|a, b| a.0.cmp(&b.0));
            CospectralClass {
                key,
                members: members.into_iter().map(|(_, g)| g).collect(),
            }
        })
        .collect()
}
