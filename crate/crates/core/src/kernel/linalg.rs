//! Exact sparse elimination: ranks, span membership and homology.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::ring::Field;
use crate::error::{Error, Result};

/// Sparse vector: strictly increasing indices, nonzero entries.
pub type SparseVec<E> = Vec<(usize, E)>;

pub fn from_ints<F: Field>(field: &F, v: &[(usize, BigInt)]) -> SparseVec<F::E> {
    v.iter()
        .map(|(i, c)| (*i, field.from_rational(&BigRational::from_integer(c.clone()))))
        .filter(|(_, c)| !field.is_zero(c))
        .collect()
}

/// `a - c * b`.
fn axpy<F: Field>(field: &F, a: &[(usize, F::E)], c: &F::E, b: &[(usize, F::E)]) -> SparseVec<F::E> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let zero = field.zero();
    let (mut x, mut y) = (0, 0);
    while x < a.len() || y < b.len() {
        let ia = a.get(x).map(|e| e.0).unwrap_or(usize::MAX);
        let ib = b.get(y).map(|e| e.0).unwrap_or(usize::MAX);
        if ia < ib {
            out.push(a[x].clone());
            x += 1;
        } else if ib < ia {
            out.push((ib, field.sub_mul(&zero, c, &b[y].1)));
            y += 1;
        } else {
            let v = field.sub_mul(&a[x].1, c, &b[y].1);
            if !field.is_zero(&v) {
                out.push((ia, v));
            }
            x += 1;
            y += 1;
        }
    }
    out
}

/// Row echelon basis built incrementally.
pub struct Echelon<'f, F: Field> {
    field: &'f F,
    pivots: HashMap<usize, SparseVec<F::E>>,
}

impl<'f, F: Field> Echelon<'f, F> {
    pub fn new(field: &'f F) -> Self {
        Echelon { field, pivots: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce(&self, mut v: SparseVec<F::E>) -> SparseVec<F::E> {
        let mut done = 0;
        while done < v.len() {
            let (c, a) = v[done].clone();
            match self.pivots.get(&c) {
                Some(p) => {
                    let tail = axpy(self.field, &v[done..], &a, p);
                    v.truncate(done);
                    v.extend(tail);
                }
                None => done += 1,
            }
        }
        v
    }

    /// Inserts a vector; returns whether it raised the rank.
    pub fn insert(&mut self, v: SparseVec<F::E>) -> bool {
        let v = self.reduce(v);
        let Some((c, a)) = v.first().cloned() else {
            return false;
        };
        let inv = self.field.inv(&a);
        let normalized: SparseVec<F::E> =
            v.into_iter().map(|(i, x)| (i, self.field.mul(&x, &inv))).collect();
        self.pivots.insert(c, normalized);
        true
    }

    pub fn contains(&self, v: SparseVec<F::E>) -> bool {
        self.reduce(v).is_empty()
    }
}

pub fn rank<F: Field>(field: &F, mut vectors: Vec<SparseVec<F::E>>) -> usize {
    vectors.sort_by_key(|v| v.len());
    let mut ech = Echelon::new(field);
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}

/// Whether `target` is a linear combination of `vectors`.
pub fn in_span<F: Field>(field: &F, vectors: Vec<SparseVec<F::E>>, target: SparseVec<F::E>) -> bool {
    let mut ech = Echelon::new(field);
    for v in vectors {
        ech.insert(v);
    }
    ech.contains(target)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyRanks {
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub homology: usize,
}

/// Homology at `C_d` for `C_{d-1} -> C_d -> C_{d+1}`. `d_in` lists the
/// images of a basis of `C_{d-1}` (vectors over `C_d`); `d_out` lists the
/// images of the `dim` basis vectors of `C_d`.
pub fn homology<F: Field>(
    field: &F,
    dim: usize,
    d_in: &[SparseVec<F::E>],
    d_out: &[SparseVec<F::E>],
) -> Result<HomologyRanks> {
    if d_out.len() != dim {
        return Err(Error::Shape(format!("{} outgoing images for dimension {dim}", d_out.len())));
    }
    if let Some(bad) = d_in.iter().flatten().find(|(i, _)| *i >= dim) {
        return Err(Error::Shape(format!("incoming image has index {} >= {dim}", bad.0)));
    }
    for v in d_in {
        let mut acc: SparseVec<F::E> = Vec::new();
        for (i, c) in v {
            let neg = field.sub_mul(&field.zero(), c, &one(field));
            acc = axpy(field, &acc, &neg, &d_out[*i]);
        }
        if !acc.is_empty() {
            return Err(Error::NonzeroComposite);
        }
    }
    let rank_in = rank(field, d_in.to_vec());
    let rank_out = rank(field, d_out.to_vec());
    Ok(HomologyRanks { dim, rank_in, rank_out, homology: dim - rank_in - rank_out })
}

fn one<F: Field>(field: &F) -> F::E {
    field.from_rational(&BigRational::from_integer(BigInt::from(1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::ring::{Fp, Q};

    fn iv(v: &[(usize, i64)]) -> Vec<(usize, BigInt)> {
        v.iter().map(|(i, c)| (*i, BigInt::from(*c))).collect()
    }

    #[test]
    fn zero_complex() {
        let h = homology(&Q, 0, &[], &[]).unwrap();
        assert_eq!(h.homology, 0);
    }

    #[test]
    fn identity_boundary_is_acyclic() {
        let d: Vec<_> = (0..3).map(|i| from_ints(&Q, &iv(&[(i, 1)]))).collect();
        let h0 = homology(&Q, 3, &[], &d).unwrap();
        assert_eq!(h0.homology, 0);
        let h1 = homology(&Q, 3, &d, &vec![vec![]; 3]).unwrap();
        assert_eq!(h1.homology, 0);
    }

    #[test]
    fn nonzero_composite_is_rejected() {
        let d_in = vec![from_ints(&Q, &iv(&[(0, 1)]))];
        let d_out = vec![from_ints(&Q, &iv(&[(0, 1)]))];
        assert_eq!(homology(&Q, 1, &d_in, &d_out), Err(Error::NonzeroComposite));
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // [[1,1],[1,-1]] has determinant -2.
        let rows = [iv(&[(0, 1), (1, 1)]), iv(&[(0, 1), (1, -1)])];
        let q: Vec<_> = rows.iter().map(|r| from_ints(&Q, r)).collect();
        assert_eq!(rank(&Q, q), 2);
        let f2: Vec<_> = rows.iter().map(|r| from_ints(&Fp(2), r)).collect();
        assert_eq!(rank(&Fp(2), f2), 1);
        let f101: Vec<_> = rows.iter().map(|r| from_ints(&Fp(101), r)).collect();
        assert_eq!(rank(&Fp(101), f101), 2);
    }

    #[test]
    fn span_membership() {
        let vs = vec![from_ints(&Q, &iv(&[(0, 1), (1, 1)])), from_ints(&Q, &iv(&[(1, 2), (2, 1)]))];
        assert!(in_span(&Q, vs.clone(), from_ints(&Q, &iv(&[(0, 2), (1, 4), (2, 1)]))));
        assert!(!in_span(&Q, vs, from_ints(&Q, &iv(&[(2, 1)]))));
    }
}
