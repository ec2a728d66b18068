//! Homology of presentations in a fixed arity, over Q or a prime field.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::basis;
use crate::differential::differential;
use crate::error::{Error, Result};
use crate::kernel::linalg::{self, SparseVec};
use crate::kernel::ring::{Field, Fp, Q};
use crate::kernel::{Element, Ring, Tree};
use crate::presentation::Presentation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeHomology {
    pub degree: i64,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub homology: usize,
}

/// A finite piece of the chain complex: basis per degree and the images of
/// the basis vectors as integer sparse vectors one degree up.
pub struct Complex {
    pub bases: HashMap<i64, Vec<Tree>>,
    pub boundaries: HashMap<i64, Vec<Vec<(usize, num_bigint::BigInt)>>>,
}

/// Builds the complex of `pres` in arity `n` for the degrees `lo..=hi`,
/// restricted to unit count at most `max_units` (a subcomplex).
pub fn complex(pres: Presentation, n: usize, lo: i64, hi: i64, max_units: usize) -> Result<Complex> {
    let all = basis::basis_by_degree(pres, n, max_units)?;
    let mut bases: HashMap<i64, Vec<Tree>> = HashMap::new();
    for d in lo..=hi + 1 {
        bases.insert(d, all.get(&d).cloned().unwrap_or_default());
    }
    let mut boundaries = HashMap::new();
    for d in lo..=hi {
        let target = &bases[&(d + 1)];
        let index: HashMap<&Tree, usize> = target.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let images: Result<Vec<Vec<(usize, num_bigint::BigInt)>>> = bases[&d]
            .par_iter()
            .map(|t| {
                let dx = differential(pres, &Element::basis(t.clone()))?;
                let mut v = Vec::with_capacity(dx.len());
                for (s, c) in dx.terms() {
                    let i = index.get(s).ok_or_else(|| {
                        Error::Invalid(format!("boundary of {t} leaves the enumerated basis at {s}"))
                    })?;
                    v.push((*i, c.clone()));
                }
                v.sort_by_key(|e| e.0);
                Ok(v)
            })
            .collect();
        boundaries.insert(d, images?);
    }
    Ok(Complex { bases, boundaries })
}

fn ranks<F: Field + Sync>(field: &F, c: &Complex, lo: i64, hi: i64) -> Result<Vec<DegreeHomology>>
where
    F::E: Send + Sync,
{
    let conv = |d: i64| -> Vec<SparseVec<F::E>> {
        c.boundaries.get(&d).map(|v| v.iter().map(|x| linalg::from_ints(field, x)).collect()).unwrap_or_default()
    };
    let mut out = Vec::new();
    for d in lo + 1..=hi {
        let d_in = conv(d - 1);
        let d_out = conv(d);
        let dim = c.bases[&d].len();
        let h = linalg::homology(field, dim, &d_in, &d_out)?;
        out.push(DegreeHomology {
            degree: d,
            dim,
            rank_in: h.rank_in,
            rank_out: h.rank_out,
            homology: h.homology,
        });
    }
    Ok(out)
}

/// Homology dimensions in degrees `lo..=hi` (unit count at most
/// `max_units` for the homotopy unital presentations).
pub fn homology(
    pres: Presentation,
    n: usize,
    lo: i64,
    hi: i64,
    max_units: usize,
    ring: Ring,
) -> Result<Vec<DegreeHomology>> {
    let c = complex(pres, n, lo - 1, hi, max_units)?;
    match ring {
        Ring::Rationals => ranks(&Q, &c, lo - 1, hi),
        Ring::Prime(p) => ranks(&Fp(p), &c, lo - 1, hi),
    }
}
