//! Exact rank of integer matrices and the independence certificate for the
//! Pont Neuf `CD` polynomials on `S_{k,u}`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::casimir::{CasimirMonomial, CasimirPoly};
use crate::error::{Error, Result};
use crate::families::{enumerate_s, pont_neuf_cd_closed_form};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: Vec<Vec<BigInt>>,
    pub cols: usize,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows, cols }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows: vec![vec![BigInt::zero(); cols]; rows], cols }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = BigInt::one();
        }
        m
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }
}

/// Rows are polynomials, columns the union of their monomials in canonical order.
pub fn coefficient_matrix(polys: &[CasimirPoly]) -> (IntMatrix, Vec<CasimirMonomial>) {
    let columns: Vec<CasimirMonomial> = polys
        .iter()
        .flat_map(|p| p.monomials().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let rows: Vec<Vec<BigInt>> = polys
        .par_iter()
        .map(|p| columns.iter().map(|m| p.coefficient(m)).collect())
        .collect();
    let cols = columns.len();
    (IntMatrix { rows, cols }, columns)
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
///
/// Pivot: first column with a non-zero entry among the remaining rows; within
/// that column the entry of largest absolute value, earliest row on ties.
pub fn rank_exact(m: &IntMatrix) -> usize {
    let mut a = m.rows.clone();
    let n_rows = a.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..m.cols {
        if rank == n_rows {
            break;
        }
        let pivot = (rank..n_rows)
            .filter(|&r| !a[r][col].is_zero())
            .fold(None, |best: Option<usize>, r| match best {
                Some(b) if a[b][col].abs() >= a[r][col].abs() => Some(b),
                _ => Some(r),
            });
        let Some(p) = pivot else { continue };
        a.swap(rank, p);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pr = &head[rank];
        for row in tail.iter_mut() {
            for j in col + 1..m.cols {
                let num = &pr[col] * &row[j] - &row[col] * &pr[j];
                debug_assert!((&num % &prev).is_zero());
                row[j] = num / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceReport {
    pub k: usize,
    pub u: u32,
    pub size: usize,
    pub rank: usize,
    pub triangular_ok: bool,
}

impl fmt::Display for IndependenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "size={} rank={} triangular={}",
            self.size,
            self.rank,
            if self.triangular_ok { "ok" } else { "FAIL" }
        )
    }
}

/// Rank and triangularity of the closed-form `CD` polynomials over `S_{k,u}`.
///
/// Triangularity: for each `p` the witness `c_{a_1} ... c_{a_k} c_b^2` has a
/// non-zero coefficient in `CD(p)` and a zero one in every earlier `CD(q)`.
pub fn independence_check(k: usize, u: u32) -> Result<IndependenceReport> {
    if u % 2 != 0 {
        return Err(Error::OddLegCount(u as usize));
    }
    let params = enumerate_s(k, u);
    let polys: Vec<CasimirPoly> = params.par_iter().map(pont_neuf_cd_closed_form).collect();
    let (matrix, _) = coefficient_matrix(&polys);
    let rank = rank_exact(&matrix);
    let triangular_ok = params.iter().enumerate().all(|(i, p)| {
        let w = p.witness();
        !polys[i].coefficient(&w).is_zero() && polys[..i].iter().all(|q| q.coefficient(&w).is_zero())
    });
    Ok(IndependenceReport { k, u, size: params.len(), rank, triangular_ok })
}
