//! Integer matrices and field matrices.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::field::{FieldCtx, FieldElem};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Vec<BigInt>>) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::input("matrix is not rectangular"));
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let entries: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        IntMatrix::new(rows.len(), cols, entries).expect("rectangular input")
    }

    /// Matrix with `cols` columns from possibly empty row list.
    pub fn from_i64_with_cols(rows: &[Vec<i64>], cols: usize) -> Self {
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        IntMatrix::new(rows.len(), cols, entries).expect("rectangular input")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.entries[k][j];
                    if !b.is_zero() {
                        out.entries[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j][i] = self.entries[i][j].clone();
            }
        }
        out
    }

    /// Rank over ℚ by fraction-free elimination.
    pub fn rank(&self) -> usize {
        bareiss(self.entries.clone(), self.cols).0
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::input("determinant of a non-square matrix"));
        }
        if self.rows == 0 {
            return Ok(BigInt::one());
        }
        let (rank, det) = bareiss(self.entries.clone(), self.cols);
        Ok(if rank < self.rows {
            BigInt::zero()
        } else {
            det
        })
    }
}

/// Bareiss elimination; returns the rank and, for full-rank square input, the determinant.
fn bareiss(mut m: Vec<Vec<BigInt>>, cols: usize) -> (usize, BigInt) {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut sign = 1i32;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if piv != r {
            m.swap(piv, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    let det = if sign < 0 { -prev } else { prev };
    (r, det)
}

/// Dense matrix over a field context.
#[derive(Clone, Debug)]
pub struct FieldMatrix {
    pub ctx: FieldCtx,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<FieldElem>>,
}

impl FieldMatrix {
    pub fn new(ctx: FieldCtx, cols: usize, entries: Vec<Vec<FieldElem>>) -> Result<Self> {
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::input("matrix is not rectangular"));
        }
        Ok(FieldMatrix {
            ctx,
            rows: entries.len(),
            cols,
            entries,
        })
    }

    pub fn identity(ctx: FieldCtx, n: usize) -> Self {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { ctx.one() } else { ctx.zero() })
                    .collect()
            })
            .collect();
        FieldMatrix {
            ctx,
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn zeros(ctx: FieldCtx, rows: usize, cols: usize) -> Self {
        let entries = vec![vec![ctx.zero(); cols]; rows];
        FieldMatrix {
            ctx,
            rows,
            cols,
            entries,
        }
    }
}

/// Rank by exact elimination; errors if an entry belongs to a different context.
pub fn matrix_rank(m: &FieldMatrix) -> Result<usize> {
    m.ctx.rank(&m.entries)
}

/// Rank over ℚ of an integer matrix.
pub fn int_rank(m: &IntMatrix) -> usize {
    m.rank()
}
