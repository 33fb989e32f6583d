use super::vector::F2Vec;
use crate::error::{input, Result};

/// A dense F₂ matrix stored row-wise as packed bit vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct F2Matrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<F2Vec>,
}

impl F2Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        F2Matrix {
            nrows,
            ncols,
            rows: vec![F2Vec::zeros(ncols); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from the positions holding 1. Out-of-range or repeated
    /// positions are rejected.
    pub fn from_positions(
        nrows: usize,
        ncols: usize,
        positions: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut m = Self::zeros(nrows, ncols);
        for (r, c) in positions {
            if r >= nrows || c >= ncols {
                return Err(input(format!(
                    "position ({r}, {c}) outside a {nrows}x{ncols} matrix"
                )));
            }
            if m.get(r, c) {
                return Err(input(format!("duplicate position ({r}, {c})")));
            }
            m.set(r, c, true);
        }
        Ok(m)
    }

    pub fn from_rows(ncols: usize, rows: Vec<F2Vec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "row length mismatch");
        F2Matrix {
            nrows: rows.len(),
            ncols,
            rows,
        }
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(nrows: usize, columns: &[F2Vec]) -> Self {
        let mut m = Self::zeros(nrows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), nrows, "column length mismatch");
            for i in col.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.rows[r].flip(c)
    }

    pub fn row(&self, r: usize) -> &F2Vec {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[F2Vec] {
        &self.rows
    }

    pub fn column(&self, c: usize) -> F2Vec {
        F2Vec::from_indices(self.nrows, (0..self.nrows).filter(|&r| self.get(r, c)))
    }

    pub fn columns(&self) -> Vec<F2Vec> {
        self.transpose().rows
    }

    /// Positions holding 1, in row-major order.
    pub fn positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.ones().map(move |c| (r, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(F2Vec::is_zero)
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.ncols, self.nrows);
        for (r, c) in self.positions() {
            t.set(c, r, true);
        }
        t
    }

    pub fn mul_vec(&self, v: &F2Vec) -> F2Vec {
        assert_eq!(v.len(), self.ncols, "vector length mismatch");
        F2Vec::from_indices(
            self.nrows,
            self.rows.iter().enumerate().filter(|(_, row)| row.dot(v)).map(|(i, _)| i),
        )
    }

    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.ncols, other.nrows, "matrix shape mismatch");
        let mut out = F2Matrix::zeros(self.nrows, other.ncols);
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc = F2Vec::zeros(other.ncols);
            for k in row.ones() {
                acc.add_assign(&other.rows[k]);
            }
            out.rows[r] = acc;
        }
        out
    }

    pub fn add(&self, other: &F2Matrix) -> F2Matrix {
        assert!(self.nrows == other.nrows && self.ncols == other.ncols);
        F2Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.add(b)).collect(),
        }
    }
}
