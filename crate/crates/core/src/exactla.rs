//! Dense exact linear algebra over the coefficient field: reduced row
//! echelon form, nullspace, rank, multiplication.
//!
//! Elimination pivots on the first nonzero entry per column scanning
//! top-down and normalizes pivots to 1; the reduced echelon form (and hence
//! the nullspace basis, which is itself put in reduced form) is canonical,
//! so downstream golden comparisons do not depend on elimination order.
//! Row updates within one elimination step are independent and run in
//! parallel when the `parallel` feature is enabled.

use crate::arith::Field;
use crate::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Result of reduction to reduced row echelon form, zero rows removed.
#[derive(Clone, Debug)]
pub struct Rref<F> {
    pub mat: ExactMat<F>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<F: Field> ExactMat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMat {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        ExactMat {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &F) {
        self.data[r * self.cols + c].add_assign(v);
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<F> {
        self.row(r).to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }

    /// Entrywise sum.
    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimMismatch(format!(
                "add {}x{} with {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(ExactMat {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Entrywise difference.
    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimMismatch(format!(
                "sub {}x{} with {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.sub(b))
            .collect();
        Ok(ExactMat {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Stack matrices with equal column counts on top of one another.
    pub fn vstack(blocks: &[&Self]) -> Self {
        assert!(!blocks.is_empty());
        let cols = blocks[0].cols;
        assert!(blocks.iter().all(|b| b.cols == cols));
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            data.extend_from_slice(&b.data);
        }
        ExactMat { rows, cols, data }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    /// Exact matrix product.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimMismatch(format!(
                "matmul {}x{} with {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        let do_row = |i: usize, out_row: &mut [F]| {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let b_row = rhs.row(k);
                for (o, b) in out_row.iter_mut().zip(b_row) {
                    if !b.is_zero() {
                        o.add_assign(&a.mul(b));
                    }
                }
            }
        };
        #[cfg(feature = "parallel")]
        out.data
            .par_chunks_mut(rhs.cols)
            .enumerate()
            .for_each(|(i, row)| do_row(i, row));
        #[cfg(not(feature = "parallel"))]
        out.data
            .chunks_mut(rhs.cols)
            .enumerate()
            .for_each(|(i, row)| do_row(i, row));
        Ok(out)
    }

    // Gauss-Jordan elimination, columns left to right, clearing each pivot
    // column from every other row as it is chosen. Among the rows available
    // for a column the sparsest one with a +-1 entry is preferred, which
    // keeps fill-in and coefficient growth down on the very sparse relation
    // matrices without changing the (canonical) reduced echelon output.
    // Returns the pivot rows in column order together with their columns;
    // with `reduced` unset the pivot rows are not kept reduced (rank only).
    fn eliminate(mut self, reduced: bool) -> (Vec<Vec<F>>, Vec<usize>) {
        let cols = self.cols;
        let mut rows: Vec<Vec<F>> = (0..self.rows)
            .map(|r| self.data[r * cols..(r + 1) * cols].to_vec())
            .collect();
        self.data.clear();
        let mut nnz: Vec<usize> = rows
            .iter()
            .map(|r| r.iter().filter(|v| !v.is_zero()).count())
            .collect();
        let mut active: Vec<usize> = (0..rows.len()).collect();
        let mut pivot_rows: Vec<(usize, Vec<F>)> = Vec::new();

        for c in 0..cols {
            if active.is_empty() {
                break;
            }
            // candidate with the best (non-unit pivot, fill) score
            let mut best: Option<(usize, (bool, usize))> = None;
            for (pos, &r) in active.iter().enumerate() {
                let v = &rows[r][c];
                if v.is_zero() {
                    continue;
                }
                let score = (!v.is_pm_one(), nnz[r]);
                if best.as_ref().is_none_or(|(_, s)| score < *s) {
                    best = Some((pos, score));
                }
            }
            let Some((pos, _)) = best else { continue };
            let r = active.swap_remove(pos);

            let inv = rows[r][c].inv();
            if !inv.is_pm_one() || !rows[r][c].is_pm_one() {
                for v in rows[r].iter_mut() {
                    if !v.is_zero() {
                        *v = v.mul(&inv);
                    }
                }
            } else if rows[r][c] != F::one() {
                for v in rows[r].iter_mut() {
                    if !v.is_zero() {
                        *v = v.neg();
                    }
                }
            }
            let pivot_row = std::mem::take(&mut rows[r]);

            // clear column c from every remaining active row and from the
            // already-chosen pivot rows
            let clear = |row: &mut Vec<F>, count: Option<&mut usize>| {
                let f = std::mem::replace(&mut row[c], F::zero());
                if f.is_zero() {
                    return;
                }
                for (x, p) in row[c + 1..].iter_mut().zip(&pivot_row[c + 1..]) {
                    if !p.is_zero() {
                        x.sub_mul_assign(&f, p);
                    }
                }
                if let Some(count) = count {
                    *count = row[c..].iter().filter(|v| !v.is_zero()).count();
                }
            };
            let use_par = cfg!(feature = "parallel") && active.len() >= 16 && cols >= 64;
            #[cfg(feature = "parallel")]
            if use_par {
                let mut mask = vec![false; rows.len()];
                for &r2 in &active {
                    mask[r2] = true;
                }
                rows.par_iter_mut()
                    .zip(nnz.par_iter_mut())
                    .zip(mask.par_iter())
                    .for_each(|((row, count), &is_active)| {
                        if is_active && !row[c].is_zero() {
                            clear(row, Some(count));
                        }
                    });
            }
            if !use_par {
                for &r2 in &active {
                    if !rows[r2][c].is_zero() {
                        let mut count = nnz[r2];
                        clear(&mut rows[r2], Some(&mut count));
                        nnz[r2] = count;
                    }
                }
            }
            if reduced {
                for (_, prow) in pivot_rows.iter_mut() {
                    clear(prow, None);
                }
            }

            pivot_rows.push((c, pivot_row));
        }

        pivot_rows.sort_by_key(|(c, _)| *c);
        let pivots: Vec<usize> = pivot_rows.iter().map(|(c, _)| *c).collect();
        let rows = pivot_rows.into_iter().map(|(_, row)| row).collect();
        (rows, pivots)
    }

    /// Rank of the matrix.
    pub fn rank(&self) -> usize {
        self.clone().eliminate(false).1.len()
    }

    /// Reduced row echelon form with zero rows removed.
    pub fn rref(&self) -> Rref<F> {
        let cols = self.cols;
        let (rows, pivots) = self.clone().eliminate(true);
        let rank = pivots.len();
        let mat = if rows.is_empty() {
            Self::zeros(0, cols)
        } else {
            Self::from_rows(rows)
        };
        Rref { mat, rank, pivots }
    }

    /// A canonical basis of the right nullspace, one vector per row, in
    /// reduced echelon form. The row count is `cols - rank`.
    pub fn nullspace(&self) -> Self {
        let rr = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &rr.pivots {
            is_pivot[c] = true;
        }
        let mut rows = Vec::with_capacity(self.cols - rr.rank);
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut v = vec![F::zero(); self.cols];
            v[f] = F::one();
            for (ri, &p) in rr.pivots.iter().enumerate() {
                let e = rr.mat.get(ri, f);
                if !e.is_zero() {
                    v[p] = e.neg();
                }
            }
            rows.push(v);
        }
        if rows.is_empty() {
            return Self::zeros(0, self.cols);
        }
        Self::from_rows(rows).rref().mat
    }
}

impl<F: Field> std::fmt::Display for ExactMat<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in 0..self.rows {
            let entries: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", entries.join(" "))?;
        }
        Ok(())
    }
}
