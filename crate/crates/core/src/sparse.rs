//! Minimal compressed-column storage shared by the assembled matrices.
//!
//! The five assembled matrices live on one common sparsity pattern so that the
//! operator at any (k, ω) is a pointwise linear combination of value arrays.

use num_complex::Complex64;

/// Shared CSC sparsity pattern (square, row indices sorted within columns).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CscPattern {
    pub n: usize,
    pub col_ptr: Vec<usize>,
    pub row_idx: Vec<usize>,
}

impl CscPattern {
    /// Builds the union pattern of the given (row, col) coordinates and returns
    /// the value slot for each input coordinate (duplicates share a slot).
    pub fn from_coords(n: usize, coords: &[(usize, usize)]) -> (Self, Vec<usize>) {
        let mut order: Vec<usize> = (0..coords.len()).collect();
        order.sort_unstable_by_key(|&e| (coords[e].1, coords[e].0));

        let mut col_ptr = vec![0usize; n + 1];
        let mut row_idx = Vec::new();
        let mut slots = vec![0usize; coords.len()];
        let mut last: Option<(usize, usize)> = None;
        for &e in &order {
            let (row, col) = coords[e];
            assert!(row < n && col < n, "coordinate ({row}, {col}) out of range");
            if last != Some((row, col)) {
                row_idx.push(row);
                col_ptr[col + 1] += 1;
                last = Some((row, col));
            }
            slots[e] = row_idx.len() - 1;
        }
        for c in 0..n {
            col_ptr[c + 1] += col_ptr[c];
        }
        (
            Self {
                n,
                col_ptr,
                row_idx,
            },
            slots,
        )
    }

    pub fn nnz(&self) -> usize {
        self.row_idx.len()
    }

    /// y = M x for values on this pattern.
    pub fn matvec(&self, values: &[Complex64], x: &[Complex64], y: &mut [Complex64]) {
        y.fill(Complex64::ZERO);
        for col in 0..self.n {
            let xc = x[col];
            for idx in self.col_ptr[col]..self.col_ptr[col + 1] {
                y[self.row_idx[idx]] += values[idx] * xc;
            }
        }
    }

    /// Dense copy, for small-matrix checks in tests.
    pub fn to_dense(&self, values: &[f64]) -> Vec<Vec<f64>> {
        let mut dense = vec![vec![0.0; self.n]; self.n];
        for col in 0..self.n {
            for idx in self.col_ptr[col]..self.col_ptr[col + 1] {
                dense[self.row_idx[idx]][col] = values[idx];
            }
        }
        dense
    }

    /// Entries in (row, col, value) order, column-major. Used by the debug dump.
    pub fn iter_entries<'a>(
        &'a self,
        values: &'a [f64],
    ) -> impl Iterator<Item = (usize, usize, f64)> + 'a {
        (0..self.n).flat_map(move |col| {
            (self.col_ptr[col]..self.col_ptr[col + 1])
                .map(move |idx| (self.row_idx[idx], col, values[idx]))
        })
    }
}
