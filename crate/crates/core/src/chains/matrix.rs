use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

/// Sparse integer matrix stored as sorted per-column entry lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Duplicate positions are summed; zero sums are dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Self {
        let mut acc: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); cols];
        for (r, c, v) in triplets {
            assert!(
                r < rows && c < cols,
                "entry ({r}, {c}) outside {rows}x{cols}"
            );
            let e = acc[c].entry(r).or_insert(0);
            *e = e.checked_add(v).expect("matrix entry overflows i64");
        }
        let columns = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|&(_, v)| v != 0).collect())
            .collect();
        Self {
            rows,
            cols,
            columns,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, n, (0..n).map(|i| (i, i, 1)))
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        Self::from_triplets(
            nrows,
            ncols,
            rows.iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &v)| (i, j, v))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn column(&self, c: usize) -> &[(usize, i64)] {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.columns[c]
            .binary_search_by_key(&r, |&(i, _)| i)
            .map_or(0, |k| self.columns[c][k].1)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    /// `(row, col, value)` in column-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.cols,
            self.rows,
            self.triplets().map(|(r, c, v)| (c, r, v)),
        )
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut trip = Vec::new();
        for (c, col) in other.columns.iter().enumerate() {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &(k, b) in col {
                for &(r, a) in &self.columns[k] {
                    let e = acc.entry(r).or_insert(0);
                    *e = a
                        .checked_mul(b)
                        .and_then(|p| e.checked_add(p))
                        .expect("matrix product overflows i64");
                }
            }
            trip.extend(acc.into_iter().map(|(r, v)| (r, c, v)));
        }
        SparseMatrix::from_triplets(self.rows, other.cols, trip)
    }

    /// `self * x` for a dense vector.
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.cols);
        let mut y = vec![0i64; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            if x[c] == 0 {
                continue;
            }
            for &(r, v) in col {
                y[r] += v * x[c];
            }
        }
        y
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self::from_triplets(
            self.rows,
            self.cols,
            self.triplets().map(|(r, c, v)| (r, c, v * k)),
        )
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            d[r][c] = v;
        }
        d
    }

    pub fn to_dense_big(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::from(0); self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            d[r][c] = BigInt::from(v);
        }
        d
    }

    /// First nonzero entry in column-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, i64)> {
        self.triplets().next()
    }
}
