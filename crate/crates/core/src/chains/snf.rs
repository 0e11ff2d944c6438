//! Smith normal form over the integers with arbitrary precision entries.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SparseMatrix;

pub type DenseMatrix = Vec<Vec<BigInt>>;

/// `U * M * V = D` with `D` diagonal, nonnegative, and each diagonal entry
/// dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    /// Nonzero diagonal entries of `D`, in order.
    pub divisors: Vec<BigInt>,
    pub u: Option<DenseMatrix>,
    pub v: Option<DenseMatrix>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    /// The full diagonal matrix `D`.
    pub fn diagonal_matrix(&self) -> DenseMatrix {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, x) in self.divisors.iter().enumerate() {
            d[i][i] = x.clone();
        }
        d
    }
}

fn identity(n: usize) -> DenseMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

struct Work {
    m: DenseMatrix,
    u: Option<DenseMatrix>,
    v: Option<DenseMatrix>,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap(a, b);
        if let Some(u) = &mut self.u {
            u.swap(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for row in &mut self.m {
            row.swap(a, b);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(a, b);
            }
        }
    }

    // row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        let (s, d) = two(&mut self.m, src, dst);
        for (x, y) in d.iter_mut().zip(s.iter()) {
            *x += q * y;
        }
        if let Some(u) = &mut self.u {
            let (s, d) = two(u, src, dst);
            for (x, y) in d.iter_mut().zip(s.iter()) {
                *x += q * y;
            }
        }
    }

    // col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for row in &mut self.m {
            let t = &row[src] * q;
            row[dst] += t;
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                let t = &row[src] * q;
                row[dst] += t;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for x in &mut self.m[r] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[r] {
                *x = -&*x;
            }
        }
    }
}

fn two<T>(v: &mut [T], a: usize, b: usize) -> (&T, &mut T) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = v.split_at_mut(b);
        (&lo[a], &mut hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(a);
        (&hi[0], &mut lo[b])
    }
}

// `round(a / p)`, so the remainder is at most `|p| / 2` in absolute value.
fn nearest_quotient(a: &BigInt, p: &BigInt) -> BigInt {
    let (mut q, r) = a.div_mod_floor(p);
    if (&r * 2u32).abs() > p.abs() {
        q += 1;
    }
    q
}

/// Smith normal form of a dense integer matrix. `track` additionally
/// returns the unimodular `U` and `V`.
pub fn smith_normal_form_dense(m: DenseMatrix, track: bool) -> SmithForm {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut w = Work {
        m,
        u: track.then(|| identity(rows)),
        v: track.then(|| identity(cols)),
    };
    let mut divisors = Vec::new();
    let mut t = 0;
    'stages: while t < rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block, every pass; this
            // keeps the entries from growing
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !w.m[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| w.m[i][j].abs() < w.m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'stages };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let p = w.m[t][t].clone();
            let mut clear = true;
            for i in t + 1..rows {
                if !w.m[i][t].is_zero() {
                    let q = nearest_quotient(&w.m[i][t], &p);
                    w.add_row(i, t, &-q);
                    clear &= w.m[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !w.m[t][j].is_zero() {
                    let q = nearest_quotient(&w.m[t][j], &p);
                    w.add_col(j, t, &-q);
                    clear &= w.m[t][j].is_zero();
                }
            }
            if !clear {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.m[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.m[t][t].is_negative() {
            w.negate_row(t);
        }
        divisors.push(w.m[t][t].clone());
        t += 1;
    }
    SmithForm {
        rows,
        cols,
        divisors,
        u: w.u,
        v: w.v,
    }
}

pub fn smith_normal_form(m: &SparseMatrix, track: bool) -> SmithForm {
    smith_normal_form_dense(m.to_dense_big(), track)
}

/// Matrix product of dense big-integer matrices.
pub fn dense_mul(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

/// Determinant by fraction-free elimination (Bareiss).
pub fn dense_det(m: &DenseMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
