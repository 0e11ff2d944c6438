//! Small exact linear algebra over the rationals.
//!
//! Everything here works on tiny systems (dimension at most a handful), so
//! plain Gaussian elimination on `BigRational` is both exact and fast enough.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn to_rational_rows(rows: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| rat(v)).collect())
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..nrows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[row].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row).take(ncols) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m).len()
}

/// Solves the square system `a x = b`, returning `None` when `a` is singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n].clone()).collect())
}

pub fn det(a: &[Vec<i64>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = to_rational_rows(a);
    let mut sign = BigInt::one();
    let mut acc = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigInt::zero();
        };
        if p != col {
            m.swap(p, col);
            sign = -sign;
        }
        let pivot = m[col][col].clone();
        acc *= &pivot;
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &pivot;
                let pivot_row = m[col].clone();
                for (x, p) in m[r][col..n].iter_mut().zip(&pivot_row[col..n]) {
                    *x -= &f * p;
                }
            }
        }
    }
    debug_assert!(acc.is_integer());
    sign * acc.to_integer()
}

pub fn dot_i64(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[i64], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + y * rat(*x))
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Converts a rational vector to integers when every entry is integral.
pub fn to_integer_vec(v: &[Rational]) -> Option<Vec<i64>> {
    v.iter()
        .map(|x| {
            if x.is_integer() {
                x.to_integer().to_i64()
            } else {
                None
            }
        })
        .collect()
}

/// Affine dimension of a finite point set (`-1` for the empty set, as `None`).
pub fn affine_dimension(points: &[&Vec<Rational>]) -> Option<usize> {
    let first = points.first()?;
    let diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
        .collect();
    Some(rank(&diffs))
}

pub fn floor_i64(x: &Rational) -> i64 {
    x.floor()
        .to_integer()
        .to_i64()
        .expect("coordinate fits in i64")
}

pub fn ceil_i64(x: &Rational) -> i64 {
    x.ceil()
        .to_integer()
        .to_i64()
        .expect("coordinate fits in i64")
}
