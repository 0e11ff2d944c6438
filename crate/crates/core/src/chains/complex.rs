use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::snf::smith_normal_form;
use super::{ChainsError, SparseMatrix};

/// A bounded cochain complex of free abelian groups with labeled bases.
/// `d(k)` maps degree `k` to degree `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeComplex<L> {
    lo: i32,
    basis: Vec<Vec<L>>,
    d: Vec<SparseMatrix>,
}

impl<L: Clone> FreeComplex<L> {
    /// `basis[k]` sits in degree `lo + k`; `d[k]` goes from `basis[k]` to
    /// `basis[k + 1]`, so there is one fewer differential than degrees.
    pub fn new(lo: i32, basis: Vec<Vec<L>>, d: Vec<SparseMatrix>) -> Result<Self, ChainsError> {
        let c = Self { lo, basis, d };
        c.check_shapes()?;
        Ok(c)
    }

    pub fn zero_differential(lo: i32, basis: Vec<Vec<L>>) -> Self {
        let d = (0..basis.len().saturating_sub(1))
            .map(|k| SparseMatrix::zeros(basis[k + 1].len(), basis[k].len()))
            .collect();
        Self { lo, basis, d }
    }

    fn check_shapes(&self) -> Result<(), ChainsError> {
        if self.d.len() + 1 != self.basis.len().max(1) {
            return Err(ChainsError::Shape {
                degree: self.lo,
                detail: format!(
                    "{} degrees but {} differentials",
                    self.basis.len(),
                    self.d.len()
                ),
            });
        }
        for (k, m) in self.d.iter().enumerate() {
            let want = (self.basis[k + 1].len(), self.basis[k].len());
            if m.shape() != want {
                return Err(ChainsError::Shape {
                    degree: self.lo + k as i32,
                    detail: format!("differential is {:?}, bases need {:?}", m.shape(), want),
                });
            }
        }
        Ok(())
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest degree (inclusive).
    pub fn hi(&self) -> i32 {
        self.lo + self.basis.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    fn index(&self, degree: i32) -> Option<usize> {
        (degree >= self.lo && degree <= self.hi()).then(|| (degree - self.lo) as usize)
    }

    pub fn basis(&self, degree: i32) -> &[L] {
        self.index(degree).map_or(&[], |k| &self.basis[k])
    }

    pub fn rank(&self, degree: i32) -> usize {
        self.basis(degree).len()
    }

    /// The differential out of `degree`, as a `rank(k+1) x rank(k)` matrix.
    pub fn d(&self, degree: i32) -> SparseMatrix {
        match self.index(degree) {
            Some(k) if k < self.d.len() => self.d[k].clone(),
            _ => SparseMatrix::zeros(self.rank(degree + 1), self.rank(degree)),
        }
    }

    pub fn total_rank(&self) -> usize {
        self.basis.iter().map(Vec::len).sum()
    }

    /// Alternating sum of basis sizes.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|k| sign(k) * self.rank(k) as i64).sum()
    }

    /// Same complex over a wider degree range, padding with zero groups.
    pub fn padded(&self, lo: i32, hi: i32) -> Self {
        assert!(lo <= self.lo && hi >= self.hi());
        let basis: Vec<Vec<L>> = (lo..=hi).map(|k| self.basis(k).to_vec()).collect();
        let d = (lo..hi).map(|k| self.d(k)).collect();
        Self { lo, basis, d }
    }

    pub fn map_labels<M: Clone>(&self, f: impl Fn(&L) -> M) -> FreeComplex<M> {
        FreeComplex {
            lo: self.lo,
            basis: self
                .basis
                .iter()
                .map(|b| b.iter().map(&f).collect())
                .collect(),
            d: self.d.clone(),
        }
    }
}

fn sign(k: i32) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Checks `d(k+1) * d(k) = 0`, reporting the first failing degree and column.
pub fn verify_complex<L: Clone>(c: &FreeComplex<L>) -> Result<(), ChainsError> {
    c.check_shapes()?;
    for k in c.lo()..c.hi() {
        let dd = c.d(k + 1).mul(&c.d(k));
        if let Some((_, col, _)) = dd.first_nonzero() {
            return Err(ChainsError::NotSquareZero {
                degree: k,
                column: col,
            });
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCohomology {
    pub degree: i32,
    pub rank: usize,
    #[serde(serialize_with = "ser_bigints")]
    pub torsion: Vec<BigInt>,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::Serialize;
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .serialize(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyResult {
    pub groups: Vec<DegreeCohomology>,
}

impl CohomologyResult {
    pub fn rank(&self, degree: i32) -> usize {
        self.groups
            .iter()
            .find(|g| g.degree == degree)
            .map_or(0, |g| g.rank)
    }

    pub fn torsion(&self, degree: i32) -> &[BigInt] {
        self.groups
            .iter()
            .find(|g| g.degree == degree)
            .map_or(&[], |g| g.torsion.as_slice())
    }

    pub fn is_zero(&self) -> bool {
        self.groups
            .iter()
            .all(|g| g.rank == 0 && g.torsion.is_empty())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .map(|g| sign(g.degree) * g.rank as i64)
            .sum()
    }

    /// Degrees with a nonzero group.
    pub fn support(&self) -> impl Iterator<Item = &DegreeCohomology> {
        self.groups
            .iter()
            .filter(|g| g.rank > 0 || !g.torsion.is_empty())
    }
}

impl fmt::Display for CohomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .support()
            .map(|g| {
                let mut s = String::new();
                if g.rank > 0 {
                    s.push_str(&format!("Z^{}", g.rank));
                }
                for t in &g.torsion {
                    if !s.is_empty() {
                        s.push_str(" + ");
                    }
                    s.push_str(&format!("Z/{t}"));
                }
                format!("H^{}={}", g.degree, s)
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}

/// Integral cohomology via Smith normal form of every differential.
pub fn cohomology<L: Clone>(c: &FreeComplex<L>) -> CohomologyResult {
    // divisors of d(k) for k in lo-1..=hi
    let snfs: Vec<Vec<BigInt>> = (c.lo() - 1..=c.hi())
        .map(|k| {
            let m = c.d(k);
            if m.is_zero() {
                Vec::new()
            } else {
                smith_normal_form(&m, false).divisors
            }
        })
        .collect();
    let groups = c
        .degrees()
        .map(|k| {
            let idx = (k - c.lo()) as usize;
            let incoming = &snfs[idx];
            let outgoing = &snfs[idx + 1];
            DegreeCohomology {
                degree: k,
                rank: c.rank(k) - incoming.len() - outgoing.len(),
                torsion: incoming.iter().filter(|x| !x.is_one()).cloned().collect(),
            }
        })
        .collect();
    CohomologyResult { groups }
}
