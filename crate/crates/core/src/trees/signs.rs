use serde::Serialize;

use super::{Shape, TreeError};

/// `C(n) = binom(2n, n) / (n + 1)`.
pub fn catalan(n: u32) -> u64 {
    let mut c: u64 = 1;
    for k in 0..n as u64 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

/// A boundary facet of the compactified tree moduli: a tree with `d2`
/// leaves grafted onto input `i` of a tree with `d1` leaves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct StasheffFacet {
    pub d1: usize,
    pub d2: usize,
    pub i: usize,
}

pub fn stasheff_facets(d: usize) -> Vec<StasheffFacet> {
    let mut out = Vec::new();
    for d1 in 2..d {
        let d2 = d + 1 - d1;
        for i in 1..=d1 {
            out.push(StasheffFacet { d1, d2, i });
        }
    }
    out
}

/// The two-vertex tree generic on `facet`.
pub fn facet_shape(facet: &StasheffFacet) -> Shape {
    let mut children = vec![Shape::Leaf; facet.d1];
    children[facet.i - 1] = Shape::corolla(facet.d2);
    Shape::Node(children)
}

/// `i + sum_{j<i} deg_j mod 2`. Degrees past the end of `degs` count as zero.
pub fn maltese(i: usize, degs: &[i64]) -> u8 {
    let s: i64 = degs.iter().take(i).sum();
    (i as i64 + s).rem_euclid(2) as u8
}

/// `(m+1) (sum_{j=0}^{d} (deg q + sum_{k<=j} deg p_k) + dim (1 + m + d + deg q)) mod 2`,
/// with `degs_p[k-1] = deg p_k`.
pub fn sigma_twist(
    deg_q: i64,
    degs_p: &[i64],
    dim_t: i64,
    m: i64,
    d: usize,
) -> Result<u8, TreeError> {
    if degs_p.len() != d {
        return Err(TreeError::DegreeCount {
            expected: d,
            found: degs_p.len(),
        });
    }
    let mut partial = 0i64;
    let mut sum = deg_q;
    for p in degs_p {
        partial += p;
        sum += deg_q + partial;
    }
    let inner = sum + dim_t * (1 + m + d as i64 + deg_q);
    Ok(((m + 1) * inner).rem_euclid(2) as u8)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BoundaryStratum {
    /// Consecutive incoming vertices merged into blocks of the given sizes.
    Partition(Vec<usize>),
    /// Every incoming edge becomes infinite.
    AllInfinite,
    /// Splitting into lower shrubs with the given numbers of leaves.
    Splitting(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShrubBoundary {
    pub horizontal: Vec<BoundaryStratum>,
    pub vertical: Vec<BoundaryStratum>,
}

fn compositions(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=d {
        for mut rest in compositions(d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Boundary strata of the shrub moduli with `d` leaves.
pub fn shrub_boundary_types(d: usize) -> ShrubBoundary {
    let mut all = compositions(d);
    all.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    let mut horizontal: Vec<BoundaryStratum> = all
        .iter()
        .filter(|c| c.len() < d)
        .map(|c| BoundaryStratum::Partition(c.clone()))
        .collect();
    horizontal.push(BoundaryStratum::AllInfinite);
    let vertical = all
        .iter()
        .filter(|c| c.len() >= 2 && c.iter().any(|&x| x != 1))
        .map(|c| BoundaryStratum::Splitting(c.clone()))
        .collect();
    ShrubBoundary {
        horizontal,
        vertical,
    }
}
