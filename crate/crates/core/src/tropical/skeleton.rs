use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use super::{TropicalError, TropicalPolynomial};
use crate::linalg::{rat, solve, to_rational_rows};

pub type Point2 = [BigRational; 2];

fn ser_point<S: Serializer>(p: &Point2, s: S) -> Result<S::Ok, S::Error> {
    [p[0].to_string(), p[1].to_string()].serialize(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkeletonEdge {
    #[serde(serialize_with = "ser_point")]
    pub from: Point2,
    #[serde(serialize_with = "ser_point")]
    pub to: Point2,
    /// The two terms tied along the edge.
    pub terms: (usize, usize),
}

/// A half-line `start + t * direction`, `t >= 0`. When `start` is `None` the
/// whole line through `through` is meant (only happens with no vertices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkeletonRay {
    #[serde(serialize_with = "ser_point")]
    pub start: Point2,
    pub direction: [i64; 2],
    pub terms: (usize, usize),
    pub full_line: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Skeleton {
    #[serde(serialize_with = "ser_points")]
    pub vertices: Vec<Point2>,
    pub edges: Vec<SkeletonEdge>,
    pub rays: Vec<SkeletonRay>,
}

fn ser_points<S: Serializer>(ps: &[Point2], s: S) -> Result<S::Ok, S::Error> {
    let v: Vec<[String; 2]> = ps
        .iter()
        .map(|p| [p[0].to_string(), p[1].to_string()])
        .collect();
    v.serialize(s)
}

fn max_value(w: &TropicalPolynomial, u: &[BigRational]) -> BigRational {
    (0..w.terms().len())
        .map(|i| w.value(i, u))
        .max()
        .expect("polynomial has terms")
}

// Interval of t where terms i, j stay maximal along p + t * dir.
fn tie_interval(
    w: &TropicalPolynomial,
    i: usize,
    p: &[BigRational],
    dir: &[i64; 2],
) -> Option<(Option<BigRational>, Option<BigRational>)> {
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    let ai = &w.terms()[i].alpha;
    for k in 0..w.terms().len() {
        // f_i(p + t dir) - f_k(p + t dir) = base + t * slope >= 0
        let ak = &w.terms()[k].alpha;
        let diff: Vec<i64> = ai.iter().zip(ak).map(|(x, y)| x - y).collect();
        let base = w.value(i, p) - w.value(k, p);
        let slope = rat(diff[0] * dir[0] + diff[1] * dir[1]);
        if slope.is_zero() {
            if base.is_negative() {
                return None;
            }
        } else {
            let t = -&base / &slope;
            if slope.is_positive() {
                lo = Some(match lo {
                    Some(l) if l > t => l,
                    _ => t,
                });
            } else {
                hi = Some(match hi {
                    Some(h) if h < t => h,
                    _ => t,
                });
            }
        }
    }
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l >= h {
            return None;
        }
    }
    Some((lo, hi))
}

fn along(p: &[BigRational], dir: &[i64; 2], t: &BigRational) -> Point2 {
    [&p[0] + t * rat(dir[0]), &p[1] + t * rat(dir[1])]
}

/// Corner locus of the tropical polynomial in the plane, with exact vertices.
pub fn amoeba_skeleton_2d(w: &TropicalPolynomial) -> Result<Skeleton, TropicalError> {
    if w.dim() != 2 {
        return Err(TropicalError::NotPlanar(w.dim()));
    }
    let n = w.terms().len();
    let mut out = Skeleton::default();
    let mut seen: BTreeSet<Point2> = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let ta = &w.terms()[a];
                let rows: Vec<Vec<i64>> = [b, c]
                    .iter()
                    .map(|&k| {
                        ta.alpha
                            .iter()
                            .zip(&w.terms()[k].alpha)
                            .map(|(x, y)| x - y)
                            .collect()
                    })
                    .collect();
                let rhs: Vec<BigRational> = [b, c]
                    .iter()
                    .map(|&k| rat(ta.nu - w.terms()[k].nu))
                    .collect();
                let Some(x) = solve(&to_rational_rows(&rows), &rhs) else {
                    continue;
                };
                if w.value(a, &x) == max_value(w, &x) {
                    let p: Point2 = [x[0].clone(), x[1].clone()];
                    if seen.insert(p.clone()) {
                        out.vertices.push(p);
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let ti = &w.terms()[i];
            let tj = &w.terms()[j];
            let d = [ti.alpha[0] - tj.alpha[0], ti.alpha[1] - tj.alpha[1]];
            let r = ti.nu - tj.nu;
            // a point on <u, d> = r, and the direction along the line
            let norm = d[0] * d[0] + d[1] * d[1];
            let p = [rat(d[0] * r) / rat(norm), rat(d[1] * r) / rat(norm)];
            let dir = [-d[1], d[0]];
            let Some((lo, hi)) = tie_interval(w, i, &p, &dir) else {
                continue;
            };
            // the tie set must also keep j maximal; equality with i holds on the line
            match (lo, hi) {
                (Some(l), Some(h)) => out.edges.push(SkeletonEdge {
                    from: along(&p, &dir, &l),
                    to: along(&p, &dir, &h),
                    terms: (i, j),
                }),
                (Some(l), None) => out.rays.push(SkeletonRay {
                    start: along(&p, &dir, &l),
                    direction: dir,
                    terms: (i, j),
                    full_line: false,
                }),
                (None, Some(h)) => out.rays.push(SkeletonRay {
                    start: along(&p, &dir, &h),
                    direction: [-dir[0], -dir[1]],
                    terms: (i, j),
                    full_line: false,
                }),
                (None, None) => out.rays.push(SkeletonRay {
                    start: [p[0].clone(), p[1].clone()],
                    direction: dir,
                    terms: (i, j),
                    full_line: true,
                }),
            }
        }
    }
    Ok(out)
}
