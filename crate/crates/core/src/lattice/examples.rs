//! Named fans with an ample support function.

use super::fan::{Fan, SupportFunction};
use super::model::ToricModel;

fn build(
    dim: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<Vec<usize>>,
    psi: Vec<i64>,
) -> (Fan, SupportFunction) {
    let fan = Fan::new(dim, rays, cones).expect("named fan is well formed");
    (fan, SupportFunction::new(psi))
}

pub fn p1() -> (Fan, SupportFunction) {
    build(
        1,
        vec![vec![1], vec![-1]],
        vec![vec![0], vec![1]],
        vec![1, 1],
    )
}

pub fn p2() -> (Fan, SupportFunction) {
    projective(2)
}

/// Rays `e_1, ..., e_n, -(e_1 + ... + e_n)`; every n-subset spans a cone.
pub fn projective(n: usize) -> (Fan, SupportFunction) {
    let mut rays: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    rays.push(vec![-1; n]);
    let cones = (0..=n)
        .map(|skip| (0..=n).filter(|&r| r != skip).collect())
        .collect();
    build(n, rays, cones, vec![1; n + 1])
}

pub fn p1xp1() -> (Fan, SupportFunction) {
    build(
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        vec![1, 1, 1, 1],
    )
}

/// Hirzebruch surface `F_a` (`a >= 0`).
pub fn hirzebruch(a: i64) -> (Fan, SupportFunction) {
    build(
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        vec![1, 1, a.max(1), 1],
    )
}

/// A threefold iterated blowup of `P^2`. The ray `(-1, 0)` is not a vertex of
/// the convex hull of the rays, so the surface is not Fano, and the weights
/// are chosen so that its tropical region is bounded.
pub fn iterated_blowup() -> (Fan, SupportFunction) {
    build(
        2,
        vec![
            vec![1, 0],
            vec![0, 1],
            vec![-1, 0],
            vec![-3, -1],
            vec![-2, -1],
            vec![-1, -1],
        ],
        vec![
            vec![0, 1],
            vec![1, 2],
            vec![2, 3],
            vec![3, 4],
            vec![4, 5],
            vec![5, 0],
        ],
        BLOWUP_PSI.to_vec(),
    )
}

const BLOWUP_PSI: [i64; 6] = [2, 2, 1, 2, 2, 3];

/// Looks up a named fan: `p1`, `p2`, `p1xp1`, `f<a>`, `p<n>`, `blowup`.
pub fn by_name(name: &str) -> Option<(Fan, SupportFunction)> {
    match name {
        "p1" => Some(p1()),
        "p2" => Some(p2()),
        "p1xp1" => Some(p1xp1()),
        "blowup" => Some(iterated_blowup()),
        _ => {
            if let Some(a) = name.strip_prefix('f').and_then(|s| s.parse::<i64>().ok()) {
                (0..=10).contains(&a).then(|| hirzebruch(a))
            } else if let Some(n) = name.strip_prefix('p').and_then(|s| s.parse::<usize>().ok()) {
                (1..=4).contains(&n).then(|| projective(n))
            } else {
                None
            }
        }
    }
}

pub fn model(fan_and_psi: (Fan, SupportFunction)) -> ToricModel {
    ToricModel::new(fan_and_psi.0, fan_and_psi.1).expect("named fan is smooth, complete and ample")
}
