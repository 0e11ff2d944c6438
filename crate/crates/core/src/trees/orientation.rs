use serde::Serialize;

use super::{enumerate_shapes, RibbonTree, Shape, Shrub, TreeError};

/// Which child of a trivalent vertex counts as a right turn when walking
/// towards the root. With the root drawn at the bottom, stepping down from
/// the left branch bends to the right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TurnConvention {
    LeftBranchTurnsRight,
    RightBranchTurnsRight,
}

impl TurnConvention {
    pub const ALL: [TurnConvention; 2] = [
        TurnConvention::LeftBranchTurnsRight,
        TurnConvention::RightBranchTurnsRight,
    ];

    fn right_turn_position(self) -> usize {
        match self {
            TurnConvention::LeftBranchTurnsRight => 0,
            TurnConvention::RightBranchTurnsRight => 1,
        }
    }
}

/// Number of right turns on the way from edge `e` to the outgoing vertex.
pub fn dexterity(t: &RibbonTree, e: usize, conv: TurnConvention) -> Result<usize, TreeError> {
    if e >= t.num_edges() {
        return Err(TreeError::NoSuchEdge(e));
    }
    if !t.is_trivalent() {
        return Err(TreeError::NotTrivalent);
    }
    let mut turns = 0;
    let mut cur = e;
    while let Some(p) = t.node(cur).parent {
        let pos = t
            .node(p)
            .children
            .iter()
            .position(|&c| c == cur)
            .expect("child of its parent");
        if pos == conv.right_turn_position() {
            turns += 1;
        }
        cur = p;
    }
    Ok(turns)
}

/// `(leaf interval, dexterity)` for each edge of one tree.
pub type DexterityRows = Vec<((usize, usize), usize)>;

/// Dexterity of every edge of every trivalent tree with `d` leaves, keyed by
/// the leaf interval above the edge.
pub fn dexterity_table(
    d: usize,
    conv: TurnConvention,
) -> Result<Vec<(Shape, DexterityRows)>, TreeError> {
    enumerate_shapes(d, true)?
        .into_iter()
        .map(|s| {
            let t = RibbonTree::from_shape(&s);
            let mut rows = (0..t.num_edges())
                .map(|e| Ok((t.leaf_interval(e)?, dexterity(&t, e, conv)?)))
                .collect::<Result<Vec<_>, TreeError>>()?;
            rows.sort();
            Ok((s, rows))
        })
        .collect()
}

/// Ordered edge coordinates of a trivalent shrub with their signs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShrubOrientation {
    /// Edge ids of each arc set, ordered from the root outwards.
    pub arcs: Vec<Vec<usize>>,
    /// All coordinate edges in wedge order.
    pub edges: Vec<usize>,
    /// `(-1)^r` for each entry of `edges`.
    pub signs: Vec<i8>,
    /// Product of `signs`.
    pub sign: i8,
}

impl ShrubOrientation {
    /// Sign of the wedge relative to `reference`, which must list the same
    /// coordinates, each once.
    pub fn sign_relative_to<K: Ord + Clone>(
        &self,
        key: impl Fn(usize) -> K,
        reference: &[K],
    ) -> Option<i8> {
        let keys: Vec<K> = self.edges.iter().map(|&e| key(e)).collect();
        if keys.len() != reference.len() {
            return None;
        }
        let perm: Vec<usize> = keys
            .iter()
            .map(|k| reference.iter().position(|r| r == k))
            .collect::<Option<_>>()?;
        let mut inversions = 0usize;
        for a in 0..perm.len() {
            for b in a + 1..perm.len() {
                if perm[a] == perm[b] {
                    return None;
                }
                if perm[a] > perm[b] {
                    inversions += 1;
                }
            }
        }
        Some(if inversions.is_multiple_of(2) {
            self.sign
        } else {
            -self.sign
        })
    }
}

/// Builds the arc sets of each incoming vertex in turn. The first arc keeps
/// its incoming edge; later arcs drop it, along with anything already used.
pub fn shrub_orientation(s: &Shrub, conv: TurnConvention) -> Result<ShrubOrientation, TreeError> {
    let t = &s.tree;
    if !t.is_trivalent() {
        return Err(TreeError::NotTrivalent);
    }
    let mut used = vec![false; t.num_edges()];
    let mut arcs = Vec::new();
    for i in 1..=t.num_leaves() {
        let leaf = t.leaf_node(i).expect("leaves are numbered consecutively");
        let arc: Vec<usize> = t
            .path_from_root(leaf)
            .into_iter()
            .filter(|&e| t.length(e).map(|l| l.is_finite()).unwrap_or(false))
            .filter(|&e| i == 1 || e != leaf)
            .filter(|&e| !used[e])
            .collect();
        for &e in &arc {
            used[e] = true;
        }
        arcs.push(arc);
    }
    let edges: Vec<usize> = arcs.concat();
    let signs = edges
        .iter()
        .map(|&e| {
            Ok(if dexterity(t, e, conv)? % 2 == 0 {
                1
            } else {
                -1
            })
        })
        .collect::<Result<Vec<i8>, TreeError>>()?;
    let sign = signs.iter().product();
    Ok(ShrubOrientation {
        arcs,
        edges,
        signs,
        sign,
    })
}

/// One codimension-one wall: a tree with a single vertex of valence four,
/// and the two orientations obtained from its trivalent resolutions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallCheck {
    pub tree: String,
    pub left_resolution: String,
    pub right_resolution: String,
    pub left_sign: i8,
    pub right_sign: i8,
    pub pass: bool,
}

fn resolve(s: &Shape, left: bool) -> Shape {
    match s {
        Shape::Leaf => Shape::Leaf,
        Shape::Node(c) if c.len() == 3 => {
            let c: Vec<Shape> = c.iter().map(|x| resolve(x, left)).collect();
            if left {
                Shape::Node(vec![
                    Shape::Node(vec![c[0].clone(), c[1].clone()]),
                    c[2].clone(),
                ])
            } else {
                Shape::Node(vec![
                    c[0].clone(),
                    Shape::Node(vec![c[1].clone(), c[2].clone()]),
                ])
            }
        }
        Shape::Node(c) => Shape::Node(c.iter().map(|x| resolve(x, left)).collect()),
    }
}

// Edge coordinate keys shared by both resolutions; the collapsing edge maps
// to `None` on both sides.
fn keyed(
    t: &RibbonTree,
    collapsing: (usize, usize),
) -> impl Fn(usize) -> Option<(usize, usize)> + '_ {
    move |e| {
        let iv = t.leaf_interval(e).expect("edge of the tree");
        (iv != collapsing).then_some(iv)
    }
}

fn quadrivalent_children(t: &RibbonTree) -> Vec<(usize, usize)> {
    let v = t
        .internal_nodes()
        .find(|&v| t.node(v).children.len() == 3)
        .expect("one vertex of valence four");
    t.node(v)
        .children
        .iter()
        .map(|&c| t.leaf_interval(c).expect("child edge"))
        .collect()
}

/// Compares the orientations on either side of every wall of the shrub
/// moduli with `d` leaves. The collapsing edge `alpha` of one side continues
/// as `-alpha'` on the other.
pub fn wall_crossing_check(d: usize, conv: TurnConvention) -> Result<Vec<WallCheck>, TreeError> {
    if d < 3 {
        return Err(TreeError::TooFewLeaves(d));
    }
    let mut out = Vec::new();
    for s in enumerate_shapes(d, false)? {
        if s.vertices_with_children(3) != 1 || s.internal_vertices() != d - 2 {
            continue;
        }
        let kids = quadrivalent_children(&RibbonTree::from_shape(&s));
        let alpha = (kids[0].0, kids[1].1);
        let alpha_prime = (kids[1].0, kids[2].1);
        let left = Shrub::standard(&resolve(&s, true));
        let right = Shrub::standard(&resolve(&s, false));
        let ol = shrub_orientation(&left, conv)?;
        let or = shrub_orientation(&right, conv)?;
        let kl = keyed(&left.tree, alpha);
        let kr = keyed(&right.tree, alpha_prime);
        let mut reference: Vec<Option<(usize, usize)>> = ol.edges.iter().map(|&e| kl(e)).collect();
        reference.sort();
        let left_sign = ol
            .sign_relative_to(&kl, &reference)
            .expect("same coordinates");
        let right_sign = -or
            .sign_relative_to(&kr, &reference)
            .expect("same coordinates");
        out.push(WallCheck {
            tree: s.to_string(),
            left_resolution: left.tree.shape().to_string(),
            right_resolution: right.tree.shape().to_string(),
            left_sign,
            right_sign,
            pass: left_sign == right_sign,
        });
    }
    Ok(out)
}

/// The turn conventions for which every wall with at most `max_d` leaves
/// passes.
pub fn select_turn_convention(max_d: usize) -> Result<Vec<TurnConvention>, TreeError> {
    let mut ok = Vec::new();
    for conv in TurnConvention::ALL {
        let mut all = true;
        for d in 3..=max_d {
            all &= wall_crossing_check(d, conv)?.iter().all(|w| w.pass);
        }
        if all {
            ok.push(conv);
        }
    }
    Ok(ok)
}
