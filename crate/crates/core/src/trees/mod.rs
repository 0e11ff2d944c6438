//! Planar ribbon trees, Stasheff facets, shrubs and their orientation signs.

mod orientation;
mod signs;

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

pub use orientation::{
    dexterity, dexterity_table, select_turn_convention, shrub_orientation, wall_crossing_check,
    DexterityRows, ShrubOrientation, TurnConvention, WallCheck,
};
pub use signs::{
    catalan, facet_shape, maltese, shrub_boundary_types, sigma_twist, stasheff_facets,
    BoundaryStratum, ShrubBoundary, StasheffFacet,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("need at least 2 leaves, got {0}")]
    TooFewLeaves(usize),
    #[error("tree is not trivalent")]
    NotTrivalent,
    #[error("no edge {0}")]
    NoSuchEdge(usize),
    #[error("internal vertex {0} has fewer than two children")]
    Unstable(usize),
    #[error("edge labels do not telescope at vertex {0}")]
    Unbalanced(usize),
    #[error("edge lengths must be positive")]
    NonPositiveLength,
    #[error("incoming edges of a shrub must be finite and the outgoing edge infinite")]
    NotShrub,
    #[error("expected {expected} degrees, got {found}")]
    DegreeCount { expected: usize, found: usize },
}

/// Topological type of a planar rooted tree; children are listed left to right.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    Leaf,
    Node(Vec<Shape>),
}

impl Shape {
    pub fn leaves(&self) -> usize {
        match self {
            Shape::Leaf => 1,
            Shape::Node(c) => c.iter().map(Shape::leaves).sum(),
        }
    }

    pub fn corolla(d: usize) -> Self {
        Shape::Node(vec![Shape::Leaf; d])
    }

    /// Number of internal vertices with exactly `k` children.
    pub fn vertices_with_children(&self, k: usize) -> usize {
        match self {
            Shape::Leaf => 0,
            Shape::Node(c) => {
                usize::from(c.len() == k)
                    + c.iter().map(|s| s.vertices_with_children(k)).sum::<usize>()
            }
        }
    }

    pub fn internal_vertices(&self) -> usize {
        match self {
            Shape::Leaf => 0,
            Shape::Node(c) => 1 + c.iter().map(Shape::internal_vertices).sum::<usize>(),
        }
    }

    pub fn is_trivalent(&self) -> bool {
        match self {
            Shape::Leaf => true,
            Shape::Node(c) => c.len() == 2 && c.iter().all(Shape::is_trivalent),
        }
    }

    fn write(&self, next: &mut usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Leaf => {
                *next += 1;
                write!(f, "{}", *next)
            }
            Shape::Node(c) => {
                write!(f, "(")?;
                for (k, s) in c.iter().enumerate() {
                    if k > 0 {
                        write!(f, " ")?;
                    }
                    s.write(next, f)?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(&mut 0, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeLength {
    Finite(BigRational),
    Infinite,
}

impl EdgeLength {
    pub fn finite(n: i64) -> Self {
        EdgeLength::Finite(BigRational::from_integer(n.into()))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, EdgeLength::Finite(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VertexKind {
    Finite,
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// `Some(k)` for the `k`-th incoming vertex, counted from 1.
    pub leaf: Option<usize>,
    pub kind: VertexKind,
}

/// A planar rooted tree with `d` incoming leaves. Node `k` owns the edge to
/// its parent; the root node owns the outgoing edge, so edge ids are node ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonTree {
    nodes: Vec<TreeNode>,
    lengths: Vec<EdgeLength>,
    root: usize,
    shape: Shape,
}

impl RibbonTree {
    /// External edges are infinite and internal edges have length 1.
    pub fn from_shape(shape: &Shape) -> Self {
        fn build(
            s: &Shape,
            parent: Option<usize>,
            leaf: &mut usize,
            nodes: &mut Vec<TreeNode>,
        ) -> usize {
            let id = nodes.len();
            nodes.push(TreeNode {
                parent,
                children: Vec::new(),
                leaf: None,
                kind: VertexKind::Finite,
            });
            match s {
                Shape::Leaf => {
                    *leaf += 1;
                    nodes[id].leaf = Some(*leaf);
                }
                Shape::Node(c) => {
                    for child in c {
                        let k = build(child, Some(id), leaf, nodes);
                        nodes[id].children.push(k);
                    }
                }
            }
            id
        }
        let mut nodes = Vec::new();
        let root = build(shape, None, &mut 0, &mut nodes);
        let lengths = nodes
            .iter()
            .map(|n| {
                if n.parent.is_none() || n.leaf.is_some() {
                    EdgeLength::Infinite
                } else {
                    EdgeLength::finite(1)
                }
            })
            .collect();
        Self {
            nodes,
            lengths,
            root,
            shape: shape.clone(),
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn node(&self, k: usize) -> &TreeNode {
        &self.nodes[k]
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn num_leaves(&self) -> usize {
        self.nodes.iter().filter(|n| n.leaf.is_some()).count()
    }

    pub fn num_edges(&self) -> usize {
        self.nodes.len()
    }

    /// Node of the `k`-th incoming vertex.
    pub fn leaf_node(&self, k: usize) -> Option<usize> {
        self.nodes.iter().position(|n| n.leaf == Some(k))
    }

    pub fn internal_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&k| self.nodes[k].leaf.is_none())
    }

    pub fn length(&self, e: usize) -> Result<&EdgeLength, TreeError> {
        self.lengths.get(e).ok_or(TreeError::NoSuchEdge(e))
    }

    pub fn set_length(&mut self, e: usize, len: EdgeLength) -> Result<(), TreeError> {
        if e >= self.lengths.len() {
            return Err(TreeError::NoSuchEdge(e));
        }
        if let EdgeLength::Finite(x) = &len {
            if !x.is_positive() {
                return Err(TreeError::NonPositiveLength);
            }
        }
        self.lengths[e] = len;
        Ok(())
    }

    pub fn set_vertex_kind(&mut self, v: usize, kind: VertexKind) -> Result<(), TreeError> {
        self.nodes.get_mut(v).ok_or(TreeError::NoSuchEdge(v))?.kind = kind;
        Ok(())
    }

    pub fn is_trivalent(&self) -> bool {
        self.internal_nodes()
            .all(|v| self.nodes[v].children.len() == 2)
    }

    /// Every internal vertex has at least two children.
    pub fn validate(&self) -> Result<(), TreeError> {
        match self
            .internal_nodes()
            .find(|&v| self.nodes[v].children.len() < 2)
        {
            Some(v) => Err(TreeError::Unstable(v)),
            None => Ok(()),
        }
    }

    /// Leaves `lo..=hi` lying above edge `e`.
    pub fn leaf_interval(&self, e: usize) -> Result<(usize, usize), TreeError> {
        let n = self.nodes.get(e).ok_or(TreeError::NoSuchEdge(e))?;
        if let Some(k) = n.leaf {
            return Ok((k, k));
        }
        let lo = self.leaf_interval(n.children[0])?.0;
        let hi = self.leaf_interval(*n.children.last().expect("internal"))?.1;
        Ok((lo, hi))
    }

    /// Edges from the root outward to `e`, ending with `e`.
    pub fn path_from_root(&self, e: usize) -> Vec<usize> {
        let mut path = vec![e];
        let mut cur = e;
        while let Some(p) = self.nodes[cur].parent {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Sum of the finite lengths between the root vertex and the top of `e`.
    pub fn distance_from_root(&self, e: usize) -> Option<BigRational> {
        let mut total = BigRational::zero();
        for &k in self.path_from_root(e).iter().skip(1) {
            match &self.lengths[k] {
                EdgeLength::Finite(x) => total += x,
                EdgeLength::Infinite => return None,
            }
        }
        Some(total)
    }
}

/// Formal difference `f_i - f_j` carried by an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeLabel {
    pub j: usize,
    pub i: usize,
}

/// Labels every edge by the complementary regions on either side: walking
/// the boundary of the tree clockwise from the outgoing edge, region `k`
/// sits between leaves `k` and `k + 1`.
pub fn label_edges(t: &RibbonTree) -> Vec<EdgeLabel> {
    fn walk(t: &RibbonTree, v: usize, region: &mut usize, out: &mut [EdgeLabel]) {
        let j = *region;
        if t.nodes[v].leaf.is_some() {
            *region += 1;
        }
        for &c in &t.nodes[v].children {
            walk(t, c, region, out);
        }
        out[v] = EdgeLabel { j, i: *region };
    }
    let mut out = vec![EdgeLabel { j: 0, i: 0 }; t.nodes.len()];
    walk(t, t.root, &mut 0, &mut out);
    out
}

/// Incoming labels at every internal vertex telescope to the outgoing one.
pub fn check_balance(t: &RibbonTree, labels: &[EdgeLabel]) -> Result<(), TreeError> {
    for v in t.internal_nodes() {
        let out = labels[v];
        let mut at = out.j;
        for &c in &t.nodes[v].children {
            if labels[c].j != at || labels[c].i <= labels[c].j {
                return Err(TreeError::Unbalanced(v));
            }
            at = labels[c].i;
        }
        if at != out.i {
            return Err(TreeError::Unbalanced(v));
        }
    }
    Ok(())
}

fn compositions(d: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return if d >= 1 { vec![vec![d]] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..d {
        for mut rest in compositions(d - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All planar shapes with `d` leaves, by recursion on the root's children.
pub fn enumerate_shapes(d: usize, trivalent_only: bool) -> Result<Vec<Shape>, TreeError> {
    if d < 2 {
        return Err(TreeError::TooFewLeaves(d));
    }
    let mut memo: Vec<Vec<Shape>> = vec![Vec::new(), vec![Shape::Leaf]];
    for n in 2..=d {
        let max_parts = if trivalent_only { 2 } else { n };
        let mut here = Vec::new();
        for parts in 2..=max_parts {
            for comp in compositions(n, parts) {
                let mut partial: Vec<Vec<Shape>> = vec![Vec::new()];
                for &c in &comp {
                    partial = partial
                        .into_iter()
                        .flat_map(|p| {
                            memo[c].iter().map(move |s| {
                                let mut q = p.clone();
                                q.push(s.clone());
                                q
                            })
                        })
                        .collect();
                }
                here.extend(partial.into_iter().map(Shape::Node));
            }
        }
        memo.push(here);
    }
    Ok(memo.swap_remove(d))
}

pub fn enumerate_ribbon_trees(
    d: usize,
    trivalent_only: bool,
) -> Result<Vec<RibbonTree>, TreeError> {
    Ok(enumerate_shapes(d, trivalent_only)?
        .iter()
        .map(RibbonTree::from_shape)
        .collect())
}

/// A tree with finite incoming edges and an infinite outgoing edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shrub {
    pub tree: RibbonTree,
    /// All incoming vertices are at the same distance from the root vertex.
    pub equidistant: bool,
}

impl Shrub {
    pub fn new(tree: RibbonTree) -> Result<Self, TreeError> {
        let ok = tree.nodes.iter().enumerate().all(|(k, n)| {
            let finite = tree.lengths[k].is_finite();
            if n.parent.is_none() {
                !finite
            } else {
                finite
            }
        });
        if !ok {
            return Err(TreeError::NotShrub);
        }
        let dists: Vec<Option<BigRational>> = tree
            .nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.leaf.is_some())
            .map(|(k, _)| tree.distance_from_root(k))
            .collect();
        let equidistant = dists.windows(2).all(|w| w[0] == w[1]);
        Ok(Self { tree, equidistant })
    }

    /// Internal edges of length 1, incoming edges padded so every leaf sits
    /// at the same height.
    pub fn standard(shape: &Shape) -> Self {
        let mut tree = RibbonTree::from_shape(shape);
        let depth = |k: usize| tree.path_from_root(k).len() as i64;
        let leaves: Vec<usize> = (0..tree.nodes.len())
            .filter(|&k| tree.nodes[k].leaf.is_some())
            .collect();
        let top = leaves.iter().map(|&k| depth(k)).max().unwrap_or(1);
        let pads: Vec<(usize, i64)> = leaves.iter().map(|&k| (k, top + 1 - depth(k))).collect();
        for (k, pad) in pads {
            tree.lengths[k] = EdgeLength::finite(pad);
        }
        Self::new(tree).expect("standard shrub is well formed")
    }
}
