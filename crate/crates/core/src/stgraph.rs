//! Series-triangular graphs built by repeated face subdivision.
//!
//! A graph starts as the triangle `v0 v1 v2`; each further vertex is placed
//! inside an existing triangle and joined to its three corners. Triangles are
//! kept in a canonical order: subdividing the triangle at position `j`
//! removes it and appends its children `(u1, u2, v)`, `(u2, u3, v)`,
//! `(u3, u1, v)` at the end, in that order.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("triangle index {index} out of range ({count} triangles)")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("graph has {found} vertices, the validation cap is {cap}")]
    CapExceeded { found: usize, cap: usize },
    #[error("vertex count {vertex_count} does not match {insertions} insertions")]
    CountMismatch { vertex_count: usize, insertions: usize },
}

pub const VALIDATION_CAP: usize = 12;

/// Node of the subdivision tree. Leaves are the current triangles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub corners: [usize; 3],
    pub parent: Option<usize>,
    /// Child nodes in canonical child order, once subdivided.
    pub children: Option<[usize; 3]>,
    /// Vertex that subdivided this node.
    pub apex: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SubdivisionTree {
    nodes: Vec<TreeNode>,
}

impl SubdivisionTree {
    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        0
    }

    /// Node ids of the leaves below (and including) `node`.
    pub fn leaves_below(&self, node: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(id) = stack.pop() {
            match self.nodes[id].children {
                Some(ch) => stack.extend(ch.iter().rev()),
                None => out.push(id),
            }
        }
        out
    }

    pub fn depth(&self, mut node: usize) -> usize {
        let mut d = 0;
        while let Some(p) = self.nodes[node].parent {
            node = p;
            d += 1;
        }
        d
    }
}

/// How [`SeriesTriangularGraph::with_min_triangles`] chooses the triangle to
/// subdivide next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ShapePolicy {
    /// Always the most recently created triangle (a chain).
    #[default]
    LastCreated,
    /// Always the oldest triangle, which keeps the tree breadth-first.
    Balanced,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesTriangularGraph {
    vertex_count: usize,
    insertions: Vec<usize>,
    triangles: Vec<[usize; 3]>,
    /// Tree node id for each entry of `triangles`.
    leaf_nodes: Vec<usize>,
    tree: SubdivisionTree,
}

impl SeriesTriangularGraph {
    /// The triangle `v0 v1 v2`.
    pub fn base() -> Self {
        SeriesTriangularGraph {
            vertex_count: 3,
            insertions: Vec::new(),
            triangles: vec![[0, 1, 2]],
            leaf_nodes: vec![0],
            tree: SubdivisionTree {
                nodes: vec![TreeNode {
                    corners: [0, 1, 2],
                    parent: None,
                    children: None,
                    apex: None,
                }],
            },
        }
    }

    pub fn from_insertions(insertions: &[usize]) -> Result<Self, GraphError> {
        insertions
            .iter()
            .try_fold(Self::base(), |g, &j| g.insert_vertex(j))
    }

    /// Returns a new graph with one more vertex inside triangle `index`.
    pub fn insert_vertex(&self, index: usize) -> Result<Self, GraphError> {
        let mut g = self.clone();
        g.insert_in_place(index)?;
        Ok(g)
    }

    fn insert_in_place(&mut self, index: usize) -> Result<(), GraphError> {
        if index >= self.triangles.len() {
            return Err(GraphError::IndexOutOfRange {
                index,
                count: self.triangles.len(),
            });
        }
        let v = self.vertex_count;
        let [u1, u2, u3] = self.triangles.remove(index);
        let parent = self.leaf_nodes.remove(index);
        let first_child = self.tree.nodes.len();
        for corners in [[u1, u2, v], [u2, u3, v], [u3, u1, v]] {
            self.triangles.push(corners);
            self.leaf_nodes.push(self.tree.nodes.len());
            self.tree.nodes.push(TreeNode {
                corners,
                parent: Some(parent),
                children: None,
                apex: None,
            });
        }
        let node = &mut self.tree.nodes[parent];
        node.children = Some([first_child, first_child + 1, first_child + 2]);
        node.apex = Some(v);
        self.vertex_count += 1;
        self.insertions.push(index);
        Ok(())
    }

    /// A graph with at least `n` triangles and `ceil((n + 5) / 2)` vertices.
    pub fn with_min_triangles(n: usize, policy: ShapePolicy) -> Self {
        let vertices = (n + 5).div_ceil(2).max(3);
        let mut g = Self::base();
        while g.vertex_count < vertices {
            let index = match policy {
                ShapePolicy::LastCreated => g.triangles.len() - 1,
                ShapePolicy::Balanced => 0,
            };
            g.insert_in_place(index).expect("index within range");
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn insertions(&self) -> &[usize] {
        &self.insertions
    }

    /// Triangles in canonical order.
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn tree(&self) -> &SubdivisionTree {
        &self.tree
    }

    /// Tree node id of each triangle, in canonical order.
    pub fn leaf_nodes(&self) -> &[usize] {
        &self.leaf_nodes
    }

    pub fn edges(&self) -> BTreeSet<(usize, usize)> {
        let mut edges = BTreeSet::new();
        for t in &self.triangles {
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                edges.insert((a.min(b), a.max(b)));
            }
        }
        edges
    }

    pub fn adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.vertex_count];
        for (a, b) in self.edges() {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    /// The graph before the last insertion, obtained by merging the last three
    /// triangles and putting the merged triangle back at the position it was
    /// taken from.
    pub fn remove_last_vertex(&self) -> Option<Self> {
        let (_, rest) = self.insertions.split_last()?;
        Some(Self::from_insertions(rest).expect("prefix of a valid sequence"))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphDocument {
            vertex_count: self.vertex_count,
            insertions: self.insertions.clone(),
        })
        .expect("plain data")
    }

    pub fn from_json(text: &str) -> Result<Self, GraphJsonError> {
        let doc: GraphDocument = serde_json::from_str(text)?;
        Ok(Self::try_from(doc)?)
    }
}

/// Serialized form: vertex count plus the insertion sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub vertex_count: usize,
    pub insertions: Vec<usize>,
}

impl TryFrom<GraphDocument> for SeriesTriangularGraph {
    type Error = GraphError;

    fn try_from(doc: GraphDocument) -> Result<Self, GraphError> {
        if doc.vertex_count != doc.insertions.len() + 3 {
            return Err(GraphError::CountMismatch {
                vertex_count: doc.vertex_count,
                insertions: doc.insertions.len(),
            });
        }
        Self::from_insertions(&doc.insertions)
    }
}

impl From<&SeriesTriangularGraph> for GraphDocument {
    fn from(g: &SeriesTriangularGraph) -> Self {
        GraphDocument {
            vertex_count: g.vertex_count,
            insertions: g.insertions.clone(),
        }
    }
}

#[derive(Debug, Error)]
pub enum GraphJsonError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Backtracking check that a graph reduces to a triangle by repeatedly
/// deleting a degree-3 vertex whose neighbours are mutually adjacent, with the
/// edge count of a planar triangulation (`3v - 6`) at every stage.
pub fn validate_series_triangular(adjacency: &[BTreeSet<usize>]) -> Result<bool, GraphError> {
    let n = adjacency.len();
    if n > VALIDATION_CAP {
        return Err(GraphError::CapExceeded {
            found: n,
            cap: VALIDATION_CAP,
        });
    }
    if n < 3 {
        return Ok(false);
    }
    let all: u32 = (1u32 << n) - 1;
    let mut failed = std::collections::HashSet::new();
    Ok(reduces(adjacency, all, &mut failed))
}

fn reduces(adj: &[BTreeSet<usize>], alive: u32, failed: &mut std::collections::HashSet<u32>) -> bool {
    let count = alive.count_ones() as usize;
    let neighbours = |v: usize| -> Vec<usize> {
        adj[v].iter().copied().filter(|&u| alive & (1 << u) != 0).collect()
    };
    let edges: usize = (0..adj.len())
        .filter(|&v| alive & (1 << v) != 0)
        .map(|v| neighbours(v).len())
        .sum::<usize>()
        / 2;
    if edges != 3 * count - 6 {
        return false;
    }
    if count == 3 {
        return true;
    }
    if failed.contains(&alive) {
        return false;
    }
    for v in (0..adj.len()).filter(|&v| alive & (1 << v) != 0) {
        let nb = neighbours(v);
        if nb.len() != 3 {
            continue;
        }
        let mutually = adj[nb[0]].contains(&nb[1])
            && adj[nb[1]].contains(&nb[2])
            && adj[nb[0]].contains(&nb[2]);
        if mutually && reduces(adj, alive & !(1 << v), failed) {
            return true;
        }
    }
    failed.insert(alive);
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn adjacency_from(n: usize, edges: &[(usize, usize)]) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); n];
        for &(a, b) in edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    #[test]
    fn base_graph() {
        let g = SeriesTriangularGraph::base();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.triangles(), &[[0, 1, 2]]);
        assert_eq!(g.triangle_count(), 2 * 3 - 5);
        assert!(g.remove_last_vertex().is_none());
    }

    #[test]
    fn single_insertion() {
        let g = SeriesTriangularGraph::base().insert_vertex(0).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.triangles(), &[[0, 1, 3], [1, 2, 3], [2, 0, 3]]);
        assert_eq!(
            SeriesTriangularGraph::base().insert_vertex(1),
            Err(GraphError::IndexOutOfRange { index: 1, count: 1 })
        );
    }

    #[test]
    fn canonical_order_removes_and_appends() {
        let g = SeriesTriangularGraph::from_insertions(&[0, 0]).unwrap();
        // [0,1,3] was taken out; its children follow the survivors.
        assert_eq!(
            g.triangles(),
            &[[1, 2, 3], [2, 0, 3], [0, 1, 4], [1, 3, 4], [3, 0, 4]]
        );
    }

    #[test]
    fn min_triangle_sizes() {
        let cases = [(1, 3, 1), (9, 7, 9), (10, 8, 11), (2, 4, 3), (3, 4, 3), (4, 5, 5)];
        for (n, v, k) in cases {
            for policy in [ShapePolicy::LastCreated, ShapePolicy::Balanced] {
                let g = SeriesTriangularGraph::with_min_triangles(n, policy);
                assert_eq!((g.vertex_count(), g.triangle_count()), (v, k), "n = {n}");
            }
        }
        let chain = SeriesTriangularGraph::with_min_triangles(9, ShapePolicy::LastCreated);
        let leaves = chain.leaf_nodes();
        assert_eq!(chain.tree().depth(*leaves.last().unwrap()), 4);
        let balanced = SeriesTriangularGraph::with_min_triangles(9, ShapePolicy::Balanced);
        let deepest = balanced.leaf_nodes().iter().map(|&l| balanced.tree().depth(l)).max();
        assert_eq!(deepest, Some(2));
    }

    #[test]
    fn known_graphs() {
        let k3 = adjacency_from(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(validate_series_triangular(&k3), Ok(true));
        let k4 = adjacency_from(4, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)]);
        assert_eq!(validate_series_triangular(&k4), Ok(true));
        // Octahedron: every vertex has degree 4.
        let mut octa = Vec::new();
        for a in 0..6 {
            for b in a + 1..6 {
                if b != a + 3 {
                    octa.push((a, b));
                }
            }
        }
        let octa = adjacency_from(6, &octa);
        assert!(octa.iter().all(|nb| nb.len() == 4));
        assert_eq!(validate_series_triangular(&octa), Ok(false));
        let big = vec![BTreeSet::new(); 13];
        assert!(validate_series_triangular(&big).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = SeriesTriangularGraph::from_insertions(&[0, 2, 1, 4]).unwrap();
        let text = g.to_json();
        assert_eq!(text, r#"{"vertex_count":7,"insertions":[0,2,1,4]}"#);
        assert_eq!(SeriesTriangularGraph::from_json(&text).unwrap(), g);
        assert!(SeriesTriangularGraph::from_json(r#"{"vertex_count":5,"insertions":[0]}"#).is_err());
        assert!(SeriesTriangularGraph::from_json(r#"{"vertex_count":4,"insertions":[3]}"#).is_err());
    }

    fn arb_graph(max_insertions: usize) -> impl Strategy<Value = SeriesTriangularGraph> {
        proptest::collection::vec(any::<proptest::sample::Index>(), 0..=max_insertions).prop_map(
            |picks| {
                let mut g = SeriesTriangularGraph::base();
                for pick in picks {
                    g = g.insert_vertex(pick.index(g.triangle_count())).unwrap();
                }
                g
            },
        )
    }

    proptest! {
        #[test]
        fn counts_follow_insertions(g in arb_graph(20)) {
            let k = g.insertions().len();
            prop_assert_eq!(g.vertex_count(), 3 + k);
            prop_assert_eq!(g.triangle_count(), 1 + 2 * k);
            prop_assert_eq!(g.triangle_count(), 2 * g.vertex_count() - 5);
            prop_assert_eq!(g.triangle_count() % 2, 1);
            prop_assert_eq!(g.edges().len(), 3 * g.vertex_count() - 6);
            if k > 0 {
                let v = g.vertex_count() - 1;
                let last3 = &g.triangles()[g.triangle_count() - 3..];
                prop_assert!(last3.iter().all(|t| t.contains(&v)));
            }
        }

        #[test]
        fn constructed_graphs_validate(g in arb_graph(9)) {
            prop_assert_eq!(validate_series_triangular(&g.adjacency()), Ok(true));
        }

        #[test]
        fn removing_last_vertex_merges_last_three(g in arb_graph(12)) {
            if let Some(prev) = g.remove_last_vertex() {
                let k = g.triangle_count();
                let index = *g.insertions().last().unwrap();
                let [a, _, v] = g.triangles()[k - 3];
                let [b, _, _] = g.triangles()[k - 2];
                let [c, _, _] = g.triangles()[k - 1];
                prop_assert_eq!(v, g.vertex_count() - 1);
                let mut expected: Vec<[usize; 3]> = g.triangles()[..k - 3].to_vec();
                expected.insert(index, [a, b, c]);
                prop_assert_eq!(prev.triangles(), &expected[..]);
                // The tree leaves agree with the triangle list.
                for (t, &leaf) in g.triangles().iter().zip(g.leaf_nodes()) {
                    prop_assert_eq!(&g.tree().nodes()[leaf].corners, t);
                }
            }
        }

        #[test]
        fn leaves_below_root_cover_triangles(g in arb_graph(12)) {
            let mut leaves = g.tree().leaves_below(g.tree().root());
            leaves.sort();
            let mut expected = g.leaf_nodes().to_vec();
            expected.sort();
            prop_assert_eq!(leaves, expected);
        }
    }
}
