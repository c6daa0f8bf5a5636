//! The canonical fixed point of a finite tree.
//!
//! Each edge is oriented toward the side holding more than half of the
//! vertices. Either one edge splits the vertices exactly in half (its
//! midpoint is the canonical point), or the orientation has exactly one sink
//! vertex. Both are determined by the tree alone, so every automorphism
//! fixes them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub type VertexId = u64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    labels: Vec<VertexId>,
    index: BTreeMap<VertexId, usize>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Tree {
    /// Builds a tree from explicit vertices and edges; edge endpoints not in
    /// `vertices` are added.
    pub fn new(vertices: &[VertexId], edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut labels: BTreeSet<VertexId> = vertices.iter().copied().collect();
        for &(u, v) in edges {
            labels.insert(u);
            labels.insert(v);
        }
        let labels: Vec<VertexId> = labels.into_iter().collect();
        if labels.is_empty() {
            return Err(Error::InvalidTree("no vertices".into()));
        }
        let index: BTreeMap<VertexId, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut adjacency = vec![Vec::new(); labels.len()];
        let mut seen = BTreeSet::new();
        let mut idx_edges = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(Error::InvalidTree(format!("self-loop at {u}")));
            }
            let (i, j) = (index[&u], index[&v]);
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::InvalidTree(format!("repeated edge {u} {v}")));
            }
            adjacency[i].push(j);
            adjacency[j].push(i);
            idx_edges.push((i, j));
        }
        if idx_edges.len() + 1 != labels.len() {
            return Err(Error::InvalidTree(format!(
                "{} vertices need {} edges, got {}",
                labels.len(),
                labels.len() - 1,
                idx_edges.len()
            )));
        }
        let tree = Self { labels, index, edges: idx_edges, adjacency };
        if tree.bfs_order(0).len() != tree.len() {
            return Err(Error::InvalidTree("graph is disconnected".into()));
        }
        Ok(tree)
    }

    pub fn from_edges(edges: &[(VertexId, VertexId)]) -> Result<Self> {
        Self::new(&[], edges)
    }

    /// Parses `u v` lines; a line with a single id declares a vertex. Blank
    /// lines and `#` comments are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let ids = line
                .split_whitespace()
                .map(|t| t.parse::<VertexId>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::InvalidTree(format!("line {}: `{line}`", lineno + 1)))?;
            match ids.as_slice() {
                [v] => vertices.push(*v),
                [u, v] => edges.push((*u, *v)),
                _ => return Err(Error::InvalidTree(format!("line {}: `{line}`", lineno + 1))),
            }
        }
        Self::new(&vertices, &edges)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> VertexId {
        self.labels[i]
    }

    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        self.index.get(&v).copied()
    }

    /// Edges as index pairs in input order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(&j)
    }

    fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut order = vec![root];
        let mut visited = vec![false; self.len()];
        visited[root] = true;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &u in &self.adjacency[v] {
                if !visited[u] {
                    visited[u] = true;
                    order.push(u);
                }
            }
        }
        order
    }

    /// Checks that `map` (vertex index → vertex index) is a graph automorphism.
    pub fn check_automorphism(&self, map: &[usize]) -> Result<()> {
        if map.len() != self.len() {
            return Err(Error::NotAutomorphism(format!("expected {} images, got {}", self.len(), map.len())));
        }
        let mut hit = vec![false; self.len()];
        for &m in map {
            if m >= self.len() || std::mem::replace(&mut hit[m], true) {
                return Err(Error::NotAutomorphism("not a bijection".into()));
            }
        }
        for &(u, v) in &self.edges {
            if !self.has_edge(map[u], map[v]) {
                return Err(Error::NotAutomorphism(format!(
                    "edge {} {} is not mapped to an edge",
                    self.labels[u], self.labels[v]
                )));
            }
        }
        Ok(())
    }
}

/// Edge orientation toward the majority side, or the unique balanced edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Orientation {
    /// `(tail, head)` per edge, in edge order; the head side holds more than
    /// half of the vertices.
    Oriented(Vec<(usize, usize)>),
    Balanced(usize),
}

impl Orientation {
    /// Vertices with no outgoing edge.
    pub fn sinks(&self, tree: &Tree) -> Vec<usize> {
        match self {
            Orientation::Balanced(_) => Vec::new(),
            Orientation::Oriented(dirs) => {
                let mut out_degree = vec![0usize; tree.len()];
                for &(tail, _) in dirs {
                    out_degree[tail] += 1;
                }
                (0..tree.len()).filter(|&v| out_degree[v] == 0).collect()
            }
        }
    }
}

pub fn orient_majority(t: &Tree) -> Orientation {
    let n = t.len();
    let order = t.bfs_order(0);
    let mut parent = vec![usize::MAX; n];
    for &v in &order {
        for &u in &t.adjacency[v] {
            if u != parent[v] && parent[u] == usize::MAX && u != 0 {
                parent[u] = v;
            }
        }
    }
    let mut size = vec![1usize; n];
    for &v in order.iter().rev() {
        if parent[v] != usize::MAX {
            size[parent[v]] += size[v];
        }
    }
    let mut balanced = Vec::new();
    let mut dirs = Vec::with_capacity(t.edges.len());
    for (idx, &(u, v)) in t.edges.iter().enumerate() {
        let child = if parent[v] == u { v } else { u };
        let other = if child == v { u } else { v };
        let child_side = size[child];
        if 2 * child_side == n {
            balanced.push(idx);
        } else if 2 * child_side > n {
            dirs.push((other, child));
        } else {
            dirs.push((child, other));
        }
    }
    assert!(balanced.len() <= 1, "a tree has at most one balanced edge");
    match balanced.first() {
        Some(&e) => Orientation::Balanced(e),
        None => Orientation::Oriented(dirs),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CenterPoint {
    Vertex { id: VertexId },
    EdgeMidpoint { u: VertexId, v: VertexId },
}

impl fmt::Display for CenterPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterPoint::Vertex { id } => write!(f, "vertex {id}"),
            CenterPoint::EdgeMidpoint { u, v } => write!(f, "midpoint of edge {u} {v}"),
        }
    }
}

impl CenterPoint {
    /// Normalized so that `u < v` for edge midpoints.
    fn edge(u: VertexId, v: VertexId) -> Self {
        CenterPoint::EdgeMidpoint { u: u.min(v), v: u.max(v) }
    }
}

pub fn canonical_center(t: &Tree) -> CenterPoint {
    if t.len() == 1 {
        return CenterPoint::Vertex { id: t.labels[0] };
    }
    let orientation = orient_majority(t);
    match &orientation {
        Orientation::Balanced(e) => {
            let (u, v) = t.edges[*e];
            CenterPoint::edge(t.labels[u], t.labels[v])
        }
        Orientation::Oriented(_) => {
            let sinks = orientation.sinks(t);
            assert_eq!(sinks.len(), 1, "majority orientation has a unique sink");
            CenterPoint::Vertex { id: t.labels[sinks[0]] }
        }
    }
}

/// Whether each automorphism fixes the canonical point (a vertex, or an edge
/// setwise).
pub fn verify_fixed(t: &Tree, autos: &[Vec<usize>]) -> Result<bool> {
    for map in autos {
        t.check_automorphism(map)?;
    }
    let center = canonical_center(t);
    let idx = |id: VertexId| t.index_of(id).expect("center is a vertex of the tree");
    Ok(autos.iter().all(|map| match center {
        CenterPoint::Vertex { id } => map[idx(id)] == idx(id),
        CenterPoint::EdgeMidpoint { u, v } => {
            let (i, j) = (idx(u), idx(v));
            let (mi, mj) = (map[i], map[j]);
            (mi == i && mj == j) || (mi == j && mj == i)
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: u64) -> Tree {
        Tree::from_edges(&(1..n).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn two_vertices_balanced() {
        let t = path(2);
        assert_eq!(orient_majority(&t), Orientation::Balanced(0));
        assert_eq!(canonical_center(&t), CenterPoint::EdgeMidpoint { u: 1, v: 2 });
    }

    #[test]
    fn three_path_points_inward() {
        let t = path(3);
        match orient_majority(&t) {
            Orientation::Oriented(dirs) => {
                let mid = t.index_of(2).unwrap();
                assert!(dirs.iter().all(|&(_, head)| head == mid));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(canonical_center(&t), CenterPoint::Vertex { id: 2 });
    }

    #[test]
    fn star_points_to_hub() {
        let t = Tree::from_edges(&[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        match orient_majority(&t) {
            Orientation::Oriented(dirs) => assert!(dirs.iter().all(|&(_, head)| head == 0)),
            other => panic!("{other:?}"),
        }
        assert_eq!(canonical_center(&t), CenterPoint::Vertex { id: 0 });
    }

    #[test]
    fn four_path_has_middle_edge() {
        assert_eq!(canonical_center(&path(4)), CenterPoint::EdgeMidpoint { u: 2, v: 3 });
    }

    #[test]
    fn single_vertex() {
        let t = Tree::parse_edge_list("7\n").unwrap();
        assert_eq!(canonical_center(&t), CenterPoint::Vertex { id: 7 });
        assert!(verify_fixed(&t, &[vec![0]]).unwrap());
    }

    #[test]
    fn small_automorphisms() {
        assert!(verify_fixed(&path(2), &[vec![1, 0]]).unwrap());
        assert!(verify_fixed(&path(3), &[vec![2, 1, 0]]).unwrap());
        assert!(verify_fixed(&path(4), &[vec![3, 2, 1, 0], vec![0, 1, 2, 3]]).unwrap());
        assert!(matches!(verify_fixed(&path(3), &[vec![1, 0, 2]]), Err(Error::NotAutomorphism(_))));
        assert!(verify_fixed(&path(3), &[vec![0, 0, 2]]).is_err());
    }

    #[test]
    fn rejects_non_trees() {
        assert!(Tree::from_edges(&[(1, 2), (2, 3), (3, 1)]).is_err());
        assert!(Tree::new(&[1, 2, 3, 4], &[(1, 2), (3, 4), (2, 1)]).is_err());
        assert!(Tree::new(&[1, 2, 3], &[(1, 2)]).is_err());
        assert!(Tree::from_edges(&[(1, 1)]).is_err());
        assert!(Tree::from_edges(&[]).is_err());
        assert!(Tree::parse_edge_list("1 2 3\n").is_err());
        assert!(Tree::parse_edge_list("1 x\n").is_err());
    }

    #[test]
    fn parses_edge_lists() {
        let t = Tree::parse_edge_list("# spider\n10 11\n10 12 # leg\n\n10 13\n").unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(canonical_center(&t), CenterPoint::Vertex { id: 10 });
    }
}
