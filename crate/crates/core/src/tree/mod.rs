//! Trees over dense vertex ids `0..n` and their combinatorial primitives:
//! distances, diameter, v-splits, Prüfer codes, canonical forms and
//! exhaustive enumeration up to isomorphism.

mod canonical;
mod distance;
mod enumerate;
mod io;
mod prufer;
mod split;

use std::collections::{HashSet, VecDeque};
use std::fmt;

pub use canonical::{canonical_form, centroids, is_isomorphic, rooted_canonical_form, CanonicalForm};
pub use distance::{diameter, diameter_and_geodesic, distances, DistanceTable};
pub use enumerate::{
    enumerate_rooted_trees, enumerate_trees, enumerate_trees_with, CatalogEntry, TreeCatalog, DEFAULT_ENUMERATION_CAP,
};
pub use io::{parse_edge_list, to_dot, write_edge_list};
pub use prufer::{prufer_decode, prufer_encode, PruferCode};
pub use split::{v_split, SplitPart, SplitResult};

pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    Empty,
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: VertexId, v: VertexId, n: usize },
    #[error("edge ({v}, {v}) is a self-loop")]
    SelfLoop { v: VertexId },
    #[error("edge ({u}, {v}) is listed twice")]
    DuplicateEdge { u: VertexId, v: VertexId },
    #[error("edge ({u}, {v}) closes a cycle")]
    CycleDetected { u: VertexId, v: VertexId },
    #[error("vertex {vertex} is not reachable from vertex 0")]
    Disconnected { vertex: VertexId },
    #[error("v-split needs a vertex of degree at least 2, vertex {vertex} has degree {degree}")]
    SplitAtLeaf { vertex: VertexId, degree: usize },
    #[error("Prüfer entry {entry} is out of range for n = {n}")]
    EntryOutOfRange { entry: VertexId, n: usize },
    #[error("a Prüfer code for n = {n} has length {expected}, got {len}")]
    CodeLength { len: usize, expected: usize, n: usize },
    #[error("enumeration of order {n} exceeds the configured cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// An immutable tree on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    adj: Vec<Vec<VertexId>>,
}

/// Validates an edge list on `n` vertices and builds the tree.
pub fn build_tree(edges: &[(VertexId, VertexId)], n: usize) -> Result<Tree, TreeError> {
    Tree::from_edges(n, edges)
}

impl Tree {
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        let mut uf = UnionFind::new(n);
        let mut seen = HashSet::with_capacity(edges.len());
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(TreeError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(TreeError::SelfLoop { v });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(TreeError::DuplicateEdge { u, v });
            }
            if !uf.union(u, v) {
                return Err(TreeError::CycleDetected { u, v });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        if edges.len() != n - 1 {
            // Acyclic with fewer than n - 1 edges: some vertex is cut off.
            let root = uf.find(0);
            let vertex = (1..n).find(|&v| uf.find(v) != root).unwrap_or(0);
            return Err(TreeError::Disconnected { vertex });
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Tree { adj })
    }

    /// Builds from adjacency produced by this crate's own constructions.
    pub(crate) fn from_edges_unchecked(n: usize, edges: &[(VertexId, VertexId)]) -> Self {
        debug_assert!(Tree::from_edges(n, edges).is_ok(), "not a tree: {edges:?}");
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Tree { adj }
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.len() - 1
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.adj.len()
    }

    /// Every edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.adj[v].len() == 1
    }

    pub fn leaves(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices().filter(|&v| self.is_leaf(v))
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub(crate) fn adjacency(&self) -> &[Vec<VertexId>] {
        &self.adj
    }

    /// Breadth-first distances from `src`.
    pub fn bfs_distances(&self, src: VertexId) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order()];
        let mut queue = VecDeque::from([src]);
        dist[src] = 0;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Largest distance from `v` to any vertex.
    pub fn eccentricity(&self, v: VertexId) -> usize {
        self.bfs_distances(v).into_iter().max().unwrap_or(0)
    }

    /// The unique path from `u` to `v`, endpoints included.
    pub fn path(&self, u: VertexId, v: VertexId) -> Vec<VertexId> {
        let rooting = self.rooted_at(v);
        let mut path = vec![u];
        let mut cur = u;
        while let Some(p) = rooting.parent[cur] {
            path.push(p);
            cur = p;
        }
        path
    }

    pub fn rooted_at(&self, root: VertexId) -> Rooting {
        Rooting::new(self, root)
    }

    /// Renames vertex `v` to `perm[v]`; `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[VertexId]) -> Tree {
        assert_eq!(perm.len(), self.order());
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Tree::from_edges(self.order(), &edges).expect("relabeling by a permutation preserves trees")
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree(n={}, edges=", self.order())?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

/// A tree hung from a root: BFS order, parents, depths and subtree sizes.
#[derive(Debug, Clone)]
pub struct Rooting {
    pub root: VertexId,
    pub parent: Vec<Option<VertexId>>,
    /// Vertices in breadth-first order; parents precede children.
    pub order: Vec<VertexId>,
    pub depth: Vec<usize>,
    pub size: Vec<usize>,
}

impl Rooting {
    fn new(t: &Tree, root: VertexId) -> Self {
        let n = t.order();
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut order = Vec::with_capacity(n);
        let mut visited = vec![false; n];
        visited[root] = true;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &v in t.neighbors(u) {
                if !visited[v] {
                    visited[v] = true;
                    parent[v] = Some(u);
                    depth[v] = depth[u] + 1;
                    order.push(v);
                }
            }
        }
        let mut size = vec![1; n];
        for &v in order.iter().rev() {
            if let Some(p) = parent[v] {
                size[p] += size[v];
            }
        }
        Rooting { root, parent, order, depth, size }
    }

    /// Children of `v` in ascending id order.
    pub fn children<'a>(&'a self, t: &'a Tree, v: VertexId) -> impl Iterator<Item = VertexId> + 'a {
        t.neighbors(v).iter().copied().filter(move |&c| self.parent[c] == Some(v))
    }

    /// Number of vertices on `u`'s side of the edge `(u, v)`.
    pub fn side_size(&self, u: VertexId, v: VertexId) -> usize {
        if self.parent[u] == Some(v) {
            self.size[u]
        } else {
            debug_assert_eq!(self.parent[v], Some(u), "({u}, {v}) is not an edge");
            self.size[self.root] - self.size[v]
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False when `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
