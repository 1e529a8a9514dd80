use super::{Tree, VertexId};

/// All-pairs graph distances, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceTable {
    pub fn get(&self, u: VertexId, v: VertexId) -> usize {
        self.dist[u * self.n + v] as usize
    }

    pub fn row(&self, u: VertexId) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Largest entry, which is the diameter.
    pub fn max(&self) -> usize {
        self.dist.iter().copied().max().unwrap_or(0) as usize
    }

    /// Length of the intersection of the `(u, w)`- and `(v, w)`-paths.
    pub fn overlap(&self, u: VertexId, v: VertexId, w: VertexId) -> usize {
        let twice = self.get(u, w) + self.get(v, w) - self.get(u, v);
        debug_assert!(twice.is_multiple_of(2));
        twice / 2
    }

    /// Sum of distances from `v` to every vertex.
    pub fn total_distance(&self, v: VertexId) -> u64 {
        self.row(v).iter().map(|&d| d as u64).sum()
    }
}

/// All-pairs distances by one breadth-first search per vertex.
pub fn distances(t: &Tree) -> DistanceTable {
    let n = t.order();
    let mut dist = Vec::with_capacity(n * n);
    for u in t.vertices() {
        dist.extend(t.bfs_distances(u).into_iter().map(|d| d as u32));
    }
    DistanceTable { n, dist }
}

/// The diameter and one geodesic realizing it, found by double BFS.
///
/// The geodesic is oriented so that its first vertex has the smaller id; ties
/// between equally far vertices go to the smallest id.
pub fn diameter_and_geodesic(t: &Tree) -> (usize, Vec<VertexId>) {
    let far = |from: VertexId| {
        let dist = t.bfs_distances(from);
        let best = *dist.iter().max().unwrap();
        (dist.iter().position(|&d| d == best).unwrap(), best)
    };
    let (a, _) = far(0);
    let (b, d) = far(a);
    let mut path = t.path(a, b);
    if path[0] > path[path.len() - 1] {
        path.reverse();
    }
    (d, path)
}

pub fn diameter(t: &Tree) -> usize {
    diameter_and_geodesic(t).0
}
