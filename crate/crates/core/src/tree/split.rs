use super::{Tree, TreeError, VertexId};

/// One subtree of a v-split: the split vertex plus one component of `t - v`.
#[derive(Debug, Clone)]
pub struct SplitPart {
    pub tree: Tree,
    /// `to_parent[local]` is the vertex id in the split tree.
    pub to_parent: Vec<VertexId>,
    /// Local id of the split vertex (always 0).
    pub center: VertexId,
}

impl SplitPart {
    pub fn order(&self) -> usize {
        self.tree.order()
    }
}

#[derive(Debug, Clone)]
pub struct SplitResult {
    pub center: VertexId,
    /// One part per neighbor of the center, in ascending neighbor order.
    pub parts: Vec<SplitPart>,
}

/// Splits `t` at `v` into `deg(v)` subtrees that share only `v`.
pub fn v_split(t: &Tree, v: VertexId) -> Result<SplitResult, TreeError> {
    let degree = t.degree(v);
    if degree < 2 {
        return Err(TreeError::SplitAtLeaf { vertex: v, degree });
    }
    let mut local = vec![usize::MAX; t.order()];
    let parts = t
        .neighbors(v)
        .iter()
        .map(|&start| {
            let mut to_parent = vec![v, start];
            let mut edges = vec![(0, 1)];
            local[v] = 0;
            local[start] = 1;
            let mut head = 1;
            while head < to_parent.len() {
                let u = to_parent[head];
                head += 1;
                for &w in t.neighbors(u) {
                    if w != v && local[w] == usize::MAX {
                        local[w] = to_parent.len();
                        edges.push((local[u], local[w]));
                        to_parent.push(w);
                    }
                }
            }
            for &u in &to_parent[1..] {
                local[u] = usize::MAX;
            }
            SplitPart { tree: Tree::from_edges_unchecked(to_parent.len(), &edges), to_parent, center: 0 }
        })
        .collect();
    Ok(SplitResult { center: v, parts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{build_tree, is_isomorphic};

    #[test]
    fn path_split_in_the_middle() {
        let p3 = build_tree(&[(0, 1), (1, 2)], 3).unwrap();
        let split = v_split(&p3, 1).unwrap();
        let p2 = build_tree(&[(0, 1)], 2).unwrap();
        assert_eq!(split.parts.len(), 2);
        for part in &split.parts {
            assert!(is_isomorphic(&part.tree, &p2));
            assert_eq!(part.to_parent[part.center], 1);
        }
    }

    #[test]
    fn split_of_the_thirteen_vertex_example() {
        let edges =
            [(0, 1), (1, 2), (2, 3), (2, 4), (2, 5), (0, 6), (6, 7), (7, 8), (6, 9), (7, 10), (0, 11), (11, 12)];
        let t = build_tree(&edges, 13).unwrap();
        let split = v_split(&t, 0).unwrap();
        let sizes: Vec<usize> = split.parts.iter().map(SplitPart::order).collect();
        assert_eq!(sizes, [6, 6, 3]);
        let parts: crate::ExactInt = split.parts.iter().map(|p| crate::walk::joining_time(&p.tree, p.center)).sum();
        assert_eq!(parts, crate::walk::joining_time(&t, 0));
    }

    #[test]
    fn rejects_leaf() {
        let p3 = build_tree(&[(0, 1), (1, 2)], 3).unwrap();
        assert_eq!(v_split(&p3, 0).unwrap_err(), TreeError::SplitAtLeaf { vertex: 0, degree: 1 });
    }

    #[test]
    fn relabeling_maps_back_to_parent_edges() {
        let t = build_tree(&[(0, 1), (1, 2), (2, 3), (1, 4), (4, 5), (4, 6)], 7).unwrap();
        let split = v_split(&t, 1).unwrap();
        let mut total = 0;
        for part in &split.parts {
            for (a, b) in part.tree.edges() {
                assert!(t.has_edge(part.to_parent[a], part.to_parent[b]));
            }
            total += part.order() - 1;
        }
        assert_eq!(total, t.order() - 1);
    }
}
