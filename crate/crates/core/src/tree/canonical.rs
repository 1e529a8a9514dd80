use std::fmt;

use super::{Tree, VertexId};

/// AHU parenthesis encoding of a tree rooted at its centroid.
///
/// Each vertex encodes as `(` followed by its children's codes in ascending
/// byte order, then `)`. With two centroids both rootings are encoded and
/// the smaller code is kept, so two trees get equal codes exactly when they
/// are isomorphic. Rooted forms use the same encoding from a given root.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub(crate) fn from_bytes(code: Vec<u8>) -> Self {
        CanonicalForm(code)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Number of vertices encoded.
    pub fn order(&self) -> usize {
        self.0.len() / 2
    }

    /// Parses a parenthesis string produced by `Display`.
    pub fn parse(s: &str) -> Option<Self> {
        let bytes = s.as_bytes();
        let mut depth = 0i64;
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => depth += 1,
                b')' => depth -= 1,
                _ => return None,
            }
            if depth < 0 || (depth == 0 && i + 1 != bytes.len()) {
                return None;
            }
        }
        (depth == 0 && !bytes.is_empty()).then(|| CanonicalForm(bytes.to_vec()))
    }

    /// Rebuilds a tree with the root as vertex 0 and the rest in preorder.
    pub fn to_tree(&self) -> Tree {
        let (tree, _) = self.to_rooted_tree();
        tree
    }

    /// Like [`to_tree`](Self::to_tree) and also returns the root (vertex 0).
    pub fn to_rooted_tree(&self) -> (Tree, VertexId) {
        let mut stack: Vec<VertexId> = Vec::new();
        let mut edges = Vec::with_capacity(self.order().saturating_sub(1));
        let mut next = 0;
        for &b in &self.0 {
            if b == b'(' {
                if let Some(&p) = stack.last() {
                    edges.push((p, next));
                }
                stack.push(next);
                next += 1;
            } else {
                stack.pop();
            }
        }
        (Tree::from_edges_unchecked(next, &edges), 0)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Only '(' and ')' are ever stored.
        f.write_str(std::str::from_utf8(&self.0).unwrap())
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({self})")
    }
}

pub fn canonical_form(t: &Tree) -> CanonicalForm {
    CanonicalForm(Canonicalizer::default().unrooted(t.adjacency()))
}

pub fn rooted_canonical_form(t: &Tree, root: VertexId) -> CanonicalForm {
    CanonicalForm(Canonicalizer::default().rooted(t.adjacency(), root))
}

pub fn is_isomorphic(a: &Tree, b: &Tree) -> bool {
    a.order() == b.order() && canonical_form(a) == canonical_form(b)
}

/// The one or two vertices whose largest component after removal is smallest.
pub fn centroids(t: &Tree) -> Vec<VertexId> {
    let (a, b) = Canonicalizer::default().centroids(t.adjacency());
    b.map_or_else(|| vec![a], |b| vec![a.min(b), a.max(b)])
}

/// Reusable buffers for computing many canonical forms.
#[derive(Default)]
pub(crate) struct Canonicalizer {
    parent: Vec<usize>,
    order: Vec<usize>,
    size: Vec<usize>,
    codes: Vec<Vec<u8>>,
    children: Vec<usize>,
}

impl Canonicalizer {
    fn bfs(&mut self, adj: &[Vec<usize>], root: usize) {
        let n = adj.len();
        self.parent.clear();
        self.parent.resize(n, usize::MAX);
        self.order.clear();
        self.order.push(root);
        self.parent[root] = root;
        let mut head = 0;
        while head < self.order.len() {
            let u = self.order[head];
            head += 1;
            for &v in &adj[u] {
                if self.parent[v] == usize::MAX {
                    self.parent[v] = u;
                    self.order.push(v);
                }
            }
        }
    }

    pub(crate) fn rooted(&mut self, adj: &[Vec<usize>], root: usize) -> Vec<u8> {
        self.bfs(adj, root);
        let n = adj.len();
        self.codes.resize_with(n, Vec::new);
        for i in (0..n).rev() {
            let v = self.order[i];
            self.children.clear();
            self.children.extend(adj[v].iter().copied().filter(|&c| c != root && self.parent[c] == v));
            let codes = &self.codes;
            self.children.sort_unstable_by(|&a, &b| codes[a].cmp(&codes[b]));
            let len: usize = self.children.iter().map(|&c| self.codes[c].len()).sum();
            let mut code = Vec::with_capacity(len + 2);
            code.push(b'(');
            for &c in &self.children {
                code.extend_from_slice(&self.codes[c]);
                self.codes[c].clear();
            }
            code.push(b')');
            self.codes[v] = code;
        }
        std::mem::take(&mut self.codes[root])
    }

    pub(crate) fn centroids(&mut self, adj: &[Vec<usize>]) -> (usize, Option<usize>) {
        let n = adj.len();
        self.bfs(adj, 0);
        self.size.clear();
        self.size.resize(n, 1);
        for i in (1..n).rev() {
            let v = self.order[i];
            let p = self.parent[v];
            self.size[p] += self.size[v];
        }
        let mut best = usize::MAX;
        let mut found = (0, None);
        for (v, nbrs) in adj.iter().enumerate().take(n) {
            let mut worst = n - self.size[v];
            for &c in nbrs {
                if c != 0 && self.parent[c] == v {
                    worst = worst.max(self.size[c]);
                }
            }
            if worst < best {
                best = worst;
                found = (v, None);
            } else if worst == best {
                found.1 = Some(v);
            }
        }
        found
    }

    pub(crate) fn unrooted(&mut self, adj: &[Vec<usize>]) -> Vec<u8> {
        match self.centroids(adj) {
            (c, None) => self.rooted(adj, c),
            (a, Some(b)) => {
                let x = self.rooted(adj, a);
                let y = self.rooted(adj, b);
                x.min(y)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::build_tree;

    #[test]
    fn relabeled_paths_agree() {
        let a = build_tree(&[(0, 1), (1, 2), (2, 3)], 4).unwrap();
        let b = build_tree(&[(2, 0), (0, 3), (3, 1)], 4).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_eq!(centroids(&a), vec![1, 2]);
    }

    #[test]
    fn path_and_star_differ() {
        let p4 = build_tree(&[(0, 1), (1, 2), (2, 3)], 4).unwrap();
        let s4 = build_tree(&[(0, 1), (1, 2), (1, 3)], 4).unwrap();
        assert_ne!(canonical_form(&p4), canonical_form(&s4));
        assert_eq!(canonical_form(&s4).to_string(), "(()()())");
    }

    #[test]
    fn decode_round_trip() {
        let t = build_tree(&[(0, 1), (1, 2), (2, 3), (1, 4), (4, 5)], 6).unwrap();
        let c = canonical_form(&t);
        let back = c.to_tree();
        assert_eq!(canonical_form(&back), c);
        assert_eq!(CanonicalForm::parse(&c.to_string()), Some(c));
        assert_eq!(CanonicalForm::parse("(()"), None);
        assert_eq!(CanonicalForm::parse("()()"), None);
    }

    #[test]
    fn rooted_forms_distinguish_roots() {
        let p3 = build_tree(&[(0, 1), (1, 2)], 3).unwrap();
        assert_eq!(rooted_canonical_form(&p3, 0), rooted_canonical_form(&p3, 2));
        assert_ne!(rooted_canonical_form(&p3, 0), rooted_canonical_form(&p3, 1));
    }

    #[test]
    fn all_labeled_trees_on_four_vertices_give_two_codes() {
        let mut codes = std::collections::BTreeSet::new();
        for a in 0..4 {
            for b in 0..4 {
                let t = crate::tree::prufer_decode(&crate::tree::PruferCode::new(vec![a, b]), 4).unwrap();
                codes.insert(canonical_form(&t));
            }
        }
        assert_eq!(codes.len(), 2);
    }
}
