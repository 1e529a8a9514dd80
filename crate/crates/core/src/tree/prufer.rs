use super::{Tree, TreeError, VertexId};

/// A labeled tree on `n >= 2` vertices as its length-`(n - 2)` Prüfer sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PruferCode(Vec<VertexId>);

impl PruferCode {
    pub fn new(seq: Vec<VertexId>) -> Self {
        PruferCode(seq)
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn prufer_decode(code: &PruferCode, n: usize) -> Result<Tree, TreeError> {
    if n < 2 || code.len() != n - 2 {
        return Err(TreeError::CodeLength { len: code.len(), expected: n.saturating_sub(2), n });
    }
    if let Some(&entry) = code.as_slice().iter().find(|&&x| x >= n) {
        return Err(TreeError::EntryOutOfRange { entry, n });
    }
    let mut degree = Vec::new();
    let mut edges = Vec::new();
    decode_into(code.as_slice(), n, &mut degree, &mut edges);
    Ok(Tree::from_edges_unchecked(n, &edges))
}

/// Linear-time decode into caller-owned buffers. Entries must be in range.
pub(crate) fn decode_into(code: &[VertexId], n: usize, degree: &mut Vec<usize>, edges: &mut Vec<(VertexId, VertexId)>) {
    degree.clear();
    degree.resize(n, 1);
    edges.clear();
    for &x in code {
        degree[x] += 1;
    }
    let mut ptr = degree.iter().position(|&d| d == 1).unwrap();
    let mut leaf = ptr;
    for &x in code {
        edges.push((leaf, x));
        degree[leaf] = 0;
        degree[x] -= 1;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
}

/// Encodes by repeatedly removing the smallest leaf. Requires `n >= 2`.
pub fn prufer_encode(t: &Tree) -> PruferCode {
    let n = t.order();
    assert!(n >= 2, "Prüfer codes need at least two vertices");
    let rooting = t.rooted_at(n - 1);
    let mut degree = t.degrees();
    let mut seq = Vec::with_capacity(n - 2);
    let mut ptr = degree.iter().position(|&d| d == 1).unwrap();
    let mut leaf = ptr;
    for _ in 0..n - 2 {
        let next = rooting.parent[leaf].expect("the root n-1 is never removed");
        seq.push(next);
        degree[next] -= 1;
        if degree[next] == 1 && next < ptr {
            leaf = next;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    PruferCode(seq)
}
