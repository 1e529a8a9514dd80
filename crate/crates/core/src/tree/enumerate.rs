use std::collections::{BTreeSet, HashSet};
use std::sync::{Arc, OnceLock};

use super::canonical::{CanonicalForm, Canonicalizer};
use super::prufer::decode_into;
use super::{diameter, Tree, TreeError, VertexId};
use crate::Exec;

/// Largest order enumerated unless a caller raises the cap.
pub const DEFAULT_ENUMERATION_CAP: usize = 10;

/// One isomorphism class: its representative, canonical code and diameter.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub tree: Tree,
    pub canonical: CanonicalForm,
    pub diameter: usize,
}

/// Enumerates trees of order `n` up to isomorphism, optionally keeping only
/// diameter `d`, with the default cap and execution strategy.
pub fn enumerate_trees(n: usize, d_filter: Option<usize>) -> Result<Vec<Tree>, TreeError> {
    enumerate_trees_with(n, d_filter, DEFAULT_ENUMERATION_CAP, Exec::default())
}

pub fn enumerate_trees_with(n: usize, d_filter: Option<usize>, cap: usize, exec: Exec) -> Result<Vec<Tree>, TreeError> {
    Ok(sweep(n, cap, exec)?.into_iter().filter(|e| d_filter.is_none_or(|d| e.diameter == d)).map(|e| e.tree).collect())
}

/// Rooted trees `(t, root)` of order `n` up to root-preserving isomorphism,
/// ordered by rooted canonical code. Each representative has root 0.
pub fn enumerate_rooted_trees(n: usize, cap: usize, exec: Exec) -> Result<Vec<(Tree, VertexId)>, TreeError> {
    let classes = sweep(n, cap, exec)?;
    let per_class = exec.map(&classes, |entry| {
        let mut canon = Canonicalizer::default();
        entry.tree.vertices().map(|v| canon.rooted(entry.tree.adjacency(), v)).collect::<Vec<_>>()
    });
    let codes: BTreeSet<Vec<u8>> = per_class.into_iter().flatten().collect();
    Ok(codes.into_iter().map(|code| CanonicalForm::from_bytes(code).to_rooted_tree()).collect())
}

/// Memoized enumeration results, one slot per order up to the cap.
pub struct TreeCatalog {
    cap: usize,
    exec: Exec,
    slots: Vec<OnceLock<Arc<[CatalogEntry]>>>,
}

impl TreeCatalog {
    pub fn new(cap: usize, exec: Exec) -> Self {
        TreeCatalog { cap, exec, slots: (0..=cap).map(|_| OnceLock::new()).collect() }
    }

    /// Process-wide catalog with the default cap and execution strategy.
    pub fn shared() -> &'static TreeCatalog {
        static SHARED: OnceLock<TreeCatalog> = OnceLock::new();
        SHARED.get_or_init(|| TreeCatalog::new(DEFAULT_ENUMERATION_CAP, Exec::default()))
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// All classes of order `n`, sorted by canonical code.
    pub fn trees(&self, n: usize) -> Result<Arc<[CatalogEntry]>, TreeError> {
        if n == 0 || n > self.cap {
            return Err(TreeError::CapExceeded { n, cap: self.cap });
        }
        if let Some(found) = self.slots[n].get() {
            return Ok(found.clone());
        }
        let built: Arc<[CatalogEntry]> = sweep(n, self.cap, self.exec)?.into();
        Ok(self.slots[n].get_or_init(|| built).clone())
    }

    pub fn trees_with_diameter(&self, n: usize, d: usize) -> Result<Vec<CatalogEntry>, TreeError> {
        Ok(self.trees(n)?.iter().filter(|e| e.diameter == d).cloned().collect())
    }
}

fn sweep(n: usize, cap: usize, exec: Exec) -> Result<Vec<CatalogEntry>, TreeError> {
    if n == 0 || n > cap {
        return Err(TreeError::CapExceeded { n, cap });
    }
    let codes: BTreeSet<Vec<u8>> = if n <= 2 {
        let t = Tree::from_edges_unchecked(n, &if n == 2 { vec![(0, 1)] } else { vec![] });
        BTreeSet::from([Canonicalizer::default().unrooted(t.adjacency())])
    } else {
        // Fix a prefix of up to two entries per chunk and run an odometer over the rest.
        let len = n - 2;
        let prefix = len.min(2);
        let chunks = n.pow(prefix as u32);
        exec.map_indices(chunks, |chunk| sweep_chunk(n, prefix, chunk)).into_iter().flatten().collect()
    };
    Ok(codes
        .into_iter()
        .map(|code| {
            let canonical = CanonicalForm::from_bytes(code);
            let tree = canonical.to_tree();
            CatalogEntry { diameter: diameter(&tree), tree, canonical }
        })
        .collect())
}

fn sweep_chunk(n: usize, prefix: usize, chunk: usize) -> HashSet<Vec<u8>> {
    let len = n - 2;
    let mut code = vec![0; len];
    let mut c = chunk;
    for slot in code[..prefix].iter_mut().rev() {
        *slot = c % n;
        c /= n;
    }
    let mut seen = HashSet::new();
    let mut degree = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(n - 1);
    let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(n); n];
    let mut canon = Canonicalizer::default();
    loop {
        decode_into(&code, n, &mut degree, &mut edges);
        for list in &mut adj {
            list.clear();
        }
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        seen.insert(canon.unrooted(&adj));
        // Odometer over the free suffix.
        let mut i = len;
        loop {
            if i == prefix {
                return seen;
            }
            i -= 1;
            code[i] += 1;
            if code[i] < n {
                break;
            }
            code[i] = 0;
        }
    }
}
