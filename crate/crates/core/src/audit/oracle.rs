//! Hitting-time oracles that share no code with the walk module.
//!
//! One cuts each edge of the walk's path and counts the vertices left on
//! the near side; the other solves the first-step equations by exact
//! Gaussian elimination.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{ExactInt, ExactRational};
use crate::tree::{Tree, VertexId};

/// Vertices reachable from `start` without crossing the edge `(start, cut)`.
fn side_count(t: &Tree, start: VertexId, cut: VertexId) -> usize {
    let mut seen = vec![false; t.order()];
    seen[start] = true;
    seen[cut] = true;
    let mut stack = vec![start];
    let mut count = 0;
    while let Some(v) = stack.pop() {
        count += 1;
        for &w in t.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    count
}

/// The vertex sequence from `a` to `b` found by depth-first search.
fn dfs_path(t: &Tree, a: VertexId, b: VertexId) -> Vec<VertexId> {
    let mut parent = vec![usize::MAX; t.order()];
    parent[a] = a;
    let mut stack = vec![a];
    while let Some(v) = stack.pop() {
        if v == b {
            break;
        }
        for &w in t.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    let mut path = vec![b];
    while *path.last().unwrap() != a {
        path.push(parent[*path.last().unwrap()]);
    }
    path.reverse();
    path
}

/// `H(a, b)` as the sum over the path edges `(x, y)` of `2 m_x + 1`, where
/// `m_x` counts the edges on `x`'s side of `(x, y)`.
pub fn edge_decomposition_hitting(t: &Tree, a: VertexId, b: VertexId) -> ExactInt {
    dfs_path(t, a, b).windows(2).map(|e| BigInt::from(2 * (side_count(t, e[0], e[1]) - 1) + 1)).sum()
}

pub fn edge_decomposition_profile(t: &Tree) -> Vec<Vec<ExactInt>> {
    t.vertices().map(|u| t.vertices().map(|v| edge_decomposition_hitting(t, u, v)).collect()).collect()
}

/// The column `H(·, w)` from `deg(u) H(u) - Σ_{v ~ u, v ≠ w} H(v) = deg(u)`.
pub fn linear_solve_column(t: &Tree, w: VertexId) -> Vec<ExactRational> {
    let n = t.order();
    let unknowns: Vec<VertexId> = t.vertices().filter(|&v| v != w).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in unknowns.iter().enumerate() {
        index[v] = i;
    }
    let m = unknowns.len();
    let zero = ExactRational::zero();
    // Augmented matrix, one row per unknown.
    let mut a = vec![vec![zero.clone(); m + 1]; m];
    for (i, &u) in unknowns.iter().enumerate() {
        let deg = ExactRational::from_integer(BigInt::from(t.degree(u)));
        a[i][i] = deg.clone();
        a[i][m] = deg;
        for &v in t.neighbors(u) {
            if v != w {
                a[i][index[v]] -= ExactRational::one();
            }
        }
    }
    for col in 0..m {
        let pivot = (col..m).find(|&r| !a[r][col].is_zero()).expect("the first-step system is nonsingular");
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    let mut col = vec![zero; n];
    for (i, &u) in unknowns.iter().enumerate() {
        col[u] = a[i][m].clone();
    }
    col
}

/// `H[u][v]` for all pairs by solving one system per target.
pub fn linear_solve_profile(t: &Tree) -> Vec<Vec<ExactRational>> {
    let columns: Vec<_> = t.vertices().map(|w| linear_solve_column(t, w)).collect();
    t.vertices().map(|u| t.vertices().map(|w| columns[w][u].clone()).collect()).collect()
}

/// `J(w) = Σ_u deg(u) H(u, w)` from an oracle profile.
pub fn joining_times_from<T>(t: &Tree, profile: &[Vec<T>]) -> Vec<ExactRational>
where
    T: Clone + Into<ExactRational>,
{
    t.vertices()
        .map(|w| {
            t.vertices()
                .map(|u| profile[u][w].clone().into() * ExactRational::from_integer(BigInt::from(t.degree(u))))
                .sum()
        })
        .collect()
}
