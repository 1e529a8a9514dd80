//! Exact random-walk statistics on trees.
//!
//! Hitting times on a tree decompose over edges: crossing the edge `(a, b)`
//! from `a` takes `2 s - 1` expected steps, where `s` is the number of
//! vertices on `a`'s side. Every quantity here is built from that fact and
//! subtree sizes; the per-pair sum over path overlaps is kept as
//! [`hitting_time`] for cross-checking.

use std::fmt;

use num_bigint::BigInt;

use crate::exact::{ExactInt, ExactRational};
use crate::tree::{distances, Tree, VertexId};
use crate::Exec;

/// `ℓ(u, v; w)`: the number of edges shared by the paths `u..w` and `v..w`.
pub fn path_overlap(t: &Tree, u: VertexId, v: VertexId, w: VertexId) -> ExactInt {
    let du = t.bfs_distances(u);
    let dw = t.bfs_distances(w);
    BigInt::from((du[w] + dw[v] - du[v]) / 2)
}

/// `H(u, w)` as `Σ_v ℓ(u, v; w) deg(v)`, in `O(n)`.
pub fn hitting_time(t: &Tree, u: VertexId, w: VertexId) -> ExactInt {
    let du = t.bfs_distances(u);
    let dw = t.bfs_distances(w);
    let sum: u128 = t.vertices().map(|v| ((du[w] + dw[v] - du[v]) / 2) as u128 * t.degree(v) as u128).sum();
    BigInt::from(sum)
}

/// All hitting times `H[u][v]`.
#[derive(Clone, PartialEq, Eq)]
pub struct HittingProfile {
    n: usize,
    h: Vec<u64>,
}

impl HittingProfile {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: VertexId, v: VertexId) -> ExactInt {
        BigInt::from(self.raw(u, v))
    }

    /// The entry as a machine integer. Entries never exceed `2 n^2`.
    pub fn raw(&self, u: VertexId, v: VertexId) -> u64 {
        self.h[u * self.n + v]
    }

    pub fn row(&self, u: VertexId) -> &[u64] {
        &self.h[u * self.n..(u + 1) * self.n]
    }
}

impl fmt::Debug for HittingProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.h.chunks(self.n.max(1))).finish()
    }
}

pub fn hitting_profile(t: &Tree) -> HittingProfile {
    hitting_profile_with(t, Exec::default())
}

/// Computes one column `H(·, w)` per target by hanging the tree from `w`:
/// `H(u, w) = H(parent(u), w) + 2 size(u) - 1`.
pub fn hitting_profile_with(t: &Tree, exec: Exec) -> HittingProfile {
    let n = t.order();
    let columns = exec.map_indices(n, |w| {
        let rooting = t.rooted_at(w);
        let mut col = vec![0u64; n];
        for &u in &rooting.order[1..] {
            let p = rooting.parent[u].unwrap();
            col[u] = col[p] + 2 * rooting.size[u] as u64 - 1;
        }
        col
    });
    let mut h = vec![0; n * n];
    for (w, col) in columns.into_iter().enumerate() {
        for (u, value) in col.into_iter().enumerate() {
            h[u * n + w] = value;
        }
    }
    HittingProfile { n, h }
}

fn joining_raw(t: &Tree, w: VertexId) -> u128 {
    let rooting = t.rooted_at(w);
    rooting.order[1..]
        .iter()
        .map(|&v| {
            let s = 2 * rooting.size[v] as u128 - 1;
            s * s
        })
        .sum()
}

/// `J(w) = Σ_u deg(u) H(u, w)`, evaluated as `Σ_e (2 |A_e| - 1)^2` where
/// `A_e` is the side of edge `e` away from `w`.
pub fn joining_time(t: &Tree, w: VertexId) -> ExactInt {
    BigInt::from(joining_raw(t, w))
}

fn joining_all_raw(t: &Tree) -> Vec<u128> {
    let n = t.order();
    let rooting = t.rooted_at(0);
    let mut j = vec![0u128; n];
    j[0] = joining_raw(t, 0);
    for &v in &rooting.order[1..] {
        let p = rooting.parent[v].unwrap();
        let below = 2 * rooting.size[v] as u128 - 1;
        let above = 2 * (n - rooting.size[v]) as u128 - 1;
        j[v] = j[p] + above * above - below * below;
    }
    j
}

/// `J` at every vertex, by rerooting in `O(n)` overall.
pub fn joining_times(t: &Tree) -> Vec<ExactInt> {
    joining_all_raw(t).into_iter().map(BigInt::from).collect()
}

fn two_edges(t: &Tree) -> BigInt {
    BigInt::from(2 * t.edge_count())
}

fn scale(t: &Tree, j: BigInt) -> ExactRational {
    if t.order() == 1 {
        return ExactRational::from_integer(BigInt::from(0));
    }
    ExactRational::new(j, two_edges(t))
}

/// `H(π, w) = J(w) / (2 (n - 1))`.
pub fn meeting_time(t: &Tree, w: VertexId) -> ExactRational {
    scale(t, joining_time(t, w))
}

pub fn meeting_times(t: &Tree) -> Vec<ExactRational> {
    joining_times(t).into_iter().map(|j| scale(t, j)).collect()
}

/// An extreme value with its smallest-id witness and every tied vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extremum<T> {
    pub value: T,
    pub witness: VertexId,
    pub ties: Vec<VertexId>,
}

fn extremum<T: Ord + Clone>(values: &[T], want_max: bool) -> Extremum<T> {
    let best = if want_max { values.iter().max() } else { values.iter().min() }
        .expect("trees have at least one vertex")
        .clone();
    let ties: Vec<VertexId> = (0..values.len()).filter(|&v| values[v] == best).collect();
    Extremum { value: best, witness: ties[0], ties }
}

/// Smallest joining time and where it is attained.
pub fn j_min(t: &Tree) -> Extremum<ExactInt> {
    extremum(&joining_times(t), false)
}

pub fn j_max(t: &Tree) -> Extremum<ExactInt> {
    extremum(&joining_times(t), true)
}

/// Largest meeting time over targets.
pub fn t_meet(t: &Tree) -> Extremum<ExactRational> {
    extremum(&meeting_times(t), true)
}

/// Smallest meeting time over targets.
pub fn t_bestmeet(t: &Tree) -> Extremum<ExactRational> {
    extremum(&meeting_times(t), false)
}

/// `κ = Σ_v π_v H(π, v) = Σ_v deg(v) J(v) / (2 (n - 1))^2`.
pub fn kemeny(t: &Tree) -> ExactRational {
    if t.order() == 1 {
        return ExactRational::from_integer(BigInt::from(0));
    }
    let sum: BigInt = joining_times(t).into_iter().zip(t.degrees()).map(|(j, d)| j * BigInt::from(d)).sum();
    let m = two_edges(t);
    ExactRational::new(sum, &m * &m)
}

/// `Σ_v π_v H(u, v)` for a fixed start `u`.
pub fn kemeny_row(t: &Tree, profile: &HittingProfile, u: VertexId) -> ExactRational {
    if t.order() == 1 {
        return ExactRational::from_integer(BigInt::from(0));
    }
    let sum: u128 = profile.row(u).iter().zip(t.degrees()).map(|(&h, d)| h as u128 * d as u128).sum();
    ExactRational::new(BigInt::from(sum), two_edges(t))
}

/// The one or two barycenters, with the component sizes of `t - c` for each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarycenterResult {
    pub centers: Vec<VertexId>,
    pub component_sizes: Vec<Vec<usize>>,
}

/// Component sizes of `t - v`, one per neighbor in ascending neighbor order.
pub fn component_sizes(t: &Tree, v: VertexId) -> Vec<usize> {
    let rooting = t.rooted_at(v);
    t.neighbors(v).iter().map(|&c| rooting.size[c]).collect()
}

/// Vertices all of whose removal components have at most `n / 2` vertices.
pub fn barycenter(t: &Tree) -> BarycenterResult {
    let n = t.order();
    let rooting = t.rooted_at(0);
    let mut centers = Vec::new();
    for v in t.vertices() {
        let largest = t
            .neighbors(v)
            .iter()
            .map(|&c| if rooting.parent[v] == Some(c) { n - rooting.size[v] } else { rooting.size[c] })
            .max()
            .unwrap_or(0);
        if 2 * largest <= n {
            centers.push(v);
        }
    }
    let component_sizes = centers.iter().map(|&c| component_sizes(t, c)).collect();
    BarycenterResult { centers, component_sizes }
}

/// The four characterizations of a barycenter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BarycenterPredicate {
    /// Minimizes the total distance to all vertices.
    TotalDistance,
    /// `H(v, c) <= H(c, v)` for every `v`.
    HittingDominance,
    /// Minimizes the joining time.
    JoiningTime,
    /// Every component of `t - c` has at most `n / 2` vertices.
    ComponentBound,
}

impl fmt::Display for BarycenterPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BarycenterPredicate::TotalDistance => "total-distance",
            BarycenterPredicate::HittingDominance => "hitting-dominance",
            BarycenterPredicate::JoiningTime => "joining-time",
            BarycenterPredicate::ComponentBound => "component-bound",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WalkError {
    #[error("vertex {vertex} satisfies {holds} but not {fails}")]
    EquivalenceViolated { vertex: VertexId, holds: BarycenterPredicate, fails: BarycenterPredicate },
}

/// The vertex set selected by each barycenter predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarycenterEquivalence {
    pub sets: Vec<(BarycenterPredicate, Vec<VertexId>)>,
}

impl BarycenterEquivalence {
    /// The common set once the check has passed.
    pub fn centers(&self) -> &[VertexId] {
        &self.sets[0].1
    }
}

/// Evaluates all four predicates at every vertex and requires equal sets.
pub fn check_barycenter_equivalences(t: &Tree) -> Result<BarycenterEquivalence, WalkError> {
    let n = t.order();
    let table = distances(t);
    let totals: Vec<u64> = t.vertices().map(|v| table.total_distance(v)).collect();
    let min_total = *totals.iter().min().unwrap();
    let profile = hitting_profile(t);
    let joins = joining_all_raw(t);
    let min_join = *joins.iter().min().unwrap();
    let bary = barycenter(t);

    let preds = [
        BarycenterPredicate::TotalDistance,
        BarycenterPredicate::HittingDominance,
        BarycenterPredicate::JoiningTime,
        BarycenterPredicate::ComponentBound,
    ];
    let holds = |p: BarycenterPredicate, c: VertexId| match p {
        BarycenterPredicate::TotalDistance => totals[c] == min_total,
        BarycenterPredicate::HittingDominance => (0..n).all(|v| profile.raw(v, c) <= profile.raw(c, v)),
        BarycenterPredicate::JoiningTime => joins[c] == min_join,
        BarycenterPredicate::ComponentBound => bary.centers.contains(&c),
    };
    let sets: Vec<_> = preds.iter().map(|&p| (p, t.vertices().filter(|&c| holds(p, c)).collect::<Vec<_>>())).collect();
    for v in t.vertices() {
        for &(p, ref set) in &sets {
            for &(q, ref other) in &sets {
                if set.contains(&v) && !other.contains(&v) {
                    return Err(WalkError::EquivalenceViolated { vertex: v, holds: p, fails: q });
                }
            }
        }
    }
    Ok(BarycenterEquivalence { sets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::tree::build_tree;

    fn path(n: usize) -> Tree {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        build_tree(&edges, n).unwrap()
    }

    fn star(n: usize) -> Tree {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        build_tree(&edges, n).unwrap()
    }

    #[test]
    fn overlaps() {
        let p4 = path(4);
        assert_eq!(path_overlap(&p4, 0, 1, 3), BigInt::from(2));
        assert_eq!(path_overlap(&p4, 2, 2, 0), BigInt::from(2));
        assert_eq!(path_overlap(&p4, 0, 3, 0), BigInt::from(0));
    }

    #[test]
    fn path_hitting_times() {
        let p3 = path(3);
        assert_eq!(hitting_time(&p3, 0, 2), BigInt::from(4));
        assert_eq!(hitting_time(&p3, 1, 0), BigInt::from(3));
        let profile = hitting_profile(&p3);
        for u in 0..3 {
            for w in 0..3 {
                assert_eq!(profile.get(u, w), hitting_time(&p3, u, w));
            }
        }
        assert_eq!(hitting_profile(&path(2)).row(0), &[0, 1]);
    }

    #[test]
    fn star_leaf_to_leaf() {
        let s4 = star(4);
        assert_eq!(hitting_profile(&s4).raw(1, 2), 6);
    }

    #[test]
    fn joining_times_small_cases() {
        assert_eq!(joining_times(&path(3)), vec![10, 2, 10].into_iter().map(BigInt::from).collect::<Vec<_>>());
        assert_eq!(joining_time(&star(4), 0), BigInt::from(3));
        assert_eq!(meeting_time(&star(3), 1), ratio(5, 2));
        assert_eq!(meeting_time(&path(2), 1), ratio(1, 2));
        assert_eq!(meeting_time(&path(3), 1), ratio(1, 2));
    }

    #[test]
    fn extremes() {
        let m = t_meet(&path(4));
        assert_eq!(m.value, ratio(35, 6));
        assert_eq!(m.ties, vec![0, 3]);
        assert_eq!(t_meet(&star(4)).value, ratio(9, 2));
        assert_eq!(t_bestmeet(&star(7)).value, ratio(1, 2));
        assert_eq!(t_bestmeet(&path(9)).value, ratio(21, 2));
        assert_eq!(j_min(&path(9)).value, BigInt::from(168));
    }

    #[test]
    fn kemeny_small_cases() {
        assert_eq!(kemeny(&path(2)), ratio(1, 2));
        assert_eq!(kemeny(&path(3)), ratio(3, 2));
        let t = build_tree(&[(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)], 6).unwrap();
        let profile = hitting_profile(&t);
        for u in t.vertices() {
            assert_eq!(kemeny_row(&t, &profile, u), kemeny(&t));
        }
    }

    #[test]
    fn barycenters() {
        assert_eq!(barycenter(&path(4)).centers, vec![1, 2]);
        assert_eq!(barycenter(&star(6)).centers, vec![0]);
        let eq = check_barycenter_equivalences(&path(4)).unwrap();
        assert_eq!(eq.centers(), &[1, 2]);
        for (_, set) in &check_barycenter_equivalences(&path(5)).unwrap().sets {
            assert_eq!(set, &vec![2]);
        }
    }

    #[test]
    fn single_vertex() {
        let t = build_tree(&[], 1).unwrap();
        assert_eq!(t_meet(&t).value, ratio(0, 1));
        assert_eq!(kemeny(&t), ratio(0, 1));
        assert_eq!(barycenter(&t).centers, vec![0]);
    }
}
