//! Generators for paths, stars, levers, brooms and double brooms, and the
//! ledger of their closed-form walk statistics.
//!
//! Generated trees share one labeling: the geodesic `v0..vd` gets ids
//! `0..=d` and the remaining vertices get ids `d+1..n` grouped by the
//! geodesic vertex they hang from.

mod ledger;

use std::fmt;

pub use ledger::{closed_form, delta_inequalities_hold, FormulaId, LedgerError};

use crate::tree::{Tree, VertexId};

/// Which family, with the parameters beyond `(n, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Path,
    Star,
    /// All extra vertices are pendants at `v_k`.
    Lever {
        k: usize,
    },
    /// All extra vertices are bristles at `v_1`; `v_d` is the handle tip.
    Broom,
    /// `left` leaves at `v_1` and `right` leaves at `v_{d-1}`, counting `v_0`
    /// and `v_d` among them.
    DoubleBroom {
        left: usize,
        right: usize,
    },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path => f.write_str("path"),
            Family::Star => f.write_str("star"),
            Family::Lever { k } => write!(f, "lever(k={k})"),
            Family::Broom => f.write_str("broom"),
            Family::DoubleBroom { left, right } => write!(f, "double-broom(left={left},right={right})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    pub d: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("invalid {family} parameters (n = {n}, d = {d}): {reason}")]
    InvalidFamilyParameters { family: &'static str, n: usize, d: usize, reason: String },
}

fn invalid(family: &'static str, n: usize, d: usize, reason: impl Into<String>) -> FamilyError {
    FamilyError::InvalidFamilyParameters { family, n, d, reason: reason.into() }
}

impl FamilySpec {
    pub fn path(n: usize) -> Self {
        FamilySpec { family: Family::Path, n, d: n.saturating_sub(1) }
    }

    pub fn star(n: usize) -> Self {
        FamilySpec { family: Family::Star, n, d: 2 }
    }

    pub fn lever(n: usize, d: usize, k: usize) -> Self {
        FamilySpec { family: Family::Lever { k }, n, d }
    }

    pub fn balanced_lever(n: usize, d: usize) -> Self {
        FamilySpec::lever(n, d, d / 2)
    }

    pub fn broom(n: usize, d: usize) -> Self {
        FamilySpec { family: Family::Broom, n, d }
    }

    pub fn double_broom(n: usize, d: usize, left: usize, right: usize) -> Self {
        FamilySpec { family: Family::DoubleBroom { left, right }, n, d }
    }

    pub fn balanced_double_broom(n: usize, d: usize) -> Self {
        let extra = n.saturating_sub(d + 1);
        FamilySpec::double_broom(n, d, extra / 2 + 1, extra.div_ceil(2) + 1)
    }

    /// Checks the parameter ranges of the family.
    pub fn validate(&self) -> Result<(), FamilyError> {
        let FamilySpec { n, d, .. } = *self;
        match self.family {
            Family::Path => {
                if n < 1 || d + 1 != n {
                    return Err(invalid("path", n, d, "a path needs n >= 1 and d = n - 1"));
                }
            }
            Family::Star => {
                if n < 3 || d != 2 {
                    return Err(invalid("star", n, d, "a star needs n >= 3 and d = 2"));
                }
            }
            Family::Lever { k } => {
                if d < 2 || d >= n {
                    return Err(invalid("lever", n, d, "needs 2 <= d <= n - 1"));
                }
                if k < 1 || k > d - 1 {
                    return Err(invalid("lever", n, d, format!("fulcrum k = {k} must satisfy 1 <= k <= d - 1")));
                }
            }
            Family::Broom => {
                if d < 2 || d >= n {
                    return Err(invalid("broom", n, d, "needs 2 <= d < n"));
                }
            }
            Family::DoubleBroom { left, right } => {
                if d < 2 || d >= n {
                    return Err(invalid("double broom", n, d, "needs 2 <= d <= n - 1"));
                }
                if left < 1 || right < 1 || left + right != n - d + 1 {
                    return Err(invalid(
                        "double broom",
                        n,
                        d,
                        format!("left = {left} and right = {right} must be >= 1 and sum to n - d + 1 = {}", n - d + 1),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Ids of the geodesic `v0..vd` in the generated tree.
    pub fn geodesic(&self) -> Vec<VertexId> {
        (0..=self.d).collect()
    }
}

/// Builds the labeled realization of `spec`.
pub fn generate(spec: &FamilySpec) -> Result<Tree, FamilyError> {
    spec.validate()?;
    let FamilySpec { n, d, .. } = *spec;
    let mut edges: Vec<(VertexId, VertexId)> = (1..=d).map(|i| (i - 1, i)).collect();
    let mut next = d + 1;
    let mut hang = |at: VertexId, count: usize, edges: &mut Vec<_>| {
        for _ in 0..count {
            edges.push((at, next));
            next += 1;
        }
    };
    match spec.family {
        Family::Path => {}
        Family::Star => hang(1, n - 3, &mut edges),
        Family::Lever { k } => hang(k, n - d - 1, &mut edges),
        Family::Broom => hang(1, n - d - 1, &mut edges),
        Family::DoubleBroom { left, right } => {
            hang(1, left - 1, &mut edges);
            hang(d - 1, right - 1, &mut edges);
        }
    }
    Ok(Tree::from_edges_unchecked(n, &edges))
}

pub fn path(n: usize) -> Result<Tree, FamilyError> {
    generate(&FamilySpec::path(n))
}

pub fn star(n: usize) -> Result<Tree, FamilyError> {
    generate(&FamilySpec::star(n))
}

pub fn broom(n: usize, d: usize) -> Result<Tree, FamilyError> {
    generate(&FamilySpec::broom(n, d))
}

/// The lever with fulcrum `v_{⌊d/2⌋}`.
pub fn balanced_lever(n: usize, d: usize) -> Result<Tree, FamilyError> {
    generate(&FamilySpec::balanced_lever(n, d))
}

/// The double broom with `⌊(n-d-1)/2⌋ + 1` leaves at `v_1` and
/// `⌈(n-d-1)/2⌉ + 1` at `v_{d-1}`.
pub fn balanced_double_broom(n: usize, d: usize) -> Result<Tree, FamilyError> {
    generate(&FamilySpec::balanced_double_broom(n, d))
}

/// `B_{n,r}` rooted at its handle tip, so the root has eccentricity `r`.
/// For `r = 1` this is the star rooted at its center.
pub fn rooted_broom(n: usize, r: usize) -> Result<(Tree, VertexId), FamilyError> {
    match r {
        0 if n == 1 => Ok((Tree::from_edges_unchecked(1, &[]), 0)),
        1 if n >= 2 => {
            let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
            Ok((Tree::from_edges_unchecked(n, &edges), 0))
        }
        _ => Ok((broom(n, r)?, r)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{diameter, is_isomorphic};

    #[test]
    fn figure_one_trees() {
        let lever = balanced_lever(11, 5).unwrap();
        assert_eq!(lever.degree(2), 7);
        let b = broom(11, 5).unwrap();
        assert_eq!(b.degree(1), 7);
        assert_eq!(b.bfs_distances(10)[5], 5);
        let db = generate(&FamilySpec::double_broom(11, 5, 3, 4)).unwrap();
        assert_eq!(db.degree(1), 4);
        assert_eq!(db.degree(4), 5);
        assert_eq!(FamilySpec::balanced_double_broom(11, 5), FamilySpec::double_broom(11, 5, 3, 4));
    }

    #[test]
    fn order_and_diameter() {
        for n in 3..14 {
            for d in 2..n {
                for spec in
                    [FamilySpec::balanced_lever(n, d), FamilySpec::broom(n, d), FamilySpec::balanced_double_broom(n, d)]
                {
                    let t = generate(&spec).unwrap();
                    assert_eq!(t.order(), n, "{spec:?}");
                    assert_eq!(diameter(&t), d, "{spec:?}");
                }
            }
        }
    }

    #[test]
    fn degenerate_members() {
        for n in 3..10 {
            let p = path(n).unwrap();
            let s = star(n).unwrap();
            assert!(is_isomorphic(&balanced_double_broom(n, n - 1).unwrap(), &p));
            assert!(is_isomorphic(&balanced_lever(n, n - 1).unwrap(), &p));
            assert!(is_isomorphic(&balanced_lever(n, 2).unwrap(), &s));
            assert!(is_isomorphic(&balanced_double_broom(n, 2).unwrap(), &s));
        }
        assert!(is_isomorphic(&balanced_double_broom(9, 7).unwrap(), &broom(9, 7).unwrap()));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(broom(5, 5).is_err());
        assert!(generate(&FamilySpec::lever(8, 4, 0)).is_err());
        assert!(generate(&FamilySpec::lever(8, 4, 4)).is_err());
        assert!(generate(&FamilySpec::double_broom(11, 5, 3, 3)).is_err());
        assert!(star(2).is_err());
    }

    #[test]
    fn rooted_brooms() {
        let (t, z) = rooted_broom(4, 2).unwrap();
        assert_eq!(t.eccentricity(z), 2);
        let (s, c) = rooted_broom(5, 1).unwrap();
        assert_eq!(s.degree(c), 4);
    }
}
