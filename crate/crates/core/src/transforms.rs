//! Constructive rewrites that drive a tree towards the extremal families:
//! single leaf moves, broomification of a rooted subtree, and the two
//! three-phase pipelines towards the balanced lever (minimizing `J_min`)
//! and towards a double broom (maximizing `J_min`).
//!
//! Every pipeline step is recorded in a [`TransformTrace`] together with the
//! tracked joining time, so monotonicity can be checked after the fact.

use std::fmt;
use std::fmt::Write as _;

use crate::exact::{int_json, ExactInt};
use crate::families::rooted_broom;
use crate::tree::{
    canonical_form, diameter_and_geodesic, rooted_canonical_form, v_split, CanonicalForm, Tree, VertexId,
};
use crate::walk::{barycenter, component_sizes, hitting_profile, j_min, joining_time};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("vertex {vertex} is out of range for a tree of order {n}")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("vertex {z} is not a leaf")]
    NotALeaf { z: VertexId },
    #[error("vertex {y} is not the neighbor of leaf {z}")]
    WrongNeighbor { z: VertexId, y: VertexId },
    #[error("leaf {z} cannot be attached to itself")]
    SelfAttach { z: VertexId },
    #[error("the pipeline needs 3 <= d <= n - 2, got n = {n}, d = {d}")]
    DiameterOutOfRange { n: usize, d: usize },
}

/// `G* = G - (y, z) + (x, z)` for a leaf `z` with neighbor `y`.
pub fn move_leaf(t: &Tree, z: VertexId, y: VertexId, x: VertexId) -> Result<Tree, TransformError> {
    let n = t.order();
    for vertex in [z, y, x] {
        if vertex >= n {
            return Err(TransformError::VertexOutOfRange { vertex, n });
        }
    }
    if !t.is_leaf(z) {
        return Err(TransformError::NotALeaf { z });
    }
    if t.neighbors(z)[0] != y {
        return Err(TransformError::WrongNeighbor { z, y });
    }
    if x == z {
        return Err(TransformError::SelfAttach { z });
    }
    if x == y {
        return Ok(t.clone());
    }
    let edges: Vec<_> = t.edges().map(|(a, b)| if (a, b) == (z.min(y), z.max(y)) { (x, z) } else { (a, b) }).collect();
    Ok(Tree::from_edges_unchecked(n, &edges))
}

/// The two guarantees of a leaf move towards `x`, evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafMoveCheck {
    /// `H*(v, x) <= H(v, x)` for every `v`.
    pub hitting_dominated: bool,
    pub joining_before: ExactInt,
    pub joining_after: ExactInt,
}

impl LeafMoveCheck {
    pub fn joining_decreased(&self) -> bool {
        self.joining_after < self.joining_before
    }

    /// Both guarantees hold; the strict decrease is waived when `x = y`.
    pub fn holds(&self, identity: bool) -> bool {
        self.hitting_dominated && (identity || self.joining_decreased())
    }
}

/// [`move_leaf`] plus an exact check of both guarantees at `x`.
pub fn move_leaf_checked(
    t: &Tree,
    z: VertexId,
    y: VertexId,
    x: VertexId,
) -> Result<(Tree, LeafMoveCheck), TransformError> {
    let moved = move_leaf(t, z, y, x)?;
    let before = hitting_profile(t);
    let after = hitting_profile(&moved);
    let check = LeafMoveCheck {
        hitting_dominated: t.vertices().all(|v| after.raw(v, x) <= before.raw(v, x)),
        joining_before: joining_time(t, x),
        joining_after: joining_time(&moved, x),
    };
    Ok((moved, check))
}

/// Replaces `t` by `B_{n,r}` rooted at its handle tip, where `r` is the
/// eccentricity of `z`. Returns the broom and its root.
pub fn broomify(t: &Tree, z: VertexId) -> (Tree, VertexId) {
    rooted_broom(t.order(), t.eccentricity(z)).expect("eccentricity is a valid broom diameter")
}

/// Whether `(t, z)` is `B_{n,r}` rooted at its handle tip.
pub fn is_rooted_broom(t: &Tree, z: VertexId) -> bool {
    let (broom, root) = broomify(t, z);
    rooted_canonical_form(t, z) == rooted_canonical_form(&broom, root)
}

/// Whether every non-leaf vertex lies on one path and every leaf hangs
/// from an end of that path. Paths and stars qualify.
pub fn is_double_broom(t: &Tree) -> bool {
    let internal: Vec<VertexId> = t.vertices().filter(|&v| t.degree(v) >= 2).collect();
    internal.iter().all(|&v| {
        let inner = t.neighbors(v).iter().filter(|&&w| t.degree(w) >= 2).count();
        // Middle vertices of the internal path carry no leaves.
        inner <= 1 || (inner == 2 && t.degree(v) == 2)
    })
}

/// Which way the tracked quantity moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Decreasing,
    Increasing,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Decreasing => "decreasing",
            Direction::Increasing => "increasing",
        })
    }
}

#[derive(Debug, Clone)]
pub struct TraceStep {
    pub phase: u8,
    pub description: String,
    /// `J_min` of the tree after this step.
    pub quantity: ExactInt,
    pub canonical: CanonicalForm,
    /// Full tree, kept for the first `snapshot_depth` steps only.
    pub snapshot: Option<Tree>,
    pub diameter: usize,
    /// Largest component of `t - c` for the tracked barycenter `c`.
    pub max_component: usize,
    /// Whether the quantity moved strictly in the trace direction.
    pub strict: bool,
    /// Exact check of the leaf-move guarantees, for single leaf moves.
    pub leaf_move: Option<LeafMoveCheck>,
}

#[derive(Debug, Clone)]
pub struct TransformTrace {
    pub direction: Direction,
    pub initial_quantity: ExactInt,
    pub initial_canonical: CanonicalForm,
    pub steps: Vec<TraceStep>,
}

impl TransformTrace {
    fn new(direction: Direction, t: &Tree) -> Self {
        TransformTrace {
            direction,
            initial_quantity: j_min(t).value,
            initial_canonical: canonical_form(t),
            steps: Vec::new(),
        }
    }

    pub fn final_quantity(&self) -> &ExactInt {
        self.steps.last().map_or(&self.initial_quantity, |s| &s.quantity)
    }

    /// No step moved against the direction.
    pub fn is_monotone(&self) -> bool {
        let mut prev = &self.initial_quantity;
        for step in &self.steps {
            let ok = match self.direction {
                Direction::Decreasing => step.quantity <= *prev,
                Direction::Increasing => step.quantity >= *prev,
            };
            if !ok {
                return false;
            }
            prev = &step.quantity;
        }
        true
    }

    /// Every step moved strictly.
    pub fn is_strictly_monotone(&self) -> bool {
        self.is_monotone() && self.steps.iter().all(|s| s.strict)
    }

    /// One JSON object per step: phase, description, quantity, canonical
    /// form, diameter, largest barycenter component and strictness.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for (i, step) in self.steps.iter().enumerate() {
            let line = serde_json::json!({
                "step": i + 1,
                "phase": step.phase,
                "description": step.description,
                "quantity": int_json(&step.quantity),
                "canonical": step.canonical.to_string(),
                "diameter": step.diameter,
                "max_component": step.max_component,
                "strict": step.strict,
            });
            writeln!(out, "{line}").unwrap();
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    /// Steps beyond this index keep only the canonical form.
    pub snapshot_depth: usize,
    /// Check the leaf-move guarantees on every single leaf move.
    pub check_leaf_moves: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig { snapshot_depth: 64, check_leaf_moves: true }
    }
}

struct Recorder<'a> {
    config: &'a PipelineConfig,
    trace: TransformTrace,
}

impl Recorder<'_> {
    fn record(&mut self, t: &Tree, c: VertexId, phase: u8, description: String, leaf_move: Option<LeafMoveCheck>) {
        let quantity = j_min(t).value;
        let prev = self.trace.final_quantity();
        let strict = match self.trace.direction {
            Direction::Decreasing => quantity < *prev,
            Direction::Increasing => quantity > *prev,
        };
        let snapshot = (self.trace.steps.len() < self.config.snapshot_depth).then(|| t.clone());
        let max_component = component_sizes(t, c).into_iter().max().unwrap_or(0);
        self.trace.steps.push(TraceStep {
            phase,
            description,
            quantity,
            canonical: canonical_form(t),
            snapshot,
            diameter: diameter_and_geodesic(t).0,
            max_component,
            strict,
            leaf_move,
        });
    }
}

pub fn minimize_pipeline(t: &Tree) -> Result<(Tree, TransformTrace), TransformError> {
    minimize_pipeline_with(t, &PipelineConfig::default())
}

/// Rewrites `t` into the balanced lever of the same order and diameter.
///
/// Phase One moves every leaf other than the geodesic ends onto the
/// barycenter `c`. If `c` is then off the geodesic, Phase Two turns every
/// off-geodesic vertex into a pendant at the geodesic vertex of degree 3.
/// Phase Three moves the pendants of a lever to a central geodesic vertex.
pub fn minimize_pipeline_with(t: &Tree, config: &PipelineConfig) -> Result<(Tree, TransformTrace), TransformError> {
    let n = t.order();
    let (d, geodesic) = diameter_and_geodesic(t);
    if d < 3 || d + 2 > n {
        return Err(TransformError::DiameterOutOfRange { n, d });
    }
    let mut rec = Recorder { config, trace: TransformTrace::new(Direction::Decreasing, t) };
    let mut on_path = vec![false; n];
    for &v in &geodesic {
        on_path[v] = true;
    }
    let (v0, vd) = (geodesic[0], geodesic[d]);
    let mut cur = t.clone();
    let centers = barycenter(&cur).centers;
    let mut c = centers[0];

    let fulcrum = lever_fulcrum(&cur, &geodesic, &on_path).filter(|k| centers.contains(&geodesic[*k]));
    if let Some(k) = fulcrum {
        c = geodesic[k];
    } else {
        // Phase One.
        while let Some(z) = cur.vertices().find(|&z| cur.is_leaf(z) && z != v0 && z != vd && !cur.has_edge(z, c)) {
            let y = cur.neighbors(z)[0];
            let (next, check) = if config.check_leaf_moves {
                let (next, check) = move_leaf_checked(&cur, z, y, c)?;
                (next, Some(check))
            } else {
                (move_leaf(&cur, z, y, c)?, None)
            };
            cur = next;
            rec.record(&cur, c, 1, format!("move leaf {z} from {y} to barycenter {c}"), check);
        }
        if lever_fulcrum(&cur, &geodesic, &on_path).is_none() {
            // Phase Two: c is off the geodesic, which meets the rest at a
            // single vertex of degree 3.
            let vk = *geodesic[1..d]
                .iter()
                .find(|&&v| cur.degree(v) == 3)
                .expect("the off-geodesic part attaches at one vertex");
            let mut edges: Vec<_> = geodesic.windows(2).map(|w| (w[0], w[1])).collect();
            edges.extend((0..n).filter(|&v| !on_path[v]).map(|v| (vk, v)));
            cur = Tree::from_edges_unchecked(n, &edges);
            c = vk;
            rec.record(&cur, c, 2, format!("make every off-geodesic vertex a pendant at {vk}"), None);
        } else {
            c = geodesic[lever_fulcrum(&cur, &geodesic, &on_path).unwrap()];
        }
    }

    // Phase Three.
    let k = geodesic.iter().position(|&v| v == c).expect("the fulcrum lies on the geodesic");
    let target = if k < d / 2 {
        Some(d / 2)
    } else if k > d.div_ceil(2) {
        Some(d.div_ceil(2))
    } else {
        None
    };
    if let Some(j) = target {
        let vj = geodesic[j];
        let mut edges: Vec<_> = geodesic.windows(2).map(|w| (w[0], w[1])).collect();
        edges.extend((0..n).filter(|&v| !on_path[v]).map(|v| (vj, v)));
        cur = Tree::from_edges_unchecked(n, &edges);
        c = vj;
        rec.record(&cur, c, 3, format!("move the fulcrum from index {k} to index {j}"), None);
    }
    Ok((cur, rec.trace))
}

/// Index on the geodesic of the vertex carrying every off-geodesic vertex
/// as a pendant, if the tree is a lever along this geodesic.
fn lever_fulcrum(t: &Tree, geodesic: &[VertexId], on_path: &[bool]) -> Option<usize> {
    let mut fulcrum = None;
    for v in t.vertices().filter(|&v| !on_path[v]) {
        if !t.is_leaf(v) {
            return None;
        }
        let y = t.neighbors(v)[0];
        if !on_path[y] || fulcrum.is_some_and(|f| f != y) {
            return None;
        }
        fulcrum = Some(y);
    }
    let f = fulcrum?;
    geodesic.iter().position(|&v| v == f)
}

/// One part of the barycenter split, kept as the broom `B_{n,r}` rooted at
/// its handle tip (the barycenter).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct BroomPart {
    n: usize,
    r: usize,
}

impl BroomPart {
    fn delta_plus(self) -> i128 {
        let (n, r) = (self.n as i128, self.r as i128);
        4 * (r - 1) * (2 * n - r) + 1
    }
}

/// Glues the brooms at a common tip, vertex 0.
fn compose(parts: &[BroomPart]) -> Tree {
    let mut edges = Vec::new();
    let mut next = 1;
    for part in parts {
        let mut end = 0;
        for _ in 1..part.r {
            edges.push((end, next));
            end = next;
            next += 1;
        }
        for _ in 0..part.n - part.r {
            edges.push((end, next));
            next += 1;
        }
    }
    Tree::from_edges_unchecked(next, &edges)
}

pub fn maximize_pipeline(t: &Tree) -> (Tree, TransformTrace) {
    maximize_pipeline_with(t, &PipelineConfig::default())
}

/// Rewrites `t` into a double broom of diameter at most `d` with a larger
/// `J_min`, keeping the barycenter `c` fixed.
///
/// Phase One replaces every part of the `c`-split by the broom of the same
/// order and depth with `c` as handle tip. With more than two parts, the
/// parts are ordered by `δ⁺` and leaves are moved from the third part
/// onwards: in Phase Two to lengthen the handles of the first two parts
/// until their depths add up to `d`, in Phase Three as bristles. The
/// receiving part is the first unless that would give a component of
/// `t - c` more than `n / 2` vertices.
pub fn maximize_pipeline_with(t: &Tree, config: &PipelineConfig) -> (Tree, TransformTrace) {
    let mut rec = Recorder { config, trace: TransformTrace::new(Direction::Increasing, t) };
    if is_double_broom(t) {
        return (t.clone(), rec.trace);
    }
    let n = t.order();
    let d = diameter_and_geodesic(t).0;
    let c = barycenter(t).centers[0];
    let split = v_split(t, c).expect("a barycenter of a tree that is not a double broom has degree >= 2");

    // Phase One.
    let mut cur = t.clone();
    let mut parts = Vec::with_capacity(split.parts.len());
    for (i, part) in split.parts.iter().enumerate() {
        let r = part.tree.eccentricity(part.center);
        parts.push(BroomPart { n: part.order(), r });
        if !is_rooted_broom(&part.tree, part.center) {
            cur = splice(&split, &parts, i);
            let description = format!("broomify the part through {} into B({}, {r})", part.to_parent[1], part.order());
            rec.record(&cur, 0, 1, description, None);
        }
    }
    if parts.len() == 2 {
        return (cur, rec.trace);
    }

    // Phase Two and Phase Three.
    parts.sort_by_key(|p| std::cmp::Reverse(p.delta_plus()));
    while parts.len() > 2 {
        let lengthen = parts[0].r + parts[1].r < d;
        let target = if parts[0].n <= n / 2 { 0 } else { 1 };
        if !lengthen && parts[target].r == 1 {
            // Only single edges remain besides the first part: already a double broom.
            break;
        }
        let source = &mut parts[2];
        let removed_bristle = source.n - source.r >= 2;
        if removed_bristle {
            source.n -= 1;
        } else {
            source.n -= 1;
            source.r -= 1;
        }
        if source.n == 1 {
            parts.remove(2);
        }
        let description = if lengthen {
            parts[target].n += 1;
            parts[target].r += 1;
            format!("move a leaf from the third part to lengthen the handle of part {}", target + 1)
        } else {
            parts[target].n += 1;
            format!("move a leaf from the third part to a bristle of part {}", target + 1)
        };
        cur = compose(&parts);
        rec.record(&cur, 0, if lengthen { 2 } else { 3 }, description, None);
    }
    (cur, rec.trace)
}

/// The tree after replacing parts `0..=upto` of the split by their brooms,
/// relabeled with the barycenter at 0.
fn splice(split: &crate::tree::SplitResult, brooms: &[BroomPart], upto: usize) -> Tree {
    let mut edges = Vec::new();
    let mut next = 1;
    for (i, part) in split.parts.iter().enumerate() {
        if i <= upto {
            let b = compose(&[brooms[i]]);
            let offset = next - 1;
            for (u, v) in b.edges() {
                let map = |x: VertexId| if x == 0 { 0 } else { x + offset };
                edges.push((map(u), map(v)));
            }
            next += b.order() - 1;
        } else {
            let offset = next - 1;
            for (u, v) in part.tree.edges() {
                let map = |x: VertexId| if x == part.center { 0 } else { x + offset };
                edges.push((map(u), map(v)));
            }
            next += part.order() - 1;
        }
    }
    Tree::from_edges_unchecked(next, &edges)
}
