//! Monte Carlo estimates of hitting times.
//!
//! Walk `i` of a run with seed `s` draws from ChaCha8 seeded with `s` on
//! stream `i`, so results do not depend on how walks are spread over
//! threads. Step counts are summed as integers for the same reason.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{to_f64, ExactRational};
use crate::tree::{Tree, VertexId};
use crate::walk::hitting_time;
use crate::Exec;

const CHUNK: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct WalkSample {
    pub seed: u64,
    pub walks: u64,
    /// Exact sample mean of the step counts.
    pub mean_exact: ExactRational,
    pub mean: f64,
    /// The exact hitting time being estimated.
    pub exact: ExactRational,
    /// Sample standard deviation over `sqrt(walks)`.
    pub stderr: f64,
    /// `(mean - exact) / stderr`; zero when both the error and the spread vanish.
    pub z: f64,
}

pub fn simulate_hitting(t: &Tree, u: VertexId, w: VertexId, walks: u64, seed: u64) -> WalkSample {
    simulate_hitting_with(t, u, w, walks, seed, Exec::default())
}

/// Runs `walks` simple random walks from `u` until they reach `w`.
pub fn simulate_hitting_with(t: &Tree, u: VertexId, w: VertexId, walks: u64, seed: u64, exec: Exec) -> WalkSample {
    assert!(walks >= 1, "at least one walk is needed");
    let chunks = (walks as usize).div_ceil(CHUNK);
    let partial = exec.map_indices(chunks, |c| {
        let start = (c * CHUNK) as u64;
        let end = (start + CHUNK as u64).min(walks);
        let mut sum = 0u128;
        let mut sum_sq = 0u128;
        for i in start..end {
            let steps = walk_once(t, u, w, seed, i) as u128;
            sum += steps;
            sum_sq += steps * steps;
        }
        (sum, sum_sq)
    });
    let (sum, sum_sq) = partial.into_iter().fold((0u128, 0u128), |a, b| (a.0 + b.0, a.1 + b.1));
    let k = BigInt::from(walks);
    let mean_exact = ExactRational::new(BigInt::from(sum), k.clone());
    let exact = ExactRational::from_integer(hitting_time(t, u, w));
    let stderr = if walks > 1 {
        // (Σx² - (Σx)²/k) / (k - 1), exactly, then to floating point.
        let var = (ExactRational::from_integer(BigInt::from(sum_sq))
            - ExactRational::new(BigInt::from(sum) * BigInt::from(sum), k.clone()))
            / ExactRational::from_integer(k - 1);
        (to_f64(&var) / walks as f64).sqrt()
    } else {
        0.0
    };
    let diff = to_f64(&(&mean_exact - &exact));
    let z = if stderr > 0.0 {
        diff / stderr
    } else if mean_exact == exact {
        0.0
    } else {
        diff.signum() * f64::INFINITY
    };
    WalkSample { seed, walks, mean: to_f64(&mean_exact), mean_exact, exact, stderr, z }
}

fn walk_once(t: &Tree, u: VertexId, w: VertexId, seed: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut at = u;
    let mut steps = 0;
    while at != w {
        let nbrs = t.neighbors(at);
        at = nbrs[rng.random_range(0..nbrs.len())];
        steps += 1;
    }
    steps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::path;

    #[test]
    fn forced_step() {
        let s = simulate_hitting(&path(2).unwrap(), 0, 1, 100, 3);
        assert_eq!(s.mean, 1.0);
        assert_eq!(s.stderr, 0.0);
        assert_eq!(s.z, 0.0);
    }

    #[test]
    fn strategies_agree() {
        let p = path(5).unwrap();
        let a = simulate_hitting_with(&p, 0, 4, 10_000, 11, Exec::Sequential);
        let b = simulate_hitting_with(&p, 0, 4, 10_000, 11, Exec::Parallel);
        assert_eq!(a, b);
        assert!(a.z.abs() < 4.0);
    }
}
