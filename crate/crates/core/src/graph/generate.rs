//! Deterministic test-instance generators. Every family is a pure function
//! of its parameters and the seed, so runs are reproducible byte-for-byte.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("invalid parameter for {family}: {reason}")]
    InvalidParameter { family: &'static str, reason: String },
    #[error("degree sequence infeasible: n = {n} and degree = {degree} give an odd stub count")]
    OddDegreeSum { n: usize, degree: usize },
}

fn invalid(family: &'static str, reason: impl Into<String>) -> GenerateError {
    GenerateError::InvalidParameter {
        family,
        reason: reason.into(),
    }
}

/// Graph families available to tests and the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    /// Star with `leaves` leaves, so `n = leaves + 1`; vertex 0 is the hub.
    Star { leaves: usize },
    /// `side` x `side` grid, row-major ids.
    Grid { side: usize },
    /// Complete binary tree with `depth` edge levels, so `n = 2^(depth+1) - 1`.
    CompleteBinaryTree { depth: usize },
    /// Stub-pairing model: every vertex gets `max_degree` stubs, stubs are
    /// shuffled and paired, and illegal pairs (loops, duplicates) are
    /// dropped, so the bound holds but degrees may come out lower.
    RandomBoundedDegree { n: usize, max_degree: usize },
    /// Same pairing model across a balanced bipartition.
    RandomBipartiteBoundedDegree { n: usize, max_degree: usize },
    /// `side` x `side` grid plus one random diagonal in a random subset of
    /// faces; planar by construction with maximum degree at most 8.
    RandomNearPlanar { side: usize },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Path { .. } => "path",
            Family::Cycle { .. } => "cycle",
            Family::Complete { .. } => "complete",
            Family::Star { .. } => "star",
            Family::Grid { .. } => "grid",
            Family::CompleteBinaryTree { .. } => "complete_binary_tree",
            Family::RandomBoundedDegree { .. } => "random_bounded_degree",
            Family::RandomBipartiteBoundedDegree { .. } => "random_bipartite_bounded_degree",
            Family::RandomNearPlanar { .. } => "random_near_planar",
        }
    }
}

/// Generates a member of the family. Deterministic for a fixed seed; the
/// seed is ignored by the non-random families.
pub fn generate(family: &Family, seed: u64) -> Result<Graph, GenerateError> {
    match *family {
        Family::Path { n } => {
            if n == 0 {
                return Err(invalid("path", "n must be at least 1"));
            }
            let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
            Ok(Graph::from_edges(n, &edges).unwrap())
        }
        Family::Cycle { n } => {
            if n < 3 {
                return Err(invalid("cycle", "n must be at least 3"));
            }
            let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
            edges.push((n - 1, 0));
            Ok(Graph::from_edges(n, &edges).unwrap())
        }
        Family::Complete { n } => {
            if n == 0 {
                return Err(invalid("complete", "n must be at least 1"));
            }
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    edges.push((u, v));
                }
            }
            Ok(Graph::from_edges(n, &edges).unwrap())
        }
        Family::Star { leaves } => {
            let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
            Ok(Graph::from_edges(leaves + 1, &edges).unwrap())
        }
        Family::Grid { side } => {
            if side == 0 {
                return Err(invalid("grid", "side must be at least 1"));
            }
            Ok(Graph::from_edges(side * side, &grid_edges(side)).unwrap())
        }
        Family::CompleteBinaryTree { depth } => {
            if depth > 24 {
                return Err(invalid("complete_binary_tree", "depth must be at most 24"));
            }
            let n = (1usize << (depth + 1)) - 1;
            let edges: Vec<_> = (1..n).map(|v| ((v - 1) / 2, v)).collect();
            Ok(Graph::from_edges(n, &edges).unwrap())
        }
        Family::RandomBoundedDegree { n, max_degree } => {
            if n == 0 || max_degree == 0 || max_degree >= n {
                return Err(invalid(
                    "random_bounded_degree",
                    "need n >= 1 and 1 <= max_degree < n",
                ));
            }
            if (n * max_degree) % 2 != 0 {
                return Err(GenerateError::OddDegreeSum { n, degree: max_degree });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, max_degree)).collect();
            stubs.shuffle(&mut rng);
            let mut edges = Vec::new();
            let mut seen = std::collections::HashSet::new();
            for pair in stubs.chunks_exact(2) {
                let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
                if u != v && seen.insert((u, v)) {
                    edges.push((u, v));
                }
            }
            Ok(Graph::from_edges(n, &edges).unwrap())
        }
        Family::RandomBipartiteBoundedDegree { n, max_degree } => {
            if n < 2 || max_degree == 0 {
                return Err(invalid(
                    "random_bipartite_bounded_degree",
                    "need n >= 2 and max_degree >= 1",
                ));
            }
            let left = n.div_ceil(2);
            let right = n - left;
            if max_degree > right {
                return Err(invalid(
                    "random_bipartite_bounded_degree",
                    "max_degree exceeds the smaller side",
                ));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut left_stubs: Vec<usize> =
                (0..left).flat_map(|v| std::iter::repeat_n(v, max_degree)).collect();
            let mut right_stubs: Vec<usize> = (left..n)
                .flat_map(|v| std::iter::repeat_n(v, max_degree))
                .collect();
            left_stubs.shuffle(&mut rng);
            right_stubs.shuffle(&mut rng);
            let mut edges = Vec::new();
            let mut seen = std::collections::HashSet::new();
            for (&u, &v) in left_stubs.iter().zip(right_stubs.iter()) {
                if seen.insert((u, v)) {
                    edges.push((u, v));
                }
            }
            Ok(Graph::from_edges(n, &edges).unwrap())
        }
        Family::RandomNearPlanar { side } => {
            if side == 0 {
                return Err(invalid("random_near_planar", "side must be at least 1"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = grid_edges(side);
            let at = |r: usize, c: usize| r * side + c;
            for r in 0..side.saturating_sub(1) {
                for c in 0..side.saturating_sub(1) {
                    if rng.random_bool(0.5) {
                        if rng.random_bool(0.5) {
                            edges.push((at(r, c), at(r + 1, c + 1)));
                        } else {
                            edges.push((at(r, c + 1), at(r + 1, c)));
                        }
                    }
                }
            }
            Ok(Graph::from_edges(side * side, &edges).unwrap())
        }
    }
}

fn grid_edges(side: usize) -> Vec<(usize, usize)> {
    let at = |r: usize, c: usize| r * side + c;
    let mut edges = Vec::new();
    for r in 0..side {
        for c in 0..side {
            if c + 1 < side {
                edges.push((at(r, c), at(r, c + 1)));
            }
            if r + 1 < side {
                edges.push((at(r, c), at(r + 1, c)));
            }
        }
    }
    edges
}
