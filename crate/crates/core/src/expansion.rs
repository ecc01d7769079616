//! Non-expanding-set search and two-sided boundedness estimation.
//!
//! The exact mode proves its negative answers: failure to find a set is an
//! exhaustive certificate that the graph is an expander. Sweep mode scans
//! prefixes of a spectral order and never claims expansion.

use crate::graph::{Graph, VertexSet};
use crate::oracle::{
    self, exact_boundedness, is_epsilon_expander, ExpansionCheck, OracleError,
    DEFAULT_BOUNDEDNESS_LIMIT,
};
use crate::spectral;
use crate::Rational;

/// Exhaustive search stays mask-based, so it cannot go past this.
pub const HARD_NONEXPANDING_LIMIT: usize = 32;

/// A set `W` with at most half the vertices whose outside neighborhood is
/// small: `|N(W)| <= eps * |W|` always holds for returned witnesses, and
/// exact-mode witnesses satisfy the strict form, so that failure to find
/// one is exactly the statement that the graph expands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonexpandingWitness {
    pub set: VertexSet,
    pub neighborhood: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonexpandingOutcome {
    Found(NonexpandingWitness),
    /// Exhaustive absence proof: the graph is an `eps`-expander.
    Expander,
    /// Sweep exhausted without a witness; not a proof of anything.
    Unknown,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SearchMode {
    Exact { limit_n: usize },
    Sweep { iterations: usize, tolerance: f64 },
}

/// Searches for a non-expanding set in `g`.
///
/// Exact mode enumerates subsets largest-first and returns either a strict
/// witness (`|N(W)| < eps * |W|`) or [`NonexpandingOutcome::Expander`].
/// Sweep mode orders vertices by an approximate Fiedler coordinate, tests
/// all prefixes of at most half the vertices against the non-strict
/// inequality, and returns the first hit or
/// [`NonexpandingOutcome::Unknown`].
pub fn nonexpanding_set(
    g: &Graph,
    eps: Rational,
    mode: &SearchMode,
) -> Result<NonexpandingOutcome, OracleError> {
    match *mode {
        SearchMode::Exact { limit_n } => {
            let limit = limit_n.min(HARD_NONEXPANDING_LIMIT);
            if g.n() > limit {
                return Err(OracleError::SizeGuard { n: g.n(), limit });
            }
            match oracle::strict_nonexpanding_mask(g, eps)? {
                Some((mask, _)) => Ok(NonexpandingOutcome::Found(witness_from_set(
                    g,
                    VertexSet::from_iter((0..g.n()).filter(|&v| mask & (1 << v) != 0)),
                ))),
                None => Ok(NonexpandingOutcome::Expander),
            }
        }
        SearchMode::Sweep { iterations, tolerance } => {
            let (p, q) = (*eps.numer(), *eps.denom());
            if p <= 0 || q <= 0 {
                return Err(OracleError::InvalidEpsilon);
            }
            Ok(sweep_search(g, p, q, iterations, tolerance))
        }
    }
}

fn witness_from_set(g: &Graph, set: VertexSet) -> NonexpandingWitness {
    let neighborhood = outside_neighborhood(g, &set);
    NonexpandingWitness { set, neighborhood }
}

/// Neighbors of `set` outside `set`.
pub fn outside_neighborhood(g: &Graph, set: &VertexSet) -> VertexSet {
    VertexSet::from_iter(
        set.iter()
            .flat_map(|v| g.neighbors(v).iter().copied())
            .filter(|&w| !set.contains(w)),
    )
}

fn sweep_search(g: &Graph, p: i64, q: i64, iterations: usize, tolerance: f64) -> NonexpandingOutcome {
    let n = g.n();
    if n < 2 {
        return NonexpandingOutcome::Unknown;
    }
    let comps = g.components();
    if comps.len() > 1 {
        // The smallest component has no outside neighbors at all.
        let smallest = comps
            .iter()
            .min_by_key(|c| (c.len(), c.members()[0]))
            .unwrap();
        return NonexpandingOutcome::Found(witness_from_set(g, smallest.clone()));
    }
    let order = match spectral::sweep_order(g, iterations, tolerance) {
        Ok(order) => order,
        Err(_) => return NonexpandingOutcome::Unknown,
    };
    for k in 1..=n / 2 {
        let set = VertexSet::from_iter(order[..k].iter().copied());
        let nb = outside_neighborhood(g, &set);
        if q * (nb.len() as i64) <= p * (k as i64) {
            return NonexpandingOutcome::Found(NonexpandingWitness { set, neighborhood: nb });
        }
    }
    NonexpandingOutcome::Unknown
}

/// Strategy object handed to the separator and tree-decomposition builders:
/// exact search up to `exact_limit` vertices, spectral sweep beyond.
#[derive(Debug, Clone, PartialEq)]
pub struct NonexpandingFinder {
    pub exact_limit: usize,
    pub sweep_iterations: usize,
    pub sweep_tolerance: f64,
}

impl Default for NonexpandingFinder {
    fn default() -> Self {
        NonexpandingFinder {
            exact_limit: 20,
            sweep_iterations: 500,
            sweep_tolerance: 1e-9,
        }
    }
}

impl NonexpandingFinder {
    /// Exact search for every graph up to `limit` vertices (clamped to the
    /// mask width), sweep beyond.
    pub fn exact_up_to(limit: usize) -> Self {
        NonexpandingFinder {
            exact_limit: limit,
            ..NonexpandingFinder::default()
        }
    }

    pub fn find(&self, g: &Graph, eps: Rational) -> Result<NonexpandingOutcome, OracleError> {
        let exact_limit = self.exact_limit.min(HARD_NONEXPANDING_LIMIT);
        if g.n() <= exact_limit {
            nonexpanding_set(g, eps, &SearchMode::Exact { limit_n: exact_limit })
        } else {
            nonexpanding_set(
                g,
                eps,
                &SearchMode::Sweep {
                    iterations: self.sweep_iterations,
                    tolerance: self.sweep_tolerance,
                },
            )
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UpperSource {
    ExactOracle,
    BandwidthFormula,
    TrivialVertexCount,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundednessBounds {
    /// Size of the largest induced expander found; always verified.
    pub lower: usize,
    pub lower_witness: Option<VertexSet>,
    pub upper: usize,
    pub upper_source: UpperSource,
}

/// Two-sided estimate of the boundedness.
///
/// The lower bound comes from exactly verified expander subgraphs (grown
/// from high-degree seeds when the graph is too large for the oracle). The
/// upper bound is the exact value within the oracle guard, otherwise the
/// minimum of the vertex count and the `ceil(2 * bdw / eps)` formula when a
/// bandwidth upper bound is supplied. A verified expander larger than the
/// formula value disproves that formula instance, in which case the upper
/// bound falls back to the vertex count rather than report an unsound
/// number.
pub fn boundedness_bounds(
    g: &Graph,
    eps: Rational,
    bandwidth_upper: Option<usize>,
) -> Result<BoundednessBounds, OracleError> {
    let n = g.n();
    let (p, q) = (*eps.numer(), *eps.denom());
    if p <= 0 || q <= 0 {
        return Err(OracleError::InvalidEpsilon);
    }
    if n == 0 {
        return Ok(BoundednessBounds {
            lower: 0,
            lower_witness: None,
            upper: 0,
            upper_source: UpperSource::TrivialVertexCount,
        });
    }
    if n <= DEFAULT_BOUNDEDNESS_LIMIT {
        let (value, witness) = exact_boundedness(g, eps, n)?;
        return Ok(BoundednessBounds {
            lower: value,
            lower_witness: witness,
            upper: value,
            upper_source: UpperSource::ExactOracle,
        });
    }

    let mut lower = 1;
    let mut lower_witness = Some(VertexSet::singleton(0));
    for seed in high_degree_seeds(g, 3) {
        let mut radius = 0;
        loop {
            let ball = ball_around(g, seed, radius);
            if ball.len() > oracle::HARD_SUBSET_LIMIT {
                break;
            }
            if ball.len() > lower {
                let (sub, _) = g.induced_subgraph(&ball).unwrap();
                if is_epsilon_expander(&sub, eps)? == ExpansionCheck::Expander {
                    lower = ball.len();
                    lower_witness = Some(ball.clone());
                }
            }
            let grown = ball_around(g, seed, radius + 1);
            if grown.len() == ball.len() {
                break;
            }
            radius += 1;
        }
    }

    let mut upper = n;
    let mut upper_source = UpperSource::TrivialVertexCount;
    if let Some(bdw) = bandwidth_upper {
        let formula = ((2 * bdw as u128 * q as u128).div_ceil(p as u128)) as usize;
        if formula < upper && formula >= lower {
            upper = formula;
            upper_source = UpperSource::BandwidthFormula;
        }
    }
    Ok(BoundednessBounds {
        lower,
        lower_witness,
        upper,
        upper_source,
    })
}

fn high_degree_seeds(g: &Graph, count: usize) -> Vec<usize> {
    let mut vertices: Vec<usize> = (0..g.n()).collect();
    vertices.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    vertices.truncate(count);
    vertices
}

fn ball_around(g: &Graph, center: usize, radius: usize) -> VertexSet {
    let dist = g.multi_source_distances(&VertexSet::singleton(center));
    VertexSet::from_iter(
        (0..g.n()).filter(|&v| dist[v].is_some_and(|d| d <= radius)),
    )
}
