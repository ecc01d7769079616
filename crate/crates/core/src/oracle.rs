//! Brute-force ground truth for the four parameters on small graphs:
//! bandwidth by branch-and-bound, treewidth by dynamic programming over
//! vertex subsets, separation number and boundedness by subset enumeration.
//! Size guards are explicit parameters; exceeding one is an error, never a
//! silent fallback.

use thiserror::Error;

use crate::graph::{bandwidth_of_labelling, degree_lower_bound, Graph, Labelling, VertexSet};
use crate::mask::{
    adjacency_masks, components_of_mask, mask_to_set, neighborhood_mask, next_same_size, side_cap,
};
use crate::treewidth::{validate_tree_decomposition, TreeDecomposition};
use crate::Rational;

pub const DEFAULT_BANDWIDTH_LIMIT: usize = 12;
pub const DEFAULT_TREEWIDTH_LIMIT: usize = 12;
pub const DEFAULT_SEPARATION_LIMIT: usize = 10;
pub const DEFAULT_BOUNDEDNESS_LIMIT: usize = 14;

/// Enumeration-based routines become infeasible beyond this many vertices,
/// independent of what the caller asks for.
pub const HARD_SUBSET_LIMIT: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the size guard {limit}")]
    SizeGuard { n: usize, limit: usize },
    #[error("epsilon must be a positive rational")]
    InvalidEpsilon,
}

fn guard(n: usize, limit: usize) -> Result<(), OracleError> {
    let limit = limit.min(HARD_SUBSET_LIMIT);
    if n > limit {
        return Err(OracleError::SizeGuard { n, limit });
    }
    Ok(())
}

fn check_eps(eps: Rational) -> Result<(i64, i64), OracleError> {
    let (p, q) = (*eps.numer(), *eps.denom());
    if p <= 0 || q <= 0 {
        return Err(OracleError::InvalidEpsilon);
    }
    Ok((p, q))
}

/// Minimum bandwidth over all labellings, with a witness achieving it.
///
/// Branch-and-bound over position prefixes. Two prunes: the running
/// maximum stretch, and the lookahead bound `next_position +
/// unplaced_neighbors - 1 - position(w)` for every placed vertex `w` that
/// still has unplaced neighbors. Search stops early once the best value
/// meets the degree lower bound.
pub fn exact_bandwidth(g: &Graph, limit_n: usize) -> Result<(usize, Labelling), OracleError> {
    let n = g.n();
    if n > limit_n {
        return Err(OracleError::SizeGuard { n, limit: limit_n });
    }
    if n == 0 {
        return Ok((0, Labelling::identity(0)));
    }
    let identity = Labelling::identity(n);
    let mut best = bandwidth_of_labelling(g, &identity).unwrap();
    let mut best_order: Vec<usize> = (0..n).collect();
    let mut lower = degree_lower_bound(g);
    if let Some(diam) = g.diameter() {
        if diam > 0 {
            lower = lower.max((n - 1).div_ceil(diam));
        }
    }

    struct Search<'a> {
        g: &'a Graph,
        pos: Vec<usize>,
        order: Vec<usize>,
        unplaced_deg: Vec<usize>,
        best: usize,
        best_order: Vec<usize>,
        lower: usize,
    }

    impl Search<'_> {
        fn run(&mut self, depth: usize, current: usize) {
            if self.best <= self.lower {
                return;
            }
            if depth == self.g.n() {
                if current < self.best {
                    self.best = current;
                    self.best_order = self.order[..depth].to_vec();
                }
                return;
            }
            // Lookahead: each placed vertex with k unplaced neighbors will
            // stretch to at least depth + k - 1 - its position.
            for &w in &self.order[..depth] {
                let k = self.unplaced_deg[w];
                if k > 0 && depth + k - 1 - self.pos[w] >= self.best {
                    return;
                }
            }
            for v in 0..self.g.n() {
                if self.pos[v] != usize::MAX {
                    continue;
                }
                let mut cur = current;
                for &u in self.g.neighbors(v) {
                    if self.pos[u] != usize::MAX {
                        cur = cur.max(depth - self.pos[u]);
                    }
                }
                if cur >= self.best {
                    continue;
                }
                self.pos[v] = depth;
                self.order[depth] = v;
                for &u in self.g.neighbors(v) {
                    self.unplaced_deg[u] -= 1;
                }
                self.run(depth + 1, cur);
                for &u in self.g.neighbors(v) {
                    self.unplaced_deg[u] += 1;
                }
                self.pos[v] = usize::MAX;
            }
        }
    }

    if best > lower {
        let mut search = Search {
            g,
            pos: vec![usize::MAX; n],
            order: vec![0; n],
            unplaced_deg: (0..n).map(|v| g.degree(v)).collect(),
            best,
            best_order,
            lower,
        };
        search.run(0, 0);
        best = search.best;
        best_order = search.best_order;
    }
    let witness = Labelling::from_order(best_order).unwrap();
    debug_assert_eq!(bandwidth_of_labelling(g, &witness).unwrap(), best);
    Ok((best, witness))
}

/// Exact treewidth via the elimination-order recurrence over vertex
/// subsets, with a witness decomposition rebuilt from the optimal order.
pub fn exact_treewidth(g: &Graph, limit_n: usize) -> Result<(usize, TreeDecomposition), OracleError> {
    let n = g.n();
    guard(n, limit_n)?;
    if n == 0 {
        return Ok((0, TreeDecomposition::new(0, Vec::new(), Vec::new())));
    }
    let adj = adjacency_masks(g);
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };

    // dp[s] = best width over orders eliminating exactly `s` first; the
    // cost of eliminating v after `t` is the number of vertices outside
    // t+v reachable from v through t.
    let reach_cost = |t: u64, v: usize| -> u32 {
        let mut comp = 1u64 << v;
        loop {
            let nb = neighborhood_mask(&adj, full, comp);
            let new_comp = comp | (nb & t);
            if new_comp == comp {
                return (nb & !t).count_ones();
            }
            comp = new_comp;
        }
    };

    let size = 1usize << n;
    let mut dp = vec![u8::MAX; size];
    let mut choice = vec![u8::MAX; size];
    dp[0] = 0;
    for s in 1..size {
        let mut rest = s as u64;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            let cost = reach_cost(prev as u64, v) as u8;
            let value = dp[prev].max(cost);
            if value < dp[s] {
                dp[s] = value;
                choice[s] = v as u8;
            }
        }
    }
    let width = dp[size - 1] as usize;

    // Recover the elimination order; choice[s] is eliminated last within s.
    let mut order_rev = Vec::with_capacity(n);
    let mut s = size - 1;
    while s != 0 {
        let v = choice[s] as usize;
        order_rev.push(v);
        s &= !(1 << v);
    }
    order_rev.reverse();
    let td = td_from_elimination_order(g, &order_rev);
    debug_assert_eq!(validate_tree_decomposition(g, &td), Ok(()));
    debug_assert_eq!(td.width(), width);
    Ok((width, td))
}

/// Decomposition from an elimination order: simulate the eliminations to
/// get each vertex's clique of later neighbors, then attach bags back to
/// front, each to a bag already containing its clique.
fn td_from_elimination_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    let mut adj = adjacency_masks(g);
    let mut cliques: Vec<u64> = Vec::with_capacity(n);
    let mut alive: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    for &v in order {
        let nb = adj[v] & alive & !(1 << v);
        cliques.push(nb);
        alive &= !(1 << v);
        let mut rest = nb;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            adj[u] |= nb & !(1 << u);
            adj[u] &= !(1 << v);
        }
    }

    let mut bags: Vec<VertexSet> = Vec::with_capacity(n);
    let mut tree = Vec::new();
    for i in (0..n).rev() {
        let v = order[i];
        let clique = cliques[i];
        let bag = mask_to_set(clique | (1 << v));
        if bags.is_empty() {
            bags.push(bag);
            continue;
        }
        let host = if clique == 0 {
            0
        } else {
            bags.iter()
                .position(|b| mask_to_set(clique).members().iter().all(|&u| b.contains(u)))
                .expect("a clique of later vertices lies inside some bag")
        };
        bags.push(bag);
        tree.push((host, bags.len() - 1));
    }
    TreeDecomposition::new(n, bags, tree)
}

/// Smallest separator of the whole induced subgraph `universe`, balance
/// `alpha`: minimum separator size such that the remaining components can
/// be split into two sides of at most `alpha * |universe|` vertices each.
fn min_separator_size(adj: &[u64], universe: u64, alpha: Rational) -> usize {
    let total = universe.count_ones() as usize;
    let cap = side_cap(total, alpha);
    let mut best = total;
    let mut s = universe;
    loop {
        // Enumerate all submasks of `universe` as separator candidates.
        let size = s.count_ones() as usize;
        if size < best && sides_feasible(adj, universe, s, cap) {
            best = size;
        }
        if s == 0 {
            break;
        }
        s = (s - 1) & universe;
    }
    best
}

fn sides_feasible(adj: &[u64], universe: u64, sep: u64, cap: usize) -> bool {
    let rest = universe & !sep;
    let total = rest.count_ones() as usize;
    if total > 2 * cap {
        return false;
    }
    let comps = components_of_mask(adj, rest);
    if comps.iter().any(|c| c.count_ones() as usize > cap) {
        return false;
    }
    // Subset-sum over component sizes: some side must land in
    // [total - cap, cap].
    let mut reach: u64 = 1;
    for c in &comps {
        reach |= reach << c.count_ones();
    }
    let lo = total.saturating_sub(cap);
    (lo..=cap.min(total)).any(|t| reach & (1 << t) != 0)
}

/// Separation number: the maximum over all nonempty induced subgraphs of
/// their minimum separator size at balance 2/3. Restricting to induced
/// subgraphs is exact: deleting edges only makes separation easier, so the
/// maximum is attained on an induced subgraph.
pub fn exact_separation_number(g: &Graph, limit_n: usize) -> Result<usize, OracleError> {
    let n = g.n();
    guard(n, limit_n.min(16))?;
    if n == 0 {
        return Ok(0);
    }
    let adj = adjacency_masks(g);
    let alpha = Rational::new(2, 3);
    let mut best = 0;
    for universe in 1..(1u64 << n) {
        if (universe.count_ones() as usize) <= best {
            continue;
        }
        best = best.max(min_separator_size(&adj, universe, alpha));
    }
    Ok(best)
}

/// Outcome of an exhaustive expansion check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpansionCheck {
    Expander,
    /// A nonempty subset of at most half the vertices whose outside
    /// neighborhood is strictly smaller than `eps` times its size.
    Violated {
        subset: VertexSet,
        neighborhood_size: usize,
    },
}

/// Exhaustive test of the expansion property: every nonempty subset `U`
/// with `2|U| <= n` must satisfy `|N(U)| >= eps * |U|`, in exact rational
/// arithmetic.
pub fn is_epsilon_expander(g: &Graph, eps: Rational) -> Result<ExpansionCheck, OracleError> {
    let n = g.n();
    guard(n, HARD_SUBSET_LIMIT)?;
    let (p, q) = check_eps(eps)?;
    let adj = adjacency_masks(g);
    let full: u64 = if n == 0 { 0 } else { (1 << n) - 1 };
    Ok(expander_check_mask(&adj, full, p, q))
}

fn expander_check_mask(adj: &[u64], universe: u64, p: i64, q: i64) -> ExpansionCheck {
    let total = universe.count_ones() as i64;
    let mut u = universe;
    loop {
        if u == 0 {
            break;
        }
        let size = u.count_ones() as i64;
        if 2 * size <= total {
            let nb = neighborhood_mask(adj, universe, u).count_ones() as i64;
            if q * nb < p * size {
                return ExpansionCheck::Violated {
                    subset: mask_to_set(u),
                    neighborhood_size: nb as usize,
                };
            }
        }
        u = (u - 1) & universe;
    }
    ExpansionCheck::Expander
}

/// Strict violator search over a full vertex universe, largest sets first
/// (size descending, Gosper order within a size). Large witnesses make the
/// downstream separator loop terminate in few rounds; the order also fixes
/// the returned witness deterministically.
fn strict_violator_largest_first(adj: &[u64], n: usize, p: i64, q: i64) -> Option<(u64, usize)> {
    let universe: u64 = if n == 0 { 0 } else { (1 << n) - 1 };
    for k in (1..=n / 2).rev() {
        let mut mask: u64 = (1 << k) - 1;
        let limit: u64 = 1 << n;
        while mask < limit {
            let nb = neighborhood_mask(adj, universe, mask).count_ones() as i64;
            if q * nb < p * (k as i64) {
                return Some((mask, nb as usize));
            }
            mask = next_same_size(mask);
        }
    }
    None
}

/// Boundedness: the size of the largest induced subgraph that is an
/// `eps`-expander (1 for any nonempty graph, since a single vertex expands
/// vacuously), with the witness subgraph. Induced subgraphs suffice:
/// adding edges inside a vertex set only enlarges neighborhoods.
pub fn exact_boundedness(
    g: &Graph,
    eps: Rational,
    limit_n: usize,
) -> Result<(usize, Option<VertexSet>), OracleError> {
    let n = g.n();
    guard(n, limit_n)?;
    let (p, q) = check_eps(eps)?;
    if n == 0 {
        return Ok((0, None));
    }
    let adj = adjacency_masks(g);
    for k in (1..=n).rev() {
        let mut mask: u64 = (1 << k) - 1;
        let limit: u64 = 1 << n;
        while mask < limit {
            if expander_check_mask(&adj, mask, p, q) == ExpansionCheck::Expander {
                return Ok((k, Some(mask_to_set(mask))));
            }
            mask = next_same_size(mask);
        }
    }
    unreachable!("a single vertex is always an expander");
}

/// Deterministic strict violator search used by the exact non-expanding
/// finder. Returns the qualifying subset as a mask together with its
/// outside-neighborhood size, or `None` when the graph is an expander.
pub(crate) fn strict_nonexpanding_mask(
    g: &Graph,
    eps: Rational,
) -> Result<Option<(u64, usize)>, OracleError> {
    let (p, q) = check_eps(eps)?;
    let adj = adjacency_masks(g);
    Ok(strict_violator_largest_first(&adj, g.n(), p, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frac;
    use crate::graph::{generate, Family};

    fn gen(f: Family) -> Graph {
        generate(&f, 0).unwrap()
    }

    #[test]
    fn bandwidth_known_values() {
        assert_eq!(exact_bandwidth(&gen(Family::Path { n: 8 }), 12).unwrap().0, 1);
        assert_eq!(exact_bandwidth(&gen(Family::Complete { n: 6 }), 12).unwrap().0, 5);
        assert_eq!(exact_bandwidth(&gen(Family::Grid { side: 3 }), 12).unwrap().0, 3);
        assert_eq!(exact_bandwidth(&gen(Family::Cycle { n: 8 }), 12).unwrap().0, 2);
        assert_eq!(exact_bandwidth(&gen(Family::Star { leaves: 4 }), 12).unwrap().0, 2);
    }

    #[test]
    fn bandwidth_witness_achieves_value() {
        for seed in 0..5 {
            let g = generate(&Family::RandomBoundedDegree { n: 8, max_degree: 4 }, seed).unwrap();
            let (value, witness) = exact_bandwidth(&g, 12).unwrap();
            assert_eq!(bandwidth_of_labelling(&g, &witness).unwrap(), value);
            assert!(value >= degree_lower_bound(&g));
        }
    }

    #[test]
    fn bandwidth_size_guard() {
        let g = Graph::edgeless(13);
        assert_eq!(
            exact_bandwidth(&g, 12),
            Err(OracleError::SizeGuard { n: 13, limit: 12 })
        );
    }

    #[test]
    fn treewidth_known_values() {
        let tree = gen(Family::CompleteBinaryTree { depth: 2 });
        assert_eq!(exact_treewidth(&tree, 12).unwrap().0, 1);
        assert_eq!(exact_treewidth(&gen(Family::Cycle { n: 7 }), 12).unwrap().0, 2);
        assert_eq!(exact_treewidth(&gen(Family::Complete { n: 5 }), 12).unwrap().0, 4);
        assert_eq!(exact_treewidth(&Graph::edgeless(4), 12).unwrap().0, 0);
    }

    #[test]
    fn treewidth_witness_validates_and_matches() {
        for seed in 0..8 {
            let g = generate(&Family::RandomBoundedDegree { n: 9, max_degree: 4 }, seed).unwrap();
            let (w, td) = exact_treewidth(&g, 12).unwrap();
            assert_eq!(validate_tree_decomposition(&g, &td), Ok(()));
            assert_eq!(td.width(), w);
        }
    }

    #[test]
    fn separation_number_known_values() {
        assert_eq!(exact_separation_number(&gen(Family::Path { n: 8 }), 10).unwrap(), 1);
        assert_eq!(exact_separation_number(&gen(Family::Complete { n: 6 }), 10).unwrap(), 2);
        // A single-vertex induced subgraph forces at least 1 even without edges.
        assert_eq!(exact_separation_number(&Graph::edgeless(5), 10).unwrap(), 1);
    }

    #[test]
    fn expander_checks() {
        let k4 = gen(Family::Complete { n: 4 });
        assert_eq!(is_epsilon_expander(&k4, frac(1, 2)).unwrap(), ExpansionCheck::Expander);

        let k6 = gen(Family::Complete { n: 6 });
        assert_eq!(is_epsilon_expander(&k6, frac(1, 2)).unwrap(), ExpansionCheck::Expander);

        let two_triangles =
            Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        match is_epsilon_expander(&two_triangles, frac(1, 2)).unwrap() {
            ExpansionCheck::Violated { subset, neighborhood_size } => {
                assert!(subset.members() == [0, 1, 2] || subset.members() == [3, 4, 5]);
                assert_eq!(neighborhood_size, 0);
            }
            other => panic!("expected a violation, got {other:?}"),
        }

        let single = Graph::edgeless(1);
        assert_eq!(is_epsilon_expander(&single, frac(5, 1)).unwrap(), ExpansionCheck::Expander);
    }

    #[test]
    fn boundedness_known_values() {
        let k4 = gen(Family::Complete { n: 4 });
        assert_eq!(exact_boundedness(&k4, frac(1, 2), 14).unwrap().0, 4);

        let edgeless = Graph::edgeless(5);
        let (b, witness) = exact_boundedness(&edgeless, frac(1, 3), 14).unwrap();
        assert_eq!(b, 1);
        assert_eq!(witness.unwrap().len(), 1);

        // The largest expanding subgraph of a long path at eps = 1 is a
        // three-vertex subpath.
        let p9 = gen(Family::Path { n: 9 });
        assert_eq!(exact_boundedness(&p9, frac(1, 1), 14).unwrap().0, 3);
        // And at eps = 1/2 a five-vertex subpath still expands.
        assert_eq!(exact_boundedness(&p9, frac(1, 2), 14).unwrap().0, 5);
    }

    #[test]
    fn boundedness_witness_reverifies() {
        for seed in [1, 5, 9] {
            let g = generate(&Family::RandomBoundedDegree { n: 8, max_degree: 3 }, seed).unwrap();
            if g.n() == 0 {
                continue;
            }
            let (b, witness) = exact_boundedness(&g, frac(1, 2), 14).unwrap();
            let w = witness.unwrap();
            assert_eq!(w.len(), b);
            let (sub, _) = g.induced_subgraph(&w).unwrap();
            assert_eq!(is_epsilon_expander(&sub, frac(1, 2)).unwrap(), ExpansionCheck::Expander);
        }
    }

    #[test]
    fn invalid_epsilon_is_rejected() {
        let g = Graph::edgeless(2);
        assert_eq!(
            exact_boundedness(&g, frac(-1, 2), 14),
            Err(OracleError::InvalidEpsilon)
        );
    }
}
