//! Tree decompositions: the certificate type, its validator, the direct
//! construction from a bandwidth labelling, and a recursive builder that
//! extracts balanced separators from non-expanding sets.

use thiserror::Error;

use crate::expansion::NonexpandingFinder;
use crate::graph::{bandwidth_of_labelling, Graph, GraphError, Labelling, VertexSet};
use crate::separator::{separator_from_nonexpanding, SeparatorError};
use crate::Rational;

/// Bags over a tree. `n` records the vertex universe `0..n` the
/// decomposition refers to; bag indices are dense `0..bags.len()` and tree
/// edges are stored normalized (`u < v`, ascending).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    n: usize,
    bags: Vec<VertexSet>,
    tree: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(n: usize, bags: Vec<VertexSet>, tree: Vec<(usize, usize)>) -> Self {
        let mut tree: Vec<(usize, usize)> = tree
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        tree.sort_unstable();
        TreeDecomposition { n, bags, tree }
    }

    /// The whole vertex set in one bag.
    pub fn single_bag(g: &Graph) -> Self {
        TreeDecomposition::new(g.n(), vec![VertexSet::from_iter(0..g.n())], Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bags(&self) -> &[VertexSet] {
        &self.bags
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.tree
    }

    /// Largest bag size minus one; zero for a bagless decomposition.
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(VertexSet::len)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TdViolation {
    #[error("bag {bag} contains vertex {vertex}, out of range for n = {n}")]
    BagVertexOutOfRange { bag: usize, vertex: usize, n: usize },
    #[error("bag graph is not a tree: {reason}")]
    NotATree { reason: String },
    #[error("vertex {0} is not covered by any bag")]
    UncoveredVertex(usize),
    #[error("edge {{{0}, {1}}} is not contained in any bag")]
    UncoveredEdge(usize, usize),
    #[error("the bags containing vertex {0} do not form a connected subtree")]
    DisconnectedVertex(usize),
}

/// Checks the three defining conditions of a tree decomposition: bags cover
/// all vertices, every edge lies inside some bag, and for each vertex the
/// bags containing it induce a connected subtree. Structural tree-ness of
/// the bag graph is checked first.
pub fn validate_tree_decomposition(g: &Graph, td: &TreeDecomposition) -> Result<(), TdViolation> {
    let k = td.bags.len();
    for (i, bag) in td.bags.iter().enumerate() {
        if let Some(v) = bag.iter().find(|&v| v >= g.n()) {
            return Err(TdViolation::BagVertexOutOfRange { bag: i, vertex: v, n: g.n() });
        }
    }
    if k == 0 {
        if g.n() == 0 {
            return Ok(());
        }
        return Err(TdViolation::UncoveredVertex(0));
    }
    for &(a, b) in &td.tree {
        if a >= k || b >= k {
            return Err(TdViolation::NotATree {
                reason: format!("edge ({a}, {b}) references a missing bag"),
            });
        }
        if a == b {
            return Err(TdViolation::NotATree {
                reason: format!("self-edge at bag {a}"),
            });
        }
    }
    if td.tree.len() != k - 1 {
        return Err(TdViolation::NotATree {
            reason: format!("{} bags need {} edges, found {}", k, k - 1, td.tree.len()),
        });
    }
    let mut bag_adj = vec![Vec::new(); k];
    for &(a, b) in &td.tree {
        bag_adj[a].push(b);
        bag_adj[b].push(a);
    }
    if reachable_bags(&bag_adj, 0, |_| true).len() != k {
        return Err(TdViolation::NotATree {
            reason: "bag graph is disconnected".into(),
        });
    }

    let mut holder = vec![Vec::new(); g.n()];
    for (i, bag) in td.bags.iter().enumerate() {
        for v in bag.iter() {
            holder[v].push(i);
        }
    }
    if let Some(v) = holder.iter().position(Vec::is_empty) {
        return Err(TdViolation::UncoveredVertex(v));
    }
    for (u, v) in g.edges() {
        if !td.bags.iter().any(|bag| bag.contains(u) && bag.contains(v)) {
            return Err(TdViolation::UncoveredEdge(u, v));
        }
    }
    for (v, bags_of_v) in holder.iter().enumerate() {
        let inside = |i: usize| td.bags[i].contains(v);
        let seen = reachable_bags(&bag_adj, bags_of_v[0], inside);
        if seen.len() != bags_of_v.len() {
            return Err(TdViolation::DisconnectedVertex(v));
        }
    }
    Ok(())
}

fn reachable_bags(bag_adj: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut seen = vec![false; bag_adj.len()];
    let mut stack = vec![start];
    let mut out = Vec::new();
    seen[start] = true;
    while let Some(i) = stack.pop() {
        out.push(i);
        for &j in &bag_adj[i] {
            if !seen[j] && allowed(j) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    out
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TdBuildError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("labelling has bandwidth {measured}, above the budget {budget}")]
    BandwidthBudget { measured: usize, budget: usize },
    #[error("budget {budget} must be at most n - 1 = {}", n.saturating_sub(1))]
    BudgetTooLarge { budget: usize, n: usize },
    #[error("produced width {width} exceeds the certified bound {bound}")]
    WidthBound { width: usize, bound: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Separator(#[from] SeparatorError),
}

/// Sliding-window decomposition of a labelling with bandwidth at most
/// `budget`: bag `i` holds the vertices at positions `i..=i+budget`, bags
/// joined in a path. Width is exactly `budget` whenever `n > budget`.
pub fn td_from_bandwidth_labelling(
    g: &Graph,
    labelling: &Labelling,
    budget: usize,
) -> Result<TreeDecomposition, TdBuildError> {
    let n = g.n();
    if n == 0 {
        return Err(TdBuildError::EmptyGraph);
    }
    if budget + 1 > n {
        return Err(TdBuildError::BudgetTooLarge { budget, n });
    }
    let measured = bandwidth_of_labelling(g, labelling)?;
    if measured > budget {
        return Err(TdBuildError::BandwidthBudget { measured, budget });
    }
    let bag_count = n - budget;
    let bags: Vec<VertexSet> = (0..bag_count)
        .map(|i| VertexSet::from_iter((i..=i + budget).map(|p| labelling.vertex_at(p))))
        .collect();
    let tree = (1..bag_count).map(|i| (i - 1, i)).collect();
    Ok(TreeDecomposition::new(n, bags, tree))
}

/// `2 * boundedness + 2 * eps * n`, the closed-form treewidth bound.
pub fn treewidth_bound_formula(boundedness: usize, eps: Rational, n: usize) -> f64 {
    let eps_f = *eps.numer() as f64 / *eps.denom() as f64;
    2.0 * boundedness as f64 + 2.0 * eps_f * n as f64
}

/// Recursive decomposition by balanced separators extracted from
/// non-expanding sets.
///
/// Parts of size at most `max(base_size, 2 * fails)` become single bags,
/// where `fails` tracks the largest part on which the finder failed to
/// produce a non-expanding set (an expander obstruction). On such a failure
/// the part becomes one bag, keeping the output valid at the cost of a
/// coarser bound. Returns the decomposition together with the effective
/// leaf threshold `b_used = max(base_size, fails)`; the produced width is
/// checked against `2 * eps * n + 2 * b_used` before returning.
pub fn td_from_separators(
    g: &Graph,
    eps: Rational,
    finder: &NonexpandingFinder,
    base_size: usize,
) -> Result<(TreeDecomposition, usize), TdBuildError> {
    let n = g.n();
    if n == 0 {
        return Ok((TreeDecomposition::new(0, Vec::new(), Vec::new()), base_size));
    }
    let mut builder = SepTdBuilder {
        g,
        eps,
        finder,
        base_size,
        largest_failure: 0,
        bags: Vec::new(),
        tree: Vec::new(),
    };
    builder.build(VertexSet::from_iter(0..n))?;
    let b_used = base_size.max(builder.largest_failure);
    let td = TreeDecomposition::new(n, builder.bags, builder.tree);

    // width <= 2*eps*n + 2*b_used, compared in exact arithmetic
    let bound = Rational::from_integer(2 * b_used as i64)
        + Rational::from_integer(2 * n as i64) * eps;
    if Rational::from_integer(td.width() as i64) > bound {
        return Err(TdBuildError::WidthBound {
            width: td.width(),
            bound: format!("{bound}"),
        });
    }
    Ok((td, b_used))
}

struct SepTdBuilder<'a> {
    g: &'a Graph,
    eps: Rational,
    finder: &'a NonexpandingFinder,
    base_size: usize,
    largest_failure: usize,
    bags: Vec<VertexSet>,
    tree: Vec<(usize, usize)>,
}

impl SepTdBuilder<'_> {
    /// Decomposes `part`, returning the index of its first bag; `None` when
    /// the part is empty.
    fn build(&mut self, part: VertexSet) -> Result<Option<usize>, TdBuildError> {
        if part.is_empty() {
            return Ok(None);
        }
        let threshold = self.base_size.max(2 * self.largest_failure);
        if part.len() <= threshold {
            return Ok(Some(self.push_bag(part)));
        }
        let (sub, table) = self.g.induced_subgraph(&part)?;
        let sep = match separator_from_nonexpanding(&sub, self.eps, self.finder) {
            Ok(sep) => sep,
            Err(SeparatorError::ExpanderObstruction { .. }) => {
                self.largest_failure = self.largest_failure.max(part.len());
                return Ok(Some(self.push_bag(part)));
            }
            Err(other) => return Err(other.into()),
        };
        let to_orig = |set: &VertexSet| VertexSet::from_iter(set.iter().map(|v| table[v]));
        let mid = to_orig(sep.separator());
        let start = self.bags.len();
        let left = self.build(to_orig(sep.side_a()))?;
        let right = self.build(to_orig(sep.side_b()))?;
        // The separator joins every bag of both children.
        for bag in &mut self.bags[start..] {
            *bag = bag.union(&mid);
        }
        match (left, right) {
            (Some(a), Some(b)) => {
                self.tree.push((a, b));
                Ok(Some(a))
            }
            (Some(a), None) | (None, Some(a)) => Ok(Some(a)),
            (None, None) => Ok(Some(self.push_bag(mid))),
        }
    }

    fn push_bag(&mut self, bag: VertexSet) -> usize {
        self.bags.push(bag);
        self.bags.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn path(n: usize) -> Graph {
        generate(&Family::Path { n }, 0).unwrap()
    }

    #[test]
    fn single_bag_of_triangle_is_valid() {
        let g = generate(&Family::Complete { n: 3 }, 0).unwrap();
        let td = TreeDecomposition::single_bag(&g);
        assert_eq!(validate_tree_decomposition(&g, &td), Ok(()));
        assert_eq!(td.width(), 2);
    }

    #[test]
    fn path_decomposition_of_p3_is_valid() {
        let g = path(3);
        let td = TreeDecomposition::new(
            3,
            vec![VertexSet::from_iter([0, 1]), VertexSet::from_iter([1, 2])],
            vec![(0, 1)],
        );
        assert_eq!(validate_tree_decomposition(&g, &td), Ok(()));
        assert_eq!(td.width(), 1);
    }

    #[test]
    fn missing_edge_is_reported() {
        let g = path(3);
        let td = TreeDecomposition::new(
            3,
            vec![VertexSet::from_iter([0, 1]), VertexSet::from_iter([2])],
            vec![(0, 1)],
        );
        assert_eq!(
            validate_tree_decomposition(&g, &td),
            Err(TdViolation::UncoveredEdge(1, 2))
        );
    }

    #[test]
    fn disconnected_occurrences_are_reported() {
        let g = Graph::edgeless(3);
        let td = TreeDecomposition::new(
            3,
            vec![
                VertexSet::from_iter([0, 1]),
                VertexSet::from_iter([2]),
                VertexSet::from_iter([0]),
            ],
            vec![(0, 1), (1, 2)],
        );
        assert_eq!(
            validate_tree_decomposition(&g, &td),
            Err(TdViolation::DisconnectedVertex(0))
        );
    }

    #[test]
    fn non_tree_shapes_are_reported() {
        let g = path(2);
        let td = TreeDecomposition::new(
            2,
            vec![VertexSet::from_iter([0, 1]), VertexSet::from_iter([1])],
            vec![],
        );
        assert!(matches!(
            validate_tree_decomposition(&g, &td),
            Err(TdViolation::NotATree { .. })
        ));
    }

    #[test]
    fn sliding_window_on_path() {
        let g = path(5);
        let td = td_from_bandwidth_labelling(&g, &Labelling::identity(5), 1).unwrap();
        assert_eq!(td.bags().len(), 4);
        assert!(td.bags().iter().all(|b| b.len() == 2));
        assert_eq!(td.width(), 1);
        assert_eq!(validate_tree_decomposition(&g, &td), Ok(()));
    }

    #[test]
    fn sliding_window_on_complete_graph_is_single_bag() {
        let g = generate(&Family::Complete { n: 4 }, 0).unwrap();
        let td = td_from_bandwidth_labelling(&g, &Labelling::identity(4), 3).unwrap();
        assert_eq!(td.bags().len(), 1);
        assert_eq!(td.width(), 3);
        assert_eq!(validate_tree_decomposition(&g, &td), Ok(()));
    }

    #[test]
    fn sliding_window_on_cycle_with_interleaved_labelling() {
        let g = generate(&Family::Cycle { n: 6 }, 0).unwrap();
        let l = Labelling::from_positions(vec![0, 2, 4, 5, 3, 1]).unwrap();
        let td = td_from_bandwidth_labelling(&g, &l, 2).unwrap();
        assert_eq!(td.width(), 2);
        assert_eq!(validate_tree_decomposition(&g, &td), Ok(()));
    }

    #[test]
    fn sliding_window_rejects_bad_budget() {
        let g = path(4);
        assert_eq!(
            td_from_bandwidth_labelling(&g, &Labelling::identity(4), 0),
            Err(TdBuildError::BandwidthBudget { measured: 1, budget: 0 })
        );
        assert_eq!(
            td_from_bandwidth_labelling(&g, &Labelling::identity(4), 4),
            Err(TdBuildError::BudgetTooLarge { budget: 4, n: 4 })
        );
    }

    #[test]
    fn bound_formula_values() {
        assert_eq!(treewidth_bound_formula(0, Rational::new(0, 1), 100), 0.0);
        assert_eq!(treewidth_bound_formula(10, Rational::new(1, 10), 100), 40.0);
    }
}
