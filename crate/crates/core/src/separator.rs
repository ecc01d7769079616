//! Balanced vertex separators: the certificate type and validator, exact
//! and heuristic finders, the loop that turns non-expanding sets into a
//! separator, a constructive companion to the treewidth-to-separator bound,
//! and the closed-form genus/minor separator bounds.

use thiserror::Error;

use crate::expansion::{NonexpandingFinder, NonexpandingOutcome};
use crate::graph::{Graph, GraphError, VertexSet};
use crate::mask::{adjacency_masks, components_of_mask, mask_to_set, next_same_size, side_cap};
use crate::oracle::OracleError;
use crate::spectral;
use crate::treewidth::{validate_tree_decomposition, TdViolation, TreeDecomposition};
use crate::Rational;

pub const DEFAULT_EXACT_SEPARATOR_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparatorSource {
    Exact,
    BfsLayer,
    Spectral,
    Centroid,
    FromExpansion,
    FromTreeDecomposition,
}

impl SeparatorSource {
    pub fn name(&self) -> &'static str {
        match self {
            SeparatorSource::Exact => "exact",
            SeparatorSource::BfsLayer => "bfs_layer",
            SeparatorSource::Spectral => "spectral",
            SeparatorSource::Centroid => "centroid",
            SeparatorSource::FromExpansion => "from_expansion",
            SeparatorSource::FromTreeDecomposition => "from_td",
        }
    }
}

/// A validated `(|S|, alpha)`-separator certificate: removing `S` leaves
/// the disjoint sides `A` and `B` with no edges between them, each of size
/// at most `alpha * n`. Instances only exist in validated form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separator {
    s: VertexSet,
    a: VertexSet,
    b: VertexSet,
    alpha: Rational,
    source: SeparatorSource,
}

impl Separator {
    pub fn checked(
        g: &Graph,
        s: VertexSet,
        a: VertexSet,
        b: VertexSet,
        alpha: Rational,
        source: SeparatorSource,
    ) -> Result<Self, SeparatorViolation> {
        check_separator_parts(g, &s, &a, &b, alpha)?;
        Ok(Separator { s, a, b, alpha, source })
    }

    pub fn separator(&self) -> &VertexSet {
        &self.s
    }

    pub fn side_a(&self) -> &VertexSet {
        &self.a
    }

    pub fn side_b(&self) -> &VertexSet {
        &self.b
    }

    pub fn alpha(&self) -> Rational {
        self.alpha
    }

    pub fn source(&self) -> SeparatorSource {
        self.source
    }

    pub fn size(&self) -> usize {
        self.s.len()
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeparatorViolation {
    #[error("balance parameter {0} is outside [1/2, 1)")]
    InvalidAlpha(Rational),
    #[error("vertex {vertex} is covered {count} times by S, A, B")]
    NotAPartition { vertex: usize, count: usize },
    #[error("side {side} has {size} vertices, above the cap {cap}")]
    SideTooLarge { side: char, size: usize, cap: usize },
    #[error("edge {{{0}, {1}}} crosses the two sides")]
    CrossEdge(usize, usize),
}

/// Checks the separator conditions in order: `S`, `A`, `B` partition the
/// vertices; both sides respect the balance cap; no edge joins the sides.
pub fn validate_separator(g: &Graph, sep: &Separator) -> Result<(), SeparatorViolation> {
    check_separator_parts(g, &sep.s, &sep.a, &sep.b, sep.alpha)
}

fn check_separator_parts(
    g: &Graph,
    s: &VertexSet,
    a: &VertexSet,
    b: &VertexSet,
    alpha: Rational,
) -> Result<(), SeparatorViolation> {
    if alpha < Rational::new(1, 2) || alpha >= Rational::new(1, 1) {
        return Err(SeparatorViolation::InvalidAlpha(alpha));
    }
    let n = g.n();
    let mut count = vec![0usize; n];
    for set in [s, a, b] {
        for v in set.iter() {
            if v >= n {
                return Err(SeparatorViolation::NotAPartition { vertex: v, count: 0 });
            }
            count[v] += 1;
        }
    }
    if let Some(v) = count.iter().position(|&c| c != 1) {
        return Err(SeparatorViolation::NotAPartition { vertex: v, count: count[v] });
    }
    let cap = side_cap(n, alpha);
    if a.len() > cap {
        return Err(SeparatorViolation::SideTooLarge { side: 'A', size: a.len(), cap });
    }
    if b.len() > cap {
        return Err(SeparatorViolation::SideTooLarge { side: 'B', size: b.len(), cap });
    }
    for u in a.iter() {
        for &w in g.neighbors(u) {
            if b.contains(w) {
                return Err(SeparatorViolation::CrossEdge(u.min(w), u.max(w)));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeparatorError {
    #[error("graph has {n} vertices, above the size guard {limit}")]
    SizeGuard { n: usize, limit: usize },
    #[error("graph is disconnected and no component grouping achieves balance")]
    Disconnected,
    #[error("graph has {n} vertices but the method needs at least {need}")]
    TooSmall { n: usize, need: usize },
    #[error("power iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("no cut examined by this method achieves the requested balance")]
    NoBalancedCut,
    #[error("the component to split is not a tree")]
    NotAForest,
    #[error("separator of size {size} exceeds the provider budget {cap}")]
    BudgetExceeded { size: usize, cap: usize },
    #[error("no non-expanding set in an induced subgraph on {} vertices (exhaustive: {proven})", .subgraph.len())]
    ExpanderObstruction { subgraph: VertexSet, proven: bool },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("decomposition rejected: {0}")]
    InvalidDecomposition(#[from] TdViolation),
    #[error("produced separator failed validation: {0}")]
    Internal(#[from] SeparatorViolation),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Greedy balanced grouping: pieces sorted by descending size (ties by
/// smallest vertex) go to the currently smaller side. Succeeds whenever
/// every piece has at most half the vertices and `alpha >= 2/3`.
fn group_pieces(pieces: &[VertexSet], n: usize, alpha: Rational) -> Option<(VertexSet, VertexSet)> {
    let mut sorted: Vec<&VertexSet> = pieces.iter().collect();
    sorted.sort_by_key(|p| (std::cmp::Reverse(p.len()), p.members().first().copied()));
    let mut side_a: Vec<usize> = Vec::new();
    let mut side_b: Vec<usize> = Vec::new();
    for piece in sorted {
        let target = if side_a.len() <= side_b.len() {
            &mut side_a
        } else {
            &mut side_b
        };
        target.extend(piece.iter());
    }
    let cap = side_cap(n, alpha);
    if side_a.len() > cap || side_b.len() > cap {
        return None;
    }
    Some((VertexSet::from_iter(side_a), VertexSet::from_iter(side_b)))
}

/// Disconnected graphs sometimes separate for free: if the components
/// group into two balanced sides, the empty separator wins outright.
fn component_shortcut(g: &Graph, alpha: Rational, source: SeparatorSource) -> Option<Separator> {
    let comps = g.components();
    if comps.len() < 2 {
        return None;
    }
    let (a, b) = group_pieces(&comps, g.n(), alpha)?;
    Separator::checked(g, VertexSet::empty(), a, b, alpha, source).ok()
}

fn components_excluding(g: &Graph, removed: &VertexSet) -> Vec<VertexSet> {
    let n = g.n();
    let mut seen: Vec<bool> = (0..n).map(|v| removed.contains(v)).collect();
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out.push(VertexSet::from_iter(comp));
    }
    out
}

/// Minimum-size separator by exhaustive search, ties broken by the
/// lexicographically smallest separator set.
pub fn find_separator_exact(
    g: &Graph,
    alpha: Rational,
    limit_n: usize,
) -> Result<Separator, SeparatorError> {
    let n = g.n();
    let limit = limit_n.min(20);
    if n > limit {
        return Err(SeparatorError::SizeGuard { n, limit });
    }
    if n == 0 {
        return Ok(Separator::checked(
            g,
            VertexSet::empty(),
            VertexSet::empty(),
            VertexSet::empty(),
            alpha,
            SeparatorSource::Exact,
        )?);
    }
    let adj = adjacency_masks(g);
    let full: u64 = (1 << n) - 1;
    let cap = side_cap(n, alpha);
    for k in 0..=n {
        let mut best: Option<u64> = None;
        let mut mask: u64 = if k == 0 { 0 } else { (1 << k) - 1 };
        loop {
            if mask > full {
                break;
            }
            if feasible_sides(&adj, full, mask, cap).is_some() {
                let better = match best {
                    None => true,
                    Some(b) => mask_to_set(mask).members() < mask_to_set(b).members(),
                };
                if better {
                    best = Some(mask);
                }
            }
            if k == 0 {
                break;
            }
            mask = next_same_size(mask);
        }
        if let Some(smask) = best {
            let (a, b) = feasible_sides(&adj, full, smask, cap).unwrap();
            return Ok(Separator::checked(
                g,
                mask_to_set(smask),
                mask_to_set(a),
                mask_to_set(b),
                alpha,
                SeparatorSource::Exact,
            )?);
        }
    }
    Err(SeparatorError::NoBalancedCut)
}

/// Splits the remainder after removing `sep` into two sides within `cap`,
/// or `None` if impossible. Reconstruction is deterministic: components in
/// (size desc, smallest vertex) order join side A whenever a completion
/// within the window still exists.
fn feasible_sides(adj: &[u64], universe: u64, sep: u64, cap: usize) -> Option<(u64, u64)> {
    let rest = universe & !sep;
    let total = rest.count_ones() as usize;
    if total > 2 * cap {
        return None;
    }
    let mut comps = components_of_mask(adj, rest);
    comps.sort_by_key(|c| (std::cmp::Reverse(c.count_ones()), c.trailing_zeros()));
    if comps.iter().any(|c| c.count_ones() as usize > cap) {
        return None;
    }
    let sizes: Vec<usize> = comps.iter().map(|c| c.count_ones() as usize).collect();
    // reach[i] = bitset of sums achievable from comps[i..]
    let mut reach = vec![1u64; sizes.len() + 1];
    for i in (0..sizes.len()).rev() {
        reach[i] = reach[i + 1] | (reach[i + 1] << sizes[i]);
    }
    let lo = total.saturating_sub(cap);
    if !(lo..=cap.min(total)).any(|t| reach[0] & (1 << t) != 0) {
        return None;
    }
    let mut a = 0u64;
    let mut acc = 0usize;
    for (i, comp) in comps.iter().enumerate() {
        let with = acc + sizes[i];
        let completes = |base: usize, from: usize| -> bool {
            (0..=total).any(|s| {
                reach[from] & (1 << s) != 0 && (lo..=cap).contains(&(base + s))
            })
        };
        if with <= cap && completes(with, i + 1) {
            a |= comp;
            acc = with;
        }
    }
    debug_assert!((lo..=cap).contains(&acc));
    Some((a, rest & !a))
}

/// Scans BFS layers from vertex 0 for an interior layer whose removal
/// splits the graph into two balanced groups of components. Returns the
/// smallest such layer, preferring better balance and then smaller depth.
pub fn find_separator_bfs_layer(g: &Graph, alpha: Rational) -> Result<Separator, SeparatorError> {
    if g.n() == 0 {
        return Ok(Separator::checked(
            g,
            VertexSet::empty(),
            VertexSet::empty(),
            VertexSet::empty(),
            alpha,
            SeparatorSource::BfsLayer,
        )?);
    }
    if !g.is_connected() {
        return component_shortcut(g, alpha, SeparatorSource::BfsLayer)
            .ok_or(SeparatorError::Disconnected);
    }
    let dist = g.multi_source_distances(&VertexSet::singleton(0));
    let depth = dist.iter().map(|d| d.unwrap()).max().unwrap();
    let mut best: Option<(usize, usize, usize, Separator)> = None;
    for layer_index in 1..depth {
        let layer = VertexSet::from_iter(
            (0..g.n()).filter(|&v| dist[v] == Some(layer_index)),
        );
        let comps = components_excluding(g, &layer);
        let Some((a, b)) = group_pieces(&comps, g.n(), alpha) else {
            continue;
        };
        let Ok(sep) = Separator::checked(g, layer, a, b, alpha, SeparatorSource::BfsLayer) else {
            continue;
        };
        let key = (
            sep.size(),
            sep.side_a().len().max(sep.side_b().len()),
            layer_index,
        );
        if best.as_ref().is_none_or(|(s, bal, li, _)| key < (*s, *bal, *li)) {
            best = Some((key.0, key.1, key.2, sep));
        }
    }
    best.map(|(_, _, _, sep)| sep).ok_or(SeparatorError::NoBalancedCut)
}

/// Sweep cut over an approximate second Laplacian eigenvector: for every
/// prefix/suffix split, the boundary vertices of the smaller side become
/// the separator. Returns the valid candidate with the smallest separator.
pub fn find_separator_spectral(
    g: &Graph,
    alpha: Rational,
    iterations: usize,
    tolerance: f64,
) -> Result<Separator, SeparatorError> {
    let n = g.n();
    if n < 3 {
        return Err(SeparatorError::TooSmall { n, need: 3 });
    }
    if !g.is_connected() {
        return component_shortcut(g, alpha, SeparatorSource::Spectral)
            .ok_or(SeparatorError::Disconnected);
    }
    let order = spectral::sweep_order(g, iterations, tolerance)
        .map_err(|e| SeparatorError::NoConvergence { iterations: e.iterations, residual: e.residual })?;
    let mut best: Option<(usize, usize, usize, Separator)> = None;
    for split in 1..n {
        let (smaller, larger): (Vec<usize>, Vec<usize>) = if split <= n - split {
            (order[..split].to_vec(), order[split..].to_vec())
        } else {
            (order[split..].to_vec(), order[..split].to_vec())
        };
        let smaller_set = VertexSet::from_iter(smaller.iter().copied());
        let boundary = VertexSet::from_iter(
            smaller
                .iter()
                .copied()
                .filter(|&v| g.neighbors(v).iter().any(|&w| !smaller_set.contains(w))),
        );
        let a = VertexSet::from_iter(smaller.iter().copied().filter(|&v| !boundary.contains(v)));
        let b = VertexSet::from_iter(larger.iter().copied());
        let Ok(sep) = Separator::checked(g, boundary, a, b, alpha, SeparatorSource::Spectral)
        else {
            continue;
        };
        let key = (
            sep.size(),
            sep.side_a().len().max(sep.side_b().len()),
            split,
        );
        if best.as_ref().is_none_or(|(s, bal, sp, _)| key < (*s, *bal, *sp)) {
            best = Some((key.0, key.1, key.2, sep));
        }
    }
    best.map(|(_, _, _, sep)| sep).ok_or(SeparatorError::NoBalancedCut)
}

/// Single-vertex separator for forests: the centroid of the largest
/// component, whose removal leaves pieces of at most half its size.
pub fn find_separator_centroid(g: &Graph, alpha: Rational) -> Result<Separator, SeparatorError> {
    if g.n() == 0 {
        return Ok(Separator::checked(
            g,
            VertexSet::empty(),
            VertexSet::empty(),
            VertexSet::empty(),
            alpha,
            SeparatorSource::Centroid,
        )?);
    }
    if let Some(sep) = component_shortcut(g, alpha, SeparatorSource::Centroid) {
        return Ok(sep);
    }
    let comps = g.components();
    let big = comps
        .iter()
        .max_by_key(|c| (c.len(), std::cmp::Reverse(c.members()[0])))
        .unwrap()
        .clone();
    let (tree, table) = g.induced_subgraph(&big)?;
    if tree.m() != tree.n() - 1 {
        return Err(SeparatorError::NotAForest);
    }
    let centroid = table[tree_centroid(&tree)];
    let removed = VertexSet::singleton(centroid);
    let pieces = components_excluding(g, &removed);
    let (a, b) = group_pieces(&pieces, g.n(), alpha).ok_or(SeparatorError::NoBalancedCut)?;
    Ok(Separator::checked(g, removed, a, b, alpha, SeparatorSource::Centroid)?)
}

/// Vertex minimizing the largest remaining piece; the tree is connected.
fn tree_centroid(tree: &Graph) -> usize {
    let n = tree.n();
    if n == 1 {
        return 0;
    }
    // Subtree sizes from an iterative post-order walk rooted at 0.
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in tree.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    let mut subtree = vec![1usize; n];
    for &v in order.iter().rev() {
        if parent[v] != usize::MAX {
            subtree[parent[v]] += subtree[v];
        }
    }
    let mut best = (usize::MAX, 0);
    for v in 0..n {
        let mut largest = n - subtree[v];
        for &w in tree.neighbors(v) {
            if parent[w] == v {
                largest = largest.max(subtree[w]);
            }
        }
        if largest < best.0 {
            best = (largest, v);
        }
    }
    best.1
}

/// Repeatedly removes a non-expanding set together with its neighborhood
/// until less than two thirds of the graph remains; the removed
/// neighborhoods form the separator, the removed sets one side, and the
/// remainder the other. On an `(n/2, eps)`-bounded graph with a complete
/// finder this yields a `(2*eps*n/3, 2/3)`-separator.
pub fn separator_from_nonexpanding(
    g: &Graph,
    eps: Rational,
    finder: &NonexpandingFinder,
) -> Result<Separator, SeparatorError> {
    let n = g.n();
    let alpha = Rational::new(2, 3);
    if n == 0 {
        return Ok(Separator::checked(
            g,
            VertexSet::empty(),
            VertexSet::empty(),
            VertexSet::empty(),
            alpha,
            SeparatorSource::FromExpansion,
        )?);
    }
    let mut current = VertexSet::from_iter(0..n);
    let mut removed_sets = VertexSet::empty();
    let mut removed_neighborhoods = VertexSet::empty();
    loop {
        let (sub, table) = g.induced_subgraph(&current)?;
        let outcome = finder.find(&sub, eps)?;
        let witness = match outcome {
            NonexpandingOutcome::Found(w) => w,
            NonexpandingOutcome::Expander => {
                return Err(SeparatorError::ExpanderObstruction {
                    subgraph: current,
                    proven: true,
                })
            }
            NonexpandingOutcome::Unknown => {
                return Err(SeparatorError::ExpanderObstruction {
                    subgraph: current,
                    proven: false,
                })
            }
        };
        let w_orig = VertexSet::from_iter(witness.set.iter().map(|v| table[v]));
        let nb_orig = VertexSet::from_iter(witness.neighborhood.iter().map(|v| table[v]));
        removed_sets = removed_sets.union(&w_orig);
        removed_neighborhoods = removed_neighborhoods.union(&nb_orig);
        current = VertexSet::from_iter(
            current
                .iter()
                .filter(|&v| !w_orig.contains(v) && !nb_orig.contains(v)),
        );
        if 3 * current.len() < 2 * n {
            break;
        }
    }
    Ok(Separator::checked(
        g,
        removed_neighborhoods,
        removed_sets,
        current,
        alpha,
        SeparatorSource::FromExpansion,
    )?)
}

/// Scans the bags of a valid decomposition for one whose removal leaves
/// components groupable into two balanced sides; such a bag always exists,
/// giving a `(width + 1, 2/3)`-separator.
pub fn separator_from_tree_decomposition(
    g: &Graph,
    td: &TreeDecomposition,
) -> Result<Separator, SeparatorError> {
    validate_tree_decomposition(g, td)?;
    let alpha = Rational::new(2, 3);
    if g.n() == 0 {
        return Ok(Separator::checked(
            g,
            VertexSet::empty(),
            VertexSet::empty(),
            VertexSet::empty(),
            alpha,
            SeparatorSource::FromTreeDecomposition,
        )?);
    }
    for bag in td.bags() {
        let comps = components_excluding(g, bag);
        let Some((a, b)) = group_pieces(&comps, g.n(), alpha) else {
            continue;
        };
        if let Ok(sep) =
            Separator::checked(g, bag.clone(), a, b, alpha, SeparatorSource::FromTreeDecomposition)
        {
            return Ok(sep);
        }
    }
    Err(SeparatorError::NoBalancedCut)
}

/// `6*sqrt(g*n) + 2*sqrt(2*n)`: separation number bound for genus-`g`
/// graphs (the planar bound at `g = 0`).
pub fn separator_bound_genus(n: usize, genus: usize) -> Result<f64, SeparatorError> {
    if n == 0 {
        return Err(SeparatorError::InvalidParameter("n must be at least 1".into()));
    }
    let nf = n as f64;
    Ok(6.0 * (genus as f64 * nf).sqrt() + 2.0 * (2.0 * nf).sqrt())
}

/// `h^(3/2) * sqrt(n)`: separation number bound for graphs excluding a
/// minor on `h` vertices.
pub fn separator_bound_minor(n: usize, minor_order: usize) -> Result<f64, SeparatorError> {
    if n == 0 || minor_order == 0 {
        return Err(SeparatorError::InvalidParameter(
            "need n >= 1 and minor order >= 1".into(),
        ));
    }
    Ok((minor_order as f64).powf(1.5) * (n as f64).sqrt())
}

/// Strategy plus declared size budget handed to the recursive ordering
/// driver. `find` rejects any separator above the budget.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparatorProvider {
    pub strategy: SeparatorStrategy,
    pub s_max: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SeparatorStrategy {
    Exact { limit_n: usize },
    BfsLayer,
    Spectral { iterations: usize, tolerance: f64 },
    Centroid,
}

impl SeparatorProvider {
    pub fn exact(s_max: usize) -> Self {
        SeparatorProvider {
            strategy: SeparatorStrategy::Exact { limit_n: DEFAULT_EXACT_SEPARATOR_LIMIT },
            s_max,
        }
    }

    pub fn bfs(s_max: usize) -> Self {
        SeparatorProvider { strategy: SeparatorStrategy::BfsLayer, s_max }
    }

    pub fn spectral(s_max: usize) -> Self {
        SeparatorProvider {
            strategy: SeparatorStrategy::Spectral { iterations: 500, tolerance: 1e-9 },
            s_max,
        }
    }

    pub fn centroid() -> Self {
        SeparatorProvider { strategy: SeparatorStrategy::Centroid, s_max: 1 }
    }

    pub fn name(&self) -> &'static str {
        match self.strategy {
            SeparatorStrategy::Exact { .. } => "exact",
            SeparatorStrategy::BfsLayer => "bfs",
            SeparatorStrategy::Spectral { .. } => "spectral",
            SeparatorStrategy::Centroid => "centroid",
        }
    }

    pub fn find(&self, g: &Graph, alpha: Rational) -> Result<Separator, SeparatorError> {
        let sep = match self.strategy {
            SeparatorStrategy::Exact { limit_n } => find_separator_exact(g, alpha, limit_n)?,
            SeparatorStrategy::BfsLayer => find_separator_bfs_layer(g, alpha)?,
            SeparatorStrategy::Spectral { iterations, tolerance } => {
                find_separator_spectral(g, alpha, iterations, tolerance)?
            }
            SeparatorStrategy::Centroid => find_separator_centroid(g, alpha)?,
        };
        if sep.size() > self.s_max {
            return Err(SeparatorError::BudgetExceeded { size: sep.size(), cap: self.s_max });
        }
        Ok(sep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::NonexpandingFinder;
    use crate::frac;
    use crate::graph::{generate, Family, Labelling};
    use crate::oracle::{exact_boundedness, exact_separation_number, exact_treewidth};
    use crate::treewidth::td_from_bandwidth_labelling;

    fn gen(f: Family) -> Graph {
        generate(&f, 0).unwrap()
    }

    #[test]
    fn validator_examples() {
        let p3 = gen(Family::Path { n: 3 });
        let sep = Separator::checked(
            &p3,
            VertexSet::singleton(1),
            VertexSet::singleton(0),
            VertexSet::singleton(2),
            frac(2, 3),
            SeparatorSource::Exact,
        );
        assert!(sep.is_ok());

        let k3 = gen(Family::Complete { n: 3 });
        assert_eq!(
            Separator::checked(
                &k3,
                VertexSet::empty(),
                VertexSet::singleton(0),
                VertexSet::from_iter([1, 2]),
                frac(2, 3),
                SeparatorSource::Exact,
            ),
            Err(SeparatorViolation::CrossEdge(0, 1))
        );

        assert_eq!(
            Separator::checked(
                &p3,
                VertexSet::empty(),
                VertexSet::from_iter([0, 1, 2]),
                VertexSet::empty(),
                frac(2, 3),
                SeparatorSource::Exact,
            ),
            Err(SeparatorViolation::SideTooLarge { side: 'A', size: 3, cap: 2 })
        );
    }

    #[test]
    fn exact_on_path_prefers_lexicographically_smallest() {
        let sep = find_separator_exact(&gen(Family::Path { n: 5 }), frac(2, 3), 16).unwrap();
        assert_eq!(sep.size(), 1);
        assert_eq!(sep.separator().members(), &[1]);
    }

    #[test]
    fn exact_on_grid_finds_the_corner_cut() {
        // Cutting both neighbors of a corner isolates it, which already
        // meets the 2/3 balance; no single vertex does.
        let sep = find_separator_exact(&gen(Family::Grid { side: 3 }), frac(2, 3), 16).unwrap();
        assert_eq!(sep.size(), 2);
        assert_eq!(sep.separator().members(), &[1, 3]);
    }

    #[test]
    fn exact_on_complete_graph() {
        let sep = find_separator_exact(&gen(Family::Complete { n: 6 }), frac(2, 3), 16).unwrap();
        assert_eq!(sep.size(), 2);
    }

    #[test]
    fn exact_matches_separation_number_over_induced_subgraphs() {
        for (family, seed) in [
            (Family::Path { n: 6 }, 0),
            (Family::Cycle { n: 6 }, 0),
            (Family::Star { leaves: 5 }, 0),
            (Family::RandomBoundedDegree { n: 7, max_degree: 4 }, 3),
        ] {
            let g = generate(&family, seed).unwrap();
            let s = exact_separation_number(&g, 10).unwrap();
            let mut max_min = 0;
            for mask in 1u64..(1 << g.n()) {
                let set = VertexSet::from_iter((0..g.n()).filter(|&v| mask & (1 << v) != 0));
                let (sub, _) = g.induced_subgraph(&set).unwrap();
                let min_sep = find_separator_exact(&sub, frac(2, 3), 16).unwrap().size();
                max_min = max_min.max(min_sep);
            }
            assert_eq!(max_min, s, "cross-oracle identity failed on {family:?}");
        }
    }

    #[test]
    fn bfs_layer_on_path_and_grid() {
        let sep = find_separator_bfs_layer(&gen(Family::Path { n: 9 }), frac(2, 3)).unwrap();
        assert_eq!(sep.size(), 1);
        assert_eq!(sep.separator().members(), &[4]);

        let side = 4;
        let sep = find_separator_bfs_layer(&gen(Family::Grid { side }), frac(2, 3)).unwrap();
        assert!(sep.size() <= side);
    }

    #[test]
    fn bfs_layer_fails_on_complete_graphs() {
        for n in [3, 5, 8] {
            assert_eq!(
                find_separator_bfs_layer(&gen(Family::Complete { n }), frac(2, 3)),
                Err(SeparatorError::NoBalancedCut)
            );
        }
    }

    #[test]
    fn disconnected_shortcut_and_failure() {
        let two = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let sep = find_separator_bfs_layer(&two, frac(2, 3)).unwrap();
        assert!(sep.separator().is_empty());

        // A large component next to an isolated vertex cannot be grouped.
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for u in 0..6 {
            for v in (u + 1)..6 {
                edges.push((u, v));
            }
        }
        let lopsided = Graph::from_edges(7, &edges).unwrap();
        assert_eq!(
            find_separator_bfs_layer(&lopsided, frac(2, 3)),
            Err(SeparatorError::Disconnected)
        );
    }

    #[test]
    fn spectral_on_two_cliques_and_cycle() {
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in (u + 1)..5 {
                edges.push((u, v));
                edges.push((u + 5, v + 5));
            }
        }
        edges.push((4, 5));
        let g = Graph::from_edges(10, &edges).unwrap();
        let sep = find_separator_spectral(&g, frac(2, 3), 2000, 1e-10).unwrap();
        assert_eq!(sep.size(), 1);
        assert!(sep.separator().members()[0] == 4 || sep.separator().members()[0] == 5);

        let sep = find_separator_spectral(&gen(Family::Cycle { n: 8 }), frac(2, 3), 2000, 1e-10)
            .unwrap();
        assert_eq!(sep.size(), 2);

        assert_eq!(
            find_separator_spectral(&gen(Family::Path { n: 2 }), frac(2, 3), 100, 1e-9),
            Err(SeparatorError::TooSmall { n: 2, need: 3 })
        );
    }

    #[test]
    fn centroid_on_trees() {
        let star = gen(Family::Star { leaves: 6 });
        let sep = find_separator_centroid(&star, frac(2, 3)).unwrap();
        assert_eq!(sep.separator().members(), &[0]);

        let cbt = gen(Family::CompleteBinaryTree { depth: 3 });
        let sep = find_separator_centroid(&cbt, frac(2, 3)).unwrap();
        assert_eq!(sep.size(), 1);

        assert_eq!(
            find_separator_centroid(&gen(Family::Cycle { n: 6 }), frac(2, 3)),
            Err(SeparatorError::NotAForest)
        );
    }

    #[test]
    fn nonexpanding_loop_on_edgeless_graph() {
        let g = Graph::edgeless(6);
        let sep = separator_from_nonexpanding(&g, frac(1, 2), &NonexpandingFinder::default())
            .unwrap();
        assert!(sep.separator().is_empty());
        assert_eq!(sep.side_a().members(), &[0, 1, 2]);
        assert_eq!(sep.side_b().members(), &[3, 4, 5]);
    }

    #[test]
    fn nonexpanding_loop_on_two_cliques() {
        let mut edges = Vec::new();
        for u in 0..10 {
            for v in (u + 1)..10 {
                if (u < 5) == (v < 5) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(10, &edges).unwrap();
        let sep = separator_from_nonexpanding(&g, frac(1, 10), &NonexpandingFinder::default())
            .unwrap();
        assert!(sep.separator().is_empty());
        assert_eq!(sep.side_a().len(), 5);
        assert_eq!(sep.side_b().len(), 5);
    }

    #[test]
    fn nonexpanding_loop_on_long_path() {
        let g = gen(Family::Path { n: 20 });
        let finder = NonexpandingFinder::exact_up_to(32);
        let sep = separator_from_nonexpanding(&g, frac(1, 4), &finder).unwrap();
        assert!(sep.size() <= 3, "|S| = {} above 2/3 * 1/4 * 20", sep.size());
        assert!(sep.side_a().len() <= 13);
        assert!(sep.side_b().len() <= 13);
    }

    #[test]
    fn nonexpanding_loop_reports_expanders() {
        let g = gen(Family::Complete { n: 8 });
        match separator_from_nonexpanding(&g, frac(1, 2), &NonexpandingFinder::default()) {
            Err(SeparatorError::ExpanderObstruction { subgraph, proven }) => {
                assert_eq!(subgraph.len(), 8);
                assert!(proven);
            }
            other => panic!("expected an expander obstruction, got {other:?}"),
        }
    }

    #[test]
    fn from_tree_decomposition_examples() {
        let p5 = gen(Family::Path { n: 5 });
        let td = td_from_bandwidth_labelling(&p5, &Labelling::identity(5), 1).unwrap();
        let sep = separator_from_tree_decomposition(&p5, &td).unwrap();
        assert!(sep.size() <= 2);

        let k5 = gen(Family::Complete { n: 5 });
        let (w, td) = exact_treewidth(&k5, 12).unwrap();
        let sep = separator_from_tree_decomposition(&k5, &td).unwrap();
        assert!(sep.size() <= w + 1);

        // Degenerate single-bag case: both sides end up empty.
        let single = TreeDecomposition::single_bag(&k5);
        let sep = separator_from_tree_decomposition(&k5, &single).unwrap();
        assert_eq!(sep.size(), 5);
        assert!(sep.side_a().is_empty() && sep.side_b().is_empty());

        let cbt = gen(Family::CompleteBinaryTree { depth: 2 });
        let (w, td) = exact_treewidth(&cbt, 12).unwrap();
        assert_eq!(w, 1);
        let sep = separator_from_tree_decomposition(&cbt, &td).unwrap();
        assert!(sep.size() <= 2);
    }

    #[test]
    fn bound_formulas() {
        let planar = separator_bound_genus(100, 0).unwrap();
        assert!((planar - 2.0 * 200f64.sqrt()).abs() < 1e-9);
        let minor = separator_bound_minor(100, 5).unwrap();
        assert!((minor - 111.80339887498948).abs() < 1e-9);
        assert!(separator_bound_genus(0, 1).is_err());
        assert!(separator_bound_minor(5, 0).is_err());
    }

    #[test]
    fn provider_enforces_its_budget() {
        let provider = SeparatorProvider { strategy: SeparatorStrategy::Exact { limit_n: 16 }, s_max: 1 };
        let g = gen(Family::Grid { side: 3 });
        assert_eq!(
            provider.find(&g, frac(2, 3)),
            Err(SeparatorError::BudgetExceeded { size: 2, cap: 1 })
        );
    }

    #[test]
    fn lemma_loop_bound_holds_where_boundedness_certifies() {
        // Wherever the exact oracle certifies that no expander reaches half
        // the graph, the loop must meet its size guarantee.
        for (family, seed) in [
            (Family::Path { n: 12 }, 0),
            (Family::Cycle { n: 12 }, 0),
            (Family::Star { leaves: 9 }, 0),
            (Family::Grid { side: 3 }, 0),
            (Family::RandomBoundedDegree { n: 10, max_degree: 3 }, 5),
        ] {
            let g = generate(&family, seed).unwrap();
            let n = g.n();
            for eps in [frac(1, 4), frac(1, 2)] {
                let (b, _) = exact_boundedness(&g, eps, 14).unwrap();
                if 2 * b >= n {
                    continue;
                }
                let finder = NonexpandingFinder::exact_up_to(32);
                let sep = separator_from_nonexpanding(&g, eps, &finder).unwrap();
                let cap = (2 * *eps.numer() as usize * n) / (3 * *eps.denom() as usize);
                assert!(sep.size() <= cap, "{family:?} eps={eps}: |S|={} > {cap}", sep.size());
            }
        }
    }
}
