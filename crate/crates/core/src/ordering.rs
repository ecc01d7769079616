//! Separator-driven bandwidth orderings.
//!
//! The bucket construction places a partition `V = S + P_1..P_b + R_1..R_b`
//! into `b` buckets so that edges only join equal or adjacent buckets;
//! concatenating the buckets bounds the bandwidth by twice the largest
//! bucket. The recursive driver extracts balanced separators round by
//! round until all parts are small, derives such a partition, and returns
//! a certificate carrying the measured bandwidth, the guaranteed bound,
//! and the validated recursion tree.

use thiserror::Error;

use crate::graph::{bandwidth_of_labelling, Graph, GraphError, Labelling, VertexSet};
use crate::separator::{SeparatorError, SeparatorProvider};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OrderingError {
    #[error("a bucket partition needs at least 3 buckets, got {0}")]
    TooFewBuckets(usize),
    #[error("buffer and remote parts must both have one set per bucket")]
    MismatchedParts,
    #[error("vertex {vertex} is covered {count} times by the partition")]
    NotAPartition { vertex: usize, count: usize },
    #[error("remote part {index} has {size} vertices, above the cap {cap}")]
    RemoteTooLarge { index: usize, size: usize, cap: usize },
    #[error("edge {{{u}, {v}}} joins distinct parts {part_u} and {part_v}")]
    CrossPartEdge { u: usize, v: usize, part_u: usize, part_v: usize },
    #[error("remote vertex {vertex} is at distance {distance} from the separator, below {required}")]
    SeparatorTooClose { vertex: usize, distance: usize, required: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("maximum degree {0} is below 2")]
    MaxDegreeTooSmall(usize),
    #[error("provider budget must be at least 1")]
    ZeroBudget,
    #[error("splitting produced {got} parts, above the bucket count {cap}")]
    TooManyParts { got: usize, cap: usize },
    #[error("bucket invariant broken: {0}")]
    BucketInvariant(String),
    #[error("measured bandwidth {measured} is not below the certified bound {bound}")]
    CertificateViolation { measured: usize, bound: usize },
    #[error("recursion tree invalid: {0}")]
    Tree(#[from] SepTreeViolation),
    #[error(transparent)]
    Provider(#[from] SeparatorError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The `S + P + R` partition driving the bucket construction: a separator,
/// `b` buffer parts whose vertices may sit near the separator, and `b`
/// remote parts that must keep distance at least `floor(b/2)` from it.
/// Parts with different indices may not be joined by an edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SprPartition {
    separator: VertexSet,
    buffers: Vec<VertexSet>,
    remotes: Vec<VertexSet>,
    remote_cap: usize,
}

impl SprPartition {
    pub fn new(
        separator: VertexSet,
        buffers: Vec<VertexSet>,
        remotes: Vec<VertexSet>,
        remote_cap: usize,
    ) -> Result<Self, OrderingError> {
        if buffers.len() != remotes.len() {
            return Err(OrderingError::MismatchedParts);
        }
        if buffers.len() < 3 {
            return Err(OrderingError::TooFewBuckets(buffers.len()));
        }
        Ok(SprPartition { separator, buffers, remotes, remote_cap })
    }

    /// Derives the partition from a separator and pairwise non-adjacent
    /// parts: each part splits into its buffer (distance below
    /// `floor(b/2)` from the separator) and remote remainder. Unreachable
    /// vertices count as infinitely far. `remote_cap` defaults to the
    /// largest remote size.
    pub fn from_separator_and_parts(
        g: &Graph,
        separator: VertexSet,
        parts: Vec<VertexSet>,
        bucket_count: usize,
        remote_cap: Option<usize>,
    ) -> Result<Self, OrderingError> {
        if parts.len() > bucket_count {
            return Err(OrderingError::TooManyParts { got: parts.len(), cap: bucket_count });
        }
        if bucket_count < 3 {
            return Err(OrderingError::TooFewBuckets(bucket_count));
        }
        let dist = g.multi_source_distances(&separator);
        let near = bucket_count / 2;
        let mut buffers = Vec::with_capacity(bucket_count);
        let mut remotes = Vec::with_capacity(bucket_count);
        for part in &parts {
            let buffer = VertexSet::from_iter(
                part.iter().filter(|&v| dist[v].is_some_and(|d| d < near)),
            );
            let remote = VertexSet::from_iter(part.iter().filter(|&v| !buffer.contains(v)));
            buffers.push(buffer);
            remotes.push(remote);
        }
        while buffers.len() < bucket_count {
            buffers.push(VertexSet::empty());
            remotes.push(VertexSet::empty());
        }
        let cap = remote_cap
            .unwrap_or_else(|| remotes.iter().map(VertexSet::len).max().unwrap_or(0));
        SprPartition::new(separator, buffers, remotes, cap)
    }

    pub fn separator(&self) -> &VertexSet {
        &self.separator
    }

    pub fn buffers(&self) -> &[VertexSet] {
        &self.buffers
    }

    pub fn remotes(&self) -> &[VertexSet] {
        &self.remotes
    }

    pub fn bucket_count(&self) -> usize {
        self.buffers.len()
    }

    pub fn remote_cap(&self) -> usize {
        self.remote_cap
    }

    pub fn buffer_total(&self) -> usize {
        self.buffers.iter().map(VertexSet::len).sum()
    }

    /// Checks the partition against its graph: exact cover, remote sizes
    /// within the cap, no edges between distinct parts, and the distance
    /// condition between the separator and every remote vertex.
    pub fn validate(&self, g: &Graph) -> Result<(), OrderingError> {
        let n = g.n();
        let b = self.bucket_count();
        let mut count = vec![0usize; n];
        let mut part_of = vec![usize::MAX; n];
        for v in self.separator.iter() {
            if v >= n {
                return Err(OrderingError::NotAPartition { vertex: v, count: 0 });
            }
            count[v] += 1;
        }
        for (i, part) in self.buffers.iter().zip(&self.remotes).enumerate() {
            for v in part.0.iter().chain(part.1.iter()) {
                if v >= n {
                    return Err(OrderingError::NotAPartition { vertex: v, count: 0 });
                }
                count[v] += 1;
                part_of[v] = i;
            }
        }
        if let Some(v) = count.iter().position(|&c| c != 1) {
            return Err(OrderingError::NotAPartition { vertex: v, count: count[v] });
        }
        for (i, remote) in self.remotes.iter().enumerate() {
            if remote.len() > self.remote_cap {
                return Err(OrderingError::RemoteTooLarge {
                    index: i + 1,
                    size: remote.len(),
                    cap: self.remote_cap,
                });
            }
        }
        for (u, v) in g.edges() {
            let (pu, pv) = (part_of[u], part_of[v]);
            if pu != usize::MAX && pv != usize::MAX && pu != pv {
                return Err(OrderingError::CrossPartEdge { u, v, part_u: pu + 1, part_v: pv + 1 });
            }
        }
        let required = b / 2;
        let dist = g.multi_source_distances(&self.separator);
        for remote in &self.remotes {
            for v in remote.iter() {
                if let Some(d) = dist[v] {
                    if d < required {
                        return Err(OrderingError::SeparatorTooClose {
                            vertex: v,
                            distance: d,
                            required,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Bucket for a buffer vertex of part `part_index` (1-based) at the given
/// distance from the separator (`None` for unreachable): the vertex stays
/// in its part's bucket once far enough, otherwise it is pulled toward the
/// middle bucket by exactly its distance.
pub fn bucket_index(part_index: usize, dist: Option<usize>, bucket_count: usize) -> usize {
    let mid = bucket_count.div_ceil(2);
    match dist {
        None => part_index,
        Some(d) => {
            if d >= mid.abs_diff(part_index) {
                part_index
            } else if part_index < mid {
                mid - d
            } else {
                mid + d
            }
        }
    }
}

/// Per-vertex bucket assignment (1-based indices) with bucket sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BucketAssignment {
    pub bucket_of: Vec<usize>,
    pub sizes: Vec<usize>,
}

/// A produced ordering together with everything needed to check it: the
/// partition used, the measured bandwidth, the `2(|S| + |P| + r)` bound it
/// is certified against, and, for driver runs, the recursion tree and the
/// `6n / beta` formula value. Fallback certificates make no bound claim.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderingCertificate {
    pub labelling: Labelling,
    pub measured_bandwidth: usize,
    pub fallback: bool,
    pub partition: Option<SprPartition>,
    pub buckets: Option<BucketAssignment>,
    pub guaranteed_bound: Option<usize>,
    pub formula_bound: Option<f64>,
    pub beta: Option<f64>,
    pub separation_tree: Option<SeparationTree>,
}

/// Orders the graph bucket by bucket: remote parts sit in their own
/// buckets, the separator in the middle one, buffer vertices as
/// [`bucket_index`] dictates, ascending vertex id inside each bucket. The
/// certificate's measured bandwidth is strictly below
/// `2 * (|S| + |P| + remote_cap)`.
pub fn decomposition_ordering(
    g: &Graph,
    partition: &SprPartition,
) -> Result<OrderingCertificate, OrderingError> {
    let n = g.n();
    if n == 0 {
        return Err(OrderingError::EmptyGraph);
    }
    partition.validate(g)?;
    let b = partition.bucket_count();
    let mid = b.div_ceil(2);
    let dist = g.multi_source_distances(partition.separator());

    let mut bucket_of = vec![0usize; n];
    for (i, remote) in partition.remotes().iter().enumerate() {
        for v in remote.iter() {
            bucket_of[v] = i + 1;
        }
    }
    for v in partition.separator().iter() {
        bucket_of[v] = mid;
    }
    for (i, buffer) in partition.buffers().iter().enumerate() {
        for v in buffer.iter() {
            bucket_of[v] = bucket_index(i + 1, dist[v], b);
        }
    }

    let mut sizes = vec![0usize; b];
    for &bucket in &bucket_of {
        sizes[bucket - 1] += 1;
    }
    let size_cap = partition.separator().len() + partition.buffer_total() + partition.remote_cap();
    if let Some(i) = sizes.iter().position(|&s| s > size_cap) {
        return Err(OrderingError::BucketInvariant(format!(
            "bucket {} holds {} vertices, above |S| + |P| + r = {}",
            i + 1,
            sizes[i],
            size_cap
        )));
    }
    for (u, v) in g.edges() {
        if bucket_of[u].abs_diff(bucket_of[v]) > 1 {
            return Err(OrderingError::BucketInvariant(format!(
                "edge {{{u}, {v}}} spans buckets {} and {}",
                bucket_of[u], bucket_of[v]
            )));
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (bucket_of[v], v));
    let labelling = Labelling::from_order(order).unwrap();
    let measured = bandwidth_of_labelling(g, &labelling)?;
    let bound = 2 * size_cap;
    if measured >= bound {
        return Err(OrderingError::CertificateViolation { measured, bound });
    }
    Ok(OrderingCertificate {
        labelling,
        measured_bandwidth: measured,
        fallback: false,
        partition: Some(partition.clone()),
        buckets: Some(BucketAssignment { bucket_of, sizes }),
        guaranteed_bound: Some(bound),
        formula_bound: None,
        beta: None,
        separation_tree: None,
    })
}

/// The recursion trace of the driver: internal nodes record extracted
/// separator sizes, leaves the final part sizes, all as fractions of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationTree {
    nodes: Vec<SepTreeNode>,
    root: usize,
    total: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SepTreeNode {
    Internal { separator_size: usize, children: [usize; 2] },
    Leaf { part_size: usize },
}

impl SeparationTree {
    pub fn from_nodes(nodes: Vec<SepTreeNode>, root: usize, total: usize) -> Self {
        SeparationTree { nodes, root, total }
    }

    pub fn nodes(&self) -> &[SepTreeNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, SepTreeNode::Leaf { .. }))
            .count()
    }

    pub fn internal_count(&self) -> usize {
        self.nodes.len() - self.leaf_count()
    }

    fn label(&self, index: usize) -> Rational {
        let size = match self.nodes[index] {
            SepTreeNode::Internal { separator_size, .. } => separator_size,
            SepTreeNode::Leaf { part_size } => part_size,
        };
        Rational::new(size as i64, self.total as i64)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SepTreeViolation {
    #[error("node labels sum to {0}, above 1")]
    LabelSumExceedsOne(Rational),
    #[error("node {node}: label {lhs} is below its leaf quota {rhs}")]
    NodeInequality { node: usize, lhs: Rational, rhs: Rational },
    #[error("{leaves} leaves exceed the bucket count {cap}")]
    TooManyLeaves { leaves: usize, cap: usize },
    #[error("{internal} internal nodes but {leaves} leaves; a binary split tree needs leaves - 1")]
    CountMismatch { internal: usize, leaves: usize },
}

/// Checks the accounting that bounds the number of final parts: labels sum
/// to at most one, every internal node together with its leaf children
/// carries at least `|leaf children| / bucket_count` of weight, and the
/// tree is a binary split tree with at most `bucket_count` leaves.
pub fn validate_separation_tree(
    tree: &SeparationTree,
    bucket_count: usize,
) -> Result<(), SepTreeViolation> {
    let total: Rational = (0..tree.nodes.len())
        .map(|i| tree.label(i))
        .fold(Rational::new(0, 1), |acc, l| acc + l);
    if total > Rational::new(1, 1) {
        return Err(SepTreeViolation::LabelSumExceedsOne(total));
    }
    for (i, node) in tree.nodes.iter().enumerate() {
        if let SepTreeNode::Internal { children, .. } = node {
            let leaf_children: Vec<usize> = children
                .iter()
                .copied()
                .filter(|&c| matches!(tree.nodes[c], SepTreeNode::Leaf { .. }))
                .collect();
            if leaf_children.is_empty() {
                continue;
            }
            let lhs = leaf_children
                .iter()
                .fold(tree.label(i), |acc, &c| acc + tree.label(c));
            let rhs = Rational::new(leaf_children.len() as i64, bucket_count as i64);
            if lhs < rhs {
                return Err(SepTreeViolation::NodeInequality { node: i, lhs, rhs });
            }
        }
    }
    let leaves = tree.leaf_count();
    let internal = tree.internal_count();
    if leaves > bucket_count {
        return Err(SepTreeViolation::TooManyLeaves { leaves, cap: bucket_count });
    }
    if internal + 1 != leaves {
        return Err(SepTreeViolation::CountMismatch { internal, leaves });
    }
    Ok(())
}

/// Round-based splitting driver.
///
/// With `beta = log_maxdeg(n / s_max)`: if the maximum degree is 2 or
/// `beta <= 6`, the identity ordering is returned with the fallback flag
/// and no bound claim. Otherwise parts larger than `2n / floor(beta)` are
/// split by provider separators (validated, budget-checked) in creation
/// order until none remain; the separator union, the final parts, and
/// `remote_cap = floor(2n / b)` feed the bucket construction. The
/// recursion tree is validated and the measured bandwidth checked against
/// `6n / beta` before the certificate is returned.
pub fn recursive_band_ordering(
    g: &Graph,
    provider: &SeparatorProvider,
) -> Result<OrderingCertificate, OrderingError> {
    let n = g.n();
    if n == 0 {
        return Err(OrderingError::EmptyGraph);
    }
    let delta = g.max_degree();
    if delta < 2 {
        return Err(OrderingError::MaxDegreeTooSmall(delta));
    }
    if provider.s_max == 0 {
        return Err(OrderingError::ZeroBudget);
    }
    let beta = ((n as f64).ln() - (provider.s_max as f64).ln()) / (delta as f64).ln();
    // Conservative guard band: ties fall back rather than risk a wrong
    // non-fallback claim.
    if delta == 2 || beta <= 6.0 + 1e-9 {
        let labelling = Labelling::identity(n);
        let measured = bandwidth_of_labelling(g, &labelling)?;
        return Ok(OrderingCertificate {
            labelling,
            measured_bandwidth: measured,
            fallback: true,
            partition: None,
            buckets: None,
            guaranteed_bound: None,
            formula_bound: None,
            beta: Some(beta),
            separation_tree: None,
        });
    }
    let b = beta.floor() as usize;
    let alpha = Rational::new(2, 3);

    // Worklist in creation order; a part is final once |part| * b <= 2n.
    let mut nodes: Vec<Option<SepTreeNode>> = vec![None];
    let mut queue = std::collections::VecDeque::from([(VertexSet::from_iter(0..n), 0usize)]);
    let mut separator_union = VertexSet::empty();
    let mut final_parts: Vec<VertexSet> = Vec::new();
    while let Some((part, slot)) = queue.pop_front() {
        if part.len() * b <= 2 * n {
            nodes[slot] = Some(SepTreeNode::Leaf { part_size: part.len() });
            final_parts.push(part);
            continue;
        }
        let (s, a, side_b) = if part.len() == n {
            let sep = provider.find(g, alpha)?;
            (sep.separator().clone(), sep.side_a().clone(), sep.side_b().clone())
        } else {
            let (sub, table) = g.induced_subgraph(&part)?;
            let local = provider.find(&sub, alpha)?;
            let lift = |set: &VertexSet| VertexSet::from_iter(set.iter().map(|v| table[v]));
            (lift(local.separator()), lift(local.side_a()), lift(local.side_b()))
        };
        separator_union = separator_union.union(&s);
        let left = nodes.len();
        nodes.push(None);
        let right = nodes.len();
        nodes.push(None);
        nodes[slot] = Some(SepTreeNode::Internal {
            separator_size: s.len(),
            children: [left, right],
        });
        queue.push_back((a, left));
        queue.push_back((side_b, right));
    }
    if final_parts.len() > b {
        return Err(OrderingError::TooManyParts { got: final_parts.len(), cap: b });
    }
    let tree = SeparationTree::from_nodes(
        nodes.into_iter().map(Option::unwrap).collect(),
        0,
        n,
    );
    validate_separation_tree(&tree, b)?;

    let partition = SprPartition::from_separator_and_parts(
        g,
        separator_union,
        final_parts,
        b,
        Some(2 * n / b),
    )?;
    let mut certificate = decomposition_ordering(g, &partition)?;
    let formula = 6.0 * n as f64 / beta;
    if certificate.measured_bandwidth as f64 > formula {
        return Err(OrderingError::CertificateViolation {
            measured: certificate.measured_bandwidth,
            bound: formula.floor() as usize,
        });
    }
    certificate.formula_bound = Some(formula);
    certificate.beta = Some(beta);
    certificate.separation_tree = Some(tree);
    Ok(certificate)
}

/// `6n / log_d(n / s)` with `d = max(2, maxdeg)`; infinite when the
/// logarithm is not positive (no claim).
pub fn bandwidth_bound_formula(n: usize, max_degree: usize, separation: usize) -> f64 {
    scaled_log_bound(6.0, n, max_degree, separation as f64)
}

/// `15n / log_d(n)`: the planar bandwidth bound.
pub fn bandwidth_bound_planar(n: usize, max_degree: usize) -> f64 {
    scaled_log_bound(15.0, n, max_degree, 1.0)
}

/// `15n / log_d(n / genus)` for graphs of the given positive genus.
pub fn bandwidth_bound_genus(n: usize, max_degree: usize, genus: usize) -> f64 {
    if genus == 0 {
        return f64::INFINITY;
    }
    scaled_log_bound(15.0, n, max_degree, genus as f64)
}

/// `12n / log_d(n / h^3)` for graphs excluding a minor on `h` vertices.
pub fn bandwidth_bound_minor(n: usize, max_degree: usize, minor_order: usize) -> f64 {
    if minor_order == 0 {
        return f64::INFINITY;
    }
    let h = minor_order as f64;
    scaled_log_bound(12.0, n, max_degree, h * h * h)
}

fn scaled_log_bound(constant: f64, n: usize, max_degree: usize, divisor: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    if divisor <= 0.0 {
        return f64::INFINITY;
    }
    let d = max_degree.max(2) as f64;
    let log = (n as f64 / divisor).ln() / d.ln();
    if log <= 0.0 {
        return f64::INFINITY;
    }
    constant * n as f64 / log
}

/// Classical BFS level ordering, used only as a comparison baseline in
/// reports: vertices by (BFS level from a smallest-degree vertex, id),
/// components in sequence.
pub fn bfs_level_ordering(g: &Graph) -> Labelling {
    let n = g.n();
    let start = (0..n).min_by_key(|&v| (g.degree(v), v));
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    if let Some(start) = start {
        let mut roots = vec![start];
        roots.extend((0..n).filter(|&v| v != start));
        for root in roots {
            if placed[root] {
                continue;
            }
            let dist = g.multi_source_distances(&VertexSet::singleton(root));
            let mut level: Vec<usize> = (0..n).filter(|&v| !placed[v] && dist[v].is_some()).collect();
            level.sort_by_key(|&v| (dist[v].unwrap(), v));
            for v in level {
                placed[v] = true;
                order.push(v);
            }
        }
    }
    Labelling::from_order(order).unwrap()
}
