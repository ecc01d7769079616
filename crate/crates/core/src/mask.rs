//! Bitmask subset utilities shared by the enumeration-based oracles and
//! the exact separator finder. All of these assume `n <= 63`.

use crate::graph::{Graph, VertexSet};
use crate::Rational;

pub(crate) fn adjacency_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w)))
        .collect()
}

/// Neighbors of `set` inside `universe`, excluding `set` itself.
pub(crate) fn neighborhood_mask(adj: &[u64], universe: u64, set: u64) -> u64 {
    let mut nb = 0u64;
    let mut rest = set;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        nb |= adj[v];
    }
    nb & universe & !set
}

/// Next mask with the same popcount (Gosper's hack).
pub(crate) fn next_same_size(mask: u64) -> u64 {
    let c = mask & mask.wrapping_neg();
    let r = mask + c;
    (((r ^ mask) >> 2) / c) | r
}

pub(crate) fn mask_to_set(mask: u64) -> VertexSet {
    VertexSet::from_iter((0..64).filter(|&v| mask & (1 << v) != 0))
}

/// Connected components of the vertices in `rest`, as masks.
pub(crate) fn components_of_mask(adj: &[u64], mut rest: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while rest != 0 {
        let start = rest.trailing_zeros() as usize;
        let mut comp = 1u64 << start;
        loop {
            let grow = neighborhood_mask(adj, rest, comp);
            if grow == 0 {
                break;
            }
            comp |= grow;
        }
        out.push(comp);
        rest &= !comp;
    }
    out
}

/// `floor(alpha * total)` in exact arithmetic.
pub(crate) fn side_cap(total: usize, alpha: Rational) -> usize {
    let num = *alpha.numer() as i128 * total as i128;
    let den = *alpha.denom() as i128;
    num.div_euclid(den) as usize
}
