//! End-to-end acceptance suite. Each test covers one acceptance criterion
//! at its stated tolerance and prints a single pass line; `cargo test
//! --test acceptance -- --nocapture` shows them all.

use std::time::Instant;

use graphband::expansion::NonexpandingFinder;
use graphband::frac;
use graphband::graph::{
    bandwidth_of_labelling, generate, Family, Graph, VertexSet,
};
use graphband::io::{parse_gr, parse_ordering, parse_td, write_gr, write_ordering, write_td};
use graphband::oracle::{
    exact_bandwidth, exact_boundedness, exact_treewidth,
};
use graphband::ordering::{
    decomposition_ordering, recursive_band_ordering, validate_separation_tree, SprPartition,
};
use graphband::report::{run_inequality_suite, SuiteConfig};
use graphband::separator::{
    separator_from_nonexpanding, separator_from_tree_decomposition, validate_separator,
    SeparatorProvider,
};
use graphband::treewidth::{td_from_separators, validate_tree_decomposition};

/// Deterministic graph corpus shared by the corpus-wide criteria.
fn corpus() -> Vec<(String, Graph)> {
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    let mut add = |name: String, g: Graph| graphs.push((name, g));
    for n in [1, 2, 3, 5, 8, 12] {
        add(format!("path_{n}"), generate(&Family::Path { n }, 0).unwrap());
    }
    for n in [3, 4, 5, 6, 8, 12] {
        add(format!("cycle_{n}"), generate(&Family::Cycle { n }, 0).unwrap());
    }
    for n in [2, 3, 4, 5, 6] {
        add(format!("complete_{n}"), generate(&Family::Complete { n }, 0).unwrap());
    }
    for leaves in [3, 4, 6, 9] {
        add(
            format!("star_{leaves}"),
            generate(&Family::Star { leaves }, 0).unwrap(),
        );
    }
    for side in [2, 3] {
        add(format!("grid_{side}"), generate(&Family::Grid { side }, 0).unwrap());
    }
    for depth in [1, 2, 3] {
        add(
            format!("cbt_{depth}"),
            generate(&Family::CompleteBinaryTree { depth }, 0).unwrap(),
        );
    }
    for n in [2, 5, 9] {
        add(format!("edgeless_{n}"), Graph::edgeless(n));
    }
    for (n, d, seed) in [(6, 3, 1), (8, 3, 2), (8, 4, 3), (10, 3, 4), (10, 4, 5), (12, 3, 6), (12, 4, 7)] {
        add(
            format!("random_{n}_{d}_{seed}"),
            generate(&Family::RandomBoundedDegree { n, max_degree: d }, seed).unwrap(),
        );
    }
    for (n, d, seed) in [(8, 2, 1), (10, 3, 2), (12, 2, 3)] {
        add(
            format!("bipartite_{n}_{d}_{seed}"),
            generate(&Family::RandomBipartiteBoundedDegree { n, max_degree: d }, seed).unwrap(),
        );
    }
    for seed in [1, 2] {
        add(
            format!("near_planar_3_{seed}"),
            generate(&Family::RandomNearPlanar { side: 3 }, seed).unwrap(),
        );
    }
    graphs
}

#[test]
fn criterion_1_inequality_chain_on_random_graphs() {
    let start = Instant::now();
    let config = SuiteConfig { n_min: 5, n_max: 8, samples: 200, max_degree: 4, seed: 0 };
    let report = run_inequality_suite(&config).unwrap();
    assert_eq!(report.graphs, 200);
    for check in &report.checks {
        assert_eq!(check.checked, 200, "{} did not run on every graph", check.name);
    }
    assert!(
        report.all_passed(),
        "inequality violations: {:?}",
        report.failures
    );
    assert!(start.elapsed().as_secs() < 600);
    println!(
        "acceptance 1 (inequality chain, 200 graphs x {} checks): PASS",
        report.checks.len()
    );
}

#[test]
fn criterion_2_known_exact_values() {
    let start = Instant::now();
    let bw = |g: &Graph| exact_bandwidth(g, 12).unwrap().0;
    let tw = |g: &Graph| exact_treewidth(g, 12).unwrap().0;
    assert_eq!(bw(&generate(&Family::Path { n: 8 }, 0).unwrap()), 1);
    assert_eq!(bw(&generate(&Family::Cycle { n: 8 }, 0).unwrap()), 2);
    assert_eq!(bw(&generate(&Family::Complete { n: 6 }, 0).unwrap()), 5);
    assert_eq!(bw(&generate(&Family::Star { leaves: 4 }, 0).unwrap()), 2);
    assert_eq!(bw(&generate(&Family::Grid { side: 3 }, 0).unwrap()), 3);
    assert_eq!(tw(&generate(&Family::CompleteBinaryTree { depth: 2 }, 0).unwrap()), 1);
    assert_eq!(tw(&generate(&Family::Path { n: 9 }, 0).unwrap()), 1);
    assert_eq!(tw(&generate(&Family::Cycle { n: 7 }, 0).unwrap()), 2);
    assert_eq!(tw(&generate(&Family::Complete { n: 5 }, 0).unwrap()), 4);
    assert!(start.elapsed().as_secs() < 60);
    println!("acceptance 2 (known exact values): PASS");
}

/// Partitions for the bucket-ordering criterion: separator choices over
/// the corpus, including the degenerate everything-in-the-separator and
/// empty-separator shapes.
fn sample_partitions(g: &Graph) -> Vec<SprPartition> {
    let n = g.n();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    for b in [3usize, 5] {
        // Everything in the separator: a single middle bucket.
        out.push(
            SprPartition::new(
                VertexSet::from_iter(0..n),
                vec![VertexSet::empty(); b],
                vec![VertexSet::empty(); b],
                0,
            )
            .unwrap(),
        );
        for selector in 0..3u64 {
            let separator: VertexSet = match selector {
                // Empty separator: parts are unions of components.
                0 => VertexSet::empty(),
                // Every third vertex.
                1 => VertexSet::from_iter((0..n).filter(|v| v % 3 == 0)),
                // A BFS ball around vertex 0.
                _ => {
                    let dist = g.multi_source_distances(&VertexSet::singleton(0));
                    VertexSet::from_iter((0..n).filter(|&v| dist[v].is_some_and(|d| d <= 1)))
                }
            };
            let remainder: Vec<usize> = (0..n).filter(|&v| !separator.contains(v)).collect();
            if remainder.is_empty() {
                continue;
            }
            let (sub, table) = g
                .induced_subgraph(&VertexSet::from_iter(remainder.iter().copied()))
                .unwrap();
            let mut parts = vec![Vec::new(); b];
            for (i, comp) in sub.components().iter().enumerate() {
                parts[i % b].extend(comp.iter().map(|v| table[v]));
            }
            let parts: Vec<VertexSet> = parts
                .into_iter()
                .map(VertexSet::from_iter)
                .collect();
            if let Ok(partition) =
                SprPartition::from_separator_and_parts(g, separator, parts, b, None)
            {
                out.push(partition);
            }
        }
    }
    out
}

#[test]
fn criterion_3_bucket_ordering_certificates() {
    let mut runs = 0;
    for (name, g) in corpus() {
        for partition in sample_partitions(&g) {
            let cert = decomposition_ordering(&g, &partition)
                .unwrap_or_else(|e| panic!("{name}: {e}"));
            let bound = cert.guaranteed_bound.unwrap();
            assert!(cert.measured_bandwidth < bound, "{name}: bound violated");
            let buckets = cert.buckets.as_ref().unwrap();
            for (u, v) in g.edges() {
                assert!(
                    buckets.bucket_of[u].abs_diff(buckets.bucket_of[v]) <= 1,
                    "{name}: bucket adjacency violated"
                );
            }
            let cap = partition.separator().len()
                + partition.buffer_total()
                + partition.remote_cap();
            assert!(buckets.sizes.iter().all(|&s| s <= cap), "{name}: bucket size violated");
            runs += 1;
        }
    }
    assert!(runs >= 100, "only {runs} partitions sampled");
    println!("acceptance 3 (bucket ordering certificates, {runs} partitions): PASS");
}

#[test]
fn criterion_4_recursive_ordering_on_a_large_binary_tree() {
    let start = Instant::now();
    let g = generate(&Family::CompleteBinaryTree { depth: 11 }, 0).unwrap();
    let n = g.n();
    assert_eq!(n, 4095);
    assert_eq!(g.max_degree(), 3);
    let cert = recursive_band_ordering(&g, &SeparatorProvider::centroid()).unwrap();
    assert!(!cert.fallback, "run must certify, not fall back");
    let beta = cert.beta.unwrap();
    let bucket_count = beta.floor() as usize;
    assert_eq!(bucket_count, 7);
    let formula = 6.0 * n as f64 / beta;
    assert!(
        (cert.measured_bandwidth as f64) <= formula,
        "measured {} above 6n/beta = {formula:.2}",
        cert.measured_bandwidth
    );
    // Lower bound (n - 1) / diameter; the diameter of this tree is 22
    // (двойной BFS characterizes tree diameters exactly).
    let first = g.multi_source_distances(&VertexSet::singleton(0));
    let far = (0..n).max_by_key(|&v| first[v].unwrap()).unwrap();
    let second = g.multi_source_distances(&VertexSet::singleton(far));
    let diameter = (0..n).map(|v| second[v].unwrap()).max().unwrap();
    assert_eq!(diameter, 22);
    assert!(
        cert.measured_bandwidth * diameter >= n - 1,
        "measured {} below the diameter lower bound",
        cert.measured_bandwidth
    );
    let tree = cert.separation_tree.as_ref().unwrap();
    assert_eq!(validate_separation_tree(tree, bucket_count), Ok(()));
    assert!(tree.leaf_count() <= 7);
    assert!(tree.internal_count() <= 6);
    // The planar-class formula must also sit above the measured value.
    let planar_bound = 15.0 * n as f64 / ((n as f64).ln() / 3f64.ln());
    assert!((cert.measured_bandwidth as f64) <= planar_bound);
    assert!(start.elapsed().as_secs() < 10, "took {:?}", start.elapsed());
    println!(
        "acceptance 4 (recursive ordering, n=4095, measured {} <= {:.1}): PASS",
        cert.measured_bandwidth, formula
    );
}

#[test]
fn criterion_5_nonexpanding_separator_bound() {
    let mut qualifying = 0;
    for (name, g) in corpus() {
        let n = g.n();
        if n > 12 || n == 0 {
            continue;
        }
        for eps in [frac(1, 4), frac(1, 2)] {
            let (b, _) = exact_boundedness(&g, eps, 12).unwrap();
            if 2 * b >= n {
                continue;
            }
            qualifying += 1;
            let finder = NonexpandingFinder::exact_up_to(12);
            let sep = separator_from_nonexpanding(&g, eps, &finder)
                .unwrap_or_else(|e| panic!("{name} eps={eps}: {e}"));
            assert_eq!(validate_separator(&g, &sep), Ok(()));
            let (p, q) = (*eps.numer() as usize, *eps.denom() as usize);
            assert!(
                3 * q * sep.size() <= 2 * p * n,
                "{name} eps={eps}: |S| = {} above 2/3 * eps * n",
                sep.size()
            );
            assert!(3 * sep.side_a().len() <= 2 * n, "{name}: side A too large");
            assert!(3 * sep.side_b().len() <= 2 * n, "{name}: side B too large");
        }
    }
    assert!(qualifying >= 10, "only {qualifying} certified instances");
    println!(
        "acceptance 5 (non-expanding separator bound, {qualifying} certified instances): PASS"
    );
}

#[test]
fn criterion_6_separator_recursion_decompositions() {
    let start = Instant::now();
    let eps = frac(1, 10);
    let finder = NonexpandingFinder::default();
    let mut runs = 0;
    let mut seed = 0;
    while runs < 8 {
        let g = generate(&Family::RandomBoundedDegree { n: 200, max_degree: 4 }, seed).unwrap();
        seed += 1;
        if !g.is_connected() {
            continue;
        }
        runs += 1;
        let (td, b_used) = td_from_separators(&g, eps, &finder, 8).unwrap();
        assert_eq!(validate_tree_decomposition(&g, &td), Ok(()));
        // width <= 2*b_used + 2*eps*n with eps = 1/10, n = 200
        assert!(
            td.width() <= 2 * b_used + 40,
            "seed {}: width {} above 2*{b_used} + 40",
            seed - 1,
            td.width()
        );
    }
    // Soundness against the exact oracle at small sizes.
    for (name, g) in corpus() {
        if g.n() > 10 || g.n() == 0 {
            continue;
        }
        let (td, _) = td_from_separators(&g, frac(1, 4), &finder, 4).unwrap();
        assert_eq!(validate_tree_decomposition(&g, &td), Ok(()));
        let (tw, _) = exact_treewidth(&g, 12).unwrap();
        assert!(td.width() >= tw, "{name}: produced width below the true treewidth");
    }
    assert!(start.elapsed().as_secs() < 120, "took {:?}", start.elapsed());
    println!("acceptance 6 (separator-recursion decompositions, {runs} large runs): PASS");
}

#[test]
fn criterion_7_separators_from_treewidth_witnesses() {
    let mut checked = 0;
    for (name, g) in corpus() {
        if g.n() > 10 || g.n() == 0 {
            continue;
        }
        let (tw, td) = exact_treewidth(&g, 12).unwrap();
        let sep = separator_from_tree_decomposition(&g, &td)
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(validate_separator(&g, &sep), Ok(()));
        assert!(
            sep.size() <= tw + 1,
            "{name}: |S| = {} above treewidth {tw} + 1",
            sep.size()
        );
        checked += 1;
    }
    assert!(checked >= 20);
    println!("acceptance 7 (separators from treewidth witnesses, {checked} graphs): PASS");
}

#[test]
fn criterion_8_format_round_trips() {
    let finder = NonexpandingFinder::default();
    let mut files = 0;
    for (name, g) in corpus() {
        let gr = write_gr(&g);
        assert_eq!(write_gr(&g), gr, "{name}: graph writer unstable");
        let parsed = parse_gr(&gr).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parsed, g, "{name}: graph round trip failed");
        files += 1;

        if g.n() > 0 {
            let (td, _) = td_from_separators(&g, frac(1, 2), &finder, 4).unwrap();
            let td_text = write_td(&td);
            assert_eq!(write_td(&td), td_text, "{name}: decomposition writer unstable");
            let reparsed = parse_td(&td_text, &g).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(reparsed, td, "{name}: decomposition round trip failed");
            files += 1;

            if let Ok((tw, witness_td)) = exact_treewidth(&g, 10) {
                let text = write_td(&witness_td);
                let reparsed = parse_td(&text, &g).unwrap();
                assert_eq!(reparsed, witness_td);
                assert_eq!(reparsed.width(), tw);
                files += 1;
            }

            if let Ok((_, witness)) = exact_bandwidth(&g, 10) {
                let text = write_ordering(&witness);
                assert_eq!(write_ordering(&witness), text);
                let reparsed = parse_ordering(&text, &g).unwrap();
                assert_eq!(reparsed, witness, "{name}: ordering round trip failed");
                assert_eq!(
                    bandwidth_of_labelling(&g, &reparsed).unwrap(),
                    bandwidth_of_labelling(&g, &witness).unwrap()
                );
                files += 1;
            }
        }
    }
    assert!(files >= 100);
    println!("acceptance 8 (format round trips, {files} files): PASS");
}
