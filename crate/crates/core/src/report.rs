//! Closed-form bound calculators, the budget arithmetic behind the
//! sublinear equivalences, per-graph report assembly with pass/fail
//! inequality verdicts, and the seeded self-test suite.

use thiserror::Error;

use crate::expansion::{boundedness_bounds, NonexpandingFinder, UpperSource};
use crate::graph::{
    degree_lower_bound, diameter_lower_bound, generate, Family, Graph,
};
use crate::io::{
    BoundKind, Comparison, InequalityEntry, ParameterEntry, ReportDocument, ReportValue, Verdict,
};
use crate::oracle::{
    exact_bandwidth, exact_boundedness, exact_separation_number, exact_treewidth, OracleError,
    DEFAULT_BANDWIDTH_LIMIT, DEFAULT_BOUNDEDNESS_LIMIT, DEFAULT_SEPARATION_LIMIT,
    DEFAULT_TREEWIDTH_LIMIT,
};
use crate::ordering::{
    bandwidth_bound_formula, bandwidth_bound_genus, bandwidth_bound_minor, bandwidth_bound_planar,
    bfs_level_ordering, recursive_band_ordering, validate_separation_tree,
};
use crate::separator::{separator_bound_genus, separator_bound_minor, SeparatorProvider};
use crate::treewidth::td_from_separators;
use crate::{frac, Rational};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("epsilon must be a positive rational")]
    InvalidEpsilon,
    #[error("target budget must be positive")]
    InvalidBudget,
    #[error("this direction needs the maximum degree")]
    MissingMaxDegree,
    #[error("this direction needs epsilon")]
    MissingEpsilon,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// `ceil(2 * bandwidth / eps)`: the boundedness bound implied by a
/// bandwidth bound.
pub fn boundedness_from_bandwidth(bandwidth: usize, eps: Rational) -> Result<usize, BoundsError> {
    let (p, q) = (*eps.numer(), *eps.denom());
    if p <= 0 || q <= 0 {
        return Err(BoundsError::InvalidEpsilon);
    }
    Ok(((2 * bandwidth as u128 * q as u128).div_ceil(p as u128)) as usize)
}

/// `treewidth + 1`: the separation number bound implied by a treewidth
/// bound.
pub fn separation_from_treewidth(treewidth: usize) -> usize {
    treewidth + 1
}

/// The four implications of the sublinear equivalence, named by
/// hypothesis and conclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceDirection {
    TreewidthToSeparation,
    SeparationToBandwidth,
    BandwidthToBoundedness,
    BoundednessToTreewidth,
}

/// What the source parameter must be for the target budget to follow, and
/// from which vertex count on.
#[derive(Debug, Clone, PartialEq)]
pub struct BudgetTransfer {
    pub source_beta: f64,
    pub epsilon: Option<f64>,
    pub threshold_rule: String,
}

/// The literal constant map of the equivalence proof: given the budget
/// demanded for the conclusion, returns the budget required of the
/// hypothesis and the vertex-count threshold rule.
pub fn equivalence_budgets(
    direction: EquivalenceDirection,
    target_beta: f64,
    max_degree: Option<usize>,
    eps: Option<f64>,
) -> Result<BudgetTransfer, BoundsError> {
    if !(target_beta > 0.0) {
        return Err(BoundsError::InvalidBudget);
    }
    match direction {
        EquivalenceDirection::TreewidthToSeparation => Ok(BudgetTransfer {
            source_beta: target_beta / 2.0,
            epsilon: None,
            threshold_rule: format!("n >= max(n_treewidth, {})", 2.0 / target_beta),
        }),
        EquivalenceDirection::SeparationToBandwidth => {
            let delta = max_degree.ok_or(BoundsError::MissingMaxDegree)?;
            let d = delta.max(2) as f64;
            Ok(BudgetTransfer {
                source_beta: d.powf(-6.0 / target_beta),
                epsilon: None,
                threshold_rule: "n >= n_separation".into(),
            })
        }
        EquivalenceDirection::BandwidthToBoundedness => {
            let eps = eps.ok_or(BoundsError::MissingEpsilon)?;
            if !(eps > 0.0) {
                return Err(BoundsError::InvalidEpsilon);
            }
            Ok(BudgetTransfer {
                source_beta: eps * target_beta / 2.0,
                epsilon: None,
                threshold_rule: "n >= n_bandwidth".into(),
            })
        }
        EquivalenceDirection::BoundednessToTreewidth => Ok(BudgetTransfer {
            source_beta: target_beta / 4.0,
            epsilon: Some(target_beta / 4.0),
            threshold_rule: "n >= n_boundedness".into(),
        }),
    }
}

/// `ceil(((r - 1) / r + gamma) * n)`: the minimum-degree threshold above
/// which an n-vertex host contains every suitable r-chromatic bounded
/// degree graph on n vertices.
pub fn universality_min_degree(
    chromatic_number: usize,
    gamma: Rational,
    n: usize,
) -> Result<usize, BoundsError> {
    let r = chromatic_number;
    if r < 2 {
        return Err(BoundsError::InvalidParameter("chromatic number must be at least 2".into()));
    }
    let (p, q) = (*gamma.numer(), *gamma.denom());
    if p <= 0 || q <= 0 {
        return Err(BoundsError::InvalidParameter("gamma must be positive".into()));
    }
    // gamma < 1/r, exactly
    if (p as i128) * (r as i128) >= q as i128 {
        return Err(BoundsError::InvalidParameter("gamma must be below 1/r".into()));
    }
    let num = n as i128 * ((r as i128 - 1) * q as i128 + p as i128 * r as i128);
    let den = r as i128 * q as i128;
    Ok(((num + den - 1) / den) as usize)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportConfig {
    /// Raise the oracle guards to their hard caps instead of the defaults.
    pub full_exact: bool,
    /// Boundedness parameter used for the expansion entries and checks.
    pub eps: Rational,
    pub assume_planar: bool,
    pub genus: Option<usize>,
    pub minor_order: Option<usize>,
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig {
            full_exact: false,
            eps: frac(1, 2),
            assume_planar: false,
            genus: None,
            minor_order: None,
        }
    }
}

/// Best knowledge about one quantity, for inequality judgements.
#[derive(Debug, Clone, Copy, Default)]
struct SideInfo {
    exact: Option<Rational>,
    upper: Option<Rational>,
    lower: Option<Rational>,
}

impl SideInfo {
    fn map(&self, f: impl Fn(Rational) -> Rational) -> SideInfo {
        // Only valid for monotone nondecreasing maps.
        SideInfo {
            exact: self.exact.map(&f),
            upper: self.upper.map(&f),
            lower: self.lower.map(&f),
        }
    }

    fn best_upper(&self) -> Option<Rational> {
        self.exact.or(self.upper)
    }

    fn best_lower(&self) -> Option<Rational> {
        self.exact.or(self.lower)
    }

    fn display_value(&self) -> Option<ReportValue> {
        self.exact
            .or(self.upper)
            .or(self.lower)
            .map(|r| {
                if r.is_integer() {
                    ReportValue::Int(r.to_integer())
                } else {
                    ReportValue::Frac(r)
                }
            })
    }
}

/// A verdict is `pass` only when the small side is exact or upper-bounded
/// and the large side exact or lower-bounded; `fail` needs the reverse
/// certification. Anything else is recorded but not decided.
fn judge(name: &str, lhs: &SideInfo, rhs: &SideInfo) -> InequalityEntry {
    let (verdict, comparison, note) = match (lhs.exact, rhs.exact) {
        (Some(a), Some(b)) => (
            if a <= b { Verdict::Pass } else { Verdict::Fail },
            Comparison::Exact,
            None,
        ),
        _ => {
            let confirmed = matches!(
                (lhs.best_upper(), rhs.best_lower()),
                (Some(a), Some(b)) if a <= b
            );
            let refuted = matches!(
                (lhs.best_lower(), rhs.best_upper()),
                (Some(a), Some(b)) if a > b
            );
            if confirmed {
                (Verdict::Pass, Comparison::Bounds, None)
            } else if refuted {
                (Verdict::Fail, Comparison::Bounds, None)
            } else {
                let consistent = matches!(
                    (lhs.display_value(), rhs.display_value()),
                    (Some(_), Some(_))
                );
                let note = if consistent {
                    "consistent with the available one-sided bounds, not conclusive"
                } else {
                    "missing input"
                };
                (Verdict::NotEvaluated, Comparison::Bounds, Some(note.to_string()))
            }
        }
    };
    InequalityEntry {
        name: name.to_string(),
        verdict,
        comparison,
        lhs: lhs.display_value(),
        rhs: rhs.display_value(),
        note,
    }
}

/// Assembles the per-graph report: exact parameter values where the size
/// guards allow, certified bounds otherwise, closed-form formula bounds
/// under user-asserted hypotheses, and verdicts for every applicable
/// inequality. Component failures degrade to missing entries, never abort.
pub fn build_report(g: &Graph, config: &ReportConfig) -> ReportDocument {
    let mut doc = ReportDocument::for_graph(g);
    let n = g.n();
    let eps = config.eps;
    let eps_f = Rational::new(*eps.numer(), *eps.denom());

    let (bw_limit, tw_limit, sep_limit, bdd_limit) = if config.full_exact {
        (16, 18, 14, 16)
    } else {
        (
            DEFAULT_BANDWIDTH_LIMIT,
            DEFAULT_TREEWIDTH_LIMIT,
            DEFAULT_SEPARATION_LIMIT,
            DEFAULT_BOUNDEDNESS_LIMIT,
        )
    };

    let push = |doc: &mut ReportDocument, entry: Result<ParameterEntry, _>| {
        if let Ok(entry) = entry {
            doc.parameters.push(entry);
        }
    };

    // Unconditional lower bounds for the bandwidth.
    let mut bandwidth = SideInfo::default();
    let degree_lb = degree_lower_bound(g);
    bandwidth.lower = Some(Rational::from_integer(degree_lb as i64));
    push(
        &mut doc,
        ParameterEntry::new(
            "bandwidth_lower_degree",
            BoundKind::Lower,
            ReportValue::Int(degree_lb as i64),
            "formula:ceil(max_degree/2)",
        ),
    );
    if let Ok(diam_lb) = diameter_lower_bound(g) {
        bandwidth.lower = bandwidth.lower.max(Some(diam_lb));
        push(
            &mut doc,
            ParameterEntry::new(
                "bandwidth_lower_diameter",
                BoundKind::Lower,
                ReportValue::Frac(diam_lb),
                "formula:(n-1)/diameter",
            ),
        );
    }

    match exact_bandwidth(g, bw_limit) {
        Ok((value, _)) => {
            bandwidth.exact = Some(Rational::from_integer(value as i64));
            push(
                &mut doc,
                ParameterEntry::new(
                    "bandwidth",
                    BoundKind::Exact,
                    ReportValue::Int(value as i64),
                    "oracle:branch-and-bound",
                ),
            );
        }
        Err(_) => {
            let mut best: Option<(usize, &str)> = None;
            if n > 0 {
                let level = bfs_level_ordering(g);
                if let Ok(measured) = crate::graph::bandwidth_of_labelling(g, &level) {
                    best = Some((measured, "ordering:bfs-level"));
                }
            }
            for provider in driver_providers(g) {
                if let Ok(cert) = recursive_band_ordering(g, &provider) {
                    if !cert.fallback
                        && best.is_none_or(|(b, _)| cert.measured_bandwidth < b)
                    {
                        best = Some((cert.measured_bandwidth, "ordering:separator-driver"));
                        if let Some(tree) = &cert.separation_tree {
                            let b = cert.beta.unwrap_or(7.0).floor() as usize;
                            let valid = validate_separation_tree(tree, b).is_ok();
                            doc.inequalities.push(InequalityEntry {
                                name: "separation_tree_valid".into(),
                                verdict: if valid { Verdict::Pass } else { Verdict::Fail },
                                comparison: Comparison::Exact,
                                lhs: Some(ReportValue::Int(tree.leaf_count() as i64)),
                                rhs: Some(ReportValue::Int(b as i64)),
                                note: Some("leaves vs bucket count".into()),
                            });
                        }
                        if let Some(bound) = cert.guaranteed_bound {
                            doc.inequalities.push(InequalityEntry {
                                name: "ordering_bandwidth_below_bucket_bound".into(),
                                verdict: if cert.measured_bandwidth < bound {
                                    Verdict::Pass
                                } else {
                                    Verdict::Fail
                                },
                                comparison: Comparison::Exact,
                                lhs: Some(ReportValue::Int(cert.measured_bandwidth as i64)),
                                rhs: Some(ReportValue::Int(bound as i64)),
                                note: Some("strict inequality required".into()),
                            });
                        }
                    }
                }
            }
            if let Some((value, source)) = best {
                bandwidth.upper = Some(Rational::from_integer(value as i64));
                push(
                    &mut doc,
                    ParameterEntry::new(
                        "bandwidth",
                        BoundKind::Upper,
                        ReportValue::Int(value as i64),
                        source,
                    ),
                );
            }
        }
    }

    let mut treewidth = SideInfo::default();
    match exact_treewidth(g, tw_limit) {
        Ok((value, _)) => {
            treewidth.exact = Some(Rational::from_integer(value as i64));
            push(
                &mut doc,
                ParameterEntry::new(
                    "treewidth",
                    BoundKind::Exact,
                    ReportValue::Int(value as i64),
                    "oracle:subset-dp",
                ),
            );
        }
        Err(_) => {
            let mut best: Option<(usize, &str)> = None;
            if let Ok((td, _)) = td_from_separators(g, eps, &NonexpandingFinder::default(), 8) {
                best = Some((td.width(), "decomposition:separator-recursion"));
            }
            if let Some(bw_up) = bandwidth.upper {
                let w = bw_up.to_integer() as usize;
                if best.is_none_or(|(b, _)| w < b) {
                    best = Some((w, "decomposition:sliding-window"));
                }
            }
            if let Some((value, source)) = best {
                treewidth.upper = Some(Rational::from_integer(value as i64));
                push(
                    &mut doc,
                    ParameterEntry::new(
                        "treewidth",
                        BoundKind::Upper,
                        ReportValue::Int(value as i64),
                        source,
                    ),
                );
            }
        }
    }

    let mut separation = SideInfo::default();
    match exact_separation_number(g, sep_limit) {
        Ok(value) => {
            separation.exact = Some(Rational::from_integer(value as i64));
            push(
                &mut doc,
                ParameterEntry::new(
                    "separation_number",
                    BoundKind::Exact,
                    ReportValue::Int(value as i64),
                    "oracle:subset-enumeration",
                ),
            );
        }
        Err(_) => {
            if let Some(tw_up) = treewidth.best_upper() {
                let value = separation_from_treewidth(tw_up.to_integer() as usize);
                separation.upper = Some(Rational::from_integer(value as i64));
                push(
                    &mut doc,
                    ParameterEntry::new(
                        "separation_number",
                        BoundKind::Upper,
                        ReportValue::Int(value as i64),
                        "formula:treewidth-plus-one",
                    ),
                );
            }
        }
    }

    let mut boundedness = SideInfo::default();
    if n <= bdd_limit {
        if let Ok((value, _)) = exact_boundedness(g, eps, bdd_limit) {
            boundedness.exact = Some(Rational::from_integer(value as i64));
            push(
                &mut doc,
                ParameterEntry::new(
                    "boundedness",
                    BoundKind::Exact,
                    ReportValue::Int(value as i64),
                    "oracle:subset-enumeration",
                ),
            );
        }
    } else if let Ok(bounds) = boundedness_bounds(
        g,
        eps,
        bandwidth.best_upper().map(|r| r.to_integer() as usize),
    ) {
        boundedness.lower = Some(Rational::from_integer(bounds.lower as i64));
        boundedness.upper = Some(Rational::from_integer(bounds.upper as i64));
        push(
            &mut doc,
            ParameterEntry::new(
                "boundedness",
                BoundKind::Lower,
                ReportValue::Int(bounds.lower as i64),
                "witness:verified-expander",
            ),
        );
        let source = match bounds.upper_source {
            UpperSource::ExactOracle => "oracle:subset-enumeration",
            UpperSource::BandwidthFormula => "formula:2-bandwidth-over-eps",
            UpperSource::TrivialVertexCount => "formula:vertex-count",
        };
        push(
            &mut doc,
            ParameterEntry::new(
                "boundedness",
                BoundKind::Upper,
                ReportValue::Int(bounds.upper as i64),
                source,
            ),
        );
    }

    // Closed-form bounds under user-asserted hypotheses.
    if let Some(s) = separation.best_upper() {
        let v = bandwidth_bound_formula(n, g.max_degree(), s.to_integer().max(1) as usize);
        if v.is_finite() {
            push(
                &mut doc,
                ParameterEntry::new(
                    "bandwidth_upper_separation_formula",
                    BoundKind::Upper,
                    ReportValue::Real(v),
                    "formula:6n/log_d(n/s)",
                ),
            );
        }
    }
    if config.assume_planar || config.genus == Some(0) {
        let v = bandwidth_bound_planar(n, g.max_degree());
        if v.is_finite() {
            push(
                &mut doc,
                ParameterEntry::new(
                    "bandwidth_upper_planar_formula",
                    BoundKind::Upper,
                    ReportValue::Real(v),
                    "formula:15n/log_d(n), assuming planarity",
                ),
            );
        }
        if let Ok(v) = separator_bound_genus(n, 0) {
            push(
                &mut doc,
                ParameterEntry::new(
                    "separation_upper_planar_formula",
                    BoundKind::Upper,
                    ReportValue::Real(v),
                    "formula:2*sqrt(2n), assuming planarity",
                ),
            );
        }
    }
    if let Some(genus) = config.genus.filter(|&gv| gv > 0) {
        let v = bandwidth_bound_genus(n, g.max_degree(), genus);
        if v.is_finite() {
            push(
                &mut doc,
                ParameterEntry::new(
                    "bandwidth_upper_genus_formula",
                    BoundKind::Upper,
                    ReportValue::Real(v),
                    "formula:15n/log_d(n/g), assuming the stated genus",
                ),
            );
        }
        if let Ok(v) = separator_bound_genus(n, genus) {
            push(
                &mut doc,
                ParameterEntry::new(
                    "separation_upper_genus_formula",
                    BoundKind::Upper,
                    ReportValue::Real(v),
                    "formula:6*sqrt(gn)+2*sqrt(2n), assuming the stated genus",
                ),
            );
        }
    }
    if let Some(h) = config.minor_order.filter(|&h| h > 0) {
        let v = bandwidth_bound_minor(n, g.max_degree(), h);
        if v.is_finite() {
            push(
                &mut doc,
                ParameterEntry::new(
                    "bandwidth_upper_minor_formula",
                    BoundKind::Upper,
                    ReportValue::Real(v),
                    "formula:12n/log_d(n/h^3), assuming the forbidden minor",
                ),
            );
        }
        if let Ok(v) = separator_bound_minor(n, h) {
            push(
                &mut doc,
                ParameterEntry::new(
                    "separation_upper_minor_formula",
                    BoundKind::Upper,
                    ReportValue::Real(v),
                    "formula:h^(3/2)*sqrt(n), assuming the forbidden minor",
                ),
            );
        }
    }

    // Inequality chain.
    let one = Rational::from_integer(1);
    doc.inequalities.push(judge(
        "separation_le_treewidth_plus_one",
        &separation,
        &treewidth.map(|t| t + one),
    ));
    doc.inequalities.push(judge("treewidth_le_bandwidth", &treewidth, &bandwidth));
    let two = Rational::from_integer(2);
    doc.inequalities.push(judge(
        "boundedness_le_bandwidth_formula",
        &boundedness,
        &bandwidth.map(|b| (two * b / eps_f).ceil()),
    ));
    let two_eps_n = two * eps_f * Rational::from_integer(n as i64);
    doc.inequalities.push(judge(
        "treewidth_le_boundedness_formula",
        &treewidth,
        &boundedness.map(|b| two * b + two_eps_n),
    ));
    doc
}

fn driver_providers(g: &Graph) -> Vec<SeparatorProvider> {
    let mut providers = Vec::new();
    let comps = g.components().len();
    if g.m() + comps == g.n() {
        providers.push(SeparatorProvider::centroid());
    }
    let guess = (2.0 * (2.0 * g.n() as f64).sqrt()).ceil().max(1.0) as usize;
    providers.push(SeparatorProvider::bfs(guess));
    providers
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub samples: usize,
    pub max_degree: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { n_min: 5, n_max: 8, samples: 200, max_degree: 4, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckCounter {
    pub name: String,
    pub checked: usize,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub graphs: usize,
    pub checks: Vec<CheckCounter>,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs the inequality chain over seeded random connected graphs with the
/// configured size and degree bound, comparing exact oracle values only:
/// separation vs treewidth, treewidth vs bandwidth, boundedness vs the
/// bandwidth formula at eps 1/2 and 1, and treewidth vs the boundedness
/// formula at eps 1/4 and 1/2.
pub fn run_inequality_suite(config: &SuiteConfig) -> Result<SuiteReport, OracleError> {
    let span = config.n_max.saturating_sub(config.n_min) + 1;
    let mut checks: Vec<CheckCounter> = [
        "separation_le_treewidth_plus_one",
        "treewidth_le_bandwidth",
        "boundedness_le_bandwidth_formula_eps_1/2",
        "boundedness_le_bandwidth_formula_eps_1",
        "treewidth_le_boundedness_formula_eps_1/4",
        "treewidth_le_boundedness_formula_eps_1/2",
    ]
    .iter()
    .map(|&name| CheckCounter { name: name.to_string(), checked: 0, violations: 0 })
    .collect();
    let mut failures = Vec::new();
    let mut graphs = 0;
    let mut attempt = 0u64;
    while graphs < config.samples && attempt < 1000 * config.samples as u64 {
        let n = config.n_min + (attempt as usize % span);
        let seed = config.seed.wrapping_add(attempt);
        attempt += 1;
        if (n * config.max_degree) % 2 != 0 {
            continue;
        }
        let Ok(g) = generate(&Family::RandomBoundedDegree { n, max_degree: config.max_degree }, seed)
        else {
            continue;
        };
        if !g.is_connected() {
            continue;
        }
        graphs += 1;
        let describe = |detail: &str| format!("n={n} seed={seed}: {detail}");

        let (bw, _) = exact_bandwidth(&g, n)?;
        let (tw, _) = exact_treewidth(&g, n)?;
        let sep = exact_separation_number(&g, n)?;
        let (bdd_quarter, _) = exact_boundedness(&g, frac(1, 4), n)?;
        let (bdd_half, _) = exact_boundedness(&g, frac(1, 2), n)?;
        let (bdd_one, _) = exact_boundedness(&g, frac(1, 1), n)?;

        let mut record = |index: usize, holds: bool, detail: String| {
            checks[index].checked += 1;
            if !holds {
                checks[index].violations += 1;
                failures.push(describe(&detail));
            }
        };
        record(0, sep <= tw + 1, format!("separation {sep} > treewidth {tw} + 1"));
        record(1, tw <= bw, format!("treewidth {tw} > bandwidth {bw}"));
        let formula_half = boundedness_from_bandwidth(bw, frac(1, 2)).unwrap();
        record(
            2,
            bdd_half <= formula_half,
            format!("boundedness(1/2) {bdd_half} > ceil(2*{bw}/(1/2)) = {formula_half}"),
        );
        let formula_one = boundedness_from_bandwidth(bw, frac(1, 1)).unwrap();
        record(
            3,
            bdd_one <= formula_one,
            format!("boundedness(1) {bdd_one} > ceil(2*{bw}/1) = {formula_one}"),
        );
        // tw <= 2*b + 2*eps*n in integers: eps = 1/4 gives 2*tw <= 4*b + n,
        // eps = 1/2 gives tw <= 2*b + n.
        record(
            4,
            2 * tw <= 4 * bdd_quarter + n,
            format!("treewidth {tw} > 2*{bdd_quarter} + n/2"),
        );
        record(
            5,
            tw <= 2 * bdd_half + n,
            format!("treewidth {tw} > 2*{bdd_half} + n"),
        );
    }
    Ok(SuiteReport { graphs, checks, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::write_report;

    #[test]
    fn boundedness_formula_values() {
        assert_eq!(boundedness_from_bandwidth(1, frac(1, 1)), Ok(2));
        assert_eq!(boundedness_from_bandwidth(5, frac(1, 2)), Ok(20));
        assert!(boundedness_from_bandwidth(3, frac(-1, 2)).is_err());
    }

    #[test]
    fn separation_formula_values() {
        assert_eq!(separation_from_treewidth(0), 1);
        assert_eq!(separation_from_treewidth(4), 5);
    }

    #[test]
    fn budget_transfers_match_the_constant_map() {
        let t = equivalence_budgets(EquivalenceDirection::TreewidthToSeparation, 0.1, None, None)
            .unwrap();
        assert!((t.source_beta - 0.05).abs() < 1e-12);
        assert_eq!(t.threshold_rule, "n >= max(n_treewidth, 20)");

        let t = equivalence_budgets(EquivalenceDirection::SeparationToBandwidth, 0.5, Some(3), None)
            .unwrap();
        assert!((t.source_beta - 3f64.powi(-12)).abs() < 1e-18);

        let t = equivalence_budgets(EquivalenceDirection::BoundednessToTreewidth, 0.2, None, None)
            .unwrap();
        assert!((t.source_beta - 0.05).abs() < 1e-12);
        assert_eq!(t.epsilon, Some(0.05));

        assert_eq!(
            equivalence_budgets(EquivalenceDirection::SeparationToBandwidth, 0.5, None, None),
            Err(BoundsError::MissingMaxDegree)
        );
        assert_eq!(
            equivalence_budgets(EquivalenceDirection::BandwidthToBoundedness, 0.5, None, None),
            Err(BoundsError::MissingEpsilon)
        );
    }

    #[test]
    fn composing_all_four_directions_stays_positive() {
        // Starting too small underflows f64 in the degree power; a
        // moderate budget keeps the whole chain strictly positive.
        let beta4 = 3.0;
        let t1 = equivalence_budgets(EquivalenceDirection::TreewidthToSeparation, beta4, None, None)
            .unwrap();
        let t2 = equivalence_budgets(
            EquivalenceDirection::BoundednessToTreewidth,
            t1.source_beta,
            None,
            None,
        )
        .unwrap();
        let t3 = equivalence_budgets(
            EquivalenceDirection::BandwidthToBoundedness,
            t2.source_beta,
            None,
            t2.epsilon,
        )
        .unwrap();
        let t4 = equivalence_budgets(
            EquivalenceDirection::SeparationToBandwidth,
            t3.source_beta,
            Some(4),
            None,
        )
        .unwrap();
        assert!(t4.source_beta > 0.0);
    }

    #[test]
    fn universality_thresholds() {
        assert_eq!(universality_min_degree(2, frac(1, 10), 100), Ok(60));
        assert_eq!(universality_min_degree(4, frac(1, 100), 400), Ok(304));
        assert_eq!(universality_min_degree(3, frac(1, 100), 300), Ok(203));
        assert!(universality_min_degree(1, frac(1, 10), 10).is_err());
        assert!(universality_min_degree(2, frac(1, 2), 10).is_err());
    }

    #[test]
    fn full_exact_report_on_a_grid_passes_every_inequality() {
        let g = generate(&Family::Grid { side: 3 }, 0).unwrap();
        let doc = build_report(&g, &ReportConfig::default());
        let exact_names: Vec<&str> = doc
            .parameters
            .iter()
            .filter(|p| p.kind == BoundKind::Exact)
            .map(|p| p.name.as_str())
            .collect();
        for name in ["bandwidth", "treewidth", "separation_number", "boundedness"] {
            assert!(exact_names.contains(&name), "missing exact {name}");
        }
        for entry in &doc.inequalities {
            assert_eq!(entry.verdict, Verdict::Pass, "{} did not pass", entry.name);
            assert_eq!(entry.comparison, Comparison::Exact);
        }
        let text = write_report(&doc);
        assert_eq!(text, write_report(&build_report(&g, &ReportConfig::default())));
    }

    #[test]
    fn degenerate_two_vertex_report_is_complete() {
        let g = generate(&Family::Path { n: 2 }, 0).unwrap();
        let doc = build_report(&g, &ReportConfig::default());
        let get = |name: &str| {
            doc.parameters
                .iter()
                .find(|p| p.name == name && p.kind == BoundKind::Exact)
                .map(|p| p.value)
        };
        assert_eq!(get("bandwidth"), Some(ReportValue::Int(1)));
        assert_eq!(get("treewidth"), Some(ReportValue::Int(1)));
        assert_eq!(get("separation_number"), Some(ReportValue::Int(1)));
        assert_eq!(get("boundedness"), Some(ReportValue::Int(2)));
        for entry in &doc.inequalities {
            assert_eq!(entry.verdict, Verdict::Pass, "{} did not pass", entry.name);
        }
    }

    #[test]
    fn heuristic_report_never_claims_exactness() {
        let g = generate(&Family::RandomBoundedDegree { n: 60, max_degree: 4 }, 3).unwrap();
        let doc = build_report(&g, &ReportConfig::default());
        for p in &doc.parameters {
            if p.kind == BoundKind::Exact {
                assert!(p.name.starts_with("bandwidth_lower") || !p.certificate.is_empty());
            }
        }
        for name in ["bandwidth", "treewidth", "separation_number", "boundedness"] {
            assert!(
                !doc.parameters
                    .iter()
                    .any(|p| p.name == name && p.kind == BoundKind::Exact),
                "{name} must not be exact at n = 60"
            );
        }
        for entry in &doc.inequalities {
            assert_ne!(
                entry.verdict,
                Verdict::Fail,
                "{} failed on one-sided bounds",
                entry.name
            );
        }
    }

    #[test]
    fn planar_formulas_appear_when_asserted() {
        let g = generate(&Family::Grid { side: 8 }, 0).unwrap();
        let config = ReportConfig { assume_planar: true, ..Default::default() };
        let doc = build_report(&g, &config);
        assert!(doc
            .parameters
            .iter()
            .any(|p| p.name == "bandwidth_upper_planar_formula"));
        assert!(doc
            .parameters
            .iter()
            .any(|p| p.name == "separation_upper_planar_formula"));
    }

    #[test]
    fn small_suite_run_is_clean_and_deterministic() {
        let config = SuiteConfig { samples: 12, ..Default::default() };
        let a = run_inequality_suite(&config).unwrap();
        let b = run_inequality_suite(&config).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.graphs, 12);
        for check in &a.checks {
            assert_eq!(check.checked, 12);
        }
    }
}
