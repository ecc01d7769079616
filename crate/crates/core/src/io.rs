//! Bit-exact parsing and canonical serialization.
//!
//! Graphs use the PACE `.gr` format (`p tw <n> <m>`, 1-based edge lines),
//! decompositions the PACE `.td` format, orderings one vertex id per line
//! in position order. Writers are canonical: structurally equal values
//! serialize to identical bytes, and `parse(write(x)) == x`.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, Labelling, VertexSet};
use crate::treewidth::TreeDecomposition;
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseErrorKind {
    #[error("missing `p tw <n> <m>` header")]
    MissingHeader,
    #[error("malformed header")]
    MalformedHeader,
    #[error("unexpected line")]
    UnexpectedLine,
    #[error("malformed edge line")]
    MalformedEdge,
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("more than the declared {declared} edges")]
    TooManyEdges { declared: usize },
    #[error("{got} edges found but {declared} declared")]
    MissingEdges { declared: usize, got: usize },
    #[error("header declares {header} vertices but the graph has {graph}")]
    VertexCountMismatch { header: usize, graph: usize },
    #[error("malformed bag line")]
    MalformedBag,
    #[error("bag index {index} out of range 1..={count}")]
    BagIndexOutOfRange { index: usize, count: usize },
    #[error("bag {0} declared twice")]
    DuplicateBag(usize),
    #[error("bag {0} missing")]
    MissingBag(usize),
    #[error("header declares max bag size {declared} but the largest bag has {actual}")]
    MaxBagSizeMismatch { declared: usize, actual: usize },
    #[error("malformed tree edge line")]
    MalformedTreeEdge,
    #[error("{got} tree edges found but {expected} required")]
    TreeEdgeCountMismatch { expected: usize, got: usize },
    #[error("ordering is not a permutation of 1..=n")]
    NotAPermutation,
    #[error("{got} ordering lines found but the graph has {expected} vertices")]
    WrongLineCount { expected: usize, got: usize },
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn is_comment(line: &str) -> bool {
    line.starts_with('c')
        && line
            .chars()
            .nth(1)
            .map_or(true, |c| c.is_whitespace())
}

/// Parses the PACE graph format. Comment lines (`c ...`) are allowed
/// anywhere; the edge count must match the header exactly.
pub fn parse_gr(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut lines_total = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        lines_total = line_no;
        let line = raw.trim_end_matches('\r');
        if is_comment(line) {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let Some((n, m)) = header else {
            if tokens.len() == 4 && tokens[0] == "p" && tokens[1] == "tw" {
                let n = tokens[2].parse::<usize>();
                let m = tokens[3].parse::<usize>();
                match (n, m) {
                    (Ok(n), Ok(m)) => header = Some((n, m)),
                    _ => return Err(err(line_no, ParseErrorKind::MalformedHeader)),
                }
                continue;
            }
            return Err(err(line_no, ParseErrorKind::MissingHeader));
        };
        if tokens.len() != 2 {
            return Err(err(line_no, ParseErrorKind::MalformedEdge));
        }
        let parse_vertex = |tok: &str| -> Result<usize, ParseError> {
            let id: usize = tok
                .parse()
                .map_err(|_| err(line_no, ParseErrorKind::MalformedEdge))?;
            if id == 0 || id > n {
                return Err(err(line_no, ParseErrorKind::VertexOutOfRange { vertex: id, n }));
            }
            Ok(id - 1)
        };
        let u = parse_vertex(tokens[0])?;
        let v = parse_vertex(tokens[1])?;
        if u == v {
            return Err(err(line_no, ParseErrorKind::SelfLoop(u + 1)));
        }
        if edges.len() == m {
            return Err(err(line_no, ParseErrorKind::TooManyEdges { declared: m }));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(err(
                line_no,
                ParseErrorKind::DuplicateEdge(u.min(v) + 1, u.max(v) + 1),
            ));
        }
        edges.push((u, v));
    }
    let Some((n, m)) = header else {
        return Err(err(lines_total + 1, ParseErrorKind::MissingHeader));
    };
    if edges.len() != m {
        return Err(err(
            lines_total + 1,
            ParseErrorKind::MissingEdges { declared: m, got: edges.len() },
        ));
    }
    Ok(Graph::from_edges(n, &edges).expect("all edge constraints checked during parsing"))
}

/// Canonical graph serialization: header, then edges `u v` with `u < v`,
/// ascending, 1-based.
pub fn write_gr(g: &Graph) -> String {
    let mut out = format!("p tw {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    out
}

/// Parses the PACE tree-decomposition format against a host graph:
/// `s td <#bags> <max bag size> <n>`, bag lines `b <i> <v...>`, then
/// exactly `#bags - 1` tree edges over bag indices.
pub fn parse_td(text: &str, g: &Graph) -> Result<TreeDecomposition, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut header_line = 0;
    let mut bags: Vec<Option<VertexSet>> = Vec::new();
    let mut tree: Vec<(usize, usize)> = Vec::new();
    let mut lines_total = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        lines_total = line_no;
        let line = raw.trim_end_matches('\r');
        if is_comment(line) {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let Some((bag_count, _, n)) = header else {
            if tokens.len() == 5 && tokens[0] == "s" && tokens[1] == "td" {
                let parsed: Result<Vec<usize>, _> =
                    tokens[2..].iter().map(|t| t.parse::<usize>()).collect();
                match parsed {
                    Ok(values) => {
                        if values[2] != g.n() {
                            return Err(err(
                                line_no,
                                ParseErrorKind::VertexCountMismatch {
                                    header: values[2],
                                    graph: g.n(),
                                },
                            ));
                        }
                        header = Some((values[0], values[1], values[2]));
                        header_line = line_no;
                        bags = vec![None; values[0]];
                    }
                    Err(_) => return Err(err(line_no, ParseErrorKind::MalformedHeader)),
                }
                continue;
            }
            return Err(err(line_no, ParseErrorKind::MissingHeader));
        };
        if tokens.first() == Some(&"b") {
            if tokens.len() < 2 {
                return Err(err(line_no, ParseErrorKind::MalformedBag));
            }
            let index: usize = tokens[1]
                .parse()
                .map_err(|_| err(line_no, ParseErrorKind::MalformedBag))?;
            if index == 0 || index > bag_count {
                return Err(err(
                    line_no,
                    ParseErrorKind::BagIndexOutOfRange { index, count: bag_count },
                ));
            }
            if bags[index - 1].is_some() {
                return Err(err(line_no, ParseErrorKind::DuplicateBag(index)));
            }
            let mut members = Vec::new();
            for tok in &tokens[2..] {
                let id: usize = tok
                    .parse()
                    .map_err(|_| err(line_no, ParseErrorKind::MalformedBag))?;
                if id == 0 || id > n {
                    return Err(err(line_no, ParseErrorKind::VertexOutOfRange { vertex: id, n }));
                }
                members.push(id - 1);
            }
            bags[index - 1] = Some(VertexSet::from_iter(members));
            continue;
        }
        if tokens.len() != 2 {
            return Err(err(line_no, ParseErrorKind::MalformedTreeEdge));
        }
        let parse_bag = |tok: &str| -> Result<usize, ParseError> {
            let id: usize = tok
                .parse()
                .map_err(|_| err(line_no, ParseErrorKind::MalformedTreeEdge))?;
            if id == 0 || id > bag_count {
                return Err(err(
                    line_no,
                    ParseErrorKind::BagIndexOutOfRange { index: id, count: bag_count },
                ));
            }
            Ok(id - 1)
        };
        let a = parse_bag(tokens[0])?;
        let b = parse_bag(tokens[1])?;
        tree.push((a, b));
    }
    let Some((bag_count, declared_max, _)) = header else {
        return Err(err(lines_total + 1, ParseErrorKind::MissingHeader));
    };
    if let Some(i) = bags.iter().position(Option::is_none) {
        return Err(err(lines_total + 1, ParseErrorKind::MissingBag(i + 1)));
    }
    let bags: Vec<VertexSet> = bags.into_iter().map(Option::unwrap).collect();
    let actual_max = bags.iter().map(VertexSet::len).max().unwrap_or(0);
    if actual_max != declared_max {
        return Err(err(
            header_line,
            ParseErrorKind::MaxBagSizeMismatch { declared: declared_max, actual: actual_max },
        ));
    }
    let expected_edges = bag_count.saturating_sub(1);
    if tree.len() != expected_edges {
        return Err(err(
            lines_total + 1,
            ParseErrorKind::TreeEdgeCountMismatch { expected: expected_edges, got: tree.len() },
        ));
    }
    Ok(TreeDecomposition::new(g.n(), bags, tree))
}

/// Canonical decomposition serialization: bags in index order with sorted
/// contents, then sorted tree edges, all 1-based.
pub fn write_td(td: &TreeDecomposition) -> String {
    let max_bag = td.bags().iter().map(VertexSet::len).max().unwrap_or(0);
    let mut out = format!("s td {} {} {}\n", td.bags().len(), max_bag, td.n());
    for (i, bag) in td.bags().iter().enumerate() {
        out.push_str(&format!("b {}", i + 1));
        for v in bag.iter() {
            out.push_str(&format!(" {}", v + 1));
        }
        out.push('\n');
    }
    let mut edges: Vec<(usize, usize)> = td.tree_edges().to_vec();
    edges.sort_unstable();
    for (a, b) in edges {
        out.push_str(&format!("{} {}\n", a + 1, b + 1));
    }
    out
}

/// One 1-based vertex id per line, in position order.
pub fn write_ordering(labelling: &Labelling) -> String {
    let mut out = String::new();
    for p in 0..labelling.len() {
        out.push_str(&format!("{}\n", labelling.vertex_at(p) + 1));
    }
    out
}

pub fn parse_ordering(text: &str, g: &Graph) -> Result<Labelling, ParseError> {
    let mut order = Vec::new();
    let mut lines_total = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        lines_total = line_no;
        let line = raw.trim_end_matches('\r');
        if is_comment(line) {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 1 {
            return Err(err(line_no, ParseErrorKind::UnexpectedLine));
        }
        let id: usize = tokens[0]
            .parse()
            .map_err(|_| err(line_no, ParseErrorKind::UnexpectedLine))?;
        if id == 0 || id > g.n() {
            return Err(err(line_no, ParseErrorKind::VertexOutOfRange { vertex: id, n: g.n() }));
        }
        order.push(id - 1);
    }
    if order.len() != g.n() {
        return Err(err(
            lines_total + 1,
            ParseErrorKind::WrongLineCount { expected: g.n(), got: order.len() },
        ));
    }
    Labelling::from_order(order).map_err(|_| err(lines_total + 1, ParseErrorKind::NotAPermutation))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReportError {
    #[error("exact entry `{0}` must carry a certificate reference or oracle tag")]
    ExactWithoutCertificate(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Exact,
    Upper,
    Lower,
}

impl BoundKind {
    pub fn name(&self) -> &'static str {
        match self {
            BoundKind::Exact => "exact",
            BoundKind::Upper => "upper",
            BoundKind::Lower => "lower",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReportValue {
    Int(i64),
    Real(f64),
    Frac(Rational),
}

impl fmt::Display for ReportValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReportValue::Int(v) => write!(f, "{v}"),
            ReportValue::Real(v) => {
                if v.is_infinite() {
                    write!(f, "{}", if *v > 0.0 { "inf" } else { "-inf" })
                } else {
                    write!(f, "{v:.6}")
                }
            }
            ReportValue::Frac(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParameterEntry {
    pub name: String,
    pub kind: BoundKind,
    pub value: ReportValue,
    pub certificate: String,
}

impl ParameterEntry {
    pub fn new(
        name: impl Into<String>,
        kind: BoundKind,
        value: ReportValue,
        certificate: impl Into<String>,
    ) -> Result<Self, ReportError> {
        let name = name.into();
        let certificate = certificate.into();
        if kind == BoundKind::Exact && certificate.is_empty() {
            return Err(ReportError::ExactWithoutCertificate(name));
        }
        Ok(ParameterEntry { name, kind, value, certificate })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    NotEvaluated,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotEvaluated => "not-evaluated",
        }
    }
}

/// How an inequality verdict was reached: both sides exact, or via bounds
/// certified on the conclusive sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Exact,
    Bounds,
}

impl Comparison {
    pub fn name(&self) -> &'static str {
        match self {
            Comparison::Exact => "exact",
            Comparison::Bounds => "bounds",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InequalityEntry {
    pub name: String,
    pub verdict: Verdict,
    pub comparison: Comparison,
    pub lhs: Option<ReportValue>,
    pub rhs: Option<ReportValue>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportDocument {
    pub vertices: usize,
    pub edges: usize,
    pub max_degree: usize,
    pub parameters: Vec<ParameterEntry>,
    pub inequalities: Vec<InequalityEntry>,
}

impl ReportDocument {
    pub fn for_graph(g: &Graph) -> Self {
        ReportDocument {
            vertices: g.n(),
            edges: g.m(),
            max_degree: g.max_degree(),
            parameters: Vec::new(),
            inequalities: Vec::new(),
        }
    }
}

/// Canonical report serialization: an indented key-value tree with
/// parameters and inequalities sorted by name. Equal documents serialize
/// to identical bytes.
pub fn write_report(report: &ReportDocument) -> String {
    let mut out = String::from("report\n  graph\n");
    out.push_str(&format!("    vertices {}\n", report.vertices));
    out.push_str(&format!("    edges {}\n", report.edges));
    out.push_str(&format!("    max_degree {}\n", report.max_degree));
    if !report.parameters.is_empty() {
        out.push_str("  parameters\n");
        let mut params: Vec<&ParameterEntry> = report.parameters.iter().collect();
        params.sort_by(|a, b| a.name.cmp(&b.name).then(a.kind.name().cmp(b.kind.name())));
        for p in params {
            out.push_str(&format!("    {}\n", p.name));
            out.push_str(&format!("      kind {}\n", p.kind.name()));
            out.push_str(&format!("      value {}\n", p.value));
            if !p.certificate.is_empty() {
                out.push_str(&format!("      certificate {}\n", p.certificate));
            }
        }
    }
    if !report.inequalities.is_empty() {
        out.push_str("  inequalities\n");
        let mut entries: Vec<&InequalityEntry> = report.inequalities.iter().collect();
        entries.sort_by(|a, b| a.name.cmp(&b.name));
        for e in entries {
            out.push_str(&format!("    {}\n", e.name));
            out.push_str(&format!("      verdict {}\n", e.verdict.name()));
            out.push_str(&format!("      comparison {}\n", e.comparison.name()));
            if let Some(lhs) = e.lhs {
                out.push_str(&format!("      lhs {lhs}\n"));
            }
            if let Some(rhs) = e.rhs {
                out.push_str(&format!("      rhs {rhs}\n"));
            }
            if let Some(note) = &e.note {
                out.push_str(&format!("      note {note}\n"));
            }
        }
    }
    out
}
