//! Closed-form Hilbert series and the structural dispatcher.
//!
//! The closed forms cover complete graphs, paths, cycles, k-handle
//! lollipops, joins (in several specializations), partial joins with a
//! complete graph, cones over edgeless graphs, fans, multi-fans, wheels and
//! complete multipartite graphs. [`analyze`] evaluates an arbitrary graph by
//! recursively applying, in order: disjoint-union products, join splitting
//! (when the complement is disconnected), decomposition products at free cut
//! vertices, base-case recognition, and finally the Groebner oracle.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::family::FamilySpec;
use crate::graph::Graph;
use crate::oracle::{self, MonomialOrder, OracleError};
use crate::poly::IntPoly;
use crate::series::PoleSeries;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("invalid formula parameter: {0}")]
    InvalidParameter(String),
}

fn err(msg: impl Into<String>) -> FormulaError {
    FormulaError::InvalidParameter(msg.into())
}

/// `((n-1)t + 1)/(1-t)^{n+1}`, the series of the complete graph `K_n`
/// (a determinantal ring); `n = 0` gives the unit series.
pub fn series_complete(n: usize) -> PoleSeries {
    if n == 0 {
        return PoleSeries::one();
    }
    PoleSeries::new(
        IntPoly::from_coeffs(vec![BigInt::from(1), BigInt::from(n as i64 - 1)]),
        n as i64 + 1,
    )
}

/// `(1+t)^{n-1}/(1-t)^{n+1}`, the series of the path `P_n`.
pub fn series_path(n: usize) -> PoleSeries {
    if n == 0 {
        return PoleSeries::one();
    }
    PoleSeries::new(IntPoly::one_plus_t_pow(n - 1), n as i64 + 1)
}

/// The series of an edgeless graph on `n` vertices: `1/(1-t)^{2n}`.
pub fn series_edgeless(n: usize) -> PoleSeries {
    PoleSeries::free(2 * n)
}

/// `[(1-t^2)(1+t)^{n-1} + (n-1)t^n + t^{n+1}]/(1-t)^{n+1}`, the series of
/// the cycle `C_n`, `n >= 3`.
pub fn series_cycle(n: usize) -> Result<PoleSeries, FormulaError> {
    if n < 3 {
        return Err(err(format!("cycle series needs n >= 3, got {n}")));
    }
    let mut num = &IntPoly::from_ints(&[1, 0, -1]) * &IntPoly::one_plus_t_pow(n - 1);
    num = &num + &IntPoly::monomial(BigInt::from(n as i64 - 1), n);
    num = &num + &IntPoly::monomial(BigInt::from(1), n + 1);
    Ok(PoleSeries::new(num, n as i64 + 1))
}

/// Product rule for a graph glued from `r` indecomposable pieces at free
/// vertices: `(1-t)^{2r-2} * prod_i Hilb_i`.
pub fn series_decomposable(parts: &[PoleSeries]) -> PoleSeries {
    let mut acc = PoleSeries::one();
    for p in parts {
        acc = acc.mul(p);
    }
    acc.mul_one_minus_t_pow(2 * parts.len() as i64 - 2)
}

/// `((m-1)t+1)(1+t)^{r-k}/(1-t)^{m+r-k+1}` for the k-handle lollipop
/// `L_{m,r_1..r_k}`, with `r = r_1 + ... + r_k`.
pub fn series_lollipop(m: usize, handles: &[usize]) -> Result<PoleSeries, FormulaError> {
    let k = handles.len();
    if m < 2 {
        return Err(err(format!("lollipop needs m >= 2, got {m}")));
    }
    if k < 1 || k > m {
        return Err(err(format!("lollipop needs 1 <= k <= m, got k={k}, m={m}")));
    }
    if handles.contains(&0) {
        return Err(err("handle lengths must be positive"));
    }
    let r: usize = handles.iter().sum();
    let num = &IntPoly::from_coeffs(vec![BigInt::from(1), BigInt::from(m as i64 - 1)])
        * &IntPoly::one_plus_t_pow(r - k);
    Ok(PoleSeries::new(num, (m + r - k + 1) as i64))
}

/// Join rule: for `G = H * H'` on `p` and `q` vertices,
/// `Hilb(G) = Hilb(H) + Hilb(H') + C(p+q) - C(p) - C(q)` where `C(m)` is the
/// complete-graph series.
pub fn series_join(h: &PoleSeries, hp: &PoleSeries, p: usize, q: usize) -> PoleSeries {
    h.add(hp)
        .add(&series_complete(p + q))
        .sub(&series_complete(p))
        .sub(&series_complete(q))
}

/// Join with a complete graph: `Hilb(H * K_q) = Hilb(H) + C(p+q) - C(p)`.
/// For `q = 1` this is the cone rule `Hilb(H) + ((p-1)t^2+2t)/(1-t)^{p+2}`.
pub fn series_join_complete(h: &PoleSeries, p: usize, q: usize) -> PoleSeries {
    h.add(&series_complete(p + q)).sub(&series_complete(p))
}

/// Partial join `H (*)^r K_q` (`q >= 2`, `1 <= r < q`):
/// `Hilb(H) * ((q-r-1)t+1)/(1-t)^{q-r+1} + C(p+q) - C(p+q-r)`.
pub fn series_partial_join_complete(
    h: &PoleSeries,
    p: usize,
    q: usize,
    r: usize,
) -> Result<PoleSeries, FormulaError> {
    if q < 2 {
        return Err(err(format!("partial join needs q >= 2, got {q}")));
    }
    if r < 1 || r >= q {
        return Err(err(format!(
            "partial join needs 1 <= r < q (r = q is the plain join), got r={r}, q={q}"
        )));
    }
    let factor = PoleSeries::new(
        IntPoly::from_coeffs(vec![BigInt::from(1), BigInt::from(q as i64 - r as i64 - 1)]),
        (q - r + 1) as i64,
    );
    Ok(h.mul(&factor)
        .add(&series_complete(p + q))
        .sub(&series_complete(p + q - r)))
}

/// Series of `K_p * K_q^c` (complete joined to `q` isolated vertices):
/// `1/(1-t)^{2q} + C(p+q) - C(q)`.
pub fn series_complete_join_edgeless(p: usize, q: usize) -> PoleSeries {
    series_edgeless(q)
        .add(&series_complete(p + q))
        .sub(&series_complete(q))
}

/// Cone over an edgeless graph: for connected `H` on `p` vertices,
/// `Hilb(H * K_q^c) = Hilb(H) + Hilb(K_p * K_q^c) - C(p)`.
pub fn series_cone_empty(h: &PoleSeries, p: usize, q: usize) -> PoleSeries {
    h.add(&series_complete_join_edgeless(p, q))
        .sub(&series_complete(p))
}

/// Multi-fan `{v} * (P_{p_1} u ... u P_{p_r})`, `r >= 2`:
/// `(1+t)^{p-r}/(1-t)^{p+r} + ((p-1)t^2+2t)/(1-t)^{p+2}`.
pub fn series_multifan(parts: &[usize]) -> Result<PoleSeries, FormulaError> {
    let r = parts.len();
    if r < 2 {
        return Err(err(format!("multi-fan needs at least 2 paths, got {r}")));
    }
    if parts.contains(&0) {
        return Err(err("path lengths must be positive"));
    }
    let p: usize = parts.iter().sum();
    let paths = PoleSeries::new(IntPoly::one_plus_t_pow(p - r), (p + r) as i64);
    let cone = PoleSeries::new(
        IntPoly::from_coeffs(vec![
            BigInt::from(0),
            BigInt::from(2),
            BigInt::from(p as i64 - 1),
        ]),
        p as i64 + 2,
    );
    Ok(paths.add(&cone))
}

/// Fan `P_p * K_q^c`.
pub fn series_fan(p: usize, q: usize) -> Result<PoleSeries, FormulaError> {
    if p < 1 || q < 1 {
        return Err(err("fan needs p >= 1 and q >= 1"));
    }
    Ok(series_cone_empty(&series_path(p), p, q))
}

/// Wheel `C_p * {v}` (on `p + 1` vertices), `p >= 3`.
pub fn series_wheel(p: usize) -> Result<PoleSeries, FormulaError> {
    Ok(series_join_complete(&series_cycle(p)?, p, 1))
}

/// Complete k-partite graph `K_{p_1..p_k}`, `k >= 2`:
/// `sum_i 1/(1-t)^{2 p_i} - sum_i C(p_i) + C(n)`.
pub fn series_kpartite(parts: &[usize]) -> Result<PoleSeries, FormulaError> {
    if parts.len() < 2 {
        return Err(err("complete multipartite series needs k >= 2 parts"));
    }
    if parts.contains(&0) {
        return Err(err("part sizes must be positive"));
    }
    let n: usize = parts.iter().sum();
    let mut acc = series_complete(n);
    for &p in parts {
        acc = acc.add(&series_edgeless(p)).sub(&series_complete(p));
    }
    Ok(acc)
}

/// Closed-form series for a family description, recursing through joins.
pub fn family_series(spec: &FamilySpec) -> Result<PoleSeries, FormulaError> {
    match spec {
        FamilySpec::Path(n) => {
            if *n < 1 {
                return Err(err("path needs at least 1 vertex"));
            }
            Ok(series_path(*n))
        }
        FamilySpec::Cycle(n) => series_cycle(*n),
        FamilySpec::Complete(n) => {
            if *n < 1 {
                return Err(err("complete graph needs at least 1 vertex"));
            }
            Ok(series_complete(*n))
        }
        FamilySpec::KPartite(parts) => {
            if parts.len() == 1 {
                if parts[0] == 0 {
                    return Err(err("part sizes must be positive"));
                }
                return Ok(series_edgeless(parts[0]));
            }
            series_kpartite(parts)
        }
        FamilySpec::Lollipop { m, handles } => series_lollipop(*m, handles),
        FamilySpec::Fan { p, q } => series_fan(*p, *q),
        FamilySpec::MultiFan(parts) => {
            if parts.len() == 1 {
                // a single path under an apex is the fan with q = 1
                return series_fan(parts[0], 1);
            }
            series_multifan(parts)
        }
        FamilySpec::Wheel(n) => {
            if *n < 4 {
                return Err(err(format!("wheel needs at least 4 vertices, got {n}")));
            }
            series_wheel(*n - 1)
        }
        FamilySpec::Join(a, b) => {
            let (sa, sb) = (family_series(a)?, family_series(b)?);
            let (p, q) = (spec_size(a)?, spec_size(b)?);
            Ok(series_join(&sa, &sb, p, q))
        }
        FamilySpec::PartialJoin { inner, q, r } => {
            let h = family_series(inner)?;
            let p = spec_size(inner)?;
            if r == q {
                return Ok(series_join_complete(&h, p, *q));
            }
            series_partial_join_complete(&h, p, *q, *r)
        }
    }
}

fn spec_size(spec: &FamilySpec) -> Result<usize, FormulaError> {
    spec.build().map(|g| g.n()).map_err(|e| err(e.to_string()))
}

/// Dimension and multiplicity predicted by the per-family case analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedInvariants {
    pub dim: usize,
    pub multiplicity: BigInt,
}

/// The closed-form dimension/multiplicity tables, where one is stated for
/// the family; `None` for compound specs.
pub fn family_invariants(spec: &FamilySpec) -> Option<ExpectedInvariants> {
    let big = |v: usize| BigInt::from(v as u64);
    match spec {
        FamilySpec::Complete(n) if *n >= 1 => Some(ExpectedInvariants {
            dim: n + 1,
            multiplicity: big(*n),
        }),
        FamilySpec::Path(n) if *n >= 1 => Some(ExpectedInvariants {
            dim: n + 1,
            multiplicity: BigInt::from(2u64).pow(*n as u32 - 1),
        }),
        FamilySpec::Cycle(n) if *n >= 3 => Some(ExpectedInvariants {
            dim: n + 1,
            multiplicity: big(*n),
        }),
        FamilySpec::Lollipop { m, handles }
            if *m >= 2
                && !handles.is_empty()
                && handles.len() <= *m
                && handles.iter().all(|&r| r >= 1) =>
        {
            let k = handles.len();
            let r: usize = handles.iter().sum();
            Some(ExpectedInvariants {
                dim: m + r - k + 1,
                multiplicity: BigInt::from(2u64).pow((r - k) as u32) * big(*m),
            })
        }
        FamilySpec::Wheel(n) if *n >= 4 => {
            let p = n - 1;
            Some(ExpectedInvariants {
                dim: p + 2,
                multiplicity: big(p + 1),
            })
        }
        FamilySpec::Fan { p, q } if *p >= 1 && *q >= 1 => {
            let dim = (2 * q).max(p + q + 1);
            let e = if p + 1 < *q {
                big(1)
            } else if p + 1 == *q {
                big(p + q + 1)
            } else {
                big(p + q)
            };
            Some(ExpectedInvariants {
                dim,
                multiplicity: e,
            })
        }
        FamilySpec::MultiFan(parts) if parts.len() >= 2 && parts.iter().all(|&p| p >= 1) => {
            let r = parts.len();
            let p: usize = parts.iter().sum();
            let e = if r > 2 {
                BigInt::from(2u64).pow((p - r) as u32)
            } else {
                BigInt::from(2u64).pow((p - r) as u32) + big(p + 1)
            };
            Some(ExpectedInvariants {
                dim: p + r,
                multiplicity: e,
            })
        }
        FamilySpec::KPartite(parts) if parts.len() >= 2 && parts.iter().all(|&p| p >= 1) => {
            let n: usize = parts.iter().sum();
            let p1 = *parts.iter().max().unwrap();
            let dim = (2 * p1).max(n + 1);
            let e = if p1 == 1 || 2 * p1 < n + 1 {
                big(n)
            } else if 2 * p1 > n + 1 {
                big(1)
            } else {
                big(n + 1)
            };
            Some(ExpectedInvariants {
                dim,
                multiplicity: e,
            })
        }
        _ => None,
    }
}

/// Options for the dispatcher's oracle fallback.
#[derive(Clone, Copy, Debug)]
pub struct AnalyzeOptions {
    pub order: MonomialOrder,
    pub max_vars: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            order: MonomialOrder::DegRevLex,
            max_vars: oracle::DEFAULT_MAX_VARS,
        }
    }
}

/// One node of a derivation trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeriveNode {
    pub rule: String,
    #[serde(rename = "ref")]
    pub reference: String,
    /// Vertices of the original graph this node covers.
    pub scope: Vec<usize>,
    pub series: PoleSeries,
    pub children: Vec<DeriveNode>,
}

/// The result series together with the tree of rules that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesDerivation {
    pub result: PoleSeries,
    pub trace: DeriveNode,
}

impl SeriesDerivation {
    pub fn uses_fallback(&self) -> bool {
        fn scan(node: &DeriveNode) -> bool {
            node.rule == RULE_ORACLE || node.children.iter().any(scan)
        }
        scan(&self.trace)
    }

    /// Indented text rendering of the trace.
    pub fn render_text(&self) -> String {
        fn rec(node: &DeriveNode, depth: usize, out: &mut String) {
            let indent = "  ".repeat(depth);
            let scope = node
                .scope
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",");
            out.push_str(&format!(
                "{indent}{} on {{{scope}}}: {}   [{}]\n",
                node.rule, node.series, node.reference
            ));
            for c in &node.children {
                rec(c, depth + 1, out);
            }
        }
        let mut out = String::new();
        rec(&self.trace, 0, &mut out);
        out
    }
}

pub const RULE_EMPTY: &str = "empty";
pub const RULE_DISCONNECTED: &str = "disconnected-product";
pub const RULE_JOIN: &str = "join-split";
pub const RULE_DECOMPOSE: &str = "decomposition-product";
pub const RULE_COMPLETE: &str = "complete";
pub const RULE_PATH: &str = "path";
pub const RULE_CYCLE: &str = "cycle";
pub const RULE_ORACLE: &str = "oracle";

fn rule_reference(rule: &str) -> &'static str {
    match rule {
        RULE_EMPTY => "Hilb(K[]) = 1",
        RULE_DISCONNECTED => "Hilb(G1 u G2) = Hilb(G1) * Hilb(G2) (disjoint variables)",
        RULE_JOIN => {
            "Hilb(H*H') = Hilb(H) + Hilb(H') + C(p+q) - C(p) - C(q), C(m) = ((m-1)t+1)/(1-t)^(m+1)"
        }
        RULE_DECOMPOSE => "Hilb(G) = (1-t)^(2r-2) * prod_i Hilb(G_i) at free cut vertices",
        RULE_COMPLETE => "Hilb(K_n) = ((n-1)t+1)/(1-t)^(n+1)",
        RULE_PATH => "Hilb(P_n) = (1+t)^(n-1)/(1-t)^(n+1)",
        RULE_CYCLE => "Hilb(C_n) = ((1-t^2)(1+t)^(n-1) + (n-1)t^n + t^(n+1))/(1-t)^(n+1)",
        RULE_ORACLE => "Groebner basis -> initial ideal -> Hilbert numerator",
        _ => "",
    }
}

fn node(
    rule: &str,
    scope: Vec<usize>,
    series: PoleSeries,
    children: Vec<DeriveNode>,
) -> DeriveNode {
    DeriveNode {
        rule: rule.to_string(),
        reference: rule_reference(rule).to_string(),
        scope,
        series,
        children,
    }
}

/// Computes the Hilbert series of an arbitrary graph, recording the rule
/// tree. Fails only when the oracle fallback exceeds its size guard.
pub fn analyze(g: &Graph) -> Result<SeriesDerivation, OracleError> {
    analyze_with(g, &AnalyzeOptions::default())
}

pub fn analyze_with(g: &Graph, opts: &AnalyzeOptions) -> Result<SeriesDerivation, OracleError> {
    let labels: Vec<usize> = g.vertices().collect();
    let trace = analyze_rec(g, &labels, opts)?;
    Ok(SeriesDerivation {
        result: trace.series.clone(),
        trace,
    })
}

fn analyze_rec(
    g: &Graph,
    labels: &[usize],
    opts: &AnalyzeOptions,
) -> Result<DeriveNode, OracleError> {
    let n = g.n();
    if n == 0 {
        return Ok(node(RULE_EMPTY, vec![], PoleSeries::one(), vec![]));
    }

    let relabel = |verts: &[usize]| -> Vec<usize> {
        let mut sorted = verts.to_vec();
        sorted.sort_unstable();
        sorted.iter().map(|&v| labels[v - 1]).collect()
    };

    // (1) Disconnected: component series multiply (disjoint variables).
    let components = g.connected_components();
    if components.len() >= 2 {
        let mut children = Vec::new();
        let mut series = PoleSeries::one();
        for comp in &components {
            let child = analyze_rec(&g.induced(comp), &relabel(comp), opts)?;
            series = series.mul(&child.series);
            children.push(child);
        }
        return Ok(node(RULE_DISCONNECTED, labels.to_vec(), series, children));
    }

    // (2) Join splitting: a disconnected complement means G is a join of
    // the complement's components; peel them one at a time.
    let comp_components = g.complement().connected_components();
    if comp_components.len() >= 2 {
        let head = &comp_components[0];
        let rest: Vec<usize> = comp_components[1..].iter().flatten().copied().collect();
        let left = analyze_rec(&g.induced(head), &relabel(head), opts)?;
        let right = analyze_rec(&g.induced(&rest), &relabel(&rest), opts)?;
        let series = series_join(&left.series, &right.series, head.len(), rest.len());
        return Ok(node(RULE_JOIN, labels.to_vec(), series, vec![left, right]));
    }

    // (3) Decomposition at free cut vertices.
    let dec = g.decompose();
    if dec.parts.len() >= 2 {
        let mut children = Vec::new();
        let mut parts = Vec::new();
        for part in &dec.parts {
            let child = analyze_rec(&g.induced(part), &relabel(part), opts)?;
            parts.push(child.series.clone());
            children.push(child);
        }
        let series = series_decomposable(&parts);
        return Ok(node(RULE_DECOMPOSE, labels.to_vec(), series, children));
    }

    // (4) Base cases.
    if g.is_complete() {
        return Ok(node(
            RULE_COMPLETE,
            labels.to_vec(),
            series_complete(n),
            vec![],
        ));
    }
    if g.is_path_graph() {
        return Ok(node(RULE_PATH, labels.to_vec(), series_path(n), vec![]));
    }
    if g.is_cycle_graph() {
        return Ok(node(
            RULE_CYCLE,
            labels.to_vec(),
            series_cycle(n).expect("cycle recognizer implies n >= 3"),
            vec![],
        ));
    }

    // (5) Oracle fallback.
    let series = oracle::oracle_series_with(g, opts.order, opts.max_vars)?;
    Ok(node(RULE_ORACLE, labels.to_vec(), series, vec![]))
}

/// Recomputes a node's series from its children according to its rule;
/// oracle nodes return their stored series. Used to check that traces
/// replay exactly.
pub fn replay(node: &DeriveNode) -> PoleSeries {
    match node.rule.as_str() {
        RULE_EMPTY => PoleSeries::one(),
        RULE_DISCONNECTED => node
            .children
            .iter()
            .fold(PoleSeries::one(), |acc, c| acc.mul(&replay(c))),
        RULE_JOIN => {
            let left = replay(&node.children[0]);
            let right = replay(&node.children[1]);
            series_join(
                &left,
                &right,
                node.children[0].scope.len(),
                node.children[1].scope.len(),
            )
        }
        RULE_DECOMPOSE => {
            let parts: Vec<PoleSeries> = node.children.iter().map(replay).collect();
            series_decomposable(&parts)
        }
        RULE_COMPLETE => series_complete(node.scope.len()),
        RULE_PATH => series_path(node.scope.len()),
        RULE_CYCLE => series_cycle(node.scope.len()).expect("cycle node has n >= 3"),
        _ => node.series.clone(),
    }
}
