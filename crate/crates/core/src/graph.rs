//! Finite simple graphs and the structural predicates the series engine
//! quantifies over: free vertices, decompositions at free cut vertices,
//! joins, complements, and cut-point sets (the combinatorial indexing of
//! the minimal primes of a binomial edge ideal).
//!
//! Vertices are labeled `1..=n` everywhere, matching the usual conventions.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Default cap for the `2^n` subset enumeration behind cut-point sets.
pub const DEFAULT_SUBSET_LIMIT: usize = 22;

/// Cap for naive isomorphism canonicalization (minimum over all `n!`
/// relabelings).
pub const CANONICAL_LIMIT: usize = 7;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop edge ({0},{0}) is not allowed in a simple graph")]
    Loop(usize),
    #[error("vertex {v} out of range 1..={n}")]
    OutOfRange { v: usize, n: usize },
    #[error("graph on {n} vertices exceeds the enumeration guard {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("permutation is not a bijection on 1..={0}")]
    BadPermutation(usize),
    #[error("partial join requires 1 <= r <= q, got r={r}, q={q}")]
    BadPartialJoin { q: usize, r: usize },
}

/// Parse failure for the edge-list text format, with 1-based position.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {col}: {msg}")]
pub struct EdgeListError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

/// Immutable simple graph on vertex set `{1..n}`.
#[derive(Clone, Debug, Serialize)]
pub struct Graph {
    n: usize,
    /// Sorted `(u, v)` with `u < v`, deduplicated.
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adj: Vec<Vec<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}
impl Eq for Graph {}
impl PartialOrd for Graph {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Graph {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, &self.edges).cmp(&(other.n, &other.edges))
    }
}
impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.edges.hash(state);
    }
}

impl Graph {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Graph, GraphError> {
        let mut normalized = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::Loop(a));
            }
            for v in [a, b] {
                if v < 1 || v > n {
                    return Err(GraphError::OutOfRange { v, n });
                }
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        normalized.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &normalized {
            adj[u - 1].push(v);
            adj[v - 1].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: normalized,
            adj,
        })
    }

    pub fn empty(n: usize) -> Graph {
        Graph::new(n, []).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v)));
        Graph::new(n, edges).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + Clone {
        1..=self.n
    }

    /// Induced subgraph relabeled to `1..=k` in the sorted order of `verts`.
    pub fn induced(&self, verts: &[usize]) -> Graph {
        let mut sorted: Vec<usize> = verts.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let index_of = |v: usize| sorted.binary_search(&v).map(|i| i + 1).ok();
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if let (Some(a), Some(b)) = (index_of(u), index_of(v)) {
                edges.push((a, b));
            }
        }
        Graph::new(sorted.len(), edges).unwrap()
    }

    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 1..=self.n {
            for v in u + 1..=self.n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(self.n, edges).unwrap()
    }

    /// Join: both graphs kept, the second relabeled by `+p`, plus all cross
    /// edges.
    pub fn join(&self, other: &Graph) -> Graph {
        let p = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + p, v + p)));
        for u in 1..=p {
            for v in 1..=other.n {
                edges.push((u, v + p));
            }
        }
        Graph::new(p + other.n, edges).unwrap()
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let p = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + p, v + p)));
        Graph::new(p + other.n, edges).unwrap()
    }

    /// `H (*)^r K_q`: this graph, a `q`-clique on `p+1..=p+q`, and all edges
    /// from `V(H)` to the first `r` clique vertices. `r = q` is the join.
    pub fn partial_join(&self, q: usize, r: usize) -> Result<Graph, GraphError> {
        if r < 1 || r > q {
            return Err(GraphError::BadPartialJoin { q, r });
        }
        let p = self.n;
        let mut edges = self.edges.clone();
        for u in 1..=q {
            for v in u + 1..=q {
                edges.push((p + u, p + v));
            }
        }
        for u in 1..=p {
            for v in 1..=r {
                edges.push((u, p + v));
            }
        }
        Ok(Graph::new(p + q, edges).unwrap())
    }

    /// Relabels vertex `v` to `perm[v-1]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::BadPermutation(self.n));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p < 1 || p > self.n || seen[p - 1] {
                return Err(GraphError::BadPermutation(self.n));
            }
            seen[p - 1] = true;
        }
        let edges = self.edges.iter().map(|&(u, v)| (perm[u - 1], perm[v - 1]));
        Graph::new(self.n, edges)
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (1..=self.n).collect();
        self.components_within(&all)
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Connected components of the induced subgraph on `verts` (original
    /// labels kept).
    pub fn components_within(&self, verts: &[usize]) -> Vec<Vec<usize>> {
        let mut member = vec![false; self.n + 1];
        for &v in verts {
            member[v] = true;
        }
        let mut seen = vec![false; self.n + 1];
        let mut components = Vec::new();
        let mut sorted: Vec<usize> = verts.to_vec();
        sorted.sort_unstable();
        for &start in &sorted {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in self.neighbors(v) {
                    if member[w] && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    pub fn is_clique(&self, verts: &[usize]) -> bool {
        for (i, &u) in verts.iter().enumerate() {
            for &v in &verts[i + 1..] {
                if !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// A vertex is free when it lies in exactly one maximal clique;
    /// equivalently, its neighborhood induces a clique.
    pub fn is_free_vertex(&self, v: usize) -> bool {
        self.is_clique(self.neighbors(v))
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    /// Path graph test (any labeling).
    pub fn is_path_graph(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        if self.n == 1 {
            return self.edges.is_empty();
        }
        if self.edges.len() != self.n - 1 || !self.is_connected() {
            return false;
        }
        let ends = (1..=self.n).filter(|&v| self.degree(v) == 1).count();
        ends == 2 && (1..=self.n).all(|v| self.degree(v) <= 2)
    }

    /// Cycle graph test (any labeling).
    pub fn is_cycle_graph(&self) -> bool {
        self.n >= 3
            && self.edges.len() == self.n
            && (1..=self.n).all(|v| self.degree(v) == 2)
            && self.is_connected()
    }

    /// Splits at cut vertices that are free on both sides, recursively, down
    /// to indecomposable pieces. The part multiset is unique up to order;
    /// parts are reported sorted by least vertex.
    pub fn decompose(&self) -> Decomposition {
        let mut parts = Vec::new();
        for comp in self.connected_components() {
            split_indecomposable(self, comp, &mut parts);
        }
        parts.sort();
        let mut gluing = Vec::new();
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                let shared: Vec<usize> = parts[i]
                    .iter()
                    .copied()
                    .filter(|v| parts[j].binary_search(v).is_ok())
                    .collect();
                debug_assert!(shared.len() <= 1);
                if let [v] = shared[..] {
                    gluing.push((i, j, v));
                }
            }
        }
        Decomposition { parts, gluing }
    }

    /// Every `T` with the cut-point property (plus the empty set), each with
    /// the connected components of the complement-induced subgraph. The
    /// `2^n` enumeration refuses `n > limit`.
    pub fn cut_point_sets_with_limit(&self, limit: usize) -> Result<Vec<CutSet>, GraphError> {
        if self.n > limit || self.n > 63 {
            return Err(GraphError::TooLarge {
                n: self.n,
                limit: limit.min(63),
            });
        }
        let n = self.n;
        let adj: Vec<u64> = (1..=n)
            .map(|v| {
                self.neighbors(v)
                    .iter()
                    .fold(0u64, |m, &w| m | (1 << (w - 1)))
            })
            .collect();
        let mut out = Vec::new();
        let full: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };
        let mut comp_id = vec![usize::MAX; n];
        for t_mask in 0..=full {
            let tbar = full & !t_mask;
            // Component labels of G[tbar].
            let mut num_comps = 0;
            comp_id.iter_mut().for_each(|c| *c = usize::MAX);
            let mut comp_masks: Vec<u64> = Vec::new();
            let mut remaining = tbar;
            while remaining != 0 {
                let seed = remaining & remaining.wrapping_neg();
                let mut comp = seed;
                loop {
                    let mut grow = 0u64;
                    let mut bits = comp;
                    while bits != 0 {
                        let b = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        grow |= adj[b];
                    }
                    grow &= tbar & !comp;
                    if grow == 0 {
                        break;
                    }
                    comp |= grow;
                }
                let mut bits = comp;
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    comp_id[b] = num_comps;
                }
                comp_masks.push(comp);
                num_comps += 1;
                remaining &= !comp;
            }
            // i is a cut vertex of G[tbar + i] iff it touches >= 2 components
            // of G[tbar].
            let mut ok = true;
            let mut bits = t_mask;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let mut labels_seen = 0u64;
                let mut count = 0;
                let mut nb = adj[b] & tbar;
                while nb != 0 {
                    let w = nb.trailing_zeros() as usize;
                    nb &= nb - 1;
                    let id = comp_id[w];
                    if labels_seen & (1 << id) == 0 {
                        labels_seen |= 1 << id;
                        count += 1;
                        if count >= 2 {
                            break;
                        }
                    }
                }
                if count < 2 {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            let t: Vec<usize> = (0..n)
                .filter(|b| t_mask & (1 << b) != 0)
                .map(|b| b + 1)
                .collect();
            let components: Vec<Vec<usize>> = comp_masks
                .iter()
                .map(|&m| {
                    (0..n)
                        .filter(|b| m & (1 << b) != 0)
                        .map(|b| b + 1)
                        .collect()
                })
                .collect();
            out.push(CutSet { t, components });
        }
        out.sort_by(|a, b| (a.t.len(), &a.t).cmp(&(b.t.len(), &b.t)));
        Ok(out)
    }

    pub fn cut_point_sets(&self) -> Result<Vec<CutSet>, GraphError> {
        self.cut_point_sets_with_limit(DEFAULT_SUBSET_LIMIT)
    }

    /// `max_T (n - |T| + c(T))` over the cut-point sets: the Krull dimension
    /// of `S/J_G`.
    pub fn dimension_from_cutsets_with_limit(&self, limit: usize) -> Result<usize, GraphError> {
        let sets = self.cut_point_sets_with_limit(limit)?;
        Ok(sets
            .iter()
            .map(|c| self.n - c.t.len() + c.components.len())
            .max()
            .unwrap_or(0))
    }

    pub fn dimension_from_cutsets(&self) -> Result<usize, GraphError> {
        self.dimension_from_cutsets_with_limit(DEFAULT_SUBSET_LIMIT)
    }

    /// Lexicographically least relabeling; naive `n!` scan, guarded.
    pub fn canonical_form(&self) -> Result<Graph, GraphError> {
        if self.n > CANONICAL_LIMIT {
            return Err(GraphError::TooLarge {
                n: self.n,
                limit: CANONICAL_LIMIT,
            });
        }
        let mut perm: Vec<usize> = (1..=self.n).collect();
        let mut best: Option<Vec<(usize, usize)>> = None;
        permute_all(&mut perm, 0, &mut |p| {
            let mut edges: Vec<(usize, usize)> = self
                .edges
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (p[u - 1], p[v - 1]);
                    (a.min(b), a.max(b))
                })
                .collect();
            edges.sort_unstable();
            if best.as_ref().is_none_or(|b| &edges < b) {
                best = Some(edges);
            }
        });
        Graph::new(self.n, best.unwrap_or_default())
    }

    /// Parses the edge-list text format: `n m` on the first data line, then
    /// `m` lines `u v`. `#` starts a comment; blank lines are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_num = lineno + 1;
            let data = raw.split('#').next().unwrap_or("");
            if data.trim().is_empty() {
                continue;
            }
            let fields = parse_int_fields(data, line_num)?;
            let (a, b) = match fields[..] {
                [(a, _), (b, _)] => (a, b),
                _ => {
                    return Err(EdgeListError {
                        line: line_num,
                        col: 1,
                        msg: format!("expected 2 integers, found {}", fields.len()),
                    })
                }
            };
            match header {
                None => header = Some((a, b)),
                Some((n, m)) => {
                    if edges.len() >= m {
                        return Err(EdgeListError {
                            line: line_num,
                            col: 1,
                            msg: format!("more than the declared {m} edges"),
                        });
                    }
                    if a == b {
                        return Err(EdgeListError {
                            line: line_num,
                            col: fields[0].1,
                            msg: format!("loop edge ({a},{b})"),
                        });
                    }
                    for (v, col) in fields {
                        if v < 1 || v > n {
                            return Err(EdgeListError {
                                line: line_num,
                                col,
                                msg: format!("vertex {v} out of range 1..={n}"),
                            });
                        }
                    }
                    edges.push((a, b));
                }
            }
        }
        let (n, m) = header.ok_or(EdgeListError {
            line: 1,
            col: 1,
            msg: "missing `n m` header line".into(),
        })?;
        if edges.len() != m {
            return Err(EdgeListError {
                line: text.lines().count(),
                col: 1,
                msg: format!("declared {m} edges, found {}", edges.len()),
            });
        }
        Graph::new(n, edges).map_err(|e| EdgeListError {
            line: 1,
            col: 1,
            msg: e.to_string(),
        })
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

fn parse_int_fields(data: &str, line: usize) -> Result<Vec<(usize, usize)>, EdgeListError> {
    let mut fields = Vec::new();
    let mut col = 1usize;
    for token in data.split_whitespace() {
        let tok_col = data[..].find(token).map(|i| i + 1).unwrap_or(col);
        let v: usize = token.parse().map_err(|_| EdgeListError {
            line,
            col: tok_col,
            msg: format!("expected a positive integer, found `{token}`"),
        })?;
        fields.push((v, tok_col));
        col = tok_col + token.len();
    }
    Ok(fields)
}

fn permute_all(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute_all(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

/// Recursive binary splitting: a cut vertex whose removal leaves exactly two
/// components, with a clique neighborhood on each side, is a valid split
/// point (any grouping of three or more components puts nonadjacent
/// neighbors on one side).
fn split_indecomposable(g: &Graph, verts: Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if verts.len() >= 3 {
        for &v in &verts {
            let rest: Vec<usize> = verts.iter().copied().filter(|&w| w != v).collect();
            let comps = g.components_within(&rest);
            if comps.len() != 2 {
                continue;
            }
            let splits_cleanly = comps.iter().all(|comp| {
                let nbrs: Vec<usize> = g
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|w| comp.binary_search(w).is_ok())
                    .collect();
                g.is_clique(&nbrs)
            });
            if splits_cleanly {
                for comp in comps {
                    let mut side = comp;
                    side.push(v);
                    side.sort_unstable();
                    split_indecomposable(g, side, out);
                }
                return;
            }
        }
    }
    out.push(verts);
}

/// One minimal prime `P_T(G)`: the set `T` together with the connected
/// components of the graph induced on its complement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutSet {
    pub t: Vec<usize>,
    pub components: Vec<Vec<usize>>,
}

/// Decomposition into indecomposable induced subgraphs. `gluing` records
/// `(i, j, v)` for parts i and j (0-based) sharing the free vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub parts: Vec<Vec<usize>>,
    pub gluing: Vec<(usize, usize, usize)>,
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} vertices, {} edges", self.n, self.edges.len())
    }
}

/// Labeled-graph enumeration used by sweeps and tests.
pub mod enumerate {
    use super::Graph;

    /// The `binom(n,2)` vertex pairs in lexicographic order; bit `k` of an
    /// edge mask refers to `pairs[k]`.
    pub fn edge_pairs(n: usize) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                pairs.push((u, v));
            }
        }
        pairs
    }

    pub fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &e)| e);
        Graph::new(n, edges).unwrap()
    }

    /// All `2^binom(n,2)` labeled graphs on `[n]` (`n <= 11` so the edge
    /// mask fits in 64 bits).
    pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
        let pairs = edge_pairs(n);
        assert!(pairs.len() < 63, "edge mask overflow for n = {n}");
        let total: u64 = 1u64 << pairs.len();
        (0..total).map(move |mask| graph_from_mask(n, &pairs, mask))
    }

    pub fn connected_labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
        labeled_graphs(n).filter(|g| g.is_connected())
    }
}
