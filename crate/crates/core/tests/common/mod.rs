//! Independent reference implementations used to cross-check the library.
//! Everything here is deliberately naive and shares no code with the
//! implementations under test.
#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;

use bei_core::graph::Graph;
use bei_core::oracle::Monomial;
use bei_core::poly::IntPoly;

/// Component count of the induced subgraph on `verts`, by plain DFS over an
/// adjacency list rebuilt from the edge set.
pub fn naive_component_count(g: &Graph, verts: &[usize]) -> usize {
    let mut adj = vec![Vec::new(); g.n() + 1];
    for &(u, v) in g.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut in_set = vec![false; g.n() + 1];
    for &v in verts {
        in_set[v] = true;
    }
    let mut seen = vec![false; g.n() + 1];
    let mut count = 0;
    for &start in verts {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if in_set[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// Brute-force cut-point sets straight from the definition: `T` qualifies
/// when `T` is empty or every `i` in `T` is a cut vertex of the graph
/// induced on `(complement of T) + i`.
pub fn naive_cut_point_sets(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        let t: Vec<usize> = (1..=n).filter(|v| mask & (1 << (v - 1)) != 0).collect();
        let tbar: Vec<usize> = (1..=n).filter(|v| mask & (1 << (v - 1)) == 0).collect();
        let ok = t.iter().all(|&i| {
            let mut with_i = tbar.clone();
            with_i.push(i);
            naive_component_count(g, &tbar) > naive_component_count(g, &with_i)
        });
        if ok {
            out.push(t);
        }
    }
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// Hilbert numerator of a monomial ideal by inclusion-exclusion over
/// generator subsets: `N(t) = sum_S (-1)^{|S|} t^{deg lcm(S)}`.
pub fn inclusion_exclusion_numerator(gens: &[Monomial]) -> IntPoly {
    assert!(gens.len() <= 20, "subset blowup");
    let mut acc = IntPoly::zero();
    for mask in 0u32..(1 << gens.len()) {
        let mut lcm = Monomial::one();
        for (k, g) in gens.iter().enumerate() {
            if mask & (1 << k) != 0 {
                lcm = lcm.lcm(g);
            }
        }
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        acc = &acc + &IntPoly::monomial(BigInt::from(sign), lcm.total_degree() as usize);
    }
    acc
}

/// Number of maximal cliques containing `v`, by subset enumeration
/// (`n <= ~15`).
pub fn maximal_cliques_containing(g: &Graph, v: usize) -> usize {
    let n = g.n();
    let mut cliques: Vec<u64> = Vec::new();
    for mask in 1u64..(1 << n) {
        let verts: Vec<usize> = (1..=n).filter(|w| mask & (1 << (w - 1)) != 0).collect();
        if g.is_clique(&verts) {
            cliques.push(mask);
        }
    }
    cliques
        .iter()
        .filter(|&&m| m & (1 << (v - 1)) != 0 && !cliques.iter().any(|&m2| m2 != m && m2 & m == m))
        .count()
}

pub fn random_graph(rng: &mut impl Rng, n: usize, edge_prob: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(edge_prob) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Random monomial in variable codes `0..nvars` with exponents `1..=3`.
pub fn random_monomial(rng: &mut impl Rng, nvars: u16) -> Monomial {
    let k = rng.gen_range(1..=3.min(nvars));
    let mut pairs = Vec::new();
    for _ in 0..k {
        pairs.push((rng.gen_range(0..nvars), rng.gen_range(1..=3u16)));
    }
    Monomial::from_pairs(&pairs)
}

/// All ways to write `total` as an ordered sum of positive parts, at least
/// `min_parts` of them.
pub fn compositions(total: usize, min_parts: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for first in 1..=rest {
            cur.push(first);
            rec(rest - first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, &mut Vec::new(), &mut out);
    out.retain(|c| c.len() >= min_parts);
    out
}
