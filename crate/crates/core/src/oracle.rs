//! Ground-truth Hilbert series from first principles.
//!
//! For a graph `G` the series of `S/J_G` equals the series of `S/in(J_G)`
//! for any global monomial order, so the oracle computes a reduced Groebner
//! basis of the edge binomials, takes the initial monomial ideal, and
//! evaluates its Hilbert numerator by the classical pivot recursion
//! `N(I) = N(I + (x)) + t * N(I : x)`.
//!
//! Variables of `S = K[x_1..x_n, y_1..y_n]` are encoded as `x_i -> 2(i-1)`,
//! `y_i -> 2(i-1)+1`, which keeps both monomial orders independent of `n`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::formula::{self, AnalyzeOptions, SeriesDerivation};
use crate::graph::{enumerate, Graph, GraphError, DEFAULT_SUBSET_LIMIT};
use crate::poly::IntPoly;
use crate::series::PoleSeries;

/// Default cap on the number of ring variables (`2n`), i.e. graphs up to 8
/// vertices; override with [`oracle_series_with`] or the `BEI_MAX_VARS`
/// environment variable at the CLI.
pub const DEFAULT_MAX_VARS: usize = 16;

pub const MAX_VARS_ENV: &str = "BEI_MAX_VARS";

/// Size guard honoring `BEI_MAX_VARS` when set.
pub fn default_max_vars() -> usize {
    std::env::var(MAX_VARS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_VARS)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("computation needs {vars} variables, exceeding the guard {max} (raise it explicitly to proceed)")]
    SizeGuard { vars: usize, max: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Global monomial orders on `K[x_1..x_n, y_1..y_n]`. Both make the leading
/// monomial of an edge binomial `x_i y_j - x_j y_i` (with `i < j`) equal to
/// `x_i y_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MonomialOrder {
    /// Degree first; ties by the reverse-lexicographic rule that prefers a
    /// smaller exponent on the least significant differing variable, with
    /// `y_1` least significant among the `y`s and every `y` less significant
    /// than every `x`.
    DegRevLex,
    /// Plain lexicographic with `x_1 > ... > x_n > y_1 > ... > y_n`.
    Lex,
}

/// Power product in the `2n` variables, sparse and sorted by variable code.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<(u16, u16)>,
    deg: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            exps: Vec::new(),
            deg: 0,
        }
    }

    pub fn var(code: u16) -> Self {
        Monomial {
            exps: vec![(code, 1)],
            deg: 1,
        }
    }

    /// `x_i`, 1-based.
    pub fn x(i: usize) -> Self {
        Monomial::var(2 * (i as u16 - 1))
    }

    /// `y_i`, 1-based.
    pub fn y(i: usize) -> Self {
        Monomial::var(2 * (i as u16 - 1) + 1)
    }

    pub fn from_pairs(pairs: &[(u16, u16)]) -> Self {
        let mut map: BTreeMap<u16, u16> = BTreeMap::new();
        for &(v, e) in pairs {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        let exps: Vec<(u16, u16)> = map.into_iter().collect();
        let deg = exps.iter().map(|&(_, e)| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.deg
    }

    pub fn exp(&self, code: u16) -> u16 {
        self.exps
            .binary_search_by_key(&code, |&(v, _)| v)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = u16> + '_ {
        self.exps.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() || j < other.exps.len() {
            match (self.exps.get(i), other.exps.get(j)) {
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        exps.push((va, ea));
                        i += 1;
                    }
                    Ordering::Greater => {
                        exps.push((vb, eb));
                        j += 1;
                    }
                    Ordering::Equal => {
                        exps.push((va, ea + eb));
                        i += 1;
                        j += 1;
                    }
                },
                (Some(&t), None) => {
                    exps.push(t);
                    i += 1;
                }
                (None, Some(&t)) => {
                    exps.push(t);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial {
            deg: self.deg + other.deg,
            exps,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().all(|&(v, e)| e <= other.exp(v))
    }

    /// `other / self`, assuming divisibility.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let exps: Vec<(u16, u16)> = other
            .exps
            .iter()
            .filter_map(|&(v, e)| {
                let r = e - self.exp(v);
                (r > 0).then_some((v, r))
            })
            .collect();
        Monomial {
            deg: other.deg - self.deg,
            exps,
        }
    }

    /// Divide by one power of variable `code`, assuming it occurs.
    pub fn div_var_once(&self, code: u16) -> Monomial {
        debug_assert!(self.exp(code) > 0);
        let exps: Vec<(u16, u16)> = self
            .exps
            .iter()
            .filter_map(|&(v, e)| {
                let e = if v == code { e - 1 } else { e };
                (e > 0).then_some((v, e))
            })
            .collect();
        Monomial {
            deg: self.deg - 1,
            exps,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len().max(other.exps.len()));
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() || j < other.exps.len() {
            match (self.exps.get(i), other.exps.get(j)) {
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        exps.push((va, ea));
                        i += 1;
                    }
                    Ordering::Greater => {
                        exps.push((vb, eb));
                        j += 1;
                    }
                    Ordering::Equal => {
                        exps.push((va, ea.max(eb)));
                        i += 1;
                        j += 1;
                    }
                },
                (Some(&t), None) => {
                    exps.push(t);
                    i += 1;
                }
                (None, Some(&t)) => {
                    exps.push(t);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        let deg = exps.iter().map(|&(_, e)| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|&(v, _)| other.exp(v) == 0)
    }

    /// Smallest even and smallest odd variable codes at which the exponents
    /// differ.
    fn first_diffs(&self, other: &Monomial) -> (Option<u16>, Option<u16>) {
        let mut even = None;
        let mut odd = None;
        {
            let mut consider = |v: u16| {
                if v.is_multiple_of(2) {
                    if even.is_none_or(|w| v < w) {
                        even = Some(v);
                    }
                } else if odd.is_none_or(|w| v < w) {
                    odd = Some(v);
                }
            };
            for &(v, e) in &self.exps {
                if other.exp(v) != e {
                    consider(v);
                }
            }
            for &(v, e) in &other.exps {
                if self.exp(v) != e {
                    consider(v);
                }
            }
        }
        (even, odd)
    }

    pub fn cmp_order(&self, other: &Monomial, ord: MonomialOrder) -> Ordering {
        match ord {
            MonomialOrder::DegRevLex => match self.deg.cmp(&other.deg) {
                Ordering::Equal => {
                    let (even, odd) = self.first_diffs(other);
                    // the y block is less significant; smaller exponent on
                    // the chosen variable means the larger monomial
                    match odd.or(even) {
                        Some(v) => other.exp(v).cmp(&self.exp(v)),
                        None => Ordering::Equal,
                    }
                }
                o => o,
            },
            MonomialOrder::Lex => {
                let (even, odd) = self.first_diffs(other);
                match even.or(odd) {
                    Some(v) => self.exp(v).cmp(&other.exp(v)),
                    None => Ordering::Equal,
                }
            }
        }
    }

    /// Renders like `x1*y2` or `y3^2`; the empty product is `1`.
    pub fn render(&self) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts: Vec<(u16, u16)> = self.exps.clone();
        parts.sort_by_key(|&(v, _)| (v % 2, v));
        parts
            .iter()
            .map(|&(v, e)| {
                let name = if v % 2 == 0 { "x" } else { "y" };
                let idx = v / 2 + 1;
                if e == 1 {
                    format!("{name}{idx}")
                } else {
                    format!("{name}{idx}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Multivariate polynomial over exact rationals; terms strictly descending
/// under the order passed to each operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    terms: Vec<(Monomial, BigRational)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn from_terms(terms: Vec<(Monomial, BigRational)>, ord: MonomialOrder) -> Self {
        let mut terms = terms;
        terms.sort_by(|a, b| b.0.cmp_order(&a.0, ord));
        let mut merged: Vec<(Monomial, BigRational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match merged.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Poly { terms: merged }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn pop_leading(&mut self) -> (Monomial, BigRational) {
        self.terms.remove(0)
    }

    pub fn monic(mut self) -> Poly {
        if let Some((_, lc)) = self.terms.first() {
            let lc = lc.clone();
            if !lc.is_one() {
                for (_, c) in &mut self.terms {
                    *c /= &lc;
                }
            }
        }
        self
    }

    /// `self - c * m * other`; all term lists sorted under `ord`.
    pub fn sub_scaled(
        &self,
        c: &BigRational,
        m: &Monomial,
        other: &Poly,
        ord: MonomialOrder,
    ) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let rhs = other.terms.get(j).map(|(om, oc)| (m.mul(om), -(c * oc)));
            match (self.terms.get(i), rhs) {
                (Some((sm, sc)), Some((rm, rc))) => match sm.cmp_order(&rm, ord) {
                    Ordering::Greater => {
                        out.push((sm.clone(), sc.clone()));
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push((rm, rc));
                        j += 1;
                    }
                    Ordering::Equal => {
                        let sum = sc + &rc;
                        if !sum.is_zero() {
                            out.push((rm, sum));
                        }
                        i += 1;
                        j += 1;
                    }
                },
                (Some((sm, sc)), None) => {
                    out.push((sm.clone(), sc.clone()));
                    i += 1;
                }
                (None, Some(t)) => {
                    out.push(t);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Poly { terms: out }
    }

    /// One line of the dump format: terms `±c*vars` joined by spaces.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            let _ = write!(out, "{sign}{}*{}", c.abs(), m.render());
        }
        out
    }
}

/// One binomial `x_i y_j - x_j y_i` per edge.
pub fn binomial_generators(g: &Graph, ord: MonomialOrder) -> Vec<Poly> {
    g.edges()
        .iter()
        .map(|&(i, j)| {
            Poly::from_terms(
                vec![
                    (Monomial::x(i).mul(&Monomial::y(j)), BigRational::one()),
                    (Monomial::x(j).mul(&Monomial::y(i)), -BigRational::one()),
                ],
                ord,
            )
        })
        .collect()
}

/// Full normal form: every term of the result is irreducible modulo the
/// leading monomials of `basis`.
pub fn normal_form(mut p: Poly, basis: &[Poly], ord: MonomialOrder) -> Poly {
    let mut out: Vec<(Monomial, BigRational)> = Vec::new();
    'outer: while let Some((lm, lc)) = p.leading() {
        for g in basis {
            let (gm, gc) = g.leading().expect("basis elements are nonzero");
            if gm.divides(lm) {
                let m = gm.div_into(lm);
                let c = lc / gc;
                p = p.sub_scaled(&c, &m, g, ord);
                continue 'outer;
            }
        }
        let t = p.pop_leading();
        out.push(t);
    }
    Poly { terms: out }
}

fn spoly(f: &Poly, g: &Poly, ord: MonomialOrder) -> Poly {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let lcm = fm.lcm(gm);
    let mf = fm.div_into(&lcm);
    let mg = gm.div_into(&lcm);
    let scaled_f = Poly {
        terms: f.terms.iter().map(|(m, c)| (mf.mul(m), c / fc)).collect(),
    };
    scaled_f.sub_scaled(&(BigRational::one() / gc), &mg, g, ord)
}

/// Buchberger with the normal selection strategy (lowest lcm degree first)
/// and the coprimality and chain criteria; returns the reduced Groebner
/// basis, sorted ascending by leading monomial.
pub fn groebner(gens: &[Poly], ord: MonomialOrder) -> Vec<Poly> {
    let mut basis: Vec<Poly> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .cloned()
        .map(Poly::monic)
        .collect();

    // Deterministic priority queue keyed by (lcm degree, lcm, i, j).
    type Key = (u32, Vec<(u16, u16)>, usize, usize);
    let key = |basis: &[Poly], i: usize, j: usize| -> Key {
        let lcm = basis[i].leading_monomial().lcm(basis[j].leading_monomial());
        (lcm.total_degree(), lcm.exps.clone(), i, j)
    };
    let mut queue: BTreeSet<Key> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            queue.insert(key(&basis, i, j));
            pending.insert((i, j));
        }
    }

    while let Some(k) = queue.iter().next().cloned() {
        queue.remove(&k);
        let (_, _, i, j) = k;
        pending.remove(&(i, j));

        let lt_i = basis[i].leading_monomial();
        let lt_j = basis[j].leading_monomial();
        // Criterion 1: coprime leading monomials reduce to zero.
        if lt_i.coprime(lt_j) {
            continue;
        }
        // Chain criterion: some LT_k divides the lcm and both companion
        // pairs were already handled.
        let lcm = lt_i.lcm(lt_j);
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chained {
            continue;
        }

        let s = spoly(&basis[i], &basis[j], ord);
        let r = normal_form(s, &basis, ord);
        if !r.is_zero() {
            let r = r.monic();
            basis.push(r);
            let new = basis.len() - 1;
            for i in 0..new {
                queue.insert(key(&basis, i, new));
                pending.insert((i, new));
            }
        }
    }

    reduce_basis(basis, ord)
}

/// Minimalize by leading monomials and tail-reduce: the unique reduced
/// Groebner basis for the given order.
fn reduce_basis(mut basis: Vec<Poly>, ord: MonomialOrder) -> Vec<Poly> {
    basis.sort_by(|a, b| a.leading_monomial().cmp_order(b.leading_monomial(), ord));
    let mut kept: Vec<Poly> = Vec::new();
    for g in basis {
        if !kept
            .iter()
            .any(|h| h.leading_monomial().divides(g.leading_monomial()))
        {
            kept.push(g);
        }
    }
    for i in 0..kept.len() {
        let mut others = kept.clone();
        let gi = others.remove(i);
        kept[i] = normal_form(gi, &others, ord);
    }
    kept.sort_by(|a, b| a.leading_monomial().cmp_order(b.leading_monomial(), ord));
    kept
}

/// Buchberger postcondition: every S-polynomial reduces to zero.
pub fn is_groebner(basis: &[Poly], ord: MonomialOrder) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = spoly(&basis[i], &basis[j], ord);
            if !normal_form(s, basis, ord).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Dump format: one polynomial per line, lines ascending by leading
/// monomial under the active order.
pub fn render_gb(gb: &[Poly]) -> String {
    gb.iter().map(Poly::render).collect::<Vec<_>>().join("\n")
}

/// Monomial ideal given by its minimal (antichain) generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(gens: Vec<Monomial>) -> Self {
        MonomialIdeal {
            gens: minimalize(gens),
        }
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| (m.total_degree(), m.exps.clone()));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    for g in gens {
        if !kept.iter().any(|h| h.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

/// Leading monomials of a Groebner basis, minimalized.
pub fn initial_ideal(gb: &[Poly], _ord: MonomialOrder) -> MonomialIdeal {
    MonomialIdeal::new(
        gb.iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.leading_monomial().clone())
            .collect(),
    )
}

/// Numerator `N(t)` with `Hilb(S/I) = N(t)/(1-t)^nvars`. The recursion
/// splits on the most frequently occurring variable (ties to the lowest
/// index, `x` block before `y`); pairwise-coprime generator sets
/// short-circuit to a product of `(1 - t^deg)` factors.
pub fn monomial_numerator(ideal: &MonomialIdeal, nvars: usize) -> IntPoly {
    debug_assert!(ideal
        .gens
        .iter()
        .flat_map(|m| m.vars())
        .all(|v| (v as usize) < nvars));
    numerator_rec(ideal.gens.clone())
}

fn numerator_rec(gens: Vec<Monomial>) -> IntPoly {
    if gens.is_empty() {
        return IntPoly::one();
    }
    if gens.iter().any(Monomial::is_one) {
        return IntPoly::zero();
    }
    // Occurrence counts double as the coprimality test: every variable in at
    // most one generator means the generators form a regular sequence.
    let mut counts: BTreeMap<u16, usize> = BTreeMap::new();
    for g in &gens {
        for v in g.vars() {
            *counts.entry(v).or_insert(0) += 1;
        }
    }
    // Highest count wins; ties go to the lowest spec index (x block first).
    let (pivot, max_count) = counts
        .iter()
        .map(|(&v, &c)| (v, c))
        .max_by_key(|&(v, c)| (c, std::cmp::Reverse((v % 2, v))))
        .unwrap();
    if max_count == 1 {
        let mut acc = IntPoly::one();
        for g in &gens {
            let f = &IntPoly::one() - &IntPoly::monomial(BigInt::one(), g.total_degree() as usize);
            acc = &acc * &f;
        }
        return acc;
    }
    // I + (pivot): generators not involving the pivot, plus the pivot.
    let mut plus: Vec<Monomial> = gens.iter().filter(|g| g.exp(pivot) == 0).cloned().collect();
    plus.push(Monomial::var(pivot));
    // I : pivot
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            if g.exp(pivot) > 0 {
                g.div_var_once(pivot)
            } else {
                g.clone()
            }
        })
        .collect();
    let n_plus = numerator_rec(plus);
    let n_colon = numerator_rec(minimalize(colon));
    &n_plus + &n_colon.shift_up(1)
}

/// End-to-end oracle: binomial generators, Groebner basis, initial ideal,
/// Hilbert numerator, normalized series.
pub fn oracle_series_with(
    g: &Graph,
    ord: MonomialOrder,
    max_vars: usize,
) -> Result<PoleSeries, OracleError> {
    let vars = 2 * g.n();
    if vars > max_vars {
        return Err(OracleError::SizeGuard {
            vars,
            max: max_vars,
        });
    }
    let gens = binomial_generators(g, ord);
    let gb = groebner(&gens, ord);
    let ini = initial_ideal(&gb, ord);
    let num = monomial_numerator(&ini, vars);
    Ok(PoleSeries::new(num, vars as i64))
}

pub fn oracle_series(g: &Graph) -> Result<PoleSeries, OracleError> {
    oracle_series_with(g, MonomialOrder::DegRevLex, DEFAULT_MAX_VARS)
}

/// Structured comparison of the formula engine against the oracle.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub graph: Graph,
    pub derivation: SeriesDerivation,
    pub oracle: PoleSeries,
    pub matches: bool,
    pub used_fallback: bool,
    /// `max_T (n - |T| + c(T))`; absent when the subset guard bites.
    pub dim_from_cutsets: Option<usize>,
    pub dim_consistent: bool,
}

pub fn verify_with(g: &Graph, opts: &AnalyzeOptions) -> Result<VerifyReport, OracleError> {
    let derivation = formula::analyze_with(g, opts)?;
    let oracle = oracle_series_with(g, opts.order, opts.max_vars)?;
    let matches = derivation.result == oracle;
    let dim_from_cutsets = if g.n() <= DEFAULT_SUBSET_LIMIT {
        Some(g.dimension_from_cutsets()?)
    } else {
        None
    };
    let dim_consistent = dim_from_cutsets.is_none_or(|d| d == oracle.pole());
    Ok(VerifyReport {
        used_fallback: derivation.uses_fallback(),
        graph: g.clone(),
        derivation,
        oracle,
        matches,
        dim_from_cutsets,
        dim_consistent,
    })
}

pub fn verify(g: &Graph) -> Result<VerifyReport, OracleError> {
    verify_with(g, &AnalyzeOptions::default())
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub max_n: usize,
    pub order: MonomialOrder,
    pub max_vars: usize,
    /// Deduplicate isomorphic graphs by naive canonicalization (n <= 7).
    pub dedup: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            max_n: 6,
            order: MonomialOrder::DegRevLex,
            max_vars: DEFAULT_MAX_VARS,
            dedup: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub graphs: usize,
    /// Graphs whose series came entirely from closed-form rules, each
    /// checked against the oracle.
    pub formula_checked: usize,
    /// Graphs where the dispatcher fell back to the oracle.
    pub fallback: usize,
    pub mismatches: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub mismatched: Vec<Graph>,
}

impl SweepReport {
    pub fn total_mismatches(&self) -> usize {
        self.rows.iter().map(|r| r.mismatches).sum()
    }
    pub fn total_graphs(&self) -> usize {
        self.rows.iter().map(|r| r.graphs).sum()
    }
}

/// Verifies every connected labeled graph on `1..=max_n` vertices:
/// formula-derived series must equal the oracle exactly.
pub fn sweep(opts: &SweepOptions) -> Result<SweepReport, OracleError> {
    let mut rows = Vec::new();
    let mut mismatched = Vec::new();
    let analyze_opts = AnalyzeOptions {
        order: opts.order,
        max_vars: opts.max_vars,
    };
    for n in 1..=opts.max_n {
        let mut graphs: Vec<Graph> = enumerate::connected_labeled_graphs(n).collect();
        if opts.dedup {
            let mut seen = BTreeSet::new();
            let mut deduped = Vec::new();
            for g in graphs {
                if seen.insert(g.canonical_form()?) {
                    deduped.push(g);
                }
            }
            graphs = deduped;
        }
        let outcomes: Result<Vec<(bool, bool, Graph)>, OracleError> = graphs
            .par_iter()
            .map(|g| {
                let derivation = formula::analyze_with(g, &analyze_opts)?;
                if derivation.uses_fallback() {
                    // The fallback result *is* the oracle series.
                    Ok((false, true, g.clone()))
                } else {
                    let oracle = oracle_series_with(g, opts.order, opts.max_vars)?;
                    Ok((true, derivation.result == oracle, g.clone()))
                }
            })
            .collect();
        let outcomes = outcomes?;
        let formula_checked = outcomes.iter().filter(|(f, _, _)| *f).count();
        let mismatches = outcomes.iter().filter(|(_, ok, _)| !ok).count();
        mismatched.extend(
            outcomes
                .iter()
                .filter(|(_, ok, _)| !ok)
                .map(|(_, _, g)| g.clone()),
        );
        rows.push(SweepRow {
            n,
            graphs: outcomes.len(),
            formula_checked,
            fallback: outcomes.len() - formula_checked,
            mismatches,
        });
    }
    Ok(SweepReport { rows, mismatched })
}
