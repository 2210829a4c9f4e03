//! Named graph families and the little DSL that describes them.
//!
//! Canonical labelings (fixed so golden outputs are reproducible):
//! * `path:n` — 1-2-...-n; `cycle:n` closes up n-1.
//! * `complete:n` — all pairs; `kpartite:p1,...,pk` — consecutive blocks.
//! * `lollipop:m;r1,...,rk` — clique on `1..=m`; handle `i` is a path on
//!   `r_i` vertices whose first vertex is identified with clique vertex
//!   `m-k+i`, new vertices labeled consecutively after `m`.
//! * `fan:p,q` — `P_p * K_q^c`; `multifan:p1,...,pr` — disjoint paths with
//!   the apex last; `wheel:n` — cycle on `1..n` plus hub `n` (n >= 4).
//! * `join(A,B)` relabels `B` by `+|A|`; `pjoin(A,q,r)` attaches a
//!   `q`-clique joined to `A` through its first `r` vertices.

use std::fmt;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid family parameter: {0}")]
    InvalidParameter(String),
}

/// Parse failure for the family DSL, with a 1-based character position.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("position {pos}: {msg}")]
pub struct DslError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    KPartite(Vec<usize>),
    Lollipop {
        m: usize,
        handles: Vec<usize>,
    },
    Fan {
        p: usize,
        q: usize,
    },
    MultiFan(Vec<usize>),
    /// Wheel on `n` vertices total: a cycle on `n-1` plus a hub.
    Wheel(usize),
    Join(Box<FamilySpec>, Box<FamilySpec>),
    PartialJoin {
        inner: Box<FamilySpec>,
        q: usize,
        r: usize,
    },
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph, FamilyError> {
        build(self)
    }
}

fn err(msg: impl Into<String>) -> FamilyError {
    FamilyError::InvalidParameter(msg.into())
}

pub fn build(spec: &FamilySpec) -> Result<Graph, FamilyError> {
    match spec {
        FamilySpec::Path(n) => {
            if *n < 1 {
                return Err(err("path needs at least 1 vertex"));
            }
            Ok(Graph::new(*n, (1..*n).map(|i| (i, i + 1))).unwrap())
        }
        FamilySpec::Cycle(n) => {
            if *n < 3 {
                return Err(err(format!("cycle needs at least 3 vertices, got {n}")));
            }
            let mut edges: Vec<_> = (1..*n).map(|i| (i, i + 1)).collect();
            edges.push((1, *n));
            Ok(Graph::new(*n, edges).unwrap())
        }
        FamilySpec::Complete(n) => {
            if *n < 1 {
                return Err(err("complete graph needs at least 1 vertex"));
            }
            Ok(Graph::complete(*n))
        }
        FamilySpec::KPartite(parts) => {
            if parts.is_empty() || parts.contains(&0) {
                return Err(err("kpartite needs nonempty positive parts"));
            }
            let n: usize = parts.iter().sum();
            let mut block = vec![0usize; n + 1];
            let mut v = 1;
            for (b, &p) in parts.iter().enumerate() {
                for _ in 0..p {
                    block[v] = b;
                    v += 1;
                }
            }
            let mut edges = Vec::new();
            for u in 1..=n {
                for w in u + 1..=n {
                    if block[u] != block[w] {
                        edges.push((u, w));
                    }
                }
            }
            Ok(Graph::new(n, edges).unwrap())
        }
        FamilySpec::Lollipop { m, handles } => {
            let k = handles.len();
            if *m < 2 {
                return Err(err(format!("lollipop needs m >= 2, got {m}")));
            }
            if k < 1 || k > *m {
                return Err(err(format!(
                    "lollipop needs 1 <= k <= m handles, got k={k}, m={m}"
                )));
            }
            if handles.contains(&0) {
                return Err(err("handle lengths must be positive"));
            }
            let mut edges: Vec<(usize, usize)> = Vec::new();
            for u in 1..=*m {
                for v in u + 1..=*m {
                    edges.push((u, v));
                }
            }
            let mut next = *m + 1;
            for (i, &r) in handles.iter().enumerate() {
                // Path on r vertices, the first identified with a clique vertex.
                let mut prev = *m - k + i + 1;
                for _ in 1..r {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
            }
            Ok(Graph::new(next - 1, edges).unwrap())
        }
        FamilySpec::Fan { p, q } => {
            if *p < 1 || *q < 1 {
                return Err(err("fan needs p >= 1 and q >= 1"));
            }
            let path = build(&FamilySpec::Path(*p))?;
            Ok(path.join(&Graph::empty(*q)))
        }
        FamilySpec::MultiFan(parts) => {
            if parts.is_empty() || parts.contains(&0) {
                return Err(err("multifan needs nonempty positive path lengths"));
            }
            let mut paths = Graph::empty(0);
            for &p in parts {
                paths = paths.disjoint_union(&build(&FamilySpec::Path(p))?);
            }
            Ok(paths.join(&Graph::complete(1)))
        }
        FamilySpec::Wheel(n) => {
            if *n < 4 {
                return Err(err(format!("wheel needs at least 4 vertices, got {n}")));
            }
            let cycle = build(&FamilySpec::Cycle(*n - 1))?;
            Ok(cycle.join(&Graph::complete(1)))
        }
        FamilySpec::Join(a, b) => Ok(build(a)?.join(&build(b)?)),
        FamilySpec::PartialJoin { inner, q, r } => {
            let base = build(inner)?;
            base.partial_join(*q, *r).map_err(|e| err(e.to_string()))
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn ints(v: &[usize]) -> String {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
        match self {
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::KPartite(p) => write!(f, "kpartite:{}", ints(p)),
            FamilySpec::Lollipop { m, handles } => write!(f, "lollipop:{m};{}", ints(handles)),
            FamilySpec::Fan { p, q } => write!(f, "fan:{p},{q}"),
            FamilySpec::MultiFan(p) => write!(f, "multifan:{}", ints(p)),
            FamilySpec::Wheel(n) => write!(f, "wheel:{n}"),
            FamilySpec::Join(a, b) => write!(f, "join({a},{b})"),
            FamilySpec::PartialJoin { inner, q, r } => write!(f, "pjoin({inner},{q},{r})"),
        }
    }
}

/// Parses expressions like `path:4`, `lollipop:3;2,2`,
/// `join(path:3,complete:2)`, `pjoin(cycle:4,3,2)`.
pub fn parse(expr: &str) -> Result<FamilySpec, DslError> {
    let mut p = Parser {
        src: expr.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(spec)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: impl Into<String>) -> DslError {
        DslError {
            pos: self.pos + 1,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self
            .src
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn eat(&mut self, byte: u8) -> Result<(), DslError> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", byte as char)))
        }
    }

    fn ident(&mut self) -> Result<&'a str, DslError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphabetic())
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a family name"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn int(&mut self) -> Result<usize, DslError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| DslError {
                pos: start + 1,
                msg: "integer too large".into(),
            })
    }

    fn int_list(&mut self) -> Result<Vec<usize>, DslError> {
        let mut out = vec![self.int()?];
        loop {
            self.skip_ws();
            if self.src.get(self.pos) == Some(&b',') {
                self.pos += 1;
                out.push(self.int()?);
            } else {
                return Ok(out);
            }
        }
    }

    fn spec(&mut self) -> Result<FamilySpec, DslError> {
        let name_pos = self.pos;
        let name = self.ident()?;
        match name {
            "join" => {
                self.eat(b'(')?;
                let a = self.spec()?;
                self.eat(b',')?;
                let b = self.spec()?;
                self.eat(b')')?;
                Ok(FamilySpec::Join(Box::new(a), Box::new(b)))
            }
            "pjoin" => {
                self.eat(b'(')?;
                let inner = self.spec()?;
                self.eat(b',')?;
                let q = self.int()?;
                self.eat(b',')?;
                let r = self.int()?;
                self.eat(b')')?;
                Ok(FamilySpec::PartialJoin {
                    inner: Box::new(inner),
                    q,
                    r,
                })
            }
            _ => {
                self.eat(b':')?;
                match name {
                    "path" => Ok(FamilySpec::Path(self.int()?)),
                    "cycle" => Ok(FamilySpec::Cycle(self.int()?)),
                    "complete" => Ok(FamilySpec::Complete(self.int()?)),
                    "kpartite" => Ok(FamilySpec::KPartite(self.int_list()?)),
                    "fan" => {
                        let args = self.int_list()?;
                        match args[..] {
                            [p, q] => Ok(FamilySpec::Fan { p, q }),
                            _ => Err(self.error("fan takes exactly 2 arguments: fan:p,q")),
                        }
                    }
                    "multifan" => Ok(FamilySpec::MultiFan(self.int_list()?)),
                    "wheel" => Ok(FamilySpec::Wheel(self.int()?)),
                    "lollipop" => {
                        let m = self.int()?;
                        self.eat(b';')?;
                        let handles = self.int_list()?;
                        Ok(FamilySpec::Lollipop { m, handles })
                    }
                    other => Err(DslError {
                        pos: name_pos + 1,
                        msg: format!("unknown family `{other}`"),
                    }),
                }
            }
        }
    }
}
