//! Exact Hilbert series of binomial edge ideals.
//!
//! For a finite simple graph `G` on `[n]`, the binomial edge ideal
//! `J_G = (x_i y_j - x_j y_i : {i,j} in E(G))` lives in the polynomial ring
//! `K[x_1..x_n, y_1..y_n]`. This crate computes the Hilbert series of
//! `S/J_G` two independent ways:
//!
//! * [`formula`] — closed forms for complete graphs, paths, cycles,
//!   lollipops, fans, multi-fans, wheels and complete multipartite graphs,
//!   plus structural rules (decomposition products and join splitting) that
//!   reduce arbitrary graphs to those bases;
//! * [`oracle`] — a from-first-principles route: Buchberger's algorithm,
//!   the initial ideal, and a pivot recursion for the Hilbert numerator of
//!   a monomial ideal.
//!
//! Every closed form is cross-checked against the oracle; [`oracle::verify`]
//! and [`oracle::sweep`] package that comparison.
//!
//! ```
//! use bei_core::{family, formula, oracle};
//!
//! let g = family::parse("wheel:5").unwrap().build().unwrap();
//! let derivation = formula::analyze(&g).unwrap();
//! assert_eq!(derivation.result.to_string(), "(2t^4-4t^3+2t^2+4t+1)/(1-t)^6");
//! assert_eq!(derivation.result, oracle::oracle_series(&g).unwrap());
//!
//! let h = derivation.result.hilbert_data().unwrap();
//! assert_eq!((h.dim, h.multiplicity.to_string().as_str()), (6, "5"));
//! ```

pub mod family;
pub mod formula;
pub mod graph;
pub mod oracle;
pub mod poly;
pub mod series;

pub use family::FamilySpec;
pub use graph::{CutSet, Decomposition, Graph};
pub use oracle::{MonomialOrder, VerifyReport};
pub use poly::IntPoly;
pub use series::{HilbertData, PoleSeries};
