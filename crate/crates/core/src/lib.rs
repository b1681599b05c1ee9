//! Homology of the cyclic bar construction of the truncated polynomial monoid
//! `Π_k = {0, 1, x, ..., x^(k-1)}` and relative periodic topological cyclic
//! homology of `F_p[x]/(x^k)`.
//!
//! The weight-`i` piece of `N^cy(Π_k)` is enumerated combinatorially, its reduced
//! normalized chain complex is built with sparse boundary matrices and its
//! integral homology is read off Smith normal forms. The [`tate_tp`] module
//! evaluates the closed forms for `TP_j(F_p[x]/(x^k), (x))` and decides whether
//! the map to `TP_*(F_p)` is an isomorphism, integrally or after inverting `p`.

pub mod checks;
pub mod cli;
pub mod cyclic_bar;
pub mod error;
pub mod homology;
pub mod monoid;
pub mod snf;
pub mod tate_tp;

pub use cyclic_bar::{enumerate_weight_component, generated_cyclic_subset, CyclicBar, Simplex, WeightComponent};
pub use error::{Error, Result};
pub use homology::{chain_complex, homology_groups, verify_weight_piece, weight_homology, AbelianGroup, ChainComplex};
pub use monoid::{Element, PointedMonoid};
pub use tate_tp::{nil_invariance_report, relative_tp, Prime, TpReport};
