//! Counting constants for Malle-type distribution heuristics.
//!
//! Given a finite transitive permutation group `G` and a counting invariant
//! (discriminant, radical conductor, or a user table), this crate computes
//! the constants that govern the predicted asymptotics `c · X^a (log X)^(b-1)`
//! for the number of `G`-extensions of bounded invariant:
//!
//! * `a(G)` and the classical log exponent `b_M` (orbits of minimal
//!   conjugacy classes under the cyclotomic powering action),
//! * the twisted log exponent `b_T` obtained by maximizing an orbit count
//!   over pairs `(π, φ)` of a quotient map and a cyclotomic character,
//! * per-pair orbit counts by four independent methods, plus the pole
//!   order of the associated Euler product,
//! * embedding-obstruction checks that demote pairs which no actual field
//!   extension can realize, giving a refined prediction `b_new`,
//! * closed-form cross checks for infinite families, kept as independent
//!   oracles so the engine and the formulas audit each other.
//!
//! The library is the primary interface; see `examples/` for one runnable
//! program per capability (`cargo run --example pair_table`, ...). A thin
//! `malle` binary exposes the same entry points as subcommands.
//!
//! | example                  | shows                                         |
//! |--------------------------|-----------------------------------------------|
//! | `build_and_classes`      | group grammar, conjugacy classes, index       |
//! | `pair_table`             | enumerating `(π, φ)` pairs with orbit counts  |
//! | `counting_methods`       | the four orbit-counting routes on one pair    |
//! | `embedding_obstructions` | local solvability of cyclic embedding problems|
//! | `full_report`            | the complete prediction report as JSON        |
//! | `base_field_swap`        | `Q` versus `F_q(t)` changing the answer       |
//! | `closed_form_oracles`    | closed formulas versus the engine, with flags |

pub mod abelian;
mod arith;
pub mod cli;
pub mod embed;
pub mod invariant;
pub mod oracle;
pub mod perm;
pub mod predict;
pub mod twist;
pub mod verify;

pub use abelian::{AbelianGroup, BaseField, CycloGamma, Hom, SubfieldLabel};
pub use embed::{LiftRule, LiftStatus, Place, Verdict};
pub use predict::{
    predict, BNew, OracleResult, PairReport, PredictOptions, PredictionReport,
};
pub use twist::{OrbitReport, PiPhiPair};

/// Default ceiling on the number of group elements materialized by
/// [`PermGroup::build`]. Callers may override it per build.
pub const DEFAULT_ELEMENT_CAP: u64 = 1 << 21;

/// Ceiling on `|G(π,φ)|` above which the full Burnside sum and the pole-order
/// sum are skipped and reported as unavailable rather than attempted.
pub const BURNSIDE_CAP: u64 = 1 << 20;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{expr}: order {order} exceeds the element cap {cap}")]
    CapExceeded { expr: String, order: u128, cap: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid permutation: {0}")]
    BadPermutation(String),
    #[error("generators do not act transitively")]
    NotTransitive,
    #[error("subgroup is not normal with abelian quotient")]
    NotNormal,
    #[error("invariant table: {0}")]
    BadTable(String),
    #[error("minimum over an empty set of nonidentity elements")]
    EmptyMinimum,
    #[error("element order {order} does not divide the pair modulus {modulus}")]
    ModulusMismatch { order: u64, modulus: u64 },
    #[error("method unavailable: {0}")]
    Unavailable(String),
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
