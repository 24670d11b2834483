//! Exact computations for sumsets, periods, isoperimetric connectivity and
//! critical pairs in finite abelian groups, together with sweep drivers that
//! verify the corresponding structure theorems exhaustively at small orders.
//!
//! Everything is integer-exact: groups are presented as products of cyclic
//! factors, subsets are fixed-width bitsets over element indices, and all
//! operations are deterministic. No floating point, no RNG (the pseudo-random
//! digraph generator in [`graph`] is a documented LCG driven by an explicit
//! seed).

pub mod error;
pub mod graph;
pub mod group;
pub mod iso;
pub mod oracle;
pub mod report;
pub mod sumset;
pub mod verify;

pub use error::Error;
pub use group::{
    enumerate_group_types, enumerate_subgroups, generated_subgroup, quotient_view, AbelianGroup,
    GroupElement, GroupSubset, QuotientView, Subgroup, DEFAULT_ORDER_CAP, MAX_ORDER,
};

pub type Result<T> = std::result::Result<T, Error>;
