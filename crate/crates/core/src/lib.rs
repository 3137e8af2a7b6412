//! 2-uninorms on finite bounded lattices, built from additive generators.
//!
//! The crate covers the whole pipeline: ingesting a finite bounded lattice,
//! loading an injective monotone generator anchored at `f(e1) = 0`, checking
//! the admissibility conditions, constructing the operation table through the
//! pseudo-inverse of sums, and exhaustively verifying the 2-uninorm axioms
//! (commutativity, associativity, monotonicity, the sandwiched neutral
//! elements) with concrete counterexample witnesses on failure.
//!
//! Specialisations with degenerate anchors (uninorms, nullnorms,
//! uni-nullnorms, null-uninorms, t-norms, t-conorms) are built from their own
//! closed forms and cross-checked against the general construction.
//!
//! All arithmetic is exact: generator values are rationals extended with
//! `-inf`/`+inf`, never floats.

pub mod conditions;
pub mod construct;
pub mod genfun;
pub mod io;
pub mod lattice;
pub mod sample;
pub mod search;
pub mod value;
pub mod verify;

pub use conditions::{check_conditions, CheckMode, ConditionId, ConditionReport};
pub use construct::{construct_2uninorm, construct_alt_form, construct_variant, OpTable, VariantKind};
pub use genfun::{load_generator, Direction, Generator};
pub use lattice::{parse_lattice, ElemId, ElementSet, FiniteLattice};
pub use value::ExtValue;
pub use verify::{classify, verify_full, AxiomId, AxiomReport, Kind};
