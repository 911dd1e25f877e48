//! Combinatorial loop-space machinery over exact integer coefficients.
//!
//! The crate builds finite simplicial sets from generator/face-table
//! presentations and derives from them:
//!
//! * the free simplicial loop group under four twisting-function
//!   conventions, with exact word arithmetic ([`loop_group`]);
//! * elementary prisms and prism words, the pseudosection `iota` and the
//!   twisting loop `tau` realised as prisms ([`prism`]);
//! * the permutation-indexed twisting cochain, shuffle products and the
//!   cochain identities ([`twisting`]);
//! * the cobar differential graded algebra and loop-space homology
//!   ([`cobar`]);
//! * twisted cartesian and twisted tensor products together with the
//!   comparison chain map psi ([`twisted`], [`psi`]);
//! * integer homology through Smith normal form ([`homology`]).
//!
//! Everything is exact: chains carry `i64` coefficients, Smith reduction
//! runs over `BigInt`, and all identities asserted in the test suite are
//! equalities of canonical forms, never numerical approximations.

pub mod chain;
pub mod cobar;
pub mod homology;
pub mod loop_group;
pub mod prism;
pub mod psi;
pub mod report;
pub mod simplicial;
pub mod twisted;
pub mod twisting;

pub use chain::Chain;
pub use loop_group::{Convention, GroupWord, LoopGroup};
pub use simplicial::{IncreasingMap, SimplexRef, SimplicialSet, SpaceError};
