//! Decision procedures for the matchability of pairs: finite subsets of a
//! finite abelian group, and finite-dimensional subspaces of a finite field
//! extension.
//!
//! A pair of equal-sized subsets `(A, B)` of an abelian group is *matchable*
//! when some bijection `f : A -> B` has `a + f(a)` outside `A` for every `a`
//! (groups are written additively here, so the identity is `0`). The linear
//! analogue asks every ordered basis of a subspace `A` to match into some
//! ordered basis of `B` under Minkowski products. In both settings the
//! deciders never just say "no": an unmatchable pair always comes with a
//! machine-checkable structural certificate — a nearly periodic decomposition
//! in the group setting, a decomposition through a subfield in the linear
//! setting — and a matchable pair comes with an explicit witness where the
//! definition provides one.
//!
//! Module map:
//!
//! * [`group`] — finite abelian groups, subsets, the subgroup lattice,
//!   quotients, and periodicity primitives.
//! * [`group_matching`] — all deciders, certificates and constructors for the
//!   group setting.
//! * [`fq`] — arithmetic in `F_{p^m}` over `F_p`, subfields, and the subspace
//!   lattice.
//! * [`fq_matching`] — the linear deciders, certificates and constructors.
//! * [`census`] — deterministic enumeration and seeded sampling of pairs,
//!   shared by the test harness and the command-line census.

pub mod census;
pub mod error;
pub mod fq;
pub mod fq_matching;
pub mod group;
pub mod group_matching;

pub use error::{Error, Result};
