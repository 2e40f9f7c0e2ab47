//! Exact computational kernels for equivariant stable homotopy bookkeeping:
//! Arf invariants, formal group laws and formal A-modules, cyclic group
//! cohomology, Bredon homology of representation spheres, slice-cell
//! combinatorics, and RO(G)-graded degree calculus.
//!
//! Everything is exact: integers, rationals, prime fields, and cyclotomic
//! rings; no floating point anywhere.

pub mod ring;
pub mod series;

pub mod intmat;
pub mod chain;

pub mod arf;
pub mod fgl;
pub mod cyclic;
pub mod equivariant;
pub mod reps;
pub mod mackey;
pub mod eqchain;
pub mod bredon;
pub mod simplicial;
pub mod slices;
pub mod classes;

pub use ring::{CoefRing, CycloField, CycloMod2, GfExt, GfPrime, IntRing, RatRing, Ring};
pub use series::{compose, reverse, Mono, TruncSeries};

/// Truncated series over the integers.
pub type ZSeries = TruncSeries<IntRing>;
/// Truncated series over the rationals.
pub type QSeries = TruncSeries<RatRing>;
/// Truncated series over a prime field.
pub type FpSeries = TruncSeries<GfPrime>;
/// Truncated series over Q(zeta_{2^e}).
pub type CycSeries = TruncSeries<CycloField>;
