//! Exact-arithmetic computational algebra for stable ribbon graph
//! complexes and the noncommutative symplectic geometry of cyclic words.
//!
//! The crate is organized in three layers:
//!
//! * **Cyclic words** — [`symplectic`] implements cyclic words over the odd
//!   symplectic space ℚ^{d|d} together with the odd Lie bracket, the
//!   cobracket, the divergence operator, and the Hamiltonian-field /
//!   Lie-derivative machinery that provides an independent evaluation route
//!   for the bracket. [`lambda`] builds the Chevalley–Eilenberg algebra of
//!   cyclic words and its two-parameter deformation with differential
//!   `D = γ·δ + Δ`.
//! * **Graphs** — [`graph`] implements stable ribbon graphs (ribbon graphs
//!   whose vertices carry genus and boundary defects) with validation,
//!   canonical forms and orientation signs; [`contraction`] implements the
//!   edge-contraction boundary operator; [`complex`] enumerates graphs,
//!   assembles boundary matrices and computes homology ranks with exact
//!   rational elimination ([`linalg`]).
//! * **The bridge** — [`wick`] implements chord diagrams and the
//!   Wick-contraction map from decorated tensors to graph chains, including
//!   the chain-map and Hopf-compatibility audits connecting the two layers.
//!
//! All arithmetic is exact: coefficients are arbitrary-precision rationals
//! and every verification in the test suite is an identity check, not an
//! approximation.

pub mod complex;
pub mod contraction;
pub mod graph;
pub mod lambda;
pub mod linalg;
pub mod scalar;
pub mod symplectic;
pub mod verify;
pub mod wick;
