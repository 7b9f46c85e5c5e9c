//! Exact-arithmetic invariants of dimension-two holomorphic distributions on
//! complex projective 4-space.
//!
//! The crate has four layers:
//!
//! * [`intersection`] — the truncated intersection ring of `P^n` with exact
//!   rational coefficients: Chern polynomials, twists, duals, wedge/symmetric
//!   powers, Chern character, Todd class and Riemann-Roch, plus the
//!   Eagon-Northcott ideal-class pipeline for singular schemes.
//! * [`cohomology`] — cohomology dimension tables on `P^4`: the closed
//!   formula for `h^q(Omega^p(k))`, the tabulated dimensions of `E(k)` and
//!   `E(x)E(k)` for the Horrocks-Mumford bundle `E` (validated data files),
//!   vanishing-range predicates and a sound long-exact-sequence chaser.
//! * [`dist`] — distribution-level numerics: degree/Chern/genus closed forms
//!   for tangent and conormal presentations, the low-degree feasibility
//!   searches, and the Horrocks-Mumford family (singular-scheme invariants,
//!   Rao-module dimensions, Hilbert polynomials, moduli dimensions).
//! * [`scalar`], [`multipoly`], [`exterior`], [`heisenberg`] — exact symbolic
//!   exterior calculus over `Q` or `Q(zeta_5)`: polynomial forms and
//!   multivector fields, wedge/d/contraction, Lie and Schouten brackets,
//!   Engel-flag diagnostics, linear pullbacks and the Heisenberg-invariant
//!   pencil of bivectors.
//!
//! All arithmetic is exact; no floating point is used anywhere.

pub mod cohomology;
pub mod dist;
pub mod exterior;
pub mod fixtures;
pub mod heisenberg;
pub mod intersection;
pub mod multipoly;
pub mod rational;
pub mod scalar;
pub mod splitting;
pub mod unipoly;

pub use intersection::{IntersectionClass, SheafClass};
pub use rational::Rat;
