//! Exact-arithmetic laboratory for a family of maximal curves over
//! `F_{q²}`, `q = n³`: the complete intersection of the surface
//! `Z^{n²−n+1} = Y·h(X)` with the Hermitian cone `X^n + X = Y^{n+1}` in
//! `PG(3, q²)`.
//!
//! Every claim the crate checks is verified by exhaustive computation over
//! the actual finite fields — polynomial identities, rational-point counts
//! against the Hasse–Weil bound, collineation-group orders, Weierstrass
//! semigroup structure and Riemann–Roch bases. No floating point, no
//! sampling shortcuts.

pub mod aut;
pub mod curve;
pub mod poly;
pub mod quotient;
pub mod semigroup;
pub mod tower;
