//! Supersymmetric reduction of the 1+1 dimensional Dirac equation with a static
//! Lorentz scalar potential `f(x)`.
//!
//! The Dirac problem factorizes into the partner Schrödinger operators
//! `H∓ = -d²/dx² + f² ∓ f'`. From there the crate builds:
//!
//! * partner potentials, intertwiners `A = d/dx + f`, `A† = -d/dx + f`, the
//!   zero mode and the assembled Dirac spectrum `ω = ±√E` ([`susy`]);
//! * the one-parameter family of isospectral potentials obtained from the
//!   general solution of `F' + F² = V₊` ([`riccati`]);
//! * the regularized Witten index `Δ(β)` ([`witten`]);
//! * closed-form Pöschl–Teller spectra and bound states used as oracles ([`pt`]);
//! * a small expression language for user supplied superpotentials ([`expr`]).
//!
//! Everything is sampled on a uniform [`numerics::Grid`] and solved with a
//! Dirichlet finite-difference discretization.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod expr;
pub mod numerics;
pub mod presets;
pub mod pt;
pub mod riccati;
pub mod susy;
pub mod witten;

pub use error::{Error, Result};
pub use numerics::{Grid, SampledFunction, Spectrum};
