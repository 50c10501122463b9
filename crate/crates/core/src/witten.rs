//! Regularized Witten index `Δ(β) = Tr[e^{-βH₋} - e^{-βH₊}]`.
//!
//! `Δ` obeys
//!
//! ```text
//! dΔ/dβ = [f₊ e^{-βf₊²} - f₋ e^{-βf₋²}] / √(4πβ),   Δ(0⁺) = 0,
//! ```
//!
//! whose solution is `Δ(β) = ½ erf(f₊√β) - ½ erf(f₋√β)`.

use std::f64::consts::PI;

use crate::error::Result;
use crate::susy::{partner_potentials, partner_spectrum, Superpotential, ASYMPTOTE_ZERO_TOL};
use crate::Spectrum;

/// `β → ∞` limit of the index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexLimit {
    Value(i8),
    /// One asymptote vanishes (within `1e-6`).
    Indeterminate,
}

fn limit_from(f_plus: f64, f_minus: f64) -> IndexLimit {
    if f_plus.abs() < ASYMPTOTE_ZERO_TOL || f_minus.abs() < ASYMPTOTE_ZERO_TOL {
        IndexLimit::Indeterminate
    } else {
        let half = |v: f64| if v > 0.0 { 1i8 } else { -1 };
        IndexLimit::Value((half(f_plus) - half(f_minus)) / 2)
    }
}

pub fn index_limit(sp: &Superpotential) -> IndexLimit {
    limit_from(sp.f_plus(), sp.f_minus())
}

/// `sign(a) · ½ erfc(|a|)`: the distance of `½ erf(a)` from `½ sign(a)`.
fn signed_tail(a: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else {
        a.signum() * 0.5 * libm::erfc(a.abs())
    }
}

/// `lim Δ - Δ(β)` evaluated through `erfc`, accurate where `Δ` has saturated.
///
/// With `L(f) = ½ sign(f)` the limit is `L(f₊) - L(f₋)`, and
/// `L(a) - ½ erf(a) = sign(a) · ½ erfc(|a|)`.
pub fn index_deficit(f_plus: f64, f_minus: f64, beta: f64) -> f64 {
    let sb = beta.sqrt();
    let (a, b) = (f_plus * sb, f_minus * sb);
    signed_tail(a) - signed_tail(b)
}

/// Closed form `Δ(β) = ½ erf(f₊√β) - ½ erf(f₋√β)`.
pub fn index_analytic(f_plus: f64, f_minus: f64, beta: f64) -> f64 {
    assert!(beta > 0.0, "beta must be positive");
    let sb = beta.sqrt();
    let (a, b) = (f_plus * sb, f_minus * sb);
    if a.abs().max(b.abs()) < 1.0 {
        0.5 * (libm::erf(a) - libm::erf(b))
    } else {
        let half = |v: f64| {
            if v > 0.0 {
                0.5
            } else if v < 0.0 {
                -0.5
            } else {
                0.0
            }
        };
        (half(f_plus) - half(f_minus)) - index_deficit(f_plus, f_minus, beta)
    }
}

/// Right-hand side of the index ODE.
pub fn index_ode_rhs(f_plus: f64, f_minus: f64, beta: f64) -> f64 {
    assert!(beta > 0.0, "beta must be positive");
    let term = |f: f64| f * (-beta * f * f).exp();
    (term(f_plus) - term(f_minus)) / (4.0 * PI * beta).sqrt()
}

/// Heat-trace estimate of the index from the box spectra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericIndex {
    pub value: f64,
    /// `exp(-β E_edge) ≥ 1e-6`: continuum levels are not suppressed.
    pub continuum_contaminated: bool,
}

/// Box spectra of both partners, reusable across many `β`.
#[derive(Debug, Clone)]
pub struct PartnerSpectra {
    pub minus: Spectrum,
    pub plus: Spectrum,
    pub continuum_edge: f64,
}

impl PartnerSpectra {
    pub fn solve(sp: &Superpotential, k: usize) -> Result<Self> {
        let pair = partner_potentials(sp);
        Ok(Self {
            minus: partner_spectrum(&pair.v_minus, sp, k)?,
            plus: partner_spectrum(&pair.v_plus, sp, k)?,
            continuum_edge: sp.continuum_edge(),
        })
    }

    pub fn index(&self, beta: f64) -> NumericIndex {
        let trace = |s: &Spectrum| {
            s.eigenvalues()
                .iter()
                .map(|e| (-beta * e).exp())
                .sum::<f64>()
        };
        NumericIndex {
            value: trace(&self.minus) - trace(&self.plus),
            continuum_contaminated: (-beta * self.continuum_edge).exp() >= 1e-6,
        }
    }
}

/// `Σ e^{-βE₋ᵢ} - Σ e^{-βE₊ⱼ}` over the lowest `k` box levels of each partner.
pub fn index_numeric(sp: &Superpotential, beta: f64, k: usize) -> Result<NumericIndex> {
    Ok(PartnerSpectra::solve(sp, k)?.index(beta))
}

/// A sampled `Δ(β)` curve.
#[derive(Debug, Clone)]
pub struct IndexCurve {
    pub betas: Vec<f64>,
    pub deltas: Vec<f64>,
}

impl IndexCurve {
    pub fn analytic(f_plus: f64, f_minus: f64, betas: &[f64]) -> Self {
        let mut betas = betas.to_vec();
        betas.sort_by(f64::total_cmp);
        let deltas = betas
            .iter()
            .map(|&b| index_analytic(f_plus, f_minus, b))
            .collect();
        Self { betas, deltas }
    }
}

/// `n` points spaced logarithmically over `[lo, hi]`.
pub fn log_sweep(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.log10(), hi.log10());
    (0..n)
        .map(|i| 10f64.powf(a + (b - a) * i as f64 / (n - 1) as f64))
        .collect()
}
