//! Closed-form Pöschl–Teller results:
//! `H_PT = -½ d²/dx² + c/cosh²x + s/sinh²x`.
//!
//! The strengths are parametrized by
//! `c = -½[(2k₁-1)² - ¼]` and `s = ½[(2k₂-1)² - ¼]`. Bound states have
//! `E = -(2k-1)²/2` for `k = k₁-k₂, k₁-k₂-1, …` while `k > ½`, with
//! wavefunctions
//! `(cosh x)^{-2k₁+3/2} (sinh x)^{2k₂-1/2} ₂F₁(α, β; γ; -sinh²x)`,
//! `α = -k₁+k₂+k`, `β = -k₁+k₂-k+1`, `γ = 2k₂`.
//!
//! For `s = 0` both roots `k₂ = ¼` and `k₂ = ¾` are admissible: the first
//! carries the even states, the second the odd ones, and the bound spectrum
//! is the union of the two ladders.

use crate::error::{Error, Result};

const BRANCH_TOL: f64 = 1e-12;
const INTEGER_TOL: f64 = 1e-9;

/// Pöschl–Teller strengths and their `k` parameters.
///
/// `k1`, `k2` are the principal roots (`2kᵢ - 1 ≥ 0`); `k1_alt`, `k2_alt`
/// the other branch (`2kᵢ - 1 ≤ 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtParams {
    pub c: f64,
    pub s: f64,
    pub k1: f64,
    pub k2: f64,
    pub k1_alt: f64,
    pub k2_alt: f64,
}

/// `(c, s)` from `(k₁, k₂)`.
pub fn cs_from_params(k1: f64, k2: f64) -> (f64, f64) {
    let c = -0.5 * ((2.0 * k1 - 1.0).powi(2) - 0.25);
    let s = 0.5 * ((2.0 * k2 - 1.0).powi(2) - 0.25);
    (c, s)
}

pub fn params_from_cs(c: f64, s: f64) -> Result<PtParams> {
    let r1 = 0.25 - 2.0 * c;
    let r2 = 0.25 + 2.0 * s;
    if !(r1 >= 0.0 && r2 >= 0.0) {
        return Err(Error::PtDomain(format!(
            "complex k for c = {c}, s = {s} (radicands {r1}, {r2})"
        )));
    }
    let (q1, q2) = (r1.sqrt(), r2.sqrt());
    Ok(PtParams {
        c,
        s,
        k1: 0.5 * (1.0 + q1),
        k2: 0.5 * (1.0 + q2),
        k1_alt: 0.5 * (1.0 - q1),
        k2_alt: 0.5 * (1.0 - q2),
    })
}

fn is_regular_branch(k2: f64) -> bool {
    (k2 - 0.25).abs() < BRANCH_TOL || (k2 - 0.75).abs() < BRANCH_TOL
}

/// The `k` ladder `k₁-k₂, k₁-k₂-1, …` while `k > ½`.
pub fn k_ladder(k1: f64, k2: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut k = k1 - k2;
    while k > 0.5 + BRANCH_TOL {
        out.push(k);
        k -= 1.0;
    }
    out
}

/// One bound state: its ladder value `k`, the `k₂` branch it belongs to and `E_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtBoundState {
    pub k: f64,
    pub k2: f64,
    pub energy: f64,
}

pub fn pt_energy(k: f64) -> f64 {
    -(2.0 * k - 1.0).powi(2) / 2.0
}

/// Scattering energy for `k = (1 + iκ)/2`.
pub fn pt_scattering_energy(kappa: f64) -> f64 {
    kappa * kappa / 2.0
}

/// Bound states of `H_PT` for the branch `(k₁, k₂)`, ascending in energy.
///
/// When `k₂` is one of the `s = 0` roots the conjugate root `1 - k₂` is
/// included as well, so the result is the complete regular spectrum.
pub fn pt_bound_states(k1: f64, k2: f64) -> Vec<PtBoundState> {
    let mut branches = vec![k2];
    if is_regular_branch(k2) {
        branches.push(1.0 - k2);
    }
    let mut states: Vec<PtBoundState> = branches
        .into_iter()
        .flat_map(|b| {
            k_ladder(k1, b).into_iter().map(move |k| PtBoundState {
                k,
                k2: b,
                energy: pt_energy(k),
            })
        })
        .collect();
    states.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    states
}

pub fn pt_bound_energies(k1: f64, k2: f64) -> Vec<f64> {
    pt_bound_states(k1, k2)
        .into_iter()
        .map(|s| s.energy)
        .collect()
}

/// `(a)_n z^n / ((c)_n n!)` summed for a series that terminates after `terms` terms.
fn terminating_2f1(a: f64, b: f64, c: f64, z: f64, last: usize) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..last {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
    }
    sum
}

fn nonpositive_integer(v: f64) -> Option<usize> {
    let r = v.round();
    (r <= 0.0 && (v - r).abs() < INTEGER_TOL).then_some((-r) as usize)
}

/// Unnormalized bound-state wavefunction for the regular case `s = 0`.
pub fn pt_bound_wavefunction(k1: f64, k2: f64, k: f64, x: f64) -> Result<f64> {
    if !is_regular_branch(k2) {
        return Err(Error::PtDomain(format!(
            "k2 = {k2}: only the regular case s = 0 (k2 = 1/4 or 3/4) is supported"
        )));
    }
    let alpha = -k1 + k2 + k;
    let beta = -k1 + k2 - k + 1.0;
    let gamma = 2.0 * k2;
    let last = match (nonpositive_integer(alpha), nonpositive_integer(beta)) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => return Err(Error::NonTerminating { alpha, beta }),
    };
    let z = -x.sinh().powi(2);
    let series = terminating_2f1(alpha, beta, gamma, z, last);
    let odd_power = (2.0 * k2 - 0.5).round() as i32;
    Ok(x.cosh().powf(-2.0 * k1 + 1.5) * x.sinh().powi(odd_power) * series)
}

/// Spectra of the partners of `W = ℓ tanh x`.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderSpectra {
    pub ell: u32,
    pub e_minus: Vec<f64>,
    pub e_plus: Vec<f64>,
    pub continuum_edge: f64,
}

/// `E = ℓ² - (ℓ-j)²`, `j = 0..ℓ-1` for `H₋` and `j = 1..ℓ-1` for `H₊`.
pub fn ladder_spectra(ell: u32) -> LadderSpectra {
    assert!(ell >= 1, "ell must be at least 1");
    let l = i64::from(ell);
    let level = |j: i64| (l * l - (l - j) * (l - j)) as f64;
    LadderSpectra {
        ell,
        e_minus: (0..l).map(level).collect(),
        e_plus: (1..l).map(level).collect(),
        continuum_edge: (l * l) as f64,
    }
}

/// Energy of `H∓ = -d²/dx² + …` from an `H_PT` energy: `E = 2 e_PT + ℓ²`.
pub fn pt_to_partner_energy(e_pt: f64, ell: u32) -> f64 {
    2.0 * e_pt + f64::from(ell).powi(2)
}

/// `(c, s)` of `H₋` for `W = ℓ tanh x` in Pöschl–Teller units.
pub fn ell_minus_strengths(ell: u32) -> (f64, f64) {
    let l = f64::from(ell);
    (-l * (l + 1.0) / 2.0, 0.0)
}

/// `(c, s)` of `H₊` for `W = ℓ tanh x`.
pub fn ell_plus_strengths(ell: u32) -> (f64, f64) {
    let l = f64::from(ell);
    (-l * (l - 1.0) / 2.0, 0.0)
}

/// `P_ℓ^ℓ(t) = (-1)^ℓ (2ℓ-1)!! (1-t²)^{ℓ/2}`.
pub fn assoc_legendre_diagonal(ell: u32, t: f64) -> f64 {
    let double_fact: f64 = (1..=ell).map(|i| f64::from(2 * i - 1)).product();
    let sign = if ell.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * double_fact * (1.0 - t * t).max(0.0).powf(f64::from(ell) / 2.0)
}

/// `∫ sech^{2ℓ} x dx` over the real line.
pub fn sech_power_integral(ell: u32) -> f64 {
    (1..ell).fold(2.0, |acc, m| {
        acc * (2.0 * f64::from(m)) / (2.0 * f64::from(m) + 1.0)
    })
}

/// L²-normalized `P_ℓ^ℓ(tanh x) ∝ sech^ℓ x`.
pub fn legendre_zero_mode(ell: u32, x: f64) -> f64 {
    assert!(ell >= 1, "ell must be at least 1");
    // sech evaluated directly; 1 - tanh² cancels for large |x|
    (1.0 / x.cosh()).powi(ell as i32) / sech_power_integral(ell).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularityRegime {
    /// `s < -1/8`
    UnboundedBelow,
    /// `-1/8 ≤ s ≤ 3/8`, `s ≠ 0`
    NeedsSelfAdjointExtension,
    /// `s > 3/8`
    ImpenetrableBarrier,
    /// `s = 0`
    Regular,
}

impl SingularityRegime {
    pub fn name(self) -> &'static str {
        match self {
            SingularityRegime::UnboundedBelow => "unbounded_below",
            SingularityRegime::NeedsSelfAdjointExtension => "needs_self_adjoint_extension",
            SingularityRegime::ImpenetrableBarrier => "impenetrable_barrier",
            SingularityRegime::Regular => "regular",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegimeClass {
    pub regime: SingularityRegime,
    /// `s` sits exactly on `-1/8` or `3/8`.
    pub on_boundary: bool,
}

pub fn singularity_regime(s: f64) -> RegimeClass {
    const LOWER: f64 = -0.125;
    const UPPER: f64 = 0.375;
    let on_boundary = s == LOWER || s == UPPER;
    let regime = if s == 0.0 {
        SingularityRegime::Regular
    } else if s < LOWER {
        SingularityRegime::UnboundedBelow
    } else if s > UPPER {
        SingularityRegime::ImpenetrableBarrier
    } else {
        SingularityRegime::NeedsSelfAdjointExtension
    };
    RegimeClass {
        regime,
        on_boundary,
    }
}
