//! One-parameter family of potentials isospectral to `H₋`.
//!
//! With `ψ₀` the normalized zero mode of `H₋` and `I(x) = ∫_{-∞}^x ψ₀²`, the
//! general solution of `F' + F² = V₊` around the particular solution `f` is
//!
//! ```text
//! F = f + ψ₀² / (λ + I)
//! ```
//!
//! Refactorizing `H₊ = BB†` with `B = d/dx + F` and commuting gives
//! `H̃ = B†B = -d²/dx² + Ṽ`, `Ṽ = V₊ - 2F'`, whose zero mode is
//! `ψ̃₀ = √(λ(λ+1)) ψ₀ / (λ + I)`.

use crate::error::{Error, Result};
use crate::numerics::{
    cumulative_integral_corrected, derivative_with, eigen_solve, l2_norm, normalize,
    SampledFunction, Spectrum,
};
use crate::susy::{
    assemble, dirac_spectrum, first_order, partner_potentials, DiracLevel, DiracSpectrum,
    Superpotential, ZeroMode, SUSY_STENCIL,
};

/// Distance kept from the excluded points `λ = -1` and `λ = 0`.
pub const LAMBDA_GUARD: f64 = 1e-6;
/// Minimum admissible `|λ + I(x)|`.
pub const POLE_GUARD: f64 = 1e-6;
/// Tolerance on `‖ψ̃₀‖ = 1` and on `I(x_max) = 1`.
pub const NORM_TOL: f64 = 1e-6;
/// Agreement required between `V₊ - 2F'` and `F² - F'`.
pub const EXPRESSION_TOL: f64 = 1e-4;

/// The family parameter `λ`, restricted to `λ < -1` or `λ > 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FamilyParameter(f64);

impl FamilyParameter {
    pub fn new(lambda: f64) -> Result<Self> {
        let legal = lambda.is_finite() && !(-1.0 - LAMBDA_GUARD..=LAMBDA_GUARD).contains(&lambda);
        if legal {
            Ok(Self(lambda))
        } else {
            Err(Error::ForbiddenLambda(lambda))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `√(λ(λ+1))`, the normalization of the renormalized zero mode.
    pub fn normalization(self) -> f64 {
        (self.0 * (self.0 + 1.0)).sqrt()
    }
}

impl TryFrom<f64> for FamilyParameter {
    type Error = Error;

    fn try_from(v: f64) -> Result<Self> {
        Self::new(v)
    }
}

/// `I(x) = ∫_{x_min}^x ψ₀²`, checked to reach 1 at the right wall.
pub fn running_integral(psi0: &SampledFunction) -> Result<SampledFunction> {
    let density = psi0.map(|v| v * v)?;
    let running = cumulative_integral_corrected(&density);
    let total = running[running.grid().len() - 1];
    if (total - 1.0).abs() > NORM_TOL {
        return Err(Error::CrossCheck {
            what: "zero mode normalization",
            value: (total - 1.0).abs(),
            tolerance: NORM_TOL,
        });
    }
    Ok(running)
}

/// `λ + I(x)`, rejected if it comes within [`POLE_GUARD`] of zero or changes sign.
fn denominator(running: &SampledFunction, lambda: FamilyParameter) -> Result<SampledFunction> {
    let den = running.map(|i| lambda.value() + i)?;
    let (idx, min_abs) =
        den.values()
            .iter()
            .enumerate()
            .fold((0, f64::INFINITY), |(bi, bv), (i, v)| {
                if v.abs() < bv {
                    (i, v.abs())
                } else {
                    (bi, bv)
                }
            });
    let sign = lambda.value().signum();
    let constant_sign = den.values().iter().all(|v| v.signum() == sign);
    if min_abs < POLE_GUARD || !constant_sign {
        return Err(Error::Pole {
            min_abs,
            x: den.grid().x(idx),
        });
    }
    Ok(den)
}

/// `F = f + ψ₀²/(λ + I)`.
pub fn large_potential_f(
    sp: &Superpotential,
    psi0: &SampledFunction,
    lambda: FamilyParameter,
) -> Result<SampledFunction> {
    let running = running_integral(psi0)?;
    large_potential_with(sp, psi0, &running, lambda)
}

fn large_potential_with(
    sp: &Superpotential,
    psi0: &SampledFunction,
    running: &SampledFunction,
    lambda: FamilyParameter,
) -> Result<SampledFunction> {
    sp.f().same_grid(psi0)?;
    let den = denominator(running, lambda)?;
    let phi = psi0.zip_with(&den, |p, d| p * p / d)?;
    sp.f().zip_with(&phi, |f, p| f + p)
}

fn interior_max(r: &SampledFunction) -> f64 {
    let v = r.values();
    v[1..v.len() - 1].iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// `max |F' + F² - V₊|` over interior points.
pub fn riccati_residual(big_f: &SampledFunction, v_plus: &SampledFunction) -> Result<f64> {
    big_f.same_grid(v_plus)?;
    let d = derivative_with(big_f, SUSY_STENCIL);
    let r = SampledFunction::new(
        *big_f.grid(),
        (0..big_f.grid().len())
            .map(|i| d[i] + big_f[i] * big_f[i] - v_plus[i])
            .collect(),
    )?;
    Ok(interior_max(&r))
}

/// `max |φ' + φ² + 2fφ|` over interior points, with `φ = F - f`.
pub fn phi_residual(f: &SampledFunction, phi: &SampledFunction) -> Result<f64> {
    f.same_grid(phi)?;
    let d = derivative_with(phi, SUSY_STENCIL);
    let r = SampledFunction::new(
        *f.grid(),
        (0..f.grid().len())
            .map(|i| d[i] + phi[i] * phi[i] + 2.0 * f[i] * phi[i])
            .collect(),
    )?;
    Ok(interior_max(&r))
}

/// `ψ̃₀ = √(λ(λ+1)) ψ₀/(λ + I)`, checked to have unit norm.
pub fn renormalized_zero_mode(
    psi0: &SampledFunction,
    lambda: FamilyParameter,
) -> Result<SampledFunction> {
    let running = running_integral(psi0)?;
    renormalized_with(psi0, &running, lambda)
}

fn renormalized_with(
    psi0: &SampledFunction,
    running: &SampledFunction,
    lambda: FamilyParameter,
) -> Result<SampledFunction> {
    let den = denominator(running, lambda)?;
    let c = lambda.normalization();
    let mode = psi0.zip_with(&den, |p, d| c * p / d)?;
    let err = (l2_norm(&mode) - 1.0).abs();
    if err > NORM_TOL {
        return Err(Error::CrossCheck {
            what: "renormalized zero mode norm",
            value: err,
            tolerance: NORM_TOL,
        });
    }
    Ok(mode)
}

/// `‖ψ̃₀' + Fψ̃₀‖₂`.
pub fn annihilation_check(big_f: &SampledFunction, psi0_tilde: &SampledFunction) -> Result<f64> {
    Ok(l2_norm(&first_order(big_f, psi0_tilde, 1.0)?))
}

/// One member `λ` of the isospectral family.
#[derive(Debug, Clone)]
pub struct IsospectralMember {
    pub lambda: FamilyParameter,
    /// The large potential `F`.
    pub big_f: SampledFunction,
    pub v_tilde: SampledFunction,
    pub psi0_tilde: SampledFunction,
    /// `I(x)`, the running integral of `ψ₀²`.
    pub running: SampledFunction,
    /// `max |(V₊ - 2F') - (F² - F')|` over interior points.
    pub expression_gap: f64,
}

impl IsospectralMember {
    pub fn phi(&self, sp: &Superpotential) -> Result<SampledFunction> {
        self.big_f.zip_with(sp.f(), |a, b| a - b)
    }
}

/// Build the member `λ`: `F`, `Ṽ = V₊ - 2F'` and `ψ̃₀`.
pub fn deformed_potential(
    sp: &Superpotential,
    psi0: &SampledFunction,
    lambda: FamilyParameter,
) -> Result<IsospectralMember> {
    let running = running_integral(psi0)?;
    let big_f = large_potential_with(sp, psi0, &running, lambda)?;
    let v_plus = partner_potentials(sp).v_plus;
    let df = derivative_with(&big_f, SUSY_STENCIL);
    let v_tilde = v_plus.zip_with(&df, |v, d| v - 2.0 * d)?;
    let alternative = big_f.zip_with(&df, |f, d| f * f - d)?;
    let expression_gap = interior_max(&v_tilde.zip_with(&alternative, |a, b| a - b)?);
    if expression_gap > EXPRESSION_TOL {
        return Err(Error::CrossCheck {
            what: "V+ - 2F' against F^2 - F'",
            value: expression_gap,
            tolerance: EXPRESSION_TOL,
        });
    }
    let psi0_tilde = renormalized_with(psi0, &running, lambda)?;
    Ok(IsospectralMember {
        lambda,
        big_f,
        v_tilde,
        psi0_tilde,
        running,
        expression_gap,
    })
}

/// Convenience: the `H₋` zero mode of `sp`, or [`Error::NoZeroMode`].
pub fn seed_zero_mode(sp: &Superpotential) -> Result<SampledFunction> {
    match crate::susy::zero_mode(sp) {
        ZeroMode::Minus(m) => Ok(m),
        _ => Err(Error::NoZeroMode),
    }
}

/// Spectrum of `-d²/dx² + Ṽ`, annotated with the continuum edge of `sp`.
pub fn member_spectrum(
    member: &IsospectralMember,
    sp: &Superpotential,
    k: usize,
) -> Result<Spectrum> {
    Ok(eigen_solve(&member.v_tilde, k)?.with_continuum_edge(sp.continuum_edge()))
}

/// Dirac solutions for the large potential `F`.
#[derive(Debug, Clone)]
pub struct DeformedDirac {
    pub spectrum: DiracSpectrum,
    /// Bound spectrum of `H̃`, ascending (includes its zero level).
    pub v_tilde_levels: Vec<f64>,
    /// `max |E(H̃) - E(H₋)|` over the paired positive levels.
    pub level_mismatch: f64,
}

/// Upper components stay `ψ₊`; lower components become `B†ψ₊/ω` with
/// `B† = -d/dx + F`; the zero mode becomes `ψ̃₀`. The `ω` values come from
/// an independent solve of `H̃`.
pub fn deformed_dirac_solutions(
    member: &IsospectralMember,
    sp: &Superpotential,
    k: usize,
) -> Result<DeformedDirac> {
    let undeformed = dirac_spectrum(sp, k)?;
    let tilde = member_spectrum(member, sp, k)?;
    let bound: Vec<f64> = tilde.bound_eigenvalues();
    // the lowest bound level of H̃ is its zero mode
    let positive_tilde = bound.get(1..).unwrap_or(&[]);
    let originals: Vec<&DiracLevel> = undeformed.positive().collect();
    if positive_tilde.len() != originals.len() {
        return Err(Error::CrossCheck {
            what: "bound level count of H~ against H-",
            value: positive_tilde.len() as f64,
            tolerance: originals.len() as f64,
        });
    }
    let mut mismatch: f64 = 0.0;
    let mut positive = Vec::with_capacity(originals.len());
    for (level, &energy) in originals.into_iter().zip(positive_tilde) {
        mismatch = mismatch.max((energy - level.omega * level.omega).abs());
        let omega = energy.max(0.0).sqrt();
        let lower = first_order(&member.big_f, &level.upper, -1.0)?.scale(1.0 / omega);
        let lower = normalize(&lower)
            .ok_or_else(|| Error::NoConvergence("B† annihilated a bound state".into()))?;
        positive.push(DiracLevel {
            omega,
            upper: level.upper.clone(),
            lower,
        });
    }
    let spectrum = assemble(
        positive,
        ZeroMode::Minus(member.psi0_tilde.clone()),
        undeformed.continuum_edge,
        bound.first().copied(),
    );
    Ok(DeformedDirac {
        spectrum,
        v_tilde_levels: bound,
        level_mismatch: mismatch,
    })
}
