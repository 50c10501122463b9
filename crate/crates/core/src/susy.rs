//! SUSY factorization of the Dirac problem with scalar potential `f(x)`.
//!
//! `H₋ = A†A` and `H₊ = AA†` with `A = d/dx + f` and `A† = -d/dx + f`, so the
//! partner potentials are `V∓ = f² ∓ f'`. A Dirac level `ω ≠ 0` pairs an
//! eigenfunction `ψ₋` of `H₋` at `E = ω²` with `ψ₊ = Aψ₋/ω`.

use crate::error::{Error, Result};
use crate::expr::ExprAst;
use crate::numerics::{
    cumulative_integral_corrected, derivative_with, eigen_solve, normalize, Grid, SampledFunction,
    Spectrum, Stencil,
};

/// Stencil used for every first derivative in the SUSY layer.
pub const SUSY_STENCIL: Stencil = Stencil::Fourth;

/// Asymptotes within this distance of zero make the zero-mode rule indeterminate.
pub const ASYMPTOTE_ZERO_TOL: f64 = 1e-6;

const PLATEAU_TOL: f64 = 1e-6;
const PLATEAU_FRACTION: f64 = 0.05;
const ZERO_MODE_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone)]
pub struct Superpotential {
    f: SampledFunction,
    df: SampledFunction,
    f_minus: f64,
    f_plus: f64,
}

impl Superpotential {
    /// Reads the asymptotes from the last 5% of the grid at each end; both
    /// plateaus must be flat to `1e-6` (relative to `max(1, |f∞|)`).
    pub fn new(f: SampledFunction) -> Result<Self> {
        let f_minus = plateau(&f, Side::Minus)?;
        let f_plus = plateau(&f, Side::Plus)?;
        Self::with_asymptotes(f, f_minus, f_plus)
    }

    /// Explicit asymptotes. Infinite values describe confining
    /// superpotentials (e.g. `f = x`); only their sign is checked.
    pub fn with_asymptotes(f: SampledFunction, f_minus: f64, f_plus: f64) -> Result<Self> {
        let n = f.grid().len();
        for (side, end, limit) in [("left", f[0], f_minus), ("right", f[n - 1], f_plus)] {
            if limit.is_nan() {
                return Err(Error::InvalidSuperpotential(format!(
                    "{side} asymptote is NaN"
                )));
            }
            let ok = if limit.is_finite() {
                (end - limit).abs() <= PLATEAU_TOL * limit.abs().max(1.0)
            } else {
                end.signum() == limit.signum()
            };
            if !ok {
                return Err(Error::InvalidSuperpotential(format!(
                    "{side} end value {end} does not reach the asymptote {limit}"
                )));
            }
        }
        let df = derivative_with(&f, SUSY_STENCIL);
        Ok(Self {
            f,
            df,
            f_minus,
            f_plus,
        })
    }

    pub fn from_expr(ast: &ExprAst, grid: Grid) -> Result<Self> {
        Self::new(ast.sample(grid)?)
    }

    /// Replace the stencil derivative by exactly known samples of `f'`.
    pub fn with_derivative(mut self, df: SampledFunction) -> Result<Self> {
        self.f.same_grid(&df)?;
        self.df = df;
        Ok(self)
    }

    pub fn f(&self) -> &SampledFunction {
        &self.f
    }

    pub fn derivative(&self) -> &SampledFunction {
        &self.df
    }

    pub fn grid(&self) -> &Grid {
        self.f.grid()
    }

    pub fn f_minus(&self) -> f64 {
        self.f_minus
    }

    pub fn f_plus(&self) -> f64 {
        self.f_plus
    }

    /// Lowest scattering threshold `min(f₋², f₊²)`.
    pub fn continuum_edge(&self) -> f64 {
        (self.f_minus * self.f_minus).min(self.f_plus * self.f_plus)
    }

    /// Which partner (if any) carries the normalizable zero mode.
    pub fn zero_mode_sector(&self) -> ZeroModeSector {
        let (lo, hi) = (self.f_minus, self.f_plus);
        if lo.abs() < ASYMPTOTE_ZERO_TOL || hi.abs() < ASYMPTOTE_ZERO_TOL {
            ZeroModeSector::Indeterminate
        } else if lo < 0.0 && hi > 0.0 {
            ZeroModeSector::Minus
        } else if lo > 0.0 && hi < 0.0 {
            ZeroModeSector::Plus
        } else {
            ZeroModeSector::None
        }
    }
}

#[derive(Clone, Copy)]
enum Side {
    Minus,
    Plus,
}

fn plateau(f: &SampledFunction, side: Side) -> Result<f64> {
    let v = f.values();
    let m = ((PLATEAU_FRACTION * v.len() as f64).ceil() as usize).clamp(2, v.len());
    let (window, end, name) = match side {
        Side::Minus => (&v[..m], v[0], "left"),
        Side::Plus => (&v[v.len() - m..], v[v.len() - 1], "right"),
    };
    let (lo, hi) = window
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| {
            (a.min(x), b.max(x))
        });
    let spread = hi - lo;
    if spread > PLATEAU_TOL * end.abs().max(1.0) {
        return Err(Error::NotFlat { side: name, spread });
    }
    Ok(end)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroModeSector {
    /// `f₋ < 0 < f₊`: `ψ₋₀ ∝ exp(-∫f)` belongs to `H₋`.
    Minus,
    /// `f₊ < 0 < f₋`: `ψ₊₀ ∝ exp(+∫f)` belongs to `H₊`.
    Plus,
    /// Same-sign asymptotes, no normalizable mode.
    None,
    /// An asymptote vanishes; the sign rule does not decide.
    Indeterminate,
}

#[derive(Debug, Clone)]
pub enum ZeroMode {
    Minus(SampledFunction),
    Plus(SampledFunction),
    Absent,
    Indeterminate,
}

impl ZeroMode {
    pub fn mode(&self) -> Option<&SampledFunction> {
        match self {
            ZeroMode::Minus(m) | ZeroMode::Plus(m) => Some(m),
            _ => None,
        }
    }

    pub fn minus(&self) -> Option<&SampledFunction> {
        match self {
            ZeroMode::Minus(m) => Some(m),
            _ => None,
        }
    }

    pub fn exists(&self) -> bool {
        self.mode().is_some()
    }
}

#[derive(Debug, Clone)]
pub struct PartnerPair {
    pub superpotential: Superpotential,
    pub v_minus: SampledFunction,
    pub v_plus: SampledFunction,
}

/// `V∓ = f² ∓ f'`.
pub fn partner_potentials(sp: &Superpotential) -> PartnerPair {
    let build = |sign: f64| {
        sp.f.zip_with(&sp.df, |f, df| f * f + sign * df)
            .expect("same grid, finite samples")
    };
    PartnerPair {
        superpotential: sp.clone(),
        v_minus: build(-1.0),
        v_plus: build(1.0),
    }
}

/// `Aψ = ψ' + fψ`.
pub fn apply_a(sp: &Superpotential, psi: &SampledFunction) -> Result<SampledFunction> {
    first_order(&sp.f, psi, 1.0)
}

/// `A†ψ = -ψ' + fψ`.
pub fn apply_a_dagger(sp: &Superpotential, psi: &SampledFunction) -> Result<SampledFunction> {
    first_order(&sp.f, psi, -1.0)
}

/// `sign·ψ' + wψ` for a general first-order operator `±d/dx + w`.
pub(crate) fn first_order(
    w: &SampledFunction,
    psi: &SampledFunction,
    sign: f64,
) -> Result<SampledFunction> {
    w.same_grid(psi)?;
    let dpsi = derivative_with(psi, SUSY_STENCIL);
    let mut out = dpsi.into_values();
    for ((o, &wi), &p) in out.iter_mut().zip(w.values()).zip(psi.values()) {
        *o = sign * *o + wi * p;
    }
    SampledFunction::new(*w.grid(), out)
}

/// Normalized zero mode from `exp(∓∫f)`, in the sector dictated by the
/// asymptotes.
pub fn zero_mode(sp: &Superpotential) -> ZeroMode {
    let sign = match sp.zero_mode_sector() {
        ZeroModeSector::Minus => -1.0,
        ZeroModeSector::Plus => 1.0,
        ZeroModeSector::None => return ZeroMode::Absent,
        ZeroModeSector::Indeterminate => return ZeroMode::Indeterminate,
    };
    let exponent = cumulative_integral_corrected(&sp.f).scale(sign);
    let peak = exponent
        .values()
        .iter()
        .fold(f64::NEG_INFINITY, |m, &v| m.max(v));
    let raw = exponent
        .map(|e| (e - peak).exp())
        .expect("exponent below zero stays finite");
    let mode = normalize(&raw).expect("peak sample is 1");
    if sign < 0.0 {
        ZeroMode::Minus(mode)
    } else {
        ZeroMode::Plus(mode)
    }
}

/// `f = -ψ₀'/ψ₀` for a strictly positive zero mode.
pub fn superpotential_from_zero_mode(psi0: &SampledFunction) -> Result<SampledFunction> {
    let grid = *psi0.grid();
    let n = grid.len();
    for i in 1..n - 1 {
        if psi0[i] <= ZERO_MODE_FLOOR {
            return Err(Error::VanishingZeroMode {
                index: i,
                x: grid.x(i),
                value: psi0[i],
            });
        }
    }
    let d = derivative_with(psi0, SUSY_STENCIL);
    let mut out: Vec<f64> = (0..n)
        .map(|i| {
            if psi0[i] > ZERO_MODE_FLOOR {
                -d[i] / psi0[i]
            } else {
                f64::NAN
            }
        })
        .collect();
    // walls may sit on a node of the sampled mode
    if out[0].is_nan() {
        out[0] = 2.0 * out[1] - out[2];
    }
    if out[n - 1].is_nan() {
        out[n - 1] = 2.0 * out[n - 2] - out[n - 3];
    }
    SampledFunction::new(grid, out)
}

/// One Dirac level `ω` with upper component `ψ₊` and lower component `ψ₋`.
#[derive(Debug, Clone)]
pub struct DiracLevel {
    pub omega: f64,
    pub upper: SampledFunction,
    pub lower: SampledFunction,
}

#[derive(Debug, Clone)]
pub struct DiracSpectrum {
    /// Ascending in `ω`; symmetric under `ω → -ω`.
    pub levels: Vec<DiracLevel>,
    pub zero_mode: ZeroMode,
    pub continuum_edge: f64,
    /// Eigenvalue the solver found for the zero level of `H₋`, if it was identified.
    pub zero_level_energy: Option<f64>,
}

impl DiracSpectrum {
    pub fn omegas(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.omega).collect()
    }

    pub fn has_zero_mode(&self) -> bool {
        self.zero_mode.exists()
    }

    pub fn upper_components(&self) -> impl Iterator<Item = &SampledFunction> {
        self.levels.iter().map(|l| &l.upper)
    }

    pub fn lower_components(&self) -> impl Iterator<Item = &SampledFunction> {
        self.levels.iter().map(|l| &l.lower)
    }

    /// The positive-`ω` levels, ascending.
    pub fn positive(&self) -> impl Iterator<Item = &DiracLevel> {
        self.levels.iter().filter(|l| l.omega > 0.0)
    }
}

/// Spectrum of `-d²/dx² + V` annotated with the superpotential's continuum edge.
pub fn partner_spectrum(v: &SampledFunction, sp: &Superpotential, k: usize) -> Result<Spectrum> {
    Ok(eigen_solve(v, k)?.with_continuum_edge(sp.continuum_edge()))
}

/// Solve `H₋` for `k` levels and assemble the Dirac spectrum from the bound ones.
pub fn dirac_spectrum(sp: &Superpotential, k: usize) -> Result<DiracSpectrum> {
    let pair = partner_potentials(sp);
    let spectrum = partner_spectrum(&pair.v_minus, sp, k)?;
    let zero = zero_mode(sp);
    let mut bound: Vec<usize> = spectrum.bound_indices().collect();
    let mut zero_level_energy = None;
    if let ZeroMode::Minus(_) = zero {
        if let Some(&first) = bound.first() {
            zero_level_energy = Some(spectrum.eigenvalues()[first]);
            bound.remove(0);
        }
    }

    let mut positive = Vec::with_capacity(bound.len());
    for i in bound {
        let energy = spectrum.eigenvalues()[i];
        if energy <= 0.0 {
            return Err(Error::CrossCheck {
                what: "positive H- level",
                value: energy,
                tolerance: 0.0,
            });
        }
        let omega = energy.sqrt();
        let lower = spectrum.eigenvectors()[i].clone();
        let upper = normalize(&apply_a(sp, &lower)?.scale(1.0 / omega))
            .ok_or_else(|| Error::NoConvergence("A maps a bound state to zero".into()))?;
        positive.push(DiracLevel {
            omega,
            upper,
            lower,
        });
    }
    Ok(assemble(
        positive,
        zero,
        sp.continuum_edge(),
        zero_level_energy,
    ))
}

/// Mirror positive levels to `-ω` (lower component negated) and insert the
/// zero mode.
pub(crate) fn assemble(
    positive: Vec<DiracLevel>,
    zero: ZeroMode,
    continuum_edge: f64,
    zero_level_energy: Option<f64>,
) -> DiracSpectrum {
    let mut levels: Vec<DiracLevel> = positive
        .iter()
        .rev()
        .map(|l| DiracLevel {
            omega: -l.omega,
            upper: l.upper.clone(),
            lower: l.lower.scale(-1.0),
        })
        .collect();
    match &zero {
        ZeroMode::Minus(m) => levels.push(DiracLevel {
            omega: 0.0,
            upper: SampledFunction::zeros(*m.grid()),
            lower: m.clone(),
        }),
        ZeroMode::Plus(m) => levels.push(DiracLevel {
            omega: 0.0,
            upper: m.clone(),
            lower: SampledFunction::zeros(*m.grid()),
        }),
        _ => {}
    }
    levels.extend(positive);
    DiracSpectrum {
        levels,
        zero_mode: zero,
        continuum_edge,
        zero_level_energy,
    }
}
