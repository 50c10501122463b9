//! Grids, sampled functions, quadrature, finite differences and the
//! Dirichlet eigensolver for `H = -d²/dx² + V`.

mod calculus;
mod grid;
pub mod tridiag;

pub use calculus::{
    coordinate, cumulative_integral, cumulative_integral_corrected, derivative, derivative_with,
    integrate, l2_norm, normalize, Stencil,
};
pub use grid::{Grid, SampledFunction};

use crate::error::{Error, Result};
use tridiag::SymTridiagonal;

/// Lowest eigenpairs of a discretized Schrödinger operator.
///
/// Eigenvectors are sampled on the full grid (zero at the Dirichlet walls)
/// and normalized to unit L² norm under the trapezoid rule.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<SampledFunction>,
    continuum_edge: Option<f64>,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &[SampledFunction] {
        &self.eigenvectors
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn continuum_edge(&self) -> Option<f64> {
        self.continuum_edge
    }

    pub fn with_continuum_edge(mut self, edge: f64) -> Self {
        self.continuum_edge = Some(edge);
        self
    }

    /// Energy below which a box level counts as a bound state:
    /// `edge - 10 h²`. Without an edge every level is bound.
    pub fn bound_cutoff(&self) -> f64 {
        match (self.continuum_edge, self.eigenvectors.first()) {
            (Some(edge), Some(v)) => edge - 10.0 * v.grid().spacing().powi(2),
            _ => f64::INFINITY,
        }
    }

    /// Indices of levels below [`Spectrum::bound_cutoff`].
    pub fn bound_indices(&self) -> impl Iterator<Item = usize> + '_ {
        let cut = self.bound_cutoff();
        (0..self.len()).filter(move |&i| self.eigenvalues[i] < cut)
    }

    pub fn bound_eigenvalues(&self) -> Vec<f64> {
        self.bound_indices().map(|i| self.eigenvalues[i]).collect()
    }
}

/// Interior part of the Dirichlet finite-difference matrix for `-d²/dx² + V`.
pub fn hamiltonian_matrix(potential: &SampledFunction) -> SymTridiagonal {
    let grid = potential.grid();
    let h2 = grid.spacing().powi(2);
    let v = potential.values();
    let diag = v[1..v.len() - 1].iter().map(|vi| 2.0 / h2 + vi).collect();
    let off = vec![-1.0 / h2; v.len() - 3];
    SymTridiagonal::new(diag, off)
}

/// Relative residual `‖Hψ - Eψ‖₂/‖ψ‖₂` of a sampled function in the discrete
/// (interior) norm.
pub fn discrete_residual(potential: &SampledFunction, psi: &SampledFunction, energy: f64) -> f64 {
    let h = hamiltonian_matrix(potential);
    let v = psi.values();
    tridiag::residual(&h, &v[1..v.len() - 1], energy)
}

/// The `k` lowest eigenpairs of `-d²/dx² + V` with Dirichlet walls at both ends.
pub fn eigen_solve(potential: &SampledFunction, k: usize) -> Result<Spectrum> {
    let grid = *potential.grid();
    let max = grid.len() - 3;
    if k == 0 || k > max {
        return Err(Error::LevelCount { requested: k, max });
    }
    let matrix = hamiltonian_matrix(potential);
    let (values, vectors) = matrix.lowest(k)?;
    let eigenvectors = vectors
        .into_iter()
        .map(|interior| {
            let mut full = Vec::with_capacity(grid.len());
            full.push(0.0);
            full.extend_from_slice(&interior);
            full.push(0.0);
            // largest component positive
            let peak = full
                .iter()
                .copied()
                .fold(0.0f64, |m, v| if v.abs() > m.abs() { v } else { m });
            let sign = if peak < 0.0 { -1.0 } else { 1.0 };
            let f = SampledFunction::new(grid, full)?.scale(sign);
            Ok(normalize(&f).expect("eigenvectors are nonzero"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Spectrum {
        eigenvalues: values,
        eigenvectors,
        continuum_edge: None,
    })
}
