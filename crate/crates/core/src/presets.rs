//! Built-in superpotentials with exact derivatives.

use crate::error::{Error, Result};
use crate::numerics::{Grid, SampledFunction};
use crate::susy::Superpotential;

/// `f(x) = ℓ tanh x`, `f' = ℓ sech² x`, asymptotes `∓ℓ`.
pub fn ell_tanh(ell: u32, grid: Grid) -> Result<Superpotential> {
    if ell == 0 {
        return Err(Error::InvalidSuperpotential(
            "ell must be at least 1".into(),
        ));
    }
    let l = f64::from(ell);
    let f = SampledFunction::from_fn(grid, |x| l * x.tanh())?;
    let df = SampledFunction::from_fn(grid, |x| l / x.cosh().powi(2))?;
    Superpotential::with_asymptotes(f, -l, l)?.with_derivative(df)
}

/// The kink background `f(x) = 2 tanh x`.
pub fn kink(grid: Grid) -> Result<Superpotential> {
    ell_tanh(2, grid)
}
