//! Quadrature and finite-difference derivatives on a uniform grid.

use super::{Grid, SampledFunction};

/// Finite-difference stencil order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Stencil {
    /// Three-point central differences, second-order one-sided at the ends.
    #[default]
    Second,
    /// Five-point central differences, fourth-order one-sided near the ends.
    Fourth,
}

/// Running composite-trapezoid integral from `x_min`.
///
/// `g(x_0) = 0`; the result is non-decreasing whenever `f >= 0`.
pub fn cumulative_integral(f: &SampledFunction) -> SampledFunction {
    let h = f.grid().spacing();
    let v = f.values();
    let mut out = Vec::with_capacity(v.len());
    let mut acc = 0.0;
    out.push(0.0);
    for w in v.windows(2) {
        acc += 0.5 * h * (w[0] + w[1]);
        out.push(acc);
    }
    SampledFunction::new(*f.grid(), out).expect("finite input gives finite running sums")
}

/// Running trapezoid integral with the Euler-Maclaurin endpoint correction
/// `-h²/12 (f'(x) - f'(x_min))`, fourth-order accurate for smooth `f`.
///
/// The derivative in the correction is taken with the fourth-order stencil.
pub fn cumulative_integral_corrected(f: &SampledFunction) -> SampledFunction {
    let h = f.grid().spacing();
    let base = cumulative_integral(f);
    let df = derivative_with(f, Stencil::Fourth);
    let d0 = df[0];
    let values = base
        .values()
        .iter()
        .zip(df.values())
        .map(|(&t, &d)| t - h * h / 12.0 * (d - d0))
        .collect();
    SampledFunction::new(*f.grid(), values).expect("finite input gives finite running sums")
}

/// Definite trapezoid integral over the whole grid.
pub fn integrate(f: &SampledFunction) -> f64 {
    let v = f.values();
    let h = f.grid().spacing();
    let interior: f64 = v[1..v.len() - 1].iter().sum();
    h * (interior + 0.5 * (v[0] + v[v.len() - 1]))
}

/// `sqrt(∫ f²)` under the trapezoid rule.
pub fn l2_norm(f: &SampledFunction) -> f64 {
    let v = f.values();
    let h = f.grid().spacing();
    let interior: f64 = v[1..v.len() - 1].iter().map(|x| x * x).sum();
    let ends = 0.5 * (v[0] * v[0] + v[v.len() - 1] * v[v.len() - 1]);
    (h * (interior + ends)).sqrt()
}

/// Rescale to unit L² norm. Returns `None` for the zero function.
pub fn normalize(f: &SampledFunction) -> Option<SampledFunction> {
    let norm = l2_norm(f);
    (norm > 0.0).then(|| f.scale(1.0 / norm))
}

/// Second-order derivative stencil.
pub fn derivative(f: &SampledFunction) -> SampledFunction {
    derivative_with(f, Stencil::Second)
}

pub fn derivative_with(f: &SampledFunction, stencil: Stencil) -> SampledFunction {
    let grid = *f.grid();
    let values = match stencil {
        Stencil::Fourth if grid.len() >= 5 => fourth_order(f.values(), grid.spacing()),
        _ => second_order(f.values(), grid.spacing()),
    };
    SampledFunction::new(grid, values).expect("differences of finite samples are finite")
}

fn second_order(v: &[f64], h: f64) -> Vec<f64> {
    let n = v.len();
    let mut d = vec![0.0; n];
    for i in 1..n - 1 {
        d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    }
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    d
}

fn fourth_order(v: &[f64], h: f64) -> Vec<f64> {
    let n = v.len();
    let mut d = vec![0.0; n];
    let s = 12.0 * h;
    for i in 2..n - 2 {
        d[i] = (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / s;
    }
    d[0] = (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]) / s;
    d[1] = (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]) / s;
    let m = n - 1;
    d[m] = (25.0 * v[m] - 48.0 * v[m - 1] + 36.0 * v[m - 2] - 16.0 * v[m - 3] + 3.0 * v[m - 4]) / s;
    d[m - 1] = (3.0 * v[m] + 10.0 * v[m - 1] - 18.0 * v[m - 2] + 6.0 * v[m - 3] - v[m - 4]) / s;
    d
}

/// Samples of `x` itself.
pub fn coordinate(grid: Grid) -> SampledFunction {
    SampledFunction::from_fn(grid, |x| x).expect("finite grid")
}
