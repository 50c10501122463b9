//! Symmetric tridiagonal eigensolver: Sturm-sequence bisection for the
//! eigenvalues, inverse iteration for the eigenvectors.

use crate::error::{Error, Result};

/// Symmetric tridiagonal matrix given by its diagonal and off-diagonal.
#[derive(Debug, Clone)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

const MAX_BISECTION: usize = 200;
const MAX_INVERSE: usize = 8;

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert!(!diag.is_empty(), "empty matrix");
        assert_eq!(off.len() + 1, diag.len(), "off-diagonal length");
        Self { diag, off }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// `y = T x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let m = self.dim();
        (0..m)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < m {
                    s += self.off[i] * x[i + 1];
                }
                s
            })
            .collect()
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let m = self.dim();
        (0..m).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), i| {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 }
                + if i + 1 < m { self.off[i].abs() } else { 0.0 };
            (lo.min(self.diag[i] - r), hi.max(self.diag[i] + r))
        })
    }

    fn norm(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE)
    }

    /// Number of eigenvalues strictly below `sigma`.
    pub fn count_below(&self, sigma: f64) -> usize {
        let pivmin = f64::MIN_POSITIVE * self.norm().max(1.0);
        let mut count = 0;
        let mut q = self.diag[0] - sigma;
        for i in 0.. {
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
            if i + 1 == self.dim() {
                break;
            }
            q = self.diag[i + 1] - sigma - self.off[i] * self.off[i] / q;
        }
        count
    }

    /// The `index`-th smallest eigenvalue (0-based) by bisection.
    pub fn eigenvalue(&self, index: usize) -> Result<f64> {
        let (mut lo, mut hi) = self.gershgorin();
        let pad = f64::EPSILON * self.norm() * 4.0;
        lo -= pad;
        hi += pad;
        for _ in 0..MAX_BISECTION {
            let mid = 0.5 * (lo + hi);
            let tol = 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) + f64::MIN_POSITIVE;
            if hi - lo <= tol || mid <= lo || mid >= hi {
                return Ok(mid);
            }
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Err(Error::NoConvergence(format!(
            "bisection for eigenvalue {index} stalled in [{lo:e}, {hi:e}]"
        )))
    }

    /// Eigenvector for a converged eigenvalue, unit Euclidean norm.
    ///
    /// `previous` holds already computed (orthonormal) eigenvectors whose
    /// eigenvalues are close enough to `lambda` to need re-orthogonalization.
    /// `seed` selects a deterministic start vector; distinct seeds keep
    /// degenerate eigenvalues from collapsing onto the same start direction.
    pub fn eigenvector(&self, lambda: f64, previous: &[&[f64]], seed: usize) -> Result<Vec<f64>> {
        let m = self.dim();
        let lu = ShiftedLu::factor(self, lambda);
        let phase = 0.618_033_988_75 * (seed as f64 + 1.0);
        let mut x: Vec<f64> = (0..m)
            .map(|i| 1.0 + 0.5 * ((i as f64 * 0.754_877_666 + phase).fract() - 0.5))
            .collect();
        unit(&mut x);
        let tol = 64.0 * f64::EPSILON * self.norm();
        let mut best = f64::INFINITY;
        for _ in 0..MAX_INVERSE {
            lu.solve(&mut x);
            for p in previous {
                let c = dot(&x, p);
                x.iter_mut().zip(p.iter()).for_each(|(a, b)| *a -= c * b);
            }
            if !unit(&mut x) {
                return Err(Error::NoConvergence(format!(
                    "inverse iteration collapsed at lambda = {lambda:e}"
                )));
            }
            let r = residual(self, &x, lambda);
            best = best.min(r);
            if r <= tol {
                return Ok(x);
            }
        }
        Err(Error::NoConvergence(format!(
            "inverse iteration at lambda = {lambda:e}: residual {best:e} above {tol:e}"
        )))
    }

    /// The `k` lowest eigenpairs, ascending.
    pub fn lowest(&self, k: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
        let cluster = 1e-3 * self.norm();
        let mut values: Vec<f64> = Vec::with_capacity(k);
        let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(k);
        for j in 0..k {
            let lambda = self.eigenvalue(j)?;
            let close: Vec<&[f64]> = values
                .iter()
                .zip(&vectors)
                .filter(|(v, _)| (lambda - **v).abs() <= cluster)
                .map(|(_, x)| x.as_slice())
                .collect();
            let x = self.eigenvector(lambda, &close, j)?;
            values.push(lambda);
            vectors.push(x);
        }
        Ok((values, vectors))
    }
}

/// `‖T x - λ x‖₂ / ‖x‖₂`.
pub fn residual(t: &SymTridiagonal, x: &[f64], lambda: f64) -> f64 {
    let tx = t.apply(x);
    let num: f64 = tx
        .iter()
        .zip(x)
        .map(|(a, b)| (a - lambda * b).powi(2))
        .sum();
    (num / dot(x, x)).sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn unit(x: &mut [f64]) -> bool {
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return false;
    }
    x.iter_mut().for_each(|v| *v /= scale);
    let norm = dot(x, x).sqrt();
    x.iter_mut().for_each(|v| *v /= norm);
    true
}

/// LU factorization of `T - σI` with partial pivoting. Row `k` of `U` has
/// entries at columns `k, k+1, k+2`.
struct ShiftedLu {
    d: Vec<f64>,
    u: Vec<f64>,
    v: Vec<f64>,
    l: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn factor(t: &SymTridiagonal, sigma: f64) -> Self {
        let m = t.dim();
        let tiny = f64::EPSILON * t.norm();
        let mut d: Vec<f64> = t.diag.iter().map(|a| a - sigma).collect();
        let mut u: Vec<f64> = t.off.clone();
        u.push(0.0);
        let mut v = vec![0.0; m];
        let mut l = vec![0.0; m.saturating_sub(1)];
        let mut swapped = vec![false; m.saturating_sub(1)];
        for k in 0..m.saturating_sub(1) {
            let sub = t.off[k];
            if d[k].abs() >= sub.abs() {
                if d[k] == 0.0 {
                    d[k] = tiny;
                }
                l[k] = sub / d[k];
                d[k + 1] -= l[k] * u[k];
            } else {
                let (old_d, old_u) = (d[k], u[k]);
                let (next_d, next_u) = (d[k + 1], u[k + 1]);
                l[k] = old_d / sub;
                d[k] = sub;
                u[k] = next_d;
                v[k] = next_u;
                d[k + 1] = old_u - l[k] * next_d;
                u[k + 1] = -l[k] * next_u;
                swapped[k] = true;
            }
        }
        if d[m - 1] == 0.0 {
            d[m - 1] = tiny;
        }
        Self {
            d,
            u,
            v,
            l,
            swapped,
        }
    }

    fn solve(&self, y: &mut [f64]) {
        let m = y.len();
        for k in 0..m - 1 {
            if self.swapped[k] {
                y.swap(k, k + 1);
            }
            y[k + 1] -= self.l[k] * y[k];
        }
        y[m - 1] /= self.d[m - 1];
        if m >= 2 {
            y[m - 2] = (y[m - 2] - self.u[m - 2] * y[m - 1]) / self.d[m - 2];
        }
        for k in (0..m.saturating_sub(2)).rev() {
            y[k] = (y[k] - self.u[k] * y[k + 1] - self.v[k] * y[k + 2]) / self.d[k];
        }
    }
}
