//! Reference computations that share no code with the production series
//! evaluators: finite-difference marching for `f_{alpha beta} + f = 0`,
//! brute-force compensated summation, the double-series form of the
//! curvature radii and the parametric curvature of an ellipse.

use crate::error::{Result, SlatError};

/// Neumaier-compensated sum of `term(0), term(1), ...`, stopped once
/// `|term| < tol |sum|` holds for three consecutive terms.
pub fn series_sum_reference(mut term: impl FnMut(usize) -> f64, tol: f64) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut quiet = 0;
    for n in 0..100_000 {
        let t = term(n);
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
        if t.abs() < tol * (sum + comp).abs() || (t == 0.0 && sum == 0.0 && n > 0) {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    sum + comp
}

/// `0F1(n+1; z)` summed term by term from its definition.
pub fn hyp0f1_reference(n: usize, z: f64) -> f64 {
    series_sum_reference(
        |k| (1..=k).map(|i| z / (i as f64 * (i + n) as f64)).product(),
        1e-17,
    )
}

fn power_over_factorial(x: f64, n: usize) -> f64 {
    let mut t = 1.0;
    for i in 1..=n {
        t *= x / i as f64;
    }
    t
}

/// Double-series form of the curvature radii,
/// `R = sum a_n alpha_{n+k} (-beta)_k + b_{n-1} (-alpha)_k beta_{n+k}` and
/// `S = sum -a_{n-1} alpha_{n+k} (-beta)_k + b_n (-alpha)_k beta_{n+k}`,
/// truncated at `k < k_max`. Returns `(R, S)`.
pub fn double_series(a: &[f64], b: &[f64], alpha: f64, beta: f64, k_max: usize) -> (f64, f64) {
    let len = a.len().max(b.len());
    let at = |v: &[f64], n: isize| if n >= 0 && (n as usize) < v.len() { v[n as usize] } else { 0.0 };
    let mut r = 0.0;
    let mut s = 0.0;
    for n in 0..len {
        let ni = n as isize;
        for k in 0..k_max {
            let p = power_over_factorial(alpha, n + k) * power_over_factorial(-beta, k);
            let q = power_over_factorial(-alpha, k) * power_over_factorial(beta, n + k);
            r += at(a, ni) * p + at(b, ni - 1) * q;
            s += -at(a, ni - 1) * p + at(b, ni) * q;
        }
    }
    (r, s)
}

/// Solution of `f_{alpha beta} + f = 0` on a uniform grid from its values
/// on `beta = 0` (`edge_alpha[i] = f(i h_alpha, 0)`) and on `alpha = 0`
/// (`edge_beta[j] = f(0, j h_beta)`).
///
/// Each cell uses the exact integral relation
/// `f(NE) = f(NW) + f(SE) - f(SW) - iint f`, with the cell integral taken
/// by the trapezoidal rule and solved for `f(NE)`. Second order in `h`.
pub fn fd_telegraph(edge_alpha: &[f64], edge_beta: &[f64], h_alpha: f64, h_beta: f64) -> Result<Vec<Vec<f64>>> {
    if edge_alpha.is_empty() || edge_beta.is_empty() {
        return Err(SlatError::InvalidInput("edges must be non-empty".into()));
    }
    if (edge_alpha[0] - edge_beta[0]).abs() > 1e-12 * (1.0 + edge_alpha[0].abs()) {
        return Err(SlatError::InvalidInput(format!(
            "corner values disagree: {} vs {}",
            edge_alpha[0], edge_beta[0]
        )));
    }
    let c = h_alpha * h_beta / 4.0;
    if !(1.0 + c).is_normal() || (1.0 + c).abs() < 1e-12 {
        return Err(SlatError::Domain(format!("step sizes {h_alpha}, {h_beta} make the cell update singular")));
    }
    let (na, nb) = (edge_alpha.len(), edge_beta.len());
    let mut f = vec![vec![0.0; nb]; na];
    for i in 0..na {
        f[i][0] = edge_alpha[i];
    }
    f[0][..nb].copy_from_slice(edge_beta);
    for i in 1..na {
        for j in 1..nb {
            let (sw, se, nw) = (f[i - 1][j - 1], f[i][j - 1], f[i - 1][j]);
            f[i][j] = (nw + se - sw - c * (sw + se + nw)) / (1.0 + c);
        }
    }
    Ok(f)
}

/// Parametric curvature data for `x = cos t`, `y = b sin t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipsePoint {
    /// Radius of curvature.
    pub rho: f64,
    /// Tangent angle, counter-clockwise traversal.
    pub gamma: f64,
    /// Characteristic parameter with `gamma = 2 alpha + pi/2`.
    pub alpha: f64,
}

pub fn ellipse_curvature_param(t: f64, b: f64) -> Result<EllipsePoint> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(SlatError::Domain(format!("axis ratio must be positive, got {b}")));
    }
    let (s, c) = t.sin_cos();
    // |p'|^3 / |p' x p''| with p' = (-sin t, b cos t), p'' = (-cos t, -b sin t)
    let speed2 = s * s + b * b * c * c;
    let rho = speed2.powf(1.5) / b;
    let normal = s.atan2(b * c);
    let gamma = normal + std::f64::consts::FRAC_PI_2;
    Ok(EllipsePoint { rho, gamma, alpha: normal / 2.0 })
}

/// Ellipse parameter `t` at which the outward normal makes angle
/// `2 alpha` with the major axis.
pub fn ellipse_param_of_alpha(alpha: f64, b: f64) -> f64 {
    let theta = 2.0 * alpha;
    (b * theta.sin()).atan2(theta.cos())
}
