//! Plastic zone around a pressurized elliptic hole `x = cos t, y = b sin t`.
//!
//! Domain 1 is the Cauchy triangle on the hole quadrant from the end of the
//! major axis (`alpha = 0`) to the end of the minor axis
//! (`alpha = pi/4`); the outward normal there makes angle `2 alpha` with the
//! major axis. Domain 2 is the initial-characteristic triangle between the
//! alpha-line `beta = 0` and the major axis, with the beta row mirrored from
//! the alpha row so that the field is symmetric about the axis.
//!
//! Stresses are normalized by `2k`, the hole pressure `p` included.

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

use crate::bvp::{solve_cauchy_const, solve_initial_char, CauchyBoundary, SlipLineField};
use crate::error::{Result, SlatError};
use crate::geometry::{build_net, CharacteristicNet, NetSpec, Pose};
use crate::operators::Orientation;
use crate::oracle::{ellipse_curvature_param, ellipse_param_of_alpha};
use crate::series::FactorialSeries;

/// Chebyshev samples used to project `rho(t(alpha))`.
const SAMPLES: usize = 200;
/// Accuracy the truncated `r(alpha)` row is expected to reach.
pub const FIT_TARGET: f64 = 1e-4;
/// Least number of terms kept in the field rows. The monomial form of
/// `r(alpha)` has large alternating coefficients, and the rows derived from
/// it only settle well past the length of `r` itself.
const MIN_FIELD_ORDER: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EllipticParams {
    pub b_ratio: f64,
    /// Hole pressure in units of `2k`.
    pub pressure: f64,
    pub order: usize,
    pub k: f64,
    /// Nodes per characteristic direction, shared by both domains.
    pub grid: usize,
}

impl Default for EllipticParams {
    fn default() -> Self {
        Self { b_ratio: 0.4, pressure: 0.0, order: 15, k: 1.0, grid: 16 }
    }
}

/// One point of the symmetry-axis profile.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisPoint {
    pub alpha: f64,
    pub xi: f64,
    pub sigma1: f64,
    pub sigma2: f64,
    pub delta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EllipticReport {
    pub b_ratio: f64,
    pub pressure: f64,
    pub order: usize,
    /// Length of the `a`, `b` rows of both domains.
    pub field_order: usize,
    /// Factorial row of the hole curvature radius.
    pub r: FactorialSeries,
    /// Largest `|r(alpha) - rho(t(alpha))|` over the quadrant.
    pub fit_error: f64,
    /// Largest distance from a domain-1 diagonal node to the hole.
    pub boundary_deviation: f64,
    /// Largest `|y|` of a domain-2 node on the symmetry axis.
    pub axis_deviation: f64,
    /// Largest mismatch of node `(i, j)` against the reflection of `(j, i)`
    /// in domain 2.
    pub mirror_deviation: f64,
    pub profile: Vec<AxisPoint>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct EllipticSolution {
    pub report: EllipticReport,
    pub domain1: SlipLineField,
    pub domain2: SlipLineField,
    pub net1: CharacteristicNet,
    pub net2: CharacteristicNet,
}

/// Factorial row of `r(alpha) = rho(t(alpha))` on `[0, pi/4]`, with `n`
/// terms, from a Chebyshev projection of the parametric curvature.
pub fn radius_row(b_ratio: f64, n: usize) -> Result<FactorialSeries> {
    if !(b_ratio > 0.0 && b_ratio <= 1.0) {
        return Err(SlatError::InvalidInput(format!("axis ratio must lie in (0, 1], got {b_ratio}")));
    }
    if n == 0 {
        return Err(SlatError::InvalidInput("truncation order N must be at least 1".into()));
    }
    // alpha = FRAC_PI_8 (1 + u), u in [-1, 1]
    let m = SAMPLES;
    let mut values = Vec::with_capacity(m);
    for j in 0..m {
        let u = (std::f64::consts::PI * (j as f64 + 0.5) / m as f64).cos();
        let alpha = FRAC_PI_8 * (1.0 + u);
        let t = ellipse_param_of_alpha(alpha, b_ratio);
        values.push(ellipse_curvature_param(t, b_ratio)?.rho);
    }
    let mut cheb = vec![0.0; n];
    for (k, c) in cheb.iter_mut().enumerate() {
        let mut s = 0.0;
        for (j, &f) in values.iter().enumerate() {
            s += f * (std::f64::consts::PI * k as f64 * (j as f64 + 0.5) / m as f64).cos();
        }
        *c = 2.0 * s / m as f64;
    }
    cheb[0] *= 0.5;
    // sampling noise would be amplified by the monomial conversion below
    let floor = 1e-14 * cheb[0].abs();
    for c in cheb.iter_mut().skip(1) {
        if c.abs() < floor {
            *c = 0.0;
        }
    }

    // monomials in u, T_{k+1} = 2u T_k - T_{k-1}
    let mut in_u = vec![0.0; n];
    let mut t_prev = vec![0.0; n];
    let mut t_cur = vec![0.0; n];
    t_cur[0] = 1.0;
    for (k, &c) in cheb.iter().enumerate() {
        for (acc, &p) in in_u.iter_mut().zip(&t_cur) {
            *acc += c * p;
        }
        let mut next = vec![0.0; n];
        let lift = if k == 0 { 1.0 } else { 2.0 };
        for i in 0..n - 1 {
            next[i + 1] = lift * t_cur[i];
        }
        if k > 0 {
            for i in 0..n {
                next[i] -= t_prev[i];
            }
        }
        t_prev = std::mem::replace(&mut t_cur, next);
    }

    // u = alpha / FRAC_PI_8 - 1, expanded by Horner
    let scale = 1.0 / FRAC_PI_8;
    let mut taylor = vec![0.0; n];
    for &c in in_u.iter().rev() {
        let mut next = vec![0.0; n];
        for i in 0..n {
            next[i] -= taylor[i];
            if i + 1 < n {
                next[i + 1] += scale * taylor[i];
            }
        }
        next[0] += c;
        taylor = next;
    }
    let row = FactorialSeries::from_taylor(&taylor);
    if !row.is_finite() {
        return Err(SlatError::NonFinite { i: 0, j: 0 });
    }
    Ok(row)
}

/// Largest `|r(alpha) - rho|` on a uniform sweep of the quadrant.
pub fn fit_error(r: &FactorialSeries, b_ratio: f64, samples: usize) -> Result<f64> {
    let samples = samples.max(2);
    let mut worst: f64 = 0.0;
    for i in 0..samples {
        let alpha = FRAC_PI_4 * i as f64 / (samples - 1) as f64;
        let t = ellipse_param_of_alpha(alpha, b_ratio);
        let rho = ellipse_curvature_param(t, b_ratio)?.rho;
        worst = worst.max((r.eval(alpha) - rho).abs());
    }
    Ok(worst)
}

pub fn run_elliptic_hole(params: &EllipticParams) -> Result<EllipticSolution> {
    let EllipticParams { b_ratio, pressure, order, k, grid } = *params;
    if !pressure.is_finite() {
        return Err(SlatError::InvalidInput("pressure must be finite".into()));
    }
    let r = radius_row(b_ratio, order)?;
    let fit = fit_error(&r, b_ratio, 401)?;
    let mut warnings = Vec::new();
    if fit > FIT_TARGET {
        warnings.push(format!(
            "r(alpha) misses the hole curvature by {fit:.3e} > {FIT_TARGET:e} at N = {order}; raise N for b = {b_ratio}"
        ));
    }

    // the hole carries sigma_n = -p, tau_n = 0
    let sigma0 = k - 2.0 * k * pressure;
    let field_order = (2 * order).max(MIN_FIELD_ORDER);
    let bnd = CauchyBoundary { r: r.truncated(field_order), eta: FRAC_PI_4, sigma_n: -2.0 * k * pressure, tau_n: 0.0, orientation: Orientation::Direct };
    let domain1 = solve_cauchy_const(&bnd, sigma0, k)?;
    let mirrored: Vec<f64> =
        domain1.a().coeffs().iter().enumerate().map(|(n, &a)| if n % 2 == 0 { -a } else { a }).collect();
    let domain2 = solve_initial_char(domain1.a().clone(), FactorialSeries::new(mirrored), sigma0, k)?;

    let origin = Pose { x: 1.0, y: 0.0, phi: FRAC_PI_4 };
    let mut net1 = build_net(&domain1, &NetSpec::new(FRAC_PI_4, FRAC_PI_4, grid, grid, origin))?;
    net1.restrict(|i, j| j <= i);
    let mut net2 = build_net(&domain2, &NetSpec::new(FRAC_PI_4, -FRAC_PI_4, grid, grid, origin))?;
    net2.restrict(|i, j| j <= i);

    let mut boundary_deviation: f64 = 0.0;
    let mut axis_deviation: f64 = 0.0;
    let mut profile = Vec::with_capacity(grid);
    let mut mirror_deviation: f64 = 0.0;
    for i in 0..grid {
        let d = net1.node(i, i);
        let t = ellipse_param_of_alpha(d.alpha, b_ratio);
        boundary_deviation = boundary_deviation.max((d.x - t.cos()).hypot(d.y - b_ratio * t.sin()));

        let n = net2.node(i, i);
        axis_deviation = axis_deviation.max(n.y.abs());
        let sigma = n.sigma / (2.0 * k);
        profile.push(AxisPoint { alpha: n.alpha, xi: n.x, sigma1: sigma + 0.5, sigma2: sigma - 0.5, delta: sigma + 0.5 + pressure });
        for j in 0..i {
            let (p, q) = (net2.node(i, j), net2.node(j, i));
            mirror_deviation = mirror_deviation.max((p.x - q.x).abs()).max((p.y + q.y).abs());
        }
    }

    let report = EllipticReport {
        b_ratio,
        pressure,
        order,
        field_order,
        r,
        fit_error: fit,
        boundary_deviation,
        axis_deviation,
        mirror_deviation,
        profile,
        warnings,
    };
    Ok(EllipticSolution { report, domain1, domain2, net1, net2 })
}
