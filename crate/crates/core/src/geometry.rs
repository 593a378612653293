//! Physical slip-line nets and stress states.
//!
//! The alpha-line direction is `phi = phi0 + alpha + beta` and the mean
//! stress is `sigma = sigma0 + 2k(alpha - beta)`. Positions follow from
//!
//! ```text
//! dp/dalpha = R (cos phi, sin phi),   dp/dbeta = S (sin phi, -cos phi)
//! ```
//!
//! The second relation is forced by integrability given `R_beta = S`; it
//! is `ds_beta = -S dbeta` along the beta-line tangent at `phi + pi/2`.

use serde::{Deserialize, Serialize};

use crate::bvp::CurvatureField;
use crate::error::{Result, SlatError};
use crate::quadrature::GaussLegendre;

/// Stress tensor at a point of the plastic region.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StressState {
    pub sigma: f64,
    pub phi: f64,
    pub s11: f64,
    pub s22: f64,
    pub s12: f64,
    pub s1: f64,
    pub s2: f64,
}

impl StressState {
    pub fn new(sigma: f64, phi: f64, k: f64) -> Self {
        let (s2phi, c2phi) = (2.0 * phi).sin_cos();
        Self {
            sigma,
            phi,
            s11: sigma - k * s2phi,
            s22: sigma + k * s2phi,
            s12: k * c2phi,
            s1: sigma + k,
            s2: sigma - k,
        }
    }

    /// `(s11 - s22)^2 + 4 s12^2 - 4 k^2`.
    pub fn yield_residual(&self, k: f64) -> f64 {
        let d = self.s11 - self.s22;
        d * d + 4.0 * self.s12 * self.s12 - 4.0 * k * k
    }

    /// Traction `sigma . n` on a surface element with normal `n`.
    pub fn traction(&self, n: [f64; 2]) -> [f64; 2] {
        [self.s11 * n[0] + self.s12 * n[1], self.s12 * n[0] + self.s22 * n[1]]
    }
}

/// Stress at `(alpha, beta)` with the alpha-line of the origin along x.
pub fn stress_at(f: &impl CurvatureField, alpha: f64, beta: f64) -> StressState {
    stress_with_phi0(f, alpha, beta, 0.0)
}

pub fn stress_with_phi0(f: &impl CurvatureField, alpha: f64, beta: f64, phi0: f64) -> StressState {
    let k = f.yield_stress();
    StressState::new(f.sigma0() + 2.0 * k * (alpha - beta), phi0 + alpha + beta, k)
}

/// Position and alpha-line direction of the characteristic origin.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Pose {
    pub x: f64,
    pub y: f64,
    pub phi: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetNode {
    pub alpha: f64,
    pub beta: f64,
    pub x: f64,
    pub y: f64,
    pub phi: f64,
    pub sigma: f64,
}

/// Grid `alpha_i = alpha_end i/(n_alpha-1)`, `beta_j = beta_end j/(n_beta-1)`.
/// Either extent may be negative.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetSpec {
    pub alpha_end: f64,
    pub beta_end: f64,
    pub n_alpha: usize,
    pub n_beta: usize,
    pub origin: Pose,
    /// Gauss-Legendre points per cell edge.
    pub quad_points: usize,
    /// Allowed disagreement between the two marching orders, relative to
    /// the net size.
    pub tolerance: f64,
}

impl NetSpec {
    pub fn new(alpha_end: f64, beta_end: f64, n_alpha: usize, n_beta: usize, origin: Pose) -> Self {
        Self { alpha_end, beta_end, n_alpha, n_beta, origin, quad_points: 8, tolerance: 1e-10 }
    }

    pub fn alpha(&self, i: usize) -> f64 {
        if self.n_alpha < 2 {
            0.0
        } else {
            self.alpha_end * i as f64 / (self.n_alpha - 1) as f64
        }
    }

    pub fn beta(&self, j: usize) -> f64 {
        if self.n_beta < 2 {
            0.0
        } else {
            self.beta_end * j as f64 / (self.n_beta - 1) as f64
        }
    }
}

/// Nodes of a reconstructed net, stored row-major in `alpha`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacteristicNet {
    pub n_alpha: usize,
    pub n_beta: usize,
    pub origin: Pose,
    nodes: Vec<NetNode>,
    active: Vec<bool>,
    path_discrepancy: f64,
}

impl CharacteristicNet {
    pub fn node(&self, i: usize, j: usize) -> &NetNode {
        &self.nodes[i * self.n_beta + j]
    }

    pub fn nodes(&self) -> &[NetNode] {
        &self.nodes
    }

    pub fn is_active(&self, i: usize, j: usize) -> bool {
        self.active[i * self.n_beta + j]
    }

    /// Active nodes in row-major order.
    pub fn active_nodes(&self) -> impl Iterator<Item = &NetNode> {
        self.nodes.iter().zip(&self.active).filter(|(_, a)| **a).map(|(n, _)| n)
    }

    /// Marks nodes outside a sub-domain (e.g. a characteristic triangle)
    /// as inactive; exporters skip them.
    pub fn restrict(&mut self, keep: impl Fn(usize, usize) -> bool) {
        for i in 0..self.n_alpha {
            for j in 0..self.n_beta {
                self.active[i * self.n_beta + j] = keep(i, j);
            }
        }
    }

    /// Largest distance between the alpha-first and beta-first positions.
    pub fn path_discrepancy(&self) -> f64 {
        self.path_discrepancy
    }

    /// Points of the alpha-line `beta = beta_j` (active nodes only).
    pub fn alpha_line(&self, j: usize) -> Vec<[f64; 2]> {
        (0..self.n_alpha).filter(|&i| self.is_active(i, j)).map(|i| self.xy(i, j)).collect()
    }

    pub fn beta_line(&self, i: usize) -> Vec<[f64; 2]> {
        (0..self.n_beta).filter(|&j| self.is_active(i, j)).map(|j| self.xy(i, j)).collect()
    }

    pub fn xy(&self, i: usize, j: usize) -> [f64; 2] {
        let n = self.node(i, j);
        [n.x, n.y]
    }
}

fn finite(v: [f64; 2], i: usize, j: usize) -> Result<[f64; 2]> {
    if v[0].is_finite() && v[1].is_finite() {
        Ok(v)
    } else {
        Err(SlatError::NonFinite { i, j })
    }
}

/// Displacement along the alpha-line `beta` from `alpha0` to `alpha1`.
pub fn alpha_step(f: &impl CurvatureField, rule: &GaussLegendre, phi0: f64, beta: f64, alpha0: f64, alpha1: f64) -> [f64; 2] {
    rule.integrate2(alpha0, alpha1, |a| {
        let r = f.radius_r(a, beta);
        let (s, c) = (phi0 + a + beta).sin_cos();
        [r * c, r * s]
    })
}

/// Displacement along the beta-line `alpha` from `beta0` to `beta1`.
pub fn beta_step(f: &impl CurvatureField, rule: &GaussLegendre, phi0: f64, alpha: f64, beta0: f64, beta1: f64) -> [f64; 2] {
    rule.integrate2(beta0, beta1, |b| {
        let s_r = f.radius_s(alpha, b);
        let (s, c) = (phi0 + alpha + b).sin_cos();
        [s_r * s, -s_r * c]
    })
}

/// Marches the net along alpha first, then along each beta-line, and
/// checks the result against the opposite marching order.
pub fn build_net(f: &impl CurvatureField, spec: &NetSpec) -> Result<CharacteristicNet> {
    let (na, nb) = (spec.n_alpha, spec.n_beta);
    if na < 2 || nb < 2 {
        return Err(SlatError::InvalidInput(format!("net needs at least 2x2 nodes, got {na}x{nb}")));
    }
    if !spec.alpha_end.is_finite() || !spec.beta_end.is_finite() {
        return Err(SlatError::InvalidInput("net extents must be finite".into()));
    }
    let rule = GaussLegendre::new(spec.quad_points.max(1));
    let phi0 = spec.origin.phi;
    let idx = |i: usize, j: usize| i * nb + j;

    let mut alpha_first = vec![[0.0; 2]; na * nb];
    alpha_first[0] = [spec.origin.x, spec.origin.y];
    for i in 1..na {
        let d = finite(alpha_step(f, &rule, phi0, 0.0, spec.alpha(i - 1), spec.alpha(i)), i, 0)?;
        let p = alpha_first[idx(i - 1, 0)];
        alpha_first[idx(i, 0)] = [p[0] + d[0], p[1] + d[1]];
    }
    for i in 0..na {
        for j in 1..nb {
            let d = finite(beta_step(f, &rule, phi0, spec.alpha(i), spec.beta(j - 1), spec.beta(j)), i, j)?;
            let p = alpha_first[idx(i, j - 1)];
            alpha_first[idx(i, j)] = [p[0] + d[0], p[1] + d[1]];
        }
    }

    let mut beta_first = vec![[0.0; 2]; na * nb];
    beta_first[0] = alpha_first[0];
    for j in 1..nb {
        let d = finite(beta_step(f, &rule, phi0, 0.0, spec.beta(j - 1), spec.beta(j)), 0, j)?;
        let p = beta_first[idx(0, j - 1)];
        beta_first[idx(0, j)] = [p[0] + d[0], p[1] + d[1]];
    }
    for j in 0..nb {
        for i in 1..na {
            let d = finite(alpha_step(f, &rule, phi0, spec.beta(j), spec.alpha(i - 1), spec.alpha(i)), i, j)?;
            let p = beta_first[idx(i - 1, j)];
            beta_first[idx(i, j)] = [p[0] + d[0], p[1] + d[1]];
        }
    }

    let mut discrepancy: f64 = 0.0;
    let mut extent: f64 = 0.0;
    for (p, q) in alpha_first.iter().zip(&beta_first) {
        discrepancy = discrepancy.max((p[0] - q[0]).hypot(p[1] - q[1]));
        extent = extent.max((p[0] - spec.origin.x).hypot(p[1] - spec.origin.y));
    }
    let tolerance = spec.tolerance * extent.max(1.0);
    if discrepancy > tolerance {
        return Err(SlatError::Integration { discrepancy, tolerance });
    }

    let k = f.yield_stress();
    let mut nodes = Vec::with_capacity(na * nb);
    for i in 0..na {
        for j in 0..nb {
            let (alpha, beta) = (spec.alpha(i), spec.beta(j));
            let p = alpha_first[idx(i, j)];
            nodes.push(NetNode {
                alpha,
                beta,
                x: p[0],
                y: p[1],
                phi: phi0 + alpha + beta,
                sigma: f.sigma0() + 2.0 * k * (alpha - beta),
            });
        }
    }
    Ok(CharacteristicNet {
        n_alpha: na,
        n_beta: nb,
        origin: spec.origin,
        nodes,
        active: vec![true; na * nb],
        path_discrepancy: discrepancy,
    })
}

/// Worst deviation between finite-difference radii of curvature measured
/// on the net and the field values `|R|`, `|S|`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CurvatureReport {
    pub max_abs_alpha: f64,
    pub max_rel_alpha: f64,
    pub max_abs_beta: f64,
    pub max_rel_beta: f64,
}

impl CurvatureReport {
    pub fn max_rel(&self) -> f64 {
        self.max_rel_alpha.max(self.max_rel_beta)
    }

    pub fn max_abs(&self) -> f64 {
        self.max_abs_alpha.max(self.max_abs_beta)
    }
}

/// Radius of the curve through three equally spaced samples (central
/// differences).
fn fd_radius(p0: [f64; 2], p1: [f64; 2], p2: [f64; 2], h: f64) -> f64 {
    let d1 = [(p2[0] - p0[0]) / (2.0 * h), (p2[1] - p0[1]) / (2.0 * h)];
    let d2 = [(p2[0] - 2.0 * p1[0] + p0[0]) / (h * h), (p2[1] - 2.0 * p1[1] + p0[1]) / (h * h)];
    let speed = d1[0].hypot(d1[1]);
    speed.powi(3) / (d1[0] * d2[1] - d1[1] * d2[0]).abs()
}

pub fn net_curvature_check(net: &CharacteristicNet, f: &impl CurvatureField) -> CurvatureReport {
    let mut rep = CurvatureReport::default();
    let (na, nb) = (net.n_alpha, net.n_beta);
    if na >= 3 {
        for j in 0..nb {
            for i in 1..na - 1 {
                let h = net.node(i + 1, j).alpha - net.node(i, j).alpha;
                let n = net.node(i, j);
                let measured = fd_radius(net.xy(i - 1, j), net.xy(i, j), net.xy(i + 1, j), h);
                let exact = f.radius_r(n.alpha, n.beta).abs();
                let err = (measured - exact).abs();
                rep.max_abs_alpha = rep.max_abs_alpha.max(err);
                if exact > 0.0 {
                    rep.max_rel_alpha = rep.max_rel_alpha.max(err / exact);
                }
            }
        }
    }
    if nb >= 3 {
        for i in 0..na {
            for j in 1..nb - 1 {
                let h = net.node(i, j + 1).beta - net.node(i, j).beta;
                let n = net.node(i, j);
                let measured = fd_radius(net.xy(i, j - 1), net.xy(i, j), net.xy(i, j + 1), h);
                let exact = f.radius_s(n.alpha, n.beta).abs();
                let err = (measured - exact).abs();
                rep.max_abs_beta = rep.max_abs_beta.max(err);
                if exact > 0.0 {
                    rep.max_rel_beta = rep.max_rel_beta.max(err / exact);
                }
            }
        }
    }
    rep
}
