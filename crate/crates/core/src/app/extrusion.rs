//! Frictionless extrusion through a short wedge-shaped die.
//!
//! The field is the characteristic rectangle over two circular arcs of
//! radius `OA / sqrt(2)`: the alpha-arc centred at the die lip `A`, the
//! beta-arc centred at the die corner `O`. The characteristic origin is the
//! apex of the uniform-stress triangle on the die face, where the
//! alpha-line makes the angle `-(pi/4 + gamma)` with the axis. Coordinates
//! are reported relative to `O` with `x` along the extrusion axis.
//!
//! The mean-stress datum follows from zero axial force on the exit side:
//! the straight slip-line from `A` to the end of the initial alpha-line,
//! then the beta-line `alpha = alpha1` down to the axis point `E`. The
//! extrusion pressure is the axial force on the die face divided by the
//! exit half-height `H = -y_E`.

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_4, SQRT_2};

use crate::bvp::{solve_initial_char, CurvatureField, SlipLineField};
use crate::error::{Result, SlatError};
use crate::geometry::{alpha_step, beta_step, build_net, CharacteristicNet, NetSpec, Pose, StressState};
use crate::quadrature::GaussLegendre;
use crate::series::FactorialSeries;

const PANELS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtrusionParams {
    /// Die half-angle (radians).
    pub gamma: f64,
    pub alpha1: f64,
    pub beta1: f64,
    pub oa: f64,
    pub order: usize,
    pub k: f64,
    pub grid_alpha: usize,
    pub grid_beta: usize,
}

impl Default for ExtrusionParams {
    fn default() -> Self {
        Self {
            gamma: 10f64.to_radians(),
            alpha1: 30f64.to_radians(),
            beta1: -20f64.to_radians(),
            oa: 2.0,
            order: 5,
            k: 1.0,
            grid_alpha: 16,
            grid_beta: 16,
        }
    }
}

/// Stresses and pressures are normalized by `k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtrusionReport {
    pub x_e: f64,
    pub y_e: f64,
    pub h: f64,
    pub p_over_h: f64,
    pub p_b: f64,
    pub p_d: f64,
    pub sigma0: f64,
    /// Axial force through the entry side divided by `H`; equals
    /// `p_over_h` by overall equilibrium.
    pub entry_p_over_h: f64,
}

#[derive(Clone, Debug)]
pub struct ExtrusionSolution {
    pub report: ExtrusionReport,
    pub field: SlipLineField,
    pub net: CharacteristicNet,
}

fn right_normal(d: [f64; 2]) -> [f64; 2] {
    [d[1], -d[0]]
}

fn add(p: [f64; 2], q: [f64; 2]) -> [f64; 2] {
    [p[0] + q[0], p[1] + q[1]]
}

fn sub(p: [f64; 2], q: [f64; 2]) -> [f64; 2] {
    [p[0] - q[0], p[1] - q[1]]
}

struct Frame<'a> {
    field: &'a SlipLineField,
    rule: GaussLegendre,
    origin: Pose,
}

impl Frame<'_> {
    fn phi(&self, alpha: f64, beta: f64) -> f64 {
        self.origin.phi + alpha + beta
    }

    fn stress(&self, alpha: f64, beta: f64, sigma0: f64) -> StressState {
        let k = self.field.yield_stress();
        StressState::new(sigma0 + 2.0 * k * (alpha - beta), self.phi(alpha, beta), k)
    }

    /// Position of `(alpha, beta)`: along `beta = 0`, then along the beta-line.
    fn point(&self, alpha: f64, beta: f64) -> [f64; 2] {
        let mut p = [self.origin.x, self.origin.y];
        for i in 0..PANELS {
            let (a0, a1) = (alpha * i as f64 / PANELS as f64, alpha * (i + 1) as f64 / PANELS as f64);
            p = add(p, alpha_step(self.field, &self.rule, self.origin.phi, 0.0, a0, a1));
        }
        for j in 0..PANELS {
            let (b0, b1) = (beta * j as f64 / PANELS as f64, beta * (j + 1) as f64 / PANELS as f64);
            p = add(p, beta_step(self.field, &self.rule, self.origin.phi, alpha, b0, b1));
        }
        p
    }

    /// `(force at sigma0 = 0, integral of the normal)` along the beta-line
    /// `alpha` from `beta = 0` to `beta1`, with the right-hand normal.
    fn beta_line_force(&self, alpha: f64, beta1: f64) -> ([f64; 2], [f64; 2]) {
        let f = self.rule.composite2(0.0, beta1, PANELS, |b| {
            let s = self.field.radius_s(alpha, b);
            let phi = self.phi(alpha, b);
            // right normal of S (sin phi, -cos phi)
            let n = [-s * phi.cos(), -s * phi.sin()];
            self.stress(alpha, b, 0.0).traction(n)
        });
        let n = self.rule.composite2(0.0, beta1, PANELS, |b| {
            let s = self.field.radius_s(alpha, b);
            let phi = self.phi(alpha, b);
            [-s * phi.cos(), -s * phi.sin()]
        });
        (f, n)
    }

    /// Same as [`Frame::beta_line_force`] along the alpha-line `beta`.
    fn alpha_line_force(&self, beta: f64, alpha1: f64) -> ([f64; 2], [f64; 2]) {
        let f = self.rule.composite2(0.0, alpha1, PANELS, |a| {
            let r = self.field.radius_r(a, beta);
            let phi = self.phi(a, beta);
            let n = [r * phi.sin(), -r * phi.cos()];
            self.stress(a, beta, 0.0).traction(n)
        });
        let n = self.rule.composite2(0.0, alpha1, PANELS, |a| {
            let r = self.field.radius_r(a, beta);
            let phi = self.phi(a, beta);
            [r * phi.sin(), -r * phi.cos()]
        });
        (f, n)
    }
}

pub fn run_extrusion(params: &ExtrusionParams) -> Result<ExtrusionSolution> {
    let ExtrusionParams { gamma, alpha1, beta1, oa, order, k, .. } = *params;
    if !(0.0..FRAC_PI_4).contains(&gamma) {
        return Err(SlatError::InvalidInput(format!("die angle must lie in [0, 45) degrees, got {} degrees", gamma.to_degrees())));
    }
    if !(alpha1 >= 0.0 && beta1 <= 0.0) {
        return Err(SlatError::InvalidInput("extrusion needs alpha1 >= 0 and beta1 <= 0".into()));
    }
    if ((alpha1 + beta1) - gamma).abs() > 1e-9 {
        return Err(SlatError::InvalidInput(format!(
            "corner E lies on the axis only when alpha1 + beta1 = gamma; got {} + {} != {} degrees",
            alpha1.to_degrees(),
            beta1.to_degrees(),
            gamma.to_degrees()
        )));
    }
    if !(oa > 0.0) {
        return Err(SlatError::InvalidInput(format!("OA must be positive, got {oa}")));
    }
    let radius = oa / SQRT_2;
    let field = solve_initial_char(
        FactorialSeries::constant(radius, order),
        FactorialSeries::constant(-radius, order),
        0.0,
        k,
    )?;
    let phi0 = -(FRAC_PI_4 + gamma);
    let (sp, cp) = phi0.sin_cos();
    // in the local frame of the origin the beta-arc centre is (-radius, 0)
    // and the alpha-arc centre (the die lip) is (0, radius)
    let rot = |v: [f64; 2]| [cp * v[0] - sp * v[1], sp * v[0] + cp * v[1]];
    let q = rot([radius, 0.0]);
    let lip = rot([radius, radius]);
    let origin = Pose { x: q[0], y: q[1], phi: phi0 };
    let frame = Frame { field: &field, rule: GaussLegendre::new(10), origin };

    let e = frame.point(alpha1, beta1);
    if !(e[0].is_finite() && e[1].is_finite()) {
        return Err(SlatError::NonFinite { i: params.grid_alpha.saturating_sub(1), j: params.grid_beta.saturating_sub(1) });
    }
    let h = -e[1];
    if !(h > 0.0) {
        return Err(SlatError::Geometry(format!(
            "exit half-height is not positive (y_E = {}) for gamma = {}, alpha1 = {}, beta1 = {} degrees",
            e[1],
            gamma.to_degrees(),
            alpha1.to_degrees(),
            beta1.to_degrees()
        )));
    }

    // exit side: straight line A -> D, then the beta-line alpha = alpha1 to E
    let d = frame.point(alpha1, 0.0);
    let n_ad = right_normal(sub(d, lip));
    let (f_line, n_line) = frame.beta_line_force(alpha1, beta1);
    let f_exit0 = add(frame.stress(alpha1, 0.0, 0.0).traction(n_ad), f_line);
    let n_exit = add(n_ad, n_line);
    if n_exit[0].abs() < 1e-14 {
        return Err(SlatError::Geometry("exit boundary has no axial projection".into()));
    }
    let sigma0 = -f_exit0[0] / n_exit[0];
    let field = field.with_sigma0(sigma0);
    let frame = Frame { field: &field, rule: GaussLegendre::new(10), origin };

    // die face O -> A carries the uniform stress of the origin
    let die = frame.stress(0.0, 0.0, sigma0).traction(right_normal(lip));
    let p_over_h = die[0] / (k * h);

    // entry side: straight line O -> B, then the alpha-line beta = beta1 to E
    let b = frame.point(0.0, beta1);
    let (f_alpha, n_alpha) = frame.alpha_line_force(beta1, alpha1);
    let f_entry = add(
        frame.stress(0.0, beta1, sigma0).traction(right_normal(b)),
        [f_alpha[0] + sigma0 * n_alpha[0], f_alpha[1] + sigma0 * n_alpha[1]],
    );
    let entry_p_over_h = f_entry[0] / (k * h);

    let report = ExtrusionReport {
        x_e: e[0],
        y_e: e[1],
        h,
        p_over_h,
        p_b: -(sigma0 + 2.0 * k * (0.0 - beta1)) / k,
        p_d: -(sigma0 + 2.0 * k * alpha1) / k,
        sigma0: sigma0 / k,
        entry_p_over_h,
    };
    let spec = NetSpec::new(alpha1, beta1, params.grid_alpha, params.grid_beta, origin);
    let net = build_net(&field, &spec)?;
    Ok(ExtrusionSolution { report, field, net })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_values() {
        let sol = run_extrusion(&ExtrusionParams::default()).unwrap();
        let r = sol.report;
        assert!((r.x_e - 0.90648).abs() < 1e-4, "{r:?}");
        assert!((r.y_e + 2.28774).abs() < 1e-4, "{r:?}");
        assert!((r.h - 2.28774).abs() < 1e-4);
        assert!((r.p_over_h - 0.41164).abs() < 5e-4, "{r:?}");
    }

    #[test]
    fn equilibrium_cross_check() {
        let r = run_extrusion(&ExtrusionParams::default()).unwrap().report;
        assert!((r.p_over_h - r.entry_p_over_h).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn net_corner_matches_report() {
        let sol = run_extrusion(&ExtrusionParams::default()).unwrap();
        let n = sol.net.node(sol.net.n_alpha - 1, sol.net.n_beta - 1);
        assert!((n.x - sol.report.x_e).abs() < 1e-10);
        assert!((n.y - sol.report.y_e).abs() < 1e-10);
        // alpha-line direction at E is along -45 degrees
        assert!((n.phi + FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn pressures_from_mean_stress() {
        let r = run_extrusion(&ExtrusionParams::default()).unwrap().report;
        assert!((r.p_b - (-(r.sigma0) - 2.0 * 20f64.to_radians())).abs() < 1e-12);
        assert!((r.p_d - (-(r.sigma0) - 2.0 * 30f64.to_radians())).abs() < 1e-12);
    }

    #[test]
    fn degenerate_rectangle() {
        let params = ExtrusionParams { gamma: 0.0, alpha1: 0.0, beta1: 0.0, ..Default::default() };
        let r = run_extrusion(&params).unwrap().report;
        // no reduction: zero pressure up to rounding
        assert!(r.p_over_h.abs() < 1e-12, "{r:?}");
        assert!((r.h - 1.0).abs() < 1e-12);
    }

    #[test]
    fn off_axis_corner_rejected() {
        let params = ExtrusionParams { beta1: -10f64.to_radians(), ..Default::default() };
        assert!(matches!(run_extrusion(&params), Err(SlatError::InvalidInput(_))));
    }

    #[test]
    fn truncation_insensitive() {
        let r5 = run_extrusion(&ExtrusionParams::default()).unwrap().report;
        let r16 = run_extrusion(&ExtrusionParams { order: 16, ..Default::default() }).unwrap().report;
        assert!((r5.x_e - r16.x_e).abs() < 1e-5);
        assert!((r5.p_over_h - r16.p_over_h).abs() < 1e-5);
    }
}
