//! Boundary value problems reduced to the initial characteristic problem.
//!
//! A solved field is described by two rows: `a` for the curvature radius of
//! the initial alpha-line, `R(alpha, 0) = sum a_n alpha_n`, and `b` for the
//! initial beta-line, `S(0, beta) = sum b_n beta_n`. Inside the
//! characteristic rectangle
//!
//! ```text
//! R = sum ( a_n alpha_n + b_{n-1} beta_n) F(n+1; -alpha beta)
//! S = sum (-a_{n-1} alpha_n + b_n beta_n) F(n+1; -alpha beta)
//! ```
//!
//! with `a_{-1} = b_{-1} = 0`. Both radii satisfy `f_{alpha beta} + f = 0`
//! together with `S_alpha + R = 0` and `R_beta - S = 0`.

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, SQRT_2};

use crate::error::{Result, SlatError};
use crate::operators::{
    line_traces, match_boundary_coeffs, matrix_a, matrix_b, matrix_c, matrix_d, matrix_f, matrix_t,
    BoundaryConstraint, Orientation,
};
use crate::series::{hyp0f1_unchecked, FactorialSeries};

/// Anything that can report the two curvature radii and the stress datum.
///
/// `radius_s` is always in the [`Orientation::Direct`] convention, the one
/// in which `S_alpha + R = 0` and `R_beta - S = 0` hold.
pub trait CurvatureField {
    fn radius_r(&self, alpha: f64, beta: f64) -> f64;
    fn radius_s(&self, alpha: f64, beta: f64) -> f64;
    /// Mean stress at `alpha = beta = 0`.
    fn sigma0(&self) -> f64;
    /// Shear yield stress.
    fn yield_stress(&self) -> f64;
}

/// Solved initial characteristic problem.
///
/// The `b` row and [`SlipLineField::eval_s`] are quoted in the field's
/// [`Orientation`]; evaluation of `R` and of [`CurvatureField::radius_s`]
/// converts to the direct convention first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlipLineField {
    a: FactorialSeries,
    b: FactorialSeries,
    sigma0: f64,
    k: f64,
    #[serde(default = "direct")]
    orientation: Orientation,
}

fn direct() -> Orientation {
    Orientation::Direct
}

impl SlipLineField {
    pub fn a(&self) -> &FactorialSeries {
        &self.a
    }

    /// Row of the initial beta-line in the field's orientation.
    pub fn b(&self) -> &FactorialSeries {
        &self.b
    }

    /// Row of the initial beta-line in the direct convention.
    pub fn b_direct(&self) -> FactorialSeries {
        self.b.scaled(self.orientation.beta_sign())
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn sigma0(&self) -> f64 {
        self.sigma0
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// Number of stored terms (the longer of the two rows).
    pub fn order(&self) -> usize {
        self.a.order().max(self.b.order())
    }

    pub fn with_sigma0(mut self, sigma0: f64) -> Self {
        self.sigma0 = sigma0;
        self
    }

    /// Same field with `b` and `S` re-quoted in another orientation.
    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        let factor = self.orientation.beta_sign() * orientation.beta_sign();
        self.b = self.b.scaled(factor);
        self.orientation = orientation;
        self
    }

    fn b_direct_at(&self, n: usize) -> f64 {
        self.b.get(n) * self.orientation.beta_sign()
    }

    /// Hypergeometric form truncated after `order` terms of the outer sum.
    pub fn eval_r_truncated(&self, alpha: f64, beta: f64, order: usize) -> f64 {
        let z = -alpha * beta;
        let mut alpha_n = 1.0;
        let mut beta_n = 1.0;
        let mut sum = 0.0;
        for n in 0..order {
            if n > 0 {
                alpha_n *= alpha / n as f64;
                beta_n *= beta / n as f64;
            }
            let b_prev = if n > 0 { self.b_direct_at(n - 1) } else { 0.0 };
            let coeff = self.a.get(n) * alpha_n + b_prev * beta_n;
            if coeff != 0.0 {
                sum += coeff * hyp0f1_unchecked(n, z);
            }
        }
        sum
    }

    /// Direct-convention `S`, truncated like [`SlipLineField::eval_r_truncated`].
    pub fn eval_s_direct_truncated(&self, alpha: f64, beta: f64, order: usize) -> f64 {
        let z = -alpha * beta;
        let mut alpha_n = 1.0;
        let mut beta_n = 1.0;
        let mut sum = 0.0;
        for n in 0..order {
            if n > 0 {
                alpha_n *= alpha / n as f64;
                beta_n *= beta / n as f64;
            }
            let a_prev = if n > 0 { self.a.get(n - 1) } else { 0.0 };
            let coeff = -a_prev * alpha_n + self.b_direct_at(n) * beta_n;
            if coeff != 0.0 {
                sum += coeff * hyp0f1_unchecked(n, z);
            }
        }
        sum
    }

    pub fn eval_s_truncated(&self, alpha: f64, beta: f64, order: usize) -> f64 {
        self.orientation.beta_sign() * self.eval_s_direct_truncated(alpha, beta, order)
    }

    /// `R(alpha, beta)` from the hypergeometric form using every stored
    /// coefficient.
    pub fn eval_r(&self, alpha: f64, beta: f64) -> f64 {
        self.eval_r_truncated(alpha, beta, self.order() + 1)
    }

    /// `S(alpha, beta)` in the field's orientation.
    pub fn eval_s(&self, alpha: f64, beta: f64) -> f64 {
        self.eval_s_truncated(alpha, beta, self.order() + 1)
    }

    /// `R = (a A(beta) + b B(beta)) [alpha]` with `N x N` matrices.
    pub fn eval_r_matrix(&self, alpha: f64, beta: f64, order: usize) -> Result<f64> {
        let b = self.b_direct();
        let row = &matrix_a(beta, order)?.apply_row(&self.a) + &matrix_b(beta, order)?.apply_row(&b);
        Ok(row.eval(alpha))
    }

    /// `S = (-a B(alpha) + b A(alpha)) [beta]`, in the field's orientation.
    pub fn eval_s_matrix(&self, alpha: f64, beta: f64, order: usize) -> Result<f64> {
        let b = self.b_direct();
        let row = &matrix_a(alpha, order)?.apply_row(&b) - &matrix_b(alpha, order)?.apply_row(&self.a);
        Ok(self.orientation.beta_sign() * row.eval(beta))
    }

    /// `R(0, beta) = a_0 + sum b_n beta_{n+1}`.
    pub fn edge_r(&self, beta: f64) -> f64 {
        self.a.get(0) + self.b_direct().integrated().eval(beta)
    }

    /// `S(alpha, 0) = b_0 - sum a_n alpha_{n+1}`, in the field's orientation.
    pub fn edge_s(&self, alpha: f64) -> f64 {
        self.orientation.beta_sign() * (self.b_direct_at(0) - self.a.integrated().eval(alpha))
    }
}

impl CurvatureField for SlipLineField {
    fn radius_r(&self, alpha: f64, beta: f64) -> f64 {
        self.eval_r(alpha, beta)
    }
    fn radius_s(&self, alpha: f64, beta: f64) -> f64 {
        self.eval_s_direct_truncated(alpha, beta, self.order() + 1)
    }
    fn sigma0(&self) -> f64 {
        self.sigma0
    }
    fn yield_stress(&self) -> f64 {
        self.k
    }
}

/// Matrix-form view of a field at a fixed truncation.
#[derive(Clone, Copy, Debug)]
pub struct MatrixForm<'a> {
    pub field: &'a SlipLineField,
    pub order: usize,
}

impl CurvatureField for MatrixForm<'_> {
    fn radius_r(&self, alpha: f64, beta: f64) -> f64 {
        self.field.eval_r_matrix(alpha, beta, self.order).unwrap_or(f64::NAN)
    }
    fn radius_s(&self, alpha: f64, beta: f64) -> f64 {
        let s = self.field.eval_s_matrix(alpha, beta, self.order).unwrap_or(f64::NAN);
        self.field.orientation.beta_sign() * s
    }
    fn sigma0(&self) -> f64 {
        self.field.sigma0
    }
    fn yield_stress(&self) -> f64 {
        self.field.k
    }
}

fn check_material(sigma0: f64, k: f64) -> Result<()> {
    if !sigma0.is_finite() {
        return Err(SlatError::InvalidInput(format!("sigma0 must be finite, got {sigma0}")));
    }
    if !(k > 0.0 && k.is_finite()) {
        return Err(SlatError::InvalidInput(format!("shear yield stress must be positive, got {k}")));
    }
    Ok(())
}

/// Field in the characteristic rectangle spanned by two slip-line arcs.
pub fn solve_initial_char(a: FactorialSeries, b: FactorialSeries, sigma0: f64, k: f64) -> Result<SlipLineField> {
    check_material(sigma0, k)?;
    if !a.is_finite() || !b.is_finite() {
        return Err(SlatError::InvalidInput("coefficient rows must be finite".into()));
    }
    let order = a.order().max(b.order()).max(1);
    Ok(SlipLineField { a: a.truncated(order), b: b.truncated(order), sigma0, k, orientation: Orientation::Direct })
}

/// Which initial line of a centred fan carries the data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FanLine {
    Alpha,
    Beta,
}

/// Degenerate rectangle: the other initial line has shrunk to a point.
pub fn solve_fan(nonzero: FactorialSeries, line: FanLine, sigma0: f64, k: f64) -> Result<SlipLineField> {
    let zero = FactorialSeries::zeros(nonzero.order());
    match line {
        FanLine::Alpha => solve_initial_char(nonzero, zero, sigma0, k),
        FanLine::Beta => solve_initial_char(zero, nonzero, sigma0, k),
    }
}

/// Constant-traction Cauchy data on a curve with curvature radius
/// `r(2 alpha + eta)` given as a factorial row in `alpha`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CauchyBoundary {
    pub r: FactorialSeries,
    pub eta: f64,
    pub sigma_n: f64,
    pub tau_n: f64,
    pub orientation: Orientation,
}

impl CauchyBoundary {
    /// Derives `eta = pi/2 - acos(tau_n / k) / 2` from the tractions.
    pub fn from_tractions(r: FactorialSeries, sigma_n: f64, tau_n: f64, k: f64) -> Result<Self> {
        let eta = contact_angle(tau_n, k)?;
        Ok(Self { r, eta, sigma_n, tau_n, orientation: Orientation::default() })
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }
}

/// Contact angle for a constant shear traction `tau_n` (Prandtl law
/// `tau_n = mu k`).
pub fn contact_angle(tau_n: f64, k: f64) -> Result<f64> {
    if !(k > 0.0) {
        return Err(SlatError::InvalidInput(format!("shear yield stress must be positive, got {k}")));
    }
    if !tau_n.is_finite() || tau_n.abs() > k {
        return Err(SlatError::YieldViolation { tau: tau_n.abs(), k });
    }
    let eta = FRAC_PI_2 - 0.5 * (tau_n / k).acos();
    if eta <= 0.0 {
        return Err(SlatError::Domain(format!("tau_n = {tau_n} gives a contact angle of zero")));
    }
    Ok(eta)
}

/// Cauchy problem with constant tractions: `a = 2 r C`, `b = 2 r D`.
///
/// `C` and `D` act on the ordinary Taylor coefficients of `r`. The field
/// is quoted in the boundary's orientation, so the default
/// [`Orientation::Reflected`] reports `b = -2 r D`.
pub fn solve_cauchy_const(bnd: &CauchyBoundary, sigma0: f64, k: f64) -> Result<SlipLineField> {
    check_material(sigma0, k)?;
    if bnd.tau_n.abs() > k {
        return Err(SlatError::YieldViolation { tau: bnd.tau_n.abs(), k });
    }
    if !(bnd.eta > 0.0 && bnd.eta <= FRAC_PI_2) {
        return Err(SlatError::Domain(format!("eta must lie in (0, pi/2], got {}", bnd.eta)));
    }
    let order = bnd.r.order().max(1);
    let (a, b) = if bnd.eta < FRAC_PI_2 {
        let taylor = FactorialSeries::new(bnd.r.truncated(order).to_taylor());
        let a = matrix_c(bnd.eta, order)?.apply_row(&taylor).scaled(2.0);
        let b = matrix_d(bnd.eta, order)?.apply_row(&taylor).scaled(2.0);
        (a, b)
    } else {
        let constraint = BoundaryConstraint::CauchyConst { eta: bnd.eta, orientation: Orientation::Direct };
        let rows = match_boundary_coeffs(&constraint, &bnd.r, order)?;
        (rows.a, rows.b)
    };
    Ok(solve_initial_char(a, b, sigma0, k)?.with_orientation(bnd.orientation))
}

/// Shape of a stress-free boundary found from its adjacent alpha-line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FreeSurface {
    /// Row of `r(2 alpha + pi/4) = R(alpha, alpha) / sqrt(2)`.
    pub r: FactorialSeries,
}

impl FreeSurface {
    pub fn radius_at(&self, alpha: f64) -> f64 {
        self.r.eval(alpha)
    }

    /// `(alpha, gamma - gamma_0, r)` triples at `samples` evenly spaced
    /// points on `[0, alpha_end]`.
    pub fn sample(&self, alpha_end: f64, samples: usize) -> Vec<(f64, f64, f64)> {
        let samples = samples.max(2);
        (0..samples)
            .map(|i| {
                let alpha = alpha_end * i as f64 / (samples - 1) as f64;
                (alpha, 2.0 * alpha, self.radius_at(alpha))
            })
            .collect()
    }
}

/// Stress-free surface: `b = a F`, `r = R(alpha, alpha) / sqrt(2)`.
pub fn solve_free_surface(a: FactorialSeries, sigma0: f64, k: f64) -> Result<(SlipLineField, FreeSurface)> {
    let order = a.order().max(1);
    let b = matrix_f(order)?.apply_row(&a);
    let field = solve_initial_char(a, b, sigma0, k)?;
    let (r_diag, _) = line_traces(field.a(), field.b(), 1.0, order);
    Ok((field, FreeSurface { r: r_diag.scaled(1.0 / SQRT_2) }))
}

/// Straight contact line through the origin along the alpha-line
/// (`beta = -alpha` on the contact).
///
/// `b = a T(eta)` for `eta < pi/2`; the perfectly rough contact uses
/// `b_n = (-1)^n a_n`.
pub fn solve_mixed_straight(a: FactorialSeries, eta: f64, sigma0: f64, k: f64) -> Result<SlipLineField> {
    if !(eta > 0.0 && eta <= FRAC_PI_2) {
        return Err(SlatError::Domain(format!("eta must lie in (0, pi/2], got {eta}")));
    }
    let order = a.order().max(1);
    let b = if eta == FRAC_PI_2 { a.reflected() } else { matrix_t(eta, order)?.apply_row(&a) };
    solve_initial_char(a, b, sigma0, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6, FRAC_PI_3};

    fn hyp(n: usize, z: f64) -> f64 {
        crate::series::hyp0f1(n, z).unwrap()
    }

    #[test]
    fn two_circular_arcs_closed_form() {
        let (a0, b0) = (1.3, -0.7);
        let f = solve_initial_char(FactorialSeries::constant(a0, 6), FactorialSeries::constant(b0, 6), 0.0, 1.0).unwrap();
        for &(al, be) in &[(0.2, 0.4), (0.5, -0.3), (-0.1, 0.6)] {
            let z = -al * be;
            let r = a0 * hyp(0, z) + b0 * be * hyp(1, z);
            let s = b0 * hyp(0, z) - a0 * al * hyp(1, z);
            assert!((f.eval_r(al, be) - r).abs() < 1e-14);
            assert!((f.eval_s(al, be) - s).abs() < 1e-14);
        }
    }

    #[test]
    fn zero_field() {
        let f = solve_initial_char(FactorialSeries::zeros(4), FactorialSeries::zeros(4), 0.0, 1.0).unwrap();
        assert_eq!(f.eval_r(0.3, 0.2), 0.0);
        assert_eq!(f.eval_s(0.3, 0.2), 0.0);
    }

    #[test]
    fn initial_lines_reproduce_rows() {
        let a = FactorialSeries::new(vec![0.4, -0.2, 0.9, 0.3]);
        let b = FactorialSeries::new(vec![-0.5, 0.1, 0.6, -0.8]);
        let f = solve_initial_char(a.clone(), b.clone(), 0.0, 1.0).unwrap();
        for &t in &[-0.3, 0.1, 0.45] {
            assert!((f.eval_r(t, 0.0) - a.eval(t)).abs() < 1e-15);
            assert!((f.eval_s(0.0, t) - b.eval(t)).abs() < 1e-15);
            assert!((f.eval_r(0.0, t) - f.edge_r(t)).abs() < 1e-15);
            assert!((f.eval_s(t, 0.0) - f.edge_s(t)).abs() < 1e-15);
        }
    }

    #[test]
    fn fan_matches_remark() {
        let f = solve_fan(FactorialSeries::constant(1.0, 5), FanLine::Alpha, 0.0, 1.0).unwrap();
        let (al, be) = (0.3, 0.5);
        assert!((f.eval_r(al, be) - hyp(0, -al * be)).abs() < 1e-15);
        assert!((f.eval_s(al, be) + al * hyp(1, -al * be)).abs() < 1e-15);
        let g = solve_fan(FactorialSeries::zeros(3), FanLine::Beta, 0.0, 1.0).unwrap();
        assert_eq!(g.eval_r(0.2, 0.2), 0.0);
    }

    #[test]
    fn log_spiral_cauchy() {
        let bnd = CauchyBoundary::from_tractions(FactorialSeries::constant(1.0, 20), -1.0, 0.0, 1.0).unwrap();
        assert!((bnd.eta - FRAC_PI_4).abs() < 1e-15);
        let f = solve_cauchy_const(&bnd, 0.0, 1.0).unwrap();
        for n in 0..20 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((f.a().get(n) - SQRT_2).abs() < 1e-13);
            assert!((f.b().get(n) - sign * SQRT_2).abs() < 1e-13);
        }
        for i in 0..=10 {
            let al = 0.05 * i as f64;
            assert!((f.eval_r(al, 0.0) - SQRT_2 * al.exp()).abs() < 1e-10);
            assert!((f.eval_s(0.0, al) - SQRT_2 * (-al).exp()).abs() < 1e-10);
        }
    }

    #[test]
    fn cauchy_leading_order() {
        for &eta in &[0.3, FRAC_PI_3, 1.2] {
            let r = FactorialSeries::constant(0.8, 8);
            let direct = CauchyBoundary { r: r.clone(), eta, sigma_n: 0.0, tau_n: 0.0, orientation: Orientation::Direct };
            let f = solve_cauchy_const(&direct, 0.0, 1.0).unwrap();
            assert!((f.a().get(0) - 1.6 * eta.cos()).abs() < 1e-14);
            assert!((f.b().get(0) + 1.6 * eta.sin()).abs() < 1e-14);
            let g = solve_cauchy_const(&direct.clone().with_orientation(Orientation::Reflected), 0.0, 1.0).unwrap();
            assert!((g.b().get(0) - 1.6 * eta.sin()).abs() < 1e-14);
        }
    }

    #[test]
    fn cauchy_diagonal_identity() {
        let r = FactorialSeries::new(vec![1.0, 0.3, -0.4, 0.2, 0.1, -0.05, 0.02, 0.01, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let eta = FRAC_PI_3;
        for orientation in [Orientation::Direct, Orientation::Reflected] {
            let bnd = CauchyBoundary { r: r.clone(), eta, sigma_n: 0.0, tau_n: 0.0, orientation };
            let f = solve_cauchy_const(&bnd, 0.0, 1.0).unwrap();
            for i in 0..=8 {
                let al = 0.05 * i as f64;
                let target = 2.0 * r.eval(al);
                assert!((f.eval_r(al, al) / eta.cos() - target).abs() < 1e-10);
                let s_side = f.eval_s(al, al) / eta.sin() * orientation.s_sign();
                assert!((s_side - target).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn rough_cauchy_uses_matcher() {
        let bnd = CauchyBoundary::from_tractions(FactorialSeries::constant(1.0, 6), 0.0, 1.0, 1.0).unwrap();
        assert_eq!(bnd.eta, FRAC_PI_2);
        let f = solve_cauchy_const(&bnd, 0.0, 1.0).unwrap();
        assert!(f.eval_r(0.2, 0.2).abs() < 1e-12);
    }

    #[test]
    fn yield_violation() {
        let err = CauchyBoundary::from_tractions(FactorialSeries::constant(1.0, 3), 0.0, 1.5, 1.0).unwrap_err();
        assert!(matches!(err, SlatError::YieldViolation { .. }));
        let bnd = CauchyBoundary { r: FactorialSeries::constant(1.0, 3), eta: 0.5, sigma_n: 0.0, tau_n: 2.0, orientation: Orientation::Direct };
        assert!(matches!(solve_cauchy_const(&bnd, 0.0, 1.0), Err(SlatError::YieldViolation { .. })));
    }

    #[test]
    fn free_surface_identity() {
        let a = FactorialSeries::new(vec![1.0, 0.5, -0.3, 0.8, -0.2, 0.4, 0.1, -0.6, 0.3, 0.2, -0.1, 0.05, 0.0, 0.0, 0.0, 0.0]);
        let (f, surface) = solve_free_surface(a, 0.0, 1.0).unwrap();
        for i in 0..=8 {
            let al = 0.05 * i as f64;
            assert!((f.eval_r(al, al) + f.eval_s(al, al)).abs() < 1e-10);
            assert!((surface.radius_at(al) - f.eval_r(al, al) / SQRT_2).abs() < 1e-10);
        }
        let rows = match_boundary_coeffs(&BoundaryConstraint::FreeSurface, f.a(), 16).unwrap();
        for n in 0..16 {
            assert!((rows.b.get(n) - f.b().get(n)).abs() < 1e-10 * (1.0 + f.b().get(n).abs()));
        }
    }

    #[test]
    fn free_surface_unit_row() {
        let (f, surface) = solve_free_surface(FactorialSeries::constant(1.0, 4), 0.0, 1.0).unwrap();
        assert_eq!(f.b().get(0), -1.0);
        assert!((surface.radius_at(0.0) - 1.0 / SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn mixed_frictionless_alternates() {
        let a = FactorialSeries::new(vec![0.7, -0.1, 0.4, 0.9]);
        let f = solve_mixed_straight(a.clone(), FRAC_PI_4, 0.0, 1.0).unwrap();
        for n in 0..4 {
            assert!((f.b().get(n) - a.reflected().get(n)).abs() < 1e-15);
        }
    }

    #[test]
    fn mixed_first_row_of_t() {
        let f = solve_mixed_straight(FactorialSeries::constant(1.0, 5), FRAC_PI_3, 0.0, 1.0).unwrap();
        let t = FRAC_PI_3.tan();
        let expect = [t, t * t - 1.0, t * (t * t - 1.0), t * t * (t * t - 1.0), t.powi(3) * (t * t - 1.0)];
        for (n, e) in expect.iter().enumerate() {
            assert!((f.b().get(n) - e).abs() < 1e-12);
        }
    }

    #[test]
    fn mixed_contact_identity() {
        // the branch satisfied by the printed T: R sin(eta) = S cos(eta) on beta = -alpha
        let a = FactorialSeries::new(vec![0.9, -0.4, 0.6, 0.2, -0.7, 0.3, 0.5, -0.2, 0.1, 0.4, -0.3, 0.2, 0.1, -0.1, 0.05, 0.02]);
        let eta = FRAC_PI_6;
        let f = solve_mixed_straight(a, eta, 0.0, 1.0).unwrap();
        for i in 0..=6 {
            let al = 0.05 * i as f64;
            let res = f.eval_r(al, -al) * eta.sin() - f.eval_s(al, -al) * eta.cos();
            assert!(res.abs() < 1e-10, "alpha={al} residual={res}");
        }
    }

    #[test]
    fn mixed_contact_reflected_quote() {
        let a = FactorialSeries::new(vec![0.9, -0.4, 0.6, 0.2, -0.7, 0.3, 0.5, -0.2, 0.1, 0.4, -0.3, 0.2, 0.1, -0.1, 0.05, 0.02]);
        let eta = FRAC_PI_3;
        let direct = solve_mixed_straight(a, eta, 0.0, 1.0).unwrap();
        let f = direct.clone().with_orientation(Orientation::Reflected);
        for n in 0..16 {
            assert_eq!(f.b().get(n), -direct.b().get(n));
        }
        for i in 0..=6 {
            let al = 0.05 * i as f64;
            let res = f.eval_r(al, -al) * eta.sin() + f.eval_s(al, -al) * eta.cos();
            assert!(res.abs() < 1e-10, "alpha={al} residual={res}");
            assert_eq!(f.radius_s(al, -al), direct.radius_s(al, -al));
        }
    }

    #[test]
    fn mixed_domain_errors() {
        let a = FactorialSeries::constant(1.0, 3);
        assert!(solve_mixed_straight(a.clone(), 0.0, 0.0, 1.0).is_err());
        assert!(solve_mixed_straight(a.clone(), 1.6, 0.0, 1.0).is_err());
        let rough = solve_mixed_straight(a, FRAC_PI_2, 0.0, 1.0).unwrap();
        assert_eq!(rough.b().coeffs(), &[1.0, -0.0, 0.0]);
    }

    #[test]
    fn matrix_form_matches_hypergeometric() {
        let a = FactorialSeries::new(vec![0.5, -0.9, 0.3, 0.7, -0.2, 0.1, 0.8, -0.6, 0.4, 0.2, -0.3, 0.9, 0.1, -0.5, 0.6, 0.3]);
        let b = FactorialSeries::new(vec![-0.4, 0.2, 0.8, -0.1, 0.5, -0.7, 0.3, 0.6, -0.9, 0.1, 0.2, -0.4, 0.7, 0.5, -0.3, 0.8]);
        let f = solve_initial_char(a, b, 0.0, 1.0).unwrap();
        for &(al, be) in &[(0.4, -0.3), (-0.5, 0.5), (0.1, 0.2)] {
            assert!((f.eval_r(al, be) - f.eval_r_matrix(al, be, 16).unwrap()).abs() < 1e-12);
            assert!((f.eval_s(al, be) - f.eval_s_matrix(al, be, 16).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_material() {
        assert!(solve_initial_char(FactorialSeries::zeros(1), FactorialSeries::zeros(1), 0.0, 0.0).is_err());
        assert!(solve_initial_char(FactorialSeries::new(vec![f64::NAN]), FactorialSeries::zeros(1), 0.0, 1.0).is_err());
    }
}
