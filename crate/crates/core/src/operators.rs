//! Truncated matrix operators acting on factorial-normalized rows, and the
//! order-by-order boundary matcher that re-derives them.
//!
//! Rows are multiplied from the left: `b = a M` means `b_j = sum_i a_i M_ij`.
//!
//! Orientation: with `eta = gamma - phi` (angle from the alpha-line to the
//! boundary tangent, both traversed with increasing alpha) the boundary
//! identities are
//!
//! * constant-traction Cauchy curve (`alpha = beta`):
//!   `R(a,a) = 2 cos(eta) r(a)`, `S(a,a) = -2 sin(eta) r(a)`;
//! * stress-free surface (`eta = pi/4`): `R(a,a) + S(a,a) = 0`;
//! * straight contact (`beta = -alpha`): `R(a,-a) sin(eta) = S(a,-a) cos(eta)`.
//!
//! The C, D, F and T matrices all follow these identities.
//!
//! [`Orientation`] only changes how the beta-line row is reported: the
//! [`Orientation::Reflected`] convention counts the beta-line radius with
//! the opposite sign, so that `b` and `S` are quoted as `-b`, `-S` of the
//! identities above.

use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use crate::error::{Result, SlatError};
use crate::series::FactorialSeries;

const PIVOT_TOL: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OperatorKind {
    A,
    B,
    C,
    D,
    F,
    T,
    Product,
}

/// Sign convention for the beta-line radius `S` and its row `b`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// `S` as it enters `S_alpha + R = 0`, `R_beta - S = 0`; `b = 2 r D`.
    Direct,
    /// `S` counted positive for the circular-hole log spirals, so that the
    /// hole gives `b = sqrt(2) (1, -1, 1, ...)`; `b = -2 r D`.
    #[default]
    Reflected,
}

impl Orientation {
    /// Sign `s` in `S(a,a) = s * 2 sin(eta) r(a)` on a Cauchy curve, in the
    /// reported convention.
    pub fn s_sign(self) -> f64 {
        match self {
            Orientation::Direct => -1.0,
            Orientation::Reflected => 1.0,
        }
    }

    /// Factor taking a reported `b` row (or `S` value) to the
    /// [`Orientation::Direct`] convention and back.
    pub fn beta_sign(self) -> f64 {
        match self {
            Orientation::Direct => 1.0,
            Orientation::Reflected => -1.0,
        }
    }
}

/// Dense `N x N` operator with its kind and scalar parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    kind: OperatorKind,
    parameter: Option<f64>,
    dim: usize,
    entries: Vec<f64>,
}

impl OperatorMatrix {
    fn from_fn(kind: OperatorKind, parameter: Option<f64>, dim: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self { kind, parameter, dim, entries }
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn parameter(&self) -> Option<f64> {
        self.parameter
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    /// Row-vector product `row * M`; the row is truncated or zero-padded to
    /// the matrix dimension.
    pub fn apply_row(&self, row: &FactorialSeries) -> FactorialSeries {
        let mut out = vec![0.0; self.dim];
        for i in 0..self.dim {
            let ri = row.get(i);
            if ri == 0.0 {
                continue;
            }
            for (o, m) in out.iter_mut().zip(self.row(i)) {
                *o += ri * m;
            }
        }
        FactorialSeries::new(out)
    }

    /// Column-vector product `M * v`.
    pub fn apply_column(&self, v: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(m, x)| m * x).sum())
            .collect()
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.dim != other.dim {
            return Err(SlatError::InvalidInput(format!(
                "dimension mismatch {} vs {}",
                self.dim, other.dim
            )));
        }
        let n = self.dim;
        Ok(Self::from_fn(OperatorKind::Product, None, n, |i, j| {
            (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum()
        }))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == 0.0))
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        return Err(SlatError::InvalidInput("truncation order must be at least 1".into()));
    }
    Ok(())
}

fn check_open_eta(eta: f64) -> Result<()> {
    if !(eta > 0.0 && eta < FRAC_PI_2) {
        return Err(SlatError::Domain(format!("eta must lie in (0, pi/2), got {eta}")));
    }
    Ok(())
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `A(t)`: upper-triangular Toeplitz, `A_ij = (-t)^(j-i) / (j-i)!`.
pub fn matrix_a(t: f64, n: usize) -> Result<OperatorMatrix> {
    check_dim(n)?;
    Ok(OperatorMatrix::from_fn(OperatorKind::A, Some(t), n, |i, j| {
        if j < i {
            0.0
        } else {
            (-t).powi((j - i) as i32) / factorial(j - i)
        }
    }))
}

/// `B(t)`: signed Hankel, `B_ij = (-1)^j t^(i+j+1) / (i+j+1)!`.
pub fn matrix_b(t: f64, n: usize) -> Result<OperatorMatrix> {
    check_dim(n)?;
    Ok(OperatorMatrix::from_fn(OperatorKind::B, Some(t), n, |i, j| {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sign * t.powi((i + j + 1) as i32) / factorial(i + j + 1)
    }))
}

/// `C(eta)` in the printed convention: it acts on the ordinary Taylor
/// coefficients of `r(2 alpha + eta)` and yields `a / 2`.
///
/// With `d = j - i` and `h = d / 2` (rounded down),
/// `C_ij = (i + h)! / h!` times `cos(eta)` for even `d` and `sin(eta)` for
/// odd `d`. This is the closed form of the rows produced by
/// [`match_boundary_coeffs`] for unit Taylor inputs.
pub fn matrix_c(eta: f64, n: usize) -> Result<OperatorMatrix> {
    check_dim(n)?;
    check_open_eta(eta)?;
    let (s, c) = eta.sin_cos();
    Ok(cauchy_pattern(OperatorKind::C, eta, n, c, s))
}

/// `D(eta)`, companion of [`matrix_c`] yielding `b / 2` in the
/// [`Orientation::Direct`] convention: `-sin(eta)` for even `d`,
/// `cos(eta)` for odd `d`.
pub fn matrix_d(eta: f64, n: usize) -> Result<OperatorMatrix> {
    check_dim(n)?;
    check_open_eta(eta)?;
    let (s, c) = eta.sin_cos();
    Ok(cauchy_pattern(OperatorKind::D, eta, n, -s, c))
}

fn cauchy_pattern(kind: OperatorKind, eta: f64, n: usize, even: f64, odd: f64) -> OperatorMatrix {
    OperatorMatrix::from_fn(kind, Some(eta), n, |i, j| {
        if j < i {
            return 0.0;
        }
        let d = j - i;
        let h = d / 2;
        let mag: f64 = (h + 1..=i + h).map(|k| k as f64).product();
        mag * if d % 2 == 0 { even } else { odd }
    })
}

/// `F`: `f_ii = -1`, `f_ij = 2 (-1)^(i+j+1)` above the diagonal.
pub fn matrix_f(n: usize) -> Result<OperatorMatrix> {
    check_dim(n)?;
    Ok(OperatorMatrix::from_fn(OperatorKind::F, None, n, |i, j| {
        if j < i {
            0.0
        } else if j == i {
            -1.0
        } else if (i + j + 1) % 2 == 0 {
            2.0
        } else {
            -2.0
        }
    }))
}

/// `T(eta)` for a straight contact line with constant friction.
///
/// `t_ii = (-1)^i tan(eta)`, `t_ij = (-1)^i tan(eta)^(j-i-1) (tan^2(eta) - 1)`
/// for `j > i`. The perfectly rough limit `eta = pi/2` has no matrix; see
/// [`crate::bvp::solve_mixed_straight`].
pub fn matrix_t(eta: f64, n: usize) -> Result<OperatorMatrix> {
    check_dim(n)?;
    if eta == FRAC_PI_2 {
        return Err(SlatError::Domain(
            "T is singular at eta = pi/2; use the perfectly rough rule b_n = (-1)^n a_n".into(),
        ));
    }
    check_open_eta(eta)?;
    let tan = eta.tan();
    Ok(OperatorMatrix::from_fn(OperatorKind::T, Some(eta), n, |i, j| {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        if j < i {
            0.0
        } else if j == i {
            sign * tan
        } else {
            sign * tan.powi((j - i - 1) as i32) * (tan * tan - 1.0)
        }
    }))
}

/// Boundary identity to be matched power by power in `alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BoundaryConstraint {
    /// Constant tractions on the curve `alpha = beta`; the known row is the
    /// curvature radius `r(2 alpha + eta)`, both `a` and `b` are unknown;
    /// `b` is returned in the given convention.
    CauchyConst { eta: f64, orientation: Orientation },
    /// Stress-free surface; `a` is known, `b` unknown.
    FreeSurface,
    /// Straight contact line `beta = -alpha`; `a` is known, `b` unknown.
    MixedStraight { eta: f64 },
}

/// Coefficient rows of the equivalent initial characteristic problem.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InitialRows {
    pub a: FactorialSeries,
    pub b: FactorialSeries,
}

/// Weights of `a_n` and `b_n` in the `alpha^m / m!` coefficient of
/// `R(alpha, lambda alpha)` and `S(alpha, lambda alpha)`.
#[derive(Clone, Copy, Debug, Default)]
struct LineWeights {
    ra: f64,
    rb: f64,
    sa: f64,
    sb: f64,
}

fn signed_pow(base: f64, exp: usize) -> f64 {
    if exp % 2 == 0 {
        1.0
    } else {
        base
    }
}

fn line_weights(m: usize, n: usize, lambda: f64) -> LineWeights {
    let mut w = LineWeights::default();
    if m >= n && (m - n) % 2 == 0 {
        let k = (m - n) / 2;
        let binom = binomial(m, k);
        w.ra = signed_pow(-lambda, k) * binom;
        w.sb = signed_pow(lambda, n + k) * signed_pow(-1.0, k) * binom;
    }
    if m > n && (m - n - 1) % 2 == 0 {
        let k = (m - n - 1) / 2;
        let binom = binomial(m, k);
        w.rb = signed_pow(lambda, n + k + 1) * signed_pow(-1.0, k) * binom;
        w.sa = -signed_pow(-lambda, k) * binom;
    }
    w
}

/// Line traces `(R_m, S_m)` of known rows, restricted to orders `n < upto`
/// for `b` (the `a` row is used in full through order `m`).
fn partial_traces(m: usize, a: &[f64], b: &[f64], b_upto: usize, lambda: f64) -> (f64, f64) {
    let mut r = 0.0;
    let mut s = 0.0;
    for n in 0..=m {
        let w = line_weights(m, n, lambda);
        let an = a.get(n).copied().unwrap_or(0.0);
        let bn = if n < b_upto { b.get(n).copied().unwrap_or(0.0) } else { 0.0 };
        r += w.ra * an + w.rb * bn;
        s += w.sa * an + w.sb * bn;
    }
    (r, s)
}

/// Rows of `R(alpha, lambda alpha)` and `S(alpha, lambda alpha)` through
/// order `order - 1`, for `lambda = 1` (diagonal) or `lambda = -1`.
pub fn line_traces(
    a: &FactorialSeries,
    b: &FactorialSeries,
    lambda: f64,
    order: usize,
) -> (FactorialSeries, FactorialSeries) {
    let a = a.truncated(order);
    let b = b.truncated(order);
    let mut r = Vec::with_capacity(order);
    let mut s = Vec::with_capacity(order);
    for m in 0..order {
        let (rm, sm) = partial_traces(m, a.coeffs(), b.coeffs(), order, lambda);
        r.push(rm);
        s.push(sm);
    }
    (FactorialSeries::new(r), FactorialSeries::new(s))
}

/// Solves a boundary identity order by order for the unknown initial rows.
///
/// The identity is expanded along the boundary with the double-series form
/// of `R` and `S`; at each order the new unknown enters with a pivot of
/// `1` (Cauchy, free surface) or `-cos(eta) (-1)^m` (straight contact).
pub fn match_boundary_coeffs(
    constraint: &BoundaryConstraint,
    known: &FactorialSeries,
    order: usize,
) -> Result<InitialRows> {
    check_dim(order)?;
    if !known.is_finite() {
        return Err(SlatError::InvalidInput("known row has non-finite entries".into()));
    }
    let known = known.truncated(order);
    let mut a = vec![0.0; order];
    let mut b = vec![0.0; order];
    match *constraint {
        BoundaryConstraint::CauchyConst { eta, orientation } => {
            if !(eta > 0.0 && eta <= FRAC_PI_2) {
                return Err(SlatError::Domain(format!("eta must lie in (0, pi/2], got {eta}")));
            }
            let (s, c) = eta.sin_cos();
            for m in 0..order {
                let rm = known.get(m);
                // a_m enters R_m with weight 1 and b_m does not
                let (r_low, _) = partial_traces(m, &a, &b, m, 1.0);
                a[m] = 2.0 * c * rm - r_low;
                let (_, s_low) = partial_traces(m, &a, &b, m, 1.0);
                b[m] = -2.0 * s * rm - s_low;
            }
            let b = FactorialSeries::new(b).scaled(orientation.beta_sign());
            Ok(InitialRows { a: FactorialSeries::new(a), b })
        }
        BoundaryConstraint::FreeSurface => {
            a.copy_from_slice(known.coeffs());
            for m in 0..order {
                let (r, s_low) = partial_traces(m, &a, &b, m, 1.0);
                b[m] = -(r + s_low);
            }
            Ok(InitialRows { a: FactorialSeries::new(a), b: FactorialSeries::new(b) })
        }
        BoundaryConstraint::MixedStraight { eta } => {
            if !(eta > 0.0 && eta <= FRAC_PI_2) {
                return Err(SlatError::Domain(format!("eta must lie in (0, pi/2], got {eta}")));
            }
            a.copy_from_slice(known.coeffs());
            let (sin, cos) = eta.sin_cos();
            for m in 0..order {
                let pivot = -cos * signed_pow(-1.0, m);
                if pivot.abs() < PIVOT_TOL {
                    return Err(SlatError::Singular { order: m });
                }
                let (r, s_low) = partial_traces(m, &a, &b, m, -1.0);
                b[m] = -(r * sin - s_low * cos) / pivot;
            }
            Ok(InitialRows { a: FactorialSeries::new(a), b: FactorialSeries::new(b) })
        }
    }
}
