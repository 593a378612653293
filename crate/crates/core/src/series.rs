//! Truncated factorial-normalized power series and the 0F1 kernel.
//!
//! A row `c = (c_0, c_1, ...)` stands for the function `sum c_n t^n / n!`.
//! Every operator matrix in [`crate::operators`] acts on rows stored in this
//! basis, so nothing here converts to ordinary Taylor coefficients unless
//! asked to explicitly.

use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Result, SlatError};

const HYP_REL_TOL: f64 = 1e-16;
const HYP_MAX_TERMS: usize = 200;

/// Coefficient row of `sum c_n t^n / n!`.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FactorialSeries {
    coeffs: Vec<f64>,
}

impl FactorialSeries {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn zeros(order: usize) -> Self {
        Self { coeffs: vec![0.0; order] }
    }

    /// The constant series `value`, padded with zeros to `order` terms.
    pub fn constant(value: f64, order: usize) -> Self {
        let mut s = Self::zeros(order.max(1));
        s.coeffs[0] = value;
        s
    }

    /// Builds a row from ordinary Taylor coefficients `f(t) = sum p_n t^n`.
    pub fn from_taylor(taylor: &[f64]) -> Self {
        let mut fact = 1.0;
        let coeffs = taylor
            .iter()
            .enumerate()
            .map(|(n, &p)| {
                if n > 0 {
                    fact *= n as f64;
                }
                p * fact
            })
            .collect();
        Self { coeffs }
    }

    /// Ordinary Taylor coefficients `c_n / n!`.
    pub fn to_taylor(&self) -> Vec<f64> {
        let mut fact = 1.0;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, &c)| {
                if n > 0 {
                    fact *= n as f64;
                }
                c / fact
            })
            .collect()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient `n`, zero outside the stored range.
    pub fn get(&self, n: usize) -> f64 {
        self.coeffs.get(n).copied().unwrap_or(0.0)
    }

    /// Truncates or zero-pads to exactly `order` terms.
    pub fn truncated(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order, 0.0);
        Self { coeffs }
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    /// Evaluates `sum c_n t^n / n!` over the stored coefficients.
    pub fn eval(&self, t: f64) -> f64 {
        let mut term = 1.0;
        let mut sum = 0.0;
        for (n, &c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                term *= t / n as f64;
            }
            sum += c * term;
        }
        sum
    }

    /// Row of the antiderivative vanishing at zero: `(0, c_0, c_1, ...)`.
    /// In this basis integration is a pure shift.
    pub fn integrated(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(0.0);
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Row of the derivative: `(c_1, c_2, ...)`.
    pub fn derivative(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().skip(1).copied().collect(),
        }
    }

    /// Row of `f(-t)`: `(-1)^n c_n`.
    pub fn reflected(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, &c)| if n % 2 == 0 { c } else { -c })
                .collect(),
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        let n = self.order().max(other.order());
        Self {
            coeffs: (0..n).map(|i| f(self.get(i), other.get(i))).collect(),
        }
    }
}

impl From<Vec<f64>> for FactorialSeries {
    fn from(coeffs: Vec<f64>) -> Self {
        Self::new(coeffs)
    }
}

impl Add for &FactorialSeries {
    type Output = FactorialSeries;
    fn add(self, rhs: Self) -> FactorialSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &FactorialSeries {
    type Output = FactorialSeries;
    fn sub(self, rhs: Self) -> FactorialSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &FactorialSeries {
    type Output = FactorialSeries;
    fn neg(self) -> FactorialSeries {
        self.scaled(-1.0)
    }
}

impl Mul<f64> for &FactorialSeries {
    type Output = FactorialSeries;
    fn mul(self, rhs: f64) -> FactorialSeries {
        self.scaled(rhs)
    }
}

/// `0F1(n+1; z) = n! * sum_k z^k / (k! (k+n)!)`.
///
/// Forward summation of the term ratio `z / ((k+1)(k+1+n))`, stopped when a
/// term drops below `1e-16` of the running sum. Arguments in this crate are
/// always `-alpha*beta` with angles of order one, where the series converges
/// after a handful of terms.
pub fn hyp0f1(n: usize, z: f64) -> Result<f64> {
    if !z.is_finite() {
        return Err(SlatError::InvalidInput(format!("0F1 argument must be finite, got {z}")));
    }
    Ok(hyp0f1_unchecked(n, z))
}

pub(crate) fn hyp0f1_unchecked(n: usize, z: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    let nf = n as f64;
    for k in 0..HYP_MAX_TERMS {
        let kf = k as f64;
        term *= z / ((kf + 1.0) * (kf + 1.0 + nf));
        sum += term;
        if term.abs() <= HYP_REL_TOL * sum.abs() {
            break;
        }
    }
    sum
}

/// Upper bound on the truncation error of the curvature series after
/// `order` terms when `|a_n|, |b_n| <= q^n n!` and `|alpha|, |beta| <= p`.
///
/// Term `n` of the a-part is at most `(pq)^n`, the b-part contributes
/// `p (pq)^(n-1) / n <= (pq)^n / q`, and each hypergeometric factor is at
/// most `exp(p^2)`. Summing the geometric tail gives
/// `exp(p^2) (1 + 1/q) (pq)^N / (1 - pq)`.
pub fn tail_bound(q: f64, p: f64, order: usize) -> Result<f64> {
    if !(q > 0.0 && p > 0.0) {
        return Err(SlatError::Domain(format!("tail bound needs q > 0 and p > 0, got q={q}, p={p}")));
    }
    let ratio = p * q;
    if ratio >= 1.0 {
        return Err(SlatError::Domain(format!(
            "tail bound diverges for p >= 1/q (p={p}, 1/q={})",
            1.0 / q
        )));
    }
    Ok((p * p).exp() * (1.0 + 1.0 / q) * ratio.powi(order as i32) / (1.0 - ratio))
}

/// Truncation bound for bounded rows `|a_n|, |b_n| <= m`.
///
/// Both rows contribute `m * sum_{n>=N} p^n/n!`, each term multiplied by at
/// most `exp(p^2)`.
pub fn tail_bound_bounded(m: f64, p: f64, order: usize) -> Result<f64> {
    if !(m >= 0.0 && p >= 0.0) {
        return Err(SlatError::Domain(format!("bounded tail needs m >= 0 and p >= 0, got m={m}, p={p}")));
    }
    let mut term = 1.0;
    for n in 1..=order {
        term *= p / n as f64;
    }
    let mut tail = 0.0;
    let mut n = order;
    loop {
        tail += term;
        n += 1;
        term *= p / n as f64;
        if term <= f64::EPSILON * tail || term == 0.0 {
            break;
        }
    }
    Ok(2.0 * m * (p * p).exp() * tail)
}
