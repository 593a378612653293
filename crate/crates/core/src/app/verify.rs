//! Cross-checks of the production evaluators against the oracles, run by
//! `slat verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_4, SQRT_2};

use crate::bvp::{solve_cauchy_const, solve_initial_char, CauchyBoundary};
use crate::error::Result;
use crate::oracle::{double_series, fd_telegraph, hyp0f1_reference};
use crate::series::{hyp0f1, FactorialSeries};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.value.is_finite() && self.value <= self.tolerance
    }
}

fn random_row(rng: &mut ChaCha8Rng, n: usize) -> FactorialSeries {
    FactorialSeries::new((0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect())
}

pub fn run_checks() -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checks = Vec::new();

    let mut worst: f64 = 0.0;
    for n in 0..12 {
        for i in 0..=20 {
            let z = -4.0 + 0.4 * i as f64;
            let exact = hyp0f1_reference(n, z);
            worst = worst.max((hyp0f1(n, z)? - exact).abs() / exact.abs().max(1.0));
        }
    }
    checks.push(Check { name: "hyp0f1 against term-by-term sum", value: worst, tolerance: 1e-13 });

    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let field = solve_initial_char(random_row(&mut rng, 16), random_row(&mut rng, 16), 0.0, 1.0)?;
        for _ in 0..10 {
            let (al, be) = (rng.gen_range(-0.5..=0.5), rng.gen_range(-0.5..=0.5));
            let (r, s) = double_series(field.a().coeffs(), field.b().coeffs(), al, be, 60);
            worst = worst.max((field.eval_r(al, be) - r).abs()).max((field.eval_s(al, be) - s).abs());
        }
    }
    checks.push(Check { name: "hypergeometric against double series", value: worst, tolerance: 1e-12 });

    let field = solve_initial_char(random_row(&mut rng, 16), random_row(&mut rng, 16), 0.0, 1.0)?;
    let m = 64;
    let h = 0.5 / m as f64;
    let ea: Vec<f64> = (0..=m).map(|i| field.eval_r(i as f64 * h, 0.0)).collect();
    let eb: Vec<f64> = (0..=m).map(|j| field.eval_r(0.0, j as f64 * h)).collect();
    let grid = fd_telegraph(&ea, &eb, h, h)?;
    let mut worst: f64 = 0.0;
    for (i, row) in grid.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            worst = worst.max((v - field.eval_r(i as f64 * h, j as f64 * h)).abs());
        }
    }
    checks.push(Check { name: "series against finite-difference march", value: worst, tolerance: 1e-4 });

    let bnd = CauchyBoundary::from_tractions(FactorialSeries::constant(1.0, 20), 0.0, 0.0, 1.0)?;
    let spiral = solve_cauchy_const(&bnd, 0.0, 1.0)?;
    let mut worst: f64 = 0.0;
    for i in 0..=50 {
        let al = 0.01 * i as f64;
        worst = worst.max((spiral.eval_r(al, 0.0) - SQRT_2 * al.exp()).abs());
    }
    checks.push(Check { name: "log-spiral radius on the first alpha-line", value: worst, tolerance: 1e-10 });

    let mut worst: f64 = 0.0;
    for i in 0..=30 {
        let al = 0.01 * i as f64;
        worst = worst.max((spiral.eval_r(al, al) - 2.0 * FRAC_PI_4.sin() * 1.0).abs());
    }
    checks.push(Check { name: "Cauchy curve radius R(a, a) = 2 r sin(eta)", value: worst, tolerance: 1e-10 });
    Ok(checks)
}
