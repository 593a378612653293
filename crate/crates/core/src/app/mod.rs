//! Problem runners behind the `slat` binary: the four boundary value
//! problems on a single patch, the extrusion die and the elliptic hole.

pub mod cli;
pub mod config;
pub mod elliptic;
pub mod export;
pub mod extrusion;
pub mod verify;

use serde::Serialize;

use crate::bvp::{solve_cauchy_const, solve_free_surface, solve_initial_char, solve_mixed_straight, CauchyBoundary, SlipLineField};
use crate::error::Result;
use crate::geometry::{build_net, net_curvature_check, CharacteristicNet, CurvatureReport, NetSpec, Pose};
use crate::operators::Orientation;
use crate::series::FactorialSeries;

use config::{Problem, ProblemConfig, ProblemKind, Resolved};
use elliptic::{AxisPoint, EllipticParams};
use extrusion::ExtrusionParams;

/// Everything a run produces, ready for the exporters.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub kind: ProblemKind,
    /// Pretty JSON of the report with version and config echo.
    pub json: String,
    pub nets: Vec<CharacteristicNet>,
    pub profile: Option<Vec<AxisPoint>>,
    /// `key = value` lines for the terminal.
    pub summary: Vec<(String, String)>,
    pub warnings: Vec<String>,
}

/// Report of the single-patch problems.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FieldReport {
    pub a: FactorialSeries,
    pub b: FactorialSeries,
    pub orientation: Orientation,
    pub sigma0: f64,
    pub k: f64,
    pub order: usize,
    /// Free-surface curvature row, when the problem has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub surface_r: Option<FactorialSeries>,
    pub path_discrepancy: f64,
    pub curvature: CurvatureReport,
}

fn field_report(field: &SlipLineField, net: &CharacteristicNet, surface_r: Option<FactorialSeries>) -> FieldReport {
    FieldReport {
        a: field.a().clone(),
        b: field.b().clone(),
        orientation: field.orientation(),
        sigma0: field.sigma0(),
        k: field.k(),
        order: field.order(),
        surface_r,
        path_discrepancy: net.path_discrepancy(),
        curvature: net_curvature_check(net, field),
    }
}

fn sci(v: f64) -> String {
    format!("{v:.8e}")
}

fn fixed(v: f64) -> String {
    format!("{v:.6}")
}

/// Runs `kind` as configured by `cfg`.
pub fn run(cfg: &ProblemConfig, kind: ProblemKind) -> Result<RunOutput> {
    let Resolved { common, problem, .. } = cfg.resolve(kind)?;
    let origin = Pose { x: 0.0, y: 0.0, phi: 0.0 };
    let (ga, gb) = (common.grid_alpha, common.grid_beta);
    let single = |field: SlipLineField, spec: NetSpec, triangle: bool, surface: Option<FactorialSeries>| -> Result<RunOutput> {
        let mut net = build_net(&field, &spec)?;
        if triangle {
            net.restrict(|i, j| j <= i);
        }
        let report = field_report(&field, &net, surface);
        let summary = vec![
            ("order".into(), report.order.to_string()),
            ("a0".into(), sci(report.a.get(0))),
            ("b0".into(), sci(report.b.get(0))),
            ("path_discrepancy".into(), sci(report.path_discrepancy)),
            ("curvature_max_rel".into(), sci(report.curvature.max_rel())),
        ];
        Ok(RunOutput { kind, json: export::report_json(kind.name(), cfg, &report), nets: vec![net], profile: None, summary, warnings: vec![] })
    };
    match problem {
        Problem::Icp { a, b, alpha1, beta1 } => {
            let field = solve_initial_char(a, b, common.sigma0, common.k)?;
            single(field, NetSpec::new(alpha1, beta1, ga, gb, origin), false, None)
        }
        Problem::Cauchy { r, eta, sigma_n, tau_n, orientation, alpha1 } => {
            let bnd = CauchyBoundary { r, eta, sigma_n, tau_n, orientation };
            let field = solve_cauchy_const(&bnd, common.sigma0, common.k)?;
            single(field, NetSpec::new(alpha1, alpha1, ga, ga, origin), true, None)
        }
        Problem::FreeSurface { a, alpha1 } => {
            let (field, surface) = solve_free_surface(a, common.sigma0, common.k)?;
            single(field, NetSpec::new(alpha1, alpha1, ga, ga, origin), true, Some(surface.r))
        }
        Problem::Mixed { a, eta, alpha1 } => {
            let field = solve_mixed_straight(a, eta, common.sigma0, common.k)?;
            single(field, NetSpec::new(alpha1, -alpha1, ga, ga, origin), true, None)
        }
        Problem::Extrusion { gamma, alpha1, beta1, oa } => {
            let params = ExtrusionParams { gamma, alpha1, beta1, oa, order: common.order, k: common.k, grid_alpha: ga, grid_beta: gb };
            let sol = extrusion::run_extrusion(&params)?;
            let r = sol.report;
            let summary = vec![
                ("x_E".into(), fixed(r.x_e)),
                ("y_E".into(), fixed(r.y_e)),
                ("H".into(), fixed(r.h)),
                ("P/H".into(), fixed(r.p_over_h)),
                ("p_B".into(), fixed(r.p_b)),
                ("p_D".into(), fixed(r.p_d)),
            ];
            Ok(RunOutput { kind, json: export::report_json(kind.name(), cfg, &r), nets: vec![sol.net], profile: None, summary, warnings: vec![] })
        }
        Problem::EllipticHole { b_ratio, pressure } => {
            let params = EllipticParams { b_ratio, pressure, order: common.order, k: common.k, grid: ga };
            let sol = elliptic::run_elliptic_hole(&params)?;
            let r = &sol.report;
            let summary = vec![
                ("order".into(), r.order.to_string()),
                ("fit_error".into(), sci(r.fit_error)),
                ("boundary_deviation".into(), sci(r.boundary_deviation)),
                ("mirror_deviation".into(), sci(r.mirror_deviation)),
                ("delta_max".into(), fixed(r.profile.last().map_or(f64::NAN, |p| p.delta))),
            ];
            Ok(RunOutput {
                kind,
                json: export::report_json(kind.name(), cfg, r),
                nets: vec![sol.net1, sol.net2],
                profile: Some(r.profile.clone()),
                summary,
                warnings: r.warnings.clone(),
            })
        }
    }
}
