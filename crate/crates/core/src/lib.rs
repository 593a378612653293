//! Power-series solutions of plane-strain rigid-plastic slip-line fields.
//!
//! Curvature radii of the two slip-line families are carried as
//! factorial-normalized coefficient rows ([`FactorialSeries`]); boundary
//! value problems reduce to an initial characteristic problem whose
//! solution is a sum of `0F1` kernels ([`bvp`]). Nets and stresses are
//! reconstructed in [`geometry`]; [`app`] holds the worked problems, the
//! exporters and the command line front end.

pub mod app;
pub mod bvp;
pub mod error;
pub mod geometry;
pub mod operators;
pub mod oracle;
pub mod quadrature;
pub mod series;

pub use bvp::{
    solve_cauchy_const, solve_fan, solve_free_surface, solve_initial_char, solve_mixed_straight, CauchyBoundary,
    CurvatureField, FanLine, FreeSurface, SlipLineField,
};
pub use error::{Result, SlatError};
pub use geometry::{build_net, net_curvature_check, stress_at, CharacteristicNet, NetSpec, Pose, StressState};
pub use operators::{
    match_boundary_coeffs, matrix_a, matrix_b, matrix_c, matrix_d, matrix_f, matrix_t, BoundaryConstraint,
    OperatorKind, OperatorMatrix, Orientation,
};
pub use series::{hyp0f1, tail_bound, FactorialSeries};
