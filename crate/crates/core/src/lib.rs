//! Numerical dynamics of the fractional logistic map.
//!
//! The fractional logistic map (FLM) of order `alpha` is the Riemann–Liouville
//! fractional integral of the logistic map `lam * x * (1 - x)`:
//!
//! ```text
//! Q(x) = lam / Γ(alpha + 2) * (1 - 2x / (alpha + 2)) * x^(1 + alpha)
//! ```
//!
//! The crate is split bottom-up:
//!
//! * [`specfun`]: the Gamma function and an adaptive Riemann–Liouville
//!   quadrature used to cross-check the closed forms.
//! * [`maps`]: the FLM, the semi-logistic map (`alpha = 1/2`), the classic
//!   logistic map and the Ricker/Hassel comparison families.
//! * [`dynamics`]: orbit iteration, period detection, Lyapunov exponents and
//!   fixed points.
//! * [`scan`]: bifurcation scans over `lam` or `alpha`, period-doubling
//!   location and Feigenbaum ratio estimates.
//!
//! Scans fan rows out over a rayon pool when the `parallel` feature is on
//! (the default). Without it every scan runs sequentially. Results never
//! depend on the worker count.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod error;
pub mod maps;
mod parallel;
pub mod scan;
pub mod specfun;

pub use dynamics::{
    check_fixed_point_identity, detect_period, fixed_points, iterate, lyapunov, FixedPoint,
    FixedPointSet, Lyapunov, Orbit, OrbitConfig, OrbitStatus, PeriodResult, Stability,
};
pub use error::{Error, Result};
pub use maps::{
    flm_derivative, flm_eval, flm_upper_zero, map_derivative, map_eval, semi_logistic_eval, Family,
    MapDomain, MapSpec,
};
pub use scan::{
    alpha_slice, bifurcation_scan, find_doublings, AxisParameter, AxisSpec, DoublingSequence,
    ScanRow, ScanSettings,
};
pub use specfun::{
    gamma, rl_integral, rl_integral_logistic, rl_integral_monomial, GammaArg, QuadratureResult,
    QuadratureSpec,
};
