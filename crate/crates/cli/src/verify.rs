//! Self-contained oracle suite behind `fraclog verify`.
//!
//! Each check compares a closed form against an independent route: exact
//! Gamma values, direct polynomial evaluation, finite differences or
//! adaptive Riemann–Liouville quadrature.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use fraclog_core::specfun::semigroup_check;
use fraclog_core::{
    check_fixed_point_identity, fixed_points, flm_derivative, flm_eval, flm_upper_zero, gamma,
    rl_integral_logistic, GammaArg, MapSpec, QuadratureSpec,
};

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Worst observed deviation against its tolerance.
    pub detail: String,
    pub elapsed: Duration,
}

fn check(name: &'static str, run: impl FnOnce() -> Result<(f64, f64), String>) -> Check {
    let start = Instant::now();
    let (passed, detail) = match run() {
        Ok((worst, tol)) => (worst <= tol, format!("worst {worst:.3e} (tol {tol:.0e})")),
        Err(e) => (false, e),
    };
    Check {
        name,
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

fn g(x: f64) -> f64 {
    gamma(GammaArg::new(x).expect("positive"))
}

/// Deterministic equidistributed points in `[lo, hi)` (golden-ratio sequence).
pub fn weyl_points(n: usize, lo: f64, hi: f64) -> Vec<f64> {
    let phi = 0.618_033_988_749_894_9;
    (1..=n)
        .map(|i| lo + (hi - lo) * (i as f64 * phi).fract())
        .collect()
}

pub fn gamma_reference() -> Check {
    check("gamma reference values", || {
        let sqrt_pi = PI.sqrt();
        let refs = [
            (0.5, sqrt_pi),
            (1.0, 1.0),
            (1.5, 0.5 * sqrt_pi),
            (2.0, 1.0),
            (2.5, 0.75 * sqrt_pi),
            (3.5, 1.875 * sqrt_pi),
            (5.0, 24.0),
        ];
        let worst = refs
            .iter()
            .map(|&(x, r)| ((g(x) - r) / r).abs())
            .fold(0.0, f64::max);
        Ok((worst, 1e-13))
    })
}

pub fn gamma_recurrence() -> Check {
    check("gamma recurrence", || {
        let worst = weyl_points(50, 0.5, 8.0)
            .into_iter()
            .map(|x| {
                let lhs = g(x + 1.0);
                ((lhs - x * g(x)) / lhs).abs()
            })
            .fold(0.0, f64::max);
        Ok((worst, 1e-12))
    })
}

pub fn reduction() -> Check {
    check("alpha = 0 reduces to the logistic map", || {
        let mut worst: f64 = 0.0;
        for lam in [0.5, 1.0, 2.5, 4.0] {
            for i in 0..=100 {
                let x = i as f64 / 100.0;
                let v = flm_eval(0.0, lam, x).map_err(|e| e.to_string())?;
                worst = worst.max((v - lam * x * (1.0 - x)).abs());
            }
        }
        Ok((worst, 1e-14))
    })
}

pub fn zeros() -> Check {
    check("zeros at 0 and 1 + alpha/2", || {
        let mut worst: f64 = 0.0;
        for alpha in [0.0, 0.25, 0.5, 0.75, 1.0] {
            for lam in [1.0, 4.0, 6.0] {
                let at_origin = flm_eval(alpha, lam, 0.0).map_err(|e| e.to_string())?;
                if at_origin != 0.0 {
                    return Err(format!("Q(0) = {at_origin} for alpha={alpha}, lam={lam}"));
                }
                let v = flm_eval(alpha, lam, flm_upper_zero(alpha)).map_err(|e| e.to_string())?;
                worst = worst.max(v.abs());
            }
        }
        Ok((worst, 1e-13))
    })
}

pub fn derivative_relation() -> Check {
    check("derivative equals order alpha - 1 map", || {
        let mut worst: f64 = 0.0;
        for alpha in [1.2, 1.5, 2.0] {
            for lam in [1.0, 4.0] {
                for i in 1..=20 {
                    let x = 0.1 * i as f64;
                    let d = flm_derivative(alpha, lam, x).map_err(|e| e.to_string())?;
                    let q = flm_eval(alpha - 1.0, lam, x).map_err(|e| e.to_string())?;
                    worst = worst.max((d - q).abs() / q.abs().max(1.0));
                }
            }
        }
        Ok((worst, 1e-12))
    })
}

pub fn finite_differences() -> Check {
    check("analytic derivatives vs finite differences", || {
        let specs = [
            MapSpec::flm(0.5, 5.0),
            MapSpec::flm(1.3, 3.0),
            MapSpec::logistic(3.7),
            MapSpec::ricker(8.0, 1.2),
            MapSpec::hassel(6.0, 2.5),
        ];
        let h = 1e-5;
        let mut worst: f64 = 0.0;
        for spec in specs {
            let spec = spec.map_err(|e| e.to_string())?;
            let f = |x: f64| spec.eval(x).expect("x >= 0");
            for x in weyl_points(40, 0.05, 2.0) {
                let fd = (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h))
                    / (12.0 * h);
                let an = spec.derivative(x).map_err(|e| e.to_string())?;
                worst = worst.max((fd - an).abs() / an.abs().max(1.0));
            }
        }
        Ok((worst, 1e-7))
    })
}

/// The 5 x 5 x 5 grid on [0.2, 1.5] x [1, 6] x [0.1, 2].
pub fn closed_form_grid() -> Vec<(f64, f64, f64)> {
    let lin = |lo: f64, hi: f64, i: usize| lo + (hi - lo) * i as f64 / 4.0;
    let mut grid = Vec::with_capacity(125);
    for a in 0..5 {
        for l in 0..5 {
            for x in 0..5 {
                grid.push((lin(0.2, 1.5, a), lin(1.0, 6.0, l), lin(0.1, 2.0, x)));
            }
        }
    }
    grid
}

pub fn closed_form_vs_quadrature() -> Check {
    check("closed form vs RL quadrature (125 points)", || {
        let spec = QuadratureSpec::default();
        let mut worst: f64 = 0.0;
        for (alpha, lam, x) in closed_form_grid() {
            let q = rl_integral_logistic(alpha, lam, x, &spec).map_err(|e| e.to_string())?;
            let c = flm_eval(alpha, lam, x).map_err(|e| e.to_string())?;
            worst = worst.max(((q.value - c) / c).abs());
        }
        Ok((worst, 1e-7))
    })
}

pub const SEMIGROUP_ORDERS: [(f64, f64); 3] = [(0.5, 0.5), (0.3, 0.7), (1.0, 0.5)];
pub const SEMIGROUP_POINTS: [f64; 3] = [0.5, 1.0, 2.0];

pub fn semigroup() -> Check {
    check("semigroup I^a I^b = I^(a+b) (9 points)", || {
        let spec = QuadratureSpec::default();
        let mut worst: f64 = 0.0;
        for (alpha, beta) in SEMIGROUP_ORDERS {
            for x in SEMIGROUP_POINTS {
                let r = semigroup_check(alpha, beta, 4.0, x, &spec).map_err(|e| e.to_string())?;
                worst = worst.max(r.rel_diff);
            }
        }
        Ok((worst, 1e-5))
    })
}

pub fn fixed_point_consistency() -> Check {
    check("fixed points solve Q(x) = x", || {
        let mut worst: f64 = 0.0;
        let alphas = weyl_points(100, 0.0, 1.0);
        let lams = weyl_points(137, 0.5, 6.5);
        for (alpha, lam) in alphas.into_iter().zip(lams) {
            let set = fixed_points(alpha, lam).map_err(|e| e.to_string())?;
            for r in set.roots {
                let res = check_fixed_point_identity(alpha, lam, r.x).map_err(|e| e.to_string())?;
                worst = worst.max(res / r.x.max(1.0));
            }
        }
        Ok((worst, 1e-10))
    })
}

pub fn run_all() -> Vec<Check> {
    vec![
        gamma_reference(),
        gamma_recurrence(),
        reduction(),
        zeros(),
        derivative_relation(),
        finite_differences(),
        closed_form_vs_quadrature(),
        semigroup(),
        fixed_point_consistency(),
    ]
}

pub fn render(checks: &[Check]) -> String {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for c in checks {
        out.push_str(&format!(
            "{}  {:width$}  {}  [{:.2?}]\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail,
            c.elapsed,
        ));
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    out.push_str(&format!(
        "{} passed, {} failed\n",
        checks.len() - failed,
        failed
    ));
    out
}
