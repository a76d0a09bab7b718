//! Orbits, periods, Lyapunov exponents and fixed points.

use std::fmt;

use crate::error::{Error, Result};
use crate::maps::{flm_derivative, flm_eval, flm_upper_zero, MapSpec};
use crate::specfun::gamma_positive;

/// Upper bound on `transient + samples` for a single orbit.
pub const MAX_ORBIT_STEPS: u64 = 100_000_000;

pub const DEFAULT_X0: f64 = 0.5;
pub const DEFAULT_TRANSIENT: usize = 2000;
pub const DEFAULT_SAMPLES: usize = 400;
pub const DEFAULT_MAX_PERIOD: usize = 128;
pub const DEFAULT_PERIOD_TOL: f64 = 1e-9;

/// Default escape bound `10 * (1 + alpha/2)`.
pub fn default_escape_bound(alpha: f64) -> f64 {
    10.0 * flm_upper_zero(alpha)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitConfig {
    pub x0: f64,
    /// Iterations discarded before recording.
    pub transient: usize,
    /// Iterations recorded.
    pub samples: usize,
    pub escape_bound: f64,
}

impl OrbitConfig {
    /// Default settings for a map: x0 = 0.5, 2000 transient, 400 samples.
    pub fn for_map(spec: &MapSpec) -> Self {
        OrbitConfig {
            x0: DEFAULT_X0,
            transient: DEFAULT_TRANSIENT,
            samples: DEFAULT_SAMPLES,
            escape_bound: default_escape_bound(spec.order()),
        }
    }

    pub fn with_x0(mut self, x0: f64) -> Self {
        self.x0 = x0;
        self
    }

    pub fn with_transient(mut self, transient: usize) -> Self {
        self.transient = transient;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x0 >= 0.0) || !self.x0.is_finite() {
            return Err(Error::invalid("x0", "must be a finite value >= 0"));
        }
        if self.samples == 0 {
            return Err(Error::invalid("samples", "must be positive"));
        }
        if self.transient as u64 + self.samples as u64 > MAX_ORBIT_STEPS {
            return Err(Error::invalid(
                "samples",
                format!("transient + samples must not exceed {MAX_ORBIT_STEPS}"),
            ));
        }
        if !(self.escape_bound > 0.0) {
            return Err(Error::invalid("escape_bound", "must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitStatus {
    Completed,
    /// An iterate exceeded the escape bound at this step (step 0 is x0).
    Escaped {
        step: usize,
    },
    /// An iterate became negative (or NaN) at this step.
    DomainViolation {
        step: usize,
    },
}

impl OrbitStatus {
    pub fn is_completed(&self) -> bool {
        matches!(self, OrbitStatus::Completed)
    }
}

impl fmt::Display for OrbitStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitStatus::Completed => f.write_str("completed"),
            OrbitStatus::Escaped { step } => write!(f, "escaped at step {step}"),
            OrbitStatus::DomainViolation { step } => write!(f, "domain violation at step {step}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    /// Recorded post-transient iterates, truncated at the first failure.
    pub points: Vec<f64>,
    pub status: OrbitStatus,
}

/// Iterates `x_{n+1} = f(x_n)` from `cfg.x0`, discarding `cfg.transient`
/// iterates and recording the next `cfg.samples`.
pub fn iterate(spec: &MapSpec, cfg: &OrbitConfig) -> Result<Orbit> {
    spec.validate()?;
    cfg.validate()?;
    Ok(iterate_unchecked(spec, cfg))
}

pub(crate) fn iterate_unchecked(spec: &MapSpec, cfg: &OrbitConfig) -> Orbit {
    let f = spec.evaluator();
    let classify = |x: f64, step: usize| -> Option<OrbitStatus> {
        if x.is_nan() || x < 0.0 {
            Some(OrbitStatus::DomainViolation { step })
        } else if x > cfg.escape_bound {
            Some(OrbitStatus::Escaped { step })
        } else {
            None
        }
    };

    let mut x = cfg.x0;
    if let Some(status) = classify(x, 0) {
        return Orbit {
            points: Vec::new(),
            status,
        };
    }
    for step in 1..=cfg.transient {
        x = f.eval(x);
        if let Some(status) = classify(x, step) {
            return Orbit {
                points: Vec::new(),
                status,
            };
        }
    }
    let mut points = Vec::with_capacity(cfg.samples);
    for k in 1..=cfg.samples {
        x = f.eval(x);
        if let Some(status) = classify(x, cfg.transient + k) {
            return Orbit { points, status };
        }
        points.push(x);
    }
    Orbit {
        points,
        status: OrbitStatus::Completed,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodResult {
    /// Minimal period, or `None` when no period up to the limit fits.
    pub period: Option<usize>,
    /// The last `period` points of the orbit when periodic.
    pub cycle_points: Vec<f64>,
}

/// Finds the smallest `p <= max_period` such that every recorded point
/// satisfies `|x_{n+p} - x_n| <= tol * max(1, |x_n|)` and lies within the
/// same tolerance of its phase in the final cycle.
///
/// Candidates are tried in increasing order, so a divisor of `p` that also
/// fits would have been returned first.
pub fn detect_period(orbit: &Orbit, max_period: usize, tol: f64) -> Result<PeriodResult> {
    if !orbit.status.is_completed() {
        return Err(Error::OrbitFailed(orbit.status));
    }
    if max_period == 0 {
        return Err(Error::invalid("max_period", "must be positive"));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tol", "must be positive"));
    }
    let needed = 2 * max_period;
    if orbit.points.len() < needed {
        return Err(Error::InsufficientSamples {
            needed,
            got: orbit.points.len(),
        });
    }
    Ok(period_of(&orbit.points, max_period, tol))
}

pub(crate) fn period_of(points: &[f64], max_period: usize, tol: f64) -> PeriodResult {
    let close = |a: f64, b: f64| (b - a).abs() <= tol * a.abs().max(1.0);
    let fits = |p: usize| {
        let cycle = &points[points.len() - p..];
        let offset = points.len() % p;
        points.iter().zip(&points[p..]).all(|(&a, &b)| close(a, b))
            && points
                .iter()
                .enumerate()
                .all(|(i, &a)| close(cycle[(i + p - offset) % p], a))
    };
    match (1..=max_period).find(|&p| fits(p)) {
        Some(p) => PeriodResult {
            period: Some(p),
            cycle_points: points[points.len() - p..].to_vec(),
        },
        None => PeriodResult {
            period: None,
            cycle_points: Vec::new(),
        },
    }
}

/// Lyapunov exponent estimate, or `Undefined` when the orbit lands on a
/// point where the derivative vanishes to within floating precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lyapunov {
    Value(f64),
    Undefined,
}

impl Lyapunov {
    pub fn value(self) -> Option<f64> {
        match self {
            Lyapunov::Value(v) => Some(v),
            Lyapunov::Undefined => None,
        }
    }
}

/// Derivatives below this magnitude make the log-average undefined.
pub const DERIVATIVE_FLOOR: f64 = 1e-300;

/// Mean of `ln |f'(x_n)|` over the post-transient orbit.
pub fn lyapunov(spec: &MapSpec, cfg: &OrbitConfig) -> Result<Lyapunov> {
    let orbit = iterate(spec, cfg)?;
    if !orbit.status.is_completed() {
        return Err(Error::OrbitFailed(orbit.status));
    }
    Ok(lyapunov_of_points(spec, &orbit.points))
}

pub(crate) fn lyapunov_of_points(spec: &MapSpec, points: &[f64]) -> Lyapunov {
    if points.is_empty() {
        return Lyapunov::Undefined;
    }
    let f = spec.evaluator();
    let mut sum = 0.0;
    for &x in points {
        let d = f.derivative(x).abs();
        if !(d >= DERIVATIVE_FLOOR) {
            return Lyapunov::Undefined;
        }
        sum += d.ln();
    }
    Lyapunov::Value(sum / points.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stability {
    Attracting,
    Repelling,
    Neutral,
}

impl Stability {
    pub fn from_multiplier(m: f64) -> Self {
        let a = m.abs();
        if a < 1.0 - 1e-9 {
            Stability::Attracting
        } else if a > 1.0 + 1e-9 {
            Stability::Repelling
        } else {
            Stability::Neutral
        }
    }
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stability::Attracting => "attracting",
            Stability::Repelling => "repelling",
            Stability::Neutral => "neutral",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPoint {
    pub x: f64,
    /// `|Q(x) - x|`.
    pub residual: f64,
    /// `|x^(1+alpha) - (alpha+2)/2 x^alpha + Γ(alpha+3)/(2 lam)|`.
    pub poly_residual: f64,
    pub multiplier: f64,
    pub stability: Stability,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointSet {
    /// Positive fixed points in increasing order.
    pub roots: Vec<FixedPoint>,
    /// The origin is always a fixed point of the FLM.
    pub includes_origin: bool,
}

/// Number of uniform bracketing nodes on `]0, 1 + alpha/2]`.
pub const FIXED_POINT_GRID: usize = 4096;

/// Left-hand side of the divided fixed-point equation
/// `x^(1+alpha) - (alpha+2)/2 x^alpha + Γ(alpha+3)/(2 lam)`.
#[derive(Debug, Clone, Copy)]
pub struct FixedPointEquation {
    alpha: f64,
    half_width: f64,
    constant: f64,
}

impl FixedPointEquation {
    pub fn new(alpha: f64, lam: f64) -> Self {
        FixedPointEquation {
            alpha,
            half_width: 0.5 * (alpha + 2.0),
            constant: gamma_positive(alpha + 3.0) / (2.0 * lam),
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        let xa = x.powf(self.alpha);
        xa * (x - self.half_width) + self.constant
    }

    fn slope(&self, x: f64) -> f64 {
        if self.alpha == 0.0 {
            return 1.0;
        }
        // d/dx x^alpha (x - c) = x^(alpha-1) ((1+alpha) x - alpha c)
        x.powf(self.alpha - 1.0) * ((1.0 + self.alpha) * x - self.alpha * self.half_width)
    }
}

/// Positive real fixed points of the FLM of order `alpha`.
///
/// Sign changes of the divided equation are bracketed on a
/// [`FIXED_POINT_GRID`]-node grid and polished by Newton steps that fall
/// back to bisection whenever a step leaves the bracket. Tangential double
/// roots without a sign change are not reported.
pub fn fixed_points(alpha: f64, lam: f64) -> Result<FixedPointSet> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::Domain {
            name: "alpha",
            value: alpha,
            reason: "order must be a finite value >= 0",
        });
    }
    if !(lam > 0.0) || !lam.is_finite() {
        return Err(Error::Domain {
            name: "lam",
            value: lam,
            reason: "lam must be a finite value > 0",
        });
    }
    let eq = FixedPointEquation::new(alpha, lam);
    let upper = flm_upper_zero(alpha);
    let h = upper / FIXED_POINT_GRID as f64;

    let mut roots = Vec::new();
    let mut lo = 0.0;
    let mut g_lo = eq.value(lo);
    for i in 1..=FIXED_POINT_GRID {
        let hi = if i == FIXED_POINT_GRID {
            upper
        } else {
            i as f64 * h
        };
        let g_hi = eq.value(hi);
        let root = if g_hi == 0.0 {
            Some(hi)
        } else if g_lo != 0.0 && (g_lo < 0.0) != (g_hi < 0.0) {
            Some(polish(&eq, lo, hi, g_lo))
        } else {
            None
        };
        if let Some(x) = root.filter(|&x| x > 0.0) {
            let q = flm_eval(alpha, lam, x)?;
            let multiplier = flm_derivative(alpha, lam, x)?;
            roots.push(FixedPoint {
                x,
                residual: (q - x).abs(),
                poly_residual: eq.value(x).abs(),
                multiplier,
                stability: Stability::from_multiplier(multiplier),
            });
        }
        lo = hi;
        g_lo = g_hi;
    }
    Ok(FixedPointSet {
        roots,
        includes_origin: true,
    })
}

fn polish(eq: &FixedPointEquation, mut lo: f64, mut hi: f64, g_lo: f64) -> f64 {
    let lo_negative = g_lo < 0.0;
    let mut x = 0.5 * (lo + hi);
    let mut last_step = hi - lo;
    for _ in 0..2000 {
        let g = eq.value(x);
        if g == 0.0 {
            return x;
        }
        if (g < 0.0) == lo_negative {
            lo = x;
        } else {
            hi = x;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let d = eq.slope(x);
        let newton = x - g / d;
        let step = (newton - x).abs();
        x = if d != 0.0 && newton > lo && newton < hi && step < 0.5 * last_step {
            last_step = step;
            newton
        } else {
            last_step = hi - lo;
            mid
        };
    }
    // Return whichever end of the final bracket has the smaller residual.
    [lo, hi, x]
        .into_iter()
        .filter(|&t| t > 0.0)
        .min_by(|a, b| eq.value(*a).abs().total_cmp(&eq.value(*b).abs()))
        .unwrap_or(x)
}

/// `|Q(x) - x|` for the FLM of order `alpha`.
pub fn check_fixed_point_identity(alpha: f64, lam: f64, x: f64) -> Result<f64> {
    Ok((flm_eval(alpha, lam, x)? - x).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(spec: &MapSpec) -> OrbitConfig {
        OrbitConfig::for_map(spec)
    }

    #[test]
    fn orbit_from_upper_zero_collapses_to_origin() {
        let spec = MapSpec::flm(0.5, 5.0).unwrap();
        let c = cfg(&spec).with_x0(1.25).with_transient(0).with_samples(10);
        let orbit = iterate(&spec, &c).unwrap();
        assert_eq!(orbit.status, OrbitStatus::Completed);
        assert!(orbit.points[0].abs() < 1e-13);
        assert!(orbit.points[1..].iter().all(|&x| x.abs() < 1e-13));
    }

    #[test]
    fn classic_fixed_point_orbit_is_constant() {
        let spec = MapSpec::logistic(4.0).unwrap();
        let c = cfg(&spec).with_x0(0.75).with_transient(0).with_samples(50);
        let orbit = iterate(&spec, &c).unwrap();
        assert!(orbit.points.iter().all(|&x| x == 0.75));
    }

    #[test]
    fn semi_logistic_orbit_stays_in_invariant_interval() {
        let spec = MapSpec::flm(0.5, 5.0).unwrap();
        let c = cfg(&spec).with_transient(1000).with_samples(100);
        let orbit = iterate(&spec, &c).unwrap();
        assert_eq!(orbit.status, OrbitStatus::Completed);
        assert_eq!(orbit.points.len(), 100);
        assert!(orbit.points.iter().all(|&x| (0.0..=1.25).contains(&x)));
    }

    #[test]
    fn negative_iterate_is_a_domain_violation() {
        // Beyond 1 + alpha/2 the map is negative.
        let spec = MapSpec::flm(0.5, 5.0).unwrap();
        let c = cfg(&spec).with_x0(1.3).with_transient(3).with_samples(5);
        let orbit = iterate(&spec, &c).unwrap();
        assert_eq!(orbit.status, OrbitStatus::DomainViolation { step: 1 });
        assert!(orbit.points.is_empty());
    }

    #[test]
    fn violation_during_samples_truncates() {
        let spec = MapSpec::flm(0.5, 5.0).unwrap();
        let c = cfg(&spec).with_x0(1.3).with_transient(0).with_samples(5);
        let orbit = iterate(&spec, &c).unwrap();
        assert_eq!(orbit.status, OrbitStatus::DomainViolation { step: 1 });
        assert!(orbit.points.is_empty());

        // Ricker with a huge lam overshoots a small escape bound.
        let spec = MapSpec::ricker(50.0, 1.0).unwrap();
        let c = OrbitConfig {
            x0: 0.1,
            transient: 0,
            samples: 10,
            escape_bound: 4.0,
        };
        let orbit = iterate(&spec, &c).unwrap();
        assert!(matches!(orbit.status, OrbitStatus::Escaped { step: 1 }));
    }

    #[test]
    fn x0_outside_bound_escapes_at_step_zero() {
        let spec = MapSpec::logistic(2.0).unwrap();
        let c = OrbitConfig {
            x0: 20.0,
            transient: 5,
            samples: 5,
            escape_bound: 10.0,
        };
        assert_eq!(
            iterate(&spec, &c).unwrap().status,
            OrbitStatus::Escaped { step: 0 }
        );
    }

    #[test]
    fn config_validation() {
        let spec = MapSpec::logistic(2.0).unwrap();
        let base = cfg(&spec);
        assert_eq!(
            iterate(&spec, &base.with_x0(-0.1)).unwrap_err().field(),
            Some("x0")
        );
        assert_eq!(
            iterate(&spec, &base.with_samples(0)).unwrap_err().field(),
            Some("samples")
        );
        let huge = base
            .with_transient(MAX_ORBIT_STEPS as usize)
            .with_samples(1);
        assert!(huge.validate().is_err());
    }

    fn classic_period(lam: f64, x0: f64) -> Option<usize> {
        let spec = MapSpec::logistic(lam).unwrap();
        let orbit = iterate(&spec, &cfg(&spec).with_x0(x0)).unwrap();
        detect_period(&orbit, DEFAULT_MAX_PERIOD, DEFAULT_PERIOD_TOL)
            .unwrap()
            .period
    }

    #[test]
    fn classic_periods() {
        assert_eq!(classic_period(2.9, 0.5), Some(1));
        assert_eq!(classic_period(3.2, 0.5), Some(2));
        assert_eq!(classic_period(3.5, 0.5), Some(4));
        assert_eq!(classic_period(3.55, 0.5), Some(8));
        // x0 = 0.5 maps to 1 and then 0 at lam = 4, so start elsewhere.
        assert_eq!(classic_period(4.0, 0.3), None);
    }

    #[test]
    fn period_detection_oracle_long_iteration() {
        // Brute force: iterate 10^5 steps and check the n-step return.
        for (lam, p) in [(2.9, 1usize), (3.2, 2)] {
            let mut x: f64 = 0.5;
            for _ in 0..100_000 {
                x = lam * x * (1.0 - x);
            }
            let mut y = x;
            for _ in 0..p {
                y = lam * y * (1.0 - y);
            }
            assert!((y - x).abs() < 1e-12, "lam={lam}");
            assert_eq!(classic_period(lam, 0.5), Some(p));
        }
    }

    #[test]
    fn period_detection_errors() {
        let spec = MapSpec::logistic(3.2).unwrap();
        let orbit = iterate(&spec, &cfg(&spec).with_samples(100)).unwrap();
        assert_eq!(
            detect_period(&orbit, 128, 1e-9).unwrap_err(),
            Error::InsufficientSamples {
                needed: 256,
                got: 100
            }
        );
        let failed = Orbit {
            points: vec![],
            status: OrbitStatus::Escaped { step: 3 },
        };
        assert!(matches!(
            detect_period(&failed, 4, 1e-9),
            Err(Error::OrbitFailed(_))
        ));
    }

    #[test]
    fn cycle_points_are_distinct_at_tolerance() {
        let spec = MapSpec::logistic(3.5).unwrap();
        let orbit = iterate(&spec, &cfg(&spec)).unwrap();
        let r = detect_period(&orbit, 128, 1e-9).unwrap();
        assert_eq!(r.period, Some(4));
        let mut c = r.cycle_points.clone();
        c.sort_by(f64::total_cmp);
        assert!(c.windows(2).all(|w| w[1] - w[0] > 1e-3));
    }

    #[test]
    fn lyapunov_classic() {
        let spec = MapSpec::logistic(2.5).unwrap();
        let l = lyapunov(&spec, &cfg(&spec)).unwrap().value().unwrap();
        assert!((l - 0.5f64.ln()).abs() < 1e-6);

        let spec = MapSpec::logistic(4.0).unwrap();
        let c = cfg(&spec).with_x0(0.3).with_samples(200_000);
        let l = lyapunov(&spec, &c).unwrap().value().unwrap();
        assert!((l - 2f64.ln()).abs() < 0.02, "{l}");
    }

    #[test]
    fn lyapunov_semi_logistic_chaotic_top() {
        let spec = MapSpec::flm(0.5, 6.05).unwrap();
        let l = lyapunov(&spec, &cfg(&spec)).unwrap().value().unwrap();
        assert!(l > 0.0, "{l}");
    }

    #[test]
    fn lyapunov_undefined_on_critical_point() {
        // lam = 2: 0.5 is the fixed point and the critical point.
        let spec = MapSpec::logistic(2.0).unwrap();
        assert_eq!(lyapunov(&spec, &cfg(&spec)).unwrap(), Lyapunov::Undefined);
    }

    #[test]
    fn lyapunov_propagates_orbit_failure() {
        let spec = MapSpec::flm(0.5, 5.0).unwrap();
        let c = cfg(&spec).with_x0(1.3);
        assert!(matches!(lyapunov(&spec, &c), Err(Error::OrbitFailed(_))));
    }

    #[test]
    fn fixed_points_classic() {
        let set = fixed_points(0.0, 4.0).unwrap();
        assert!(set.includes_origin);
        assert_eq!(set.roots.len(), 1);
        let r = set.roots[0];
        assert!((r.x - 0.75).abs() < 1e-12);
        assert!((r.multiplier + 2.0).abs() < 1e-12);
        assert_eq!(r.stability, Stability::Repelling);

        let set = fixed_points(0.0, 2.0).unwrap();
        assert_eq!(set.roots.len(), 1);
        assert!((set.roots[0].x - 0.5).abs() < 1e-12);
        assert!(set.roots[0].multiplier.abs() < 1e-12);
        assert_eq!(set.roots[0].stability, Stability::Attracting);

        // Below lam = 1 only the origin remains.
        assert!(fixed_points(0.0, 0.8).unwrap().roots.is_empty());
    }

    #[test]
    fn fixed_points_semi_logistic_two_roots() {
        let set = fixed_points(0.5, 5.0).unwrap();
        assert_eq!(set.roots.len(), 2);
        for r in &set.roots {
            assert!(r.poly_residual <= 1e-12);
            assert!(check_fixed_point_identity(0.5, 5.0, r.x).unwrap() <= 1e-10);
        }
        assert!((set.roots[0].x - 0.082).abs() < 2e-3);
        assert!((set.roots[1].x - 0.90).abs() < 1e-2);
        assert_eq!(set.roots[0].stability, Stability::Repelling);
    }

    #[test]
    fn fixed_point_identity_examples() {
        assert_eq!(check_fixed_point_identity(0.0, 4.0, 0.75).unwrap(), 0.0);
        for alpha in [0.0, 0.3, 1.0] {
            assert_eq!(check_fixed_point_identity(alpha, 3.0, 0.0).unwrap(), 0.0);
        }
        assert!(check_fixed_point_identity(0.5, 5.0, -0.1).is_err());
    }

    #[test]
    fn tiny_first_cell_root_is_found() {
        // For small alpha one root sits far below the first grid node.
        let set = fixed_points(0.01, 6.0).unwrap();
        assert_eq!(set.roots.len(), 2);
        assert!(set.roots[0].x < 1e-50);
        assert!(set.roots[0].poly_residual <= 1e-12);
    }

    #[test]
    fn orbits_are_bit_identical() {
        let spec = MapSpec::flm(0.5, 5.9).unwrap();
        let a = iterate(&spec, &cfg(&spec)).unwrap();
        let b = iterate(&spec, &cfg(&spec)).unwrap();
        let bits = |o: &Orbit| o.points.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(&a), bits(&b));
    }
}
