//! Parameter sweeps: bifurcation diagrams, period-doubling location and
//! Feigenbaum ratio estimates.
//!
//! Every row is computed from the same `x0` with no warm start from the
//! previous row, so a scan is a pure function of its inputs and can be
//! partitioned across workers freely.

use crate::dynamics::{
    iterate_unchecked, lyapunov_of_points, period_of, Lyapunov, OrbitConfig, OrbitStatus,
    DEFAULT_MAX_PERIOD, DEFAULT_PERIOD_TOL,
};
use crate::error::{Error, Result};
use crate::maps::{Family, MapSpec};
use crate::parallel::ordered_map;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxisParameter {
    Lambda,
    Alpha,
}

/// Uniform grid over one map parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSpec {
    pub parameter: AxisParameter,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl AxisSpec {
    pub fn new(parameter: AxisParameter, min: f64, max: f64, steps: usize) -> Result<Self> {
        let axis = AxisSpec {
            parameter,
            min,
            max,
            steps,
        };
        axis.validate()?;
        Ok(axis)
    }

    /// Degenerate one-point axis.
    pub fn point(parameter: AxisParameter, value: f64) -> Self {
        AxisSpec {
            parameter,
            min: value,
            max: value,
            steps: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::invalid("axis_min", "axis bounds must be finite"));
        }
        match self.steps {
            0 => Err(Error::invalid("steps", "must be positive")),
            1 if self.min == self.max => Ok(()),
            1 => Err(Error::invalid("steps", "a one-step axis needs min = max")),
            _ if self.min < self.max => Ok(()),
            _ => Err(Error::invalid("axis_max", "axis max must exceed axis min")),
        }
    }

    /// Grid values `min + i (max - min)/(steps - 1)`; the last value is `max` exactly.
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let h = (self.max - self.min) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.max
                } else {
                    self.min + i as f64 * h
                }
            })
            .collect()
    }
}

/// Period-detection and parallelism settings shared by every scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSettings {
    pub max_period: usize,
    pub tol: f64,
    /// Worker threads; never affects results.
    pub workers: usize,
}

impl Default for ScanSettings {
    fn default() -> Self {
        ScanSettings {
            max_period: DEFAULT_MAX_PERIOD,
            tol: DEFAULT_PERIOD_TOL,
            workers: 1,
        }
    }
}

impl ScanSettings {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    fn validate(&self, cfg: &OrbitConfig) -> Result<()> {
        if self.max_period == 0 {
            return Err(Error::invalid("max_period", "must be positive"));
        }
        if !(self.tol > 0.0) {
            return Err(Error::invalid("tol", "must be positive"));
        }
        if self.workers == 0 {
            return Err(Error::invalid("workers", "must be positive"));
        }
        if cfg.samples < 2 * self.max_period {
            return Err(Error::invalid(
                "samples",
                format!(
                    "period detection up to {} needs at least {} samples",
                    self.max_period,
                    2 * self.max_period
                ),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub param_value: f64,
    /// Post-transient iterates; empty unless the orbit completed.
    pub attractor_samples: Vec<f64>,
    pub period: Option<usize>,
    pub lyapunov: Lyapunov,
    pub orbit_status: OrbitStatus,
}

fn spec_at(base: &MapSpec, parameter: AxisParameter, value: f64) -> Result<MapSpec> {
    let mut spec = *base;
    match parameter {
        AxisParameter::Lambda => spec.lam = value,
        AxisParameter::Alpha => {
            if base.family != Family::Flm {
                return Err(Error::Configuration(format!(
                    "an alpha axis needs the flm family, got {}",
                    base.family
                )));
            }
            spec.alpha = value;
        }
    }
    spec.validate()?;
    Ok(spec)
}

fn scan_row(
    spec: &MapSpec,
    param_value: f64,
    cfg: &OrbitConfig,
    settings: &ScanSettings,
) -> ScanRow {
    let orbit = iterate_unchecked(spec, cfg);
    if !orbit.status.is_completed() {
        return ScanRow {
            param_value,
            attractor_samples: Vec::new(),
            period: None,
            lyapunov: Lyapunov::Undefined,
            orbit_status: orbit.status,
        };
    }
    let period = period_of(&orbit.points, settings.max_period, settings.tol).period;
    let lyapunov = lyapunov_of_points(spec, &orbit.points);
    ScanRow {
        param_value,
        attractor_samples: orbit.points,
        period,
        lyapunov,
        orbit_status: OrbitStatus::Completed,
    }
}

/// One row per grid value of `axis`, in grid order. Rows whose orbit escaped
/// or left the real domain are kept, with empty samples.
pub fn bifurcation_scan(
    base: &MapSpec,
    axis: &AxisSpec,
    cfg: &OrbitConfig,
    settings: &ScanSettings,
) -> Result<Vec<ScanRow>> {
    axis.validate()?;
    cfg.validate()?;
    settings.validate(cfg)?;
    let points = axis
        .values()
        .into_iter()
        .map(|v| spec_at(base, axis.parameter, v).map(|s| (v, s)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ordered_map(&points, settings.workers, |(v, spec)| {
        scan_row(spec, *v, cfg, settings)
    }))
}

/// Bifurcation scan over `alpha` at fixed `lam`.
pub fn alpha_slice(
    lam: f64,
    alpha_axis: &AxisSpec,
    cfg: &OrbitConfig,
    settings: &ScanSettings,
) -> Result<Vec<ScanRow>> {
    if alpha_axis.parameter != AxisParameter::Alpha {
        return Err(Error::Configuration(
            "alpha slice needs an alpha axis".into(),
        ));
    }
    let base = MapSpec::flm(0.0, lam)?;
    bifurcation_scan(&base, alpha_axis, cfg, settings)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DoublingSequence {
    /// Parameter values where the period doubles from `2^k` to `2^(k+1)`.
    pub bifurcation_params: Vec<f64>,
    /// `(p_k - p_(k-1)) / (p_(k+1) - p_k)` for consecutive triples.
    pub delta_estimates: Vec<f64>,
}

impl DoublingSequence {
    fn from_params(bifurcation_params: Vec<f64>) -> Self {
        let delta_estimates = bifurcation_params
            .windows(3)
            .map(|w| (w[1] - w[0]) / (w[2] - w[1]))
            .collect();
        DoublingSequence {
            bifurcation_params,
            delta_estimates,
        }
    }
}

/// Bisection stops once the bracket is narrower than this.
pub const DOUBLING_PARAM_TOL: f64 = 1e-6;

/// Total iteration budget for settling the period of one bisection point.
const SETTLE_BUDGET: usize = 30_000_000;

/// Grid cells whose period jumps by more than one doubling are resampled
/// this many times finer.
const TIE_REFINEMENT: usize = 8;

/// Locates the first `max_k` period doublings `1 -> 2 -> 4 -> ...` along `axis`.
///
/// The grid scan brackets each transition between a row of period `p` and
/// the next row of a larger power-of-two period. The bracket is then bisected
/// using periods confirmed on progressively longer orbits: an orbit slowly
/// converging onto a `p`-cycle with multiplier near -1 can pass for a
/// `2p`-cycle on a short run, so a period only counts once a run ten times
/// longer reproduces it.
pub fn find_doublings(
    base: &MapSpec,
    axis: &AxisSpec,
    cfg: &OrbitConfig,
    max_k: usize,
    settings: &ScanSettings,
) -> Result<DoublingSequence> {
    if max_k == 0 {
        return Err(Error::invalid("max_k", "must be positive"));
    }
    if 1usize
        .checked_shl(max_k as u32)
        .is_none_or(|top| top > settings.max_period)
    {
        return Err(Error::invalid(
            "max_k",
            "2^max_k must not exceed the maximum detectable period",
        ));
    }
    let rows = bifurcation_scan(base, axis, cfg, settings)?;
    let mut known: Vec<(f64, Option<usize>)> =
        rows.iter().map(|r| (r.param_value, r.period)).collect();

    let settled = |v: f64| -> Result<Option<usize>> {
        let spec = spec_at(base, axis.parameter, v)?;
        Ok(settled_period(&spec, cfg, settings))
    };

    let mut params = Vec::with_capacity(max_k);
    let mut floor = f64::NEG_INFINITY;
    for k in 0..max_k {
        let p = 1usize << k;
        let not_found = Error::TransitionNotFound {
            from: p,
            to: 2 * p,
            min: axis.min,
            max: axis.max,
        };
        let (mut lo, mut hi, above) = bracket(&known, p, floor).ok_or(not_found.clone())?;

        if above != 2 * p {
            let step = (hi - lo) / TIE_REFINEMENT as f64;
            let fine: Vec<f64> = (1..TIE_REFINEMENT).map(|i| lo + i as f64 * step).collect();
            let specs = fine
                .iter()
                .map(|&v| spec_at(base, axis.parameter, v).map(|s| (v, s)))
                .collect::<Result<Vec<_>>>()?;
            let refined = ordered_map(&specs, settings.workers, |(v, spec)| {
                (*v, scan_row(spec, *v, cfg, settings).period)
            });
            insert_sorted(&mut known, refined);
            let b = bracket(&known, p, floor).ok_or(not_found.clone())?;
            lo = b.0;
            hi = b.1;
        }

        // Slide the upper end forward until its period is confirmed above p.
        let mut confirmed_hi = false;
        let candidates: Vec<f64> = known.iter().map(|(v, _)| *v).filter(|v| *v >= hi).collect();
        for v in candidates {
            let q = settled(v)?;
            insert_sorted(&mut known, vec![(v, q)]);
            if matches!(q, Some(q) if q > p) {
                hi = v;
                confirmed_hi = true;
                break;
            }
        }
        if !confirmed_hi {
            return Err(not_found);
        }

        while hi - lo > DOUBLING_PARAM_TOL {
            let mid = 0.5 * (lo + hi);
            let q = settled(mid)?;
            insert_sorted(&mut known, vec![(mid, q)]);
            match q {
                Some(q) if q <= p => lo = mid,
                Some(_) => hi = mid,
                // Closer to the transition than the iteration budget can resolve.
                None => break,
            }
        }
        let at = 0.5 * (lo + hi);
        if at <= floor {
            return Err(not_found);
        }
        params.push(at);
        floor = at;
    }
    Ok(DoublingSequence::from_params(params))
}

/// Last point of period `p` above `floor` followed later by a point whose
/// period is a larger multiple of `p`. Returns `(lo, hi, period_at_hi)`.
fn bracket(known: &[(f64, Option<usize>)], p: usize, floor: f64) -> Option<(f64, f64, usize)> {
    let mut last_p = None;
    for &(v, q) in known.iter().filter(|(v, _)| *v > floor) {
        match q {
            Some(q) if q == p => last_p = Some(v),
            Some(q) if q > p && q % p == 0 && q.is_power_of_two() => {
                if let Some(lo) = last_p {
                    return Some((lo, v, q));
                }
            }
            _ => {}
        }
    }
    None
}

fn insert_sorted(known: &mut Vec<(f64, Option<usize>)>, new: Vec<(f64, Option<usize>)>) {
    for (v, q) in new {
        match known.binary_search_by(|(w, _)| w.total_cmp(&v)) {
            Ok(i) => known[i].1 = q,
            Err(i) => known.insert(i, (v, q)),
        }
    }
}

/// Period that two consecutive runs agree on, the second continuing the
/// first for ten times as long. `None` if nothing settles within the budget
/// or the orbit fails.
fn settled_period(spec: &MapSpec, cfg: &OrbitConfig, settings: &ScanSettings) -> Option<usize> {
    let mut run = *cfg;
    let orbit = iterate_unchecked(spec, &run);
    if !orbit.status.is_completed() {
        return None;
    }
    let mut spent = run.transient + run.samples;
    let mut previous = period_of(&orbit.points, settings.max_period, settings.tol).period;
    let mut last = *orbit.points.last()?;
    let mut extra = cfg.transient.max(1000) * 10;
    while spent + extra + run.samples <= SETTLE_BUDGET {
        run.x0 = last;
        run.transient = extra;
        let orbit = iterate_unchecked(spec, &run);
        if !orbit.status.is_completed() {
            return None;
        }
        spent += extra + run.samples;
        let current = period_of(&orbit.points, settings.max_period, settings.tol).period;
        if current.is_some() && current == previous {
            return current;
        }
        previous = current;
        last = *orbit.points.last()?;
        extra *= 10;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(base: MapSpec, axis: AxisSpec) -> Vec<ScanRow> {
        let cfg = OrbitConfig::for_map(&base);
        bifurcation_scan(&base, &axis, &cfg, &ScanSettings::default()).unwrap()
    }

    #[test]
    fn axis_values_and_validation() {
        let axis = AxisSpec::new(AxisParameter::Lambda, 1.0, 2.0, 5).unwrap();
        assert_eq!(axis.values(), vec![1.0, 1.25, 1.5, 1.75, 2.0]);
        assert_eq!(
            AxisSpec::point(AxisParameter::Alpha, 0.3).values(),
            vec![0.3]
        );
        assert!(AxisSpec::new(AxisParameter::Lambda, 2.0, 1.0, 5).is_err());
        assert!(AxisSpec::new(AxisParameter::Lambda, 1.0, 1.0, 5).is_err());
        assert!(AxisSpec::new(AxisParameter::Lambda, 1.0, 2.0, 0).is_err());
        assert!(AxisSpec::new(AxisParameter::Lambda, 1.0, 2.0, 1).is_err());
    }

    #[test]
    fn alpha_axis_on_ricker_is_a_configuration_error() {
        let base = MapSpec::ricker(2.0, 1.0).unwrap();
        let axis = AxisSpec::new(AxisParameter::Alpha, 0.0, 1.0, 3).unwrap();
        let cfg = OrbitConfig::for_map(&base);
        let err = bifurcation_scan(&base, &axis, &cfg, &ScanSettings::default()).unwrap_err();
        assert!(matches!(err, Error::Configuration(_)));
    }

    #[test]
    fn invalid_grid_values_are_rejected() {
        let base = MapSpec::logistic(2.0).unwrap();
        let axis = AxisSpec::new(AxisParameter::Lambda, -1.0, 2.0, 4).unwrap();
        let cfg = OrbitConfig::for_map(&base);
        let err = bifurcation_scan(&base, &axis, &cfg, &ScanSettings::default()).unwrap_err();
        assert_eq!(err.field(), Some("lam"));
    }

    #[test]
    fn too_few_samples_for_max_period() {
        let base = MapSpec::logistic(2.0).unwrap();
        let axis = AxisSpec::point(AxisParameter::Lambda, 3.0);
        let cfg = OrbitConfig::for_map(&base).with_samples(100);
        let err = bifurcation_scan(&base, &axis, &cfg, &ScanSettings::default()).unwrap_err();
        assert_eq!(err.field(), Some("samples"));
    }

    #[test]
    fn alpha_zero_row_matches_classic_row() {
        for lam in [2.9, 3.5, 3.9] {
            let flm = rows(
                MapSpec::flm(0.3, lam).unwrap(),
                AxisSpec::point(AxisParameter::Alpha, 0.0),
            );
            let classic = rows(
                MapSpec::logistic(lam).unwrap(),
                AxisSpec::point(AxisParameter::Lambda, lam),
            );
            assert_eq!(flm[0].attractor_samples, classic[0].attractor_samples);
            assert_eq!(flm[0].period, classic[0].period);
            assert_eq!(flm[0].lyapunov, classic[0].lyapunov);
        }
    }

    #[test]
    fn domain_violation_rows_are_kept() {
        // Beyond lam ~= 6.4 the semi-logistic maximum exceeds its upper zero.
        let base = MapSpec::flm(0.5, 5.0).unwrap();
        let axis = AxisSpec::new(AxisParameter::Lambda, 6.0, 7.5, 4).unwrap();
        let r = rows(base, axis);
        assert_eq!(r.len(), 4);
        let bad: Vec<_> = r
            .iter()
            .filter(|r| !r.orbit_status.is_completed())
            .collect();
        assert!(!bad.is_empty());
        for row in bad {
            assert!(matches!(
                row.orbit_status,
                OrbitStatus::DomainViolation { .. }
            ));
            assert!(row.attractor_samples.is_empty());
            assert_eq!(row.period, None);
        }
        assert!(r[0].orbit_status.is_completed());
    }

    #[test]
    fn alpha_slice_rows() {
        let cfg = OrbitConfig::for_map(&MapSpec::flm(1.0, 5.0).unwrap());
        let settings = ScanSettings::default();
        let axis = AxisSpec::new(AxisParameter::Alpha, 0.4, 0.6, 3).unwrap();
        let r = alpha_slice(5.0, &axis, &cfg, &settings).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|row| row.orbit_status.is_completed()));

        let wide = AxisSpec::new(AxisParameter::Alpha, 0.0, 1.0, 21).unwrap();
        let r = alpha_slice(5.0, &wide, &cfg, &settings).unwrap();
        assert_eq!(r.len(), 21);
        assert!(r.iter().any(|row| !row.orbit_status.is_completed()));
        assert!(r.iter().any(|row| row.orbit_status.is_completed()));

        let lambda_axis = AxisSpec::point(AxisParameter::Lambda, 1.0);
        assert!(alpha_slice(5.0, &lambda_axis, &cfg, &settings).is_err());
    }

    #[test]
    fn worker_count_does_not_change_rows() {
        let base = MapSpec::flm(0.5, 5.0).unwrap();
        let axis = AxisSpec::new(AxisParameter::Lambda, 4.5, 6.1, 97).unwrap();
        let cfg = OrbitConfig::for_map(&base);
        let serial = bifurcation_scan(&base, &axis, &cfg, &ScanSettings::default()).unwrap();
        let wide =
            bifurcation_scan(&base, &axis, &cfg, &ScanSettings::default().with_workers(4)).unwrap();
        assert_eq!(serial, wide);
    }

    #[test]
    fn bracket_picks_last_p_before_first_doubled() {
        let known = vec![
            (1.0, Some(1)),
            (2.0, Some(1)),
            (3.0, None),
            (4.0, Some(2)),
            (5.0, Some(4)),
        ];
        assert_eq!(bracket(&known, 1, f64::NEG_INFINITY), Some((2.0, 4.0, 2)));
        assert_eq!(bracket(&known, 2, 2.5), Some((4.0, 5.0, 4)));
        assert_eq!(bracket(&known, 4, 2.5), None);
    }

    #[test]
    fn delta_from_params() {
        let d = DoublingSequence::from_params(vec![3.0, 3.449_49, 3.544_09]);
        assert_eq!(d.delta_estimates.len(), 1);
        assert!((d.delta_estimates[0] - 4.751).abs() < 1e-2);
    }

    #[test]
    fn doublings_fail_outside_cascade() {
        let base = MapSpec::logistic(2.0).unwrap();
        let axis = AxisSpec::new(AxisParameter::Lambda, 2.0, 2.9, 50).unwrap();
        let cfg = OrbitConfig::for_map(&base);
        let err = find_doublings(&base, &axis, &cfg, 1, &ScanSettings::default()).unwrap_err();
        assert!(matches!(
            err,
            Error::TransitionNotFound { from: 1, to: 2, .. }
        ));
    }
}
