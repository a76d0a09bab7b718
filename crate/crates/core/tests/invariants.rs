use fraclog_core::*;
use proptest::prelude::*;

/// ln Γ by upward shift to z >= 40 followed by the Stirling series.
fn ln_gamma_oracle(x: f64) -> f64 {
    let mut z = x;
    let mut shift = 0.0;
    while z < 40.0 {
        shift += z.ln();
        z += 1.0;
    }
    let z2 = z * z;
    let series = 1.0 / (12.0 * z) - 1.0 / (360.0 * z * z2) + 1.0 / (1260.0 * z * z2 * z2)
        - 1.0 / (1680.0 * z * z2 * z2 * z2);
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * std::f64::consts::PI).ln() + series - shift
}

fn g(x: f64) -> f64 {
    gamma(GammaArg::new(x).unwrap())
}

#[test]
fn gamma_matches_stirling_oracle_on_grid() {
    for i in 0..=190 {
        let x = 0.5 + 0.05 * i as f64;
        let want = ln_gamma_oracle(x).exp();
        let rel = ((g(x) - want) / want).abs();
        assert!(rel <= 1e-13, "x={x}: rel {rel:e}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gamma_recurrence(x in 0.5..8.0f64) {
        let rel = ((g(x + 1.0) - x * g(x)) / g(x + 1.0)).abs();
        prop_assert!(rel <= 1e-12, "rel {:e}", rel);
    }

    #[test]
    fn gamma_positive(x in 1e-3..12.0f64) {
        prop_assert!(g(x) > 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn fixed_points_solve_both_forms(alpha in 0.0..1.0f64, lam in 0.5..6.5f64) {
        let set = fixed_points(alpha, lam).unwrap();
        prop_assert!(set.includes_origin);
        for r in &set.roots {
            let res = check_fixed_point_identity(alpha, lam, r.x).unwrap();
            prop_assert!(res <= 1e-10, "alpha={} lam={} x={} res={:e}", alpha, lam, r.x, res);
            prop_assert!(r.x > 0.0 && r.x <= flm_upper_zero(alpha));
        }
    }

    #[test]
    fn quadrature_matches_closed_form(alpha in 0.2..1.5f64, lam in 1.0..6.0f64, x in 0.1..2.0f64) {
        let q = rl_integral_logistic(alpha, lam, x, &QuadratureSpec::default()).unwrap();
        let c = flm_eval(alpha, lam, x).unwrap();
        prop_assert!(((q.value - c) / c).abs() <= 1e-7);
        prop_assert!(q.est_rel_error >= 0.0 && q.nodes_used > 0);
    }

    #[test]
    fn orbits_stay_in_invariant_interval(lam_idx in 0usize..4, x0 in 0.001..1.249f64) {
        let lam = [4.5, 5.0, 5.5, 6.0][lam_idx];
        let spec = MapSpec::flm(0.5, lam).unwrap();
        let xc = 0.75;
        prop_assert!(spec.eval(xc).unwrap() <= 1.25);
        let cfg = OrbitConfig::for_map(&spec).with_x0(x0).with_transient(500).with_samples(500);
        let orbit = iterate(&spec, &cfg).unwrap();
        prop_assert_eq!(orbit.status, OrbitStatus::Completed);
        prop_assert!(orbit.points.iter().all(|&x| (0.0..=1.25).contains(&x)));
    }

    #[test]
    fn orbits_are_deterministic(lam in 2.5..4.0f64, x0 in 0.05..0.95f64) {
        let spec = MapSpec::logistic(lam).unwrap();
        let cfg = OrbitConfig::for_map(&spec).with_x0(x0);
        let a = iterate(&spec, &cfg).unwrap();
        let b = iterate(&spec, &cfg).unwrap();
        let bits = |o: &Orbit| o.points.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        prop_assert_eq!(bits(&a), bits(&b));
    }
}

fn classic_rows(lo: f64, hi: f64, steps: usize) -> Vec<ScanRow> {
    let base = MapSpec::logistic(lo).unwrap();
    let axis = AxisSpec::new(AxisParameter::Lambda, lo, hi, steps).unwrap();
    let cfg = OrbitConfig::for_map(&base)
        .with_transient(20_000)
        .with_samples(512);
    bifurcation_scan(&base, &axis, &cfg, &ScanSettings::default()).unwrap()
}

#[test]
fn classic_periods_double_monotonically() {
    let rows = classic_rows(2.8, 3.56, 381);
    let periods: Vec<usize> = rows.iter().filter_map(|r| r.period).collect();
    assert!(periods.len() > 300);
    for w in periods.windows(2) {
        assert!(w[1] == w[0] || w[1] == 2 * w[0], "{} -> {}", w[0], w[1]);
    }
    assert_eq!(periods[0], 1);
    assert_eq!(*periods.last().unwrap(), 8);
}

#[test]
fn lyapunov_sign_follows_period() {
    // lambda = 4 from x0 = 0.5 lands on the repelling fixed point 0.
    let rows = classic_rows(2.8, 3.99, 239);
    let mut chaotic = 0;
    for r in &rows {
        match (r.period, r.lyapunov) {
            (Some(_), Lyapunov::Value(l)) => assert!(l <= 0.02, "lambda={} l={l}", r.param_value),
            (None, Lyapunov::Value(l)) if l > 0.0 => chaotic += 1,
            _ => {}
        }
    }
    assert!(chaotic > 20);
}

#[test]
fn periodic_rows_have_at_most_period_distinct_values() {
    let base = MapSpec::flm(0.5, 4.5).unwrap();
    let axis = AxisSpec::new(AxisParameter::Lambda, 4.5, 6.1, 321).unwrap();
    let cfg = OrbitConfig::for_map(&base);
    let rows = bifurcation_scan(&base, &axis, &cfg, &ScanSettings::default()).unwrap();
    for r in rows {
        let Some(p) = r.period else { continue };
        let mut distinct: Vec<f64> = Vec::new();
        for &x in &r.attractor_samples {
            if !distinct
                .iter()
                .any(|&d| (d - x).abs() <= 1e-9 * d.abs().max(1.0))
            {
                distinct.push(x);
            }
        }
        assert!(
            distinct.len() <= p,
            "lambda={}: {} values, period {p}",
            r.param_value,
            distinct.len()
        );
    }
}

#[test]
fn scan_is_repeatable_and_worker_independent() {
    let base = MapSpec::flm(0.5, 4.5).unwrap();
    let axis = AxisSpec::new(AxisParameter::Lambda, 4.5, 6.1, 161).unwrap();
    let cfg = OrbitConfig::for_map(&base);
    let serial = bifurcation_scan(&base, &axis, &cfg, &ScanSettings::default()).unwrap();
    let again = bifurcation_scan(&base, &axis, &cfg, &ScanSettings::default()).unwrap();
    let wide =
        bifurcation_scan(&base, &axis, &cfg, &ScanSettings::default().with_workers(4)).unwrap();
    assert_eq!(serial, again);
    assert_eq!(serial, wide);
}

#[test]
fn alpha_zero_slice_reproduces_classic_map() {
    let axis = AxisSpec::point(AxisParameter::Alpha, 0.0);
    let cfg = OrbitConfig::for_map(&MapSpec::logistic(3.5).unwrap());
    let slice = alpha_slice(3.5, &axis, &cfg, &ScanSettings::default()).unwrap();
    assert_eq!(slice[0].period, Some(4));
}
