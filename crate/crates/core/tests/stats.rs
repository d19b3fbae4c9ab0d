use gbmux::stats::{self, dynamic_stats, monte_carlo_stats, reference_exact};
use gbmux::stellar::jump::{JumpRule, StellarSpec};
use num_rational::Ratio;
use proptest::prelude::*;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// Mean change per plane when the view must differ from the current one in
/// the listed circular distances, orbit chosen freely: sum over all views
/// of |p - q|^2 is N (a^2 + b^2), minus the excluded ones.
fn plane_change_oracle(n: usize, rho: f64, excluded: &[usize]) -> f64 {
    let radii = [1.0, rho];
    let dphi = 2.0 * std::f64::consts::PI / n as f64;
    let mut total = 0.0;
    for &a in &radii {
        for &b in &radii {
            let mut s = n as f64 * (a * a + b * b);
            let mut count = n;
            for d in 0..n {
                let dist = d.min(n - d);
                if excluded.contains(&dist) {
                    s -= a * a + b * b - 2.0 * a * b * (d as f64 * dphi).cos();
                    count -= 1;
                }
            }
            total += s / count as f64;
        }
    }
    total / 4.0
}

#[test]
fn reference_exact_values() {
    let (p, c) = reference_exact();
    assert_eq!(p.mean, Ratio::new(5, 16));
    assert_eq!(c.mean, Ratio::new(7, 64));
    assert_eq!(c.peak_max, Ratio::new(9, 16));
    assert_eq!((p.peak_min, p.peak_max), (Ratio::from_integer(0), Ratio::from_integer(1)));
    let r = stats::reference_stats();
    assert!(r.power.mean >= 0.3120 && r.power.mean <= 0.3128);
    assert!(r.power.sigma >= 0.1505 && r.power.sigma <= 0.1515);
    assert!(close(r.change.sigma, 0.064, 0.001));
}

#[test]
fn ideal_rows_against_closed_form() {
    for (pts, mu) in [(4.0, 0.349), (4.5, 0.357), (5.0, 0.372)] {
        let rho = (4.0f64 * mu - 1.0).sqrt();
        let spec = StellarSpec::from_points(pts, rho).unwrap();
        let n = spec.views;
        let cases: [(JumpRule, Vec<usize>, Vec<usize>); 4] = [
            (JumpRule::STATIC, vec![], vec![]),
            (JumpRule::one_way(1), vec![0], vec![]),
            (JumpRule::two_way(1), vec![0], vec![0]),
            (JumpRule::STATIC.with_diagonal(), vec![n / 2], vec![n / 2]),
        ];
        for (rule, ab, cd) in cases {
            let d = dynamic_stats(&spec, rule).unwrap();
            let want = (plane_change_oracle(n, rho, &ab) + plane_change_oracle(n, rho, &cd)) / 16.0;
            assert!(close(d.report.change.mean, want, 1e-9), "{pts} {rule} {} {want}", d.report.change.mean);
            assert!(d.residual < 1e-12);
            assert_eq!(d.report.power.sigma, 0.0);
            assert_eq!(d.report.wobble.unwrap(), stats::Moments::ZERO);
        }
    }
}

#[test]
fn ideal_rows_match_published() {
    // (pts, mean, rule, c_mean, c_min, c_max)
    let rows = [
        (4.0, 0.349, "static", 0.174, 0.0, 0.349),
        (4.5, 0.357, "static", 0.178, 0.0, 0.357),
        (4.5, 0.357, "gj", 0.183, 0.003, 0.357),
        (4.5, 0.357, "gj+", 0.188, 0.011, 0.357),
        (4.5, 0.357, "d", 0.168, 0.0, 0.346),
        (5.0, 0.372, "static", 0.186, 0.0, 0.372),
        (5.0, 0.372, "gj", 0.191, 0.003, 0.372),
        (5.0, 0.372, "gj+", 0.196, 0.009, 0.372),
        (5.0, 0.372, "d", 0.177, 0.0, 0.363),
        (5.0, 0.372, "gj+d", 0.186, 0.009, 0.363),
    ];
    for (pts, mu, rule, cm, cmin, cmax) in rows {
        let rho = (4.0f64 * mu - 1.0).sqrt();
        let spec = StellarSpec::from_points(pts, rho).unwrap();
        let d = dynamic_stats(&spec, JumpRule::parse(rule).unwrap()).unwrap();
        let c = d.report.change;
        assert!(close(d.report.power.mean, mu, 1e-9));
        assert!(close(c.mean, cm, 0.0015), "{pts} {rule} mean {}", c.mean);
        assert!(close(c.peak_min, cmin, 0.0015), "{pts} {rule} min {}", c.peak_min);
        assert!(close(c.peak_max, cmax, 0.0015), "{pts} {rule} max {}", c.peak_max);
    }
}

#[test]
fn rule_gains_match_thresholds() {
    let spec = |pts: f64| StellarSpec::from_points(pts, 0.7).unwrap();
    let g = |pts, r: &str| JumpRule::parse(r).unwrap().gain(&spec(pts)).unwrap();
    assert!(close(g(4.5, "gj"), 0.496, 0.001));
    assert!(close(g(4.5, "gj+"), 0.711, 0.001));
    assert!(close(g(5.0, "gj"), 0.446, 0.001));
    assert!(close(g(5.0, "gj+"), 0.637, 0.001));
    assert!(close(g(5.0, "g2j"), 0.915, 0.001));
}

#[test]
fn monte_carlo_tracks_exact() {
    let spec = StellarSpec::from_points(5.0, 0.6986).unwrap();
    let rule = JumpRule::two_way(1);
    let exact = dynamic_stats(&spec, rule).unwrap().report.change.mean;
    let (mc, se) = monte_carlo_stats(&spec, rule, 200_000, Some(7)).unwrap();
    assert!((mc.change.mean - exact).abs() < 5.0 * se);
    let (again, _) = monte_carlo_stats(&spec, rule, 200_000, Some(7)).unwrap();
    assert_eq!(again.change.mean, mc.change.mean);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn static_change_is_half_power(n in 4usize..14, rho in 0.2f64..1.0) {
        let spec = StellarSpec::new(n, rho).unwrap();
        let d = dynamic_stats(&spec, JumpRule::STATIC).unwrap();
        prop_assert!((d.report.change.mean - d.report.power.mean / 2.0).abs() < 1e-12);
        prop_assert_eq!(d.report.change.peak_min, 0.0);
    }

    #[test]
    fn stationary_under_builtin_rules(n in 6usize..14, rho in 0.2f64..1.0, which in 0usize..5) {
        let spec = StellarSpec::new(n, rho).unwrap();
        let rule = [
            JumpRule::STATIC,
            JumpRule::one_way(1),
            JumpRule::two_way(1),
            JumpRule::STATIC.with_diagonal(),
            JumpRule::two_way(1).with_diagonal(),
        ][which];
        let d = dynamic_stats(&spec, rule).unwrap();
        prop_assert!(d.residual < 1e-12);
        let r = d.report.power;
        prop_assert!(0.0 <= r.peak_min && r.peak_min <= r.mean && r.mean <= r.peak_max && r.peak_max <= 1.0);
        if rule.ab_min > 0 {
            prop_assert!(d.report.change.peak_min > 0.0);
        }
    }
}
