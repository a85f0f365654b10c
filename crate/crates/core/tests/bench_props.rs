use chebenclose::bench::{
    decay_bound, gen_decaying_coeffs, mean_correct_digits, median, run_benchmark, sample_points,
    status_count, BenchConfig, BOUNDARY_THRESHOLD,
};
use chebenclose::{Method, Status};
use proptest::prelude::*;

fn small(seed: u64) -> BenchConfig {
    BenchConfig {
        degree: 40,
        num_points: 25,
        seed,
        repeats: 1,
        coeff_radius: 1e-14,
        point_radius: 1e-13,
        ..Default::default()
    }
}

fn strip_timing(r: &chebenclose::bench::BenchReport) -> Vec<(usize, u64, u64, Method, Status)> {
    r.rows()
        .map(|row| {
            (
                row.point_id,
                row.result.value.inf().to_bits(),
                row.result.value.sup().to_bits(),
                row.result.method,
                row.result.status,
            )
        })
        .collect()
}

#[test]
fn three_points_give_twelve_records() {
    let cfg = BenchConfig {
        degree: 2,
        num_points: 3,
        repeats: 1,
        ..Default::default()
    };
    let r = run_benchmark(&cfg).unwrap();
    assert_eq!(r.rows().count(), 12);
    assert_eq!(r.summaries.len(), 4);
}

#[test]
fn single_method_reports_only_that_method() {
    let cfg = BenchConfig {
        methods: vec![Method::LaurentHorner],
        ..small(3)
    };
    let r = run_benchmark(&cfg).unwrap();
    assert!(r
        .rows()
        .all(|row| row.result.method == Method::LaurentHorner));
}

#[test]
fn thread_cap_does_not_change_results() {
    let a = run_benchmark(&small(11)).unwrap();
    let b = run_benchmark(&BenchConfig {
        threads: Some(1),
        ..small(11)
    })
    .unwrap();
    assert_eq!(strip_timing(&a), strip_timing(&b));
}

#[test]
fn unbounded_clenshaw_count_grows_with_degree() {
    let mut prev = 0;
    for degree in [64, 256, 1024, 4096] {
        let cfg = BenchConfig {
            degree,
            num_points: 60,
            seed: 5,
            repeats: 1,
            methods: vec![Method::ClenshawInterval],
            ..Default::default()
        };
        let n = status_count(
            &run_benchmark(&cfg).unwrap(),
            Method::ClenshawInterval,
            Status::Unbounded,
        );
        assert!(n >= prev, "degree {degree}: {n} < {prev}");
        prev = n;
    }
    assert!(prev > 0);
}

#[test]
fn invalid_configs_are_rejected() {
    for cfg in [
        BenchConfig {
            num_points: 0,
            ..Default::default()
        },
        BenchConfig {
            decay_rho: 1.0,
            ..Default::default()
        },
        BenchConfig {
            boundary_bias: 1.5,
            ..Default::default()
        },
        BenchConfig {
            coeff_radius: -1.0,
            ..Default::default()
        },
        BenchConfig {
            methods: vec![],
            ..Default::default()
        },
    ] {
        assert!(run_benchmark(&cfg).is_err(), "{cfg:?}");
    }
}

#[test]
fn digits_metric_examples() {
    assert_eq!(mean_correct_digits(&[1e-10; 5]).mean, Some(10.0));
    assert_eq!(mean_correct_digits(&[1e-8, 1e-12]).mean, Some(10.0));
    let s = mean_correct_digits(&[1e-8, f64::INFINITY, 0.0]);
    assert_eq!((s.mean, s.included, s.excluded), (Some(8.0), 1, 2));
    assert_eq!(median(&[3.0, f64::INFINITY, 1.0]), Some(3.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reports_are_deterministic(seed in any::<u64>()) {
        let a = run_benchmark(&small(seed)).unwrap();
        let b = run_benchmark(&small(seed)).unwrap();
        prop_assert_eq!(strip_timing(&a), strip_timing(&b));
        prop_assert_eq!(a.points.len(), 25);
    }

    #[test]
    fn generated_coefficients_respect_the_decay_bound(seed in any::<u64>(), rho in 1.001f64..2.0) {
        let p = gen_decaying_coeffs(200, rho, 0.0, seed);
        for (k, c) in p.coeffs().iter().enumerate() {
            prop_assert!(c.mag() <= decay_bound(rho, k));
        }
    }

    #[test]
    fn boundary_share_is_met(seed in any::<u64>(), n in 1usize..300, bias in 0.0f64..=1.0) {
        let pts = sample_points(n, 0.0, bias, seed);
        let boundary = pts.iter().filter(|p| p.t.abs() > BOUNDARY_THRESHOLD).count();
        prop_assert_eq!(pts.len(), n);
        prop_assert!(boundary >= (bias * n as f64).ceil() as usize);
        prop_assert!(pts.iter().all(|p| p.t.abs() <= 1.0));
    }
}
