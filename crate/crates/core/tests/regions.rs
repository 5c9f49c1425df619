use pinch_core::regions::{boundary_circle, exact_boundary_x, mismatch_area, optimize_partition, RegionPartition};
use pinch_core::system::{select_pa, snr_linear};
use pinch_core::{PaLayout, SystemConfig, UserPosition};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn config(d_x: f64, alpha: f64) -> SystemConfig {
    let mut c = SystemConfig::new(d_x);
    c.alpha = alpha;
    c
}

fn random_users(cfg: &SystemConfig, n: usize, seed: u64) -> impl Iterator<Item = UserPosition> + '_ {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(move |_| {
        let x = rng.random::<f64>() * cfg.d_x;
        let y = (rng.random::<f64>() - 0.5) * cfg.d_y;
        UserPosition::new(x, y)
    })
}

#[test]
fn lossless_rectangles_are_exact() {
    let cfg = config(20.0, 0.0);
    for m in [1, 2, 3, 7] {
        let layout = PaLayout::new(20.0, m).unwrap();
        let part = optimize_partition(&cfg, &layout);
        assert_eq!(part, RegionPartition::symmetric(&layout));
        for user in random_users(&cfg, 20_000, m as u64) {
            assert_eq!(part.region_of(user.x_m), select_pa(&cfg, &layout, user));
        }
    }
}

#[test]
fn mismatch_bounds_misassignment() {
    // The misassigned fraction of uniform users estimates mismatch_area / (D_x·D_y);
    // allow four binomial standard errors of sampling noise on top.
    let n = 100_000;
    for (d_x, m, alpha) in [(10.0, 10, 0.05), (30.0, 5, 0.05), (30.0, 10, 0.1), (20.0, 4, 0.01)] {
        let cfg = config(d_x, alpha);
        let layout = PaLayout::new(d_x, m).unwrap();
        let part = optimize_partition(&cfg, &layout);
        let eps = mismatch_area(&cfg, &layout, &part) / (d_x * cfg.d_y);
        let wrong = random_users(&cfg, n, 11)
            .filter(|u| part.region_of(u.x_m) != select_pa(&cfg, &layout, *u))
            .count();
        let frac = wrong as f64 / n as f64;
        let slack = 4.0 * (eps * (1.0 - eps) / n as f64).sqrt();
        assert!(frac <= eps + slack, "D_x={d_x} M={m} α={alpha}: {frac} > {eps} + {slack}");
    }
}

#[test]
fn horizontal_deviation_is_the_circle_sagitta() {
    let half = 5.0;
    for alpha in [0.01, 0.05, 0.1] {
        for delta in [1.0, 3.0, 6.0] {
            let m = 4;
            let cfg = config(delta * m as f64, alpha);
            let layout = PaLayout::new(cfg.d_x, m).unwrap();
            let circle = boundary_circle(&cfg, &layout, 1).unwrap();
            let at_axis = exact_boundary_x(&cfg, &layout, 1, 0.0).unwrap();
            let deviation = (-5..=5)
                .map(|i: i32| exact_boundary_x(&cfg, &layout, 1, i as f64).unwrap() - at_axis)
                .fold(0.0f64, |a, d| a.max(d.abs()));
            let rho = circle.radius;
            let sagitta = rho - (rho * rho - half * half).sqrt();
            assert!((deviation - sagitta).abs() < 1e-9, "α={alpha} δ={delta}");
            assert!(deviation <= half * half / rho);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partition_invariants(d_x in 2.0f64..60.0, m in 1usize..12, alpha in 0.0f64..0.15) {
        let cfg = config(d_x, alpha);
        let layout = PaLayout::new(d_x, m).unwrap();
        let part = optimize_partition(&cfg, &layout);
        let b = part.boundaries();
        prop_assert_eq!(b[0], 0.0);
        prop_assert_eq!(b[m], d_x);
        prop_assert!(b.windows(2).all(|w| w[0] < w[1]));
        for k in 0..m {
            prop_assert!(part.left_limits()[k] > 0.0 && part.right_limits()[k] > 0.0);
            if k + 1 < m {
                prop_assert!(b[k + 1] > layout.x(k) && b[k + 1] < layout.x(k + 1));
            }
        }
        let total: f64 = part.left_limits().iter().chain(part.right_limits()).sum();
        prop_assert!((total - d_x).abs() <= 1e-12 * d_x);
        if m == 1 {
            prop_assert_eq!(part.left_limits()[0], layout.x(0));
            prop_assert_eq!(part.right_limits()[0], d_x - layout.x(0));
        }
    }

    #[test]
    fn exact_boundary_residual(d_x in 2.0f64..60.0, m in 2usize..12, alpha in 1e-4f64..0.15, fy in -0.5f64..0.5) {
        let cfg = config(d_x, alpha);
        let layout = PaLayout::new(d_x, m).unwrap();
        let k = m / 2 - 1;
        let y = fy * cfg.d_y;
        let x = exact_boundary_x(&cfg, &layout, k, y).unwrap();
        prop_assert!(x > layout.x(k));
        let reaches = boundary_circle(&cfg, &layout, k).is_ok_and(|c| y.abs() < c.radius);
        if reaches {
            let u = UserPosition::new(x, y);
            let a = snr_linear(&cfg, &layout, k, u).unwrap();
            let b = snr_linear(&cfg, &layout, k + 1, u).unwrap();
            prop_assert!((a - b).abs() / a <= 1e-12);
        }
    }
}
