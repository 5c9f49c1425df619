//! Quick oracle-equivalence checks run by `pinch selftest`.
//!
//! Each check compares a closed form against brute-force quadrature, grid
//! search or simulation at a handful of seeded random points.

use pinch_core::metrics::{c_l, continuous_optimal_position, i_i, i_j, outage_probability, p_l};
use pinch_core::montecarlo::{simulate_outage, simulate_rate, SimQuantity, Sampler};
use pinch_core::regions::optimize_partition;
use pinch_core::specfun::{dilog, ti2};
use pinch_core::{PaLayout, SimulationSpec, SystemConfig, UserPosition};
use pinch_oracle::reference;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::parallel::simulate_parallel;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, worst: f64, limit: f64) -> CheckResult {
    CheckResult {
        name,
        passed: worst <= limit,
        detail: format!("worst {worst:.3e}, limit {limit:.0e}"),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

pub fn run_selftest() -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    vec![
        special_functions(),
        table_regimes(&mut rng),
        closed_form_integrals(&mut rng),
        side_rate(&mut rng),
        continuous_position(&mut rng),
        single_pa_simulation(),
        parallel_determinism(),
    ]
}

fn special_functions() -> CheckResult {
    let worst = rel(ti2(1.0), pinch_oracle::catalan())
        .max(rel(ti2(7.5), pinch_oracle::inverse_tangent_integral(7.5)))
        .max(rel(dilog(0.5).unwrap_or(f64::NAN), pinch_oracle::dilogarithm(0.5)));
    check("special functions vs quadrature", worst, 1e-10)
}

fn table_regimes(rng: &mut ChaCha8Rng) -> CheckResult {
    let mut worst: f64 = 0.0;
    for _ in 0..60 {
        let delta = 0.2 + 10.0 * rng.random::<f64>();
        let d_y = 1.0 + 15.0 * rng.random::<f64>();
        let a = (rng.random::<f64>() * 1.2 - 0.1) * (delta * delta + 0.25 * d_y * d_y);
        worst = worst.max((p_l(delta, a, d_y) - reference::outage_fraction(delta, a, d_y)).abs());
    }
    check("outage fraction vs indicator quadrature", worst, 1e-6)
}

fn closed_form_integrals(rng: &mut ChaCha8Rng) -> CheckResult {
    let mut worst: f64 = 0.0;
    for _ in 0..60 {
        let delta = 10f64.powf(-1.5 + 3.0 * rng.random::<f64>());
        let d_y = 10f64.powf(1.5 * rng.random::<f64>());
        let x = delta * delta * 10f64.powf(-3.0 + 15.0 * rng.random::<f64>());
        worst = worst
            .max(rel(i_i(x, delta, d_y), reference::i_i(x, delta, d_y)))
            .max(rel(i_j(x, delta, d_y), reference::i_j(x, delta, d_y)));
    }
    check("I_i, I_j vs quadrature", worst, 1e-8)
}

fn side_rate(rng: &mut ChaCha8Rng) -> CheckResult {
    let mut worst: f64 = 0.0;
    for _ in 0..8 {
        let mut cfg = SystemConfig::new(30.0);
        cfg.h = 5.0 * rng.random::<f64>();
        let delta = 0.2 + 10.0 * rng.random::<f64>();
        let c0 = 10f64.powf(-2.0 + 7.0 * rng.random::<f64>());
        worst = worst.max(rel(c_l(delta, c0, &cfg), reference::side_rate(delta, c0, cfg.h, cfg.d_y)));
    }
    check("side rate vs 2-D quadrature", worst, 1e-6)
}

fn continuous_position(rng: &mut ChaCha8Rng) -> CheckResult {
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let mut cfg = SystemConfig::new(30.0);
        cfg.alpha = 0.2 * rng.random::<f64>();
        let user = UserPosition::new(30.0 * rng.random::<f64>(), (rng.random::<f64>() - 0.5) * cfg.d_y);
        let d_sq = user.y_m * user.y_m + cfg.h * cfg.h;
        let want = reference::best_position(cfg.alpha, user.x_m, d_sq, cfg.d_x);
        worst = worst.max((continuous_optimal_position(&cfg, user) - want).abs());
    }
    check("continuous placement vs grid search", worst, 1e-6)
}

fn single_pa_simulation() -> CheckResult {
    // One PA: the rectangle is the whole room, so the closed forms are exact.
    let mut cfg = SystemConfig::new(10.0);
    cfg.gamma_t_db = 96.0;
    let layout = PaLayout::new(10.0, 1).expect("valid layout");
    let partition = optimize_partition(&cfg, &layout);
    let spec = SimulationSpec::new(200_000, 1, 1 << 14).expect("valid spec");
    let analytic = outage_probability(&cfg, &layout, &partition).map(|r| r.value).unwrap_or(f64::NAN);
    let sim = simulate_outage(&cfg, &layout, &spec);
    let z = (analytic - sim.mean).abs() / sim.std_error;
    let rate = pinch_core::metrics::ergodic_rate(&cfg, &layout, &partition).map(|r| r.value).unwrap_or(f64::NAN);
    let sim_rate = simulate_rate(&cfg, &layout, &spec);
    let rate_err = rel(rate, sim_rate.mean);
    CheckResult {
        name: "single-PA closed forms vs simulation",
        passed: z <= 4.0 && rate_err <= 5e-3,
        detail: format!("outage z = {z:.2}, rate relative error {rate_err:.2e}"),
    }
}

fn parallel_determinism() -> CheckResult {
    let cfg = SystemConfig::new(20.0);
    let layout = PaLayout::new(20.0, 4).expect("valid layout");
    let spec = SimulationSpec::new(100_000, 3, 7_000).expect("valid spec");
    let sampler = Sampler::new(&cfg, &layout, SimQuantity::Rate);
    let serial = sampler.run(&spec);
    let parallel = simulate_parallel(&sampler, &spec);
    CheckResult {
        name: "parallel simulation matches serial",
        passed: serial == parallel,
        detail: format!("serial {:.17e}, parallel {:.17e}", serial.mean, parallel.mean),
    }
}
