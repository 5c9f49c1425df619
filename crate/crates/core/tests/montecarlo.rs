use pinch_core::metrics::{continuous_rate, outage_probability};
use pinch_core::montecarlo::{simulate_continuous_rate, simulate_outage, simulate_rate, SimQuantity, Sampler};
use pinch_core::regions::optimize_partition;
use pinch_core::system::derive_rf;
use pinch_core::{PaLayout, SimulationSpec, SystemConfig, UserPosition};

fn config(d_x: f64, alpha: f64, gamma_t_db: f64) -> SystemConfig {
    let mut c = SystemConfig::new(d_x);
    c.alpha = alpha;
    c.gamma_t_db = gamma_t_db;
    c
}

#[test]
fn chunk_order_does_not_matter() {
    let cfg = config(10.0, 0.05, 100.0);
    let layout = PaLayout::new(10.0, 3).unwrap();
    let spec = SimulationSpec::new(50_000, 42, 3000).unwrap();
    let sampler = Sampler::new(&cfg, &layout, SimQuantity::Rate);
    let serial = sampler.run(&spec);
    // Evaluate chunks back to front, then merge in chunk order.
    let mut chunks: Vec<_> = (0..spec.n_chunks()).rev().map(|i| (i, sampler.run_chunk(&spec, i))).collect();
    chunks.sort_by_key(|(i, _)| *i);
    let reordered = sampler.finish(chunks.into_iter().map(|(_, m)| m));
    assert_eq!(serial, reordered);
}

#[test]
fn analytic_outage_inside_three_sigma_for_most_seeds() {
    // With one PA the rectangle is the whole room, so the closed form is exact
    // and any misses are sampling noise.
    for (d_x, gamma_t) in [(10.0, 96.0), (30.0, 104.0)] {
        let cfg = config(d_x, 0.05, gamma_t);
        let layout = PaLayout::new(d_x, 1).unwrap();
        let analytic = outage_probability(&cfg, &layout, &optimize_partition(&cfg, &layout)).unwrap().value;
        assert!(analytic > 0.01 && analytic < 0.99);
        let inside = (0..20)
            .filter(|&seed| {
                let e = simulate_outage(&cfg, &layout, &SimulationSpec::new(100_000, seed, 1 << 14).unwrap());
                (e.mean - analytic).abs() <= 3.0 * e.std_error
            })
            .count();
        assert!(inside >= 19, "only {inside}/20 seeds inside ±3σ");
    }
}

#[test]
fn standard_error_shrinks_as_root_n() {
    let cfg = config(30.0, 0.05, 100.0);
    let layout = PaLayout::new(30.0, 2).unwrap();
    let small = simulate_rate(&cfg, &layout, &SimulationSpec::new(50_000, 5, 1 << 14).unwrap());
    let large = simulate_rate(&cfg, &layout, &SimulationSpec::new(200_000, 5, 1 << 14).unwrap());
    let ratio = small.std_error / large.std_error;
    assert!((ratio / 2.0 - 1.0).abs() < 0.1, "ratio {ratio}");
}

#[test]
fn second_antenna_raises_simulated_rate() {
    let cfg = config(30.0, 0.05, 100.0);
    let spec = SimulationSpec::new(200_000, 8, 1 << 14).unwrap();
    let one = simulate_rate(&cfg, &PaLayout::new(30.0, 1).unwrap(), &spec);
    let two = simulate_rate(&cfg, &PaLayout::new(30.0, 2).unwrap(), &spec);
    let combined = (one.std_error.powi(2) + two.std_error.powi(2)).sqrt();
    assert!(two.mean - one.mean > 3.0 * combined);
}

#[test]
fn tiny_transmit_power_gives_no_rate() {
    let cfg = config(10.0, 0.05, -100.0);
    let e = simulate_rate(&cfg, &PaLayout::new(10.0, 2).unwrap(), &SimulationSpec::new(5_000, 1, 1000).unwrap());
    assert!(e.mean < 1e-12);
}

#[test]
fn lossless_continuous_sample_is_pa_overhead() {
    let cfg = config(10.0, 0.0, 90.0);
    let sampler = Sampler::continuous(&cfg);
    let c = derive_rf(&cfg).big_c;
    for (x, y) in [(0.3, 4.0), (7.0, -2.0), (9.9, 0.0)] {
        let want = (1.0 + c / (y * y + 9.0)).log2();
        assert!((sampler.evaluate(UserPosition::new(x, y)) - want).abs() < 1e-14);
    }
}

#[test]
fn continuous_quadrature_agrees_with_simulation() {
    for alpha in [0.0, 0.05] {
        let cfg = config(20.0, alpha, 95.0);
        let rc = continuous_rate(&cfg).unwrap().value;
        let e = simulate_continuous_rate(&cfg, &SimulationSpec::new(200_000, 3, 1 << 14).unwrap());
        assert!((e.mean - rc).abs() <= 3.0 * e.std_error, "α={alpha}: {} ± {} vs {rc}", e.mean, e.std_error);
    }
}
