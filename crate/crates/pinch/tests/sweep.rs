use pinch::table::{Cell, OutputTable};
use pinch::{emit_all, emit_table, parse_config, run_sweep, EmitStatus, RunConfig};
use pinch_core::montecarlo::{SimQuantity, Sampler};
use pinch_core::{PaLayout, SimulationSpec, SystemConfig};

fn config(body: &str) -> RunConfig {
    parse_config(body, "test", None).unwrap()
}

fn values(run: &RunConfig, table: usize) -> Vec<f64> {
    run_sweep(run).unwrap().tables[table].column(1)
}

#[test]
fn output_directories_are_byte_identical() {
    let run = config(
        "[system]\nd_x = 20.0\n[sweep]\nmetric = \"simulate\"\nquantity = \"rate\"\nvalues = [85.0, 95.0]\nm_values = [1, 3]\n[simulation]\nsamples = 20000\nseed = 5\nchunk_size = 3000\n",
    );
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let wa = emit_all(&run_sweep(&run).unwrap().tables, a.path()).unwrap();
    let wb = emit_all(&run_sweep(&run).unwrap().tables, b.path()).unwrap();
    assert_eq!(wa.len(), 2);
    for ((pa, _), (pb, _)) in wa.iter().zip(&wb) {
        assert_eq!(pa.file_name(), pb.file_name());
        assert_eq!(std::fs::read(pa).unwrap(), std::fs::read(pb).unwrap());
    }
}

#[test]
fn parallel_simulation_is_bitwise_serial() {
    let cfg = SystemConfig::new(30.0);
    let layout = PaLayout::new(30.0, 5).unwrap();
    let spec = SimulationSpec::new(50_000, 77, 4_321).unwrap();
    for q in [SimQuantity::Outage, SimQuantity::Rate, SimQuantity::ContinuousRate] {
        let sampler = Sampler::new(&cfg, &layout, q);
        assert_eq!(sampler.run(&spec), pinch::parallel::simulate_parallel(&sampler, &spec));
    }
}

#[test]
fn pde_is_rate_over_continuous_rate() {
    let sys = "[system]\nd_x = 30.0\nalpha = 0.05\n";
    let grid = "values = [85.0, 95.0, 105.0]\nm_values = [3]\n";
    let pde = values(&config(&format!("{sys}[sweep]\nmetric = \"pde\"\n{grid}")), 0);
    let rate = values(&config(&format!("{sys}[sweep]\nmetric = \"rate\"\n{grid}")), 0);
    let cont = values(&config(&format!("{sys}[sweep]\nmetric = \"continuous_rate\"\n{grid}")), 0);
    for i in 0..3 {
        assert!((pde[i] - rate[i] / cont[i]).abs() <= 1e-10 * pde[i], "{i}");
    }
}

#[test]
fn regions_cover_the_room() {
    let run = config("[system]\nd_x = 30.0\nalpha = 0.08\n[sweep]\nmetric = \"regions\"\nm_values = [1, 4, 7]\nboundary_samples = 9\n");
    let out = run_sweep(&run).unwrap();
    let names: Vec<&str> = out.tables.iter().map(|t| t.name.as_str()).collect();
    assert_eq!(
        names,
        ["regions_m1", "regions_m4", "regions_m4_boundaries", "regions_m7", "regions_m7_boundaries"]
    );
    for t in out.tables.iter().filter(|t| !t.name.ends_with("boundaries")) {
        let total: f64 = t.column(2).iter().zip(t.column(3)).map(|(l, r)| l + r).sum();
        assert!((total - 30.0).abs() < 1e-9, "{}", t.name);
        assert_eq!(*t.column(4).last().unwrap(), 30.0);
    }
    let curves = &out.tables[2];
    assert_eq!(curves.rows.len(), 9);
    assert_eq!(curves.columns.len(), 4);
}

#[test]
fn outage_falls_with_power_and_antennas() {
    let run = config("[system]\nd_x = 30.0\n[sweep]\nmetric = \"outage\"\nfrom = 80\nto = 110\npoints = 7\nm_values = [1, 2, 4]\n");
    let out = run_sweep(&run).unwrap();
    let cols: Vec<Vec<f64>> = out.tables.iter().map(|t| t.column(1)).collect();
    for c in &cols {
        assert!(c.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{c:?}");
        assert!(c.iter().all(|p| (0.0..=1.0).contains(p)));
    }
    for pair in cols.windows(2) {
        assert!(pair[1].iter().zip(&pair[0]).all(|(more, fewer)| *more <= fewer + 1e-12));
    }
}

#[test]
fn empty_tables_are_flagged() {
    let run = config("[system]\nd_x = 10.0\n[sweep]\nmetric = \"rate\"\nvalues = [90.0]\nm_values = [1]\n");
    let dir = tempfile::tempdir().unwrap();
    let mut table = OutputTable::new("empty".into(), run.clone(), None, vec!["gamma_t_db".into(), "rate".into()]);
    let path = dir.path().join("empty.dat");
    assert_eq!(emit_table(&table, &path).unwrap(), EmitStatus::Empty);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().all(|l| l.starts_with('#')));
    table.rows.push(vec![Cell::Real(90.0), Cell::Real(1.5)]);
    assert_eq!(emit_table(&table, &path).unwrap(), EmitStatus::Written);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.ends_with("9.00000000000e1 1.50000000000e0\n"));
    assert!(!text.contains('\r'));
}
