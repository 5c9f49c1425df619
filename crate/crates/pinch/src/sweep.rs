//! Declarative parameter sweeps and their evaluation.

use pinch_core::metrics::{self, Diagnostics};
use pinch_core::montecarlo::{Sampler, SimQuantity};
use pinch_core::regions::{self, optimize_partition};
use pinch_core::{PaLayout, SimEstimate, SimulationSpec, SystemConfig};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::parallel::simulate_parallel;
use crate::table::{Cell, OutputTable};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Outage,
    Rate,
    ContinuousRate,
    Pde,
    Regions,
    Simulate,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Outage => "outage",
            Metric::Rate => "rate",
            Metric::ContinuousRate => "continuous_rate",
            Metric::Pde => "pde",
            Metric::Regions => "regions",
            Metric::Simulate => "simulate",
        }
    }

    /// Whether evaluating the metric needs a PA count.
    pub fn needs_m(self, quantity: Quantity) -> bool {
        !matches!(self, Metric::ContinuousRate)
            && !(self == Metric::Simulate && quantity == Quantity::ContinuousRate)
    }
}

/// A sweepable parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    GammaTDb,
    GammaThrDb,
    M,
    Alpha,
    DX,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::GammaTDb => "gamma_t_db",
            Axis::GammaThrDb => "gamma_thr_db",
            Axis::M => "m",
            Axis::Alpha => "alpha",
            Axis::DX => "d_x",
        }
    }
}

/// Simulated per-user quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Outage,
    Rate,
    ContinuousRate,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Outage => "outage",
            Quantity::Rate => "rate",
            Quantity::ContinuousRate => "continuous_rate",
        }
    }

    fn sim(self) -> SimQuantity {
        match self {
            Quantity::Outage => SimQuantity::Outage,
            Quantity::Rate => SimQuantity::Rate,
            Quantity::ContinuousRate => SimQuantity::ContinuousRate,
        }
    }
}

/// One table per series value, one row per axis value.
///
/// When neither the axis nor the series is `m`, every point uses `fixed_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub metric: Metric,
    pub axis: Axis,
    pub axis_values: Vec<f64>,
    pub series: Option<Axis>,
    pub series_values: Vec<f64>,
    pub fixed_m: Option<usize>,
    pub quantity: Quantity,
    /// Samples of each exact region boundary to emit with `regions` (0 = none).
    pub boundary_samples: usize,
}

impl SweepSpec {
    /// The M list this sweep uses, as given by the `m_values` key.
    pub fn m_values(&self) -> Vec<usize> {
        if self.series == Some(Axis::M) {
            self.series_values.iter().map(|&v| v as usize).collect()
        } else {
            self.fixed_m.into_iter().collect()
        }
    }

    /// `(label, value)` of every table, or a single unlabeled table.
    fn series_points(&self) -> Vec<Option<(Axis, f64)>> {
        match self.series {
            Some(axis) => self.series_values.iter().map(|&v| Some((axis, v))).collect(),
            None => vec![None],
        }
    }
}

/// Tables produced by a sweep plus any numerical warnings raised along the way.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub tables: Vec<OutputTable>,
    pub issues: Vec<String>,
}

#[derive(Debug, Clone, Copy)]
struct Point {
    config: SystemConfig,
    m: Option<usize>,
}

impl Point {
    fn with(mut self, axis: Axis, value: f64) -> Self {
        match axis {
            Axis::GammaTDb => self.config.gamma_t_db = value,
            Axis::GammaThrDb => self.config.gamma_thr_db = value,
            Axis::Alpha => self.config.alpha = value,
            Axis::DX => self.config.d_x = value,
            Axis::M => self.m = Some(value as usize),
        }
        self
    }

    fn describe(&self) -> String {
        let c = &self.config;
        let mut s = format!(
            "d_x={} alpha={} gamma_t_db={} gamma_thr_db={}",
            c.d_x, c.alpha, c.gamma_t_db, c.gamma_thr_db
        );
        if let Some(m) = self.m {
            s.push_str(&format!(" m={m}"));
        }
        s
    }

    fn layout(&self) -> Result<PaLayout> {
        Ok(PaLayout::new(self.config.d_x, self.m.unwrap_or(1))?)
    }
}

/// Evaluates every point of the sweep. Analytic points run in parallel; each
/// simulated point parallelizes over its sample chunks instead.
pub fn run_sweep(run: &RunConfig) -> Result<SweepOutput> {
    let spec = &run.sweep;
    let base = Point {
        config: run.system,
        m: spec.fixed_m,
    };
    let mut tables = Vec::new();
    let mut issues = Vec::new();
    for series in spec.series_points() {
        let point = match series {
            Some((axis, v)) => base.with(axis, v),
            None => base,
        };
        let name = table_name(spec, series);
        let meta = TableMeta {
            run,
            name: &name,
            series,
        };
        if spec.metric == Metric::Regions {
            let (partition, samples) = regions_tables(point, spec.boundary_samples, &meta)?;
            tables.push(partition);
            tables.extend(samples);
            continue;
        }
        let points: Vec<Point> = spec.axis_values.iter().map(|&v| point.with(spec.axis, v)).collect();
        let rows: Vec<(Vec<Cell>, Option<String>)> = if spec.metric == Metric::Simulate {
            points
                .iter()
                .map(|p| simulate_row(*p, spec, &run.simulation))
                .collect::<Result<_>>()?
        } else {
            points
                .par_iter()
                .map(|p| analytic_row(*p, spec.metric))
                .collect::<Result<_>>()?
        };
        let mut table = meta.table(columns(spec));
        for ((mut cells, issue), &x) in rows.into_iter().zip(&spec.axis_values) {
            cells.insert(0, axis_cell(spec.axis, x));
            table.rows.push(cells);
            issues.extend(issue.map(|i| format!("{name}: {i}")));
        }
        tables.push(table);
    }
    Ok(SweepOutput { tables, issues })
}

fn axis_cell(axis: Axis, x: f64) -> Cell {
    if axis == Axis::M {
        Cell::Int(x as i64)
    } else {
        Cell::Real(x)
    }
}

fn columns(spec: &SweepSpec) -> Vec<String> {
    let x = spec.axis.name().to_string();
    match spec.metric {
        Metric::Simulate => vec![x, format!("{}_mean", spec.quantity.name()), "std_error".into()],
        m => vec![x, m.name().to_string()],
    }
}

fn table_name(spec: &SweepSpec, series: Option<(Axis, f64)>) -> String {
    let mut name = spec.metric.name().to_string();
    if spec.metric == Metric::Simulate {
        name.push('_');
        name.push_str(spec.quantity.name());
    }
    if let Some((axis, v)) = series {
        name.push('_');
        name.push_str(axis.name());
        name.push_str(&format_label(v));
    }
    name
}

fn format_label(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

struct TableMeta<'a> {
    run: &'a RunConfig,
    name: &'a str,
    series: Option<(Axis, f64)>,
}

impl TableMeta<'_> {
    fn table(&self, columns: Vec<String>) -> OutputTable {
        self.named(self.name.to_string(), columns)
    }

    fn named(&self, name: String, columns: Vec<String>) -> OutputTable {
        OutputTable::new(name, self.run.clone(), self.series, columns)
    }
}

fn issue_text(point: &Point, diag: &Diagnostics) -> Option<String> {
    let mut parts = Vec::new();
    if diag.underflow_clamp {
        parts.push("gain underflow clamped".to_string());
    }
    if diag.quadrature_unconverged {
        parts.push(format!(
            "quadrature unconverged (relative change {:.3e})",
            diag.richardson_rel.unwrap_or(f64::NAN)
        ));
    }
    (!parts.is_empty()).then(|| format!("{} at {}", parts.join(", "), point.describe()))
}

fn analytic_row(point: Point, metric: Metric) -> Result<(Vec<Cell>, Option<String>)> {
    let cfg = &point.config;
    let result = match metric {
        Metric::ContinuousRate => metrics::continuous_rate(cfg)?,
        _ => {
            let layout = point.layout()?;
            let partition = optimize_partition(cfg, &layout);
            match metric {
                Metric::Outage => metrics::outage_probability(cfg, &layout, &partition)?,
                Metric::Rate => metrics::ergodic_rate(cfg, &layout, &partition)?,
                _ => metrics::pde(cfg, &layout, &partition)?,
            }
        }
    };
    let mut issue = issue_text(&point, &result.diagnostics);
    if !result.value.is_finite() {
        issue = Some(format!("non-finite value at {}", point.describe()));
    }
    Ok((vec![Cell::Real(result.value)], issue))
}

fn simulate_row(point: Point, spec: &SweepSpec, sim: &SimulationSpec) -> Result<(Vec<Cell>, Option<String>)> {
    let cfg = &point.config;
    let sampler = match spec.quantity {
        Quantity::ContinuousRate => Sampler::continuous(cfg),
        q => Sampler::new(cfg, &point.layout()?, q.sim()),
    };
    let SimEstimate { mean, std_error, .. } = simulate_parallel(&sampler, sim);
    let issue = (!mean.is_finite()).then(|| format!("non-finite value at {}", point.describe()));
    Ok((vec![Cell::Real(mean), Cell::Real(std_error)], issue))
}

fn regions_tables(point: Point, samples: usize, meta: &TableMeta) -> Result<(OutputTable, Vec<OutputTable>)> {
    let cfg = &point.config;
    let layout = point.layout()?;
    let partition = optimize_partition(cfg, &layout);
    let mut table = meta.table(["k", "x_k", "L_k", "R_k", "b_k"].map(String::from).to_vec());
    for k in 0..layout.m() {
        table.rows.push(vec![
            Cell::Int(k as i64 + 1),
            Cell::Real(layout.x(k)),
            Cell::Real(partition.left_limits()[k]),
            Cell::Real(partition.right_limits()[k]),
            Cell::Real(partition.boundaries()[k + 1]),
        ]);
    }
    let mut extra = Vec::new();
    if samples > 0 && layout.m() > 1 {
        let mut columns = vec!["y".to_string()];
        columns.extend((1..layout.m()).map(|k| format!("x_boundary_{k}")));
        let mut curves = meta.named(format!("{}_boundaries", meta.name), columns);
        let per_cut: Vec<Vec<(f64, f64)>> = (0..layout.m() - 1)
            .map(|k| regions::boundary_samples(cfg, &layout, k, samples))
            .collect::<Result<_, _>>()?;
        for i in 0..per_cut[0].len() {
            let mut row = vec![Cell::Real(per_cut[0][i].0)];
            row.extend(per_cut.iter().map(|c| Cell::Real(c[i].1)));
            curves.rows.push(row);
        }
        extra.push(curves);
    }
    Ok((table, extra))
}
