//! Run configuration files.
//!
//! A config is TOML with three optional tables:
//!
//! ```toml
//! [system]        # physical scenario; only d_x is required
//! d_x = 30.0
//!
//! [sweep]         # what to evaluate and over which grid
//! metric = "pde"
//! axis = "m"
//! values = [1, 2, 3, 4]
//! series = "d_x"
//! series_values = [10, 20, 30]
//!
//! [simulation]    # Monte Carlo settings
//! samples = 1000000
//! seed = 7
//! ```
//!
//! Unknown keys are rejected. A `[meta]` table (written into output headers) is
//! accepted and ignored.

use std::path::Path;

use pinch_core::montecarlo::{DEFAULT_CHUNK_SIZE, DEFAULT_SAMPLES};
use pinch_core::{SimulationSpec, SystemConfig};
use serde::{Deserialize, Serialize};

use crate::sweep::{Axis, Metric, Quantity, SweepSpec};
use crate::{Error, Result};

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub system: SystemConfig,
    pub sweep: SweepSpec,
    pub simulation: SimulationSpec,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct SystemSection {
    d_x: Option<f64>,
    d_y: Option<f64>,
    h: Option<f64>,
    alpha: Option<f64>,
    f_c: Option<f64>,
    n_eff: Option<f64>,
    noise_dbm: Option<f64>,
    gamma_t_db: Option<f64>,
    gamma_thr_db: Option<f64>,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct SweepSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    metric: Option<Metric>,
    #[serde(skip_serializing_if = "Option::is_none")]
    axis: Option<Axis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    from: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    to: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    series: Option<SeriesName>,
    #[serde(skip_serializing_if = "Option::is_none")]
    series_values: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m_values: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    quantity: Option<Quantity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    boundary_samples: Option<usize>,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct SimulationSection {
    samples: Option<u64>,
    seed: Option<u64>,
    chunk_size: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(untagged)]
enum SeriesName {
    Axis(Axis),
    None(NoSeries),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
enum NoSeries {
    None,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(default)]
    system: SystemSection,
    #[serde(default)]
    sweep: SweepSection,
    #[serde(default)]
    simulation: SimulationSection,
    #[serde(default, skip_serializing)]
    #[allow(dead_code)]
    meta: Option<toml::Table>,
}

/// Reads and validates a config file. `metric` overrides `[sweep] metric`.
pub fn load_config(path: &Path, metric: Option<Metric>) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text, &path.display().to_string(), metric)
}

/// Parses config text; `origin` names the source in error messages.
pub fn parse_config(text: &str, origin: &str, metric: Option<Metric>) -> Result<RunConfig> {
    let file: ConfigFile = toml::from_str(text).map_err(|e| Error::Parse {
        origin: origin.to_string(),
        line: e.span().map_or(0, |s| text[..s.start].matches('\n').count() + 1),
        message: e.message().to_string(),
    })?;
    let system = build_system(&file.system)?;
    let simulation = build_simulation(&file.simulation)?;
    let sweep = build_sweep(&file.sweep, metric)?;
    Ok(RunConfig {
        system,
        sweep,
        simulation,
    })
}

fn build_system(s: &SystemSection) -> Result<SystemConfig> {
    let d_x = s.d_x.ok_or_else(|| Error::config("d_x", "required (room length in metres)"))?;
    let mut cfg = SystemConfig::new(d_x);
    let fields = [
        (&mut cfg.d_y, s.d_y),
        (&mut cfg.h, s.h),
        (&mut cfg.alpha, s.alpha),
        (&mut cfg.f_c, s.f_c),
        (&mut cfg.n_eff, s.n_eff),
        (&mut cfg.noise_dbm, s.noise_dbm),
        (&mut cfg.gamma_t_db, s.gamma_t_db),
        (&mut cfg.gamma_thr_db, s.gamma_thr_db),
    ];
    for (slot, value) in fields {
        if let Some(v) = value {
            *slot = v;
        }
    }
    cfg.validate().map_err(core_to_config)?;
    Ok(cfg)
}

fn core_to_config(e: pinch_core::Error) -> Error {
    match e {
        pinch_core::Error::InvalidConfig {
            field,
            value,
            constraint,
        } => {
            // The library names the sample count after its struct field.
            let key = if field == "n_samples" { "samples" } else { field };
            Error::config(key, format!("{value} violates {constraint}"))
        }
        other => Error::Core(other),
    }
}

fn build_simulation(s: &SimulationSection) -> Result<SimulationSpec> {
    let seed = s.seed.unwrap_or(0);
    if seed > i64::MAX as u64 {
        return Err(Error::config("seed", "must be at most 2^63 - 1"));
    }
    SimulationSpec::new(
        s.samples.unwrap_or(DEFAULT_SAMPLES),
        seed,
        s.chunk_size.unwrap_or(DEFAULT_CHUNK_SIZE),
    )
    .map_err(core_to_config)
}

fn build_sweep(s: &SweepSection, metric_override: Option<Metric>) -> Result<SweepSpec> {
    let metric = metric_override
        .or(s.metric)
        .ok_or_else(|| Error::config("metric", "required in [sweep] or on the command line"))?;
    let quantity = s.quantity.unwrap_or(Quantity::Outage);
    let axis = s.axis.unwrap_or(Axis::GammaTDb);

    let axis_values = match (&s.values, s.from, s.to, s.points) {
        (Some(v), None, None, None) => v.clone(),
        (None, Some(from), Some(to), Some(points)) => linspace(from, to, points)?,
        (None, None, None, None) if metric == Metric::Regions => Vec::new(),
        (None, None, None, None) => return Err(Error::config("values", "required (or from/to/points)")),
        _ => return Err(Error::config("values", "give either `values` or all of from/to/points")),
    };
    if metric != Metric::Regions {
        check_increasing("values", &axis_values)?;
        check_axis_values("values", axis, &axis_values)?;
    }

    let needs_m = metric.needs_m(quantity);
    let series = match s.series {
        Some(SeriesName::Axis(a)) => Some(a),
        Some(SeriesName::None(_)) => None,
        None if axis != Axis::M && needs_m && s.series_values.is_none() => Some(Axis::M),
        None => None,
    };
    if series.is_some() && series == Some(axis) && metric != Metric::Regions {
        return Err(Error::config("series", "must differ from axis"));
    }

    let m_values = s.m_values.clone();
    if let Some(ms) = &m_values {
        if ms.is_empty() || ms.contains(&0) {
            return Err(Error::config("m_values", "must be a nonempty list of positive integers"));
        }
    }
    let series_values = if series == Some(Axis::M) {
        if s.series_values.is_some() {
            return Err(Error::config("series_values", "use m_values when the series is m"));
        }
        let ms = m_values.clone().ok_or_else(|| Error::config("m_values", "required when the series is m"))?;
        ms.iter().map(|&m| m as f64).collect()
    } else if let Some(axis_s) = series {
        let v = s
            .series_values
            .clone()
            .ok_or_else(|| Error::config("series_values", format!("required when the series is {}", axis_s.name())))?;
        if v.is_empty() {
            return Err(Error::config("series_values", "must be nonempty"));
        }
        check_axis_values("series_values", axis_s, &v)?;
        v
    } else {
        Vec::new()
    };

    let m_on_grid = series == Some(Axis::M) || (axis == Axis::M && metric != Metric::Regions);
    let fixed_m = if m_on_grid || !needs_m {
        None
    } else {
        match m_values.as_deref() {
            Some([m]) => Some(*m),
            Some(_) => return Err(Error::config("m_values", "exactly one value needed when m is neither axis nor series")),
            None => return Err(Error::config("m_values", "required")),
        }
    };

    Ok(SweepSpec {
        metric,
        axis,
        axis_values,
        series,
        series_values,
        fixed_m,
        quantity,
        boundary_samples: s.boundary_samples.unwrap_or(0),
    })
}

fn linspace(from: f64, to: f64, points: usize) -> Result<Vec<f64>> {
    if points < 1 {
        return Err(Error::config("points", "must be at least 1"));
    }
    if points == 1 {
        return Ok(vec![from]);
    }
    let step = (to - from) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| if i + 1 == points { to } else { from + step * i as f64 })
        .collect())
}

fn check_increasing(field: &str, v: &[f64]) -> Result<()> {
    if v.is_empty() {
        return Err(Error::config(field, "must be nonempty"));
    }
    if v.iter().any(|x| !x.is_finite()) || v.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::config(field, "must be finite and strictly increasing"));
    }
    Ok(())
}

fn check_axis_values(field: &str, axis: Axis, v: &[f64]) -> Result<()> {
    let bad = match axis {
        Axis::M => v.iter().find(|&&x| !(x >= 1.0 && x.fract() == 0.0)),
        Axis::Alpha => v.iter().find(|&&x| x.is_nan() || x < 0.0),
        Axis::DX => v.iter().find(|&&x| x.is_nan() || x <= 0.0),
        Axis::GammaTDb | Axis::GammaThrDb => v.iter().find(|&&x| !x.is_finite()),
    };
    match bad {
        Some(x) => Err(Error::config(field, format!("{x} is not a valid {}", axis.name()))),
        None => Ok(()),
    }
}

impl RunConfig {
    /// The effective configuration as TOML. Loading it back yields an equal `RunConfig`.
    pub fn to_toml(&self) -> String {
        let c = &self.system;
        let s = &self.sweep;
        let file = ConfigFile {
            system: SystemSection {
                d_x: Some(c.d_x),
                d_y: Some(c.d_y),
                h: Some(c.h),
                alpha: Some(c.alpha),
                f_c: Some(c.f_c),
                n_eff: Some(c.n_eff),
                noise_dbm: Some(c.noise_dbm),
                gamma_t_db: Some(c.gamma_t_db),
                gamma_thr_db: Some(c.gamma_thr_db),
            },
            sweep: SweepSection {
                metric: Some(s.metric),
                axis: Some(s.axis),
                values: (!s.axis_values.is_empty()).then(|| s.axis_values.clone()),
                series: Some(s.series.map_or(SeriesName::None(NoSeries::None), SeriesName::Axis)),
                series_values: s
                    .series
                    .filter(|&a| a != Axis::M)
                    .map(|_| s.series_values.clone()),
                m_values: {
                    let ms = s.m_values();
                    (!ms.is_empty()).then_some(ms)
                },
                quantity: Some(s.quantity),
                boundary_samples: Some(s.boundary_samples),
                ..SweepSection::default()
            },
            simulation: SimulationSection {
                samples: Some(self.simulation.n_samples()),
                seed: Some(self.simulation.seed()),
                chunk_size: Some(self.simulation.chunk_size()),
            },
            meta: None,
        };
        toml::to_string(&file).expect("config serializes to TOML")
    }
}
