//! Executes a [`RunConfig`] and writes its table as CSV.

use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use super::config::{RunConfig, LindbladConfig};
use crate::analytic::closed_form;
use crate::error::{Error, Result};
use crate::lindblad::{resilient_experiment, PreNoise};
use crate::protocol::{sweep, ArchetypeMode, AuxiliaryKind, PreparedTemplate, ProtocolTemplate, SweepGrid};

/// A fixed-column table of results; cells hold full-precision numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub wall_time: Duration,
}

/// Shortest representation that parses back to the same `f64`.
pub fn num(x: f64) -> String {
    if x != 0.0 && x.abs() < 1e-4 {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn template(config: &RunConfig, mode: ArchetypeMode) -> ProtocolTemplate {
    let mut t = ProtocolTemplate::new(config.code.clone(), config.noise);
    t.auxiliary = config.aux;
    t.archetype = mode;
    t.coupling = config.coupling;
    t.e_prime = config.e_prime;
    t
}

fn aux_levels(prepared: &PreparedTemplate) -> usize {
    match prepared.template.auxiliary {
        AuxiliaryKind::Qudit => prepared.basis.excited_count() + 1,
        _ => 2,
    }
}

fn branch_columns(levels: usize) -> impl Iterator<Item = String> {
    (0..levels).map(|i| format!("p_branch_{i}"))
}

fn archetype_label(mode: &ArchetypeMode, sample: usize) -> String {
    match mode {
        ArchetypeMode::EqualContributing => "equal_contributing".into(),
        ArchetypeMode::EqualAll => "equal_all".into(),
        ArchetypeMode::Explicit(_) => "explicit".into(),
        ArchetypeMode::RandomGaussian { .. } => format!("random_{sample}"),
    }
}

/// Runs every series of the configuration.
pub fn execute(config: &RunConfig) -> Result<ExperimentResult> {
    let start = Instant::now();
    let (header, rows) = match &config.lindblad {
        Some(l) => timed_table(config, l)?,
        None => closed_table(config)?,
    };
    Ok(ExperimentResult {
        header,
        rows,
        wall_time: start.elapsed(),
    })
}

fn closed_table(config: &RunConfig) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let mut series = Vec::new();
    if config.reference {
        series.push((ArchetypeMode::EqualContributing, 1));
    }
    series.push((config.archetype.mode.clone(), config.archetype.samples));

    let mut header: Vec<String> = ["code", "noise", "q", "theta", "phi", "t", "aux", "archetype_id", "P"]
        .map(String::from)
        .to_vec();
    let mut rows = Vec::new();
    for (k, (mode, samples)) in series.into_iter().enumerate() {
        let prepared = template(config, mode.clone()).prepare()?;
        let levels = aux_levels(&prepared);
        if k == 0 {
            if config.engine.numeric() {
                header.push("F_postselect".into());
                header.extend(branch_columns(levels));
            }
            if config.engine.numeric() && config.engine.analytic() {
                header.extend(["P_analytic".into(), "abs_diff".into()]);
            }
        }
        let grid = SweepGrid {
            thetas: config.thetas.clone(),
            phis: config.phis.clone(),
            qs: config.qs.clone(),
            ts: config.ts.clone(),
            samples,
        };
        let prefix = |q: f64, theta: f64, phi: f64, t: f64, sample: usize| -> Vec<String> {
            vec![
                config.code.to_string(),
                config.noise.to_string(),
                num(q),
                num(theta),
                num(phi),
                num(t),
                config.aux.to_string(),
                archetype_label(&mode, sample),
            ]
        };
        let analytic = |q: f64, theta: f64, phi: f64, t: f64, b: &[Vec<f64>]| -> Result<f64> {
            let couplings = vec![config.coupling; prepared.basis.excited_count()];
            closed_form(&config.code, config.noise, theta, phi, q, &couplings, t, b)
                .ok_or_else(|| Error::UnsupportedSpec(format!("no closed form for {} under {}", config.code, config.noise)))
        };
        if config.engine.numeric() {
            for row in sweep(&prepared, &grid)? {
                let mut cells = prefix(row.q, row.theta, row.phi, row.t, row.sample);
                cells.push(num(row.success_rate));
                cells.push(num(row.fidelity));
                cells.extend(row.outcome_probs.iter().map(|&p| num(p)));
                if config.engine.analytic() {
                    let p = analytic(row.q, row.theta, row.phi, row.t, &row.coefficients)?;
                    cells.push(num(p));
                    cells.push(num((p - row.success_rate).abs()));
                }
                rows.push(cells);
            }
        } else {
            for &theta in &grid.thetas {
                for &phi in &grid.phis {
                    for sample in 0..samples {
                        let b = prepared.coefficients(sample)?;
                        for &q in &grid.qs {
                            for &t in &grid.ts {
                                let mut cells = prefix(q, theta, phi, t, sample);
                                cells.push(num(analytic(q, theta, phi, t, &b)?));
                                rows.push(cells);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok((header, rows))
}

fn timed_table(config: &RunConfig, l: &LindbladConfig) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let mode = config.archetype.mode.clone();
    let prepared = template(config, mode.clone()).prepare()?;
    let mut header: Vec<String> = [
        "code", "noise", "gamma", "q", "t1", "dt", "theta", "phi", "dt_window", "aux", "archetype_id", "P", "F_postselect",
    ]
    .map(String::from)
    .to_vec();
    header.extend(branch_columns(aux_levels(&prepared)));

    let pre_noises: Vec<(PreNoise, String, String)> = match l.t1 {
        Some(t1) => vec![(PreNoise::Lindblad { gamma: 0.0, t1 }, String::new(), num(t1))],
        None => config
            .qs
            .iter()
            .map(|&q| (PreNoise::Kraus { kind: config.noise, q }, num(q), String::new()))
            .collect(),
    };
    let mut rows = Vec::new();
    for &gamma in &l.gammas {
        for (pre, q_cell, t1_cell) in &pre_noises {
            let pre = match *pre {
                PreNoise::Lindblad { t1, .. } => PreNoise::Lindblad { gamma, t1 },
                other => other,
            };
            for &phi in &config.phis {
                let result = resilient_experiment(&prepared, &pre, gamma, l.dt, &config.thetas, phi, &l.windows)?;
                for p in &result.points {
                    let mut cells = vec![
                        config.code.to_string(),
                        config.noise.to_string(),
                        num(gamma),
                        q_cell.clone(),
                        t1_cell.clone(),
                        num(result.dt),
                        num(p.theta),
                        num(p.phi),
                        num(p.window),
                        config.aux.to_string(),
                        archetype_label(&mode, 0),
                        num(p.success_rate),
                        num(p.fidelity),
                    ];
                    cells.extend(p.outcome_probs.iter().map(|&x| num(x)));
                    rows.push(cells);
                }
            }
        }
    }
    Ok((header, rows))
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

/// Writes the table to a sibling temporary file and renames it into place.
pub fn write_csv(result: &ExperimentResult, path: &Path) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => std::path::PathBuf::from("."),
    };
    let name = path.file_name().ok_or_else(|| Error::Io(std::io::Error::other("output path has no file name")))?;
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    let written = (|| -> Result<()> {
        let mut w = csv::Writer::from_path(&tmp).map_err(csv_error)?;
        w.write_record(&result.header).map_err(csv_error)?;
        for row in &result.rows {
            w.write_record(row).map_err(csv_error)?;
        }
        w.flush()?;
        Ok(())
    })();
    if let Err(e) = written {
        let _ = fs::remove_file(&tmp);
        return Err(e);
    }
    fs::rename(&tmp, path)?;
    Ok(())
}
