//! Data behind the four relaxation figures: Ψ_α, −Φ_α, r_α and R_α.

use std::fs;
use std::path::{Path, PathBuf};

use fracrelax_core::{big_r, phi, psi, relax_coeff, SolverConfig};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::svg;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Psi,
    MinusPhi,
    SmallR,
    BigR,
}

impl FigureId {
    pub const ALL: [FigureId; 4] = [Self::Psi, Self::MinusPhi, Self::SmallR, Self::BigR];

    pub fn stem(self) -> &'static str {
        match self {
            Self::Psi => "fig1_psi",
            Self::MinusPhi => "fig2_minus_phi",
            Self::SmallR => "fig3_r",
            Self::BigR => "fig4_bigR",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Self::Psi => "Ψ_α(t) = E_α(−t^α)",
            Self::MinusPhi => "−Φ_α(t) = t^(α−1) E_α,α(−t^α)",
            Self::SmallR => "r_α(t) = −Φ_α(t)/Ψ_α(t)",
            Self::BigR => "R_α(t) = −log Ψ_α(t)",
        }
    }

    fn value(self, alpha: f64, t: f64, cfg: &SolverConfig) -> fracrelax_core::Result<f64> {
        Ok(match self {
            Self::Psi => psi(alpha, t, cfg)?.value,
            Self::MinusPhi => -phi(alpha, t, cfg)?.value,
            Self::SmallR => relax_coeff(alpha, t, cfg)?.value,
            Self::BigR => big_r(alpha, t, cfg)?.value,
        })
    }
}

/// One figure: a shared t column and one series per α.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureBundle {
    pub figure_id: FigureId,
    pub times: Vec<f64>,
    pub columns: Vec<(f64, Vec<f64>)>,
    pub metadata: String,
}

/// Sample times for a figure. Φ and r diverge at the origin for α < 1, so
/// with any such α figures 2–4 start one spacing in, at t_end/num_points;
/// figure 1 always includes t_start.
pub fn figure_times(id: FigureId, cfg: &RunConfig) -> Vec<f64> {
    let n = cfg.num_points;
    let singular = cfg.t_start == 0.0 && cfg.alphas.iter().any(|&a| a < 1.0);
    let shifted = singular && id != FigureId::Psi;
    if shifted {
        (1..=n).map(|j| cfg.t_end * (j as f64 / n as f64)).collect()
    } else {
        let span = cfg.t_end - cfg.t_start;
        let mut t: Vec<f64> =
            (0..n).map(|j| cfg.t_start + span * (j as f64 / (n - 1) as f64)).collect();
        t[n - 1] = cfg.t_end;
        t
    }
}

pub fn metadata(cfg: &RunConfig) -> String {
    format!("fracrelax {}\n{}", env!("CARGO_PKG_VERSION"), cfg.echo())
}

pub fn build_bundle(id: FigureId, cfg: &RunConfig) -> Result<FigureBundle, CliError> {
    let times = figure_times(id, cfg);
    // Columns are independent; one thread per α.
    let columns = std::thread::scope(|scope| {
        let handles: Vec<_> = cfg
            .alphas
            .iter()
            .map(|&alpha| {
                let times = &times;
                scope.spawn(move || {
                    times
                        .iter()
                        .map(|&t| id.value(alpha, t, &cfg.solver))
                        .collect::<fracrelax_core::Result<Vec<f64>>>()
                        .map(|col| (alpha, col))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("figure worker panicked"))
            .collect::<fracrelax_core::Result<Vec<_>>>()
    })?;
    Ok(FigureBundle { figure_id: id, times, columns, metadata: metadata(cfg) })
}

pub fn build_all(cfg: &RunConfig) -> Result<Vec<FigureBundle>, CliError> {
    FigureId::ALL.iter().map(|&id| build_bundle(id, cfg)).collect()
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn header(bundle: &FigureBundle) -> Vec<String> {
    std::iter::once("t".to_string())
        .chain(bundle.columns.iter().map(|(a, _)| format!("alpha={a}")))
        .collect()
}

/// CSV bytes: the header `t,alpha=…` then one row per sample, every number
/// with 17 significant digits.
pub fn to_csv(bundle: &FigureBundle) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header(bundle)).expect("in-memory write");
    for (i, &t) in bundle.times.iter().enumerate() {
        let row = std::iter::once(fmt17(t)).chain(bundle.columns.iter().map(|(_, c)| fmt17(c[i])));
        w.write_record(row).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

/// Writes the requested formats plus a metadata file. On failure every file
/// written so far is removed.
pub fn write_bundles(bundles: &[FigureBundle], cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    let mut outputs: Vec<(PathBuf, Vec<u8>)> = Vec::new();
    for b in bundles {
        let stem = b.figure_id.stem();
        if cfg.format.csv() {
            outputs.push((cfg.output_dir.join(format!("{stem}.csv")), to_csv(b)));
        }
        if cfg.format.svg() {
            outputs.push((cfg.output_dir.join(format!("{stem}.svg")), svg::render(b).into_bytes()));
        }
    }
    outputs.push((cfg.output_dir.join("figures_metadata.txt"), metadata(cfg).into_bytes()));

    let mut written: Vec<PathBuf> = Vec::new();
    let result = (|| {
        fs::create_dir_all(&cfg.output_dir)
            .map_err(|source| CliError::Io { path: cfg.output_dir.clone(), source })?;
        for (path, bytes) in &outputs {
            write_file(path, bytes)?;
            written.push(path.clone());
        }
        Ok(())
    })();
    match result {
        Ok(()) => Ok(written),
        Err(e) => {
            for p in &written {
                let _ = fs::remove_file(p);
            }
            Err(e)
        }
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|source| {
        // A half-written file is removed by the caller only once it is
        // recorded, so clear it here.
        let _ = fs::remove_file(path);
        CliError::Io { path: path.to_path_buf(), source }
    })
}
