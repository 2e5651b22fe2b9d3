//! Run configuration: defaults, the optional key = value file, and flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use fracrelax_core::SolverConfig;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Svg,
    Both,
}

impl OutputFormat {
    pub fn csv(self) -> bool {
        matches!(self, Self::Csv | Self::Both)
    }

    pub fn svg(self) -> bool {
        matches!(self, Self::Svg | Self::Both)
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "svg" => Ok(Self::Svg),
            "both" => Ok(Self::Both),
            other => Err(format!("unknown format '{other}' (expected csv, svg or both)")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Csv => "csv",
            Self::Svg => "svg",
            Self::Both => "both",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub alphas: Vec<f64>,
    pub t_start: f64,
    pub t_end: f64,
    pub num_points: usize,
    pub output_dir: PathBuf,
    pub format: OutputFormat,
    pub solver: SolverConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            alphas: vec![0.25, 0.5, 0.75, 1.0],
            t_start: 0.0,
            t_end: 5.0,
            num_points: 512,
            output_dir: PathBuf::from("."),
            format: OutputFormat::Csv,
            solver: SolverConfig::default(),
        }
    }
}

/// Values given on the command line; `None` leaves the file or default
/// value in place.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub alphas: Option<Vec<f64>>,
    pub t_start: Option<f64>,
    pub t_end: Option<f64>,
    pub num_points: Option<usize>,
    pub output_dir: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

pub fn parse_alphas(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|a| a.trim().parse::<f64>().map_err(|e| format!("bad alpha '{a}': {e}")))
        .collect()
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, CliError>
where
    T::Err: fmt::Display,
{
    value.parse().map_err(|e| CliError::Usage(format!("config key '{key}': {e}")))
}

impl RunConfig {
    /// Applies `key = value` lines. Blank lines and `#` comments are ignored.
    pub fn apply_file_text(&mut self, text: &str) -> Result<(), CliError> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("config line {}: expected key = value", lineno + 1))
            })?;
            let (key, value) = (key.trim().replace('-', "_"), value.trim());
            match key.as_str() {
                "alphas" => self.alphas = parse_alphas(value).map_err(CliError::Usage)?,
                "t_start" => self.t_start = parse(&key, value)?,
                "t_end" => self.t_end = parse(&key, value)?,
                "points" | "num_points" => self.num_points = parse(&key, value)?,
                "out_dir" | "output_dir" => self.output_dir = PathBuf::from(value),
                "format" => self.format = parse(&key, value)?,
                "series_tol" => self.solver.series_tol = parse(&key, value)?,
                "crossover_radius" => self.solver.crossover_radius = parse(&key, value)?,
                "max_terms" => self.solver.max_terms = parse(&key, value)?,
                "asymptotic_terms" => self.solver.asymptotic_terms = parse(&key, value)?,
                "contour_nodes" => self.solver.contour_nodes = parse(&key, value)?,
                "target_abs_err" => self.solver.target_abs_err = parse(&key, value)?,
                "quad_tol" => self.solver.quad_tol = parse(&key, value)?,
                _ => {
                    return Err(CliError::Usage(format!(
                        "config line {}: unknown key '{key}'",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        self.apply_file_text(&text)
    }

    pub fn apply_overrides(&mut self, o: &Overrides) {
        if let Some(a) = &o.alphas {
            self.alphas = a.clone();
        }
        if let Some(v) = o.t_start {
            self.t_start = v;
        }
        if let Some(v) = o.t_end {
            self.t_end = v;
        }
        if let Some(v) = o.num_points {
            self.num_points = v;
        }
        if let Some(v) = &o.output_dir {
            self.output_dir = v.clone();
        }
        if let Some(v) = o.format {
            self.format = v;
        }
    }

    /// Defaults, then the file (if any), then the flags.
    pub fn resolve(file: Option<&Path>, overrides: &Overrides) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        if let Some(path) = file {
            cfg.apply_file(path)?;
        }
        cfg.apply_overrides(overrides);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.alphas.is_empty() {
            return Err(CliError::Domain("at least one alpha is required".into()));
        }
        if let Some(a) = self.alphas.iter().find(|&&a| !(a > 0.0 && a <= 1.0)) {
            return Err(CliError::Domain(format!("alpha {a} outside (0, 1]")));
        }
        if !(self.t_start >= 0.0 && self.t_end > self.t_start && self.t_end.is_finite()) {
            return Err(CliError::Domain("need 0 ≤ t_start < t_end".into()));
        }
        if self.num_points < 2 {
            return Err(CliError::Domain("points must be at least 2".into()));
        }
        self.solver.validate().map_err(|e| CliError::Domain(e.to_string()))
    }

    /// The configuration as `key = value` lines, readable by
    /// [`RunConfig::apply_file_text`].
    pub fn echo(&self) -> String {
        let alphas: Vec<String> = self.alphas.iter().map(|a| a.to_string()).collect();
        let s = &self.solver;
        format!(
            "alphas = {}\nt_start = {}\nt_end = {}\npoints = {}\nformat = {}\n\
             series_tol = {:e}\ncrossover_radius = {}\nmax_terms = {}\nasymptotic_terms = {}\n\
             contour_nodes = {}\ntarget_abs_err = {:e}\nquad_tol = {:e}\n",
            alphas.join(","),
            self.t_start,
            self.t_end,
            self.num_points,
            self.format,
            s.series_tol,
            s.crossover_radius,
            s.max_terms,
            s.asymptotic_terms,
            s.contour_nodes,
            s.target_abs_err,
            s.quad_tol,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let mut cfg = RunConfig::default();
        cfg.apply_file_text("# preset\nalphas = 0.3, 0.6\nt_end=8\npoints = 100\nformat = both\nquad_tol = 1e-14\n")
            .unwrap();
        assert_eq!(cfg.alphas, [0.3, 0.6]);
        assert_eq!(cfg.format, OutputFormat::Both);
        assert_eq!(cfg.solver.quad_tol, 1e-14);
        cfg.apply_overrides(&Overrides { t_end: Some(2.0), ..Default::default() });
        assert_eq!(cfg.t_end, 2.0);
        assert_eq!(cfg.num_points, 100);
    }

    #[test]
    fn echo_round_trips() {
        let mut cfg = RunConfig { alphas: vec![0.1, 1.0], ..RunConfig::default() };
        cfg.solver.max_terms = 321;
        let mut back = RunConfig::default();
        back.apply_file_text(&cfg.echo()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn rejects_bad_input() {
        let mut cfg = RunConfig::default();
        assert!(cfg.apply_file_text("alphas 0.5").is_err());
        assert!(cfg.apply_file_text("colour = red").is_err());
        assert!(cfg.apply_file_text("points = many").is_err());
        cfg.alphas = vec![1.5];
        assert!(cfg.validate().is_err());
    }
}
