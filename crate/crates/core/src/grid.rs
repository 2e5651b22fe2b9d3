//! Time grids on [t_start, t_end].

use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridKind {
    Uniform,
    /// t_j = t_end (j/N)^exponent, clustered near 0.
    Graded { exponent: f64 },
    /// Caller-supplied points.
    Irregular,
}

/// A strictly increasing set of at least two sample times, t_0 ≥ 0.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    points: Vec<f64>,
    kind: GridKind,
}

impl TimeGrid {
    /// `steps` equal intervals, `steps + 1` points.
    pub fn uniform(t_start: f64, t_end: f64, steps: usize) -> Result<Self> {
        if steps < 1 {
            return Err(Error::InvalidGrid("at least one step is required"));
        }
        if !(t_start >= 0.0 && t_end > t_start && t_end.is_finite()) {
            return Err(Error::InvalidGrid("need 0 ≤ t_start < t_end"));
        }
        let span = t_end - t_start;
        let n = steps as f64;
        let mut points: Vec<f64> = (0..=steps).map(|j| t_start + span * (j as f64 / n)).collect();
        points[steps] = t_end;
        Self::checked(points, GridKind::Uniform)
    }

    /// `steps` intervals on [0, t_end] with t_j = t_end (j/steps)^exponent.
    pub fn graded(t_end: f64, steps: usize, exponent: f64) -> Result<Self> {
        if steps < 1 {
            return Err(Error::InvalidGrid("at least one step is required"));
        }
        if !(exponent >= 1.0 && exponent.is_finite()) {
            return Err(Error::InvalidGrid("grading exponent must be ≥ 1"));
        }
        if !(t_end > 0.0 && t_end.is_finite()) {
            return Err(Error::InvalidGrid("t_end must be positive"));
        }
        let n = steps as f64;
        let mut points: Vec<f64> =
            (0..=steps).map(|j| t_end * libm::pow(j as f64 / n, exponent)).collect();
        points[steps] = t_end;
        Self::checked(points, GridKind::Graded { exponent })
    }

    /// Graded grid with exponent min(2/α − 1, 4), which resolves the t^α
    /// behaviour of the relaxation solution at the origin.
    pub fn graded_for_alpha(t_end: f64, steps: usize, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::Domain("alpha must lie in (0, 1]"));
        }
        Self::graded(t_end, steps, (2.0 / alpha - 1.0).clamp(1.0, 4.0))
    }

    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        Self::checked(points, GridKind::Irregular)
    }

    fn checked(points: Vec<f64>, kind: GridKind) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidGrid("at least two points are required"));
        }
        if !(points[0] >= 0.0) {
            return Err(Error::InvalidGrid("grid must start at t ≥ 0"));
        }
        if points.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidGrid("grid points must be finite"));
        }
        if points.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidGrid("points must be strictly increasing"));
        }
        Ok(Self { points, kind })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of intervals.
    pub fn steps(&self) -> usize {
        self.points.len() - 1
    }

    pub fn t_start(&self) -> f64 {
        self.points[0]
    }

    pub fn t_end(&self) -> f64 {
        self.points[self.points.len() - 1]
    }

    /// Spacing for uniform grids.
    pub fn uniform_step(&self) -> Option<f64> {
        match self.kind {
            GridKind::Uniform => Some((self.t_end() - self.t_start()) / self.steps() as f64),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_spacing_within_an_ulp() {
        let g = TimeGrid::uniform(0.0, 5.0, 1000).unwrap();
        let h = g.uniform_step().unwrap();
        assert_eq!(g.len(), 1001);
        assert_eq!(g.t_end(), 5.0);
        for w in g.points().windows(2) {
            assert!(((w[1] - w[0]) - h).abs() <= 8.0 * f64::EPSILON * 5.0);
        }
    }

    #[test]
    fn graded_clusters_at_origin() {
        let g = TimeGrid::graded(5.0, 100, 3.0).unwrap();
        let p = g.points();
        assert_eq!(p[0], 0.0);
        assert!((p[50] - 5.0 * 0.125).abs() < 1e-15);
        assert!(p[1] - p[0] < p[100] - p[99]);
        let a = TimeGrid::graded_for_alpha(5.0, 10, 0.25).unwrap();
        assert_eq!(a.kind(), GridKind::Graded { exponent: 4.0 });
        let b = TimeGrid::graded_for_alpha(5.0, 10, 0.75).unwrap();
        assert!(matches!(b.kind(), GridKind::Graded { exponent } if (exponent - 5.0 / 3.0).abs() < 1e-15));
    }

    #[test]
    fn invalid_grids() {
        assert!(TimeGrid::from_points(alloc::vec![0.0, 1.0, 1.0]).is_err());
        assert!(TimeGrid::from_points(alloc::vec![0.0]).is_err());
        assert!(TimeGrid::from_points(alloc::vec![-1.0, 1.0]).is_err());
        assert!(TimeGrid::uniform(1.0, 1.0, 4).is_err());
        assert!(TimeGrid::uniform(0.0, 1.0, 0).is_err());
        assert!(TimeGrid::graded(1.0, 4, 0.5).is_err());
    }
}
