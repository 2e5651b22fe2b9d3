use alloc::vec::Vec;

use crate::error::Result;
use crate::grid::TimeGrid;
use crate::mittag_leffler::SolverConfig;
use crate::relaxation::{big_r, phi, psi, relax_coeff};

/// Which route produced a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    ClosedForm,
    FractionalAdams,
    OdeEquivalent,
}

/// Grid-aligned samples of Ψ and, optionally, Φ, r and R for one α.
#[derive(Debug, Clone, PartialEq)]
pub struct RelaxationTrajectory {
    pub alpha: f64,
    pub grid: TimeGrid,
    pub psi_vals: Vec<f64>,
    pub phi_vals: Option<Vec<f64>>,
    pub r_vals: Option<Vec<f64>>,
    pub big_r_vals: Option<Vec<f64>>,
    pub provenance: Provenance,
}

impl RelaxationTrajectory {
    pub fn new(alpha: f64, grid: TimeGrid, psi_vals: Vec<f64>, provenance: Provenance) -> Self {
        debug_assert_eq!(grid.len(), psi_vals.len());
        Self { alpha, grid, psi_vals, phi_vals: None, r_vals: None, big_r_vals: None, provenance }
    }

    /// Ψ_α sampled from the Mittag-Leffler evaluation.
    pub fn closed_form(alpha: f64, grid: TimeGrid, cfg: &SolverConfig) -> Result<Self> {
        let psi_vals = grid
            .points()
            .iter()
            .map(|&t| psi(alpha, t, cfg).map(|r| r.value))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(alpha, grid, psi_vals, Provenance::ClosedForm))
    }

    /// Ψ, Φ, r and R from the Mittag-Leffler evaluation. At t = 0 with α < 1
    /// the singular quantities are stored as ∓∞.
    pub fn closed_form_full(alpha: f64, grid: TimeGrid, cfg: &SolverConfig) -> Result<Self> {
        let mut traj = Self::closed_form(alpha, grid, cfg)?;
        let n = traj.grid.len();
        let (mut phis, mut rs, mut bigs) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
        for &t in traj.grid.points() {
            if t == 0.0 && alpha < 1.0 {
                phis.push(f64::NEG_INFINITY);
                rs.push(f64::INFINITY);
            } else {
                phis.push(phi(alpha, t, cfg)?.value);
                rs.push(relax_coeff(alpha, t, cfg)?.value);
            }
            bigs.push(big_r(alpha, t, cfg)?.value);
        }
        traj.phi_vals = Some(phis);
        traj.r_vals = Some(rs);
        traj.big_r_vals = Some(bigs);
        Ok(traj)
    }

    pub fn times(&self) -> &[f64] {
        self.grid.points()
    }

    /// Ψ(0) = 1 when the grid starts at 0, every Ψ in (0, 1], nonincreasing.
    pub fn satisfies_invariants(&self) -> bool {
        let starts_right = self.grid.t_start() != 0.0 || self.psi_vals[0] == 1.0;
        let bounded = self.psi_vals.iter().all(|&p| p > 0.0 && p <= 1.0);
        let monotone = self.psi_vals.windows(2).all(|w| w[1] <= w[0]);
        starts_right && bounded && monotone
    }
}
