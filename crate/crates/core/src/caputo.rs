//! Caputo derivative of sampled data by the L1 scheme.
//!
//! The samples are joined piecewise linearly and the Caputo integral
//! (1/Γ(1−α)) ∫_0^t f′(s) (t − s)^{−α} ds of that interpolant is evaluated
//! exactly, which makes the rule exact for affine data on any grid.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gamma::rgamma;
use crate::trajectory::RelaxationTrajectory;

/// (d + h)^p − d^p without cancellation, for d ≥ 0, h > 0.
#[inline]
fn power_increment(d: f64, h: f64, p: f64) -> f64 {
    if d == 0.0 {
        libm::pow(h, p)
    } else {
        libm::pow(d, p) * libm::expm1(p * libm::log1p(h / d))
    }
}

/// L1 approximation of the order-α Caputo derivative at `times[index]`.
///
/// `times` must start at the lower terminal of the derivative and be
/// strictly increasing. For α = 1 the rule reduces to the backward
/// difference.
pub fn caputo_derivative(times: &[f64], values: &[f64], alpha: f64, index: usize) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain("alpha must lie in (0, 1]"));
    }
    if times.len() != values.len() {
        return Err(Error::Domain("times and values differ in length"));
    }
    if index == 0 || index >= times.len() {
        return Err(Error::Domain("index must address a node after the first"));
    }
    if times[..=index].windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidGrid("duplicate or decreasing sample times"));
    }
    let tn = times[index];
    if alpha == 1.0 {
        return Ok((values[index] - values[index - 1]) / (tn - times[index - 1]));
    }
    let p = 1.0 - alpha;
    let mut acc = 0.0;
    for k in 1..=index {
        let h = times[k] - times[k - 1];
        let slope = (values[k] - values[k - 1]) / h;
        acc += slope * power_increment(tn - times[k], h, p);
    }
    Ok(acc * rgamma(2.0 - alpha))
}

/// D^α Ψ + Ψ at every node after the first: the discrete residual of the
/// relaxation equation, whatever produced the trajectory.
pub fn residual_check(traj: &RelaxationTrajectory, alpha: f64) -> Result<Vec<f64>> {
    let times = traj.grid.points();
    if traj.grid.t_start() != 0.0 {
        return Err(Error::InvalidGrid("residual needs a grid starting at t = 0"));
    }
    (1..times.len())
        .map(|j| caputo_derivative(times, &traj.psi_vals, alpha, j).map(|d| d + traj.psi_vals[j]))
        .collect()
}
