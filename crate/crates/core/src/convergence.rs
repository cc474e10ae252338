//! Mesh-refinement error measurement for the accuracy benchmarks.

use crate::scenario;
use crate::sl1d::{FluxMode, Order};
use crate::solver::{self, SchemeVariant, SolverOptions};
use crate::Result;
use crate::limiter::TvbConstants;

/// L1/L2/Linf errors of the sine advection test against the exact
/// translated profile.
pub fn advect1d_sine_errors(n: usize, cfl: f64, t_final: f64) -> Result<(f64, f64, f64)> {
    let (line, grid) = scenario::advect1d_sine_line(n)?;
    let out = solver::run_advect1d(line, 1.0, cfl, t_final, FluxMode::Hweno, Order::Quintic5)?;
    let mut l1 = 0.0;
    let mut l2 = 0.0;
    let mut linf = 0.0f64;
    for (k, v) in out.final_line.f.iter().enumerate() {
        let err = (v - (grid.center(k) - t_final).sin()).abs();
        l1 += err * grid.dx;
        l2 += err * err * grid.dx;
        linf = linf.max(err);
    }
    Ok((l1, l2.sqrt(), linf))
}

/// L1/L2/Linf errors of the rotating Gaussian after one revolution.
pub fn rotation_gaussian_errors(n: usize, cfl: f64, t_final: f64) -> Result<(f64, f64, f64)> {
    let (state, speeds) = scenario::rotation_gaussian_setup(n)?;
    let initial = state.f.clone();
    let opts = SolverOptions::hweno(
        SchemeVariant::WithoutLimiter,
        TvbConstants { m_x: 1.0, m_v: 1.0 },
    );
    let out = solver::run_rotation(state, &speeds, cfl, t_final, &opts, &[])?;
    let cell = out.final_state.grid_x.dx * out.final_state.grid_v.dx;
    let mut l1 = 0.0;
    let mut l2 = 0.0;
    let mut linf = 0.0f64;
    for (a, b) in out.final_state.f.iter().zip(initial.iter()) {
        let err = (a - b).abs();
        l1 += err * cell;
        l2 += err * err * cell;
        linf = linf.max(err);
    }
    Ok((l1, l2.sqrt(), linf))
}

/// Per-refinement observed order `log(e_prev/e_cur) / log(n_cur/n_prev)`.
pub fn pairwise_orders(ns: &[usize], errs: &[f64]) -> Vec<f64> {
    (1..ns.len())
        .map(|k| (errs[k - 1] / errs[k]).ln() / (ns[k] as f64 / ns[k - 1] as f64).ln())
        .collect()
}

/// Least-squares slope of `log(error)` against `log(1/n)` over the last
/// `points` meshes.
pub fn fitted_order(ns: &[usize], errs: &[f64], points: usize) -> f64 {
    let take = points.min(ns.len());
    let start = ns.len() - take;
    let xs: Vec<f64> = ns[start..].iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = errs[start..].iter().map(|&e| e.ln()).collect();
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    -(n * sxy - sx * sy) / (n * sxx - sx * sx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fitted_order_recovers_exact_power_law() {
        let ns = [32usize, 64, 128, 256];
        let errs: Vec<f64> = ns.iter().map(|&n| 3.0 * (n as f64).powi(-5)).collect();
        assert!((fitted_order(&ns, &errs, 3) - 5.0).abs() < 1e-12);
        let orders = pairwise_orders(&ns, &errs);
        for o in orders {
            assert!((o - 5.0).abs() < 1e-12);
        }
    }
}
