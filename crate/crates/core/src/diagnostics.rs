//! Conserved-quantity and field-norm computation.
//!
//! All quadratures are rectangular-rule sums over the phase-space grid,
//! accumulated with a fixed pairwise order so results do not depend on the
//! platform or thread count.

use crate::grid::PhaseState;
use crate::poisson::FieldE;
use crate::{Error, Result};

/// Deterministic pairwise summation over index order.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Quantity measured by [`phase_norm`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    Mass,
    L1,
    L2,
    Linf,
    /// Kinetic part `∫∫ f v^2` plus field part `∫ E^2`.
    Energy,
    /// `∫∫ f log|f|`, with `0 log 0 = 0`.
    Entropy,
}

/// Rectangular-rule norm of a phase-space state. `field` is required for
/// `Energy` and ignored otherwise.
pub fn phase_norm(state: &PhaseState, kind: NormKind, field: Option<&FieldE>) -> Result<f64> {
    let dx = state.grid_x.dx;
    let dv = state.grid_v.dx;
    let cell = dx * dv;
    let nx = state.nx();
    let nv = state.nv();
    let mut terms = Vec::with_capacity(nx * nv);
    match kind {
        NormKind::Mass => {
            for v in state.f.iter() {
                terms.push(v * cell);
            }
            Ok(pairwise_sum(&terms))
        }
        NormKind::L1 => {
            for v in state.f.iter() {
                terms.push(v.abs() * cell);
            }
            Ok(pairwise_sum(&terms))
        }
        NormKind::L2 => {
            for v in state.f.iter() {
                terms.push(v * v * cell);
            }
            Ok(pairwise_sum(&terms).sqrt())
        }
        NormKind::Linf => Ok(state.f.iter().fold(0.0f64, |m, v| m.max(v.abs()))),
        NormKind::Energy => {
            let field = field.ok_or_else(|| {
                Error::InvalidArgument("energy norm needs the electric field".into())
            })?;
            for ((_, j), v) in state.f.indexed_iter() {
                let vj = state.grid_v.center(j);
                terms.push(v * vj * vj * cell);
            }
            let kinetic = pairwise_sum(&terms);
            let fe: Vec<f64> = field.e.iter().map(|e| e * e * dx).collect();
            Ok(kinetic + pairwise_sum(&fe))
        }
        NormKind::Entropy => {
            for v in state.f.iter() {
                terms.push(if *v == 0.0 { 0.0 } else { v * v.abs().ln() * cell });
            }
            Ok(pairwise_sum(&terms))
        }
    }
}

/// Deviation of each entry from the first, relative to its magnitude.
/// Falls back to absolute deviations (flagged) when the first entry is zero.
pub fn relative_deviation(series: &[f64]) -> (Vec<f64>, bool) {
    if series.is_empty() {
        return (Vec::new(), false);
    }
    let base = series[0];
    if base == 0.0 {
        (series.iter().map(|v| v - base).collect(), true)
    } else {
        (series.iter().map(|v| (v - base) / base.abs()).collect(), false)
    }
}

/// Least-squares slope of `log(local maxima)` against their times, over a
/// window. This is how exponential growth or damping rates are read off an
/// oscillating field-norm series.
pub fn fit_rate(times: &[f64], values: &[f64], window: (f64, f64)) -> Result<f64> {
    assert_eq!(times.len(), values.len());
    let mut peaks: Vec<(f64, f64)> = Vec::new();
    for k in 1..values.len().saturating_sub(1) {
        if times[k] < window.0 || times[k] > window.1 {
            continue;
        }
        if values[k] > values[k - 1] && values[k] > values[k + 1] && values[k] > 0.0 {
            peaks.push((times[k], values[k].ln()));
        }
    }
    if peaks.len() < 3 {
        return Err(Error::TooFewExtrema { found: peaks.len() });
    }
    let n = peaks.len() as f64;
    let st: f64 = peaks.iter().map(|p| p.0).sum();
    let sy: f64 = peaks.iter().map(|p| p.1).sum();
    let stt: f64 = peaks.iter().map(|p| p.0 * p.0).sum();
    let sty: f64 = peaks.iter().map(|p| p.0 * p.1).sum();
    Ok((n * sty - st * sy) / (n * stt - st * st))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Boundary, Grid1D, PhaseState};
    use ndarray::Array2;
    use std::f64::consts::PI;

    #[test]
    fn norms_of_zero_and_unit_fields() {
        let gx = Grid1D::new(10, 0.0, 1.0, Boundary::Periodic).unwrap();
        let gv = Grid1D::new(10, 0.0, 1.0, Boundary::Zero).unwrap();
        let zero = PhaseState::from_field(Array2::zeros((10, 10)), gx, gv).unwrap();
        for kind in [NormKind::Mass, NormKind::L1, NormKind::L2, NormKind::Entropy] {
            assert_eq!(phase_norm(&zero, kind, None).unwrap(), 0.0);
        }
        let one = PhaseState::from_field(Array2::ones((10, 10)), gx, gv).unwrap();
        assert!((phase_norm(&one, NormKind::Mass, None).unwrap() - 1.0).abs() < 1e-14);
        assert!((phase_norm(&one, NormKind::L1, None).unwrap() - 1.0).abs() < 1e-14);
        assert!((phase_norm(&one, NormKind::L2, None).unwrap() - 1.0).abs() < 1e-14);
        // log 1 = 0
        assert_eq!(phase_norm(&one, NormKind::Entropy, None).unwrap(), 0.0);
    }

    #[test]
    fn weak_landau_mass_is_domain_area_minus_tail() {
        let gx = Grid1D::new(64, 0.0, 4.0 * PI, Boundary::Periodic).unwrap();
        let gv = Grid1D::new(128, -5.0, 5.0, Boundary::Zero).unwrap();
        let mut f = Array2::zeros((64, 128));
        for i in 0..64 {
            for j in 0..128 {
                let x = gx.center(i);
                let v = gv.center(j);
                f[[i, j]] =
                    (1.0 + 0.01 * (0.5 * x).cos()) * (-0.5 * v * v).exp() / (2.0 * PI).sqrt();
            }
        }
        let state = PhaseState::from_field(f, gx, gv).unwrap();
        let mass = phase_norm(&state, NormKind::Mass, None).unwrap();
        // the |v| > 5 Maxwellian tail (~5.7e-7 relative) is cut off
        assert!((mass - 4.0 * PI).abs() < 1e-5);
        assert!((mass - 4.0 * PI * (1.0 - 5.733e-7)).abs() < 1e-7);
    }

    #[test]
    fn norm_scaling() {
        let gx = Grid1D::new(8, 0.0, 1.0, Boundary::Periodic).unwrap();
        let gv = Grid1D::new(8, -1.0, 1.0, Boundary::Zero).unwrap();
        let mut f = Array2::zeros((8, 8));
        for ((i, j), v) in f.indexed_iter_mut() {
            *v = ((i * 3 + j) % 5) as f64 - 1.0;
        }
        let s1 = PhaseState::from_field(f.clone(), gx, gv).unwrap();
        let s3 = PhaseState::from_field(f.mapv(|v| -3.0 * v), gx, gv).unwrap();
        let l1a = phase_norm(&s1, NormKind::L1, None).unwrap();
        let l1b = phase_norm(&s3, NormKind::L1, None).unwrap();
        assert!((l1b - 3.0 * l1a).abs() < 1e-13);
        let l2a = phase_norm(&s1, NormKind::L2, None).unwrap();
        let l2b = phase_norm(&s3, NormKind::L2, None).unwrap();
        assert!((l2b - 3.0 * l2a).abs() < 1e-13);
        let ma = phase_norm(&s1, NormKind::Mass, None).unwrap();
        let mb = phase_norm(&s3, NormKind::Mass, None).unwrap();
        assert!((mb + 3.0 * ma).abs() < 1e-13);
    }

    #[test]
    fn relative_deviation_cases() {
        let (d, flagged) = relative_deviation(&[2.0, 2.0, 2.0]);
        assert!(!flagged);
        assert_eq!(d, vec![0.0, 0.0, 0.0]);
        let (d, _) = relative_deviation(&[2.0, 1.0]);
        assert_eq!(d, vec![0.0, -0.5]);
        let (d, flagged) = relative_deviation(&[0.0, 0.25]);
        assert!(flagged);
        assert_eq!(d, vec![0.0, 0.25]);
    }

    #[test]
    fn fit_rate_on_synthetic_damping() {
        let dt = 0.01;
        let n = 4000;
        let times: Vec<f64> = (0..n).map(|k| k as f64 * dt).collect();
        let values: Vec<f64> = times
            .iter()
            .map(|t| (-0.1533 * t).exp() * (1.4 * t).cos().abs())
            .collect();
        let rate = fit_rate(&times, &values, (0.0, 30.0)).unwrap();
        assert!((rate + 0.1533).abs() < 1e-3, "rate {rate}");
    }

    #[test]
    fn fit_rate_on_constant_amplitude() {
        let times: Vec<f64> = (0..3000).map(|k| k as f64 * 0.01).collect();
        let values: Vec<f64> = times.iter().map(|t| (2.0 * t).cos().abs()).collect();
        let rate = fit_rate(&times, &values, (0.0, 30.0)).unwrap();
        assert!(rate.abs() < 1e-6);
    }

    #[test]
    fn fit_rate_reports_missing_extrema() {
        let times = [0.0, 1.0, 2.0, 3.0];
        let values = [1.0, 2.0, 3.0, 4.0];
        match fit_rate(&times, &values, (0.0, 3.0)) {
            Err(Error::TooFewExtrema { found }) => assert_eq!(found, 0),
            other => panic!("expected TooFewExtrema, got {other:?}"),
        }
    }

    #[test]
    fn pairwise_sum_matches_naive_on_small_inputs() {
        let xs: Vec<f64> = (0..100).map(|k| (k as f64 * 0.7).sin()).collect();
        let naive: f64 = xs.iter().sum();
        assert!((pairwise_sum(&xs) - naive).abs() < 1e-12);
    }
}
