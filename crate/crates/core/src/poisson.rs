//! Charge density and the periodic electrostatic field solve.
//!
//! The field satisfies dE/dx = rho with rho = ∫ f dv − 1 (rectangular-rule
//! quadrature in v). In Fourier space E_hat = rho_hat / (i kappa) for the
//! nonzero modes; the mean mode is projected out, which both fixes the
//! gauge and absorbs the quadrature noise in the neutrality condition.

use crate::grid::PhaseState;
use crate::{Error, Result};
use rustfft::{num_complex::Complex, FftPlanner};

/// Electric field samples at the x grid points, with a cached max norm.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldE {
    pub e: Vec<f64>,
    pub max_abs: f64,
}

impl FieldE {
    pub fn new(e: Vec<f64>) -> Self {
        let max_abs = e.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        Self { e, max_abs }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            e: vec![0.0; n],
            max_abs: 0.0,
        }
    }
}

/// Charge density `rho_i = sum_j f_ij dv - 1`.
pub fn compute_rho(state: &PhaseState) -> Vec<f64> {
    let dv = state.grid_v.dx;
    (0..state.nx())
        .map(|i| {
            let row: Vec<f64> = state.f.row(i).iter().copied().collect();
            crate::diagnostics::pairwise_sum(&row) * dv - 1.0
        })
        .collect()
}

/// Solve dE/dx = rho on a periodic domain of the given length with the
/// zero-mean gauge. Requires an even number of points; the Nyquist mode is
/// dropped along with the mean.
pub fn solve_field(rho: &[f64], length: f64) -> Result<FieldE> {
    let n = rho.len();
    if n == 0 || n % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "field solve requires an even number of points, got {n}"
        )));
    }
    if !(length > 0.0) {
        return Err(Error::InvalidArgument(format!("bad domain length {length}")));
    }
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(n);
    let ifft = planner.plan_fft_inverse(n);

    let mut buf: Vec<Complex<f64>> = rho.iter().map(|&r| Complex::new(r, 0.0)).collect();
    fft.process(&mut buf);

    let two_pi = 2.0 * std::f64::consts::PI;
    for (m, b) in buf.iter_mut().enumerate() {
        let m_signed = if m <= n / 2 { m as i64 } else { m as i64 - n as i64 };
        if m_signed == 0 || m == n / 2 {
            *b = Complex::new(0.0, 0.0);
        } else {
            let kappa = two_pi * m_signed as f64 / length;
            // divide by i*kappa
            *b = Complex::new(b.im / kappa, -b.re / kappa);
        }
    }
    ifft.process(&mut buf);
    let scale = 1.0 / n as f64;
    Ok(FieldE::new(buf.iter().map(|c| c.re * scale).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Boundary, Grid1D, PhaseState};
    use ndarray::Array2;
    use std::f64::consts::PI;

    fn maxwellian_state(nx: usize, nv: usize, alpha: f64, k: f64) -> PhaseState {
        let gx = Grid1D::new(nx, 0.0, 2.0 * PI / k, Boundary::Periodic).unwrap();
        let gv = Grid1D::new(nv, -5.0, 5.0, Boundary::Zero).unwrap();
        let mut f = Array2::zeros((nx, nv));
        for i in 0..nx {
            for j in 0..nv {
                let x = gx.center(i);
                let v = gv.center(j);
                f[[i, j]] = (1.0 + alpha * (k * x).cos()) * (-0.5 * v * v).exp()
                    / (2.0 * PI).sqrt();
            }
        }
        PhaseState::from_field(f, gx, gv).unwrap()
    }

    #[test]
    fn unperturbed_maxwellian_is_nearly_neutral() {
        // the truncated tail beyond |v| = 5 carries ~5.7e-7 of the unit mass
        let state = maxwellian_state(16, 128, 0.0, 0.5);
        let rho = compute_rho(&state);
        let tail = 5.733e-7;
        for r in &rho {
            assert!(r.abs() < 1e-6, "rho = {r:e}");
            assert!((r + tail).abs() < 1e-8, "rho = {r:e} vs -{tail:e}");
        }
    }

    #[test]
    fn empty_field_has_unit_ion_background() {
        let gx = Grid1D::new(8, 0.0, 1.0, Boundary::Periodic).unwrap();
        let gv = Grid1D::new(8, -5.0, 5.0, Boundary::Zero).unwrap();
        let state = PhaseState::from_field(Array2::zeros((8, 8)), gx, gv).unwrap();
        for r in compute_rho(&state) {
            assert_eq!(r, -1.0);
        }
    }

    #[test]
    fn perturbed_maxwellian_density_is_cosine() {
        let state = maxwellian_state(64, 128, 0.01, 0.5);
        let rho = compute_rho(&state);
        for (i, r) in rho.iter().enumerate() {
            let x = state.grid_x.center(i);
            // the tail deficit scales the whole profile by (1 - 5.73e-7)
            assert!((r - 0.01 * (0.5 * x).cos()).abs() < 1e-6);
        }
    }

    #[test]
    fn zero_density_gives_zero_field() {
        let e = solve_field(&vec![0.0; 32], 2.0 * PI).unwrap();
        for v in &e.e {
            assert_eq!(*v, 0.0);
        }
        assert_eq!(e.max_abs, 0.0);
    }

    #[test]
    fn cosine_density_integrates_to_sine_field() {
        let n = 64;
        let k = 0.5;
        let length = 2.0 * PI / k;
        let amp = 0.3;
        let rho: Vec<f64> = (0..n)
            .map(|i| {
                let x = (i as f64 + 0.5) * length / n as f64;
                amp * (k * x).cos()
            })
            .collect();
        let e = solve_field(&rho, length).unwrap();
        for (i, v) in e.e.iter().enumerate() {
            let x = (i as f64 + 0.5) * length / n as f64;
            assert!((v - amp / k * (k * x).sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn weak_landau_field_amplitude() {
        let state = maxwellian_state(64, 128, 0.01, 0.5);
        let rho = compute_rho(&state);
        let length = state.grid_x.x_hi;
        let e = solve_field(&rho, length).unwrap();
        let dx = state.grid_x.dx;
        let sq: Vec<f64> = e.e.iter().map(|v| v * v * dx).collect();
        let l2 = crate::diagnostics::pairwise_sum(&sq).sqrt();
        let analytic = 0.01 / 0.5 * (length / 2.0).sqrt();
        assert!((l2 - analytic).abs() < 1e-6, "|E|_2 = {l2}, want {analytic}");
    }

    #[test]
    fn field_has_zero_mean() {
        let rho: Vec<f64> = (0..128)
            .map(|i| ((i * i) % 17) as f64 / 17.0 - 0.3)
            .collect();
        let e = solve_field(&rho, 3.7).unwrap();
        let mean: f64 = e.e.iter().sum::<f64>() / 128.0;
        assert!(mean.abs() < 1e-13);
    }

    #[test]
    fn solve_is_linear() {
        let n = 32;
        let r1: Vec<f64> = (0..n).map(|i| ((3 * i) % 7) as f64 - 3.0).collect();
        let r2: Vec<f64> = (0..n).map(|i| ((5 * i + 1) % 11) as f64 / 2.0).collect();
        let combo: Vec<f64> = r1.iter().zip(&r2).map(|(a, b)| 2.0 * a - 0.5 * b).collect();
        let e1 = solve_field(&r1, 1.0).unwrap();
        let e2 = solve_field(&r2, 1.0).unwrap();
        let ec = solve_field(&combo, 1.0).unwrap();
        for i in 0..n {
            let expect = 2.0 * e1.e[i] - 0.5 * e2.e[i];
            assert!((ec.e[i] - expect).abs() < 1e-11);
        }
    }

    #[test]
    fn spectral_derivative_of_field_recovers_density() {
        // band-limited density: derivative of E reproduces its mean-free part
        let n = 64;
        let length = 4.0 * PI;
        let rho: Vec<f64> = (0..n)
            .map(|i| {
                let x = (i as f64 + 0.5) * length / n as f64;
                0.4 * (2.0 * PI / length * x).cos() + 0.1 * (3.0 * 2.0 * PI / length * x).sin()
            })
            .collect();
        let e = solve_field(&rho, length).unwrap();
        // fourth-order finite difference is not enough; differentiate spectrally
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(n);
        let ifft = planner.plan_fft_inverse(n);
        let mut buf: Vec<Complex<f64>> = e.e.iter().map(|&v| Complex::new(v, 0.0)).collect();
        fft.process(&mut buf);
        for m in 0..n {
            let ms = if m <= n / 2 { m as i64 } else { m as i64 - n as i64 };
            if m == n / 2 {
                buf[m] = Complex::new(0.0, 0.0);
            } else {
                let kappa = 2.0 * PI * ms as f64 / length;
                buf[m] = Complex::new(-buf[m].im * kappa, buf[m].re * kappa);
            }
        }
        ifft.process(&mut buf);
        for (i, b) in buf.iter().enumerate() {
            assert!((b.re / n as f64 - rho[i]).abs() < 1e-10);
        }
    }

    #[test]
    fn odd_sizes_are_rejected() {
        assert!(solve_field(&vec![0.0; 63], 1.0).is_err());
    }
}
