//! Scenario catalog: initial data, domains and per-scenario defaults.

use crate::grid::{Boundary, Grid1D, Line, PhaseState};
use crate::limiter::TvbConstants;
use crate::sl1d::{FluxMode, Order};
use crate::solver::{FixedSpeeds, SchemeVariant, SolverOptions};
use crate::{Error, Result};
use ndarray::Array2;
use std::f64::consts::PI;
use std::path::PathBuf;

/// Built-in scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    Advect1dSine,
    Advect1dFourprofile,
    RotationGaussian,
    RotationLeveque,
    LandauWeak,
    LandauStrong,
    TwostreamA,
    TwostreamB,
}

impl Scenario {
    pub const ALL: [Scenario; 8] = [
        Scenario::Advect1dSine,
        Scenario::Advect1dFourprofile,
        Scenario::RotationGaussian,
        Scenario::RotationLeveque,
        Scenario::LandauWeak,
        Scenario::LandauStrong,
        Scenario::TwostreamA,
        Scenario::TwostreamB,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Scenario::Advect1dSine => "advect1d-sine",
            Scenario::Advect1dFourprofile => "advect1d-fourprofile",
            Scenario::RotationGaussian => "rotation-gaussian",
            Scenario::RotationLeveque => "rotation-leveque",
            Scenario::LandauWeak => "landau-weak",
            Scenario::LandauStrong => "landau-strong",
            Scenario::TwostreamA => "twostream-a",
            Scenario::TwostreamB => "twostream-b",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|s| s.name() == name)
            .ok_or_else(|| Error::UnknownScenario(name.to_string()))
    }

    pub fn is_1d(&self) -> bool {
        matches!(self, Scenario::Advect1dSine | Scenario::Advect1dFourprofile)
    }

    pub fn is_rotation(&self) -> bool {
        matches!(self, Scenario::RotationGaussian | Scenario::RotationLeveque)
    }

    pub fn is_vp(&self) -> bool {
        !self.is_1d() && !self.is_rotation()
    }
}

/// Full configuration of one run. The CLI mirrors these fields as flags
/// and as keys of a JSON config file; flags win over file values.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub nx: usize,
    pub nv: usize,
    pub cfl: f64,
    pub t_final: f64,
    pub variant: SchemeVariant,
    pub m_x: f64,
    pub m_v: f64,
    pub output_dir: PathBuf,
    pub snapshot_times: Vec<f64>,
}

impl ScenarioConfig {
    /// Paper operating point of a scenario: grid, final time, CFL 1.2
    /// without the limiter, and the reported TVB constants for the
    /// with-limiter variant.
    pub fn defaults(scenario: Scenario) -> Self {
        let (nx, nv, t_final, m_x, m_v) = match scenario {
            Scenario::Advect1dSine => (64, 1, 20.0, 1.0, 1.0),
            Scenario::Advect1dFourprofile => (200, 1, 8.0, 1.0, 1.0),
            Scenario::RotationGaussian => (160, 160, 2.0 * PI, 1.0, 1.0),
            Scenario::RotationLeveque => (200, 200, 1.0, 1.0, 1.0),
            Scenario::LandauWeak => (64, 128, 60.0, 1.0, 1.0),
            Scenario::LandauStrong => (128, 256, 40.0, 1.0, 1.0),
            Scenario::TwostreamA => (64, 128, 53.0, 1.0, 10.0),
            Scenario::TwostreamB => (512, 512, 70.0, 0.1, 0.1),
        };
        ScenarioConfig {
            scenario,
            nx,
            nv,
            cfl: 1.2,
            t_final,
            variant: SchemeVariant::WithoutLimiter,
            m_x,
            m_v,
            output_dir: PathBuf::from("runs").join(scenario.name()),
            snapshot_times: Vec::new(),
        }
    }

    /// Default CFL of a variant: 1.2 plain, 2.2 with the limiter.
    pub fn default_cfl(variant: SchemeVariant) -> f64 {
        match variant {
            SchemeVariant::WithoutLimiter => 1.2,
            SchemeVariant::WithLimiter => 2.2,
        }
    }

    pub fn solver_options(&self) -> SolverOptions {
        SolverOptions {
            variant: self.variant,
            tvb: TvbConstants {
                m_x: self.m_x,
                m_v: self.m_v,
            },
            mode: FluxMode::Hweno,
            order: Order::Quintic5,
        }
    }
}

// ---------------------------------------------------------------------
// initial data

/// Perturbed Maxwellian `(1 + alpha cos(kx)) exp(-v^2/2) / sqrt(2 pi)` on
/// `[0, 2 pi / k] x [-5, 5]`.
pub fn landau_state(nx: usize, nv: usize, alpha: f64, k: f64) -> Result<PhaseState> {
    let gx = Grid1D::new(nx, 0.0, 2.0 * PI / k, Boundary::Periodic)?;
    let gv = Grid1D::new(nv, -5.0, 5.0, Boundary::Zero)?;
    let norm = 1.0 / (2.0 * PI).sqrt();
    let mut f = Array2::zeros((nx, nv));
    for i in 0..nx {
        let x = gx.center(i);
        for j in 0..nv {
            let v = gv.center(j);
            f[[i, j]] = norm * (1.0 + alpha * (k * x).cos()) * (-0.5 * v * v).exp();
        }
    }
    PhaseState::from_field(f, gx, gv)
}

/// Bump-on-tail style two-stream beams
/// `2/(7 sqrt(2 pi)) (1 + 5 v^2)(1 + alpha((cos 2kx + cos 3kx)/1.2 + cos kx)) exp(-v^2/2)`.
pub fn twostream_a_state(nx: usize, nv: usize) -> Result<PhaseState> {
    let (alpha, k) = (0.01, 0.5);
    let gx = Grid1D::new(nx, 0.0, 2.0 * PI / k, Boundary::Periodic)?;
    let gv = Grid1D::new(nv, -5.0, 5.0, Boundary::Zero)?;
    let norm = 2.0 / (7.0 * (2.0 * PI).sqrt());
    let mut f = Array2::zeros((nx, nv));
    for i in 0..nx {
        let x = gx.center(i);
        let pert = 1.0 + alpha * (((2.0 * k * x).cos() + (3.0 * k * x).cos()) / 1.2 + (k * x).cos());
        for j in 0..nv {
            let v = gv.center(j);
            f[[i, j]] = norm * (1.0 + 5.0 * v * v) * pert * (-0.5 * v * v).exp();
        }
    }
    PhaseState::from_field(f, gx, gv)
}

/// Symmetric counter-streaming Maxwellians with a long-wave perturbation,
/// `u = 0.99`, `v_th = 0.3`, `k = 2/13`.
pub fn twostream_b_state(nx: usize, nv: usize) -> Result<PhaseState> {
    let (u, v_th, k) = (0.99, 0.3, 2.0 / 13.0);
    let gx = Grid1D::new(nx, 0.0, 2.0 * PI / k, Boundary::Periodic)?;
    let gv = Grid1D::new(nv, -5.0, 5.0, Boundary::Zero)?;
    let norm = 1.0 / (2.0 * v_th * (2.0 * PI).sqrt());
    let two_vth2 = 2.0 * v_th * v_th;
    let mut f = Array2::zeros((nx, nv));
    for i in 0..nx {
        let x = gx.center(i);
        let pert = 1.0 + 0.05 * (k * x).cos();
        for j in 0..nv {
            let v = gv.center(j);
            let beams =
                (-(v - u) * (v - u) / two_vth2).exp() + (-(v + u) * (v + u) / two_vth2).exp();
            f[[i, j]] = norm * beams * pert;
        }
    }
    PhaseState::from_field(f, gx, gv)
}

/// Gaussian on `[-2 pi, 2 pi]^2` rotating with speeds `(-y, x)`.
pub fn rotation_gaussian_setup(n: usize) -> Result<(PhaseState, FixedSpeeds)> {
    let gx = Grid1D::new(n, -2.0 * PI, 2.0 * PI, Boundary::Zero)?;
    let gy = Grid1D::new(n, -2.0 * PI, 2.0 * PI, Boundary::Zero)?;
    let mut f = Array2::zeros((n, n));
    for i in 0..n {
        let x = gx.center(i);
        for j in 0..n {
            let y = gy.center(j);
            f[[i, j]] = (-x * x - y * y).exp();
        }
    }
    let state = PhaseState::from_field(f, gx, gy)?;
    let speeds = FixedSpeeds {
        x: (0..n).map(|j| -gy.center(j)).collect(),
        y: (0..n).map(|i| gx.center(i)).collect(),
        x_bound: 2.0 * PI,
        y_bound: 2.0 * PI,
    };
    Ok((state, speeds))
}

/// Slotted disk, cone and smooth hump on `[-1/2, 1/2]^2`, rotating with
/// speeds `(-2 pi y, 2 pi x)` (one revolution per unit time).
pub fn rotation_leveque_setup(n: usize) -> Result<(PhaseState, FixedSpeeds)> {
    let gx = Grid1D::new(n, -0.5, 0.5, Boundary::Zero)?;
    let gy = Grid1D::new(n, -0.5, 0.5, Boundary::Zero)?;
    let r0 = 0.15;
    let mut f = Array2::zeros((n, n));
    for i in 0..n {
        let x = gx.center(i);
        for j in 0..n {
            let y = gy.center(j);
            let r_disk = ((x * x + (y - 0.25) * (y - 0.25)).sqrt()) / r0;
            let r_cone = ((x * x + (y + 0.25) * (y + 0.25)).sqrt()) / r0;
            let r_hump = (((x + 0.25) * (x + 0.25) + y * y).sqrt()) / r0;
            f[[i, j]] = if r_disk <= 1.0 && !(x.abs() < 0.025 && y < 0.35) {
                1.0
            } else if r_cone <= 1.0 {
                1.0 - r_cone
            } else if r_hump <= 1.0 {
                0.25 * (1.0 + (PI * r_hump).cos())
            } else {
                0.0
            };
        }
    }
    let state = PhaseState::from_field(f, gx, gy)?;
    let speeds = FixedSpeeds {
        x: (0..n).map(|j| -2.0 * PI * gy.center(j)).collect(),
        y: (0..n).map(|i| 2.0 * PI * gx.center(i)).collect(),
        x_bound: PI,
        y_bound: PI,
    };
    Ok((state, speeds))
}

/// `sin(x)` on `[0, 2 pi]`, advected at unit speed.
pub fn advect1d_sine_line(n: usize) -> Result<(Line, Grid1D)> {
    let g = Grid1D::new(n, 0.0, 2.0 * PI, Boundary::Periodic)?;
    let f: Vec<f64> = (0..n).map(|k| g.center(k).sin()).collect();
    Ok((Line::from_point_values(&f, &g)?, g))
}

/// Square pulse, triangle, smoothed Gaussians and smoothed half-ellipses
/// on `[-1, 1]`, advected at unit speed.
pub fn advect1d_four_profile_line(n: usize) -> Result<(Line, Grid1D)> {
    let g = Grid1D::new(n, -1.0, 1.0, Boundary::Periodic)?;
    let f: Vec<f64> = (0..n).map(|k| four_profile(g.center(k))).collect();
    Ok((Line::from_point_values(&f, &g)?, g))
}

/// The four-profile test function.
pub fn four_profile(x: f64) -> f64 {
    let (a, z, delta, alpha) = (0.5, -0.7, 0.005, 10.0);
    let beta = 2.0f64.ln() / (36.0 * delta * delta);
    let gauss = |x: f64, z: f64| (-beta * (x - z) * (x - z)).exp();
    let ellipse = |x: f64, c: f64| (1.0 - alpha * alpha * (x - c) * (x - c)).max(0.0).sqrt();
    if (-0.8..=-0.6).contains(&x) {
        (gauss(x, z - delta) + gauss(x, z + delta) + 4.0 * gauss(x, z)) / 6.0
    } else if (-0.4..=-0.2).contains(&x) {
        1.0
    } else if (0.0..=0.2).contains(&x) {
        1.0 - (10.0 * (x - 0.1)).abs()
    } else if (0.4..=0.6).contains(&x) {
        (ellipse(x, a - delta) + ellipse(x, a + delta) + 4.0 * ellipse(x, a)) / 6.0
    } else {
        0.0
    }
}

/// Build the phase-space initial state of a 2D scenario.
pub fn build_initial(config: &ScenarioConfig) -> Result<(PhaseState, Option<FixedSpeeds>)> {
    match config.scenario {
        Scenario::LandauWeak => Ok((landau_state(config.nx, config.nv, 0.01, 0.5)?, None)),
        Scenario::LandauStrong => Ok((landau_state(config.nx, config.nv, 0.5, 0.5)?, None)),
        Scenario::TwostreamA => Ok((twostream_a_state(config.nx, config.nv)?, None)),
        Scenario::TwostreamB => Ok((twostream_b_state(config.nx, config.nv)?, None)),
        Scenario::RotationGaussian => {
            let (s, v) = rotation_gaussian_setup(config.nx)?;
            Ok((s, Some(v)))
        }
        Scenario::RotationLeveque => {
            let (s, v) = rotation_leveque_setup(config.nx)?;
            Ok((s, Some(v)))
        }
        other => Err(Error::InvalidArgument(format!(
            "{} is a 1D scenario; use the advect1d driver",
            other.name()
        ))),
    }
}
