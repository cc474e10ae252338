//! Strang-split time integration for the Vlasov-Poisson system and for
//! rigid-body rotation.
//!
//! One full step runs: limit the x-staggered array (with-limiter variant
//! only) and advect every v-row for half a step in x; recompute the charge
//! density and solve for the electric field; limit the v-staggered array
//! and advect every x-column for a full step in v; limit and advect in x
//! for the second half step.
//!
//! Each directional sweep also advances the transverse derivative field
//! through its cross-derivative source, written in antiderivative form so
//! that the staggered difference reproduces the fourth-order central
//! difference of the source: per v-interface
//!
//! `psi <- psi - (dt/2) * [ (-s_{j-2} + 7 s_{j-1} + 7 s_j - s_{j+1})/12 |pre
//!                        + (same)|post ]`,
//!
//! where `s = speed * f_x` is evaluated before and after the sweep
//! (trapezoid in time). Rotation uses the same machinery with fixed speed
//! arrays and no field solve.

use crate::grid::{Boundary, DiagnosticsRecord, Line, PhaseState};
use crate::limiter::{self, TvbConstants};
use crate::poisson::{self, FieldE};
use crate::sl1d::{advect_line, FluxMode, Order};
use crate::{diagnostics, Error, Result};
use ndarray::Array2;
use rayon::prelude::*;

/// Scheme variant: plain HWENO or HWENO with the WENO limiter pre-pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SchemeVariant {
    /// "WO": no limiter, for time steps within the Eulerian CFL range.
    WithoutLimiter,
    /// "WL": TVB-detected troubled cells get their staggered values rebuilt.
    WithLimiter,
}

/// Knobs shared by all sweeps of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub variant: SchemeVariant,
    pub tvb: TvbConstants,
    pub mode: FluxMode,
    pub order: Order,
}

impl SolverOptions {
    pub fn hweno(variant: SchemeVariant, tvb: TvbConstants) -> Self {
        Self {
            variant,
            tvb,
            mode: FluxMode::Hweno,
            order: Order::Quintic5,
        }
    }
}

/// Time step from the CFL number: `cfl / (v_max/dx + max|E|/dv)`.
pub fn timestep(state: &PhaseState, field: &FieldE, cfl: f64) -> f64 {
    let v_max = state.grid_v.x_lo.abs().max(state.grid_v.x_hi.abs());
    timestep_from_bounds(v_max, state.grid_x.dx, field.max_abs, state.grid_v.dx, cfl)
}

/// Time step from explicit per-direction speed bounds.
pub fn timestep_from_bounds(sx: f64, dx: f64, sv: f64, dv: f64, cfl: f64) -> f64 {
    debug_assert!(cfl > 0.0);
    cfl / (sx / dx + sv / dv)
}

fn x_line(state: &PhaseState, j: usize) -> Line {
    let nx = state.nx();
    let n_if = state.phi.nrows();
    let mut f = vec![0.0; nx];
    let mut h = vec![0.0; n_if];
    for i in 0..nx {
        f[i] = state.f[[i, j]];
    }
    for m in 0..n_if {
        h[m] = state.phi[[m, j]];
    }
    Line {
        f,
        h,
        bc: state.grid_x.bc,
        dx: state.grid_x.dx,
    }
}

fn store_x_line(state: &mut PhaseState, j: usize, line: &Line) {
    for (i, v) in line.f.iter().enumerate() {
        state.f[[i, j]] = *v;
    }
    for (m, v) in line.h.iter().enumerate() {
        state.phi[[m, j]] = *v;
    }
}

fn v_line(state: &PhaseState, i: usize) -> Line {
    let nv = state.nv();
    let n_if = state.psi.ncols();
    let mut f = vec![0.0; nv];
    let mut h = vec![0.0; n_if];
    for j in 0..nv {
        f[j] = state.f[[i, j]];
    }
    for m in 0..n_if {
        h[m] = state.psi[[i, m]];
    }
    Line {
        f,
        h,
        bc: state.grid_v.bc,
        dx: state.grid_v.dx,
    }
}

fn store_v_line(state: &mut PhaseState, i: usize, line: &Line) {
    for (j, v) in line.f.iter().enumerate() {
        state.f[[i, j]] = *v;
    }
    for (m, v) in line.h.iter().enumerate() {
        state.psi[[i, m]] = *v;
    }
}

/// `speed * f_x` per cell, from the current x-staggered array.
fn x_source(state: &PhaseState, speeds: &[f64]) -> Array2<f64> {
    let (nx, nv) = state.f.dim();
    let dx = state.grid_x.dx;
    let mut s = Array2::zeros((nx, nv));
    for j in 0..nv {
        for i in 0..nx {
            let right = match state.grid_x.bc {
                Boundary::Periodic => state.phi[[(i + 1) % nx, j]],
                Boundary::Zero => state.phi[[i + 1, j]],
            };
            s[[i, j]] = speeds[j] * (right - state.phi[[i, j]]) / dx;
        }
    }
    s
}

/// `speed * f_v` per cell, from the current v-staggered array.
fn v_source(state: &PhaseState, speeds: &[f64]) -> Array2<f64> {
    let (nx, nv) = state.f.dim();
    let dv = state.grid_v.dx;
    let mut s = Array2::zeros((nx, nv));
    for j in 0..nv {
        for i in 0..nx {
            let right = match state.grid_v.bc {
                Boundary::Periodic => state.psi[[i, (j + 1) % nv]],
                Boundary::Zero => state.psi[[i, j + 1]],
            };
            s[[i, j]] = speeds[i] * (right - state.psi[[i, j]]) / dv;
        }
    }
    s
}

/// Interface interpolation `(-s_{m-2} + 7 s_{m-1} + 7 s_m - s_{m+1}) / 12`
/// along one line, ghosts resolved by `bc`.
#[inline]
fn interp_interface(s: &dyn Fn(isize) -> f64, m: isize) -> f64 {
    (-s(m - 2) + 7.0 * s(m - 1) + 7.0 * s(m) - s(m + 1)) / 12.0
}

fn line_value<'a>(vals: &'a [f64], bc: Boundary) -> impl Fn(isize) -> f64 + 'a {
    let n = vals.len() as isize;
    move |k: isize| match bc {
        Boundary::Periodic => vals[k.rem_euclid(n) as usize],
        Boundary::Zero => {
            if (0..n).contains(&k) {
                vals[k as usize]
            } else {
                0.0
            }
        }
    }
}

/// Advect every v-row for `dt` in x and update the v-staggered array from
/// the `v f_x` source. With the limiter variant the x-staggered values are
/// repaired first; returns the number of flagged cells.
pub fn sweep_x(state: &mut PhaseState, speeds: &[f64], dt: f64, opts: &SolverOptions) -> Result<usize> {
    let (nx, nv) = state.f.dim();
    debug_assert_eq!(speeds.len(), nv);
    let mut troubled = 0;
    if opts.variant == SchemeVariant::WithLimiter {
        for j in 0..nv {
            let line = x_line(state, j);
            let (repaired, mask) = limiter::apply_limiter(&line, opts.tvb.m_x);
            troubled += mask.count();
            if mask.any() {
                store_x_line(state, j, &repaired);
            }
        }
    }

    let s_pre = x_source(state, speeds);

    let lines: Vec<Line> = (0..nv).map(|j| x_line(state, j)).collect();
    let advected: Result<Vec<Line>> = lines
        .into_par_iter()
        .enumerate()
        .map(|(j, line)| advect_line(&line, speeds[j], dt, opts.mode, opts.order))
        .collect();
    for (j, line) in advected?.iter().enumerate() {
        store_x_line(state, j, line);
    }

    let s_post = x_source(state, speeds);

    // antiderivative-form source update of psi, per column
    let n_if = state.psi.ncols();
    let mut pre_col = vec![0.0; nv];
    let mut post_col = vec![0.0; nv];
    for i in 0..nx {
        for j in 0..nv {
            pre_col[j] = s_pre[[i, j]];
            post_col[j] = s_post[[i, j]];
        }
        let pre = line_value(&pre_col, state.grid_v.bc);
        let post = line_value(&post_col, state.grid_v.bc);
        for m in 0..n_if {
            let incr = interp_interface(&pre, m as isize) + interp_interface(&post, m as isize);
            state.psi[[i, m]] -= 0.5 * dt * incr;
        }
    }
    Ok(troubled)
}

/// Advect every x-column for `dt` in v and update the x-staggered array
/// from the `E f_v` source; mirror of [`sweep_x`].
pub fn sweep_v(state: &mut PhaseState, speeds: &[f64], dt: f64, opts: &SolverOptions) -> Result<usize> {
    let (nx, nv) = state.f.dim();
    debug_assert_eq!(speeds.len(), nx);
    let mut troubled = 0;
    if opts.variant == SchemeVariant::WithLimiter {
        for i in 0..nx {
            let line = v_line(state, i);
            let (repaired, mask) = limiter::apply_limiter(&line, opts.tvb.m_v);
            troubled += mask.count();
            if mask.any() {
                store_v_line(state, i, &repaired);
            }
        }
    }

    let s_pre = v_source(state, speeds);

    let lines: Vec<Line> = (0..nx).map(|i| v_line(state, i)).collect();
    let advected: Result<Vec<Line>> = lines
        .into_par_iter()
        .enumerate()
        .map(|(i, line)| advect_line(&line, speeds[i], dt, opts.mode, opts.order))
        .collect();
    for (i, line) in advected?.iter().enumerate() {
        store_v_line(state, i, line);
    }

    let s_post = v_source(state, speeds);

    let n_if = state.phi.nrows();
    let mut pre_row = vec![0.0; nx];
    let mut post_row = vec![0.0; nx];
    for j in 0..nv {
        for i in 0..nx {
            pre_row[i] = s_pre[[i, j]];
            post_row[i] = s_post[[i, j]];
        }
        let pre = line_value(&pre_row, state.grid_x.bc);
        let post = line_value(&post_row, state.grid_x.bc);
        for m in 0..n_if {
            let incr = interp_interface(&pre, m as isize) + interp_interface(&post, m as isize);
            state.phi[[m, j]] -= 0.5 * dt * incr;
        }
    }
    Ok(troubled)
}

/// One Strang step of the Vlasov-Poisson system. Returns the half-step
/// electric field (the one diagnostics report) and the number of troubled
/// cells flagged across the step's limiter passes.
pub fn strang_step(
    state: &mut PhaseState,
    opts: &SolverOptions,
    dt: f64,
) -> Result<(FieldE, usize)> {
    let v_centers = state.grid_v.centers();
    let length = state.grid_x.x_hi - state.grid_x.x_lo;

    let mut troubled = sweep_x(state, &v_centers, 0.5 * dt, opts)?;
    let rho = poisson::compute_rho(state);
    let field = poisson::solve_field(&rho, length)?;
    troubled += sweep_v(state, &field.e, dt, opts)?;
    troubled += sweep_x(state, &v_centers, 0.5 * dt, opts)?;
    Ok((field, troubled))
}

/// One Strang step with externally fixed per-line speeds (rotation, or any
/// problem without a self-consistent field).
pub fn strang_step_fixed(
    state: &mut PhaseState,
    speeds_x: &[f64],
    speeds_y: &[f64],
    opts: &SolverOptions,
    dt: f64,
) -> Result<usize> {
    let mut troubled = sweep_x(state, speeds_x, 0.5 * dt, opts)?;
    troubled += sweep_v(state, speeds_y, dt, opts)?;
    troubled += sweep_x(state, speeds_x, 0.5 * dt, opts)?;
    Ok(troubled)
}

/// Full output of a 2D run.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub records: Vec<DiagnosticsRecord>,
    pub snapshots: Vec<(f64, PhaseState)>,
    pub final_state: PhaseState,
    pub min_f: f64,
    pub max_f: f64,
    pub steps: usize,
}

fn record_for(
    state: &PhaseState,
    field: &FieldE,
    t: f64,
    troubled: usize,
) -> Result<DiagnosticsRecord> {
    use diagnostics::{phase_norm, NormKind};
    let dx = state.grid_x.dx;
    let sq: Vec<f64> = field.e.iter().map(|e| e * e * dx).collect();
    Ok(DiagnosticsRecord {
        t,
        mass: phase_norm(state, NormKind::Mass, None)?,
        l1: phase_norm(state, NormKind::L1, None)?,
        l2: phase_norm(state, NormKind::L2, None)?,
        energy: phase_norm(state, NormKind::Energy, Some(field))?,
        entropy: phase_norm(state, NormKind::Entropy, None)?,
        e_l2: diagnostics::pairwise_sum(&sq).sqrt(),
        e_linf: field.max_abs,
        troubled_cells: troubled,
    })
}

fn check_finite(state: &PhaseState, step: usize, t: f64) -> Result<()> {
    if let Some((i, j)) = state.first_non_finite() {
        return Err(Error::BlowUp { step, t, i, j });
    }
    Ok(())
}

/// Pick the next step size: the CFL step, shortened to land exactly on the
/// next snapshot time or the final time.
fn clipped_dt(t: f64, dt_cfl: f64, t_final: f64, snapshots: &[f64]) -> (f64, f64) {
    let mut next_event = t_final;
    for &ts in snapshots {
        if ts > t + 1e-12 && ts < next_event {
            next_event = ts;
        }
    }
    if t + dt_cfl >= next_event - 1e-12 {
        (next_event - t, next_event)
    } else {
        (dt_cfl, t + dt_cfl)
    }
}

fn wants_snapshot(t: f64, snapshots: &[f64]) -> bool {
    snapshots.iter().any(|&ts| (ts - t).abs() < 1e-9)
}

/// Advance the Vlasov-Poisson system to `t_final`, recording diagnostics
/// every step and capturing snapshots at the requested times.
pub fn run_vp(
    initial: PhaseState,
    cfl: f64,
    t_final: f64,
    opts: &SolverOptions,
    snapshot_times: &[f64],
) -> Result<RunOutput> {
    if !(t_final > 0.0) || !(cfl > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "need positive t_final and cfl, got ({t_final}, {cfl})"
        )));
    }
    let mut state = initial;
    let length = state.grid_x.x_hi - state.grid_x.x_lo;
    let mut t = 0.0;
    let mut steps = 0;
    let rho0 = poisson::compute_rho(&state);
    let field0 = poisson::solve_field(&rho0, length)?;
    let mut records = vec![record_for(&state, &field0, 0.0, 0)?];
    let mut snapshots = Vec::new();
    if wants_snapshot(0.0, snapshot_times) {
        snapshots.push((0.0, state.clone()));
    }
    let mut min_f = f64::INFINITY;
    let mut max_f = f64::NEG_INFINITY;
    let track = |s: &PhaseState, lo: &mut f64, hi: &mut f64| {
        for v in s.f.iter() {
            *lo = lo.min(*v);
            *hi = hi.max(*v);
        }
    };
    track(&state, &mut min_f, &mut max_f);

    while t < t_final - 1e-12 {
        let rho = poisson::compute_rho(&state);
        let field_now = poisson::solve_field(&rho, length)?;
        let dt_cfl = timestep(&state, &field_now, cfl);
        let (dt, t_next) = clipped_dt(t, dt_cfl, t_final, snapshot_times);
        let (field, troubled) = strang_step(&mut state, opts, dt)?;
        steps += 1;
        t = t_next;
        check_finite(&state, steps, t)?;
        records.push(record_for(&state, &field, t, troubled)?);
        track(&state, &mut min_f, &mut max_f);
        if wants_snapshot(t, snapshot_times) {
            snapshots.push((t, state.clone()));
        }
    }
    Ok(RunOutput {
        records,
        snapshots,
        final_state: state,
        min_f,
        max_f,
        steps,
    })
}

/// Fixed velocity field of a rotation-type run: one speed per v-row for
/// x-sweeps, one per x-column for y-sweeps, plus the domain-wide bounds
/// that enter the time-step formula.
#[derive(Debug, Clone)]
pub struct FixedSpeeds {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub x_bound: f64,
    pub y_bound: f64,
}

/// Advance a fixed-speed (rotation) problem to `t_final`.
pub fn run_rotation(
    initial: PhaseState,
    speeds: &FixedSpeeds,
    cfl: f64,
    t_final: f64,
    opts: &SolverOptions,
    snapshot_times: &[f64],
) -> Result<RunOutput> {
    if !(t_final > 0.0) || !(cfl > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "need positive t_final and cfl, got ({t_final}, {cfl})"
        )));
    }
    let mut state = initial;
    let dt_cfl = timestep_from_bounds(
        speeds.x_bound,
        state.grid_x.dx,
        speeds.y_bound,
        state.grid_v.dx,
        cfl,
    );
    let zero_field = FieldE::zeros(state.nx());
    let mut t = 0.0;
    let mut steps = 0;
    let mut records = vec![record_for(&state, &zero_field, 0.0, 0)?];
    let mut snapshots = Vec::new();
    if wants_snapshot(0.0, snapshot_times) {
        snapshots.push((0.0, state.clone()));
    }
    let mut min_f = f64::INFINITY;
    let mut max_f = f64::NEG_INFINITY;
    for v in state.f.iter() {
        min_f = min_f.min(*v);
        max_f = max_f.max(*v);
    }
    while t < t_final - 1e-12 {
        let (dt, t_next) = clipped_dt(t, dt_cfl, t_final, snapshot_times);
        let troubled = strang_step_fixed(&mut state, &speeds.x, &speeds.y, opts, dt)?;
        steps += 1;
        t = t_next;
        check_finite(&state, steps, t)?;
        records.push(record_for(&state, &zero_field, t, troubled)?);
        for v in state.f.iter() {
            min_f = min_f.min(*v);
            max_f = max_f.max(*v);
        }
        if wants_snapshot(t, snapshot_times) {
            snapshots.push((t, state.clone()));
        }
    }
    Ok(RunOutput {
        records,
        snapshots,
        final_state: state,
        min_f,
        max_f,
        steps,
    })
}

/// Output of a 1D advection run.
#[derive(Debug, Clone)]
pub struct LineRunOutput {
    pub records: Vec<DiagnosticsRecord>,
    pub final_line: Line,
    pub min_f: f64,
    pub max_f: f64,
    pub steps: usize,
}

fn line_record(line: &Line, t: f64) -> DiagnosticsRecord {
    let dx = line.dx;
    let mass: Vec<f64> = line.f.iter().map(|v| v * dx).collect();
    let l1: Vec<f64> = line.f.iter().map(|v| v.abs() * dx).collect();
    let l2: Vec<f64> = line.f.iter().map(|v| v * v * dx).collect();
    let ent: Vec<f64> = line
        .f
        .iter()
        .map(|v| if *v == 0.0 { 0.0 } else { v * v.abs().ln() * dx })
        .collect();
    DiagnosticsRecord {
        t,
        mass: diagnostics::pairwise_sum(&mass),
        l1: diagnostics::pairwise_sum(&l1),
        l2: diagnostics::pairwise_sum(&l2).sqrt(),
        energy: 0.0,
        entropy: diagnostics::pairwise_sum(&ent),
        e_l2: 0.0,
        e_linf: 0.0,
        troubled_cells: 0,
    }
}

/// Advance a single line at constant speed to `t_final`.
pub fn run_advect1d(
    initial: Line,
    speed: f64,
    cfl: f64,
    t_final: f64,
    mode: FluxMode,
    order: Order,
) -> Result<LineRunOutput> {
    if !(t_final > 0.0) || !(cfl > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "need positive t_final and cfl, got ({t_final}, {cfl})"
        )));
    }
    if speed == 0.0 {
        return Err(Error::InvalidArgument("zero advection speed".into()));
    }
    let mut line = initial;
    let dt_cfl = cfl * line.dx / speed.abs();
    let mut t = 0.0;
    let mut steps = 0;
    let mut records = vec![line_record(&line, 0.0)];
    let mut min_f = line.f.iter().cloned().fold(f64::INFINITY, f64::min);
    let mut max_f = line.f.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    while t < t_final - 1e-12 {
        let (dt, t_next) = clipped_dt(t, dt_cfl, t_final, &[]);
        line = advect_line(&line, speed, dt, mode, order)?;
        steps += 1;
        t = t_next;
        if line.f.iter().any(|v| !v.is_finite()) {
            return Err(Error::BlowUp {
                step: steps,
                t,
                i: line.f.iter().position(|v| !v.is_finite()).unwrap(),
                j: 0,
            });
        }
        records.push(line_record(&line, t));
        for v in &line.f {
            min_f = min_f.min(*v);
            max_f = max_f.max(*v);
        }
    }
    Ok(LineRunOutput {
        records,
        final_line: line,
        min_f,
        max_f,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid1D;
    use crate::scenario;
    use std::f64::consts::PI;

    fn wo() -> SolverOptions {
        SolverOptions::hweno(
            SchemeVariant::WithoutLimiter,
            TvbConstants { m_x: 1.0, m_v: 1.0 },
        )
    }

    #[test]
    fn timestep_examples() {
        let dx = 4.0 * PI / 64.0;
        assert!((timestep_from_bounds(5.0, dx, 0.0, 1.0, 1.2) - 1.2 * dx / 5.0).abs() < 1e-15);
        assert!((timestep_from_bounds(5.0, 0.1, 5.0, 0.1, 1.2) - 0.012).abs() < 1e-15);
    }

    #[test]
    fn timestep_sees_the_initial_weak_landau_field() {
        let state = scenario::landau_state(64, 128, 0.01, 0.5).unwrap();
        let rho = poisson::compute_rho(&state);
        let field = poisson::solve_field(&rho, 4.0 * PI).unwrap();
        let dt = timestep(&state, &field, 1.2);
        let expect = 1.2 / (5.0 / state.grid_x.dx + 0.02 / state.grid_v.dx);
        assert!((dt - expect).abs() < 0.01 * expect, "dt {dt} vs {expect}");
    }

    #[test]
    fn x_sweep_leaves_x_independent_data_alone() {
        let state0 = scenario::landau_state(16, 32, 0.0, 0.5).unwrap();
        let mut state = state0.clone();
        let speeds = state.grid_v.centers();
        sweep_x(&mut state, &speeds, 0.05, &wo()).unwrap();
        assert_eq!(state.f, state0.f, "f must be untouched");
        assert_eq!(state.psi, state0.psi, "psi must be untouched (source is exactly zero)");
        for (a, b) in state.phi.iter().zip(state0.phi.iter()) {
            assert!((a - b).abs() <= 1e-14 * b.abs().max(1.0));
        }
    }

    #[test]
    fn zero_dt_sweeps_are_identities() {
        let state0 = scenario::landau_state(16, 32, 0.3, 0.5).unwrap();
        let mut state = state0.clone();
        let speeds = state.grid_v.centers();
        sweep_x(&mut state, &speeds, 0.0, &wo()).unwrap();
        let e = vec![0.4; 16];
        sweep_v(&mut state, &e, 0.0, &wo()).unwrap();
        assert_eq!(state.f, state0.f);
        assert_eq!(state.phi, state0.phi);
        assert_eq!(state.psi, state0.psi);
    }

    #[test]
    fn zero_field_v_sweep_is_identity() {
        let state0 = scenario::landau_state(16, 32, 0.3, 0.5).unwrap();
        let mut state = state0.clone();
        let e = vec![0.0; 16];
        sweep_v(&mut state, &e, 0.1, &wo()).unwrap();
        assert_eq!(state.f, state0.f);
        assert_eq!(state.phi, state0.phi);
        assert_eq!(state.psi, state0.psi);
    }

    #[test]
    fn sweeps_conserve_mass_on_smooth_data() {
        let mut state = scenario::landau_state(32, 64, 0.2, 0.5).unwrap();
        let mass0 = diagnostics::phase_norm(&state, diagnostics::NormKind::Mass, None).unwrap();
        let speeds = state.grid_v.centers();
        sweep_x(&mut state, &speeds, 0.05, &wo()).unwrap();
        let e: Vec<f64> = (0..32).map(|i| 0.3 * (i as f64 * 0.2).sin()).collect();
        sweep_v(&mut state, &e, 0.05, &wo()).unwrap();
        let mass = diagnostics::phase_norm(&state, diagnostics::NormKind::Mass, None).unwrap();
        assert!(
            (mass - mass0).abs() <= 1e-12 * mass0,
            "relative drift {:e}",
            (mass - mass0) / mass0
        );
    }

    #[test]
    fn uniform_maxwellian_is_a_fixed_point() {
        let state0 = scenario::landau_state(16, 64, 0.0, 0.5).unwrap();
        let mut state = state0.clone();
        let (field, troubled) = strang_step(&mut state, &wo(), 0.05).unwrap();
        assert_eq!(troubled, 0);
        assert_eq!(field.max_abs, 0.0, "field must vanish identically");
        assert_eq!(state.f, state0.f);
        for (a, b) in state.phi.iter().zip(state0.phi.iter()) {
            assert!((a - b).abs() <= 1e-13 * b.abs().max(1.0));
        }
    }

    #[test]
    fn one_weak_landau_step_conserves_mass() {
        let mut state = scenario::landau_state(64, 128, 0.01, 0.5).unwrap();
        let mass0 = diagnostics::phase_norm(&state, diagnostics::NormKind::Mass, None).unwrap();
        let rho = poisson::compute_rho(&state);
        let field = poisson::solve_field(&rho, 4.0 * PI).unwrap();
        let dt = timestep(&state, &field, 1.2);
        strang_step(&mut state, &wo(), dt).unwrap();
        let mass = diagnostics::phase_norm(&state, diagnostics::NormKind::Mass, None).unwrap();
        assert!(
            ((mass - mass0) / mass0).abs() < 1e-12,
            "relative drift {:e}",
            (mass - mass0) / mass0
        );
    }

    #[test]
    fn limiter_variant_is_silent_on_smooth_data() {
        let state0 = scenario::landau_state(32, 64, 0.01, 0.5).unwrap();
        let mut wo_state = state0.clone();
        let mut wl_state = state0;
        let wl = SolverOptions::hweno(
            SchemeVariant::WithLimiter,
            TvbConstants { m_x: 1.0, m_v: 1.0 },
        );
        for _ in 0..5 {
            strang_step(&mut wo_state, &wo(), 0.04).unwrap();
            let (_, troubled) = strang_step(&mut wl_state, &wl, 0.04).unwrap();
            assert_eq!(troubled, 0);
        }
        assert_eq!(wo_state.f, wl_state.f, "trajectories must agree bitwise");
        assert_eq!(wo_state.phi, wl_state.phi);
        assert_eq!(wo_state.psi, wl_state.psi);
    }

    #[test]
    fn runs_are_deterministic() {
        let cfg = || scenario::landau_state(32, 64, 0.01, 0.5).unwrap();
        let a = run_vp(cfg(), 1.2, 1.0, &wo(), &[]).unwrap();
        let b = run_vp(cfg(), 1.2, 1.0, &wo(), &[]).unwrap();
        assert_eq!(a.records.len(), b.records.len());
        for (ra, rb) in a.records.iter().zip(b.records.iter()) {
            assert_eq!(ra, rb);
        }
    }

    #[test]
    fn time_stepping_lands_on_final_and_snapshot_times() {
        let state = scenario::landau_state(16, 32, 0.01, 0.5).unwrap();
        let out = run_vp(state, 1.2, 0.5, &wo(), &[0.21, 0.5]).unwrap();
        let last = out.records.last().unwrap();
        assert_eq!(last.t, 0.5);
        assert_eq!(out.snapshots.len(), 2);
        assert_eq!(out.snapshots[0].0, 0.21);
        assert_eq!(out.snapshots[1].0, 0.5);
        assert!(out.records.iter().any(|r| r.t == 0.21));
    }

    #[test]
    fn gaussian_rotation_returns_to_start() {
        // one full revolution of a radial profile reproduces the start
        let (state, speeds) = scenario::rotation_gaussian_setup(48).unwrap();
        let initial = state.clone();
        let out = run_rotation(state, &speeds, 1.2, 2.0 * PI, &wo(), &[]).unwrap();
        let mut l1 = 0.0;
        for (a, b) in out.final_state.f.iter().zip(initial.f.iter()) {
            l1 += (a - b).abs();
        }
        l1 *= initial.grid_x.dx * initial.grid_v.dx;
        assert!(l1 < 1e-2, "L1 drift after a revolution: {l1:e}");
        // 48 cells leave the Gaussian tail under-resolved (it falls by more
        // than 3x per cell near the edge), so the staggered reconstruction
        // carries a ~1e-10 skirt there and whole-cell shifts discard bits of
        // it. Resolved grids conserve mass to rounding; see the acceptance
        // suite, which checks 1e-10 at the shipped resolution.
        let (dev, _) = diagnostics::relative_deviation(
            &out.records.iter().map(|r| r.mass).collect::<Vec<_>>(),
        );
        let worst = dev.iter().fold(0.0f64, |m, d| m.max(d.abs()));
        assert!(worst < 1e-9, "mass drift {worst:e}");
    }
}
