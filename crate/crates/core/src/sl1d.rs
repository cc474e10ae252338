//! Flux-difference semi-Lagrangian update of one line for a constant-speed
//! advection step.
//!
//! The characteristic displacement in cell units, `xshift = v dt / dx`, is
//! split into a whole-cell shift (an exact array rotation, or a shift with
//! zero fill for zero boundaries) and a fractional remainder `xi0` in
//! `[0, 1/2]` on one side of the target point. The fractional correction is
//! written as
//!
//! `f_k <- f_k -+ xi0 * (fhat_{k+1} - fhat_k)`,
//!
//! with interface fluxes `fhat_m = stencil . C . (1, xi0, xi0^2, ...)'` and
//! the staggered update `h_m <- stencil . D . (1, xi0, ...)'` where
//! `D(:,k) = k C(:,k)`. Because the update telescopes, total mass over a
//! periodic line is conserved by construction. The coefficient matrices are
//! the unique Hermite interpolants on the compact stencil (cubic from
//! `{f, g}` at two points, quintic from four `f` and two `g` values),
//! rewritten in terms of the staggered values; they are re-derived from
//! first principles in exact rational arithmetic by the oracle test suite
//! and must match the tables below entry for entry.
//!
//! In HWENO mode only the constant column of `C` (shared with `D`) is
//! replaced by a nonlinear blend of three substencil reconstructions,
//! leaving the `xi0, xi0^2, ...` columns untouched.

use crate::grid::{Boundary, Line};
use crate::{Error, Result};

/// Which side of the target point the fractional shift lies on.
/// `Left` covers `xshift` fractions in `[0, 1/2]` (speed > 0 remainder),
/// `Right` the mirror case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Interpolation order of the reconstruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Order {
    Cubic3,
    Quintic5,
}

/// Flux reconstruction mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum FluxMode {
    /// Fixed-stencil Hermite interpolation.
    Linear,
    /// Nonlinear blend of the flux constant term (fifth order only).
    Hweno,
}

/// Decomposition of a characteristic displacement into a whole-cell shift
/// and a one-sided fractional remainder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftDecomposition {
    pub whole: i64,
    pub xi0: f64,
    pub side: Side,
}

/// Parameters of the nonlinear flux blend.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HwenoParams {
    pub epsilon: f64,
    pub linear_weights: [f64; 3],
}

impl Default for HwenoParams {
    fn default() -> Self {
        Self {
            epsilon: 1e-6,
            linear_weights: [GAMMA[0], GAMMA[1], GAMMA[2]],
        }
    }
}

// ----------------------------------------------------------------------
// Coefficient tables. All entries are exact rationals, stored as integer
// numerators over a common denominator; the f64 matrices are their
// correctly rounded values.
//
// Third order, left side: flux at interface m reads (f[m-1], h[m], h[m-1]).
// Right side reads (f[m], h[m], h[m+1]) with the same coefficients.
pub const C3_NUM: [[i64; 3]; 3] = [[0, 3, -2], [1, -2, 1], [0, -1, 1]];
pub const C3_DEN: i64 = 1;

// Fifth order, left side: flux at interface m reads
// (f[m-2], f[m-1], f[m], h[m-2], h[m+1]).
pub const C5L_NUM: [[i64; 5]; 5] = [
    [-32, -19, 45, 19, -13],
    [76, 89, -36, -35, 14],
    [76, -100, -9, 46, -13],
    [12, 6, -18, -6, 6],
    [-24, 24, 18, -24, 6],
];
// Fifth order, right side: flux at interface m reads
// (f[m-1], f[m], f[m+1], h[m-1], h[m+2]); the rows are the mirror image
// of the left table.
pub const C5R_NUM: [[i64; 5]; 5] = [
    [76, -100, -9, 46, -13],
    [76, 89, -36, -35, 14],
    [-32, -19, 45, 19, -13],
    [-24, 24, 18, -24, 6],
    [12, 6, -18, -6, 6],
];
pub const C5_DEN: i64 = 108;

// Substencil reconstructions of the flux constant term, as vectors over
// the left-side stencil order (f[m-2], f[m-1], f[m], h[m-2], h[m+1]).
pub const HWENO_SUBSTENCIL_NUM: [[i64; 5]; 3] = [
    [-2, 2, 0, 1, 0],
    [-1, 5, 2, 0, 0],
    [0, 1, 5, 0, -2],
];
pub const HWENO_SUBSTENCIL_DEN: [i64; 3] = [1, 6, 4];
// Linear weights recombining the substencils into the full constant column.
pub const GAMMA_NUM: [i64; 3] = [1, 4, 4];
pub const GAMMA_DEN: i64 = 9;

const GAMMA: [f64; 3] = [
    GAMMA_NUM[0] as f64 / GAMMA_DEN as f64,
    GAMMA_NUM[1] as f64 / GAMMA_DEN as f64,
    GAMMA_NUM[2] as f64 / GAMMA_DEN as f64,
];

const fn mat3(num: [[i64; 3]; 3], den: i64) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    let mut r = 0;
    while r < 3 {
        let mut c = 0;
        while c < 3 {
            out[r][c] = num[r][c] as f64 / den as f64;
            c += 1;
        }
        r += 1;
    }
    out
}

const fn mat5(num: [[i64; 5]; 5], den: i64) -> [[f64; 5]; 5] {
    let mut out = [[0.0; 5]; 5];
    let mut r = 0;
    while r < 5 {
        let mut c = 0;
        while c < 5 {
            out[r][c] = num[r][c] as f64 / den as f64;
            c += 1;
        }
        r += 1;
    }
    out
}

const C3_F: [[f64; 3]; 3] = mat3(C3_NUM, C3_DEN);
const C5L_F: [[f64; 5]; 5] = mat5(C5L_NUM, C5_DEN);
const C5R_F: [[f64; 5]; 5] = mat5(C5R_NUM, C5_DEN);

/// Coefficient matrices for one order and shift side. `c` feeds the point
/// value flux, `d = k-scaled columns of c` feeds the staggered update.
#[derive(Debug, Clone, PartialEq)]
pub struct ReconMatrices {
    pub order: Order,
    pub side: Side,
    pub c: Vec<Vec<f64>>,
    pub d: Vec<Vec<f64>>,
}

/// Build the coefficient matrices for one order and side.
pub fn build_matrices(order: Order, side: Side) -> ReconMatrices {
    let c: Vec<Vec<f64>> = match order {
        Order::Cubic3 => C3_F.iter().map(|r| r.to_vec()).collect(),
        Order::Quintic5 => match side {
            Side::Left => C5L_F.iter().map(|r| r.to_vec()).collect(),
            Side::Right => C5R_F.iter().map(|r| r.to_vec()).collect(),
        },
    };
    let d = c
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(k, &v)| (k as f64 + 1.0) * v)
                .collect()
        })
        .collect();
    ReconMatrices { order, side, c, d }
}

/// Split `v dt / dx` into a whole-cell shift plus a fractional remainder
/// `xi0` in `[0, 1/2]`; a remainder of exactly one half is assigned to the
/// left side. `whole + xi0` (left) or `whole - xi0` (right) recovers the
/// displacement exactly.
pub fn decompose_shift(v: f64, dt: f64, dx: f64) -> ShiftDecomposition {
    debug_assert!(dx > 0.0);
    let xshift = v * dt / dx;
    debug_assert!(xshift.is_finite());
    let whole = (xshift - 0.5).ceil();
    let frac = xshift - whole;
    if frac >= 0.0 {
        ShiftDecomposition {
            whole: whole as i64,
            xi0: frac,
            side: Side::Left,
        }
    } else {
        ShiftDecomposition {
            whole: whole as i64,
            xi0: -frac,
            side: Side::Right,
        }
    }
}

const PAD: usize = 3;

/// Point values and staggered values padded with `PAD` ghost entries per
/// side, resolved by the boundary rule.
struct Padded {
    f: Vec<f64>,
    h: Vec<f64>,
    n: usize,
    n_if: usize,
}

impl Padded {
    fn new(line: &Line) -> Self {
        let n = line.n();
        let n_if = line.h.len();
        let mut f = vec![0.0; n + 2 * PAD];
        let mut h = vec![0.0; n_if + 2 * PAD];
        f[PAD..PAD + n].copy_from_slice(&line.f);
        h[PAD..PAD + n_if].copy_from_slice(&line.h);
        if line.bc == Boundary::Periodic {
            for k in 0..PAD {
                f[k] = line.f[n - PAD + k];
                f[n + PAD + k] = line.f[k];
                h[k] = line.h[n - PAD + k];
                h[n + PAD + k] = line.h[k];
            }
        }
        Self { f, h, n, n_if }
    }

    /// Point value of cell `k` (may be out of range).
    #[inline]
    fn fc(&self, k: isize) -> f64 {
        self.f[(k + PAD as isize) as usize]
    }

    /// Staggered value at interface `m` (may be out of range).
    #[inline]
    fn hi(&self, m: isize) -> f64 {
        self.h[(m + PAD as isize) as usize]
    }
}

/// Smoothness indicators and nonlinear weights of the three substencils,
/// plus the blended flux constant term. Inputs are named for the left
/// side; the right side passes the mirrored window.
pub fn hweno_first_column(
    f_m2: f64,
    f_m1: f64,
    f_0: f64,
    h_far: f64,
    h_near: f64,
    params: &HwenoParams,
) -> (f64, [f64; 3], [f64; 3]) {
    let (a, b, c, p, q) = (f_m2, f_m1, f_0, h_far, h_near);
    let beta = [
        13.0 / 3.0 * (-2.25 * a + 1.5 * p + 0.75 * b).powi(2)
            + (7.75 * a - 4.5 * p - 3.25 * b).powi(2),
        13.0 / 12.0 * (-a + 2.0 * b - c).powi(2) + (-1.5 * c + 2.0 * b - 0.5 * a).powi(2),
        13.0 / 3.0 * (-2.25 * c + 0.75 * b + 1.5 * q).powi(2)
            + (1.25 * c + 0.25 * b - 1.5 * q).powi(2),
    ];
    let g = params.linear_weights;
    let raw = [
        g[0] / (params.epsilon + beta[0]),
        g[1] / (params.epsilon + beta[1]),
        g[2] / (params.epsilon + beta[2]),
    ];
    let sum = raw[0] + raw[1] + raw[2];
    let omega = [raw[0] / sum, raw[1] / sum, raw[2] / sum];
    let fluxes = [
        -2.0 * a + 2.0 * b + p,
        (-a + 5.0 * b + 2.0 * c) / 6.0,
        (b + 5.0 * c - 2.0 * q) / 4.0,
    ];
    let blended = omega[0] * fluxes[0] + omega[1] * fluxes[1] + omega[2] * fluxes[2];
    (blended, beta, omega)
}

/// Flux pair `(fhat, hnew)` at interface `m` of the padded line.
#[inline]
fn interface_flux(
    p: &Padded,
    m: isize,
    xi0: f64,
    side: Side,
    order: Order,
    mode: FluxMode,
    params: &HwenoParams,
) -> (f64, f64) {
    match order {
        Order::Cubic3 => {
            let sten = match side {
                Side::Left => [p.fc(m - 1), p.hi(m), p.hi(m - 1)],
                Side::Right => [p.fc(m), p.hi(m), p.hi(m + 1)],
            };
            let mut col = [0.0; 3];
            for (k, ck) in col.iter_mut().enumerate() {
                *ck = sten[0] * C3_F[0][k] + sten[1] * C3_F[1][k] + sten[2] * C3_F[2][k];
            }
            let fhat = col[0] + xi0 * (col[1] + xi0 * col[2]);
            let hnew = col[0] + xi0 * (2.0 * col[1] + xi0 * 3.0 * col[2]);
            (fhat, hnew)
        }
        Order::Quintic5 => {
            let (sten, mat) = match side {
                Side::Left => (
                    [p.fc(m - 2), p.fc(m - 1), p.fc(m), p.hi(m - 2), p.hi(m + 1)],
                    &C5L_F,
                ),
                Side::Right => (
                    [p.fc(m - 1), p.fc(m), p.fc(m + 1), p.hi(m - 1), p.hi(m + 2)],
                    &C5R_F,
                ),
            };
            let mut col = [0.0; 5];
            for (k, ck) in col.iter_mut().enumerate() {
                *ck = sten[0] * mat[0][k]
                    + sten[1] * mat[1][k]
                    + sten[2] * mat[2][k]
                    + sten[3] * mat[3][k]
                    + sten[4] * mat[4][k];
            }
            if mode == FluxMode::Hweno {
                // Reflect the window for the right side so one blend kernel
                // serves both directions.
                let (a, b, c, hf, hn) = match side {
                    Side::Left => (sten[0], sten[1], sten[2], sten[3], sten[4]),
                    Side::Right => (sten[2], sten[1], sten[0], sten[4], sten[3]),
                };
                let (blended, _, _) = hweno_first_column(a, b, c, hf, hn, params);
                col[0] = blended;
            }
            let fhat = col[0] + xi0 * (col[1] + xi0 * (col[2] + xi0 * (col[3] + xi0 * col[4])));
            let hnew = col[0]
                + xi0
                    * (2.0 * col[1]
                        + xi0 * (3.0 * col[2] + xi0 * (4.0 * col[3] + xi0 * 5.0 * col[4])));
            (fhat, hnew)
        }
    }
}

/// Linear (fixed-stencil) flux pair at one interface of a line.
pub fn flux_hat_linear(
    line: &Line,
    m: usize,
    xi0: f64,
    side: Side,
    order: Order,
) -> Result<(f64, f64)> {
    if !(0.0..=0.5).contains(&xi0) {
        return Err(Error::InvalidArgument(format!(
            "xi0 = {xi0} outside [0, 1/2]"
        )));
    }
    if m >= line.h.len() {
        return Err(Error::InvalidArgument(format!(
            "interface {m} out of range ({})",
            line.h.len()
        )));
    }
    let p = Padded::new(line);
    Ok(interface_flux(
        &p,
        m as isize,
        xi0,
        side,
        order,
        FluxMode::Linear,
        &HwenoParams::default(),
    ))
}

/// Whole-cell shift of both arrays: a rotation for periodic lines, a shift
/// that discards outflow and injects zeros for zero-boundary lines.
fn whole_shift(line: &Line, w: i64) -> Line {
    if w == 0 {
        return line.clone();
    }
    let n = line.n() as isize;
    let n_if = line.h.len() as isize;
    let mut out = line.clone();
    match line.bc {
        Boundary::Periodic => {
            for k in 0..n {
                out.f[k as usize] = line.f[(k - w as isize).rem_euclid(n) as usize];
                out.h[k as usize] = line.h[(k - w as isize).rem_euclid(n) as usize];
            }
        }
        Boundary::Zero => {
            for k in 0..n {
                let src = k - w as isize;
                out.f[k as usize] = if (0..n).contains(&src) {
                    line.f[src as usize]
                } else {
                    0.0
                };
            }
            for m in 0..n_if {
                let src = m - w as isize;
                out.h[m as usize] = if (0..n_if).contains(&src) {
                    line.h[src as usize]
                } else {
                    0.0
                };
            }
        }
    }
    out
}

/// One semi-Lagrangian advection step of a line at constant speed `v`.
///
/// Applies the whole-cell shift, then the fractional flux-difference
/// update of `f` and the staggered array. For a periodic line the total
/// of `f` is conserved to rounding. At the outer interfaces of a
/// zero-boundary line the point-value flux is set to zero (nothing enters
/// or leaves through the fractional update), so cut-off boundaries do not
/// bleed mass; whole-cell shifts still discard outflow.
pub fn advect_line(line: &Line, v: f64, dt: f64, mode: FluxMode, order: Order) -> Result<Line> {
    if !v.is_finite() {
        return Err(Error::NonFinite("advection speed".into()));
    }
    if !(dt >= 0.0) {
        return Err(Error::InvalidArgument(format!("dt = {dt} must be >= 0")));
    }
    if mode == FluxMode::Hweno && order == Order::Cubic3 {
        return Err(Error::UnsupportedScheme(
            "the HWENO blend is defined for the fifth-order flux only".into(),
        ));
    }
    let sd = decompose_shift(v, dt, line.dx);
    let mut out = whole_shift(line, sd.whole);
    if sd.xi0 == 0.0 {
        return Ok(out);
    }

    let params = HwenoParams::default();
    let p = Padded::new(&out);
    let n = p.n;
    let n_if = p.n_if;
    let mut fhat = vec![0.0; n_if];
    let mut hnew = vec![0.0; n_if];
    for m in 0..n_if {
        let (fh, hn) = interface_flux(&p, m as isize, sd.xi0, sd.side, order, mode, &params);
        fhat[m] = fh;
        hnew[m] = hn;
    }
    if line.bc == Boundary::Zero {
        // No flux through a cut-off boundary: the fractional update then
        // telescopes to exactly zero net mass change. The outermost
        // staggered values are pinned to the ghost value for the same
        // reason whole shifts inject zeros.
        fhat[0] = 0.0;
        fhat[n_if - 1] = 0.0;
        hnew[0] = 0.0;
        hnew[n_if - 1] = 0.0;
    }
    let sign = match sd.side {
        Side::Left => -sd.xi0,
        Side::Right => sd.xi0,
    };
    match line.bc {
        Boundary::Periodic => {
            for k in 0..n {
                out.f[k] += sign * (fhat[(k + 1) % n] - fhat[k]);
            }
        }
        Boundary::Zero => {
            for k in 0..n {
                out.f[k] += sign * (fhat[k + 1] - fhat[k]);
            }
        }
    }
    out.h = hnew;
    Ok(out)
}
