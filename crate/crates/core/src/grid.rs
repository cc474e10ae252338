//! Uniform grids, 1D line state and 2D phase-space state.
//!
//! Index conventions (0-based, used everywhere in this crate):
//! cells `k = 0..n` have centers `x_k = x_lo + (k + 1/2) dx`; interface `m`
//! sits at `x_lo + m dx`, so cell `k` is bounded by interfaces `k` and
//! `k + 1`. A staggered array stores one value per interface: `n` entries
//! with wrap-around for periodic boundaries (interface `n` is interface
//! `0`), `n + 1` entries for a zero boundary. Stencil reads outside the
//! domain of a zero-boundary line return 0 for both `f` and `h`.

use crate::limiter;
use crate::{Error, Result};
use ndarray::Array2;

/// Boundary treatment of a 1D direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Boundary {
    /// Wrap-around; staggered arrays hold `n` entries.
    Periodic,
    /// Out-of-domain reads are zero; staggered arrays hold `n + 1` entries.
    Zero,
}

/// Uniform 1D grid on `[x_lo, x_hi]` with cell-centered points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub n_cells: usize,
    pub x_lo: f64,
    pub x_hi: f64,
    pub dx: f64,
    pub bc: Boundary,
}

/// Minimum cell count for the fifth-order reconstruction stencils.
pub const MIN_CELLS: usize = 6;

impl Grid1D {
    pub fn new(n_cells: usize, x_lo: f64, x_hi: f64, bc: Boundary) -> Result<Self> {
        if n_cells < MIN_CELLS {
            return Err(Error::GridTooSmall {
                n: n_cells,
                min: MIN_CELLS,
            });
        }
        if !(x_hi - x_lo).is_finite() || x_hi <= x_lo {
            return Err(Error::InvalidArgument(format!(
                "bad domain [{x_lo}, {x_hi}]"
            )));
        }
        Ok(Self {
            n_cells,
            x_lo,
            x_hi,
            dx: (x_hi - x_lo) / n_cells as f64,
            bc,
        })
    }

    /// Center of cell `k`: `x_lo + (k + 1/2) dx`.
    #[inline]
    pub fn center(&self, k: usize) -> f64 {
        self.x_lo + (k as f64 + 0.5) * self.dx
    }

    /// Position of interface `m`: `x_lo + m dx`.
    #[inline]
    pub fn interface(&self, m: usize) -> f64 {
        self.x_lo + m as f64 * self.dx
    }

    /// Cell centers as a vector.
    pub fn centers(&self) -> Vec<f64> {
        (0..self.n_cells).map(|k| self.center(k)).collect()
    }

    /// Number of staggered entries for this boundary type.
    #[inline]
    pub fn n_interfaces(&self) -> usize {
        match self.bc {
            Boundary::Periodic => self.n_cells,
            Boundary::Zero => self.n_cells + 1,
        }
    }
}

/// State of one 1D sweep line: point values `f` plus the staggered
/// sliding-average boundary values `h` whose difference recovers the
/// derivative, `g_k = (h_{k+1} - h_k)/dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct Line {
    pub f: Vec<f64>,
    pub h: Vec<f64>,
    pub bc: Boundary,
    pub dx: f64,
}

impl Line {
    /// Assemble a line from existing point and staggered values.
    pub fn new(f: Vec<f64>, h: Vec<f64>, bc: Boundary, dx: f64) -> Result<Self> {
        let n = f.len();
        let want = match bc {
            Boundary::Periodic => n,
            Boundary::Zero => n + 1,
        };
        if h.len() != want {
            return Err(Error::InvalidArgument(format!(
                "staggered array has {} entries, expected {want}",
                h.len()
            )));
        }
        Ok(Self { f, h, bc, dx })
    }

    /// Build a line from point values, reconstructing the staggered
    /// boundary values with the fifth-order WENO scheme. For a periodic
    /// line the recovered derivatives then telescope to zero exactly.
    pub fn from_point_values(f: &[f64], grid: &Grid1D) -> Result<Self> {
        if f.len() != grid.n_cells {
            return Err(Error::InvalidArgument(format!(
                "{} point values on a {}-cell grid",
                f.len(),
                grid.n_cells
            )));
        }
        if f.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("line point values".into()));
        }
        let h = limiter::weno5_reconstruct_h(f, grid.bc)?;
        Ok(Self {
            f: f.to_vec(),
            h,
            bc: grid.bc,
            dx: grid.dx,
        })
    }

    pub fn n(&self) -> usize {
        self.f.len()
    }

    /// Recovered derivative at cell `k`.
    #[inline]
    pub fn g(&self, k: usize) -> f64 {
        let n = self.n();
        let (left, right) = match self.bc {
            Boundary::Periodic => (self.h[k], self.h[(k + 1) % n]),
            Boundary::Zero => (self.h[k], self.h[k + 1]),
        };
        (right - left) / self.dx
    }

    /// Total of `f` (plain sum; conservation checks divide by `n` scale).
    pub fn sum_f(&self) -> f64 {
        crate::diagnostics::pairwise_sum(&self.f)
    }
}

/// 2D phase-space state `f(x_i, v_j)` with staggered flux arrays `phi`
/// (staggered in x, one column per v-row) and `psi` (staggered in v, one
/// row per x-column) housing the derivatives in flux-difference form:
/// `(f_x)_{ij} = (phi[i+1,j] - phi[i,j])/dx`, `(f_v)_{ij} = (psi[i,j+1] - psi[i,j])/dv`.
#[derive(Debug, Clone)]
pub struct PhaseState {
    pub f: Array2<f64>,
    pub phi: Array2<f64>,
    pub psi: Array2<f64>,
    pub grid_x: Grid1D,
    pub grid_v: Grid1D,
}

impl PhaseState {
    /// Initialize from a point-value field; both staggered arrays are
    /// reconstructed per line with the fifth-order WENO scheme.
    pub fn from_field(f: Array2<f64>, grid_x: Grid1D, grid_v: Grid1D) -> Result<Self> {
        let (nx, nv) = f.dim();
        if nx != grid_x.n_cells || nv != grid_v.n_cells {
            return Err(Error::InvalidArgument(format!(
                "field shape ({nx}, {nv}) does not match grids ({}, {})",
                grid_x.n_cells, grid_v.n_cells
            )));
        }
        if f.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("phase-space field".into()));
        }
        let mut phi = Array2::zeros((grid_x.n_interfaces(), nv));
        let mut psi = Array2::zeros((nx, grid_v.n_interfaces()));
        let mut row = vec![0.0; nx];
        for j in 0..nv {
            for i in 0..nx {
                row[i] = f[[i, j]];
            }
            let h = limiter::weno5_reconstruct_h(&row, grid_x.bc)?;
            for (m, hv) in h.iter().enumerate() {
                phi[[m, j]] = *hv;
            }
        }
        let mut col = vec![0.0; nv];
        for i in 0..nx {
            for j in 0..nv {
                col[j] = f[[i, j]];
            }
            let h = limiter::weno5_reconstruct_h(&col, grid_v.bc)?;
            for (m, hv) in h.iter().enumerate() {
                psi[[i, m]] = *hv;
            }
        }
        Ok(Self {
            f,
            phi,
            psi,
            grid_x,
            grid_v,
        })
    }

    pub fn nx(&self) -> usize {
        self.grid_x.n_cells
    }

    pub fn nv(&self) -> usize {
        self.grid_v.n_cells
    }

    /// First non-finite cell, if any.
    pub fn first_non_finite(&self) -> Option<(usize, usize)> {
        for ((i, j), v) in self.f.indexed_iter() {
            if !v.is_finite() {
                return Some((i, j));
            }
        }
        None
    }
}

/// Per-step scalar diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub mass: f64,
    pub l1: f64,
    pub l2: f64,
    pub energy: f64,
    pub entropy: f64,
    pub e_l2: f64,
    pub e_linf: f64,
    pub troubled_cells: usize,
}
