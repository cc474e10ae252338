//! WENO5 reconstruction of staggered boundary values and the TVB minmod
//! troubled-cell detector.
//!
//! The point values `f_k` are the sliding averages of the boundary-value
//! function `h` over cells centered at the grid points, so reconstructing
//! `h` at the interfaces from `{f_k}` is the classical reconstruction from
//! cell averages: three quadratic candidates per interface, blended with
//! the Jiang-Shu smoothness indicators. It is used to initialize staggered
//! arrays and to repair them in cells flagged by the TVB detector.

use crate::grid::{Boundary, Line, MIN_CELLS};
use crate::{Error, Result};

/// Per-direction TVB limiter constants.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TvbConstants {
    pub m_x: f64,
    pub m_v: f64,
}

impl TvbConstants {
    pub fn new(m_x: f64, m_v: f64) -> Result<Self> {
        if !(m_x >= 0.0) || !(m_v >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "TVB constants must be nonnegative, got ({m_x}, {m_v})"
            )));
        }
        Ok(Self { m_x, m_v })
    }
}

/// Boolean flag per cell of a line or field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TroubleMask {
    pub flags: Vec<bool>,
}

impl TroubleMask {
    pub fn count(&self) -> usize {
        self.flags.iter().filter(|&&b| b).count()
    }

    pub fn any(&self) -> bool {
        self.flags.iter().any(|&b| b)
    }
}

/// Classical minmod: the common-sign minimum in magnitude, else zero.
pub fn minmod(args: &[f64]) -> f64 {
    debug_assert!(!args.is_empty());
    let s = args[0].signum();
    let mut m = f64::INFINITY;
    for &a in args {
        if a.signum() != s || a == 0.0 {
            return 0.0;
        }
        m = m.min(a.abs());
    }
    s * m
}

/// TVB-modified minmod: passes `args[0]` through when it is already below
/// the `m dx^2` threshold.
pub fn tvb_minmod(args: &[f64], m: f64, dx: f64) -> f64 {
    debug_assert!(dx > 0.0);
    if args[0].abs() <= m * dx * dx {
        args[0]
    } else {
        minmod(args)
    }
}

// Linear weights of the three candidate stencils.
const D0: f64 = 0.1;
const D1: f64 = 0.6;
const D2: f64 = 0.3;
/// Regularization in the nonlinear weights (same value as the HWENO flux blend).
pub const WENO_EPSILON: f64 = 1e-6;

/// Reconstruction at one interface from the padded window
/// `w = [f[m-3], f[m-2], f[m-1], f[m], f[m+1]]` (cells left of and right
/// of interface `m`, ghosts already resolved).
#[inline]
fn weno5_at_interface(w: &[f64; 5]) -> f64 {
    let p0 = (2.0 * w[0] - 7.0 * w[1] + 11.0 * w[2]) / 6.0;
    let p1 = (-w[1] + 5.0 * w[2] + 2.0 * w[3]) / 6.0;
    let p2 = (2.0 * w[2] + 5.0 * w[3] - w[4]) / 6.0;

    let b0 = 13.0 / 12.0 * (w[0] - 2.0 * w[1] + w[2]).powi(2)
        + 0.25 * (w[0] - 4.0 * w[1] + 3.0 * w[2]).powi(2);
    let b1 = 13.0 / 12.0 * (w[1] - 2.0 * w[2] + w[3]).powi(2) + 0.25 * (w[1] - w[3]).powi(2);
    let b2 = 13.0 / 12.0 * (w[2] - 2.0 * w[3] + w[4]).powi(2)
        + 0.25 * (3.0 * w[2] - 4.0 * w[3] + w[4]).powi(2);

    let a0 = D0 / ((WENO_EPSILON + b0) * (WENO_EPSILON + b0));
    let a1 = D1 / ((WENO_EPSILON + b1) * (WENO_EPSILON + b1));
    let a2 = D2 / ((WENO_EPSILON + b2) * (WENO_EPSILON + b2));
    let sum = a0 + a1 + a2;
    (a0 * p0 + a1 * p1 + a2 * p2) / sum
}

/// Pad point values with three ghost cells per side, resolved by `bc`.
fn padded(f: &[f64], bc: Boundary) -> Vec<f64> {
    let n = f.len();
    let mut p = vec![0.0; n + 6];
    p[3..3 + n].copy_from_slice(f);
    if bc == Boundary::Periodic {
        for k in 0..3 {
            p[k] = f[n - 3 + k];
            p[n + 3 + k] = f[k];
        }
    }
    p
}

/// Fifth-order WENO reconstruction of all staggered boundary values from
/// point values. Returns `n` entries for a periodic line, `n + 1` for a
/// zero-boundary line.
pub fn weno5_reconstruct_h(f: &[f64], bc: Boundary) -> Result<Vec<f64>> {
    let n = f.len();
    if n < MIN_CELLS {
        return Err(Error::GridTooSmall { n, min: MIN_CELLS });
    }
    let p = padded(f, bc);
    let n_if = match bc {
        Boundary::Periodic => n,
        Boundary::Zero => n + 1,
    };
    let mut h = vec![0.0; n_if];
    for (m, hv) in h.iter_mut().enumerate() {
        // window cells m-3..=m+1 live at p[m..m+5]
        let w = [p[m], p[m + 1], p[m + 2], p[m + 3], p[m + 4]];
        *hv = weno5_at_interface(&w);
    }
    Ok(h)
}

/// TVB troubled-cell detector. Cell `k` is flagged when the modified
/// minmod changes either one-sided staggered difference
/// `h_{k+1} - f_k` or `f_k - h_k`.
pub fn detect_troubled(line: &Line, m: f64) -> TroubleMask {
    let n = line.n();
    let mut flags = vec![false; n];
    let fval = |k: isize| -> f64 {
        match line.bc {
            Boundary::Periodic => line.f[k.rem_euclid(n as isize) as usize],
            Boundary::Zero => {
                if k < 0 || k >= n as isize {
                    0.0
                } else {
                    line.f[k as usize]
                }
            }
        }
    };
    for k in 0..n {
        let (h_left, h_right) = match line.bc {
            Boundary::Periodic => (line.h[k], line.h[(k + 1) % n]),
            Boundary::Zero => (line.h[k], line.h[k + 1]),
        };
        let ft = h_right - line.f[k];
        let ftt = line.f[k] - h_left;
        let dp = fval(k as isize + 1) - line.f[k];
        let dm = line.f[k] - fval(k as isize - 1);
        let ft_mod = tvb_minmod(&[ft, dp, dm], m, line.dx);
        let ftt_mod = tvb_minmod(&[ftt, dp, dm], m, line.dx);
        flags[k] = ft_mod != ft || ftt_mod != ftt;
    }
    TroubleMask { flags }
}

/// Replace both staggered values adjacent to every flagged cell with the
/// WENO5 reconstruction from the current point values. `f` is never
/// modified, so the line's total mass is untouched.
pub fn apply_limiter(line: &Line, m: f64) -> (Line, TroubleMask) {
    let mask = detect_troubled(line, m);
    if !mask.any() {
        return (line.clone(), mask);
    }
    let n = line.n();
    let p = padded(&line.f, line.bc);
    let mut out = line.clone();
    let mut replace = vec![false; line.h.len()];
    for (k, &flagged) in mask.flags.iter().enumerate() {
        if flagged {
            match line.bc {
                Boundary::Periodic => {
                    replace[k] = true;
                    replace[(k + 1) % n] = true;
                }
                Boundary::Zero => {
                    replace[k] = true;
                    replace[k + 1] = true;
                }
            }
        }
    }
    for (mi, &r) in replace.iter().enumerate() {
        if r {
            let w = [p[mi], p[mi + 1], p[mi + 2], p[mi + 3], p[mi + 4]];
            out.h[mi] = weno5_at_interface(&w);
        }
    }
    (out, mask)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid1D;
    use std::f64::consts::PI;

    #[test]
    fn minmod_examples() {
        assert_eq!(minmod(&[2.0, 3.0, 1.0]), 1.0);
        assert_eq!(minmod(&[2.0, -3.0, 1.0]), 0.0);
        assert_eq!(minmod(&[-2.0, -5.0]), -2.0);
    }

    #[test]
    fn tvb_examples() {
        // below threshold: first argument passes through
        assert_eq!(tvb_minmod(&[1e-6, -5.0, 4.0], 1.0, 0.1), 1e-6);
        // M = 0 reduces to plain minmod
        assert_eq!(tvb_minmod(&[0.5, 0.1, 0.2], 0.0, 0.1), 0.1);
        assert_eq!(tvb_minmod(&[0.5, -0.1, 0.2], 0.0, 0.1), 0.0);
    }

    fn sine_line(n: usize) -> Line {
        let g = Grid1D::new(n, 0.0, 2.0 * PI, Boundary::Periodic).unwrap();
        let f: Vec<f64> = (0..n).map(|k| g.center(k).sin()).collect();
        Line::from_point_values(&f, &g).unwrap()
    }

    #[test]
    fn smooth_line_flags_nothing() {
        let line = sine_line(64);
        let mask = detect_troubled(&line, 1.0);
        assert_eq!(mask.count(), 0);
    }

    #[test]
    fn constant_line_flags_nothing() {
        // all staggered differences are exactly zero on a constant line
        let line = Line::new(vec![0.7; 32], vec![0.7; 32], Boundary::Periodic, 0.03125).unwrap();
        assert_eq!(detect_troubled(&line, 0.0).count(), 0);
        assert_eq!(detect_troubled(&line, 100.0).count(), 0);
    }

    #[test]
    fn step_flags_cells_at_the_jump() {
        let g = Grid1D::new(40, 0.0, 1.0, Boundary::Periodic).unwrap();
        let f: Vec<f64> = (0..40).map(|k| if (10..30).contains(&k) { 1.0 } else { 0.0 }).collect();
        let line = Line::from_point_values(&f, &g).unwrap();
        let mask = detect_troubled(&line, 0.0);
        assert!(mask.count() > 0);
        // flags cluster around the two jumps
        for (k, &fl) in mask.flags.iter().enumerate() {
            if fl {
                let near_jump = (8..=12).contains(&k) || (28..=32).contains(&k);
                assert!(near_jump, "unexpected flag at cell {k}");
            }
        }
        assert!(mask.flags[9] || mask.flags[10], "jump at 10 not detected");
    }

    #[test]
    fn weno5_constant_is_exact() {
        let h = weno5_reconstruct_h(&vec![2.5; 16], Boundary::Periodic).unwrap();
        for v in h {
            assert!((v - 2.5).abs() < 1e-14);
        }
    }

    #[test]
    fn weno5_converges_at_fifth_order_on_sine() {
        let err = |n: usize| -> f64 {
            let g = Grid1D::new(n, 0.0, 2.0 * PI, Boundary::Periodic).unwrap();
            let f: Vec<f64> = (0..n).map(|k| g.center(k).sin()).collect();
            let h = weno5_reconstruct_h(&f, Boundary::Periodic).unwrap();
            let amp = g.dx / (2.0 * (g.dx / 2.0).sin());
            (0..n)
                .map(|m| (h[m] - amp * g.interface(m).sin()).abs())
                .fold(0.0, f64::max)
        };
        let ratio = err(64) / err(128);
        assert!(
            (24.0..44.0).contains(&ratio),
            "error ratio {ratio:.2} not near 2^5"
        );
    }

    #[test]
    fn weno5_linear_zero_bc_exact_on_interior() {
        let n = 20;
        let dx = 0.1;
        let f: Vec<f64> = (0..n).map(|k| (k as f64 + 0.5) * dx).collect();
        let h = weno5_reconstruct_h(&f, Boundary::Zero).unwrap();
        for m in 3..=n - 3 {
            let exact = m as f64 * dx;
            assert!(
                (h[m] - exact).abs() < 1e-13,
                "interface {m}: {} vs {exact}",
                h[m]
            );
        }
    }

    #[test]
    fn limiter_is_identity_when_nothing_is_flagged() {
        let line = sine_line(64);
        let (out, mask) = apply_limiter(&line, 1.0);
        assert_eq!(mask.count(), 0);
        assert_eq!(out, line);
    }

    #[test]
    fn limiter_with_negative_threshold_replaces_everything() {
        // m = 0 and wiggly data flags broadly; check full replacement when
        // every cell is troubled.
        let g = Grid1D::new(24, 0.0, 1.0, Boundary::Periodic).unwrap();
        let f: Vec<f64> = (0..24).map(|k| if k % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let mut line = Line::from_point_values(&f, &g).unwrap();
        // skew h so every cell trips the detector
        for v in line.h.iter_mut() {
            *v += 5.0;
        }
        let (out, mask) = apply_limiter(&line, 0.0);
        assert_eq!(mask.count(), 24);
        let reference = weno5_reconstruct_h(&f, Boundary::Periodic).unwrap();
        assert_eq!(out.h, reference);
        assert_eq!(out.f, line.f);
    }

    #[test]
    fn limiter_preserves_f_and_mass_on_step_data() {
        let g = Grid1D::new(40, 0.0, 1.0, Boundary::Periodic).unwrap();
        let f: Vec<f64> = (0..40).map(|k| if (10..30).contains(&k) { 1.0 } else { 0.0 }).collect();
        let line = Line::from_point_values(&f, &g).unwrap();
        let (out, mask) = apply_limiter(&line, 0.0);
        assert!(mask.count() > 0);
        assert_eq!(out.f, line.f);
        assert_eq!(out.sum_f(), line.sum_f());
        // untouched interfaces keep their old values
        let mut touched = vec![false; 40];
        for (k, &fl) in mask.flags.iter().enumerate() {
            if fl {
                touched[k] = true;
                touched[(k + 1) % 40] = true;
            }
        }
        for m in 0..40 {
            if !touched[m] {
                assert_eq!(out.h[m], line.h[m], "interface {m} should be untouched");
            }
        }
    }

    #[test]
    fn flag_set_shrinks_as_m_grows() {
        let g = Grid1D::new(50, 0.0, 1.0, Boundary::Periodic).unwrap();
        let f: Vec<f64> = (0..50)
            .map(|k| {
                let x = (k as f64 + 0.5) / 50.0;
                if x < 0.5 {
                    (8.0 * PI * x).sin()
                } else {
                    1.0
                }
            })
            .collect();
        let line = Line::from_point_values(&f, &g).unwrap();
        let mut prev = usize::MAX;
        for m in [0.0, 1.0, 10.0, 100.0, 1e4, 1e8] {
            let cnt = detect_troubled(&line, m).count();
            assert!(cnt <= prev, "flag count grew from {prev} to {cnt} at M={m}");
            prev = cnt;
        }
        assert_eq!(prev, 0);
    }
}
