//! First-order (KKT) and second-order optimality diagnostics.
//!
//! Multipliers are reported on the scale of the true objective gradient. The
//! KKT rows written with the un-halved stationarity expression
//! `f(x_{i+1}) - f(x_{i-1}) + f'(x_i)(x_{i-1} - x_{i+1})` carry multipliers
//! exactly twice these.

use std::f64::consts::PI;

use serde::Serialize;

use crate::curve::SmoothCurve;
use crate::error::{KnotError, Result};
use crate::objective::{gradient, ObjectiveKind};
use crate::pl::KnotVector;

/// Stationarity tolerance used by [`kkt_check`] before it evaluates the
/// second-order test.
pub const DEFAULT_KKT_TOL: f64 = 1e-6;

/// Absolute tolerance on `min(gap_i, λ_i)`.
pub const COMPLEMENTARITY_TOL: f64 = 1e-8;

/// Symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    /// `off[i]` couples rows `i` and `i + 1`.
    pub off: Vec<f64>,
}

impl Tridiagonal {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.dim();
        let mut m = vec![vec![0.0; n]; n];
        for i in 0..n {
            m[i][i] = self.diag[i];
            if i + 1 < n {
                m[i][i + 1] = self.off[i];
                m[i + 1][i] = self.off[i];
            }
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KktReport {
    pub kind: ObjectiveKind,
    /// `λ_0..λ_n`, one per ordering constraint `x_i <= x_{i+1}`.
    pub lambda: Vec<f64>,
    pub gradient: Vec<f64>,
    /// Max-norm of `∇F_i + λ_i - λ_{i-1}` over `i = 1..n`.
    pub stationarity_residual: f64,
    /// `max_i |min(x_{i+1} - x_i, λ_i)|`.
    pub complementarity_residual: f64,
    /// Tridiagonal second-order matrix; area objective only.
    pub hessian: Option<Tridiagonal>,
    /// Second-order sufficient test; `None` unless the point is stationary
    /// within [`DEFAULT_KKT_TOL`] and the objective is the area gap.
    pub prop1_holds: Option<bool>,
    pub prop1_margins: Vec<f64>,
    /// 1-based indices `i` at which the inequality was evaluated (`1..=n-1`).
    pub prop1_indices: Vec<usize>,
}

impl KktReport {
    pub fn is_kkt(&self, tol: f64) -> bool {
        self.stationarity_residual <= tol && self.complementarity_residual <= COMPLEMENTARITY_TOL
    }
}

/// Recovers multipliers from the stationarity rows and measures how far
/// `knots` is from a KKT point.
///
/// With strictly ordered knots every multiplier is zero and the residual is
/// `‖∇F‖_∞`. Within runs of tied knots the multipliers follow from forward
/// substitution (or backward, for a run starting at `a`).
pub fn kkt_check<C: SmoothCurve>(
    curve: &C,
    knots: &KnotVector,
    kind: ObjectiveKind,
) -> Result<KktReport> {
    let grad = gradient(curve, knots, kind)?;
    let pts = knots.points();
    let n = knots.n();
    let gaps: Vec<f64> = pts.windows(2).map(|w| w[1] - w[0]).collect();
    let row = |i: usize| grad[i - 1];

    let mut lambda = vec![0.0; n + 1];
    let mut j = 0;
    while j <= n {
        if gaps[j] > 0.0 {
            j += 1;
            continue;
        }
        let mut m = j;
        while m < n && gaps[m + 1] <= 0.0 {
            m += 1;
        }
        if j == 0 {
            // λ_{m+1} = 0 because gap m+1 is positive
            for i in (1..=m + 1).rev() {
                let next = if i == m + 1 { 0.0 } else { lambda[i] };
                lambda[i - 1] = next + row(i);
            }
        } else {
            for i in j..=m {
                lambda[i] = lambda[i - 1] - row(i);
            }
        }
        j = m + 1;
    }

    let stationarity_residual = (1..=n)
        .map(|i| (row(i) + lambda[i] - lambda[i - 1]).abs())
        .fold(0.0, f64::max);
    let complementarity_residual = gaps
        .iter()
        .zip(&lambda)
        .map(|(g, l)| g.min(*l).abs())
        .fold(0.0, f64::max);

    let (hessian, prop1_holds, prop1_margins, prop1_indices) = match kind {
        ObjectiveKind::ConcaveArea => {
            let h = hessian_phi(curve, knots)?;
            let (holds, margins) = if stationarity_residual <= DEFAULT_KKT_TOL {
                let (holds, margins) = prop1_inequality(&h, n);
                (Some(holds), margins)
            } else {
                (None, Vec::new())
            };
            (Some(h), holds, margins, (1..n).collect())
        }
        ObjectiveKind::GeneralSquared => (None, None, Vec::new(), Vec::new()),
    };

    Ok(KktReport {
        kind,
        lambda,
        gradient: grad,
        stationarity_residual,
        complementarity_residual,
        hessian,
        prop1_holds,
        prop1_margins,
        prop1_indices,
    })
}

/// Second-order matrix of the area objective: diagonal
/// `(x_{i-1} - x_{i+1}) f''(x_i)`, off-diagonal `f'(x_{i+1}) - f'(x_i)`.
///
/// This is twice the Hessian of `φ`; definiteness is unaffected.
pub fn hessian_phi<C: SmoothCurve>(curve: &C, knots: &KnotVector) -> Result<Tridiagonal> {
    let pts = knots.points();
    let n = knots.n();
    let slopes = pts[1..=n]
        .iter()
        .map(|&x| curve.deriv1(x))
        .collect::<Result<Vec<_>>>()?;
    let diag = (1..=n)
        .map(|i| Ok((pts[i - 1] - pts[i + 1]) * curve.deriv2(pts[i])?))
        .collect::<Result<Vec<_>>>()?;
    let off = slopes.windows(2).map(|w| w[1] - w[0]).collect();
    Ok(Tridiagonal { diag, off })
}

fn prop1_inequality(h: &Tridiagonal, n: usize) -> (bool, Vec<f64>) {
    let c = (PI / (n as f64 + 1.0)).cos();
    let margins: Vec<f64> = (0..n.saturating_sub(1))
        .map(|k| 0.25 * h.diag[k] * h.diag[k + 1] / (c * c) - h.off[k] * h.off[k])
        .collect();
    let holds = h.diag.iter().all(|&d| d > 0.0) && margins.iter().all(|&m| m > 0.0);
    (holds, margins)
}

/// Sufficient condition for a local minimum of the area objective at a KKT
/// point:
/// `[f'(x_{i+1}) - f'(x_i)]² < ¼ (x_{i-1} - x_{i+1})(x_i - x_{i+2}) f''(x_i) f''(x_{i+1}) / cos²(π/(n+1))`
/// for `i = 1..n-1`, plus a positive diagonal.
///
/// Returns `(holds, margins)` with `margins[i-1] = rhs - lhs`. Fails with
/// [`KnotError::NotKkt`] if the area-gap gradient exceeds `tol`.
pub fn prop1_test<C: SmoothCurve>(
    curve: &C,
    knots: &KnotVector,
    tol: f64,
) -> Result<(bool, Vec<f64>)> {
    let residual = gradient(curve, knots, ObjectiveKind::ConcaveArea)?
        .iter()
        .fold(0.0f64, |m, g| m.max(g.abs()));
    if residual > tol {
        return Err(KnotError::NotKkt { residual, tol });
    }
    let h = hessian_phi(curve, knots)?;
    Ok(prop1_inequality(&h, knots.n()))
}
