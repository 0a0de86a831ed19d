//! Knot-placement objectives, their gradients, and the change of variables
//! `y_i = (x_i - a) / (b - x_i)` that maps ordered knots onto the monotone
//! nonnegative cone.

use serde::{Deserialize, Serialize};

use crate::curve::SmoothCurve;
use crate::error::{KnotError, Result};
use crate::pl::{segment_gap, KnotVector};

/// Which error the solver minimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ObjectiveKind {
    /// Negated trapezoid area; same minimizers as the concave area gap.
    ConcaveArea,
    /// Sum of squared per-segment signed gaps.
    GeneralSquared,
}

impl ObjectiveKind {
    pub fn label(self) -> &'static str {
        match self {
            ObjectiveKind::ConcaveArea => "concave",
            ObjectiveKind::GeneralSquared => "general",
        }
    }
}

/// `-(1/2) Σ (x_{i+1} - x_i)(f(x_{i+1}) + f(x_i))`.
pub fn phi<C: SmoothCurve>(curve: &C, knots: &KnotVector) -> Result<f64> {
    let mut acc = 0.0;
    for (lo, hi) in knots.segments() {
        if hi != lo {
            acc += (hi - lo) * (curve.eval(hi)? + curve.eval(lo)?);
        }
    }
    Ok(-0.5 * acc)
}

/// `∂φ/∂x_i = (1/2)[f(x_{i+1}) - f(x_{i-1}) + f'(x_i)(x_{i-1} - x_{i+1})]`.
pub fn grad_phi<C: SmoothCurve>(curve: &C, knots: &KnotVector) -> Result<Vec<f64>> {
    let pts = knots.points();
    let vals = pts
        .iter()
        .map(|&x| curve.eval(x))
        .collect::<Result<Vec<_>>>()?;
    (1..pts.len() - 1)
        .map(|i| {
            let slope = curve.deriv1(pts[i])?;
            Ok(0.5 * (vals[i + 1] - vals[i - 1] + slope * (pts[i - 1] - pts[i + 1])))
        })
        .collect()
}

/// Squared signed gap of one segment.
pub fn psi<C: SmoothCurve>(curve: &C, lo: f64, hi: f64) -> Result<f64> {
    let g = segment_gap(curve, lo, hi)?;
    Ok(g * g)
}

/// `(∂ψ/∂lo, ∂ψ/∂hi)`.
///
/// With `g = I - T` (integral minus trapezoid) and `w = hi - lo`:
/// `∂ψ/∂lo = g (f(hi) - f(lo) - f'(lo) w)` and
/// `∂ψ/∂hi = g (f(hi) - f(lo) - f'(hi) w)`.
pub fn psi_partials<C: SmoothCurve>(curve: &C, lo: f64, hi: f64) -> Result<(f64, f64)> {
    if hi == lo {
        return Ok((0.0, 0.0));
    }
    let g = segment_gap(curve, lo, hi)?;
    let rise = curve.eval(hi)? - curve.eval(lo)?;
    let w = hi - lo;
    Ok((
        g * (rise - curve.deriv1(lo)? * w),
        g * (rise - curve.deriv1(hi)? * w),
    ))
}

/// Gradient of the sum of squared segment gaps with respect to the interior knots.
pub fn grad_general<C: SmoothCurve>(curve: &C, knots: &KnotVector) -> Result<Vec<f64>> {
    let n = knots.n();
    let mut grad = vec![0.0; n];
    for (i, (lo, hi)) in knots.segments().enumerate() {
        let (d_lo, d_hi) = psi_partials(curve, lo, hi)?;
        // segment i spans (x_i, x_{i+1}); interior knot j sits at grad[j - 1]
        if i >= 1 {
            grad[i - 1] += d_lo;
        }
        if i < n {
            grad[i] += d_hi;
        }
    }
    Ok(grad)
}

/// Objective value in knot space.
pub fn objective<C: SmoothCurve>(
    curve: &C,
    knots: &KnotVector,
    kind: ObjectiveKind,
) -> Result<f64> {
    match kind {
        ObjectiveKind::ConcaveArea => phi(curve, knots),
        ObjectiveKind::GeneralSquared => crate::pl::error_general(curve, knots),
    }
}

/// Objective gradient in knot space.
pub fn gradient<C: SmoothCurve>(
    curve: &C,
    knots: &KnotVector,
    kind: ObjectiveKind,
) -> Result<Vec<f64>> {
    match kind {
        ObjectiveKind::ConcaveArea => grad_phi(curve, knots),
        ObjectiveKind::GeneralSquared => grad_general(curve, knots),
    }
}

/// Distance kept between the last knot and `b`, as a fraction of `b - a`.
pub const END_GAP: f64 = 1e-12;

/// Knots in cone coordinates, with the interval they map back into.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct YVector {
    values: Vec<f64>,
    a: f64,
    b: f64,
}

impl YVector {
    /// Accepts any finite `values`; [`from_y`] caps large entries.
    pub fn new(values: Vec<f64>, a: f64, b: f64) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(KnotError::NonFinite("y vector".into()));
        }
        Ok(Self { values, a, b })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    /// Largest usable coordinate; maps to `b - END_GAP (b - a)`.
    pub fn cap(&self) -> f64 {
        1.0 / END_GAP - 1.0
    }

    /// `dx_i/dy_i = (b - a) / (1 + y_i)^2`, evaluated at the capped value.
    pub fn jacobian(&self) -> Vec<f64> {
        let cap = self.cap();
        self.values
            .iter()
            .map(|&y| {
                let t = 1.0 + y.min(cap);
                (self.b - self.a) / (t * t)
            })
            .collect()
    }
}

/// Maps knots to cone coordinates. Fails if a knot lies within
/// `END_GAP (b - a)` of `b`.
pub fn to_y(knots: &KnotVector) -> Result<YVector> {
    let (a, b) = (knots.a(), knots.b());
    let limit = b - END_GAP * (b - a);
    let values = knots
        .interior()
        .iter()
        .map(|&x| {
            if x > limit {
                Err(KnotError::Domain {
                    what: format!("cone transform on [{a}, {b}]"),
                    x,
                })
            } else {
                Ok((x - a) / (b - x))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(YVector { values, a, b })
}

/// Like [`to_y`], but first pulls knots closer than `END_GAP (b - a)` to `b`
/// back to that distance.
pub fn to_y_clamped(knots: &KnotVector) -> Result<YVector> {
    let (a, b) = (knots.a(), knots.b());
    let limit = b - END_GAP * (b - a);
    let interior = knots.interior().iter().map(|&x| x.min(limit)).collect();
    to_y(&KnotVector::new(a, b, interior)?)
}

/// Inverse of [`to_y`]: `x_i = b - (b - a) / (1 + y_i)`.
pub fn from_y(y: &YVector) -> Result<KnotVector> {
    let (a, b) = (y.a, y.b);
    let cap = y.cap();
    let interior = y
        .values
        .iter()
        .map(|&v| (b - (b - a) / (1.0 + v.min(cap))).clamp(a, b))
        .collect();
    KnotVector::new(a, b, interior)
}

/// Objective evaluated at `from_y(y)`.
pub fn big_phi<C: SmoothCurve>(curve: &C, y: &YVector, kind: ObjectiveKind) -> Result<f64> {
    objective(curve, &from_y(y)?, kind)
}

/// Chain rule: `∂Φ/∂y_i = ∂F/∂x_i · (b - a)/(1 + y_i)^2`.
pub fn grad_big_phi<C: SmoothCurve>(
    curve: &C,
    y: &YVector,
    kind: ObjectiveKind,
) -> Result<Vec<f64>> {
    let gx = gradient(curve, &from_y(y)?, kind)?;
    Ok(gx.iter().zip(y.jacobian()).map(|(g, j)| g * j).collect())
}
