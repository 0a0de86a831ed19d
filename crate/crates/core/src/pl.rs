//! Piecewise-linear interpolants through knots and their error measures.

use serde::Serialize;

use crate::curve::SmoothCurve;
use crate::error::{KnotError, Result};

/// Interval endpoints plus ordered interior knots `a <= x_1 <= ... <= x_n <= b`.
///
/// Coincident knots are allowed; they produce zero-length segments.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KnotVector {
    a: f64,
    b: f64,
    interior: Vec<f64>,
}

impl KnotVector {
    pub fn new(a: f64, b: f64, interior: Vec<f64>) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(KnotError::NonFinite(format!("interval [{a}, {b}]")));
        }
        if a >= b {
            return Err(KnotError::InvalidKnots(format!(
                "need a < b, got [{a}, {b}]"
            )));
        }
        let mut prev = a;
        for (i, &x) in interior.iter().enumerate() {
            if !x.is_finite() {
                return Err(KnotError::NonFinite(format!("knot {} = {x}", i + 1)));
            }
            if x < prev || x > b {
                return Err(KnotError::InvalidKnots(format!(
                    "knot {} = {x} breaks a <= x_1 <= ... <= x_n <= b on [{a}, {b}]",
                    i + 1
                )));
            }
            prev = x;
        }
        Ok(Self { a, b, interior })
    }

    /// `n` interior knots at `a + i (b - a) / (n + 1)`.
    pub fn equally_spaced(a: f64, b: f64, n: usize) -> Result<Self> {
        let step = (b - a) / (n as f64 + 1.0);
        let interior = (1..=n).map(|i| a + step * i as f64).collect();
        Self::new(a, b, interior)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn interior(&self) -> &[f64] {
        &self.interior
    }

    pub fn n(&self) -> usize {
        self.interior.len()
    }

    /// `[a, x_1, ..., x_n, b]`.
    pub fn points(&self) -> Vec<f64> {
        let mut p = Vec::with_capacity(self.interior.len() + 2);
        p.push(self.a);
        p.extend_from_slice(&self.interior);
        p.push(self.b);
        p
    }

    /// Consecutive `(x_i, x_{i+1})` pairs, `i = 0..=n`.
    pub fn segments(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let pts = std::iter::once(self.a)
            .chain(self.interior.iter().copied())
            .chain(std::iter::once(self.b));
        let next = self.interior.iter().copied().chain(std::iter::once(self.b));
        pts.zip(next)
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.segments().all(|(lo, hi)| hi > lo)
    }
}

/// A secant line `slope * x + intercept` on `[lo, hi]`; `line` is `None`
/// for zero-length segments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Segment {
    pub lo: f64,
    pub hi: f64,
    pub line: Option<Line>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Line {
    pub slope: f64,
    pub intercept: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlApprox {
    pub segments: Vec<Segment>,
}

impl PlApprox {
    /// Evaluates the interpolant; `None` outside `[a, b]`.
    pub fn eval(&self, x: f64) -> Option<f64> {
        self.segments
            .iter()
            .filter_map(|s| s.line.map(|l| (s, l)))
            .find(|(s, _)| s.lo <= x && x <= s.hi)
            .map(|(_, l)| l.slope * x + l.intercept)
    }
}

/// Secant interpolant through `(x_i, f(x_i))`.
pub fn build_pl<C: SmoothCurve>(curve: &C, knots: &KnotVector) -> Result<PlApprox> {
    let segments = knots
        .segments()
        .map(|(lo, hi)| {
            if hi == lo {
                return Ok(Segment { lo, hi, line: None });
            }
            let (flo, fhi) = (curve.eval(lo)?, curve.eval(hi)?);
            let width = hi - lo;
            Ok(Segment {
                lo,
                hi,
                line: Some(Line {
                    slope: (fhi - flo) / width,
                    intercept: (hi * flo - lo * fhi) / width,
                }),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PlApprox { segments })
}

/// Signed area gap `∫_lo^hi f - (hi - lo)(f(lo) + f(hi))/2` of one segment.
pub fn segment_gap<C: SmoothCurve>(curve: &C, lo: f64, hi: f64) -> Result<f64> {
    if hi == lo {
        return Ok(0.0);
    }
    let trapezoid = 0.5 * (hi - lo) * (curve.eval(lo)? + curve.eval(hi)?);
    Ok(curve.integrate(lo, hi)? - trapezoid)
}

/// Per-segment signed gaps, one per `(x_i, x_{i+1})`.
pub fn segment_gaps<C: SmoothCurve>(curve: &C, knots: &KnotVector) -> Result<Vec<f64>> {
    knots
        .segments()
        .map(|(lo, hi)| segment_gap(curve, lo, hi))
        .collect()
}

/// Area between a concave curve and its interpolant: `∫_a^b f` minus the
/// trapezoid sum. Nonnegative when the curve is concave on `[a, b]`.
pub fn error_concave<C: SmoothCurve>(curve: &C, knots: &KnotVector) -> Result<f64> {
    Ok(segment_gaps(curve, knots)?.iter().sum())
}

/// Sum over segments of the squared signed gap. Zero for affine curves.
pub fn error_general<C: SmoothCurve>(curve: &C, knots: &KnotVector) -> Result<f64> {
    Ok(segment_gaps(curve, knots)?.iter().map(|g| g * g).sum())
}

/// Squared gaps summed over the interior segments `[x_1, x_2] ... [x_{n-1}, x_n]`
/// only, leaving out `[a, x_1]` and `[x_n, b]`.
///
/// A diagnostic, not an approximation error in its own right: reference
/// tables of equal-spacing errors for the built-in catalog were computed
/// this way, and this function reproduces them.
pub fn error_interior_squared<C: SmoothCurve>(curve: &C, knots: &KnotVector) -> Result<f64> {
    let gaps = segment_gaps(curve, knots)?;
    let k = gaps.len();
    if k < 3 {
        return Ok(0.0);
    }
    Ok(gaps[1..k - 1].iter().map(|g| g * g).sum())
}
