//! Adaptive Gauss-Kronrod (7/15) quadrature.
//!
//! Intervals are bisected recursively until the Kronrod/Gauss difference on
//! each panel falls below its share of the requested absolute tolerance.
//! Accepted panels are summed left to right, so the result is a deterministic
//! function of the endpoints.

use crate::error::{KnotError, Result};

/// Default absolute tolerance, scaled by `max(1, |integral|)`.
pub const DEFAULT_TOL: f64 = 1e-12;

const MAX_DEPTH: u32 = 48;

// QUADPACK's 15-point Kronrod / 7-point Gauss abscissae and weights
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct Panel {
    kronrod: f64,
    error: f64,
    abs_sum: f64,
}

fn gk15<F>(f: &mut F, lo: f64, hi: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs_sum = WGK[7] * fc.abs();
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    Ok(Panel {
        kronrod: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
        abs_sum: abs_sum * half.abs(),
    })
}

/// Integrates `f` over `[lo, hi]` to the default tolerance.
pub fn integrate<F>(f: F, lo: f64, hi: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    integrate_with_tol(f, lo, hi, DEFAULT_TOL)
}

/// Integrates `f` over `[lo, hi]`; the absolute error target is
/// `tol * max(1, |estimate|)`. Reversed limits give the negated integral.
pub fn integrate_with_tol<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(KnotError::NonFinite(format!(
            "integration limits [{lo}, {hi}]"
        )));
    }
    if lo == hi {
        return Ok(0.0);
    }
    if hi < lo {
        return integrate_with_tol(f, hi, lo, tol).map(|v| -v);
    }
    let whole = gk15(&mut f, lo, hi)?;
    let target = tol * whole.kronrod.abs().max(1.0);
    let mut sum = 0.0;
    let mut worst = 0.0;
    refine(
        &mut f,
        lo,
        hi,
        whole,
        target,
        hi - lo,
        0,
        &mut sum,
        &mut worst,
    )?;
    Ok(sum)
}

#[allow(clippy::too_many_arguments)]
fn refine<F>(
    f: &mut F,
    lo: f64,
    hi: f64,
    panel: Panel,
    target: f64,
    total_len: f64,
    depth: u32,
    sum: &mut f64,
    worst: &mut f64,
) -> Result<()>
where
    F: FnMut(f64) -> Result<f64>,
{
    let share = target * (hi - lo) / total_len;
    let roundoff = 50.0 * f64::EPSILON * panel.abs_sum;
    if panel.error <= share || panel.error <= roundoff {
        *sum += panel.kronrod;
        return Ok(());
    }
    if depth >= MAX_DEPTH {
        return Err(KnotError::Quadrature {
            lo,
            hi,
            achieved: panel.error.max(*worst),
        });
    }
    let mid = 0.5 * (lo + hi);
    let left = gk15(f, lo, mid)?;
    let right = gk15(f, mid, hi)?;
    *worst = worst.max(panel.error);
    refine(f, lo, mid, left, target, total_len, depth + 1, sum, worst)?;
    refine(f, mid, hi, right, target, total_len, depth + 1, sum, worst)
}
