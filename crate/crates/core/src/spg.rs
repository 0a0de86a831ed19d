//! Spectral projected gradient over the monotone nonnegative cone.
//!
//! Each iteration takes a projected step along the negative gradient scaled
//! by a safeguarded Barzilai-Borwein length, then backtracks until a
//! nonmonotone Armijo condition (against the max of the last `h + 1`
//! objective values) holds. The best point seen is always what gets reported.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curve::SmoothCurve;
use crate::error::{KnotError, Result};
use crate::objective::{big_phi, from_y, grad_big_phi, to_y_clamped, ObjectiveKind, YVector};
use crate::pl::{error_concave, error_general, KnotVector};
use crate::projection::project;

/// Step-length update applied after each accepted step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BbRule {
    /// `s·s / s·z`, reset to `alpha_max` when `s·z <= 0`.
    Bb1,
    /// `z·z / s·s`, as literally printed in the original algorithm listing.
    PaperLiteral,
}

/// How the line search shrinks a rejected step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Backtrack {
    /// Draw the next step uniformly from `(0, alpha)`.
    SeededRandom,
    /// Halve the step.
    Halving,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpgConfig {
    pub alpha_min: f64,
    pub alpha_max: f64,
    /// Nonmonotone memory `h`; the Armijo bound uses the last `h + 1` values.
    pub history: usize,
    /// Sufficient-decrease constant `ν ∈ (0, 1)`.
    pub sufficient_decrease: f64,
    /// Stop when the projected direction has norm `<= stationarity_tol`.
    pub stationarity_tol: f64,
    /// Relative change between successive accepted objective values below
    /// which an iteration counts as stalled.
    pub improvement_tol: f64,
    /// Consecutive stalled iterations before stopping.
    pub improvement_window: usize,
    pub max_iter: usize,
    pub seed: u64,
    pub bb_rule: BbRule,
    pub backtrack: Backtrack,
    pub initial_step: f64,
}

impl Default for SpgConfig {
    fn default() -> Self {
        Self {
            alpha_min: 1e-10,
            alpha_max: 1e10,
            history: 10,
            sufficient_decrease: 1e-4,
            stationarity_tol: 1e-8,
            improvement_tol: 1e-12,
            improvement_window: 5,
            max_iter: 1000,
            seed: 42,
            bb_rule: BbRule::Bb1,
            backtrack: Backtrack::SeededRandom,
            initial_step: 1.0,
        }
    }
}

impl SpgConfig {
    // negated comparisons so that NaN fields are rejected
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(KnotError::InvalidConfig(m.to_string()));
        if !(self.alpha_min > 0.0 && self.alpha_min < self.alpha_max && self.alpha_max.is_finite())
        {
            return bad("need 0 < alpha_min < alpha_max < inf");
        }
        if !(self.sufficient_decrease > 0.0 && self.sufficient_decrease < 1.0) {
            return bad("sufficient_decrease must lie in (0, 1)");
        }
        if !(self.stationarity_tol > 0.0) || !(self.improvement_tol > 0.0) {
            return bad("tolerances must be positive");
        }
        if self.max_iter == 0 || self.improvement_window == 0 {
            return bad("max_iter and improvement_window must be positive");
        }
        if !(self.initial_step > 0.0 && self.initial_step.is_finite()) {
            return bad("initial_step must be positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Termination {
    MaxIter,
    NoImprovement,
    Stationary,
}

impl Termination {
    pub fn label(self) -> &'static str {
        match self {
            Termination::MaxIter => "max_iter",
            Termination::NoImprovement => "no_improvement",
            Termination::Stationary => "stationary",
        }
    }
}

/// One accepted line-search step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepRecord {
    pub alpha: f64,
    pub value: f64,
    /// Nonmonotone reference `f_b`.
    pub bound: f64,
    /// `∇Φ(y_k)·d_k`.
    pub directional: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub kind: ObjectiveKind,
    pub final_knots: KnotVector,
    /// Error of `final_knots` in the measure matching `kind`.
    pub final_error: f64,
    pub initial_error: f64,
    pub iterations: usize,
    pub termination: Termination,
    /// Objective after each accepted step, starting with the initial point.
    pub objective_trace: Vec<f64>,
    /// Norm of the projected direction at the start of each iteration.
    pub d_norm_trace: Vec<f64>,
    pub steps: Vec<StepRecord>,
}

/// Shrinks a rejected step length.
pub fn backtrack_step<R: Rng + ?Sized>(alpha: f64, mode: Backtrack, rng: &mut R) -> f64 {
    match mode {
        Backtrack::Halving => 0.5 * alpha,
        Backtrack::SeededRandom => alpha * rng.gen::<f64>(),
    }
}

/// Steps smaller than this end the line search.
pub const MIN_STEP: f64 = 1e-16;

/// The error measure reported for `kind`.
pub fn measure<C: SmoothCurve>(curve: &C, knots: &KnotVector, kind: ObjectiveKind) -> Result<f64> {
    match kind {
        ObjectiveKind::ConcaveArea => error_concave(curve, knots),
        ObjectiveKind::GeneralSquared => error_general(curve, knots),
    }
}

fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn check_finite(what: &str, iter: usize, v: &[f64]) -> Result<()> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(KnotError::Solver(format!(
            "non-finite {what} at iteration {iter}: {v:?}"
        )))
    }
}

/// Places `n` knots on `[a, b]`, starting from equal spacing.
pub fn solve<C: SmoothCurve>(
    curve: &C,
    kind: ObjectiveKind,
    a: f64,
    b: f64,
    n: usize,
    config: &SpgConfig,
) -> Result<SolveReport> {
    solve_from(curve, kind, &KnotVector::equally_spaced(a, b, n)?, config)
}

/// Runs the solver from `init`.
pub fn solve_from<C: SmoothCurve>(
    curve: &C,
    kind: ObjectiveKind,
    init: &KnotVector,
    config: &SpgConfig,
) -> Result<SolveReport> {
    config.validate()?;
    if init.n() == 0 {
        return Err(KnotError::InvalidKnots(
            "solver needs at least one interior knot".into(),
        ));
    }
    let (a, b) = (init.a(), init.b());
    let wrap = |v: Vec<f64>| YVector::new(v, a, b);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let y0 = to_y_clamped(init)?;
    let start_knots = from_y(&y0)?;
    let mut y = y0.into_values();
    let mut f = big_phi(curve, &wrap(y.clone())?, kind)?;
    let mut g = grad_big_phi(curve, &wrap(y.clone())?, kind)?;
    if !f.is_finite() {
        return Err(KnotError::Solver(format!(
            "non-finite objective {f} at the initial point"
        )));
    }
    check_finite("gradient", 0, &g)?;

    let mut history = VecDeque::with_capacity(config.history + 1);
    history.push_back(f);
    let mut alpha_bb = config.initial_step;
    let (mut best_f, mut best_y) = (f, y.clone());
    let mut stalled = 0;
    let mut iterations = 0;
    let mut objective_trace = vec![f];
    let mut d_norm_trace = Vec::new();
    let mut steps = Vec::new();

    let termination = 'outer: loop {
        if iterations >= config.max_iter {
            break Termination::MaxIter;
        }
        let step = alpha_bb.clamp(config.alpha_min, config.alpha_max);
        let trial: Vec<f64> = y.iter().zip(&g).map(|(yi, gi)| yi - step * gi).collect();
        check_finite("trial point", iterations, &trial)?;
        let d: Vec<f64> = project(&trial)?
            .iter()
            .zip(&y)
            .map(|(p, yi)| p - yi)
            .collect();
        let d_norm = dot(&d, &d).sqrt();
        d_norm_trace.push(d_norm);
        if !d_norm.is_finite() {
            return Err(KnotError::Solver(format!(
                "non-finite direction at iteration {iterations}"
            )));
        }
        if d_norm <= config.stationarity_tol {
            break Termination::Stationary;
        }

        let bound = history.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let directional = dot(&g, &d);
        let mut alpha = 1.0;
        let (y_new, f_new) = loop {
            // re-projecting only repairs rounding; y + alpha d is already in the cone
            let cand = project(
                &y.iter()
                    .zip(&d)
                    .map(|(yi, di)| yi + alpha * di)
                    .collect::<Vec<_>>(),
            )?;
            let f_cand = big_phi(curve, &wrap(cand.clone())?, kind)?;
            if f_cand <= bound + config.sufficient_decrease * alpha * directional {
                break (cand, f_cand);
            }
            alpha = backtrack_step(alpha, config.backtrack, &mut rng);
            if alpha < MIN_STEP {
                break 'outer Termination::NoImprovement;
            }
        };
        let g_new = grad_big_phi(curve, &wrap(y_new.clone())?, kind)?;
        check_finite("gradient", iterations + 1, &g_new)?;

        let s: Vec<f64> = y_new.iter().zip(&y).map(|(p, q)| p - q).collect();
        let z: Vec<f64> = g_new.iter().zip(&g).map(|(p, q)| p - q).collect();
        let (ss, sz) = (dot(&s, &s), dot(&s, &z));
        alpha_bb = match config.bb_rule {
            BbRule::Bb1 if sz > 0.0 => ss / sz,
            BbRule::PaperLiteral if ss > 0.0 => dot(&z, &z) / ss,
            _ => config.alpha_max,
        };

        steps.push(StepRecord {
            alpha,
            value: f_new,
            bound,
            directional,
        });
        let prev_f = f;
        y = y_new;
        f = f_new;
        g = g_new;
        iterations += 1;
        objective_trace.push(f);
        history.push_back(f);
        if history.len() > config.history + 1 {
            history.pop_front();
        }

        let change = (f - prev_f).abs() / prev_f.abs().max(f64::MIN_POSITIVE);
        stalled = if change < config.improvement_tol {
            stalled + 1
        } else {
            0
        };
        if f < best_f {
            best_f = f;
            best_y.clone_from(&y);
        }
        if stalled >= config.improvement_window {
            break Termination::NoImprovement;
        }
    };

    let final_knots = from_y(&wrap(best_y)?)?;
    Ok(SolveReport {
        kind,
        final_error: measure(curve, &final_knots, kind)?,
        initial_error: measure(curve, &start_knots, kind)?,
        final_knots,
        iterations,
        termination,
        objective_trace,
        d_norm_trace,
        steps,
    })
}
