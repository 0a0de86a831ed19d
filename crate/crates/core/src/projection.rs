//! Euclidean projection onto the monotone nonnegative cone
//! `{y : 0 <= y_1 <= ... <= y_n}`.
//!
//! Pool-adjacent-violators gives the nondecreasing least-squares fit in one
//! stack pass; clamping the pooled values at zero then yields the projection
//! onto the cone.

use crate::error::{KnotError, Result};

/// A maximal run `start..end` of output entries sharing one value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Block {
    pub start: usize,
    pub end: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConeProjection {
    pub output: Vec<f64>,
    pub blocks: Vec<Block>,
}

struct Pool {
    sum: f64,
    count: usize,
    start: usize,
    mean: f64,
}

/// Projects `v` and reports the pooled blocks.
pub fn project_with_blocks(v: &[f64]) -> Result<ConeProjection> {
    if let Some(i) = v.iter().position(|x| !x.is_finite()) {
        return Err(KnotError::NonFinite(format!(
            "projection input component {i} = {}",
            v[i]
        )));
    }
    let mut stack: Vec<Pool> = Vec::with_capacity(v.len());
    for (i, &x) in v.iter().enumerate() {
        let mut cur = Pool {
            sum: x,
            count: 1,
            start: i,
            mean: x,
        };
        while let Some(top) = stack.last() {
            if top.mean >= cur.mean {
                let top = stack.pop().expect("non-empty");
                let (sum, count) = (top.sum + cur.sum, top.count + cur.count);
                // a tie keeps its exact value; re-dividing the sum could round
                let mean = if top.mean == cur.mean {
                    cur.mean
                } else {
                    sum / count as f64
                };
                cur = Pool {
                    sum,
                    count,
                    start: top.start,
                    mean,
                };
            } else {
                break;
            }
        }
        stack.push(cur);
    }

    let mut output = Vec::with_capacity(v.len());
    let mut blocks = Vec::with_capacity(stack.len());
    for pool in &stack {
        let value = pool.mean.max(0.0);
        output.extend(std::iter::repeat_n(value, pool.count));
        match blocks.last_mut() {
            // clamping can make leading blocks equal; report them as one
            Some(Block {
                end, value: prev, ..
            }) if *prev == value => *end = pool.start + pool.count,
            _ => blocks.push(Block {
                start: pool.start,
                end: pool.start + pool.count,
                value,
            }),
        }
    }
    Ok(ConeProjection { output, blocks })
}

/// Closest point of the monotone nonnegative cone to `v`.
pub fn project(v: &[f64]) -> Result<Vec<f64>> {
    project_with_blocks(v).map(|p| p.output)
}

/// True when `y` is exactly in the cone.
pub fn in_cone(y: &[f64]) -> bool {
    y.first().is_none_or(|&y0| y0 >= 0.0) && y.windows(2).all(|w| w[0] <= w[1])
}
