//! Parameter-sweep execution: independent points mapped over a grid.
//!
//! With the `parallel` feature (default) points are distributed across a
//! rayon pool; results are assembled in grid order either way, so the
//! serial and parallel paths produce identical output.

use crate::error::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Grid spacing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// Build a sweep grid of `points >= 2` values from `start` to `stop`
/// inclusive.
pub fn grid(start: f64, stop: f64, points: usize, spacing: Spacing) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::Domain(format!("a sweep needs at least 2 points, got {points}")));
    }
    if !(start < stop) {
        return Err(Error::Domain(format!("sweep start {start:e} must precede stop {stop:e}")));
    }
    match spacing {
        Spacing::Linear => {
            let step = (stop - start) / (points - 1) as f64;
            Ok((0..points).map(|i| start + step * i as f64).collect())
        }
        Spacing::Log => {
            if !(start > 0.0) {
                return Err(Error::Domain("log spacing requires start > 0".into()));
            }
            let lstart = start.ln();
            let step = (stop.ln() - lstart) / (points - 1) as f64;
            Ok((0..points).map(|i| (lstart + step * i as f64).exp()).collect())
        }
    }
}

/// Map `f` over the grid sequentially.
pub fn run_serial<T, F>(grid: &[f64], f: F) -> Vec<T>
where
    F: Fn(f64) -> T,
{
    grid.iter().map(|&x| f(x)).collect()
}

/// Map `f` over the grid on the rayon pool, preserving grid order.
#[cfg(feature = "parallel")]
pub fn run_parallel<T, F>(grid: &[f64], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(f64) -> T + Sync,
{
    grid.par_iter().map(|&x| f(x)).collect()
}

/// Map `f` over the grid with the default execution strategy.
#[cfg(feature = "parallel")]
pub fn run<T, F>(grid: &[f64], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(f64) -> T + Sync,
{
    run_parallel(grid, f)
}

/// Map `f` over the grid with the default execution strategy.
#[cfg(not(feature = "parallel"))]
pub fn run<T, F>(grid: &[f64], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(f64) -> T + Sync,
{
    run_serial(grid, f)
}
