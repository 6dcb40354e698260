//! Execution strategy for embarrassingly parallel loops.
//!
//! Per-degree blocks, Koszul vertices and corpus entries are independent, so
//! they go through [`map`]. With the `parallel` feature the work is spread
//! over the rayon pool; without it (or with [`Exec::Sequential`]) it runs on
//! the calling thread. Output order is the input order either way, so results
//! are identical under both strategies.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Exec {
    /// Parallel when the feature is compiled in.
    pub fn auto() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Default for Exec {
    fn default() -> Self {
        Exec::auto()
    }
}

pub fn map<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// Runs `f` on every item and returns the first error in input order.
pub fn try_map<T, R, E, F>(exec: Exec, items: &[T], f: F) -> Result<Vec<R>, E>
where
    T: Sync,
    R: Send,
    E: Send,
    F: Fn(&T) -> Result<R, E> + Sync + Send,
{
    map(exec, items, f).into_iter().collect()
}
