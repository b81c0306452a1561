//! Data-parallel helpers.
//!
//! With the `parallel` feature (on by default) these fan work out over the
//! rayon pool; without it they run as plain iterators. Outputs are always
//! collected in input order, so results never depend on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, preserving order.
#[cfg(feature = "parallel")]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Maps `f` over `0..n`, preserving order.
#[cfg(feature = "parallel")]
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    F: Fn(usize) -> R,
{
    (0..n).map(f).collect()
}

/// Runs `f` on a dedicated pool of `threads` workers (`0` = rayon default).
///
/// In sequential builds this simply calls `f`. Benchmarks use
/// `with_threads(1, ..)` to measure the single-core baseline in the same binary.
#[cfg(feature = "parallel")]
pub fn with_threads<R, F>(threads: usize, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("failed to build rayon thread pool");
    pool.install(f)
}

#[cfg(not(feature = "parallel"))]
pub fn with_threads<R, F>(_threads: usize, f: F) -> R
where
    F: FnOnce() -> R,
{
    f()
}

/// Whether this build fans work out over threads.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
