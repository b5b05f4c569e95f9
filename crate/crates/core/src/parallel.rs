//! Data-parallel helpers with a sequential fallback.
//!
//! Every helper preserves input order in its output, and callers reduce the
//! collected terms with [`crate::scalar::sum_ordered`], so results are
//! bit-identical whatever the thread count. With the `parallel` feature
//! disabled, or with sequential mode switched on at runtime, everything runs
//! on the calling thread.

use std::ops::Range;
use std::sync::atomic::{AtomicBool, Ordering};

use crate::error::{Error, Result};

/// Environment variable that caps internal parallelism; `0` selects the
/// sequential reference mode.
pub const THREADS_ENV: &str = "PERMDERIV_THREADS";

static SEQUENTIAL: AtomicBool = AtomicBool::new(false);

pub fn set_sequential(on: bool) {
    SEQUENTIAL.store(on, Ordering::SeqCst);
}

pub fn is_sequential() -> bool {
    !cfg!(feature = "parallel") || SEQUENTIAL.load(Ordering::SeqCst)
}

/// Runs `f` in sequential mode, restoring the previous mode afterwards.
pub fn with_sequential<R>(f: impl FnOnce() -> R) -> R {
    let prev = SEQUENTIAL.swap(true, Ordering::SeqCst);
    let out = f();
    SEQUENTIAL.store(prev, Ordering::SeqCst);
    out
}

/// Applies `PERMDERIV_THREADS`: `0` switches to sequential mode, any other
/// value sizes the global pool. Unset leaves the defaults alone.
pub fn configure_from_env() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| Error::Threads(format!("{THREADS_ENV}={raw:?} is not a thread count")))?;
    configure_threads(threads)
}

pub fn configure_threads(threads: usize) -> Result<()> {
    if threads == 0 {
        set_sequential(true);
        return Ok(());
    }
    set_sequential(false);
    #[cfg(feature = "parallel")]
    {
        // A pool that already exists keeps its size.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    Ok(())
}

/// Order-preserving map over a slice.
pub fn map_slice<I, R, F>(items: &[I], f: F) -> Vec<R>
where
    I: Sync,
    R: Send,
    F: Fn(&I) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if !is_sequential() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Order-preserving map over an index range.
pub fn map_range<R, F>(range: Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if !is_sequential() {
        use rayon::prelude::*;
        return range.into_par_iter().map(f).collect();
    }
    range.map(f).collect()
}

/// Like [`map_range`], stopping at the first error in index order.
pub fn try_map_range<R, F>(range: Range<usize>, f: F) -> Result<Vec<R>>
where
    R: Send,
    F: Fn(usize) -> Result<R> + Sync + Send,
{
    map_range(range, f).into_iter().collect()
}
