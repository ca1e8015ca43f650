//! Thin switch between rayon and plain iterators.
//!
//! Every helper here is order-preserving or order-independent, so results do
//! not depend on whether the `parallel` feature is enabled.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Short-circuiting conjunction of `f` over `0..n`.
pub fn all_in(n: usize, f: impl Fn(usize) -> bool + Sync + Send) -> bool {
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().all(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).all(f)
    }
}

/// Maps `f` over `0..n`, collecting results in index order.
pub fn map_in<R: Send>(n: usize, f: impl Fn(usize) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Maps `f` over `items`, collecting results in order.
pub fn map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// The first (lowest index) `Some` produced by `f` over `0..n`.
pub fn find_map_first_in<R: Send>(
    n: usize,
    f: impl Fn(usize) -> Option<R> + Sync + Send,
) -> Option<R> {
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().find_map_first(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).find_map(f)
    }
}

/// Whether this build runs the helpers on a thread pool.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
