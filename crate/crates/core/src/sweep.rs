//! Data-parallel reductions over sample sets.
//!
//! With the `parallel` feature (default) the unsuffixed entry points run on
//! the rayon pool; without it they fall back to the `_seq` versions. Results
//! are identical either way: `max` is order-independent, and `map` preserves
//! input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `max_i f(items[i])`, or `0.0` when `items` is empty. NaN propagates.
pub fn max_over<T, F>(items: &[T], f: F) -> f64
where
    T: Sync,
    F: Fn(&T) -> f64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        max_over_par(items, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        max_over_seq(items, f)
    }
}

pub fn max_over_seq<T, F>(items: &[T], f: F) -> f64
where
    F: Fn(&T) -> f64,
{
    items.iter().map(f).fold(0.0, nan_max)
}

#[cfg(feature = "parallel")]
pub fn max_over_par<T, F>(items: &[T], f: F) -> f64
where
    T: Sync,
    F: Fn(&T) -> f64 + Sync + Send,
{
    items.par_iter().map(f).reduce(|| 0.0, nan_max)
}

/// Order-preserving map.
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

#[inline]
fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}
