//! Execution strategy for the exhaustive sweeps.
//!
//! Searches over cochain spaces, table enumerations and lemma sweeps are
//! embarrassingly parallel. With the `parallel` feature they run on rayon;
//! without it [`Execution::Parallel`] silently degrades to the sequential
//! path, so callers never need to `cfg` on the feature themselves.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Whether work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// First (lowest index) `i` in `range` for which `f` returns `Some`.
    pub fn find_first<T, F>(self, range: Range<u64>, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().find_map_first(f);
        }
        range.into_iter().find_map(f)
    }

    /// Map every index of `range`, keeping order.
    pub fn map<T, F>(self, range: Range<u64>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().map(f).collect();
        }
        range.into_iter().map(f).collect()
    }

    /// Map a slice, keeping order.
    pub fn map_slice<S, T, F>(self, items: &[S], f: F) -> Vec<T>
    where
        S: Sync,
        T: Send,
        F: Fn(&S) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Keep the `Some` results of `f` over `range`, in index order.
    pub fn filter_map<T, F>(self, range: Range<u64>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().filter_map(f).collect();
        }
        range.into_iter().filter_map(f).collect()
    }

    pub fn count<F>(self, range: Range<u64>, f: F) -> u64
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().filter(|&i| f(i)).count() as u64;
        }
        range.into_iter().filter(|&i| f(i)).count() as u64
    }
}
