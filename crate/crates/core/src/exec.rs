//! Execution policy for the data-parallel inner loops.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] fans work
//! out over the rayon pool. Without it every policy runs sequentially.
//! Results are collected in input order either way, so output never depends
//! on the policy.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Whether work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// How many independent work items are worth batching together.
    pub fn width(self) -> usize {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return rayon::current_num_threads().max(1);
        }
        1
    }

    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    pub fn map_range<R, F>(self, range: std::ops::Range<usize>, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }
}
