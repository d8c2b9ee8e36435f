//! Sequential/parallel execution toggle shared by the batch scans.
//!
//! Every scan in this crate walks an integer range, maps each index to zero
//! or more records, and concatenates the results in index order. These
//! helpers centralize that pattern so callers are oblivious to whether the
//! work ran on one thread or many: output order is identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a batch operation should execute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    Parallel,
}

impl ExecMode {
    /// The mode that will actually run. `Parallel` degrades to `Sequential`
    /// when the `parallel` feature is compiled out.
    pub fn effective(self) -> ExecMode {
        #[cfg(feature = "parallel")]
        {
            self
        }
        #[cfg(not(feature = "parallel"))]
        {
            ExecMode::Sequential
        }
    }
}

impl Default for ExecMode {
    fn default() -> Self {
        ExecMode::Parallel
    }
}

/// Maps `f` over `lo..hi` and collects the `Some` results in index order.
pub fn filter_map_range<T, F>(mode: ExecMode, lo: i64, hi: i64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(i64) -> Option<T> + Sync + Send,
{
    match mode.effective() {
        ExecMode::Sequential => (lo..hi).filter_map(f).collect(),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => (lo..hi).into_par_iter().filter_map(f).collect(),
        #[cfg(not(feature = "parallel"))]
        ExecMode::Parallel => unreachable!("effective() folds Parallel away"),
    }
}

/// Maps `f` over `lo..hi` and concatenates the produced blocks in index
/// order. The per-index blocks make counterexample reports deterministic
/// regardless of thread scheduling.
pub fn flat_map_range<T, F>(mode: ExecMode, lo: i64, hi: i64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(i64) -> Vec<T> + Sync + Send,
{
    match mode.effective() {
        ExecMode::Sequential => (lo..hi).flat_map(f).collect(),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => (lo..hi).into_par_iter().flat_map_iter(f).collect(),
        #[cfg(not(feature = "parallel"))]
        ExecMode::Parallel => unreachable!("effective() folds Parallel away"),
    }
}
