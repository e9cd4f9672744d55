//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) the [`Exec::Parallel`] strategy
//! runs on rayon's global pool. Without it, every strategy runs sequentially.
//! All reductions used in this crate are integer additions, so results are
//! identical across strategies and thread counts.

use std::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether this strategy actually fans out on the current build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Fold every index of `range` into a per-worker accumulator and combine.
pub fn fold_range<T, ID, F, R>(exec: Exec, range: Range<u32>, identity: ID, fold: F, reduce: R) -> T
where
    T: Send,
    ID: Fn() -> T + Sync + Send,
    F: Fn(T, u32) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range
            .into_par_iter()
            .fold(&identity, &fold)
            .reduce(&identity, &reduce);
    }
    let _ = (&exec, &reduce);
    range.fold(identity(), fold)
}

/// Map over a slice, keeping input order in the output.
pub fn map_ordered<I, O, F>(exec: Exec, items: &[I], f: F) -> Vec<O>
where
    I: Sync,
    O: Send,
    F: Fn(&I) -> O + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(&f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Size rayon's global pool. A no-op without the `parallel` feature or when
/// the pool has already been initialised.
pub fn configure_threads(threads: Option<usize>) {
    #[cfg(feature = "parallel")]
    if let Some(n) = threads.filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}

/// Element-wise sum of two equal-length histograms.
pub(crate) fn merge_counts(mut left: Vec<u64>, right: Vec<u64>) -> Vec<u64> {
    for (l, r) in left.iter_mut().zip(right) {
        *l += r;
    }
    left
}
