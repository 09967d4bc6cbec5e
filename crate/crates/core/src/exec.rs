//! Thin switch between rayon-backed and sequential inner loops.
//!
//! With the `parallel` feature enabled (the default) the data-parallel loops
//! run on the global rayon pool unless [`force_sequential`] is active; without
//! the feature they always run sequentially. Results are identical either way:
//! maps preserve order and searches return the minimum-index hit.

use std::sync::atomic::{AtomicUsize, Ordering};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

static SEQUENTIAL_OVERRIDE: AtomicUsize = AtomicUsize::new(0);

/// Guard that forces the sequential code path while alive. Used by the bench
/// suite to compare both paths from one binary; nests safely.
pub struct SequentialGuard(());

pub fn force_sequential() -> SequentialGuard {
    SEQUENTIAL_OVERRIDE.fetch_add(1, Ordering::SeqCst);
    SequentialGuard(())
}

impl Drop for SequentialGuard {
    fn drop(&mut self) {
        SEQUENTIAL_OVERRIDE.fetch_sub(1, Ordering::SeqCst);
    }
}

pub fn sequential_forced() -> bool {
    SEQUENTIAL_OVERRIDE.load(Ordering::SeqCst) > 0
}

/// Order-preserving indexed map over `0..n`.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if !sequential_forced() {
            // Batch small items so per-item scheduling cost stays negligible.
            let min_len = (n / (4 * rayon::current_num_threads().max(1))).clamp(1, 4096);
            return (0..n).into_par_iter().with_min_len(min_len).map(f).collect();
        }
    }
    (0..n).map(f).collect()
}

/// First (minimum-index) `Some` produced by `f` over `0..n`.
pub fn find_first<T, F>(n: usize, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if !sequential_forced() {
            let min_len = (n / (4 * rayon::current_num_threads().max(1))).clamp(1, 4096);
            return (0..n)
                .into_par_iter()
                .with_min_len(min_len)
                .filter_map(|i| f(i).map(|v| (i, v)))
                .min_by_key(|(i, _)| *i)
                .map(|(_, v)| v);
        }
    }
    (0..n).find_map(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order_under_both_modes() {
        let par = map_indexed(100, |i| i * i);
        let guard = force_sequential();
        let seq = map_indexed(100, |i| i * i);
        drop(guard);
        assert_eq!(par, seq);
    }

    #[test]
    fn find_first_returns_minimum_index_hit() {
        let hit = find_first(1000, |i| if i >= 17 && i % 5 == 2 { Some(i) } else { None });
        assert_eq!(hit, Some(17));
    }
}
