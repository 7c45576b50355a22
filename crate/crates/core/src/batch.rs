//! Order-preserving batch map, parallel when the `parallel` feature is on.
//!
//! All reductions in this crate happen *after* collection, in index order, so
//! results do not depend on thread count or scheduling. The sequential
//! variants stay available unconditionally; the benches compare the two paths
//! on the same workloads.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Cap the global worker pool. Call once, before any parallel work; later
/// calls are ignored. Without the `parallel` feature this is a no-op.
/// Results never depend on the thread count either way.
pub fn configure_threads(threads: Option<usize>) {
    #[cfg(feature = "parallel")]
    if let Some(n) = threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}

/// Map a slice, collecting results in input order.
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
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

/// Map an index range `0..n`, collecting results in index order.
pub fn map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Sequential counterpart of [`map_collect`], kept for benchmarking and for
/// callers that must stay on one thread.
pub fn map_collect_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Sequential counterpart of [`map_range`].
pub fn map_range_seq<U, F>(n: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree_in_order() {
        let items: Vec<u64> = (0..500).collect();
        let a = map_collect(&items, |&x| x * x);
        let b = map_collect_seq(&items, |&x| x * x);
        assert_eq!(a, b);
        let c = map_range(500, |i| i as u64 * 3);
        let d = map_range_seq(500, |i| i as u64 * 3);
        assert_eq!(c, d);
    }
}
