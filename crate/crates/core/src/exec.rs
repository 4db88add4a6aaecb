//! Chunked map/reduce over integer row ranges.
//!
//! With the `parallel` feature (default) chunks are processed on a rayon pool;
//! without it, or with [`Execution::Sequential`], the same chunks are folded in
//! order on the calling thread. The reduce step must be associative; callers
//! normalize their merged output so the result does not depend on the split.

use std::ops::RangeInclusive;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    /// Fold every chunk on the calling thread.
    Sequential,
    /// Use the global rayon pool.
    #[default]
    Parallel,
    /// Use a dedicated pool with this many worker threads.
    Workers(usize),
}

impl Execution {
    /// Maps a `--workers` style count: `None` for the global pool, `1` for sequential.
    pub fn from_workers(workers: Option<usize>) -> Self {
        match workers {
            None | Some(0) => Execution::Parallel,
            Some(1) => Execution::Sequential,
            Some(w) => Execution::Workers(w),
        }
    }
}

/// Splits `rows` into consecutive chunks of `chunk_size` rows, maps each chunk
/// and reduces the partial results.
pub fn map_reduce_rows<R, M, F, I>(
    exec: Execution,
    rows: RangeInclusive<u64>,
    chunk_size: u64,
    map: M,
    reduce: F,
    identity: I,
) -> R
where
    R: Send,
    M: Fn(RangeInclusive<u64>) -> R + Sync + Send,
    F: Fn(R, R) -> R + Sync + Send,
    I: Fn() -> R + Sync + Send,
{
    let chunk_size = chunk_size.max(1);
    let (start, end) = (*rows.start(), *rows.end());
    if start > end {
        return identity();
    }
    let n_chunks = (end - start) / chunk_size + 1;
    let chunk = |i: u64| {
        let lo = start + i * chunk_size;
        let hi = lo.saturating_add(chunk_size - 1).min(end);
        lo..=hi
    };

    match exec {
        Execution::Sequential => sequential(n_chunks, chunk, &map, &reduce, identity),
        #[cfg(feature = "parallel")]
        Execution::Parallel => parallel(n_chunks, chunk, &map, &reduce, identity),
        #[cfg(feature = "parallel")]
        Execution::Workers(w) => match rayon::ThreadPoolBuilder::new().num_threads(w).build() {
            Ok(pool) => pool.install(|| parallel(n_chunks, chunk, &map, &reduce, identity)),
            Err(_) => parallel(n_chunks, chunk, &map, &reduce, identity),
        },
        #[cfg(not(feature = "parallel"))]
        Execution::Parallel | Execution::Workers(_) => {
            sequential(n_chunks, chunk, &map, &reduce, identity)
        }
    }
}

fn sequential<R, M, F, I, C>(n_chunks: u64, chunk: C, map: &M, reduce: &F, identity: I) -> R
where
    M: Fn(RangeInclusive<u64>) -> R,
    F: Fn(R, R) -> R,
    I: Fn() -> R,
    C: Fn(u64) -> RangeInclusive<u64>,
{
    (0..n_chunks).fold(identity(), |acc, i| reduce(acc, map(chunk(i))))
}

#[cfg(feature = "parallel")]
fn parallel<R, M, F, I, C>(n_chunks: u64, chunk: C, map: &M, reduce: &F, identity: I) -> R
where
    R: Send,
    M: Fn(RangeInclusive<u64>) -> R + Sync + Send,
    F: Fn(R, R) -> R + Sync + Send,
    I: Fn() -> R + Sync + Send,
    C: Fn(u64) -> RangeInclusive<u64> + Sync + Send,
{
    use rayon::prelude::*;
    (0..n_chunks)
        .into_par_iter()
        .map(|i| map(chunk(i)))
        .reduce(identity, reduce)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum_squares(exec: Execution, chunk: u64) -> u64 {
        map_reduce_rows(
            exec,
            1..=1000,
            chunk,
            |r| r.map(|v| v * v).sum::<u64>(),
            |a, b| a + b,
            || 0,
        )
    }

    #[test]
    fn all_modes_agree() {
        let expected: u64 = (1..=1000u64).map(|v| v * v).sum();
        for chunk in [1, 7, 64, 1000, 5000] {
            assert_eq!(sum_squares(Execution::Sequential, chunk), expected);
            assert_eq!(sum_squares(Execution::Parallel, chunk), expected);
            assert_eq!(sum_squares(Execution::Workers(3), chunk), expected);
        }
    }

    #[test]
    fn empty_range_is_identity() {
        #[allow(clippy::reversed_empty_ranges)]
        let r = map_reduce_rows(Execution::Parallel, 5..=4, 3, |_| 1u32, |a, b| a + b, || 0);
        assert_eq!(r, 0);
    }

    #[test]
    fn worker_mapping() {
        assert_eq!(Execution::from_workers(None), Execution::Parallel);
        assert_eq!(Execution::from_workers(Some(1)), Execution::Sequential);
        assert_eq!(Execution::from_workers(Some(4)), Execution::Workers(4));
    }
}
