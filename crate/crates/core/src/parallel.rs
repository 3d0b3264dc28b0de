use rayon::prelude::*;

use crate::error::{Error, Result};

/// Splits `[lo, hi]` into contiguous chunks, runs `work` on each using up to
/// `workers` threads, and concatenates the results in range order.
pub(crate) fn map_chunks<T, F>(lo: u64, hi: u64, workers: usize, work: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64, u64) -> Result<Vec<T>> + Sync,
{
    if workers <= 1 || hi - lo < 64 {
        return work(lo, hi);
    }
    let len = hi - lo + 1;
    let pieces = (workers as u64 * 4).min(len);
    let step = len.div_ceil(pieces);
    let bounds: Vec<(u64, u64)> = (0..pieces)
        .map(|i| (lo + i * step, (lo + (i + 1) * step - 1).min(hi)))
        .filter(|(a, b)| a <= b)
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Domain(format!("cannot start {workers} workers: {e}")))?;
    let parts: Vec<Vec<T>> = pool.install(|| {
        bounds
            .par_iter()
            .map(|&(a, b)| work(a, b))
            .collect::<Result<_>>()
    })?;
    Ok(parts.into_iter().flatten().collect())
}
