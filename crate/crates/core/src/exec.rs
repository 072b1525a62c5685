//! Enumeration kernels with a data-parallel and a sequential driver.
//!
//! Work is expressed as a pure function of a tuple index in `0..total`.
//! The parallel driver splits the index range into fixed chunks, runs
//! chunks on the rayon pool and reassembles results in index order, so
//! both drivers return bit-identical output.

use crate::budget::Strategy;
use crate::error::CoarseError;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

const CHUNK: u64 = 1 << 13;

#[cfg(feature = "parallel")]
fn parallel_enabled(strategy: Strategy) -> bool {
    matches!(strategy, Strategy::Parallel)
}

#[cfg(not(feature = "parallel"))]
fn parallel_enabled(_strategy: Strategy) -> bool {
    false
}

/// Collects every `Some` produced over `0..total`, in index order.
pub(crate) fn try_collect_indexed<T, F>(
    total: u64,
    strategy: Strategy,
    f: F,
) -> Result<Vec<T>, CoarseError>
where
    T: Send,
    F: Fn(u64) -> Result<Option<T>, CoarseError> + Sync,
{
    let run_chunk = |start: u64| -> Result<Vec<T>, CoarseError> {
        let end = (start + CHUNK).min(total);
        let mut acc = Vec::new();
        for i in start..end {
            if let Some(item) = f(i)? {
                acc.push(item);
            }
        }
        Ok(acc)
    };

    if parallel_enabled(strategy) && total > CHUNK {
        #[cfg(feature = "parallel")]
        {
            let chunks: Vec<u64> = (0..total).step_by(CHUNK as usize).collect();
            let nested: Vec<Vec<T>> = chunks
                .into_par_iter()
                .map(run_chunk)
                .collect::<Result<_, _>>()?;
            return Ok(nested.into_iter().flatten().collect());
        }
    }
    let mut acc = Vec::new();
    for start in (0..total).step_by(CHUNK as usize) {
        acc.extend(run_chunk(start)?);
    }
    Ok(acc)
}

/// Returns the item with the smallest index for which `f` yields `Some`.
pub(crate) fn try_find_first<T, F>(
    total: u64,
    strategy: Strategy,
    f: F,
) -> Result<Option<T>, CoarseError>
where
    T: Send,
    F: Fn(u64) -> Result<Option<T>, CoarseError> + Sync,
{
    let run_chunk = |start: u64| -> Result<Option<T>, CoarseError> {
        let end = (start + CHUNK).min(total);
        for i in start..end {
            if let Some(item) = f(i)? {
                return Ok(Some(item));
            }
        }
        Ok(None)
    };

    if parallel_enabled(strategy) && total > CHUNK {
        #[cfg(feature = "parallel")]
        {
            let chunks: Vec<u64> = (0..total).step_by(CHUNK as usize).collect();
            return chunks
                .into_par_iter()
                .find_map_first(|start| run_chunk(start).transpose())
                .transpose();
        }
    }
    for start in (0..total).step_by(CHUNK as usize) {
        if let Some(item) = run_chunk(start)? {
            return Ok(Some(item));
        }
    }
    Ok(None)
}
