use rayon::prelude::*;

use crate::error::{ExperimentError, Result};

/// Runs `f(0..count)` on a pool of `threads` workers (0 = all cores). The
/// results come back in trial order, so any reduction over them is
/// independent of scheduling.
pub fn run_trials<T, F>(threads: usize, count: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| ExperimentError::Config(format!("thread pool: {e}")))?;
    pool.install(|| (0..count).into_par_iter().map(&f).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_does_not_depend_on_threads() {
        let a = run_trials(1, 100, |i| Ok(i * i)).unwrap();
        let b = run_trials(4, 100, |i| Ok(i * i)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a[7], 49);
    }
}
