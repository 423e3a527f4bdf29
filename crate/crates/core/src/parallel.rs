//! Thread-count control for the rayon pools.

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "TOPOFORGE_THREADS";

/// Positive thread count from [`THREADS_ENV`], if set and valid.
pub fn threads_from_env() -> Option<usize> {
    let raw = std::env::var(THREADS_ENV).ok()?;
    match raw.trim().parse::<usize>() {
        Ok(n) if n > 0 => Some(n),
        _ => {
            log::warn!("ignoring {THREADS_ENV}={raw:?}: expected a positive integer");
            None
        }
    }
}

/// Runs `f` on a dedicated pool of `threads` workers, or on the global pool
/// when `threads` is `None`.
pub fn with_threads<T, F>(threads: Option<usize>, f: F) -> T
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// Runs `f` with the thread count taken from [`THREADS_ENV`].
pub fn with_env_threads<T, F>(f: F) -> T
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    with_threads(threads_from_env(), f)
}
