//! Worker-pool selection. Results never depend on the worker count: every
//! parallel loop in the crate splits its work into a fixed list of parts and
//! merges them in part order.

/// Runs `f` on a dedicated pool of `threads` workers, or on the global pool
/// when `threads` is `None`.
pub fn with_threads<R, F>(threads: Option<usize>, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    match threads {
        None => f(),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .expect("failed to build worker pool")
            .install(f),
    }
}
