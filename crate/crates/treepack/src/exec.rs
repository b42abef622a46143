//! Execution-strategy helpers shared by the search and batch operations.
//!
//! Everything in this crate is a pure function over immutable inputs, so the
//! data-parallel entry points (witness search, exhaustive packing search,
//! containment probes, batch verification) can fan out over candidates. The
//! `parallel` feature (on by default) backs [`ExecMode::Parallel`] with rayon;
//! without it both modes run sequentially, with identical results either way:
//! ordered searches always return the first hit in candidate order.

/// Chooses between a sequential scan and a rayon-backed scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    /// Rayon work-stealing. Falls back to sequential when the `parallel`
    /// feature is disabled.
    Parallel,
}

impl Default for ExecMode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

/// Applies `f` to every item, preserving input order in the output.
pub fn map_collect<T, U, F>(mode: ExecMode, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        #[cfg(not(feature = "parallel"))]
        ExecMode::Parallel => items.iter().map(f).collect(),
    }
}

/// Returns the first (in item order) non-`None` result of `f`.
///
/// The parallel arm uses `find_map_first`, which matches the sequential
/// semantics exactly: later candidates may be evaluated speculatively but the
/// reported hit is the earliest one.
pub fn find_map_first<T, U, F>(mode: ExecMode, items: &[T], f: F) -> Option<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Option<U> + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.iter().find_map(f),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            items.par_iter().find_map_first(f)
        }
        #[cfg(not(feature = "parallel"))]
        ExecMode::Parallel => items.iter().find_map(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_map_first_matches_sequential_order() {
        let items: Vec<u32> = (0..10_000).collect();
        let f = |x: &u32| if *x % 997 == 3 { Some(*x) } else { None };
        let seq = find_map_first(ExecMode::Sequential, &items, f);
        let par = find_map_first(ExecMode::Parallel, &items, f);
        assert_eq!(seq, par);
        assert_eq!(seq, Some(3));
    }

    #[test]
    fn map_collect_preserves_order() {
        let items: Vec<u32> = (0..1000).collect();
        let out = map_collect(ExecMode::Parallel, &items, |x| x * 2);
        assert_eq!(out, (0..1000).map(|x| x * 2).collect::<Vec<_>>());
    }
}
