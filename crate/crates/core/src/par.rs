//! Data-parallel helpers with a sequential fallback.
//!
//! The `parallel` feature (on by default) backs these with rayon; without it
//! they compile to plain loops. Both paths are output-identical: work items
//! are keyed by index and results are collected (or selected) in index order,
//! so thread count never changes what a run produces.

/// Active execution mode, for bench labels and diagnostics.
#[cfg(feature = "parallel")]
pub const MODE: &str = "parallel";
#[cfg(not(feature = "parallel"))]
pub const MODE: &str = "sequential";

/// Applies `f` to `0..count`, returning results in index order.
#[cfg(feature = "parallel")]
pub fn map_indexed<T: Send, F: Fn(usize) -> T + Sync + Send>(count: usize, f: F) -> Vec<T> {
    use rayon::prelude::*;
    (0..count).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T: Send, F: Fn(usize) -> T + Sync + Send>(count: usize, f: F) -> Vec<T> {
    (0..count).map(f).collect()
}

/// First `Some` produced over `0..count`, by smallest index; later indices may
/// be evaluated speculatively under rayon but never win over earlier ones.
#[cfg(feature = "parallel")]
pub fn find_map_first<T: Send, F: Fn(usize) -> Option<T> + Sync + Send>(
    count: usize,
    f: F,
) -> Option<T> {
    use rayon::prelude::*;
    (0..count).into_par_iter().find_map_first(f)
}

#[cfg(not(feature = "parallel"))]
pub fn find_map_first<T: Send, F: Fn(usize) -> Option<T> + Sync + Send>(
    count: usize,
    f: F,
) -> Option<T> {
    (0..count).find_map(f)
}
