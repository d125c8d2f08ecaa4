//! Execution-mode switch for the data-parallel inner loops.
//!
//! Every parallel loop in the crate maps an index range to independent
//! results and combines them in index order, so the two modes are
//! bit-identical and differ only in wall-clock time. The `parallel`
//! feature (on by default) backs [`ExecMode::Parallel`] with rayon;
//! without it only [`ExecMode::Sequential`] exists.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for ExecMode {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            ExecMode::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            ExecMode::Sequential
        }
    }
}

/// Map `f` over `0..n`, collecting results in index order.
pub(crate) fn map_indexed<R: Send>(
    mode: ExecMode,
    n: usize,
    f: impl Fn(usize) -> R + Sync + Send,
) -> Vec<R> {
    match mode {
        ExecMode::Sequential => (0..n).map(f).collect(),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => (0..n).into_par_iter().map(f).collect(),
    }
}
