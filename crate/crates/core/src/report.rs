//! Outcome of an exhaustive pairwise verification run.

/// Deterministic pass/fail summary; failures are recorded in pair order
/// with exact values rendered as strings.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub pass: bool,
    /// Pairs `(f, g)` actually checked.
    pub pairs_checked: usize,
    /// Basis elements whose image was tested for centrality (Duflo runs;
    /// zero for star runs).
    pub centrality_checked: usize,
    /// Invariant-space dimension per degree, ascending.
    pub basis_dims: Vec<(u32, usize)>,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn first_failure(&self) -> Option<&str> {
        self.failures.first().map(String::as_str)
    }
}
