//! Estimate reports with parameter echoes and per-stage diagnostics.

/// Outcome of one estimator run.
#[derive(Debug, Clone)]
pub struct EstimateReport {
    pub estimate: f64,
    pub query_count: u64,
    pub seed: u64,
    /// Parameters the run actually used, echoed as `key=value` pairs in a
    /// fixed order.
    pub params: Vec<(String, String)>,
    pub diagnostics: Diagnostics,
    /// Exact value attached by a harness when it computed one.
    pub ground_truth: Option<f64>,
}

#[derive(Debug, Clone)]
pub enum Diagnostics {
    None,
    Additive(AdditiveDiagnostics),
    Multiplicative(MultiplicativeDiagnostics),
}

#[derive(Debug, Clone)]
pub struct AdditiveDiagnostics {
    pub t: usize,
    pub s: usize,
    /// Whether the run fell back to querying everything and solving exactly.
    pub exact_fallback: bool,
}

#[derive(Debug, Clone)]
pub struct MultiplicativeDiagnostics {
    pub lambda: f64,
    pub x: usize,
    pub y: usize,
    pub beta: f64,
    pub tau: usize,
    pub layers: usize,
    pub dense_boxes: usize,
    pub cells: usize,
    pub antichain_rounds: usize,
    pub chains: usize,
    /// (horizontal estimate, vertical estimate) per chain.
    pub per_chain: Vec<(f64, f64)>,
    /// Blocks whose sample was too thin to estimate; they contributed 0.
    pub insufficient_blocks: usize,
}

impl EstimateReport {
    pub fn param(&self, key: &str) -> Option<&str> {
        self.params
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}
