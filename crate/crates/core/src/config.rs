/// Size limits for the exhaustive algorithms.
///
/// Defaults cover every group in the bundled catalog (largest order 504).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest group order `close_generators` will materialize.
    pub elements: usize,
    /// Largest group order for which the full subgroup lattice is computed.
    pub lattice: usize,
    /// Largest group order for which the automorphism group is enumerated.
    pub automorphisms: usize,
    /// Maximum number of Nielsen tuples held by one braid-orbit computation.
    pub tuple_budget: usize,
    /// Maximum number of backtracking nodes in one generating-system search.
    pub node_budget: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            elements: 2048,
            lattice: 512,
            automorphisms: 1024,
            tuple_budget: 10_000_000,
            node_budget: 100_000_000,
        }
    }
}
