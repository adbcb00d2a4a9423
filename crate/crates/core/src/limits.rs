/// Resource caps for the enumeration-heavy routines. Everything in this crate
/// is meant for desk-scale graphs; the caps turn runaway inputs into clean
/// errors instead of hangs.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Maximum number of 1-factors any single enumeration may produce.
    pub max_factors: u64,
    /// Maximum number of orientations a brute-force sweep may visit.
    pub max_orientations: u64,
    /// Maximum number of circuits any single enumeration may produce.
    pub max_circuits: u64,
    /// Maximum number of search states explored while extracting a
    /// reducibility witness.
    pub max_witness_states: u64,
    /// Maximum number of nodes visited while packing subdivision paths.
    pub max_search_nodes: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_factors: 1_000_000,
            max_orientations: 1 << 20,
            max_circuits: 1_000_000,
            max_witness_states: 10_000,
            max_search_nodes: 50_000_000,
        }
    }
}

impl Limits {
    /// A tighter budget, handy in tests that should fail fast.
    pub fn small() -> Self {
        Limits {
            max_factors: 10_000,
            max_orientations: 1 << 16,
            max_circuits: 10_000,
            max_witness_states: 1_000,
            max_search_nodes: 1_000_000,
        }
    }
}
