use serde::{Deserialize, Serialize};

/// Tunables shared by the library and the CLI.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    /// Estimated memory ceiling for Kronecker products and orbit sums.
    pub memory_budget_bytes: u64,
    /// Largest group that may be enumerated element by element.
    pub enumeration_bound: u64,
    /// Attempts at finding an invertible intertwiner candidate.
    pub retry_cap: usize,
    pub seed: u64,
    /// External SDPA-format solver, e.g. `csdp`.
    pub solver_command: Option<String>,
    /// Largest `n` for which Specht modules of `S_n` are built.
    pub symmetric_bound: usize,
    /// The chain sum is preferred once `|G|` exceeds this multiple of the
    /// total transversal size. Our own threshold.
    pub chain_ratio: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            memory_budget_bytes: 512 * 1024 * 1024,
            enumeration_bound: 1_000_000,
            retry_cap: 5,
            seed: 0,
            solver_command: None,
            symmetric_bound: 8,
            chain_ratio: 3,
        }
    }
}

/// Rough in-memory size of one exact matrix entry, used for budgeting.
pub const ENTRY_BYTES_ESTIMATE: u64 = 64;
