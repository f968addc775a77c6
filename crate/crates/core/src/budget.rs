//! Resource budgets for the enumeration-heavy operations.
//!
//! Every exhaustive kernel fails loudly with [`crate::Error::BudgetExceeded`]
//! instead of silently truncating its search space.

/// Knobs bounding the exhaustive kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Maximum number of weight positions in the bitmask DP behind `W ⊙ S`,
    /// measured after zero-padding both sequences to equal length.
    pub mask_bits: u32,
    /// Cap on `Π (v_g + 1)` for sub-multiset enumeration over a sequence
    /// (the zero-sum predicates).
    pub enum_cap: u64,
    /// Cap on `r = min(|W|, |S|)` for the naive permutation oracle.
    pub perm_cap: u64,
    /// Cap on the group order for operations that enumerate all of `G`
    /// (stabilizers, verification campaigns).
    pub order_cap: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            mask_bits: 24,
            enum_cap: 1 << 20,
            perm_cap: 8,
            order_cap: 64,
        }
    }
}

impl Budgets {
    /// Default budgets.
    pub fn new() -> Self {
        Self::default()
    }
}
