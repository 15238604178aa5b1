//! Exact space functions at desk scale: `ψ_L`, the optimal variable-size
//! algorithm, the ψ Mealy machine, `F_L(n)` and the sparse and constant
//! fixed-size algorithms.

pub mod fixed;
pub mod optimal;
pub mod psi;

use serde::{Deserialize, Serialize};

pub use fixed::{
    constant_fixed_algorithm, exact_f, exact_f_with, minimal_window_states, sparse_fixed_algorithm,
    window_dfa, ConstantFixed, SparseFixed,
};
pub use optimal::{optimal_variable_algorithm, OptimalVariable};
pub use psi::{
    psi, psi_image_count, psi_image_count_closure, psi_image_count_enumerate, psi_image_dfa,
    psi_language_dfa, psi_mealy, PsiAutomaton, PsiRanker,
};

use crate::automata::{floor_log2, minimize, Dfa};
use crate::error::{Error, Result};

/// `V_L(n)`: zero for trivial languages, otherwise `⌊log₂|ψ_L(Σ^{≤n})|⌋`.
pub fn exact_v(l: &Dfa, n: usize) -> Result<usize> {
    let m = minimize(l);
    if m.num_states() == 1 {
        return Ok(0);
    }
    Ok(floor_log2(psi_image_count(&m, n)?))
}

/// One row of a space table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceRow {
    pub n: usize,
    /// `None` when the window automaton exceeds its budget.
    pub f_bits: Option<usize>,
    pub v_bits: Option<usize>,
    pub psi_count: Option<usize>,
}

/// `F_L(n)`, `V_L(n)` and `|ψ_L(Σ^{≤n})|` for `n = 1..=max_n`; columns whose
/// budget is exceeded are left empty.
pub fn space_table(l: &Dfa, max_n: usize) -> Result<Vec<SpaceRow>> {
    let m = minimize(l);
    let trivial = m.num_states() == 1;
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let f_bits = match exact_f(&m, n) {
            Ok(f) => Some(f),
            Err(Error::Budget { .. }) => None,
            Err(e) => return Err(e),
        };
        let psi_count = match psi_image_count(&m, n) {
            Ok(c) => Some(c),
            Err(Error::Budget { .. }) => None,
            Err(e) => return Err(e),
        };
        let v_bits = if trivial {
            Some(0)
        } else {
            psi_count.map(floor_log2)
        };
        rows.push(SpaceRow {
            n,
            f_bits,
            v_bits,
            psi_count,
        });
    }
    Ok(rows)
}
