//! Algebraic action of the `su(2,2)` generators on sparse combinations of
//! basis kets `|l, m, q⟩`.
//!
//! ```text
//! A± |l,m,q⟩ = sqrt((l∓m)(l±m+1))  |l, m±1, q⟩
//! B± |l,m,q⟩ = sqrt((l∓q)(l±q+1))  |l, m, q±1⟩
//! C+ |l,m,q⟩ = sqrt((l+m+1)(l+q+1)) |l+½, m+½, q+½⟩
//! C- |l,m,q⟩ = sqrt((l+m)(l+q))     |l-½, m-½, q-½⟩
//! ```
//!
//! and likewise for `D` (`q` shifted opposite to `m`), `E` (`m` shifted
//! opposite to `l`) and `F` (both shifted opposite to `l`).

mod casimir;
mod generator;
mod ladder;
mod state;
mod table;

pub use casimir::{
    adjointness_check, casimir_su11, casimir_su2, casimir_su22, factorization_check, su11_casimir_eigenvalue,
    su2_casimir_eigenvalue, FactorizationResiduals, SU22_CASIMIR,
};
pub use generator::{Family, Generator, Step};
pub use ladder::{
    anticommutator, apply, apply_word, commutator, ladder_coefficient, matrix_element, radicand_factors, LadderAction,
};
pub use state::{StateVector, PRUNE_THRESHOLD};
pub use table::{
    claimed_table, empirical_structure_constants, fit_commutator, verify_structure_table, Claim, Combination, Fit,
    PairReport, PairStatus, TableReport,
};
