//! Semialgebraic sets: polynomials, formulas, exact evaluation and quantifier elimination.

pub mod eval;
pub mod formula;
pub mod mpoly;
pub mod qe;

pub use eval::{eval_membership, sign_at_point};
pub use formula::{to_dnf, Formula, Rel, SemialgebraicSet, Sign, SignCondition};
pub use mpoly::MPoly;
pub use qe::{decide_sentence, qe_exists, sample_points, QeLimits, QeUnknown};
