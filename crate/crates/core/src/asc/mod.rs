//! Eventual behaviour of sign conditions on exponential polynomials along the orbit.

pub mod bound;
pub mod circle;
pub mod dominant;
pub mod normalize;
pub mod real;
pub mod solve;
pub mod system;

pub use real::{real_tail, solve_real_conj, Eventual, Tail};
pub use solve::{solve_system, ClassOutcome, SolveConfig};
pub use system::{
    build_point_system, compose, residue_space, sequence_system, substitute_affine, AscPolynomial,
};

#[cfg(test)]
mod tests;
