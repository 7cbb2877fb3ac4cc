//! Exact algebraic number kernel.

pub mod algebraic;
pub mod dyadic;
pub mod isolate;
pub mod poly;
pub mod upoly;
