//! Twisted homology with rank-one local coefficients, Hermitian signatures
//! and colored link signatures, with span and slice inequality checkers.

pub mod bounds;
pub mod chain_complex;
pub mod cli;
pub mod hermitian;
pub mod invariants;
pub mod laurent;
pub mod linalg;
pub mod link;
pub mod local_system;
pub mod par;
pub mod scalars;
