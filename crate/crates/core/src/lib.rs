//! Kernel for the λZ calculus: proof terms for intuitionistic set theory with
//! Replacement, checked against formulas, normalized lazily, and mined for
//! computational witnesses.

pub mod syntax;
pub mod theory;
pub mod checker;
pub mod reducer;
pub mod fixtures;
pub mod extraction;
pub mod meta;
