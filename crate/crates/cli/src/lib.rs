//! Concrete syntax, proof scripts and batch commands for the lambdaz kernel.

pub mod commands;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod report;
pub mod script;

pub use lexer::{ParseError, Pos};
pub use parser::{parse_formula, parse_param, parse_proof, parse_term, parse_theory, Def};
pub use script::{load_script, parse_script, ProofScript};
