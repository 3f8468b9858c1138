pub mod beta;
mod decimal;
pub mod goedel;
pub mod kernel;
pub mod lab;
pub mod prover;
pub mod syntax;
pub mod tarski;
