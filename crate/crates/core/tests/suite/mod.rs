//! Property, oracle and command-line tests that share the acceptance
//! binary.

mod cli;
mod oracles;
mod properties;
