//! Command-line front end for the root-separation toolkit: analyze user
//! polynomials, emit extremal family instances, run randomized ensemble
//! sweeps, and print the analytic inequality tables.

pub mod commands;
pub mod ensemble;
pub mod sweep;
