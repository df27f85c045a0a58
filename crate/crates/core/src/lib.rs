//! Exact domination, total domination, and paired domination numbers;
//! Cartesian n-products; and mechanical reconstruction of the
//! double-counting arguments behind product bounds on concrete instances.

pub mod graph;
pub mod solvers;
pub mod machinery;
pub mod harness;
pub mod cli;
