//! Decides whether the Leavitt path algebra of a directed graph is strongly
//! Z-graded, and builds and checks the degree-decomposition witnesses.

pub mod graph;
pub mod koenig;
pub mod path;
pub mod lpa;
pub mod grading;
pub mod corpus;
pub mod cli;
