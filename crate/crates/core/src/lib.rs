//! Symbolic verification and construction toolkit for Hom-algebras:
//! finite-dimensional algebras with twisted identities, Rota-Baxter
//! operators, and dendriform/tridendriform structures over an exact field
//! of multivariate rational functions, plus truncated free objects over
//! decorated planar binary trees.

pub mod algebra;
pub mod checkers;
pub mod coeff;
pub mod constructors;
pub mod fileio;
pub mod free;
pub mod report;
pub mod trees;
