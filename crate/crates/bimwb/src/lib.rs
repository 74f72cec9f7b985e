//! Depth-bounded workbench for effective constructive mathematics.
//!
//! The library implements, at desk scale, the computational content of a
//! family of equivalence proofs between compactness-style principles over
//! binary trees: numeric sequence codings, the securedness calculus for
//! bars in Cantor space, finite perfect-information games solved by
//! backward induction, propositional realizability, exact rational-interval
//! real codes, spread and fan laws, and a registry of explicit
//! stream-to-stream reductions, each with a depth-bounded verifiable
//! contract.
//!
//! Everything is checkable by bounded brute force: semi-decidable questions
//! always take an explicit budget and report "unknown at budget" distinctly
//! from "false".

pub mod coding;
pub mod streams;
pub mod secured;
pub mod games;
pub mod logic;
pub mod reals;
pub mod spreads;
pub mod reductions;
pub mod report;
