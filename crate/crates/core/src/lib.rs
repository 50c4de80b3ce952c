//! Exact total Roman {2}-domination on small and structured graphs.
//!
//! A labeling `f: V -> {0, 1, 2}` is a total Roman {2}-dominating function
//! (TR2DF) when every 0-vertex sees a 2 or two 1s, and no positive vertex is
//! isolated among the positive vertices. This crate computes the minimum
//! weight `γ_tR2` exactly (closed forms, a linear tree DP, branch and bound,
//! brute force), the companion parameters `γ`, `γ_t`, `γ_R2`, `γ_×2`, and
//! checks a catalogue of bounds and characterizations over graph corpora.

pub mod graph;
pub mod labeling;
pub mod reduction;
pub mod bounds;
pub mod closed_forms;
pub mod harness;
pub mod solvers;
pub mod tree_dp;
