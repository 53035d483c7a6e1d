//! Exact computation with chromatic and Kromatic symmetric functions of
//! weighted graphs.
//!
//! The crate computes CSFs in the power-sum, monomial, augmented-monomial,
//! and elementary bases over ℚ; carries both ring structures on the space of
//! symmetric functions (the usual product and the one making the augmented
//! monomials multiplicative) together with their shared Hopf structure;
//! builds and verifies the graded Hopf maps `p_n ↦ aₙ·m̃ₙ` that send CSFs of
//! graphs to CSFs of their complements; solves for such maps on single
//! graphs over exact magnitude/phase scalars; and does the K-analogue
//! (set-coloring) computations with stable-set covers and Lyndon heaps.
//!
//! Everything is exact: no floats anywhere.

pub mod error;
pub mod scalar;
pub mod partition;
pub mod graph;
pub mod series;
pub mod csf;
pub mod morphism;
pub mod kromatic;
pub mod io;

pub use error::{CsfError, FoundationError, GraphError, KromaticError, MorphismError, SymfuncError};
pub use graph::{binary_clique_graph, special_graph, Orientation, SpecialKind, WeightedGraph};
pub use partition::Partition;
pub use scalar::{PhaseScalar, Rational};
pub use series::{Algebra, Basis, Series, TensorSeries};
