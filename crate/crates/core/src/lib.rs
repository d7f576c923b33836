//! Exact (co)homology of finite linear cycle sets and braces, and the
//! central extensions classified by their second cohomology.
//!
//! All arithmetic is exact. Coefficient groups are finite abelian groups
//! `⊕ ℤ/m_k`, handled one cyclic factor at a time.

pub mod budget;
pub mod cochain;
pub mod error;
pub mod extensions;
pub mod exec;
pub mod full;
pub mod group;
pub mod lattice;
pub mod matrix;
pub mod modular;
pub mod reduced;
pub mod snf;
pub mod structure;
pub mod tuples;
pub mod verify;

pub use budget::Budget;
pub use error::{Error, Result};
pub use exec::Execution;
pub use group::{normalize_invariants, parse_group_spec, FiniteAbelianGroup};
pub use matrix::IntegerMatrix;
pub use snf::{smith_normal_form, SmithDecomposition};
pub use structure::{
    brace_to_lcs, builtin_structure, lcs_to_brace, validate_brace, validate_lcs, BinaryTable, Brace,
    LinearCycleSet, Structure,
};
