//! Finite graded bounded acyclic categories as a model of orientable
//! incidence structures: presentations and the builder, axiom validators,
//! derived categories (upper, lower, section), nerves with their oriented
//! realizations, and a catalog of worked examples.

pub mod axioms;
pub mod builder;
pub mod category;
pub mod constructions;
pub mod dot;
pub mod export;
pub mod fixtures;
pub mod functor;
pub mod iso;
pub mod nerve;
pub mod report;
pub mod textfmt;

pub use builder::{build_category, Presentation};
pub use category::{Category, MorId, ObjId, Rank, Sign};
pub use functor::Functor;
pub use report::{ValidationReport, Verdict};
