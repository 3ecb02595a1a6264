//! Many-sorted geometric theories and their finite models.
//!
//! Theories are built from sorts (primitive, or finite subsets of a
//! primitive sort), function symbols (total or partial), predicates and
//! sequents in context. Models are found by exhaustive search within
//! per-sort size caps.

pub mod emit;
pub mod extension;
pub mod grd;
pub mod model;
pub mod search;
pub mod site;
pub mod syntax;

pub use emit::{
    bounded_forall_translate, emit_construction, syntacticize_function, syntacticize_set, BoundedForall, Construction,
};
pub use extension::TheoryExtension;
pub use grd::{grd_predicate_points, grd_predicate_theory};
pub use model::{is_model, isomorphic, FinModel, UNDEFINED};
pub use search::{expand, find_models, find_models_with, uniform_caps, SearchOptions, Seed};
pub use site::{action_theory, add_continuity, check_flat_epi, flat_theory, FinCategory, Morphism, Site};
pub use syntax::{Formula, GeomTheory, Sequent, SequentBuilder, SortKind, Term, VarDecl};
