//! Finite posets, distributive lattices, Boolean algebras and nuclei.

pub mod boolalg;
pub mod catalogue;
pub mod lattice;
pub mod nucleus;
pub mod poset;

pub use boolalg::{fin_powerset, free_boolean_algebra, free_boolean_algebra_bounded, BoolAlg, Generated};
pub use lattice::{downsets, join_irreducibles, DistLattice, ElemId};
pub use nucleus::{closed_nucleus, nuclei, open_nucleus, sublocale_join, Nucleus};
pub use poset::{poset_from_relation, FinPoset};
