//! Towers of surjections, ladder hom-complexes and the two bodies built from
//! them.
//!
//! A [`Tower`] over an ambient map `F: S → T` is a factorisation
//! `S ↪ U₀ ↠ U₁ ↠ … ↠ T`, stored as a flag of partitions of the top set `U₀`.
//! Morphisms are ladders ([`Ladder`]): a refinement of the source flag
//! together with an injection of top sets, each step either a collapse
//! (`L`, degree one) or a commutative square (`A`, degree zero). In the
//! presymm body every square must be suitable; in the symm body squares are
//! arbitrary.

mod error;
mod hom;
mod square;
mod symm;
mod tower;
mod verify;

pub use error::BodyError;
pub use hom::{
    compose_hom, compose_in_order, compose_ladders, differential_hom, differential_ladder,
    hom_basis, hom_basis_presymm, hom_complex, identity, ladder_steps, make_ladder, Ladder,
    MorphismElement, Step, Variant,
};
pub use square::{
    check_factorizations, factor_suitable_supersur, is_suitable, is_supersurjective, Factorization, FactorizationReport, Square,
    UniquenessCertificate,
};
pub use symm::{
    check_multiplicativity, compare_colimit, decomposable_fibers, decomposition_census,
    decomposition_counts, degree_zero_symm, disjoint_union, hom_basis_symm, lift_classes,
    supersur_decompositions, ColimitComparison, Decomposition, MultiplicativityReport,
};
pub use tower::{enumerate_ske, refinements, Tower};
pub use verify::{
    ambient_maps, associativity_defect, check_composition, check_d_squared, leibniz_defect,
    towers_by_ambient, CheckReport, Witness,
};
