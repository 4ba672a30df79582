//! The explicit symmetrization: the groupoid `C_f` of super-surjective pairs,
//! the operators `L`, `R` and `as` realized as body morphisms, and exact
//! checks of the total differential `d + L + R`.

mod cf;
mod coinvariants;
mod error;
mod operators;
mod verify;

pub use cf::{enumerate_cf, CfObject};
pub use coinvariants::normalize;
pub use error::SymmError;
pub use operators::{
    as_operator, as_operator_with, e_as, e_left, e_right, l_operator, l_summand, perturbation, r_operator, r_summand,
    saturation, AsConvention, AsSummand, OperatorOptions, SectionWeighting, Signs, Summand,
};
pub use verify::*;
