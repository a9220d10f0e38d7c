//! Generalized Routh-Hurwitz table for complex coefficients, the classical
//! real-coefficient array, and the degree-4 closed forms.

mod classical;
mod quartic;
pub(crate) mod recurrence;
mod table;

pub use classical::{
    classical_table, classical_table_with, classical_verdict, classical_verdict_with,
    real_coefficients, ClassicalRhTable,
};
pub use quartic::{quartic_closed_forms, quartic_verdict, QuarticForms};
pub use table::{
    build_table, hurwitz_verdict, hurwitz_verdict_with, pivots, Pivot, RhLevel, RhTable,
};

pub(crate) use table::verdict_from_classes;
