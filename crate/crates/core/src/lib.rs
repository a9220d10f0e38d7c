//! Stability tests for monic polynomials with complex coefficients.
//!
//! The main entry point is [`hurwitz_verdict`], a division-free generalized
//! Routh-Hurwitz table that works in exact rational or floating-point
//! arithmetic. The classical Routh array, closed-form degree-4 conditions and
//! an Aberth-Ehrlich root finder are available as cross-checks through the
//! [`criterion::Registry`]. The [`shaft`] module applies the test to a
//! PI-controlled rotating shaft.

pub mod criterion;
pub mod error;
pub mod oracle;
pub mod poly;
pub mod report;
pub mod routh;
pub mod scalar;
pub mod shaft;
pub mod verdict;

pub use criterion::{CriterionConfig, Registry, StabilityTest};
pub use error::{Error, Result};
pub use oracle::{all_roots, all_roots_with, oracle_verdict, spectral_abscissa, OracleConfig, RootSet};
pub use poly::{
    parse_coefficient_list, parse_complex, parse_complex_in, parse_real, ComplexCoefficient,
    ComplexPolynomial, HalfPlaneBound,
};
pub use routh::{
    build_table, classical_table, classical_verdict, hurwitz_verdict, hurwitz_verdict_with, pivots,
    quartic_closed_forms, quartic_verdict, RhTable,
};
pub use scalar::{robust_sign, Mode, Scalar, SignClass, Tolerance};
pub use verdict::{Stability, StabilityVerdict};
