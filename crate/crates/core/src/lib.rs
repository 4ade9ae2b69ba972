//! Exact graded commutative algebra over `QQ` and `F_p`: Gröbner bases of
//! submodules, minimal free resolutions and Betti tables, Hilbert functions
//! of graded local cohomology through local duality, fiber-fullness over a
//! parameter line, and square-free Gröbner degenerations.

pub mod cli;
pub mod error;
pub mod ext;
pub mod fiberfull;
pub mod field;
pub mod groebner;
pub mod hochster;
pub mod linalg;
pub mod module;
pub mod parse;
pub mod poly;
pub mod resolve;
pub mod ring;

pub use error::{AlgebraError, Result};
pub use ext::{local_cohomology_hilbert, GradedModulePresentation, HilbertTable, LocalCohomology};
pub use fiberfull::{
    cv_verify, fiber_full_check, fiber_full_locus, fiber_hilbert_compare, parameter_torsion, DegenerationReport,
    FiberFullReport, FiberPoints, TorsionCertificate,
};
pub use field::{CoefficientField, Field, PrimeField, Rationals};
pub use groebner::{buchberger, homogenize_omega, weight_vector_for, GroebnerBasis, SubmodulePresentation};
pub use hochster::hochster_hilbert;
pub use module::{GradedFreeModule, PolyVector};
pub use poly::Polynomial;
pub use resolve::{betti_table, free_resolution, BettiTable, Resolution};
pub use ring::{GradedRing, Monomial, TermOrder};
