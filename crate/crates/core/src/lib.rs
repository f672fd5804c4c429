//! Exact arithmetic and Gröbner bases for left ideals and submodules over
//! bijective skew PBW extensions `A = σ(R)⟨x_1, ..., x_n⟩`, with `R = ℚ` or
//! `R = ℚ[t_1, ..., t_m]`.

pub mod catalog;
pub mod coeffring;
pub mod error;
pub mod exponent;
pub mod groebner;
pub mod matrixkit;
pub mod modules;
pub mod order;
pub mod poly;
pub mod presentation;

pub use coeffring::{CoeffElem, CoeffRing, SyzygyGenerators};
pub use error::{Error, Result};
pub use exponent::ExponentVector;
pub use groebner::{
    bf_set, buchberger, check_criterion, divide, divide_with, interreduce, is_member, recombine,
    reduce_once, BFData, BuchbergerOptions, CoefficientSolver, CriterionReport, DivisionResult,
    DivisionStep, GbElement, GbOutput, Lead, Membership, MembershipSolver, ScriptedSolver,
    StepTerm,
};
pub use matrixkit::{
    complete_unimodular_unit_entry, extract_free_basis, idempotent_diagonalize_division,
    is_idempotent_transpose, is_unimodular_column, left_independent, left_inverse, Diagonalization,
    MatrixOverA, Unimodularity,
};
pub use modules::{mod_bf_set, mod_buchberger, mod_divide, MTerm, ModuleSpace, ModuleVector};
pub use order::{ModuleOrder, ModuleScheme, MonomialOrder, OrderKind};
pub use poly::{Algebra, LeadingData, NCPolynomial, Term};
pub use presentation::{
    validate, AxiomFailure, Presentation, PresentationBuilder, Relation, SkewDerivation, TwistMap,
    ValidationReport,
};
