//! Affine Hecke algebras of type `A~` and `C~` (with unequal parameters) in
//! the Bernstein presentation, rank-one module classification and
//! Gelfand–Graev module determination.

pub mod coeffring;
pub mod error;
pub mod exec;
pub mod ggdet;
pub mod heckealg;
pub mod laurent;
pub mod modules;
pub mod parse;
pub mod starsolver;
pub mod weyl;

pub use coeffring::{param_constants, Coefficient, ParamConstants};
pub use error::{Error, Result};
pub use exec::Exec;
pub use ggdet::{determine, GGCase, GGInput, GGReport};
pub use heckealg::{
    gen, gen_inverse, t0_element, t0_element_with, verify_relations, CaseTag, HeckeElement, HeckeParams, RelationReport,
    T0Exponent,
};
pub use laurent::{Character, LaurentPoly, WeylKind};
pub use modules::{classify, verify_t0_lemma, Classification, InducedModule, OneDimRep, RankOneModule, Subalgebra};
pub use parse::{parse_coefficient, parse_poly};
pub use starsolver::{check_star, enumerate_solutions, family_poly, identify_family, solver_report, Sign, SolutionFamily, SolverReport};
pub use weyl::SignedPermutation;
