//! Both sides of the symmetric-sum identities, built through independent
//! pipelines and compared exactly or within certified error bounds.

mod report;
mod suite;
mod sums;
mod verify;

pub use report::{CoefficientCheck, IdentityReport};
pub use suite::{
    acceptance_cases, example1_table, extended_cases, format_example1_table, indices_up_to, run_cases,
    SuiteCase, SuiteSummary,
};
pub use sums::{
    chi_star, permutations_with_multiplicity, zeta_part, Context, Flavor, PartFlavor, ShRoute, VerifyConfig,
};
pub use verify::{try_verify, verify, Identity, Params};
