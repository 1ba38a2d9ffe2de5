//! Exact computational tools for finite permutation groups, centered on
//! locating large nilpotent subgroups of class at most two and certifying
//! an explicit lower bound on their size.

mod arith;
mod caps;
mod chain;
mod construct;
mod error;
mod group;
mod perm;
mod rng;
mod report;
mod structure;
mod table;
mod theorem;

pub use arith::{
    factorial, is_prime, is_prime_power_of, log2_real, p_adic_split, p_part, prime_divisors,
    BigCount,
};
pub use caps::Caps;
pub use construct::{
    builtin_corpus, disjoint_three_cycles, parse_family, FamilySpec, CORPUS_VERSION,
};
pub use error::{Error, Result};
pub use group::{coset_action, format_group_spec, parse_group_spec, GeneratedGroup};
pub use perm::{parse_generator_list, parse_permutation, Permutation};
pub use report::{format_real, out_of_range_notice, BoundReport, DiagnosticRecord};
pub use rng::{SeedState, DEFAULT_SEED};
pub use table::{TableGroup, MAX_TABLE_ORDER};
pub use structure::{
    center, centralizer_of_set, conjugacy_class_reps, derived_series, derived_subgroup,
    element_p_part, exact_class_reps, fitting_subgroup, has_class_at_most_two, is_abelian,
    is_nilpotent, is_solvable, lower_central_series, maximal_abelian_subgroup, nilpotency_class,
    normal_closure, recognize_alternating, socle_minimal_normals, solvable_radical,
    sylow_subgroup, Confidence, SylowSubgroup,
};
pub use theorem::{
    aut_order_alt_product, bound_threshold, bound_threshold_log2, certify_class2,
    class2_abelian_section, main_pipeline, solvable_pipeline, thompson_minimizer,
    verify_class2_certificate, verify_section_certificate, AbelianSectionCertificate,
    AutProductOrder, Class2Certificate, Diagnostic, MinimizerMode, PipelineOutcome, PipelinePath,
    SolvableOutcome, VerificationOutcome, LOG_TOLERANCE,
};
