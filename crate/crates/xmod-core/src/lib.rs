//! Computer algebra for finite crossed modules of groups.
//!
//! The crate provides finite-group arithmetic on multiplication tables,
//! crossed modules with their categorical constructions (kernels, cokernels,
//! quotients, pullbacks), a family of localization functors including a
//! terminating nullification engine, and the fiberwise-localization
//! machinery driven by the normality criterion. A catalog of named groups,
//! crossed modules, and exact sequences feeds the property suites.

pub mod catalog;
pub mod fiberwise;
pub mod functors;
pub mod group;
pub mod perm;
pub mod xmod;

pub use group::{
    action_closure, center, conjugation_action, displacement_subgroup, hom_enumeration,
    is_isomorphic, isomorphism_enumeration, quotient_group, subgroup_generated,
    ActionByAutomorphisms, FiniteGroup, GroupError, GroupHom, Subgroup, MAX_GROUP_ORDER,
};
pub use perm::Perm;
pub use fiberwise::{
    acyclicity_probe, fiberwise_localize, make_exact_sequence, normality_condition,
    verify_fiberwise, AcyclicityReport, FiberwiseError, FiberwiseOutcome, FiberwiseSuccess,
    NormalityFailure, NormalityOutcome, VerificationReport,
};
pub use functors::{
    apply, is_acyclic, is_local, map_morphism, FunctorError, FunctorTag, LocalizationRun,
    MappedMorphism,
};
pub use xmod::{
    central_extension_xmod, cokernel, cokernel_of_images, functor_r, functor_tr, functor_x,
    is_isomorphic_xmod, is_normal_subcrossed, is_regular_epi, kernel, normal_inclusion_xmod,
    pullback, quotient_by_subgroups, quotient_xmod, xmod_hom_enumeration, CrossedModule,
    ExactSequence, NormalityCheck, SubXMod, XModError, XModMorphism,
};
