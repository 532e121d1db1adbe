//! Localization functors on crossed modules.
//!
//! The closed-form functors evaluate their displayed formulas through the
//! group primitives; nullification by a finite crossed module iterates the
//! cokernel of the joint evaluation of all morphisms until only the trivial
//! one remains, which happens after finitely many rounds because the
//! product of the level orders strictly decreases at every continuing step.

use std::fmt;

use thiserror::Error;

use crate::group::{
    displacement_subgroup, subgroup_generated, ActionByAutomorphisms, GroupHom,
};
use crate::xmod::{
    cokernel_of_images, functor_r, normal_inclusion_xmod, xmod_hom_enumeration, CrossedModule,
    XModError, XModMorphism,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FunctorError {
    #[error(transparent)]
    XMod(#[from] XModError),
    #[error("functor {0} is not a nullification")]
    NotANullification(String),
    #[error("induced map is not well defined at level {level} on {witness}")]
    InducedMapIllDefined { level: u8, witness: usize },
    #[error("coaugmentation is not level-wise surjective at level {level}")]
    CoaugmentationNotSurjective { level: u8 },
}

impl From<crate::group::GroupError> for FunctorError {
    fn from(e: crate::group::GroupError) -> Self {
        FunctorError::XMod(XModError::Group(e))
    }
}

/// The functors in scope. `NullifyBy` carries a validated finite nullifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorTag {
    /// Quotient both levels by the mixed and the plain commutator subgroup.
    Ab,
    /// Quotient by the second term of the lower central series.
    Nil2,
    /// Collapse level 1 and quotient level 2 by the boundary image.
    C,
    /// Replace the object by the identity crossed module on its level 2.
    I,
    /// Nullification with respect to a group concentrated in level 2:
    /// quotient level 1 by the full displacement subgroup, collapse level 2.
    PXZ,
    /// Nullification with respect to a group concentrated in level 1:
    /// corestrict level 1 to the boundary image.
    PZto0,
    /// Nullification by an arbitrary finite crossed module, by iteration.
    NullifyBy(CrossedModule),
}

impl FunctorTag {
    /// Stable name used by the command-line front end.
    pub fn name(&self) -> String {
        match self {
            FunctorTag::Ab => "ab".to_string(),
            FunctorTag::Nil2 => "nil2".to_string(),
            FunctorTag::C => "c".to_string(),
            FunctorTag::I => "i".to_string(),
            FunctorTag::PXZ => "pxz".to_string(),
            FunctorTag::PZto0 => "pz0".to_string(),
            FunctorTag::NullifyBy(a) => match a.name() {
                Some(name) => format!("nullify:{name}"),
                None => format!("nullify:({}, {})", a.g1().order(), a.g2().order()),
            },
        }
    }

    /// Nullification-shaped functors admit acyclicity questions.
    pub fn is_nullification(&self) -> bool {
        matches!(
            self,
            FunctorTag::C | FunctorTag::PXZ | FunctorTag::PZto0 | FunctorTag::NullifyBy(_)
        )
    }

    /// Whether every coaugmentation of this functor is level-wise
    /// surjective. True for all tags except `I`, whose coaugmentation is
    /// the boundary at level 1.
    pub fn is_regular_epi_localization(&self) -> bool {
        !matches!(self, FunctorTag::I)
    }
}

impl fmt::Display for FunctorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// One application of a localization functor: the localized object together
/// with the coaugmentation morphism and the number of nullification rounds
/// (1 for the closed-form tags).
#[derive(Clone, Debug)]
pub struct LocalizationRun {
    pub tag: FunctorTag,
    pub input: CrossedModule,
    pub output: CrossedModule,
    pub coaug: XModMorphism,
    pub steps: usize,
}

/// Applies the functor to a crossed module.
pub fn apply(tag: &FunctorTag, t: &CrossedModule) -> Result<LocalizationRun, FunctorError> {
    let all1: Vec<usize> = t.g1().elements().collect();
    let all2: Vec<usize> = t.g2().elements().collect();
    let conj2 = ActionByAutomorphisms::conjugation(t.g2());
    let (output, coaug, steps) = match tag {
        FunctorTag::Ab => {
            let d1 = displacement_subgroup(t.action(), &all2, &all1)?;
            let d2 = displacement_subgroup(&conj2, &all2, &all2)?;
            let (out, proj) = crate::xmod::quotient_by_subgroups(t, &d1, &d2)?;
            (out, proj, 1)
        }
        FunctorTag::Nil2 => {
            // level 2: [[g2, g2], g2]
            let commutator2 = displacement_subgroup(&conj2, &all2, &all2)?;
            let d2 = displacement_subgroup(&conj2, commutator2.members(), &all2)?;
            // level 1: generated by [[g2, g2], g1] and [g2, [g2, g1]]
            let first = displacement_subgroup(t.action(), commutator2.members(), &all1)?;
            let mixed = displacement_subgroup(t.action(), &all2, &all1)?;
            let second = displacement_subgroup(t.action(), &all2, mixed.members())?;
            let mut gens = first.members().to_vec();
            gens.extend_from_slice(second.members());
            let d1 = subgroup_generated(t.g1(), &gens)?;
            let (out, proj) = crate::xmod::quotient_by_subgroups(t, &d1, &d2)?;
            (out, proj, 1)
        }
        FunctorTag::C => {
            let d1 = t.g1().full_subgroup();
            let d2 = t.boundary().image_subgroup();
            let (out, proj) = crate::xmod::quotient_by_subgroups(t, &d1, &d2)?;
            (out, proj, 1)
        }
        FunctorTag::I => {
            let out = functor_r(t.g2());
            let coaug = XModMorphism::new(
                t.clone(),
                out.clone(),
                t.boundary().clone(),
                GroupHom::identity(t.g2()),
            )?;
            (out, coaug, 1)
        }
        FunctorTag::PXZ => {
            let d1 = displacement_subgroup(t.action(), &all2, &all1)?;
            let d2 = t.g2().full_subgroup();
            let (out, proj) = crate::xmod::quotient_by_subgroups(t, &d1, &d2)?;
            (out, proj, 1)
        }
        FunctorTag::PZto0 => {
            let image = t.boundary().image_subgroup();
            let out = normal_inclusion_xmod(t.g2(), &image)?;
            let corestriction: Vec<usize> = t
                .g1()
                .elements()
                .map(|x| {
                    image
                        .index_of(t.boundary().apply(x))
                        .expect("boundary lands in its image")
                })
                .collect();
            let f1 = GroupHom::new(t.g1(), out.g1(), corestriction)?;
            let coaug =
                XModMorphism::new(t.clone(), out.clone(), f1, GroupHom::identity(t.g2()))?;
            (out, coaug, 1)
        }
        FunctorTag::NullifyBy(a) => nullify(a, t)?,
    };
    Ok(LocalizationRun {
        tag: tag.clone(),
        input: t.clone(),
        output,
        coaug,
        steps,
    })
}

/// Iterated nullification: each round quotients by the cokernel of the
/// joint evaluation of every morphism out of the nullifier. A round that
/// finds only the trivial morphism is final.
fn nullify(
    a: &CrossedModule,
    t: &CrossedModule,
) -> Result<(CrossedModule, XModMorphism, usize), FunctorError> {
    let mut current = t.clone();
    let mut coaug = XModMorphism::identity(t);
    let mut steps = 0usize;
    loop {
        let homs = xmod_hom_enumeration(a, &current);
        let nontrivial = homs.len() > 1;
        if !nontrivial && steps > 0 {
            break;
        }
        let mut s1: Vec<usize> = Vec::new();
        let mut s2: Vec<usize> = Vec::new();
        for h in &homs {
            s1.extend_from_slice(h.f1().image());
            s2.extend_from_slice(h.f2().image());
        }
        let before = current.g1().order() * current.g2().order();
        let (next, proj) = cokernel_of_images(&current, &s1, &s2)?;
        coaug = XModMorphism::compose(&proj, &coaug)?;
        steps += 1;
        current = next;
        if !nontrivial {
            break;
        }
        let after = current.g1().order() * current.g2().order();
        debug_assert!(after < before, "continuing round must shrink the object");
    }
    Ok((current, coaug, steps))
}

/// Whether the coaugmentation on `t` is an isomorphism. For nullifications
/// this is cross-checked against the count of morphisms out of the
/// nullifier.
pub fn is_local(tag: &FunctorTag, t: &CrossedModule) -> Result<bool, FunctorError> {
    let run = apply(tag, t)?;
    let local = run.coaug.is_level_bijective();
    if let FunctorTag::NullifyBy(a) = tag {
        let null = xmod_hom_enumeration(a, t).len() == 1;
        assert_eq!(local, null, "locality and nullity must agree");
    }
    Ok(local)
}

/// Whether the functor sends `t` to the trivial crossed module. Only
/// meaningful for nullification-shaped functors.
pub fn is_acyclic(tag: &FunctorTag, t: &CrossedModule) -> Result<bool, FunctorError> {
    if !tag.is_nullification() {
        return Err(FunctorError::NotANullification(tag.name()));
    }
    Ok(apply(tag, t)?.output.is_trivial())
}

/// The functor applied to a morphism, together with the runs on both
/// endpoints.
#[derive(Clone, Debug)]
pub struct MappedMorphism {
    pub source_run: LocalizationRun,
    pub target_run: LocalizationRun,
    pub map: XModMorphism,
}

/// Applies the functor to a morphism. For the tags with level-wise
/// surjective coaugmentations the induced map is forced by naturality and
/// checked well defined; for `I` it is the level-2 map at both levels.
pub fn map_morphism(tag: &FunctorTag, f: &XModMorphism) -> Result<MappedMorphism, FunctorError> {
    let source_run = apply(tag, f.source())?;
    let target_run = apply(tag, f.target())?;
    let map = match tag {
        FunctorTag::I => {
            let m1 = GroupHom::new(
                source_run.output.g1(),
                target_run.output.g1(),
                f.f2().image().to_vec(),
            )
            .map_err(XModError::from)?;
            let m2 = GroupHom::new(
                source_run.output.g2(),
                target_run.output.g2(),
                f.f2().image().to_vec(),
            )
            .map_err(XModError::from)?;
            XModMorphism::new(source_run.output.clone(), target_run.output.clone(), m1, m2)?
        }
        _ => induced_on_localizations(&source_run, &target_run, f)?,
    };
    Ok(MappedMorphism {
        source_run,
        target_run,
        map,
    })
}

/// The unique map making the naturality square commute, defined through
/// preimages of the (surjective) source coaugmentation.
fn induced_on_localizations(
    source_run: &LocalizationRun,
    target_run: &LocalizationRun,
    f: &XModMorphism,
) -> Result<XModMorphism, FunctorError> {
    let level = |level: u8,
                 ell_s: &GroupHom,
                 ell_t: &GroupHom,
                 f_level: &GroupHom|
     -> Result<Vec<usize>, FunctorError> {
        if !ell_s.is_surjective() {
            return Err(FunctorError::CoaugmentationNotSurjective { level });
        }
        let mut images = vec![usize::MAX; ell_s.target().order()];
        for x in ell_s.source().elements() {
            let out = ell_t.apply(f_level.apply(x));
            let slot = &mut images[ell_s.apply(x)];
            if *slot == usize::MAX {
                *slot = out;
            } else if *slot != out {
                return Err(FunctorError::InducedMapIllDefined { level, witness: x });
            }
        }
        Ok(images)
    };
    let m1 = level(1, source_run.coaug.f1(), target_run.coaug.f1(), f.f1())?;
    let m2 = level(2, source_run.coaug.f2(), target_run.coaug.f2(), f.f2())?;
    let g1 = GroupHom::new(source_run.output.g1(), target_run.output.g1(), m1)
        .map_err(XModError::from)?;
    let g2 = GroupHom::new(source_run.output.g2(), target_run.output.g2(), m2)
        .map_err(XModError::from)?;
    Ok(XModMorphism::new(
        source_run.output.clone(),
        target_run.output.clone(),
        g1,
        g2,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{get_group, get_xmod};
    use crate::group::{is_isomorphic, FiniteGroup};
    use crate::xmod::{functor_x, is_isomorphic_xmod, normal_inclusion_xmod, CrossedModule};

    #[test]
    fn abelianized_alternating_identity_embedding_is_cyclic_of_order_three() {
        let run = apply(&FunctorTag::Ab, &get_xmod("RA4").unwrap()).unwrap();
        assert_eq!(run.output.level_orders(), (3, 3));
        assert!(is_isomorphic_xmod(&run.output, &get_xmod("RZ3").unwrap()).is_some());
        assert!(is_regular(&run));
        assert_eq!(run.steps, 1);
    }

    fn is_regular(run: &LocalizationRun) -> bool {
        run.coaug.is_level_surjective()
    }

    #[test]
    fn level_two_nullification_collapses_the_alternating_identity_embedding() {
        let run = apply(&FunctorTag::PXZ, &get_xmod("RA4").unwrap()).unwrap();
        assert_eq!(run.output.level_orders(), (3, 1));
    }

    #[test]
    fn level_two_nullification_of_the_dihedral_inclusion_is_not_trivial() {
        let run = apply(&FunctorTag::PXZ, &get_xmod("C2inD8").unwrap()).unwrap();
        assert_eq!(run.output.level_orders(), (2, 1));
        assert!(!run.output.is_trivial());
    }

    #[test]
    fn level_one_nullification_fixes_injective_inclusions() {
        let a4 = get_group("A4").unwrap();
        let conj = crate::group::ActionByAutomorphisms::conjugation(&a4);
        let double = a4
            .element_by_perm(&crate::perm::Perm::parse("(1 2)(3 4)", 4).unwrap())
            .unwrap();
        let v4 = crate::group::action_closure(&conj, &[double]).unwrap();
        let t = normal_inclusion_xmod(&a4, &v4).unwrap();
        let run = apply(&FunctorTag::PZto0, &t).unwrap();
        assert_eq!(run.output, t);
        assert!(run.coaug.is_level_bijective());
    }

    #[test]
    fn boundary_cokernel_of_the_alternating_inclusion_has_order_two_on_top() {
        let run = apply(&FunctorTag::C, &get_xmod("A4inS4").unwrap()).unwrap();
        assert_eq!(run.output.level_orders(), (1, 2));
    }

    #[test]
    fn boundary_cokernel_of_an_identity_embedding_is_trivial() {
        let run = apply(&FunctorTag::C, &get_xmod("RS4").unwrap()).unwrap();
        assert!(run.output.is_trivial());
    }

    #[test]
    fn truncation_reflection_of_the_dihedral_inclusion() {
        let run = apply(&FunctorTag::I, &get_xmod("C2inD8").unwrap()).unwrap();
        assert_eq!(run.output, get_xmod("RD8").unwrap());
    }

    #[test]
    fn two_step_nilpotent_quotient_of_the_symmetric_identity_embedding() {
        let rs3 = get_xmod("RS3").unwrap();
        let s3 = rs3.g2().clone();
        // oracles for the two denominators, computed directly
        let all: Vec<usize> = s3.elements().collect();
        let conj = crate::group::ActionByAutomorphisms::conjugation(&s3);
        let commutator = crate::group::displacement_subgroup(&conj, &all, &all).unwrap();
        assert_eq!(commutator.order(), 3);
        let third = crate::group::displacement_subgroup(&conj, commutator.members(), &all).unwrap();
        assert_eq!(third.order(), 3, "the series stabilizes at the 3-cycles");
        let run = apply(&FunctorTag::Nil2, &rs3).unwrap();
        assert_eq!(run.output.level_orders(), (2, 2));
        assert!(is_isomorphic_xmod(&run.output, &get_xmod("RZ2").unwrap()).is_some());
    }

    #[test]
    fn nullification_by_a_coprime_cyclic_group_changes_nothing() {
        let nullifier = get_xmod("XZ3").unwrap();
        let target = get_xmod("XZ2").unwrap();
        let run = apply(&FunctorTag::NullifyBy(nullifier), &target).unwrap();
        assert_eq!(run.output, target);
        assert_eq!(run.steps, 1);
    }

    #[test]
    fn nullification_by_order_two_kills_cyclic_of_order_four_in_two_rounds() {
        let nullifier = get_xmod("XZ2").unwrap();
        let target = functor_x(&get_group("Z4").unwrap());
        let run = apply(&FunctorTag::NullifyBy(nullifier), &target).unwrap();
        assert!(run.output.is_trivial());
        assert_eq!(run.steps, 2);
        assert!(is_regular(&run));
    }

    #[test]
    fn abelian_objects_concentrated_in_level_one_are_local_for_level_two_nullification() {
        let z3 = get_group("Z3").unwrap();
        let trivial = FiniteGroup::trivial();
        let t = CrossedModule::new(
            z3.clone(),
            trivial.clone(),
            crate::group::GroupHom::trivial(&z3, &trivial),
            crate::group::ActionByAutomorphisms::trivial(&trivial, &z3),
            None,
        )
        .unwrap();
        assert!(is_local(&FunctorTag::PXZ, &t).unwrap());
        assert!(!is_local(&FunctorTag::PXZ, &get_xmod("RA4").unwrap()).unwrap());
    }

    #[test]
    fn identity_embeddings_are_local_for_the_truncation_reflection() {
        assert!(is_local(&FunctorTag::I, &get_xmod("RD8").unwrap()).unwrap());
    }

    #[test]
    fn acyclicity_for_the_level_two_nullification() {
        assert!(is_acyclic(&FunctorTag::PXZ, &get_xmod("XS3").unwrap()).unwrap());
        assert!(is_acyclic(&FunctorTag::PXZ, &get_xmod("XZ2").unwrap()).unwrap());
        assert!(!is_acyclic(&FunctorTag::PXZ, &get_xmod("C2inD8").unwrap()).unwrap());
        assert!(is_acyclic(&FunctorTag::C, &get_xmod("RD8").unwrap()).unwrap());
    }

    #[test]
    fn acyclicity_questions_are_rejected_for_non_nullifications() {
        assert!(matches!(
            is_acyclic(&FunctorTag::Ab, &get_xmod("RD8").unwrap()),
            Err(FunctorError::NotANullification(_))
        ));
        assert!(matches!(
            is_acyclic(&FunctorTag::I, &get_xmod("RD8").unwrap()),
            Err(FunctorError::NotANullification(_))
        ));
    }

    #[test]
    fn boundary_cokernel_is_not_injective_on_the_alternating_inclusion_map() {
        // the inclusion morphism from the alternating inclusion into the
        // identity embedding
        let a4_in_s4 = get_xmod("A4inS4").unwrap();
        let rs4 = get_xmod("RS4").unwrap();
        let f1 = a4_in_s4.boundary().clone();
        let f2 = crate::group::GroupHom::identity(rs4.g2());
        let inclusion = crate::xmod::XModMorphism::new(a4_in_s4, rs4, f1, f2).unwrap();
        assert!(inclusion.is_level_injective());
        let mapped = map_morphism(&FunctorTag::C, &inclusion).unwrap();
        assert_eq!(mapped.source_run.output.level_orders(), (1, 2));
        assert_eq!(mapped.target_run.output.level_orders(), (1, 1));
        assert!(!mapped.map.f2().is_injective());
    }

    #[test]
    fn level_one_nullification_preserves_injectivity_of_the_same_map() {
        let a4_in_s4 = get_xmod("A4inS4").unwrap();
        let rs4 = get_xmod("RS4").unwrap();
        let f1 = a4_in_s4.boundary().clone();
        let f2 = crate::group::GroupHom::identity(rs4.g2());
        let inclusion = crate::xmod::XModMorphism::new(a4_in_s4, rs4, f1, f2).unwrap();
        let mapped = map_morphism(&FunctorTag::PZto0, &inclusion).unwrap();
        assert!(mapped.map.is_level_injective());
    }

    #[test]
    fn nullification_run_reports_an_alternating_kernel_on_the_symmetric_embedding() {
        let run = apply(
            &FunctorTag::NullifyBy(get_xmod("XZ2").unwrap()),
            &get_xmod("RS4").unwrap(),
        )
        .unwrap();
        assert_eq!(run.output.level_orders(), (2, 1));
        let (ker, _) = crate::xmod::kernel(&run.coaug).unwrap();
        assert_eq!(ker.level_orders(), (12, 24));
    }
}
