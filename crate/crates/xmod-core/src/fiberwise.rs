//! Fiberwise localization of short exact sequences of crossed modules.
//!
//! For a regular-epi localization, a sequence `1 -> N -> T -> Q -> 1`
//! admits a fiberwise localization exactly when the image under `kappa` of
//! the kernel of the coaugmentation on `N` is a normal subcrossed module of
//! `T`; the first two normality conditions always hold for a kernel
//! transported along a normal monomorphism, so only the displacement
//! condition can fail. On success the middle object is the quotient of `T`
//! by that image.

use thiserror::Error;

use crate::functors::{apply, map_morphism, FunctorError, FunctorTag, LocalizationRun};
use crate::group::{GroupError, Subgroup};
use crate::xmod::{
    is_normal_subcrossed, kernel, quotient_xmod, CrossedModule, ExactSequence, NormalityCheck,
    SubXMod, XModError, XModMorphism,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiberwiseError {
    #[error(transparent)]
    Functor(#[from] FunctorError),
    #[error("{0}")]
    XMod(XModError),
    #[error("coaugmentation on the kernel fiber is not a regular epimorphism at level {level}")]
    CoaugmentationNotRegularEpi { level: u8 },
    #[error("kernel transport violates normality condition ({condition}): {check}")]
    ConjugationRestrictionViolated {
        condition: u8,
        check: NormalityCheck,
    },
}

impl From<XModError> for FiberwiseError {
    fn from(e: XModError) -> Self {
        FiberwiseError::XMod(e)
    }
}

impl From<GroupError> for FiberwiseError {
    fn from(e: GroupError) -> Self {
        FiberwiseError::XMod(XModError::Group(e))
    }
}

/// Builds and validates a short exact sequence from its two morphisms.
pub fn make_exact_sequence(
    kappa: XModMorphism,
    alpha: XModMorphism,
) -> Result<ExactSequence, XModError> {
    ExactSequence::new(kappa, alpha)
}

/// Outcome of the normality test for a functor on a sequence.
#[derive(Clone, Debug)]
pub enum NormalityOutcome {
    Holds {
        /// Image of the coaugmentation kernel inside `T`.
        transported: SubXMod,
        run: LocalizationRun,
    },
    Fails(NormalityFailure),
}

impl NormalityOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, NormalityOutcome::Holds { .. })
    }
}

/// A witness that the displacement condition fails: the element
/// `act(n2, t1) * t1^-1` of `T1` produced by the lexicographically smallest
/// violating pair, which lies outside the transported level-1 kernel.
#[derive(Clone, Debug)]
pub struct NormalityFailure {
    pub witness: usize,
    pub factor_n2: usize,
    pub factor_t1: usize,
    /// The displacement subgroup `[kappa2(ker l2), T1]`.
    pub displaced: Subgroup,
    /// The transported level-1 kernel `kappa1(ker l1)`.
    pub kernel_level1: Subgroup,
    pub run: LocalizationRun,
}

/// Transports the kernel of the coaugmentation on `N` along `kappa` and
/// evaluates the displacement inclusion
/// `[kappa2(ker l2), T1] <= kappa1(ker l1)`, cross-checked against the full
/// three-condition normality test.
pub fn normality_condition(
    tag: &FunctorTag,
    seq: &ExactSequence,
) -> Result<NormalityOutcome, FiberwiseError> {
    let run = apply(tag, seq.n())?;
    let (ker, _) = kernel(&run.coaug)?;
    let t = seq.t();
    let s1 = Subgroup::new(
        t.g1(),
        ker.s1().members().iter().map(|&x| seq.kappa().f1().apply(x)),
    )?;
    let s2 = Subgroup::new(
        t.g2(),
        ker.s2().members().iter().map(|&x| seq.kappa().f2().apply(x)),
    )?;
    let transported = SubXMod::new(t, s1, s2)?;
    let check = is_normal_subcrossed(&transported);
    match check {
        NormalityCheck::Normal => Ok(NormalityOutcome::Holds { transported, run }),
        NormalityCheck::DisplacementEscapes { n2, t1, witness } => {
            let all1: Vec<usize> = t.g1().elements().collect();
            let displaced = crate::group::displacement_subgroup(
                t.action(),
                transported.s2().members(),
                &all1,
            )?;
            Ok(NormalityOutcome::Fails(NormalityFailure {
                witness,
                factor_n2: n2,
                factor_t1: t1,
                displaced,
                kernel_level1: transported.s1().clone(),
                run,
            }))
        }
        // For a kernel transported along a kernel inclusion the first two
        // conditions hold; reaching this is an internal error.
        NormalityCheck::NotNormalLevel2 { .. } => {
            Err(FiberwiseError::ConjugationRestrictionViolated { condition: 1, check })
        }
        NormalityCheck::ActionEscapes { .. } => {
            Err(FiberwiseError::ConjugationRestrictionViolated { condition: 2, check })
        }
    }
}

/// Result of attempting a fiberwise localization.
#[derive(Clone, Debug)]
pub enum FiberwiseOutcome {
    Success(Box<FiberwiseSuccess>),
    Failure(NormalityFailure),
}

impl FiberwiseOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, FiberwiseOutcome::Success(_))
    }
}

/// The constructed bottom row `1 -> LN -> E -> Q -> 1` with the comparison
/// morphism `g` from the middle of the original sequence.
#[derive(Clone, Debug)]
pub struct FiberwiseSuccess {
    pub e: CrossedModule,
    /// Quotient projection `T -> E`; inverted by the functor.
    pub g: XModMorphism,
    /// Kernel inclusion `LN -> E` of the bottom row.
    pub j: XModMorphism,
    /// Induced projection `E -> Q`.
    pub p: XModMorphism,
    /// The localization run on `N`.
    pub run: LocalizationRun,
    /// The transported kernel `kappa(ker l)` that was quotiented out.
    pub quotiented: SubXMod,
}

/// Decides the normality criterion and constructs the fiberwise
/// localization when it holds. `E` is the quotient of `T` by the
/// transported kernel; `j` factors through the canonical isomorphism
/// between `LN` and the quotient of `N` by the kernel, which exists
/// because the coaugmentation is a regular epimorphism (checked, not
/// assumed).
pub fn fiberwise_localize(
    tag: &FunctorTag,
    seq: &ExactSequence,
) -> Result<FiberwiseOutcome, FiberwiseError> {
    let (transported, run) = match normality_condition(tag, seq)? {
        NormalityOutcome::Fails(failure) => return Ok(FiberwiseOutcome::Failure(failure)),
        NormalityOutcome::Holds { transported, run } => (transported, run),
    };
    let t = seq.t();
    let (e, g) = quotient_xmod(t, &transported)?;

    // canonical comparison N/ker(l) -> LN, an isomorphism exactly when the
    // coaugmentation is level-wise surjective
    let (ker, _) = kernel(&run.coaug)?;
    let (n_quot, n_proj) = quotient_xmod(seq.n(), &ker)?;
    let psi = induced_through_projection(&n_quot, &n_proj, &run.output, &run.coaug)?;
    if !psi.f1().is_bijective() {
        return Err(FiberwiseError::CoaugmentationNotRegularEpi { level: 1 });
    }
    if !psi.f2().is_bijective() {
        return Err(FiberwiseError::CoaugmentationNotRegularEpi { level: 2 });
    }

    // N/ker(l) embeds in E = T/kappa(ker l)
    let into_e = XModMorphism::compose(&g, seq.kappa())?;
    let iota = induced_through_projection(&n_quot, &n_proj, &e, &into_e)?;
    let j = XModMorphism::compose(&iota, &psi.inverse()?)?;

    // Q is untouched: p is alpha pushed through the quotient projection
    let p = induced_through_projection(&e, &g, seq.q(), seq.alpha())?;

    Ok(FiberwiseOutcome::Success(Box::new(FiberwiseSuccess {
        e,
        g,
        j,
        p,
        run,
        quotiented: transported,
    })))
}

/// The unique morphism `quotient -> target` with `result ∘ projection =
/// through`, built on coset representatives and checked well defined.
fn induced_through_projection(
    quotient: &CrossedModule,
    projection: &XModMorphism,
    target: &CrossedModule,
    through: &XModMorphism,
) -> Result<XModMorphism, FiberwiseError> {
    let level = |level: u8, proj: &crate::group::GroupHom, thr: &crate::group::GroupHom| {
        let mut images = vec![usize::MAX; proj.target().order()];
        for x in proj.source().elements() {
            let out = thr.apply(x);
            let slot = &mut images[proj.apply(x)];
            if *slot == usize::MAX {
                *slot = out;
            } else if *slot != out {
                return Err(FunctorError::InducedMapIllDefined { level, witness: x });
            }
        }
        Ok(images)
    };
    let m1 = level(1, projection.f1(), through.f1())?;
    let m2 = level(2, projection.f2(), through.f2())?;
    let g1 = crate::group::GroupHom::new(quotient.g1(), target.g1(), m1)
        .map_err(XModError::from)?;
    let g2 = crate::group::GroupHom::new(quotient.g2(), target.g2(), m2)
        .map_err(XModError::from)?;
    Ok(XModMorphism::new(
        quotient.clone(),
        target.clone(),
        g1,
        g2,
    )?)
}

/// One verification check with an explanation on failure.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

impl CheckResult {
    fn pass(name: &'static str) -> CheckResult {
        CheckResult {
            name,
            ok: true,
            detail: String::new(),
        }
    }

    fn fail(name: &'static str, detail: String) -> CheckResult {
        CheckResult {
            name,
            ok: false,
            detail,
        }
    }
}

/// The five checks on a constructed fiberwise localization.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

/// Verifies a success: exactness of the bottom row, commutativity of both
/// squares, invertibility of the functor on `g`, and the identification of
/// the kernel of `g` with the transported kernel.
pub fn verify_fiberwise(
    tag: &FunctorTag,
    seq: &ExactSequence,
    success: &FiberwiseSuccess,
) -> VerificationReport {
    let mut checks = Vec::new();

    checks.push(
        match ExactSequence::new(success.j.clone(), success.p.clone()) {
            Ok(_) => CheckResult::pass("bottom-row-exact"),
            Err(e) => CheckResult::fail("bottom-row-exact", e.to_string()),
        },
    );

    let left = (|| -> Result<bool, XModError> {
        let via_ln = XModMorphism::compose(&success.j, &success.run.coaug)?;
        let via_t = XModMorphism::compose(&success.g, seq.kappa())?;
        Ok(via_ln == via_t)
    })();
    checks.push(match left {
        Ok(true) => CheckResult::pass("left-square"),
        Ok(false) => CheckResult::fail("left-square", "compositions differ".to_string()),
        Err(e) => CheckResult::fail("left-square", e.to_string()),
    });

    let right = (|| -> Result<bool, XModError> {
        let via_e = XModMorphism::compose(&success.p, &success.g)?;
        Ok(via_e == *seq.alpha())
    })();
    checks.push(match right {
        Ok(true) => CheckResult::pass("right-square"),
        Ok(false) => CheckResult::fail("right-square", "compositions differ".to_string()),
        Err(e) => CheckResult::fail("right-square", e.to_string()),
    });

    checks.push(match map_morphism(tag, &success.g) {
        Ok(mapped) if mapped.map.is_level_bijective() => CheckResult::pass("localized-iso"),
        Ok(mapped) => CheckResult::fail(
            "localized-iso",
            format!(
                "localized map has level orders {:?} -> {:?} and is not bijective",
                mapped.source_run.output.level_orders(),
                mapped.target_run.output.level_orders()
            ),
        ),
        Err(e) => CheckResult::fail("localized-iso", e.to_string()),
    });

    // recompute the transported kernel from the sequence so the check does
    // not trust the construction being verified
    let expected_kernel = (|| -> Result<(Vec<usize>, Vec<usize>), FiberwiseError> {
        let run = apply(tag, seq.n())?;
        let (ker, _) = kernel(&run.coaug)?;
        let mut k1: Vec<usize> = ker
            .s1()
            .members()
            .iter()
            .map(|&x| seq.kappa().f1().apply(x))
            .collect();
        let mut k2: Vec<usize> = ker
            .s2()
            .members()
            .iter()
            .map(|&x| seq.kappa().f2().apply(x))
            .collect();
        k1.sort_unstable();
        k2.sort_unstable();
        Ok((k1, k2))
    })();
    checks.push(match (kernel(&success.g), expected_kernel) {
        (Ok((ker_g, _)), Ok((k1, k2))) => {
            if ker_g.s1().members() == k1.as_slice() && ker_g.s2().members() == k2.as_slice() {
                CheckResult::pass("kernel-identified")
            } else {
                CheckResult::fail(
                    "kernel-identified",
                    format!(
                        "kernel of g has level orders ({}, {}), transported kernel ({}, {})",
                        ker_g.s1().order(),
                        ker_g.s2().order(),
                        k1.len(),
                        k2.len()
                    ),
                )
            }
        }
        (Err(e), _) => CheckResult::fail("kernel-identified", e.to_string()),
        (_, Err(e)) => CheckResult::fail("kernel-identified", e.to_string()),
    });

    VerificationReport { checks }
}

/// Report of the acyclicity probe: the kernel of the coaugmentation on `t`
/// and what the same functor does to it.
#[derive(Clone, Debug)]
pub struct AcyclicityReport {
    pub kernel_levels: (usize, usize),
    pub result_levels: (usize, usize),
    pub acyclic: bool,
}

/// Applies a nullification-shaped functor to the kernel of its own
/// coaugmentation on `t` and reports whether the result is trivial.
pub fn acyclicity_probe(
    tag: &FunctorTag,
    t: &CrossedModule,
) -> Result<AcyclicityReport, FiberwiseError> {
    if !tag.is_nullification() {
        return Err(FunctorError::NotANullification(tag.name()).into());
    }
    let run = apply(tag, t)?;
    let (ker, _) = kernel(&run.coaug)?;
    let (kernel_object, _) = ker.as_crossed_module()?;
    let kernel_levels = kernel_object.level_orders();
    let probe = apply(tag, &kernel_object)?;
    Ok(AcyclicityReport {
        kernel_levels,
        result_levels: probe.output.level_orders(),
        acyclic: probe.output.is_trivial(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{get_group, get_sequence, get_xmod, klein_subgroup_of_s4};
    use crate::xmod::{is_isomorphic_xmod, XModMorphism};

    #[test]
    fn the_alternating_sequence_is_exact() {
        let seq = get_sequence("A4-S4-Z2").unwrap();
        assert_eq!(seq.n().level_orders(), (12, 12));
        assert_eq!(seq.t().level_orders(), (24, 24));
        assert_eq!(seq.q().level_orders(), (2, 2));
    }

    #[test]
    fn a_trivial_kernel_sequence_is_exact() {
        let t = get_xmod("RD8").unwrap();
        let kappa = XModMorphism::trivial(&crate::xmod::CrossedModule::trivial(), &t);
        let alpha = XModMorphism::identity(&t);
        assert!(make_exact_sequence(kappa, alpha).is_ok());
    }

    #[test]
    fn abelianization_satisfies_the_normality_condition_on_the_alternating_sequence() {
        let seq = get_sequence("A4-S4-Z2").unwrap();
        let outcome = normality_condition(&FunctorTag::Ab, &seq).unwrap();
        match outcome {
            NormalityOutcome::Holds { transported, .. } => {
                assert_eq!(transported.level_orders(), (4, 4));
            }
            NormalityOutcome::Fails(_) => panic!("expected the condition to hold"),
        }
    }

    #[test]
    fn level_two_nullification_fails_the_normality_condition_with_the_full_alternating_witness() {
        let seq = get_sequence("A4-S4-Z2").unwrap();
        let outcome = normality_condition(&FunctorTag::PXZ, &seq).unwrap();
        match outcome {
            NormalityOutcome::Fails(failure) => {
                // the displacement subgroup is the whole alternating part
                assert_eq!(failure.displaced.order(), 12);
                assert_eq!(failure.kernel_level1.order(), 4);
                let s4 = seq.t().g2().clone();
                let labels = s4.perm_labels().unwrap();
                let evens: Vec<usize> =
                    s4.elements().filter(|&x| labels[x].parity() == 0).collect();
                assert_eq!(failure.displaced.members(), evens.as_slice());
                assert!(failure.displaced.contains(failure.witness));
                assert!(!failure.kernel_level1.contains(failure.witness));
                // the reported factors reproduce the witness
                let t = seq.t();
                let w = t
                    .g1()
                    .mul(t.act(failure.factor_n2, failure.factor_t1), t.g1().inv(failure.factor_t1));
                assert_eq!(w, failure.witness);
            }
            NormalityOutcome::Holds { .. } => panic!("expected the condition to fail"),
        }
    }

    #[test]
    fn trivial_kernels_satisfy_the_normality_condition_for_every_functor() {
        let seq = get_sequence("trivialN(RD8)").unwrap();
        for tag in [
            FunctorTag::Ab,
            FunctorTag::Nil2,
            FunctorTag::C,
            FunctorTag::I,
            FunctorTag::PXZ,
            FunctorTag::PZto0,
            FunctorTag::NullifyBy(get_xmod("XZ2").unwrap()),
        ] {
            assert!(
                normality_condition(&tag, &seq).unwrap().holds(),
                "tag {tag} should satisfy the condition on a trivial kernel"
            );
        }
    }

    #[test]
    fn fiberwise_abelianization_of_the_alternating_sequence_verifies() {
        let seq = get_sequence("A4-S4-Z2").unwrap();
        let outcome = fiberwise_localize(&FunctorTag::Ab, &seq).unwrap();
        match outcome {
            FiberwiseOutcome::Success(success) => {
                assert!(is_isomorphic_xmod(&success.e, &get_xmod("RS3").unwrap()).is_some());
                let report = verify_fiberwise(&FunctorTag::Ab, &seq, &success);
                assert!(report.all_ok(), "{:?}", report.checks);
            }
            FiberwiseOutcome::Failure(f) => panic!("expected success, got witness {}", f.witness),
        }
    }

    #[test]
    fn fiberwise_level_two_nullification_of_the_alternating_sequence_fails() {
        let seq = get_sequence("A4-S4-Z2").unwrap();
        let outcome = fiberwise_localize(&FunctorTag::PXZ, &seq).unwrap();
        match outcome {
            FiberwiseOutcome::Failure(failure) => {
                let labels = seq.t().g1().perm_labels().unwrap();
                assert_eq!(labels[failure.witness].parity(), 0);
                assert!(!failure.kernel_level1.contains(failure.witness));
            }
            FiberwiseOutcome::Success(_) => panic!("expected a failure"),
        }
    }

    #[test]
    fn trivial_kernel_sequences_localize_onto_themselves() {
        let seq = get_sequence("trivialN(RD8)").unwrap();
        let outcome = fiberwise_localize(&FunctorTag::Ab, &seq).unwrap();
        match outcome {
            FiberwiseOutcome::Success(success) => {
                assert_eq!(success.e, *seq.t());
                assert!(success.run.output.is_trivial());
                let report = verify_fiberwise(&FunctorTag::Ab, &seq, &success);
                assert!(report.all_ok(), "{:?}", report.checks);
            }
            FiberwiseOutcome::Failure(_) => panic!("expected success"),
        }
    }

    #[test]
    fn level_one_nullification_localizes_the_alternating_sequence() {
        let seq = get_sequence("A4-S4-Z2").unwrap();
        let outcome = fiberwise_localize(&FunctorTag::PZto0, &seq).unwrap();
        match outcome {
            FiberwiseOutcome::Success(success) => {
                let report = verify_fiberwise(&FunctorTag::PZto0, &seq, &success);
                assert!(report.all_ok(), "{:?}", report.checks);
            }
            FiberwiseOutcome::Failure(_) => panic!("expected success"),
        }
    }

    #[test]
    fn verification_flags_a_corrupted_middle_object() {
        let seq = get_sequence("A4-S4-Z2").unwrap();
        let tag = FunctorTag::Ab;
        let good = match fiberwise_localize(&tag, &seq).unwrap() {
            FiberwiseOutcome::Success(s) => s,
            FiberwiseOutcome::Failure(_) => panic!("expected success"),
        };
        // corrupt the construction: quotient by the trivial subobject
        // instead, so the middle object is T itself
        let t = seq.t().clone();
        let corrupted = FiberwiseSuccess {
            e: t.clone(),
            g: XModMorphism::identity(&t),
            j: XModMorphism::trivial(&good.run.output, &t),
            p: seq.alpha().clone(),
            run: good.run.clone(),
            quotiented: t.trivial_sub(),
        };
        let report = verify_fiberwise(&tag, &seq, &corrupted);
        assert!(!report.all_ok());
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.ok)
            .map(|c| c.name)
            .collect();
        // the localized map cannot be an isomorphism and the kernel of g is
        // too small
        assert!(failed.contains(&"localized-iso") || failed.contains(&"kernel-identified"));
    }

    #[test]
    fn acyclicity_probe_on_the_dihedral_identity_embedding() {
        let report = acyclicity_probe(&FunctorTag::PXZ, &get_xmod("RD8").unwrap()).unwrap();
        assert_eq!(report.kernel_levels, (2, 8));
        assert_eq!(report.result_levels, (2, 1));
        assert!(!report.acyclic);
    }

    #[test]
    fn acyclicity_probe_on_level_two_embeddings_is_acyclic() {
        let report = acyclicity_probe(&FunctorTag::PXZ, &get_xmod("XS3").unwrap()).unwrap();
        assert!(report.acyclic);
    }

    #[test]
    fn acyclicity_probe_where_the_object_is_already_local() {
        let report = acyclicity_probe(&FunctorTag::PZto0, &get_xmod("RD8").unwrap()).unwrap();
        assert_eq!(report.kernel_levels, (1, 1));
        assert!(report.acyclic);
    }

    #[test]
    fn acyclicity_probe_rejects_non_nullifications() {
        assert!(acyclicity_probe(&FunctorTag::Ab, &get_xmod("RD8").unwrap()).is_err());
    }

    #[test]
    fn truncation_reflection_is_rejected_when_its_coaugmentation_is_not_surjective() {
        // kernel object with non-surjective boundary: the fiber of the
        // level-two nullification on the dihedral identity embedding
        let seq = get_sequence("kernel-coaug(pxz,RD8)").unwrap();
        assert_eq!(seq.n().level_orders(), (2, 8));
        assert!(normality_condition(&FunctorTag::I, &seq).unwrap().holds());
        match fiberwise_localize(&FunctorTag::I, &seq) {
            Err(FiberwiseError::CoaugmentationNotRegularEpi { level: 1 }) => {}
            other => panic!("expected the regular-epi guard, got {other:?}"),
        }
    }

    #[test]
    fn klein_subgroup_failure_pair_is_lexicographically_smallest() {
        let seq = get_sequence("A4-S4-Z2").unwrap();
        let failure = match fiberwise_localize(&FunctorTag::PXZ, &seq).unwrap() {
            FiberwiseOutcome::Failure(f) => f,
            _ => panic!("expected failure"),
        };
        let t = seq.t();
        let kernel1 = &failure.kernel_level1;
        // replay the scan in lexicographic order and compare
        let ker2: Vec<usize> = {
            let run = apply(&FunctorTag::PXZ, seq.n()).unwrap();
            let (ker, _) = kernel(&run.coaug).unwrap();
            let mut members: Vec<usize> = ker
                .s2()
                .members()
                .iter()
                .map(|&x| seq.kappa().f2().apply(x))
                .collect();
            members.sort_unstable();
            members
        };
        let mut first = None;
        'scan: for &n2 in &ker2 {
            for t1 in t.g1().elements() {
                let w = t.g1().mul(t.act(n2, t1), t.g1().inv(t1));
                if !kernel1.contains(w) {
                    first = Some((n2, t1, w));
                    break 'scan;
                }
            }
        }
        let (n2, t1, w) = first.expect("a violation exists");
        assert_eq!((failure.factor_n2, failure.factor_t1, failure.witness), (n2, t1, w));
    }

    #[test]
    fn successful_kernel_fiber_sequences_have_acyclic_kernels() {
        // when the fiber of the coaugmentation sequence localizes
        // fiberwise, the kernel must be acyclic for the same functor
        let tags = [
            FunctorTag::PXZ,
            FunctorTag::PZto0,
            FunctorTag::C,
            FunctorTag::NullifyBy(get_xmod("XZ2").unwrap()),
        ];
        for key in ["RZ2", "RS3", "RD8", "XZ2", "C2inD8"] {
            let t = get_xmod(key).unwrap();
            for tag in &tags {
                let run = apply(tag, &t).unwrap();
                let (ker, inclusion) = kernel(&run.coaug).unwrap();
                let _ = ker;
                let seq = match ExactSequence::new(inclusion, run.coaug.clone()) {
                    Ok(s) => s,
                    Err(e) => panic!("kernel sequence must be exact: {e}"),
                };
                if let FiberwiseOutcome::Success(_) = fiberwise_localize(tag, &seq).unwrap() {
                    let probe = acyclicity_probe(tag, &t).unwrap();
                    assert!(
                        probe.acyclic,
                        "{tag} on {key}: fiberwise success must force an acyclic kernel"
                    );
                }
            }
        }
    }

    #[test]
    fn conjugation_restriction_holds_for_catalog_inclusions() {
        // conditions (1) and (2) of normality always hold for transported
        // coaugmentation kernels; only the displacement condition varies
        let tags = [
            FunctorTag::Ab,
            FunctorTag::Nil2,
            FunctorTag::C,
            FunctorTag::PXZ,
            FunctorTag::PZto0,
            FunctorTag::NullifyBy(get_xmod("RZ2").unwrap()),
        ];
        for key in ["A4-S4-Z2", "trivialN(RS3)", "kernel-coaug(pxz,RD8)"] {
            let seq = get_sequence(key).unwrap();
            for tag in &tags {
                // normality_condition errors out if (1) or (2) fails
                let _ = normality_condition(tag, &seq).unwrap();
            }
        }
    }

    #[test]
    fn klein_group_check() {
        let s4 = get_group("S4").unwrap();
        let v4 = klein_subgroup_of_s4(&s4);
        assert_eq!(v4.order(), 4);
    }
}
