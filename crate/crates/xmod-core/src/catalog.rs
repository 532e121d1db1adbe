//! Deterministic constructors for the named groups, crossed modules, and
//! exact sequences used throughout the test and acceptance suites.

use thiserror::Error;

use crate::fiberwise::FiberwiseError;
use crate::functors::{apply, FunctorTag};
use crate::group::{center, FiniteGroup, GroupHom, Subgroup};
use crate::perm::Perm;
use crate::xmod::{
    central_extension_xmod, functor_r, functor_x, kernel, normal_inclusion_xmod, CrossedModule,
    ExactSequence, XModError, XModMorphism,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog key '{0}'")]
    UnknownKey(String),
    #[error("corpus bound {bound} exceeds the maximum {max}")]
    BoundTooLarge { bound: usize, max: usize },
    #[error(transparent)]
    Construction(#[from] XModError),
    #[error("{0}")]
    Functor(String),
}

impl From<crate::group::GroupError> for CatalogError {
    fn from(e: crate::group::GroupError) -> Self {
        CatalogError::Construction(XModError::Group(e))
    }
}

impl From<crate::functors::FunctorError> for CatalogError {
    fn from(e: crate::functors::FunctorError) -> Self {
        CatalogError::Functor(e.to_string())
    }
}

impl From<FiberwiseError> for CatalogError {
    fn from(e: FiberwiseError) -> Self {
        CatalogError::Functor(e.to_string())
    }
}

pub const GROUP_KEYS: [&str; 11] = [
    "trivial",
    "Z2",
    "Z3",
    "Z4",
    "Z6",
    "V4",
    "S3",
    "D8",
    "A4",
    "S4",
    "C2-in-D8-witness",
];

pub const XMOD_KEYS: [&str; 14] = [
    "RA4",
    "RS4",
    "RZ2",
    "RZ3",
    "RS3",
    "RD8",
    "XZ2",
    "XZ3",
    "XS3",
    "A4inS4",
    "C2inD8",
    "V4inS4",
    "Z4overZ2-central",
    "RV4",
];

/// Nullification tags admitted inside `kernel-coaug(...)` sequence keys.
pub const SEQUENCE_TAGS: [&str; 6] = [
    "pxz",
    "pz0",
    "c",
    "nullify:XZ2",
    "nullify:RZ2",
    "nullify:XZ3",
];

fn perms(degree: usize, texts: &[&str]) -> Vec<Perm> {
    texts
        .iter()
        .map(|t| Perm::parse(t, degree).expect("catalog permutations parse"))
        .collect()
}

pub fn get_group(key: &str) -> Result<FiniteGroup, CatalogError> {
    let named = |mut g: FiniteGroup| {
        g.set_name(Some(key.to_string()));
        g
    };
    match key {
        "trivial" => Ok(named(FiniteGroup::trivial())),
        "Z2" => Ok(named(FiniteGroup::cyclic(2, None)?)),
        "Z3" => Ok(named(FiniteGroup::cyclic(3, None)?)),
        "Z4" => Ok(named(FiniteGroup::cyclic(4, None)?)),
        "Z6" => Ok(named(FiniteGroup::cyclic(6, None)?)),
        "V4" => Ok(named(FiniteGroup::from_permutations(
            4,
            &perms(4, &["(1 2)(3 4)", "(1 3)(2 4)"]),
            None,
        )?)),
        "S3" => Ok(named(FiniteGroup::from_permutations(
            3,
            &perms(3, &["(1 2)", "(1 2 3)"]),
            None,
        )?)),
        "D8" => Ok(named(FiniteGroup::from_permutations(
            4,
            &perms(4, &["(1 2 3 4)", "(1 3)"]),
            None,
        )?)),
        "A4" => Ok(named(FiniteGroup::from_permutations(
            4,
            &perms(4, &["(1 2 3)", "(1 2)(3 4)"]),
            None,
        )?)),
        "S4" => Ok(named(FiniteGroup::from_permutations(
            4,
            &perms(4, &["(1 2)", "(1 2 3 4)"]),
            None,
        )?)),
        "C2-in-D8-witness" => {
            let d8 = get_group("D8")?;
            let (c2, _) = center(&d8).as_group(Some(key.to_string()));
            Ok(c2)
        }
        _ => Err(CatalogError::UnknownKey(key.to_string())),
    }
}

/// The even permutations inside the catalog realization of `S4`.
pub fn alternating_subgroup(s4: &FiniteGroup) -> Subgroup {
    let labels = s4.perm_labels().expect("catalog S4 carries labels");
    let members: Vec<usize> = s4.elements().filter(|&x| labels[x].parity() == 0).collect();
    Subgroup::new(s4, members).expect("even permutations form a subgroup")
}

/// The normal Klein four-subgroup of the catalog `S4`.
pub fn klein_subgroup_of_s4(s4: &FiniteGroup) -> Subgroup {
    let members: Vec<usize> = ["(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)"]
        .iter()
        .map(|t| {
            s4.element_by_perm(&Perm::parse(t, 4).unwrap())
                .expect("double transpositions live in S4")
        })
        .chain(std::iter::once(0))
        .collect();
    Subgroup::new(s4, members).expect("double transpositions and identity form a subgroup")
}

pub fn get_xmod(key: &str) -> Result<CrossedModule, CatalogError> {
    let named = |mut x: CrossedModule| {
        x.set_name(Some(key.to_string()));
        x
    };
    match key {
        "RA4" => Ok(named(functor_r(&get_group("A4")?))),
        "RS4" => Ok(named(functor_r(&get_group("S4")?))),
        "RZ2" => Ok(named(functor_r(&get_group("Z2")?))),
        "RZ3" => Ok(named(functor_r(&get_group("Z3")?))),
        "RS3" => Ok(named(functor_r(&get_group("S3")?))),
        "RD8" => Ok(named(functor_r(&get_group("D8")?))),
        "RV4" => Ok(named(functor_r(&get_group("V4")?))),
        "XZ2" => Ok(named(functor_x(&get_group("Z2")?))),
        "XZ3" => Ok(named(functor_x(&get_group("Z3")?))),
        "XS3" => Ok(named(functor_x(&get_group("S3")?))),
        "A4inS4" => {
            let s4 = get_group("S4")?;
            let a4 = alternating_subgroup(&s4);
            Ok(named(normal_inclusion_xmod(&s4, &a4)?))
        }
        "C2inD8" => {
            let d8 = get_group("D8")?;
            Ok(named(normal_inclusion_xmod(&d8, &center(&d8))?))
        }
        "V4inS4" => {
            let s4 = get_group("S4")?;
            let v4 = klein_subgroup_of_s4(&s4);
            Ok(named(normal_inclusion_xmod(&s4, &v4)?))
        }
        "Z4overZ2-central" => {
            let z4 = get_group("Z4")?;
            let z2 = get_group("Z2")?;
            let projection = GroupHom::new(&z4, &z2, vec![0, 1, 0, 1])
                .map_err(XModError::from)?;
            Ok(named(central_extension_xmod(&projection)?))
        }
        _ => Err(CatalogError::UnknownKey(key.to_string())),
    }
}

/// Parses the functor names accepted inside sequence keys.
pub fn parse_sequence_tag(text: &str) -> Result<FunctorTag, CatalogError> {
    match text {
        "pxz" => Ok(FunctorTag::PXZ),
        "pz0" => Ok(FunctorTag::PZto0),
        "c" => Ok(FunctorTag::C),
        _ => match text.strip_prefix("nullify:") {
            Some(key) => Ok(FunctorTag::NullifyBy(get_xmod(key)?)),
            None => Err(CatalogError::UnknownKey(text.to_string())),
        },
    }
}

/// All published sequence keys, in a fixed order.
pub fn sequence_keys() -> Vec<String> {
    let mut keys = vec!["A4-S4-Z2".to_string()];
    for x in XMOD_KEYS {
        keys.push(format!("trivialN({x})"));
    }
    for tag in SEQUENCE_TAGS {
        for x in XMOD_KEYS {
            keys.push(format!("kernel-coaug({tag},{x})"));
        }
    }
    keys
}

pub fn get_sequence(key: &str) -> Result<ExactSequence, CatalogError> {
    if key == "A4-S4-Z2" {
        return alternating_sequence();
    }
    if let Some(inner) = key.strip_prefix("trivialN(").and_then(|s| s.strip_suffix(')')) {
        let t = get_xmod(inner)?;
        let kappa = XModMorphism::trivial(&CrossedModule::trivial(), &t);
        let alpha = XModMorphism::identity(&t);
        return Ok(ExactSequence::new(kappa, alpha)?);
    }
    if let Some(inner) = key
        .strip_prefix("kernel-coaug(")
        .and_then(|s| s.strip_suffix(')'))
    {
        let (tag_text, xmod_key) = inner
            .rsplit_once(',')
            .ok_or_else(|| CatalogError::UnknownKey(key.to_string()))?;
        let tag = parse_sequence_tag(tag_text.trim())?;
        if !tag.is_nullification() {
            return Err(CatalogError::UnknownKey(key.to_string()));
        }
        let t = get_xmod(xmod_key.trim())?;
        let run = apply(&tag, &t)?;
        let (ker, inclusion) = kernel(&run.coaug)?;
        let _ = ker;
        return Ok(ExactSequence::new(inclusion, run.coaug)?);
    }
    Err(CatalogError::UnknownKey(key.to_string()))
}

/// The sequence with the alternating subgroup at both levels of the kernel
/// and the parity map at both levels of the projection.
fn alternating_sequence() -> Result<ExactSequence, CatalogError> {
    let ra4 = get_xmod("RA4")?;
    let rs4 = get_xmod("RS4")?;
    let rz2 = get_xmod("RZ2")?;
    let s4 = rs4.g2().clone();
    let a4 = ra4.g2().clone();
    let labels = a4.perm_labels().expect("catalog A4 carries labels");
    let embedding_images: Vec<usize> = a4
        .elements()
        .map(|x| {
            s4.element_by_perm(&labels[x])
                .expect("even permutations embed")
        })
        .collect();
    let embed = GroupHom::new(&a4, &s4, embedding_images).map_err(XModError::from)?;
    let kappa = XModMorphism::new(ra4, rs4.clone(), embed.clone(), embed)?;
    let s4_labels = s4.perm_labels().expect("catalog S4 carries labels");
    let sign_images: Vec<usize> = s4.elements().map(|x| s4_labels[x].parity()).collect();
    let sign = GroupHom::new(&s4, rz2.g2(), sign_images).map_err(XModError::from)?;
    let alpha = XModMorphism::new(rs4, rz2, sign.clone(), sign)?;
    Ok(ExactSequence::new(kappa, alpha)?)
}

/// All catalog crossed modules whose level-order product stays within the
/// bound, each with every catalog exact sequence having it as the kernel
/// object, in catalog order.
#[allow(clippy::type_complexity)]
pub fn corpus(
    max_order_product: usize,
) -> Result<Vec<(String, CrossedModule, Vec<(String, ExactSequence)>)>, CatalogError> {
    let max = crate::group::MAX_GROUP_ORDER * crate::group::MAX_GROUP_ORDER;
    if max_order_product > max {
        return Err(CatalogError::BoundTooLarge {
            bound: max_order_product,
            max,
        });
    }
    let sequences: Vec<(String, ExactSequence)> = sequence_keys()
        .into_iter()
        .map(|k| Ok((k.clone(), get_sequence(&k)?)))
        .collect::<Result<_, CatalogError>>()?;
    let mut entries = Vec::new();
    for key in XMOD_KEYS {
        let x = get_xmod(key)?;
        let (o1, o2) = x.level_orders();
        if o1 * o2 > max_order_product {
            continue;
        }
        let matching: Vec<(String, ExactSequence)> = sequences
            .iter()
            .filter(|(_, s)| s.n() == &x)
            .cloned()
            .collect();
        entries.push((key.to_string(), x, matching));
    }
    Ok(entries)
}

/// First catalog crossed module isomorphic to `x`, if any; the trivial
/// object is labelled `trivial`.
pub fn isomorphism_label(x: &CrossedModule) -> Option<String> {
    if x.is_trivial() {
        return Some("trivial".to_string());
    }
    for key in XMOD_KEYS {
        let candidate = get_xmod(key).expect("catalog keys resolve");
        if candidate.level_orders() == x.level_orders()
            && crate::xmod::is_isomorphic_xmod(x, &candidate).is_some()
        {
            return Some(key.to_string());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{displacement_subgroup, ActionByAutomorphisms};

    #[test]
    fn every_group_key_resolves_and_reresolves_identically() {
        for key in GROUP_KEYS {
            let a = get_group(key).unwrap();
            let b = get_group(key).unwrap();
            assert_eq!(a, b, "{key} must be deterministic");
        }
    }

    #[test]
    fn klein_four_group_has_exponent_two() {
        let v4 = get_group("V4").unwrap();
        assert_eq!(v4.order(), 4);
        for x in v4.elements() {
            assert!(v4.element_order(x) <= 2);
        }
    }

    #[test]
    fn dihedral_centre_equals_its_commutator_subgroup() {
        let d8 = get_group("D8").unwrap();
        let centre = center(&d8);
        assert_eq!(centre.order(), 2);
        let all: Vec<usize> = d8.elements().collect();
        let conj = ActionByAutomorphisms::conjugation(&d8);
        let commutators = displacement_subgroup(&conj, &all, &all).unwrap();
        assert_eq!(centre.members(), commutators.members());
    }

    #[test]
    fn trivial_key_gives_the_one_element_group() {
        assert_eq!(get_group("trivial").unwrap().order(), 1);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(matches!(get_group("Q8"), Err(CatalogError::UnknownKey(_))));
        assert!(matches!(get_xmod("RQ8"), Err(CatalogError::UnknownKey(_))));
        assert!(matches!(
            get_sequence("B3-B4"),
            Err(CatalogError::UnknownKey(_))
        ));
    }

    #[test]
    fn every_xmod_key_resolves_with_the_expected_levels() {
        let expected = [
            ("RA4", (12, 12)),
            ("RS4", (24, 24)),
            ("RZ2", (2, 2)),
            ("RZ3", (3, 3)),
            ("RS3", (6, 6)),
            ("RD8", (8, 8)),
            ("XZ2", (1, 2)),
            ("XZ3", (1, 3)),
            ("XS3", (1, 6)),
            ("A4inS4", (12, 24)),
            ("C2inD8", (2, 8)),
            ("V4inS4", (4, 24)),
            ("Z4overZ2-central", (4, 2)),
            ("RV4", (4, 4)),
        ];
        for (key, levels) in expected {
            assert_eq!(get_xmod(key).unwrap().level_orders(), levels, "{key}");
        }
    }

    #[test]
    fn identity_embedding_keys_have_identity_boundaries() {
        let rs4 = get_xmod("RS4").unwrap();
        let expected: Vec<usize> = rs4.g2().elements().collect();
        assert_eq!(rs4.boundary().image(), expected.as_slice());
    }

    #[test]
    fn every_sequence_key_resolves() {
        for key in sequence_keys() {
            let seq = get_sequence(&key).unwrap();
            assert!(seq.kappa().is_level_injective(), "{key}");
            assert!(seq.alpha().is_level_surjective(), "{key}");
        }
    }

    #[test]
    fn kernel_fiber_sequence_of_the_dihedral_nullification() {
        let seq = get_sequence("kernel-coaug(pxz,RD8)").unwrap();
        assert_eq!(seq.n().level_orders(), (2, 8));
        assert_eq!(seq.t().level_orders(), (8, 8));
        assert_eq!(seq.q().level_orders(), (4, 1));
        assert_eq!(seq.n(), &get_xmod("C2inD8").unwrap());
    }

    #[test]
    fn corpus_bounds_filter_by_level_order_product() {
        let small = corpus(4).unwrap();
        let keys: Vec<&str> = small.iter().map(|(k, _, _)| k.as_str()).collect();
        assert!(keys.contains(&"XZ2"));
        assert!(keys.contains(&"RZ2"));
        assert!(keys.contains(&"XZ3"));
        assert!(!keys.contains(&"RA4"));
        let full = corpus(576).unwrap();
        let keys: Vec<&str> = full.iter().map(|(k, _, _)| k.as_str()).collect();
        assert!(keys.contains(&"RS4"));
        assert_eq!(keys.len(), XMOD_KEYS.len());
    }

    #[test]
    fn corpus_pairs_sequences_with_matching_kernel_objects() {
        let entries = corpus(576).unwrap();
        for (key, x, seqs) in &entries {
            for (seq_key, seq) in seqs {
                assert_eq!(seq.n(), x, "{seq_key} paired with {key}");
            }
        }
        // the alternating sequence must be paired with RA4
        let ra4 = entries.iter().find(|(k, _, _)| k == "RA4").unwrap();
        assert!(ra4.2.iter().any(|(k, _)| k == "A4-S4-Z2"));
        // the dihedral nullification fiber must be paired with C2inD8
        let c2 = entries.iter().find(|(k, _, _)| k == "C2inD8").unwrap();
        assert!(c2.2.iter().any(|(k, _)| k == "kernel-coaug(pxz,RD8)"));
    }

    #[test]
    fn labels_recognize_isomorphic_outputs() {
        let run = crate::functors::apply(
            &crate::functors::FunctorTag::Ab,
            &get_xmod("RA4").unwrap(),
        )
        .unwrap();
        assert_eq!(isomorphism_label(&run.output).as_deref(), Some("RZ3"));
        assert_eq!(
            isomorphism_label(&CrossedModule::trivial()).as_deref(),
            Some("trivial")
        );
    }
}
