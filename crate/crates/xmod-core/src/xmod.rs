//! Crossed modules of groups and their categorical constructions.
//!
//! A crossed module is a boundary homomorphism `g1 -> g2` together with an
//! action of `g2` on `g1` by automorphisms, subject to equivariance and the
//! Peiffer identity. Kernels and pullbacks are computed level-wise; the
//! cokernel needs the action closure and displacement subgroups at level
//! one. Induced structure on quotients is built from coset representatives
//! and re-validated exhaustively rather than trusted.

use std::fmt;

use thiserror::Error;

use crate::group::{
    action_closure, conjugation_action, displacement_subgroup, hom_enumeration,
    isomorphism_enumeration, quotient_group, subgroup_generated, ActionByAutomorphisms,
    FiniteGroup, GroupError, GroupHom, Subgroup,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum XModError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("components do not fit together: {0}")]
    ComponentMismatch(String),
    #[error("equivariance fails at actor {b} on {x}")]
    EquivarianceViolation { b: usize, x: usize },
    #[error("Peiffer identity fails at ({x}, {y})")]
    PeifferViolation { x: usize, y: usize },
    #[error("boundary square does not commute at {x}")]
    BoundarySquare { x: usize },
    #[error("action square does not commute at actor {b} on {x}")]
    ActionSquare { b: usize, x: usize },
    #[error("boundary leaves the subobject at {x}")]
    BoundaryEscapesSub { x: usize },
    #[error("action leaves the subobject at actor {b} on {x}")]
    ActionEscapesSub { b: usize, x: usize },
    #[error("map is not surjective")]
    NotSurjective,
    #[error("kernel is not central; witness {witness}")]
    KernelNotCentral { witness: usize },
    #[error("not a normal subcrossed module: {0}")]
    NotNormalSubXMod(NormalityCheck),
    #[error("induced boundary is not well defined at {witness}")]
    InducedBoundaryIllDefined { witness: usize },
    #[error("induced action is not well defined at actor {b} on {x}")]
    InducedActionIllDefined { b: usize, x: usize },
    #[error("morphism is not injective at level {level}")]
    NotInjectiveLevel { level: u8 },
    #[error("morphism is not surjective at level {level}")]
    NotSurjectiveLevel { level: u8 },
    #[error("sequence is not exact at level {level}; witness {witness}")]
    NotExactAt { level: u8, witness: usize },
}

/// A crossed module: groups at two levels, the boundary `g1 -> g2`, and an
/// action of `g2` on `g1` by automorphisms satisfying equivariance and the
/// Peiffer identity.
#[derive(Clone)]
pub struct CrossedModule {
    g1: FiniteGroup,
    g2: FiniteGroup,
    boundary: GroupHom,
    action: ActionByAutomorphisms,
    name: Option<String>,
}

impl fmt::Debug for CrossedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CrossedModule(levels ({}, {}), name {:?})",
            self.g1.order(),
            self.g2.order(),
            self.name
        )
    }
}

impl PartialEq for CrossedModule {
    fn eq(&self, other: &Self) -> bool {
        self.g1 == other.g1
            && self.g2 == other.g2
            && self.boundary.image() == other.boundary.image()
            && self.action.table() == other.action.table()
    }
}
impl Eq for CrossedModule {}

impl CrossedModule {
    /// Validates the two crossed-module axioms and returns the object, or
    /// reports the first violated axiom with witnesses.
    pub fn new(
        g1: FiniteGroup,
        g2: FiniteGroup,
        boundary: GroupHom,
        action: ActionByAutomorphisms,
        name: Option<String>,
    ) -> Result<CrossedModule, XModError> {
        if boundary.source() != &g1 || boundary.target() != &g2 {
            return Err(XModError::ComponentMismatch(
                "boundary does not map level 1 to level 2".to_string(),
            ));
        }
        if action.actor() != &g2 || action.acted() != &g1 {
            return Err(XModError::ComponentMismatch(
                "action is not an action of level 2 on level 1".to_string(),
            ));
        }
        for b in g2.elements() {
            for x in g1.elements() {
                let lhs = boundary.apply(action.apply(b, x));
                let rhs = g2.conjugate(b, boundary.apply(x));
                if lhs != rhs {
                    return Err(XModError::EquivarianceViolation { b, x });
                }
            }
        }
        for x in g1.elements() {
            for y in g1.elements() {
                if action.apply(boundary.apply(x), y) != g1.conjugate(x, y) {
                    return Err(XModError::PeifferViolation { x, y });
                }
            }
        }
        Ok(CrossedModule {
            g1,
            g2,
            boundary,
            action,
            name,
        })
    }

    pub fn trivial() -> CrossedModule {
        functor_x(&FiniteGroup::trivial())
    }

    pub fn g1(&self) -> &FiniteGroup {
        &self.g1
    }

    pub fn g2(&self) -> &FiniteGroup {
        &self.g2
    }

    pub fn boundary(&self) -> &GroupHom {
        &self.boundary
    }

    pub fn action(&self) -> &ActionByAutomorphisms {
        &self.action
    }

    pub fn act(&self, b: usize, x: usize) -> usize {
        self.action.apply(b, x)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: Option<String>) {
        self.name = name;
    }

    pub fn level_orders(&self) -> (usize, usize) {
        (self.g1.order(), self.g2.order())
    }

    pub fn is_trivial(&self) -> bool {
        self.g1.order() == 1 && self.g2.order() == 1
    }

    pub fn full_sub(&self) -> SubXMod {
        SubXMod {
            ambient: self.clone(),
            s1: self.g1.full_subgroup(),
            s2: self.g2.full_subgroup(),
        }
    }

    pub fn trivial_sub(&self) -> SubXMod {
        SubXMod {
            ambient: self.clone(),
            s1: self.g1.trivial_subgroup(),
            s2: self.g2.trivial_subgroup(),
        }
    }
}

/// `X G = (1, G)`: the group concentrated in level 2.
pub fn functor_x(g: &FiniteGroup) -> CrossedModule {
    let trivial = FiniteGroup::trivial();
    let boundary = GroupHom::trivial(&trivial, g);
    let action = ActionByAutomorphisms::trivial(g, &trivial);
    CrossedModule::new(trivial, g.clone(), boundary, action, None)
        .expect("level-2 embedding satisfies the axioms")
}

/// `R G = (G, G, id)` with the conjugation action.
pub fn functor_r(g: &FiniteGroup) -> CrossedModule {
    let boundary = GroupHom::identity(g);
    let action = ActionByAutomorphisms::conjugation(g);
    CrossedModule::new(g.clone(), g.clone(), boundary, action, None)
        .expect("identity with conjugation satisfies the axioms")
}

/// Truncation to the level-2 group.
pub fn functor_tr(t: &CrossedModule) -> FiniteGroup {
    t.g2.clone()
}

/// The inclusion of a normal subgroup with the conjugation action.
pub fn normal_inclusion_xmod(m: &FiniteGroup, n: &Subgroup) -> Result<CrossedModule, XModError> {
    if n.ambient() != m {
        return Err(XModError::ComponentMismatch(
            "subgroup has a different ambient group".to_string(),
        ));
    }
    let action = conjugation_action(m, n)?;
    let (n_group, inclusion) = n.as_group(None);
    CrossedModule::new(n_group, m.clone(), inclusion, action, None)
}

/// A surjection with central kernel, made into a crossed module: the target
/// acts through chosen preimages, which centrality makes independent of the
/// choice.
pub fn central_extension_xmod(g: &GroupHom) -> Result<CrossedModule, XModError> {
    if !g.is_surjective() {
        return Err(XModError::NotSurjective);
    }
    let kernel = g.kernel();
    let centre = crate::group::center(g.source());
    for &k in kernel.members() {
        if !centre.contains(k) {
            return Err(XModError::KernelNotCentral { witness: k });
        }
    }
    let source = g.source();
    let target = g.target();
    // smallest-index preimage of each target element
    let preimage: Vec<usize> = target
        .elements()
        .map(|b| {
            source
                .elements()
                .find(|&x| g.apply(x) == b)
                .expect("surjective")
        })
        .collect();
    let table = target
        .elements()
        .map(|b| {
            source
                .elements()
                .map(|a| source.conjugate(preimage[b], a))
                .collect()
        })
        .collect();
    let action = ActionByAutomorphisms::new(target, source, table)?;
    CrossedModule::new(source.clone(), target.clone(), g.clone(), action, None)
}

/// A morphism of crossed modules: level-wise homomorphisms commuting with
/// the boundaries and the actions.
#[derive(Clone)]
pub struct XModMorphism {
    source: CrossedModule,
    target: CrossedModule,
    f1: GroupHom,
    f2: GroupHom,
}

impl fmt::Debug for XModMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "XModMorphism({:?} -> {:?})",
            self.source.level_orders(),
            self.target.level_orders()
        )
    }
}

impl PartialEq for XModMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.f1.image() == other.f1.image()
            && self.f2.image() == other.f2.image()
    }
}
impl Eq for XModMorphism {}

impl XModMorphism {
    pub fn new(
        source: CrossedModule,
        target: CrossedModule,
        f1: GroupHom,
        f2: GroupHom,
    ) -> Result<XModMorphism, XModError> {
        if f1.source() != &source.g1 || f1.target() != &target.g1 {
            return Err(XModError::ComponentMismatch(
                "level-1 map does not match the endpoints".to_string(),
            ));
        }
        if f2.source() != &source.g2 || f2.target() != &target.g2 {
            return Err(XModError::ComponentMismatch(
                "level-2 map does not match the endpoints".to_string(),
            ));
        }
        for x in source.g1.elements() {
            if f2.apply(source.boundary.apply(x)) != target.boundary.apply(f1.apply(x)) {
                return Err(XModError::BoundarySquare { x });
            }
        }
        for b in source.g2.elements() {
            for x in source.g1.elements() {
                if f1.apply(source.act(b, x)) != target.act(f2.apply(b), f1.apply(x)) {
                    return Err(XModError::ActionSquare { b, x });
                }
            }
        }
        Ok(XModMorphism {
            source,
            target,
            f1,
            f2,
        })
    }

    pub fn identity(t: &CrossedModule) -> XModMorphism {
        XModMorphism {
            source: t.clone(),
            target: t.clone(),
            f1: GroupHom::identity(&t.g1),
            f2: GroupHom::identity(&t.g2),
        }
    }

    pub fn trivial(source: &CrossedModule, target: &CrossedModule) -> XModMorphism {
        XModMorphism {
            source: source.clone(),
            target: target.clone(),
            f1: GroupHom::trivial(&source.g1, &target.g1),
            f2: GroupHom::trivial(&source.g2, &target.g2),
        }
    }

    pub fn source(&self) -> &CrossedModule {
        &self.source
    }

    pub fn target(&self) -> &CrossedModule {
        &self.target
    }

    pub fn f1(&self) -> &GroupHom {
        &self.f1
    }

    pub fn f2(&self) -> &GroupHom {
        &self.f2
    }

    pub fn is_trivial(&self) -> bool {
        self.f1.is_trivial() && self.f2.is_trivial()
    }

    pub fn is_level_injective(&self) -> bool {
        self.f1.is_injective() && self.f2.is_injective()
    }

    pub fn is_level_surjective(&self) -> bool {
        self.f1.is_surjective() && self.f2.is_surjective()
    }

    pub fn is_level_bijective(&self) -> bool {
        self.f1.is_bijective() && self.f2.is_bijective()
    }

    /// `outer` after `inner`.
    pub fn compose(outer: &XModMorphism, inner: &XModMorphism) -> Result<XModMorphism, XModError> {
        if inner.target != outer.source {
            return Err(XModError::ComponentMismatch(
                "composition endpoints do not chain".to_string(),
            ));
        }
        Ok(XModMorphism {
            source: inner.source.clone(),
            target: outer.target.clone(),
            f1: GroupHom::compose(&outer.f1, &inner.f1)?,
            f2: GroupHom::compose(&outer.f2, &inner.f2)?,
        })
    }

    pub fn inverse(&self) -> Result<XModMorphism, XModError> {
        Ok(XModMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            f1: self.f1.inverse()?,
            f2: self.f2.inverse()?,
        })
    }
}

/// Regular epimorphisms of crossed modules are exactly the level-wise
/// surjections.
pub fn is_regular_epi(f: &XModMorphism) -> bool {
    f.is_level_surjective()
}

/// A subcrossed module: level-wise subgroups closed under the boundary and
/// the restricted action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubXMod {
    ambient: CrossedModule,
    s1: Subgroup,
    s2: Subgroup,
}

impl SubXMod {
    pub fn new(ambient: &CrossedModule, s1: Subgroup, s2: Subgroup) -> Result<SubXMod, XModError> {
        if s1.ambient() != &ambient.g1 || s2.ambient() != &ambient.g2 {
            return Err(XModError::ComponentMismatch(
                "subgroups live in the wrong levels".to_string(),
            ));
        }
        for &x in s1.members() {
            if !s2.contains(ambient.boundary.apply(x)) {
                return Err(XModError::BoundaryEscapesSub { x });
            }
        }
        for &b in s2.members() {
            for &x in s1.members() {
                if !s1.contains(ambient.act(b, x)) {
                    return Err(XModError::ActionEscapesSub { b, x });
                }
            }
        }
        let sub = SubXMod {
            ambient: ambient.clone(),
            s1,
            s2,
        };
        sub.as_crossed_module()?; // the restricted structure must validate
        Ok(sub)
    }

    pub fn ambient(&self) -> &CrossedModule {
        &self.ambient
    }

    pub fn s1(&self) -> &Subgroup {
        &self.s1
    }

    pub fn s2(&self) -> &Subgroup {
        &self.s2
    }

    pub fn level_orders(&self) -> (usize, usize) {
        (self.s1.order(), self.s2.order())
    }

    pub fn is_trivial(&self) -> bool {
        self.s1.is_trivial() && self.s2.is_trivial()
    }

    pub fn is_full(&self) -> bool {
        self.s1.is_full() && self.s2.is_full()
    }

    /// The restricted structure as a crossed module of its own, with the
    /// inclusion morphism into the ambient one.
    pub fn as_crossed_module(&self) -> Result<(CrossedModule, XModMorphism), XModError> {
        let (h1, inc1) = self.s1.as_group(None);
        let (h2, inc2) = self.s2.as_group(None);
        let boundary_images = self
            .s1
            .members()
            .iter()
            .map(|&x| {
                self.s2
                    .index_of(self.ambient.boundary.apply(x))
                    .expect("boundary stays inside")
            })
            .collect();
        let boundary = GroupHom::new(&h1, &h2, boundary_images)?;
        let action_table = self
            .s2
            .members()
            .iter()
            .map(|&b| {
                self.s1
                    .members()
                    .iter()
                    .map(|&x| {
                        self.s1
                            .index_of(self.ambient.act(b, x))
                            .expect("action stays inside")
                    })
                    .collect()
            })
            .collect();
        let action = ActionByAutomorphisms::new(&h2, &h1, action_table)?;
        let sub = CrossedModule::new(h1, h2, boundary, action, None)?;
        let inclusion = XModMorphism::new(sub.clone(), self.ambient.clone(), inc1, inc2)?;
        Ok((sub, inclusion))
    }
}

/// Outcome of the three-condition normality test for a subcrossed module,
/// with a witness for the first condition that fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalityCheck {
    Normal,
    /// Level-2 part is not a normal subgroup.
    NotNormalLevel2 {
        conjugator: usize,
        member: usize,
        conjugate: usize,
    },
    /// The ambient action throws a level-1 member outside.
    ActionEscapes { t2: usize, n1: usize, image: usize },
    /// A displacement `act(n2, t1) * t1^-1` escapes the level-1 part.
    DisplacementEscapes {
        n2: usize,
        t1: usize,
        witness: usize,
    },
}

impl NormalityCheck {
    pub fn is_normal(&self) -> bool {
        matches!(self, NormalityCheck::Normal)
    }
}

impl fmt::Display for NormalityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalityCheck::Normal => write!(f, "normal"),
            NormalityCheck::NotNormalLevel2 {
                conjugator,
                member,
                conjugate,
            } => write!(
                f,
                "level-2 part not normal: {conjugator}*{member}*{conjugator}^-1 = {conjugate}"
            ),
            NormalityCheck::ActionEscapes { t2, n1, image } => {
                write!(f, "action of {t2} sends {n1} to {image} outside level 1")
            }
            NormalityCheck::DisplacementEscapes { n2, t1, witness } => write!(
                f,
                "displacement of ({n2}, {t1}) gives {witness} outside level 1"
            ),
        }
    }
}

/// The three conditions for a normal subcrossed module: the level-2 part is
/// normal, the ambient action preserves the level-1 part, and the
/// displacement subgroup of the level-2 part lands in the level-1 part.
/// Witnesses are scanned in lexicographic order.
pub fn is_normal_subcrossed(n: &SubXMod) -> NormalityCheck {
    let t = n.ambient();
    for t2 in t.g2.elements() {
        for &n2 in n.s2.members() {
            let c = t.g2.conjugate(t2, n2);
            if !n.s2.contains(c) {
                return NormalityCheck::NotNormalLevel2 {
                    conjugator: t2,
                    member: n2,
                    conjugate: c,
                };
            }
        }
    }
    for t2 in t.g2.elements() {
        for &n1 in n.s1.members() {
            let image = t.act(t2, n1);
            if !n.s1.contains(image) {
                return NormalityCheck::ActionEscapes { t2, n1, image };
            }
        }
    }
    for &n2 in n.s2.members() {
        for t1 in t.g1.elements() {
            let w = t.g1.mul(t.act(n2, t1), t.g1.inv(t1));
            if !n.s1.contains(w) {
                return NormalityCheck::DisplacementEscapes { n2, t1, witness: w };
            }
        }
    }
    NormalityCheck::Normal
}

/// The level-wise kernel of a morphism, as a subcrossed module of the
/// source with its inclusion. Kernels are always normal subcrossed modules.
pub fn kernel(f: &XModMorphism) -> Result<(SubXMod, XModMorphism), XModError> {
    let s1 = Subgroup::new(f.source().g1(), f.f1.kernel().members().iter().copied())?;
    let s2 = Subgroup::new(f.source().g2(), f.f2.kernel().members().iter().copied())?;
    let sub = SubXMod::new(f.source(), s1, s2)?;
    let (_, inclusion) = sub.as_crossed_module()?;
    Ok((sub, inclusion))
}

/// Level-wise quotient of `t` by normal subgroups `d1`, `d2` with the
/// induced boundary and action. The induced structure is constructed via
/// coset representatives, checked well defined element-wise, and the result
/// re-validated as a crossed module.
pub fn quotient_by_subgroups(
    t: &CrossedModule,
    d1: &Subgroup,
    d2: &Subgroup,
) -> Result<(CrossedModule, XModMorphism), XModError> {
    let (q1, proj1) = quotient_group(&t.g1, d1)?;
    let (q2, proj2) = quotient_group(&t.g2, d2)?;
    // representative of each coset: its minimal member
    let rep1: Vec<usize> = q1
        .elements()
        .map(|c| t.g1.elements().find(|&x| proj1.apply(x) == c).unwrap())
        .collect();
    let rep2: Vec<usize> = q2
        .elements()
        .map(|c| t.g2.elements().find(|&x| proj2.apply(x) == c).unwrap())
        .collect();
    let boundary_images: Vec<usize> = rep1
        .iter()
        .map(|&r| proj2.apply(t.boundary.apply(r)))
        .collect();
    for x in t.g1.elements() {
        if proj2.apply(t.boundary.apply(x)) != boundary_images[proj1.apply(x)] {
            return Err(XModError::InducedBoundaryIllDefined { witness: x });
        }
    }
    let action_table: Vec<Vec<usize>> = rep2
        .iter()
        .map(|&b| {
            rep1.iter()
                .map(|&x| proj1.apply(t.act(b, x)))
                .collect::<Vec<_>>()
        })
        .collect();
    for b in t.g2.elements() {
        for x in t.g1.elements() {
            if proj1.apply(t.act(b, x)) != action_table[proj2.apply(b)][proj1.apply(x)] {
                return Err(XModError::InducedActionIllDefined { b, x });
            }
        }
    }
    let boundary = GroupHom::new(&q1, &q2, boundary_images)?;
    let action = ActionByAutomorphisms::new(&q2, &q1, action_table)?;
    let quotient = CrossedModule::new(q1, q2, boundary, action, None)?;
    let projection = XModMorphism::new(t.clone(), quotient.clone(), proj1, proj2)?;
    Ok((quotient, projection))
}

/// Cokernel of a morphism with image sets `s1` (in `t.g1`) and `s2`
/// (in `t.g2`): level 2 is the quotient by the normal closure of `s2`;
/// level 1 quotients by the subgroup generated by the action closure of
/// `s1` together with the displacement subgroup of that normal closure.
pub fn cokernel_of_images(
    t: &CrossedModule,
    s1: &[usize],
    s2: &[usize],
) -> Result<(CrossedModule, XModMorphism), XModError> {
    let conj2 = ActionByAutomorphisms::conjugation(&t.g2);
    let normal_closure2 = action_closure(&conj2, s2)?;
    let closed1 = action_closure(&t.action, s1)?;
    let all1: Vec<usize> = t.g1.elements().collect();
    let displaced = displacement_subgroup(&t.action, normal_closure2.members(), &all1)?;
    let mut denominator1: Vec<usize> = closed1.members().to_vec();
    denominator1.extend_from_slice(displaced.members());
    let d1 = subgroup_generated(&t.g1, &denominator1)?;
    quotient_by_subgroups(t, &d1, &normal_closure2)
}

/// Cokernel of a morphism of crossed modules, with the projection.
pub fn cokernel(f: &XModMorphism) -> Result<(CrossedModule, XModMorphism), XModError> {
    let s1: Vec<usize> = f.f1.image().to_vec();
    let s2: Vec<usize> = f.f2.image().to_vec();
    cokernel_of_images(f.target(), &s1, &s2)
}

/// Level-wise quotient by a normal subcrossed module, with the projection.
pub fn quotient_xmod(
    t: &CrossedModule,
    n: &SubXMod,
) -> Result<(CrossedModule, XModMorphism), XModError> {
    if n.ambient() != t {
        return Err(XModError::ComponentMismatch(
            "subobject has a different ambient crossed module".to_string(),
        ));
    }
    let check = is_normal_subcrossed(n);
    if !check.is_normal() {
        return Err(XModError::NotNormalSubXMod(check));
    }
    quotient_by_subgroups(t, &n.s1, &n.s2)
}

/// Pullback of `f` along `g`, built level-wise as fiber products of groups.
/// Pairs are enumerated lexicographically, so the identity pair comes
/// first. Returns the object with the two projections.
pub fn pullback(
    f: &XModMorphism,
    g: &XModMorphism,
) -> Result<(CrossedModule, XModMorphism, XModMorphism), XModError> {
    if f.target() != g.target() {
        return Err(XModError::ComponentMismatch(
            "pullback needs a common target".to_string(),
        ));
    }
    let fiber = |th: &GroupHom, gh: &GroupHom| -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for t in th.source().elements() {
            for q in gh.source().elements() {
                if th.apply(t) == gh.apply(q) {
                    pairs.push((t, q));
                }
            }
        }
        pairs
    };
    let build = |th: &GroupHom, gh: &GroupHom| -> Result<(FiniteGroup, Vec<(usize, usize)>), XModError> {
        let pairs = fiber(th, gh);
        let position = |p: (usize, usize)| pairs.iter().position(|&q| q == p).unwrap();
        let table = pairs
            .iter()
            .map(|&(a, b)| {
                pairs
                    .iter()
                    .map(|&(c, d)| position((th.source().mul(a, c), gh.source().mul(b, d))))
                    .collect()
            })
            .collect();
        Ok((FiniteGroup::from_table(table, None, None)?, pairs))
    };
    let (p1, pairs1) = build(f.f1(), g.f1())?;
    let (p2, pairs2) = build(f.f2(), g.f2())?;
    let pos1 = |p: (usize, usize)| pairs1.iter().position(|&q| q == p).unwrap();
    let pos2 = |p: (usize, usize)| pairs2.iter().position(|&q| q == p).unwrap();
    let t_side = f.source();
    let q_side = g.source();
    let boundary_images: Vec<usize> = pairs1
        .iter()
        .map(|&(a, b)| pos2((t_side.boundary.apply(a), q_side.boundary.apply(b))))
        .collect();
    let action_table: Vec<Vec<usize>> = pairs2
        .iter()
        .map(|&(b2, q2)| {
            pairs1
                .iter()
                .map(|&(x, y)| pos1((t_side.act(b2, x), q_side.act(q2, y))))
                .collect()
        })
        .collect();
    let boundary = GroupHom::new(&p1, &p2, boundary_images)?;
    let action = ActionByAutomorphisms::new(&p2, &p1, action_table)?;
    let object = CrossedModule::new(p1.clone(), p2.clone(), boundary, action, None)?;
    let to_t = XModMorphism::new(
        object.clone(),
        t_side.clone(),
        GroupHom::new(&p1, &t_side.g1, pairs1.iter().map(|&(a, _)| a).collect())?,
        GroupHom::new(&p2, &t_side.g2, pairs2.iter().map(|&(a, _)| a).collect())?,
    )?;
    let to_q = XModMorphism::new(
        object.clone(),
        q_side.clone(),
        GroupHom::new(&p1, &q_side.g1, pairs1.iter().map(|&(_, b)| b).collect())?,
        GroupHom::new(&p2, &q_side.g2, pairs2.iter().map(|&(_, b)| b).collect())?,
    )?;
    Ok((object, to_t, to_q))
}

/// All morphisms `a -> t`: pairs of level homomorphisms filtered by the two
/// commuting squares, in a deterministic order.
pub fn xmod_hom_enumeration(a: &CrossedModule, t: &CrossedModule) -> Vec<XModMorphism> {
    let homs1 = hom_enumeration(&a.g1, &t.g1);
    let homs2 = hom_enumeration(&a.g2, &t.g2);
    let mut found = Vec::new();
    for f1 in &homs1 {
        for f2 in &homs2 {
            if squares_commute(a, t, f1, f2) {
                found.push(XModMorphism {
                    source: a.clone(),
                    target: t.clone(),
                    f1: f1.clone(),
                    f2: f2.clone(),
                });
            }
        }
    }
    found
}

fn squares_commute(a: &CrossedModule, t: &CrossedModule, f1: &GroupHom, f2: &GroupHom) -> bool {
    for x in a.g1.elements() {
        if f2.apply(a.boundary.apply(x)) != t.boundary.apply(f1.apply(x)) {
            return false;
        }
    }
    for b in a.g2.elements() {
        for x in a.g1.elements() {
            if f1.apply(a.act(b, x)) != t.act(f2.apply(b), f1.apply(x)) {
                return false;
            }
        }
    }
    true
}

/// Searches for an isomorphism of crossed modules: level-wise bijective
/// homomorphisms commuting with the structure, with a verified inverse.
pub fn is_isomorphic_xmod(a: &CrossedModule, b: &CrossedModule) -> Option<XModMorphism> {
    if a.level_orders() != b.level_orders() {
        return None;
    }
    let isos1 = isomorphism_enumeration(&a.g1, &b.g1);
    if isos1.is_empty() {
        return None;
    }
    let isos2 = isomorphism_enumeration(&a.g2, &b.g2);
    for f1 in &isos1 {
        for f2 in &isos2 {
            if squares_commute(a, b, f1, f2) {
                let forward = XModMorphism {
                    source: a.clone(),
                    target: b.clone(),
                    f1: f1.clone(),
                    f2: f2.clone(),
                };
                let backward = forward.inverse().expect("level bijections invert");
                if XModMorphism::new(
                    backward.source.clone(),
                    backward.target.clone(),
                    backward.f1.clone(),
                    backward.f2.clone(),
                )
                .is_ok()
                {
                    return Some(forward);
                }
            }
        }
    }
    None
}

/// A short exact sequence of crossed modules: a level-wise injective
/// `kappa` followed by a level-wise surjective `alpha` whose kernel is
/// exactly the image of `kappa`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSequence {
    n: CrossedModule,
    t: CrossedModule,
    q: CrossedModule,
    kappa: XModMorphism,
    alpha: XModMorphism,
}

impl ExactSequence {
    pub fn new(kappa: XModMorphism, alpha: XModMorphism) -> Result<ExactSequence, XModError> {
        if kappa.target() != alpha.source() {
            return Err(XModError::ComponentMismatch(
                "kernel inclusion and projection do not chain".to_string(),
            ));
        }
        if !kappa.f1.is_injective() {
            return Err(XModError::NotInjectiveLevel { level: 1 });
        }
        if !kappa.f2.is_injective() {
            return Err(XModError::NotInjectiveLevel { level: 2 });
        }
        if !alpha.f1.is_surjective() {
            return Err(XModError::NotSurjectiveLevel { level: 1 });
        }
        if !alpha.f2.is_surjective() {
            return Err(XModError::NotSurjectiveLevel { level: 2 });
        }
        let check = |level: u8, image: &Subgroup, ker: &Subgroup| -> Result<(), XModError> {
            if image.members() != ker.members() {
                let witness = ker
                    .members()
                    .iter()
                    .copied()
                    .find(|&x| !image.contains(x))
                    .or_else(|| {
                        image
                            .members()
                            .iter()
                            .copied()
                            .find(|&x| !ker.contains(x))
                    })
                    .unwrap_or(0);
                return Err(XModError::NotExactAt { level, witness });
            }
            Ok(())
        };
        check(1, &kappa.f1.image_subgroup(), &alpha.f1.kernel())?;
        check(2, &kappa.f2.image_subgroup(), &alpha.f2.kernel())?;
        Ok(ExactSequence {
            n: kappa.source().clone(),
            t: kappa.target().clone(),
            q: alpha.target().clone(),
            kappa,
            alpha,
        })
    }

    pub fn n(&self) -> &CrossedModule {
        &self.n
    }

    pub fn t(&self) -> &CrossedModule {
        &self.t
    }

    pub fn q(&self) -> &CrossedModule {
        &self.q
    }

    pub fn kappa(&self) -> &XModMorphism {
        &self.kappa
    }

    pub fn alpha(&self) -> &XModMorphism {
        &self.alpha
    }
}
