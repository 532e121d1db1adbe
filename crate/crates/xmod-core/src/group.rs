//! Finite groups given by full multiplication tables.
//!
//! Elements are the indices `0..order` with `0` the identity. Every
//! constructor validates the group axioms exhaustively, which is cheap at
//! the orders supported here and turns structural assumptions elsewhere in
//! the crate into hard assertions.

use std::fmt;

use thiserror::Error;

use crate::perm::Perm;

/// Hard cap on group orders; the table representation is quadratic.
pub const MAX_GROUP_ORDER: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is empty")]
    EmptyTable,
    #[error("multiplication table is not square: row {row} has {found} entries, expected {order}")]
    NotSquare { row: usize, found: usize, order: usize },
    #[error("table entry {entry} at ({a}, {b}) is out of range for order {order}")]
    EntryOutOfRange { a: usize, b: usize, entry: usize, order: usize },
    #[error("group order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("not associative at ({a}, {b}, {c}): ({a}*{b})*{c} = {left} but {a}*({b}*{c}) = {right}")]
    NotAssociative { a: usize, b: usize, c: usize, left: usize, right: usize },
    #[error("element 0 is not a two-sided identity; witness element {witness}")]
    NoIdentity { witness: usize },
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("the given generators span only {spanned} of {order} elements")]
    GeneratorsDoNotGenerate { spanned: usize, order: usize },
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("not a permutation of 1..={degree}: {reason}")]
    NotAPermutation { degree: usize, reason: String },
    #[error("subgroup is not normal: {conjugator}*{member}*{conjugator}^-1 = {conjugate} lies outside")]
    NotNormal { conjugator: usize, member: usize, conjugate: usize },
    #[error("member set is not a subgroup: {reason}")]
    NotASubgroup { reason: String },
    #[error("map is not a homomorphism at ({a}, {b})")]
    NotAHomomorphism { a: usize, b: usize },
    #[error("map does not send the identity to the identity")]
    IdentityNotPreserved,
    #[error("map has {found} entries, expected {expected}")]
    WrongLength { found: usize, expected: usize },
    #[error("map is not bijective")]
    NotBijective,
    #[error("operands belong to different ambient groups")]
    MismatchedAmbient,
    #[error("action of element {actor} is not an automorphism")]
    ActionRowNotAutomorphism { actor: usize },
    #[error("action incompatible with multiplication at ({a}, {b}) on {x}")]
    ActionNotCompatible { a: usize, b: usize, x: usize },
    #[error("action of the identity moves {x}")]
    ActionIdentityMoves { x: usize },
}

/// A finite group with a full multiplication table; element 0 is the identity.
#[derive(Clone)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    generators: Vec<usize>,
    /// Permutation labels when the group was built from permutations.
    perms: Option<Vec<Perm>>,
    name: Option<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteGroup(order {}, name {:?})",
            self.order(),
            self.name
        )
    }
}

/// Extensional equality: same multiplication table. Names, generator
/// choices, and permutation labels are presentation metadata.
impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}
impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validates a multiplication table as a group. If `generators` is
    /// omitted a greedy generating list is computed: repeatedly adjoin the
    /// smallest-index element not yet generated.
    pub fn from_table(
        table: Vec<Vec<usize>>,
        generators: Option<Vec<usize>>,
        name: Option<String>,
    ) -> Result<FiniteGroup, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::EmptyTable);
        }
        if order > MAX_GROUP_ORDER {
            return Err(GroupError::OrderTooLarge {
                order,
                max: MAX_GROUP_ORDER,
            });
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != order {
                return Err(GroupError::NotSquare {
                    row,
                    found: entries.len(),
                    order,
                });
            }
            for (b, &entry) in entries.iter().enumerate() {
                if entry >= order {
                    return Err(GroupError::EntryOutOfRange {
                        a: row,
                        b,
                        entry,
                        order,
                    });
                }
            }
        }
        for x in 0..order {
            if table[0][x] != x || table[x][0] != x {
                return Err(GroupError::NoIdentity { witness: x });
            }
        }
        let mut inverses = vec![usize::MAX; order];
        for a in 0..order {
            match (0..order).find(|&b| table[a][b] == 0 && table[b][a] == 0) {
                Some(b) => inverses[a] = b,
                None => return Err(GroupError::NoInverse { element: a }),
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    let left = table[table[a][b]][c];
                    let right = table[a][table[b][c]];
                    if left != right {
                        return Err(GroupError::NotAssociative { a, b, c, left, right });
                    }
                }
            }
        }
        let generators = match generators {
            Some(gens) => {
                for &g in &gens {
                    if g >= order {
                        return Err(GroupError::IndexOutOfRange { index: g, order });
                    }
                }
                let spanned = closure(&table, gens.iter().copied());
                if spanned.len() != order {
                    return Err(GroupError::GeneratorsDoNotGenerate {
                        spanned: spanned.len(),
                        order,
                    });
                }
                gens
            }
            None => greedy_generators(&table),
        };
        Ok(FiniteGroup {
            table,
            inverses,
            generators,
            perms: None,
            name,
        })
    }

    /// The subgroup of the symmetric group on `degree` points generated by
    /// `perms`: identity first, remaining elements in breadth-first
    /// discovery order (right multiplication by the given generators).
    pub fn from_permutations(
        degree: usize,
        perms: &[Perm],
        name: Option<String>,
    ) -> Result<FiniteGroup, GroupError> {
        for p in perms {
            if p.degree() != degree {
                return Err(GroupError::NotAPermutation {
                    degree,
                    reason: format!("degree {} does not match", p.degree()),
                });
            }
        }
        let mut elements: Vec<Perm> = vec![Perm::identity(degree)];
        let mut queue = 0usize;
        while queue < elements.len() {
            let current = elements[queue].clone();
            queue += 1;
            for generator in perms {
                let next = current.compose(generator);
                if !elements.contains(&next) {
                    if elements.len() == MAX_GROUP_ORDER {
                        return Err(GroupError::OrderTooLarge {
                            order: MAX_GROUP_ORDER + 1,
                            max: MAX_GROUP_ORDER,
                        });
                    }
                    elements.push(next);
                }
            }
        }
        let order = elements.len();
        let index_of = |p: &Perm| elements.iter().position(|q| q == p).unwrap();
        let mut table = vec![vec![0; order]; order];
        for a in 0..order {
            for b in 0..order {
                table[a][b] = index_of(&elements[a].compose(&elements[b]));
            }
        }
        let mut generators: Vec<usize> = Vec::new();
        for p in perms {
            let i = index_of(p);
            if !generators.contains(&i) {
                generators.push(i);
            }
        }
        if generators.is_empty() {
            generators.push(0);
        }
        let mut group = FiniteGroup::from_table(table, Some(generators), name)?;
        group.perms = Some(elements);
        Ok(group)
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::from_table(vec![vec![0]], None, Some("1".to_string()))
            .expect("trivial table is a group")
    }

    pub fn cyclic(n: usize, name: Option<String>) -> Result<FiniteGroup, GroupError> {
        let table = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        FiniteGroup::from_table(table, None, name)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: Option<String>) {
        self.name = name;
    }

    /// Permutation labels; present when built from permutations.
    pub fn perm_labels(&self) -> Option<&[Perm]> {
        self.perms.as_deref()
    }

    pub fn element_by_perm(&self, p: &Perm) -> Option<usize> {
        self.perms.as_ref()?.iter().position(|q| q == p)
    }

    /// Cycle-notation label when available, otherwise `e` / `g<i>`.
    pub fn element_label(&self, x: usize) -> String {
        match &self.perms {
            Some(perms) => perms[x].to_string(),
            None if x == 0 => "e".to_string(),
            None => format!("g{x}"),
        }
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut power = x;
        let mut n = 1;
        while power != 0 {
            power = self.mul(power, x);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted multiset of element orders; an isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut profile: Vec<usize> = self.elements().map(|x| self.element_order(x)).collect();
        profile.sort_unstable();
        profile
    }

    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup {
            ambient: self.clone(),
            members: self.elements().collect(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            ambient: self.clone(),
            members: vec![0],
        }
    }
}

fn closure(table: &[Vec<usize>], seed: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let order = table.len();
    let mut in_set = vec![false; order];
    in_set[0] = true;
    let mut members = vec![0];
    for s in seed {
        if !in_set[s] {
            in_set[s] = true;
            members.push(s);
        }
    }
    loop {
        let mut grew = false;
        let snapshot = members.clone();
        for &a in &snapshot {
            for &b in &snapshot {
                let p = table[a][b];
                if !in_set[p] {
                    in_set[p] = true;
                    members.push(p);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    members.sort_unstable();
    members
}

fn greedy_generators(table: &[Vec<usize>]) -> Vec<usize> {
    let order = table.len();
    let mut gens: Vec<usize> = Vec::new();
    let mut spanned = closure(table, gens.iter().copied());
    while spanned.len() < order {
        let next = (0..order)
            .find(|x| spanned.binary_search(x).is_err())
            .expect("span is proper");
        gens.push(next);
        spanned = closure(table, gens.iter().copied());
    }
    if gens.is_empty() {
        gens.push(0);
    }
    gens
}

/// A subgroup, stored as the sorted member list together with its ambient
/// group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    ambient: FiniteGroup,
    members: Vec<usize>,
}

impl Subgroup {
    /// Validates that `members` is a subgroup of `ambient`.
    pub fn new(
        ambient: &FiniteGroup,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Subgroup, GroupError> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            if m >= ambient.order() {
                return Err(GroupError::IndexOutOfRange {
                    index: m,
                    order: ambient.order(),
                });
            }
        }
        if members.binary_search(&0).is_err() {
            return Err(GroupError::NotASubgroup {
                reason: "identity missing".to_string(),
            });
        }
        for &a in &members {
            if members.binary_search(&ambient.inv(a)).is_err() {
                return Err(GroupError::NotASubgroup {
                    reason: format!("inverse of {a} missing"),
                });
            }
            for &b in &members {
                let p = ambient.mul(a, b);
                if members.binary_search(&p).is_err() {
                    return Err(GroupError::NotASubgroup {
                        reason: format!("{a}*{b} = {p} missing"),
                    });
                }
            }
        }
        Ok(Subgroup {
            ambient: ambient.clone(),
            members,
        })
    }

    pub fn ambient(&self) -> &FiniteGroup {
        &self.ambient
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_full(&self) -> bool {
        self.order() == self.ambient.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Position of `x` in the member list.
    pub fn index_of(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    pub fn is_normal(&self) -> Result<(), GroupError> {
        for g in self.ambient.elements() {
            for &n in &self.members {
                let c = self.ambient.conjugate(g, n);
                if !self.contains(c) {
                    return Err(GroupError::NotNormal {
                        conjugator: g,
                        member: n,
                        conjugate: c,
                    });
                }
            }
        }
        Ok(())
    }

    /// Realizes the subgroup as a group in its own right (members in sorted
    /// order, so the identity stays first) with the inclusion homomorphism.
    pub fn as_group(&self, name: Option<String>) -> (FiniteGroup, GroupHom) {
        let n = self.order();
        let position = |x: usize| self.index_of(x).expect("closed under multiplication");
        let mut table = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                table[i][j] = position(self.ambient.mul(self.members[i], self.members[j]));
            }
        }
        let mut group =
            FiniteGroup::from_table(table, None, name).expect("subgroup closure yields a group");
        if let Some(perms) = &self.ambient.perms {
            group.perms = Some(self.members.iter().map(|&m| perms[m].clone()).collect());
        }
        let inclusion = GroupHom::new(&group, &self.ambient, self.members.clone())
            .expect("inclusion of a subgroup is a homomorphism");
        (group, inclusion)
    }
}

/// Smallest subgroup of `g` containing `seed`: closure under multiplication.
pub fn subgroup_generated(g: &FiniteGroup, seed: &[usize]) -> Result<Subgroup, GroupError> {
    for &s in seed {
        if s >= g.order() {
            return Err(GroupError::IndexOutOfRange {
                index: s,
                order: g.order(),
            });
        }
    }
    Ok(Subgroup {
        ambient: g.clone(),
        members: closure(&g.table, seed.iter().copied()),
    })
}

/// The centre { x : xy = yx for all y }.
pub fn center(g: &FiniteGroup) -> Subgroup {
    let members = g
        .elements()
        .filter(|&x| g.elements().all(|y| g.mul(x, y) == g.mul(y, x)))
        .collect::<Vec<_>>();
    Subgroup {
        ambient: g.clone(),
        members,
    }
}

/// An action of `actor` on `acted` by group automorphisms.
#[derive(Clone, Debug)]
pub struct ActionByAutomorphisms {
    actor: FiniteGroup,
    acted: FiniteGroup,
    table: Vec<Vec<usize>>,
}

impl PartialEq for ActionByAutomorphisms {
    fn eq(&self, other: &Self) -> bool {
        self.actor == other.actor && self.acted == other.acted && self.table == other.table
    }
}
impl Eq for ActionByAutomorphisms {}

impl ActionByAutomorphisms {
    pub fn new(
        actor: &FiniteGroup,
        acted: &FiniteGroup,
        table: Vec<Vec<usize>>,
    ) -> Result<ActionByAutomorphisms, GroupError> {
        if table.len() != actor.order() {
            return Err(GroupError::WrongLength {
                found: table.len(),
                expected: actor.order(),
            });
        }
        for (b, row) in table.iter().enumerate() {
            if row.len() != acted.order() {
                return Err(GroupError::WrongLength {
                    found: row.len(),
                    expected: acted.order(),
                });
            }
            for &x in row {
                if x >= acted.order() {
                    return Err(GroupError::IndexOutOfRange {
                        index: x,
                        order: acted.order(),
                    });
                }
            }
            // each row must be a bijective endomorphism
            let mut seen = vec![false; acted.order()];
            for &x in row {
                if seen[x] {
                    return Err(GroupError::ActionRowNotAutomorphism { actor: b });
                }
                seen[x] = true;
            }
            for x in acted.elements() {
                for y in acted.elements() {
                    if row[acted.mul(x, y)] != acted.mul(row[x], row[y]) {
                        return Err(GroupError::ActionRowNotAutomorphism { actor: b });
                    }
                }
            }
        }
        for x in acted.elements() {
            if table[0][x] != x {
                return Err(GroupError::ActionIdentityMoves { x });
            }
        }
        for a in actor.elements() {
            for b in actor.elements() {
                for x in acted.elements() {
                    if table[actor.mul(a, b)][x] != table[a][table[b][x]] {
                        return Err(GroupError::ActionNotCompatible { a, b, x });
                    }
                }
            }
        }
        Ok(ActionByAutomorphisms {
            actor: actor.clone(),
            acted: acted.clone(),
            table,
        })
    }

    /// The trivial action: every actor element fixes everything.
    pub fn trivial(actor: &FiniteGroup, acted: &FiniteGroup) -> ActionByAutomorphisms {
        let row: Vec<usize> = acted.elements().collect();
        ActionByAutomorphisms {
            actor: actor.clone(),
            acted: acted.clone(),
            table: vec![row; actor.order()],
        }
    }

    /// Conjugation of a group on itself.
    pub fn conjugation(g: &FiniteGroup) -> ActionByAutomorphisms {
        let table = g
            .elements()
            .map(|a| g.elements().map(|x| g.conjugate(a, x)).collect())
            .collect();
        ActionByAutomorphisms {
            actor: g.clone(),
            acted: g.clone(),
            table,
        }
    }

    pub fn actor(&self) -> &FiniteGroup {
        &self.actor
    }

    pub fn acted(&self) -> &FiniteGroup {
        &self.acted
    }

    pub fn apply(&self, b: usize, x: usize) -> usize {
        self.table[b][x]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

/// Conjugation of `g` on a normal subgroup `n`, with `n` realized as a group
/// in its own right.
pub fn conjugation_action(
    g: &FiniteGroup,
    n: &Subgroup,
) -> Result<ActionByAutomorphisms, GroupError> {
    if n.ambient() != g {
        return Err(GroupError::MismatchedAmbient);
    }
    n.is_normal()?;
    let (acted, _) = n.as_group(None);
    let table = g
        .elements()
        .map(|a| {
            n.members()
                .iter()
                .map(|&x| {
                    n.index_of(g.conjugate(a, x))
                        .expect("normality keeps conjugates inside")
                })
                .collect()
        })
        .collect();
    ActionByAutomorphisms::new(g, &acted, table)
}

/// Closure of `seed` under the action: the subgroup generated by all
/// `act(g, s)`. With conjugation this is the normal closure.
pub fn action_closure(
    act: &ActionByAutomorphisms,
    seed: &[usize],
) -> Result<Subgroup, GroupError> {
    for &s in seed {
        if s >= act.acted.order() {
            return Err(GroupError::IndexOutOfRange {
                index: s,
                order: act.acted.order(),
            });
        }
    }
    let mut gens = Vec::new();
    for b in act.actor.elements() {
        for &s in seed {
            gens.push(act.apply(b, s));
        }
    }
    subgroup_generated(&act.acted, &gens)
}

/// Subgroup of the acted group generated by the displacements
/// `act(a, b) * b^-1` with `a` drawn from `actor_set` and `b` from
/// `acted_set`. With conjugation this computes commutator subgroups.
pub fn displacement_subgroup(
    act: &ActionByAutomorphisms,
    actor_set: &[usize],
    acted_set: &[usize],
) -> Result<Subgroup, GroupError> {
    for &a in actor_set {
        if a >= act.actor.order() {
            return Err(GroupError::IndexOutOfRange {
                index: a,
                order: act.actor.order(),
            });
        }
    }
    for &b in acted_set {
        if b >= act.acted.order() {
            return Err(GroupError::IndexOutOfRange {
                index: b,
                order: act.acted.order(),
            });
        }
    }
    let mut gens = Vec::new();
    for &a in actor_set {
        for &b in acted_set {
            gens.push(act.acted.mul(act.apply(a, b), act.acted.inv(b)));
        }
    }
    subgroup_generated(&act.acted, &gens)
}

/// Quotient of `g` by a normal subgroup. Cosets are ordered by their
/// minimal member, so the identity coset comes first. Returns the quotient
/// together with the projection homomorphism.
pub fn quotient_group(
    g: &FiniteGroup,
    n: &Subgroup,
) -> Result<(FiniteGroup, GroupHom), GroupError> {
    if n.ambient() != g {
        return Err(GroupError::MismatchedAmbient);
    }
    n.is_normal()?;
    let order = g.order();
    let mut coset_of = vec![usize::MAX; order];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..order {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &m in n.members() {
            coset_of[g.mul(x, m)] = id;
        }
    }
    let q_order = reps.len();
    let mut table = vec![vec![0; q_order]; q_order];
    for i in 0..q_order {
        for j in 0..q_order {
            table[i][j] = coset_of[g.mul(reps[i], reps[j])];
        }
    }
    let quotient = FiniteGroup::from_table(table, None, None)?;
    let projection = GroupHom::new(g, &quotient, coset_of)?;
    Ok((quotient, projection))
}

/// A total homomorphism between finite groups, stored as the image table.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    image: Vec<usize>,
}

/// Extensional equality on source, target, and image table.
impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.image == other.image
    }
}
impl Eq for GroupHom {}

impl GroupHom {
    pub fn new(
        source: &FiniteGroup,
        target: &FiniteGroup,
        image: Vec<usize>,
    ) -> Result<GroupHom, GroupError> {
        if image.len() != source.order() {
            return Err(GroupError::WrongLength {
                found: image.len(),
                expected: source.order(),
            });
        }
        for &y in &image {
            if y >= target.order() {
                return Err(GroupError::IndexOutOfRange {
                    index: y,
                    order: target.order(),
                });
            }
        }
        if image[0] != 0 {
            return Err(GroupError::IdentityNotPreserved);
        }
        for a in source.elements() {
            for b in source.elements() {
                if image[source.mul(a, b)] != target.mul(image[a], image[b]) {
                    return Err(GroupError::NotAHomomorphism { a, b });
                }
            }
        }
        Ok(GroupHom {
            source: source.clone(),
            target: target.clone(),
            image,
        })
    }

    pub fn identity(g: &FiniteGroup) -> GroupHom {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            image: g.elements().collect(),
        }
    }

    pub fn trivial(source: &FiniteGroup, target: &FiniteGroup) -> GroupHom {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            image: vec![0; source.order()],
        }
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn is_trivial(&self) -> bool {
        self.image.iter().all(|&y| y == 0)
    }

    /// `outer` after `inner`.
    pub fn compose(outer: &GroupHom, inner: &GroupHom) -> Result<GroupHom, GroupError> {
        if inner.target != outer.source {
            return Err(GroupError::MismatchedAmbient);
        }
        Ok(GroupHom {
            source: inner.source.clone(),
            target: outer.target.clone(),
            image: inner.image.iter().map(|&x| outer.image[x]).collect(),
        })
    }

    pub fn kernel(&self) -> Subgroup {
        let members = self
            .source
            .elements()
            .filter(|&x| self.image[x] == 0)
            .collect::<Vec<_>>();
        Subgroup {
            ambient: self.source.clone(),
            members,
        }
    }

    pub fn image_subgroup(&self) -> Subgroup {
        let mut members = self.image.clone();
        members.sort_unstable();
        members.dedup();
        Subgroup {
            ambient: self.target.clone(),
            members,
        }
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_subgroup().order() == self.target.order()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective() && self.is_surjective()
    }

    pub fn inverse(&self) -> Result<GroupHom, GroupError> {
        if !self.is_bijective() {
            return Err(GroupError::NotBijective);
        }
        let mut image = vec![0; self.target.order()];
        for x in self.source.elements() {
            image[self.image[x]] = x;
        }
        GroupHom::new(&self.target, &self.source, image)
    }
}

/// Breadth-first spanning data: for each non-identity element, a pair
/// (earlier element, generator position) whose product reaches it.
fn bfs_expressions(g: &FiniteGroup) -> Vec<(usize, Option<(usize, usize)>)> {
    let gens = g.generators();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; g.order()];
    let mut order_visited = vec![0usize];
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut head = 0;
    while head < order_visited.len() {
        let e = order_visited[head];
        head += 1;
        for (gi, &gen) in gens.iter().enumerate() {
            let n = g.mul(e, gen);
            if !seen[n] {
                seen[n] = true;
                parent[n] = Some((e, gi));
                order_visited.push(n);
            }
        }
    }
    debug_assert_eq!(order_visited.len(), g.order());
    order_visited.into_iter().map(|e| (e, parent[e])).collect()
}

fn extend_assignment(
    g: &FiniteGroup,
    h: &FiniteGroup,
    bfs: &[(usize, Option<(usize, usize)>)],
    gen_images: &[usize],
) -> Vec<usize> {
    let mut image = vec![0usize; g.order()];
    for &(e, link) in bfs {
        if let Some((prev, gi)) = link {
            image[e] = h.mul(image[prev], gen_images[gi]);
        }
    }
    image
}

fn is_homomorphism(g: &FiniteGroup, h: &FiniteGroup, image: &[usize]) -> bool {
    for a in g.elements() {
        for b in g.elements() {
            if image[g.mul(a, b)] != h.mul(image[a], image[b]) {
                return false;
            }
        }
    }
    true
}

/// All homomorphisms `g -> h`, found by assigning images to the generators
/// of `g` and verifying the extension. Ordered lexicographically by the
/// tuple of generator images.
pub fn hom_enumeration(g: &FiniteGroup, h: &FiniteGroup) -> Vec<GroupHom> {
    enumerate_by_generator_images(g, h, false)
}

/// All isomorphisms `g -> h`, in the same deterministic order.
pub fn isomorphism_enumeration(g: &FiniteGroup, h: &FiniteGroup) -> Vec<GroupHom> {
    if g.order() != h.order() || g.order_profile() != h.order_profile() {
        return Vec::new();
    }
    enumerate_by_generator_images(g, h, true)
}

fn enumerate_by_generator_images(
    g: &FiniteGroup,
    h: &FiniteGroup,
    bijective_only: bool,
) -> Vec<GroupHom> {
    let gens = g.generators();
    let bfs = bfs_expressions(g);
    // candidate images per generator: element orders must be compatible
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&gen| {
            let n = g.element_order(gen);
            h.elements()
                .filter(|&y| {
                    let m = h.element_order(y);
                    if bijective_only {
                        m == n
                    } else {
                        n % m == 0
                    }
                })
                .collect()
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return Vec::new();
    }
    let mut found = Vec::new();
    let mut cursor = vec![0usize; gens.len()];
    loop {
        let gen_images: Vec<usize> = cursor
            .iter()
            .zip(&candidates)
            .map(|(&c, list)| list[c])
            .collect();
        let image = extend_assignment(g, h, &bfs, &gen_images);
        if is_homomorphism(g, h, &image) {
            let hom = GroupHom {
                source: g.clone(),
                target: h.clone(),
                image,
            };
            if !bijective_only || hom.is_bijective() {
                found.push(hom);
            }
        }
        // advance the odometer
        let mut k = gens.len();
        loop {
            if k == 0 {
                return found;
            }
            k -= 1;
            cursor[k] += 1;
            if cursor[k] < candidates[k].len() {
                break;
            }
            cursor[k] = 0;
        }
    }
}

/// Searches for an isomorphism `g -> h`; `None` when the groups are not
/// isomorphic. Brute force over generator images with order-profile pruning.
pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Option<GroupHom> {
    isomorphism_enumeration(g, h).into_iter().next()
}
