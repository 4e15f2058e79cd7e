//! Finite agent models: worlds, valuations and the two preference orders.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::BitSet;
use crate::error::Error;
use crate::formula::{Atom, Formula, OrderKind, PlanSymbol};
use crate::order::Preorder;

/// A set of worlds, addressed by position within one model.
pub type WorldSet = BitSet;

/// Assignments are packed into a `u64`.
pub const MAX_ATOMS: usize = 64;

/// Largest atom set for which all valuations are enumerated.
pub const MAX_ENUMERATED_ATOMS: usize = 12;

/// Identity of a world, stable across restrictions of one model.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct WorldId(pub u32);

impl fmt::Display for WorldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The ordered atom set `P`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Signature {
    atoms: Vec<Atom>,
}

impl Signature {
    pub fn new(atoms: Vec<Atom>) -> Result<Self, Error> {
        if atoms.len() > MAX_ATOMS {
            return Err(Error::TooManyAtoms {
                count: atoms.len(),
                max: MAX_ATOMS,
            });
        }
        let mut seen = BTreeSet::new();
        for a in &atoms {
            if !seen.insert(a) {
                return Err(Error::DuplicateAtom(a.to_string()));
            }
        }
        Ok(Signature { atoms })
    }

    pub fn from_names<'a, I: IntoIterator<Item = &'a str>>(names: I) -> Result<Self, Error> {
        Self::new(names.into_iter().map(Atom::new).collect::<Result<_, _>>()?)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn index_of(&self, atom: &Atom) -> Option<usize> {
        self.atoms.iter().position(|a| a == atom)
    }

    /// Every valuation over the signature, sorted by bit string with the
    /// first atom as the most significant bit.
    pub fn all_assignments(&self) -> Result<Vec<Assignment>, Error> {
        let n = self.len();
        if n > MAX_ENUMERATED_ATOMS {
            return Err(Error::TooManyAtoms {
                count: n,
                max: MAX_ENUMERATED_ATOMS,
            });
        }
        Ok((0u64..1 << n)
            .map(|v| {
                let mut a = Assignment::default();
                for i in 0..n {
                    if v & (1 << (n - 1 - i)) != 0 {
                        a.set(i, true);
                    }
                }
                a
            })
            .collect())
    }

    /// Checks that every atom of `f` belongs to the signature.
    pub fn check_atoms(&self, f: &Formula) -> Result<(), Error> {
        match f.atoms().into_iter().find(|a| self.index_of(a).is_none()) {
            Some(a) => Err(Error::UnknownAtom(a.to_string())),
            None => Ok(()),
        }
    }

    /// Truth of a propositional formula at an assignment.
    pub fn satisfies(&self, assignment: Assignment, f: &Formula) -> Result<bool, Error> {
        f.eval_propositional(&|a: &Atom| {
            self.index_of(a)
                .map(|i| assignment.get(i))
                .ok_or_else(|| Error::UnknownAtom(a.to_string()))
        })
    }

    /// Renders an assignment as a bit string in signature order, e.g. `10`.
    pub fn bits(&self, assignment: Assignment) -> String {
        (0..self.len())
            .map(|i| if assignment.get(i) { '1' } else { '0' })
            .collect()
    }
}

/// Truth values of the signature's atoms at one world; bit `i` is atom `i`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Assignment(pub u64);

impl Assignment {
    #[inline]
    pub fn get(self, atom: usize) -> bool {
        self.0 & (1 << atom) != 0
    }

    pub fn set(&mut self, atom: usize, value: bool) {
        if value {
            self.0 |= 1 << atom;
        } else {
            self.0 &= !(1 << atom);
        }
    }
}

/// A finite model with a single preference order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PreferenceModel {
    pub signature: Signature,
    pub ids: Vec<WorldId>,
    pub assignments: Vec<Assignment>,
    pub order: Preorder,
}

impl PreferenceModel {
    pub fn new(signature: Signature, worlds: Vec<(WorldId, Assignment)>, order: Preorder) -> Result<Self, Error> {
        let (ids, assignments) = check_worlds(&signature, worlds)?;
        check_order(OrderKind::Plausibility, &order, ids.len())?;
        Ok(PreferenceModel {
            signature,
            ids,
            assignments,
            order,
        })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

fn check_worlds(
    signature: &Signature,
    worlds: Vec<(WorldId, Assignment)>,
) -> Result<(Vec<WorldId>, Vec<Assignment>), Error> {
    let mut seen = BTreeSet::new();
    let used_bits = if signature.len() == 64 {
        !0
    } else {
        (1u64 << signature.len()) - 1
    };
    for (id, a) in &worlds {
        if !seen.insert(*id) {
            return Err(Error::DuplicateWorld(id.0));
        }
        if a.0 & !used_bits != 0 {
            return Err(Error::UnknownAtom(alloc::format!(
                "#{}",
                63 - (a.0 & !used_bits).leading_zeros()
            )));
        }
    }
    Ok(worlds.into_iter().unzip())
}

fn check_order(kind: OrderKind, order: &Preorder, n: usize) -> Result<(), Error> {
    if order.size() != n {
        return Err(Error::SizeMismatch {
            what: "order carrier",
            expected: n,
            found: order.size(),
        });
    }
    order.validate().map_err(|violation| Error::InvalidOrder {
        order: kind.tag(),
        violation,
    })
}

/// Worlds with a plausibility and a desirability preorder.
///
/// Worlds are addressed by position `0..len()`; `id(i)` gives the stable
/// identity. Distinct worlds may share an assignment.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AgentModel {
    signature: Signature,
    ids: Vec<WorldId>,
    assignments: Vec<Assignment>,
    plausibility: Preorder,
    desirability: Preorder,
}

impl AgentModel {
    pub fn new(
        signature: Signature,
        worlds: Vec<(WorldId, Assignment)>,
        plausibility: Preorder,
        desirability: Preorder,
    ) -> Result<Self, Error> {
        let (ids, assignments) = check_worlds(&signature, worlds)?;
        check_order(OrderKind::Plausibility, &plausibility, ids.len())?;
        check_order(OrderKind::Desirability, &desirability, ids.len())?;
        Ok(AgentModel {
            signature,
            ids,
            assignments,
            plausibility,
            desirability,
        })
    }

    pub(crate) fn from_parts_unchecked(
        signature: Signature,
        ids: Vec<WorldId>,
        assignments: Vec<Assignment>,
        plausibility: Preorder,
        desirability: Preorder,
    ) -> Self {
        AgentModel {
            signature,
            ids,
            assignments,
            plausibility,
            desirability,
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, position: usize) -> WorldId {
        self.ids[position]
    }

    pub fn ids(&self) -> &[WorldId] {
        &self.ids
    }

    pub fn position(&self, id: WorldId) -> Option<usize> {
        self.ids.iter().position(|&w| w == id)
    }

    pub fn assignment(&self, position: usize) -> Assignment {
        self.assignments[position]
    }

    pub fn assignments(&self) -> &[Assignment] {
        &self.assignments
    }

    pub fn order(&self, kind: OrderKind) -> &Preorder {
        match kind {
            OrderKind::Plausibility => &self.plausibility,
            OrderKind::Desirability => &self.desirability,
        }
    }

    pub fn all(&self) -> WorldSet {
        WorldSet::full(self.len())
    }

    /// Worlds where `atom` is true.
    pub fn valuation(&self, atom: &Atom) -> Result<WorldSet, Error> {
        let i = self
            .signature
            .index_of(atom)
            .ok_or_else(|| Error::UnknownAtom(atom.to_string()))?;
        Ok(WorldSet::from_indices(
            self.len(),
            (0..self.len()).filter(|&w| self.assignments[w].get(i)),
        ))
    }

    /// Extension of a propositional formula.
    pub fn truth_set(&self, f: &Formula) -> Result<WorldSet, Error> {
        if !f.is_propositional() {
            return Err(Error::NotPropositional(f.to_string()));
        }
        self.signature.check_atoms(f)?;
        let mut out = WorldSet::empty(self.len());
        for (w, a) in self.assignments.iter().enumerate() {
            if self.signature.satisfies(*a, f)? {
                out.insert(w);
            }
        }
        Ok(out)
    }

    /// Positions of the given world ids.
    pub fn positions_of(&self, ids: &[WorldId]) -> Result<WorldSet, Error> {
        let mut out = WorldSet::empty(self.len());
        for id in ids {
            out.insert(self.position(*id).ok_or(Error::UnknownWorld(id.0))?);
        }
        Ok(out)
    }

    /// Most preferred worlds among `ids` under one order.
    pub fn min_worlds(&self, kind: OrderKind, ids: &[WorldId]) -> Result<Vec<WorldId>, Error> {
        let s = self.positions_of(ids)?;
        Ok(self.order(kind).min_set(&s).iter().map(|w| self.ids[w]).collect())
    }

    /// Keeps only the worlds in `keep`; orders and valuation are restricted.
    pub fn restrict(&self, keep: &WorldSet) -> AgentModel {
        AgentModel {
            signature: self.signature.clone(),
            ids: keep.iter().map(|w| self.ids[w]).collect(),
            assignments: keep.iter().map(|w| self.assignments[w]).collect(),
            plausibility: self.plausibility.restrict(keep),
            desirability: self.desirability.restrict(keep),
        }
    }

    pub fn with_order(&self, kind: OrderKind, order: Preorder) -> AgentModel {
        assert_eq!(order.size(), self.len());
        let mut out = self.clone();
        match kind {
            OrderKind::Plausibility => out.plausibility = order,
            OrderKind::Desirability => out.desirability = order,
        }
        out
    }

    pub(crate) fn with_assignments(mut self, assignments: Vec<Assignment>) -> AgentModel {
        assert_eq!(assignments.len(), self.len());
        self.assignments = assignments;
        self
    }

    /// The single-order model behind one of the two orders.
    pub fn preference_model(&self, kind: OrderKind) -> PreferenceModel {
        PreferenceModel {
            signature: self.signature.clone(),
            ids: self.ids.clone(),
            assignments: self.assignments.clone(),
            order: self.order(kind).clone(),
        }
    }

    /// A pair of worlds sharing an assignment, if any.
    pub fn valuation_collision(&self) -> Option<(WorldId, WorldId)> {
        let mut seen = BTreeMap::new();
        for (w, a) in self.assignments.iter().enumerate() {
            if let Some(&prev) = seen.get(a) {
                return Some((self.ids[prev], self.ids[w]));
            }
            seen.insert(*a, w);
        }
        None
    }

    /// Isomorphism through the bijection that matches worlds with equal
    /// assignments. Both models need injective valuations; otherwise the
    /// answer is `false`.
    pub fn isomorphic(&self, other: &AgentModel) -> bool {
        if self.signature != other.signature
            || self.len() != other.len()
            || self.valuation_collision().is_some()
            || other.valuation_collision().is_some()
        {
            return false;
        }
        let index: BTreeMap<Assignment, usize> = other.assignments.iter().enumerate().map(|(w, a)| (*a, w)).collect();
        let Some(map) = self
            .assignments
            .iter()
            .map(|a| index.get(a).copied())
            .collect::<Option<Vec<usize>>>()
        else {
            return false;
        };
        let n = self.len();
        [OrderKind::Plausibility, OrderKind::Desirability].iter().all(|&k| {
            let (a, b) = (self.order(k), other.order(k));
            (0..n).all(|i| (0..n).all(|j| a.le(i, j) == b.le(map[i], map[j])))
        })
    }
}

/// An agent model together with the plans the agent has adopted.
///
/// Models built through [`PracticalAgentModel::new`] have a consistent
/// intention set. Dynamic operations carry intentions over unchanged, so
/// their results may not; [`crate::dynamics::filter_intentions`] restores it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PracticalAgentModel {
    pub model: AgentModel,
    pub intentions: BTreeSet<PlanSymbol>,
}

impl PracticalAgentModel {
    /// Checks consistency of `intentions` against the library before wrapping.
    pub fn new(
        model: AgentModel,
        lib: &crate::plans::PlanLibrary,
        intentions: BTreeSet<PlanSymbol>,
    ) -> Result<Self, Error> {
        crate::plans::check_p_consistency(&model, lib, &intentions)?;
        Ok(PracticalAgentModel { model, intentions })
    }

    pub fn without_intentions(model: AgentModel) -> Self {
        PracticalAgentModel {
            model,
            intentions: BTreeSet::new(),
        }
    }

    pub fn with_intentions_unchecked(model: AgentModel, intentions: BTreeSet<PlanSymbol>) -> Self {
        PracticalAgentModel { model, intentions }
    }

    pub fn map_model(&self, f: impl FnOnce(&AgentModel) -> AgentModel) -> Self {
        PracticalAgentModel {
            model: f(&self.model),
            intentions: self.intentions.clone(),
        }
    }

    pub fn isomorphic(&self, other: &PracticalAgentModel) -> bool {
        self.intentions == other.intentions && self.model.isomorphic(&other.model)
    }
}
