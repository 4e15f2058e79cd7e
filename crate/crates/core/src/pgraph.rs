//! Priority graphs, the lexicographic orders they induce, and agent programs.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::Error;
use crate::formula::{Atom, Formula, OrderKind, PlanSymbol};
use crate::model::{AgentModel, Assignment, PracticalAgentModel, PreferenceModel, Signature, WorldId, WorldSet};
use crate::order::{Preorder, Relation};
use crate::plans::PlanLibrary;

/// A strict partial order over propositional formulas.
///
/// `outranks(i, j)` means node `i` has priority over node `j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PriorityGraph {
    nodes: Vec<Formula>,
    outranks: Relation,
}

impl Default for PriorityGraph {
    fn default() -> Self {
        Self::empty()
    }
}

impl PriorityGraph {
    pub fn empty() -> Self {
        PriorityGraph {
            nodes: Vec::new(),
            outranks: Relation::empty(0),
        }
    }

    /// Builds a graph from nodes and `(higher, lower)` edges; the edges are
    /// closed transitively and must not form a cycle.
    pub fn new(nodes: Vec<Formula>, edges: &[(usize, usize)]) -> Result<Self, Error> {
        let mut seen = BTreeSet::new();
        for f in &nodes {
            if !f.is_propositional() {
                return Err(Error::NotPropositional(f.to_string()));
            }
            if !seen.insert(f) {
                return Err(Error::DuplicateNode(f.to_string()));
            }
        }
        let n = nodes.len();
        if let Some(&(i, j)) = edges.iter().find(|(i, j)| *i >= n || *j >= n) {
            return Err(Error::NodeOutOfRange(i, j));
        }
        let outranks = Relation::from_pairs(n, edges.iter().copied()).transitive_closure();
        if let Some(i) = (0..n).find(|&i| outranks.contains(i, i)) {
            return Err(Error::CyclicPriority(i));
        }
        Ok(PriorityGraph { nodes, outranks })
    }

    /// Ranked formulas: a lower rank outranks every higher rank.
    pub fn from_ranks(nodes: Vec<Formula>, ranks: &[i64]) -> Result<Self, Error> {
        if ranks.len() != nodes.len() {
            return Err(Error::SizeMismatch {
                what: "ranks",
                expected: nodes.len(),
                found: ranks.len(),
            });
        }
        let mut edges = Vec::new();
        for (i, ri) in ranks.iter().enumerate() {
            for (j, rj) in ranks.iter().enumerate() {
                if ri < rj {
                    edges.push((i, j));
                }
            }
        }
        Self::new(nodes, &edges)
    }

    pub fn antichain(nodes: Vec<Formula>) -> Result<Self, Error> {
        Self::new(nodes, &[])
    }

    pub fn nodes(&self) -> &[Formula] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn outranks(&self, i: usize, j: usize) -> bool {
        self.outranks.contains(i, j)
    }

    /// All `(higher, lower)` pairs of the closed priority relation.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.outranks.pairs().collect()
    }

    /// The lexicographic order on `worlds`: `w <= v` iff for every node
    /// `φ`, either `v ⊨ φ` implies `w ⊨ φ`, or some node outranking `φ`
    /// holds at `w` and fails at `v`.
    pub fn induced_order(&self, sig: &Signature, worlds: &[Assignment]) -> Result<Preorder, Error> {
        let n = worlds.len();
        let truth = self
            .nodes
            .iter()
            .map(|f| {
                sig.check_atoms(f)?;
                let mut set = WorldSet::empty(n);
                for (w, a) in worlds.iter().enumerate() {
                    if sig.satisfies(*a, f)? {
                        set.insert(w);
                    }
                }
                Ok(set)
            })
            .collect::<Result<Vec<_>, Error>>()?;
        let falsity: Vec<WorldSet> = truth.iter().map(WorldSet::complement).collect();

        let mut rel = Relation::empty(n);
        for w in 0..n {
            // worlds v with w <= v
            let mut above = WorldSet::full(n);
            for (k, t) in truth.iter().enumerate() {
                if t.contains(w) {
                    continue;
                }
                // w loses on node k against every v satisfying it ...
                let mut losing = t.clone();
                // ... unless a higher node holds at w and fails at v.
                for j in (0..self.len()).filter(|&j| self.outranks(j, k) && truth[j].contains(w)) {
                    losing.difference_with(&falsity[j]);
                }
                above.difference_with(&losing);
            }
            for v in above.iter() {
                rel.insert(w, v);
            }
        }
        Ok(Preorder::from_relation_unchecked(rel))
    }

    /// `phi` placed above every existing node. An existing node equal to
    /// `phi` is removed first.
    pub fn prepend(&self, phi: &Formula) -> Result<PriorityGraph, Error> {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| self.nodes[i] != *phi).collect();
        let mut nodes = Vec::with_capacity(keep.len() + 1);
        nodes.push(phi.clone());
        nodes.extend(keep.iter().map(|&i| self.nodes[i].clone()));
        let mut edges: Vec<(usize, usize)> = (1..nodes.len()).map(|j| (0, j)).collect();
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                if self.outranks(i, j) {
                    edges.push((a + 1, b + 1));
                }
            }
        }
        Self::new(nodes, &edges)
    }
}

/// Conjunction of literals pinning down `a`, atoms in name order.
pub fn characteristic(sig: &Signature, a: Assignment) -> Formula {
    let mut atoms: Vec<(usize, &Atom)> = sig.atoms().iter().enumerate().collect();
    atoms.sort_by(|x, y| x.1.cmp(y.1));
    Formula::conjunction(atoms.into_iter().map(|(i, atom)| {
        let lit = Formula::Atom(atom.clone());
        if a.get(i) {
            lit
        } else {
            Formula::not(lit)
        }
    }))
}

/// A priority graph inducing exactly the order of `m`.
///
/// Each world contributes the set of worlds at least as good as it,
/// written as a disjunction of characteristic formulas; the nodes form an
/// antichain. Needs distinct valuations on distinct worlds.
pub fn extract_graph(m: &PreferenceModel) -> Result<PriorityGraph, Error> {
    let mut seen: BTreeMap<Assignment, WorldId> = BTreeMap::new();
    for (id, a) in m.ids.iter().zip(&m.assignments) {
        if let Some(prev) = seen.insert(*a, *id) {
            return Err(Error::NonInjectiveValuation(prev.0, id.0));
        }
    }
    let mut nodes: BTreeMap<String, Formula> = BTreeMap::new();
    for w in 0..m.len() {
        let mut disjuncts: Vec<(String, Formula)> = m
            .order
            .weakly_below(w)
            .iter()
            .map(|u| {
                let f = characteristic(&m.signature, m.assignments[u]);
                (f.to_string(), f)
            })
            .collect();
        disjuncts.sort_by(|a, b| a.0.cmp(&b.0));
        let node = Formula::disjunction(disjuncts.into_iter().map(|(_, f)| f));
        nodes.entry(node.to_string()).or_insert(node);
    }
    PriorityGraph::antichain(nodes.into_values().collect())
}

/// An agent program: knowledge, belief and desire graphs, and adopted plans.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AgentProgram {
    signature: Signature,
    knowledge: Vec<Formula>,
    beliefs: PriorityGraph,
    desires: PriorityGraph,
    intentions: BTreeSet<PlanSymbol>,
}

impl AgentProgram {
    /// Checks that every formula is propositional over the signature and
    /// that the knowledge base has a model.
    pub fn new(
        signature: Signature,
        knowledge: Vec<Formula>,
        beliefs: PriorityGraph,
        desires: PriorityGraph,
        intentions: BTreeSet<PlanSymbol>,
    ) -> Result<Self, Error> {
        for f in knowledge.iter().chain(beliefs.nodes()).chain(desires.nodes()) {
            if !f.is_propositional() {
                return Err(Error::NotPropositional(f.to_string()));
            }
            signature.check_atoms(f)?;
        }
        let program = AgentProgram {
            signature,
            knowledge,
            beliefs,
            desires,
            intentions,
        };
        if program.worlds()?.is_empty() {
            return Err(Error::InconsistentKnowledge);
        }
        Ok(program)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn knowledge(&self) -> &[Formula] {
        &self.knowledge
    }

    pub fn beliefs(&self) -> &PriorityGraph {
        &self.beliefs
    }

    pub fn desires(&self) -> &PriorityGraph {
        &self.desires
    }

    pub fn graph(&self, kind: OrderKind) -> &PriorityGraph {
        match kind {
            OrderKind::Plausibility => &self.beliefs,
            OrderKind::Desirability => &self.desires,
        }
    }

    pub fn intentions(&self) -> &BTreeSet<PlanSymbol> {
        &self.intentions
    }

    pub fn with_graph(&self, kind: OrderKind, graph: PriorityGraph) -> AgentProgram {
        let mut out = self.clone();
        match kind {
            OrderKind::Plausibility => out.beliefs = graph,
            OrderKind::Desirability => out.desires = graph,
        }
        out
    }

    pub fn with_intentions(&self, intentions: BTreeSet<PlanSymbol>) -> AgentProgram {
        let mut out = self.clone();
        out.intentions = intentions;
        out
    }

    /// The valuations satisfying the knowledge base, in bit-string order.
    pub fn worlds(&self) -> Result<Vec<Assignment>, Error> {
        let mut out = Vec::new();
        for a in self.signature.all_assignments()? {
            let mut ok = true;
            for k in &self.knowledge {
                if !self.signature.satisfies(a, k)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.push(a);
            }
        }
        Ok(out)
    }

    /// World id of a valuation: its bit string read as a binary number.
    pub fn world_id(&self, a: Assignment) -> WorldId {
        let n = self.signature.len();
        WorldId((0..n).fold(0u32, |acc, i| (acc << 1) | a.get(i) as u32))
    }

    /// The agent model induced by the program, ignoring intentions.
    pub fn induce_model(&self) -> Result<AgentModel, Error> {
        let worlds = self.worlds()?;
        let plausibility = self.beliefs.induced_order(&self.signature, &worlds)?;
        let desirability = self.desires.induced_order(&self.signature, &worlds)?;
        let ids = worlds.iter().map(|a| self.world_id(*a)).collect();
        Ok(AgentModel::from_parts_unchecked(
            self.signature.clone(),
            ids,
            worlds,
            plausibility,
            desirability,
        ))
    }

    /// The practical agent model induced by the program. Fails when the
    /// adopted plans are not consistent with the induced model.
    pub fn induce(&self, lib: &PlanLibrary) -> Result<PracticalAgentModel, Error> {
        for alpha in &self.intentions {
            lib.get(alpha)?;
        }
        PracticalAgentModel::new(self.induce_model()?, lib, self.intentions.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use alloc::vec;

    fn sig() -> Signature {
        Signature::from_names(["p", "q"]).unwrap()
    }

    #[test]
    fn rejects_cycles_and_modal_nodes() {
        let (p, q) = (Formula::atom("p"), Formula::atom("q"));
        assert_eq!(
            PriorityGraph::new(vec![p.clone(), q.clone()], &[(0, 1), (1, 0)]).unwrap_err(),
            Error::CyclicPriority(0)
        );
        assert!(matches!(
            PriorityGraph::new(vec![Formula::universal(p.clone())], &[]),
            Err(Error::NotPropositional(_))
        ));
        assert!(matches!(
            PriorityGraph::new(vec![p.clone(), p], &[]),
            Err(Error::DuplicateNode(_))
        ));
        assert!(matches!(
            PriorityGraph::new(vec![q], &[(0, 3)]),
            Err(Error::NodeOutOfRange(0, 3))
        ));
    }

    #[test]
    fn ranks_compile_to_priority() {
        let g = PriorityGraph::from_ranks(
            vec![Formula::atom("p"), Formula::atom("q"), parse("p & q").unwrap()],
            &[0, 1, 1],
        )
        .unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn empty_graph_induces_total_relation() {
        let worlds = sig().all_assignments().unwrap();
        assert_eq!(
            PriorityGraph::empty().induced_order(&sig(), &worlds).unwrap(),
            Preorder::total(4)
        );
    }

    #[test]
    fn prepend_replaces_existing_node() {
        let g = PriorityGraph::new(vec![Formula::atom("p"), Formula::atom("q")], &[(0, 1)]).unwrap();
        let up = g.prepend(&Formula::atom("q")).unwrap();
        assert_eq!(up.nodes(), &[Formula::atom("q"), Formula::atom("p")]);
        assert_eq!(up.edges(), vec![(0, 1)]);
    }

    #[test]
    fn characteristic_formula_is_canonical() {
        let s = Signature::from_names(["q", "p"]).unwrap();
        let mut a = Assignment::default();
        a.set(0, true); // q
        assert_eq!(characteristic(&s, a).to_string(), "~p & q");
    }

    #[test]
    fn inconsistent_knowledge() {
        let err = AgentProgram::new(
            sig(),
            vec![Formula::atom("p"), parse("~p").unwrap()],
            PriorityGraph::empty(),
            PriorityGraph::empty(),
            BTreeSet::new(),
        )
        .unwrap_err();
        assert_eq!(err, Error::InconsistentKnowledge);
    }

    #[test]
    fn knowledge_filters_worlds() {
        let ag = AgentProgram::new(
            sig(),
            vec![parse("p | q").unwrap()],
            PriorityGraph::empty(),
            PriorityGraph::empty(),
            BTreeSet::new(),
        )
        .unwrap();
        let bits: Vec<_> = ag.worlds().unwrap().into_iter().map(|a| sig().bits(a)).collect();
        assert_eq!(bits, vec!["01", "10", "11"]);
        assert_eq!(ag.induce_model().unwrap().ids(), &[WorldId(1), WorldId(2), WorldId(3)]);
    }
}
