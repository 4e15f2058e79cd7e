//! Mental change: announcement, radical upgrade, natural contraction and
//! plan execution on models, and the matching operations on agent programs.
//!
//! None of the operations touch the intention set. Dropping plans that are
//! no longer consistent is a separate step, [`filter_intentions`].

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::Error;
use crate::formula::{Formula, OrderKind, PlanSymbol};
use crate::model::{AgentModel, PracticalAgentModel, WorldSet};
use crate::order::{Preorder, Relation};
use crate::pgraph::{extract_graph, AgentProgram, PriorityGraph};
use crate::plans::{self, Plan, PlanLibrary};

/// Public announcement: keeps only the worlds satisfying `phi`.
///
/// The result may be empty.
pub fn announce(m: &AgentModel, phi: &Formula) -> Result<AgentModel, Error> {
    Ok(m.restrict(&m.truth_set(phi)?))
}

/// Radical upgrade of one order by `phi`.
pub fn upgrade(m: &AgentModel, target: OrderKind, phi: &Formula) -> Result<AgentModel, Error> {
    Ok(upgrade_by(m, target, &m.truth_set(phi)?))
}

/// Radical upgrade by a world set: every world of `good` becomes strictly
/// better than every world outside it, and the order within each of the
/// two zones is kept.
pub fn upgrade_by(m: &AgentModel, target: OrderKind, good: &WorldSet) -> AgentModel {
    let old = m.order(target);
    let bad = good.complement();
    let mut rel = Relation::empty(m.len());
    for w in 0..m.len() {
        let row = if good.contains(w) {
            old.weakly_above(w).union(&bad)
        } else {
            old.weakly_above(w).difference(good)
        };
        for v in row.iter() {
            rel.insert(w, v);
        }
    }
    m.with_order(target, Preorder::from_relation_unchecked(rel))
}

/// Natural contraction of one order by `phi`.
pub fn contract(m: &AgentModel, target: OrderKind, phi: &Formula) -> Result<AgentModel, Error> {
    Ok(contract_by(m, target, &m.truth_set(phi)?))
}

/// Natural contraction by a world set: the best worlds outside `kept`
/// join the global minimum, everything else keeps its relative order.
///
/// `w <=' v` iff `w` is globally minimal, or `w` is a minimal world outside
/// `kept`, or `w <= v` and `v` is not a minimal world outside `kept`.
pub fn contract_by(m: &AgentModel, target: OrderKind, kept: &WorldSet) -> AgentModel {
    let old = m.order(target);
    let global_min = old.min_set(&m.all());
    let promoted = old.min_set(&kept.complement());
    let mut rel = Relation::empty(m.len());
    for w in 0..m.len() {
        let row = if global_min.contains(w) || promoted.contains(w) {
            m.all()
        } else {
            old.weakly_above(w).difference(&promoted)
        };
        for v in row.iter() {
            rel.insert(w, v);
        }
    }
    m.with_order(target, Preorder::from_relation_unchecked(rel))
}

/// Executes `plan`: keeps the worlds satisfying its precondition, then
/// overwrites the atoms its post-condition fixes. Worlds keep their ids even
/// when they end up with the same valuation.
pub fn product_update_model(m: &AgentModel, plan: &Plan) -> Result<AgentModel, Error> {
    let sig = m.signature();
    let effects = plan
        .effects()
        .iter()
        .map(|(atom, value)| {
            sig.index_of(atom)
                .map(|i| (i, *value))
                .ok_or_else(|| Error::UnknownAtom(atom.as_str().into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let kept = m.restrict(&m.truth_set(plan.pre())?);
    let assignments = kept
        .assignments()
        .iter()
        .map(|a| {
            let mut a = *a;
            for &(i, v) in &effects {
                a.set(i, v);
            }
            a
        })
        .collect();
    Ok(kept.with_assignments(assignments))
}

/// Product update of a practical model; the intention set is carried over.
pub fn product_update(
    m: &PracticalAgentModel,
    lib: &PlanLibrary,
    alpha: &PlanSymbol,
) -> Result<PracticalAgentModel, Error> {
    let plan = lib.get(alpha)?;
    Ok(PracticalAgentModel::with_intentions_unchecked(
        product_update_model(&m.model, plan)?,
        m.intentions.clone(),
    ))
}

/// Keeps only the adopted plans that are still consistent with the model.
pub fn filter_intentions(m: &PracticalAgentModel, lib: &PlanLibrary) -> Result<PracticalAgentModel, Error> {
    if m.model.is_empty() {
        return Err(Error::EmptyModel);
    }
    let mut kept = BTreeSet::new();
    for alpha in &m.intentions {
        if plans::plan_failure(&m.model, lib, alpha)?.is_none() {
            kept.insert(alpha.clone());
        }
    }
    Ok(PracticalAgentModel::with_intentions_unchecked(m.model.clone(), kept))
}

/// A model-level mental change.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MentalOp {
    Announce(Formula),
    Upgrade(OrderKind, Formula),
    Contract(OrderKind, Formula),
    Update(PlanSymbol),
    Composite(Vec<MentalOp>),
}

impl MentalOp {
    /// Contract desirability by `~phi`, then radically upgrade plausibility
    /// by `phi`: coming to believe `phi` gives up wanting `~phi`.
    pub fn believe_and_drop_opposing(phi: Formula) -> MentalOp {
        MentalOp::Composite(alloc::vec![
            MentalOp::Contract(OrderKind::Desirability, Formula::not(phi.clone())),
            MentalOp::Upgrade(OrderKind::Plausibility, phi),
        ])
    }

    pub fn apply(&self, m: &PracticalAgentModel, lib: &PlanLibrary) -> Result<PracticalAgentModel, Error> {
        let with = |model| PracticalAgentModel::with_intentions_unchecked(model, m.intentions.clone());
        match self {
            MentalOp::Announce(phi) => Ok(with(announce(&m.model, phi)?)),
            MentalOp::Upgrade(o, phi) => Ok(with(upgrade(&m.model, *o, phi)?)),
            MentalOp::Contract(o, phi) => Ok(with(contract(&m.model, *o, phi)?)),
            MentalOp::Update(alpha) => product_update(m, lib, alpha),
            MentalOp::Composite(ops) => {
                let mut cur = m.clone();
                for op in ops {
                    cur = op.apply(&cur, lib)?;
                }
                Ok(cur)
            }
        }
    }
}

/// Announcement on a program: `phi` joins the knowledge base.
pub fn graph_announce(ag: &AgentProgram, phi: &Formula) -> Result<AgentProgram, Error> {
    let mut knowledge = ag.knowledge().to_vec();
    if !knowledge.contains(phi) {
        knowledge.push(phi.clone());
    }
    AgentProgram::new(
        ag.signature().clone(),
        knowledge,
        ag.beliefs().clone(),
        ag.desires().clone(),
        ag.intentions().clone(),
    )
}

/// Radical upgrade on a priority graph: `phi` is placed above every node.
pub fn graph_upgrade(g: &PriorityGraph, phi: &Formula) -> Result<PriorityGraph, Error> {
    g.prepend(phi)
}

/// Natural contraction on a program. The target graph is replaced by one
/// extracted from the contracted induced order.
pub fn graph_contract(ag: &AgentProgram, target: OrderKind, phi: &Formula) -> Result<AgentProgram, Error> {
    let contracted = contract(&ag.induce_model()?, target, phi)?;
    let graph = extract_graph(&contracted.preference_model(target))?;
    Ok(ag.with_graph(target, graph))
}

/// Program-level counterpart of [`MentalOp::believe_and_drop_opposing`]
/// followed by [`filter_intentions`].
pub fn revise_drop(ag: &AgentProgram, phi: &Formula, lib: &PlanLibrary) -> Result<AgentProgram, Error> {
    let contracted = graph_contract(ag, OrderKind::Desirability, &Formula::not(phi.clone()))?;
    let upgraded = contracted.with_graph(OrderKind::Plausibility, graph_upgrade(contracted.beliefs(), phi)?);
    let model = upgraded.induce_model()?;
    let mut kept = BTreeSet::new();
    for alpha in upgraded.intentions() {
        if plans::plan_failure(&model, lib, alpha)?.is_none() {
            kept.insert(alpha.clone());
        }
    }
    Ok(upgraded.with_intentions(kept))
}

/// Whether every adopted plan is consistent with the model, for callers
/// that only need a yes/no answer.
pub fn is_p_consistent(m: &PracticalAgentModel, lib: &PlanLibrary) -> Result<bool, Error> {
    match plans::check_p_consistency(&m.model, lib, &m.intentions) {
        Ok(()) => Ok(true),
        Err(Error::NotPConsistent { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker;
    use crate::model::{Assignment, Signature, WorldId};
    use crate::parse::parse;
    use alloc::vec;

    // Positions follow bit-string order: 0:00 1:01 2:10 3:11 (pq).
    fn model(plaus: Preorder) -> AgentModel {
        let sig = Signature::from_names(["p", "q"]).unwrap();
        let worlds = (0..4).map(|i| (WorldId(i), Assignment(reverse2(i as u64)))).collect();
        AgentModel::new(sig, worlds, plaus, Preorder::total(4)).unwrap()
    }

    fn reverse2(v: u64) -> u64 {
        // bit string "pq" -> atom p is bit 0, q is bit 1
        ((v >> 1) & 1) | ((v & 1) << 1)
    }

    fn chain() -> Preorder {
        // 11 < 10 < 01 < 00
        Preorder::closure_of(4, [(3, 2), (2, 1), (1, 0)])
    }

    fn pairs(m: &AgentModel, o: OrderKind) -> Vec<(usize, usize)> {
        m.order(o).relation().pairs().collect()
    }

    #[test]
    fn announce_identity_and_bottom() {
        let m = model(chain());
        assert_eq!(announce(&m, &Formula::Top).unwrap(), m);
        assert!(announce(&m, &Formula::Bottom).unwrap().is_empty());
    }

    #[test]
    fn announce_q_keeps_q_worlds() {
        let m = announce(&model(chain()), &Formula::atom("q")).unwrap();
        assert_eq!(m.ids(), &[WorldId(1), WorldId(3)]);
        // 11 < 01 survives as position 1 < position 0
        assert_eq!(pairs(&m, OrderKind::Plausibility), vec![(0, 0), (1, 0), (1, 1)]);
    }

    #[test]
    fn upgrade_by_top_is_identity() {
        let m = model(chain());
        assert_eq!(upgrade(&m, OrderKind::Plausibility, &Formula::Top).unwrap(), m);
    }

    #[test]
    fn upgrade_identity_order_by_q() {
        let m = upgrade(
            &model(Preorder::identity(4)),
            OrderKind::Plausibility,
            &Formula::atom("q"),
        )
        .unwrap();
        let o = m.order(OrderKind::Plausibility);
        for q_world in [1, 3] {
            for nq_world in [0, 2] {
                assert!(o.lt(q_world, nq_world));
            }
        }
        assert!(!o.le(1, 3) && !o.le(3, 1));
        assert!(!o.le(0, 2) && !o.le(2, 0));
    }

    #[test]
    fn upgrade_chain_by_not_p() {
        let m = upgrade(&model(chain()), OrderKind::Plausibility, &parse("~p").unwrap()).unwrap();
        // expected: 01 < 00 < 11 < 10
        let expected = Preorder::closure_of(4, [(1, 0), (0, 3), (3, 2)]);
        assert_eq!(m.order(OrderKind::Plausibility), &expected);
    }

    #[test]
    fn contract_chain_by_p() {
        let m = contract(&model(chain()), OrderKind::Plausibility, &Formula::atom("p")).unwrap();
        // expected: {11, 01} cluster < 10 < 00
        let expected = Preorder::closure_of(4, [(3, 1), (1, 3), (3, 2), (2, 0)]);
        assert_eq!(m.order(OrderKind::Plausibility), &expected);
        let pm = PracticalAgentModel::without_intentions(m);
        assert!(!checker::holds(&pm, &PlanLibrary::empty(), &parse("B(p)").unwrap()).unwrap());
    }

    #[test]
    fn contract_by_bottom_only_adds_bottom_cluster_pairs() {
        let m = model(Preorder::identity(4));
        let c = contract(&m, OrderKind::Plausibility, &Formula::Bottom).unwrap();
        // every world is minimal in an identity order, so all become a cluster
        assert_eq!(c.order(OrderKind::Plausibility), &Preorder::total(4));
        let c = contract(&model(chain()), OrderKind::Plausibility, &Formula::Bottom).unwrap();
        assert_eq!(c.order(OrderKind::Plausibility), &chain());
    }

    #[test]
    fn product_update_examples() {
        let m = PracticalAgentModel::without_intentions(model(chain()));
        let lib = PlanLibrary::from_text([("a", "T", "p"), ("b", "q", "p"), ("c", "F", "p")]).unwrap();
        let a = product_update(&m, &lib, &PlanSymbol::new("a").unwrap()).unwrap();
        assert_eq!(a.model.len(), 4);
        assert!(a.model.assignments().iter().all(|x| x.get(0)));
        // q untouched
        let q: Vec<bool> = a.model.assignments().iter().map(|x| x.get(1)).collect();
        assert_eq!(q, vec![false, true, false, true]);

        let b = product_update(&m, &lib, &PlanSymbol::new("b").unwrap()).unwrap();
        assert_eq!(b.model.ids(), &[WorldId(1), WorldId(3)]);
        assert_eq!(b.model.assignment(0), b.model.assignment(1));
        assert_eq!(b.model.valuation_collision(), Some((WorldId(1), WorldId(3))));

        let c = product_update(&m, &lib, &PlanSymbol::new("c").unwrap()).unwrap();
        assert!(c.model.is_empty());
    }
}
