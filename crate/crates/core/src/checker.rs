//! Model checking by extension sets.
//!
//! Every formula is evaluated to the set of worlds where it holds. Sugar
//! nodes are evaluated through their definitional expansion, and dynamic
//! modalities by transforming the model and evaluating the body there.

use alloc::collections::BTreeSet;

use crate::desugar;
use crate::dynamics;
use crate::error::Error;
use crate::formula::{DynamicOp, Formula, OrderKind, PlanSymbol, Strictness};
use crate::model::{AgentModel, PracticalAgentModel, WorldSet};
use crate::order::Preorder;
use crate::plans::PlanLibrary;

/// `[[f]]` in a practical agent model.
pub fn extension(m: &PracticalAgentModel, lib: &PlanLibrary, f: &Formula) -> Result<WorldSet, Error> {
    extension_in(&m.model, &m.intentions, lib, f)
}

/// Global truth: `f` holds at every world.
pub fn holds(m: &PracticalAgentModel, lib: &PlanLibrary, f: &Formula) -> Result<bool, Error> {
    Ok(extension(m, lib, f)?.is_full())
}

/// [`extension`] over a bare model and a separately held intention set.
pub fn extension_in(
    m: &AgentModel,
    intentions: &BTreeSet<PlanSymbol>,
    lib: &PlanLibrary,
    f: &Formula,
) -> Result<WorldSet, Error> {
    if m.is_empty() {
        return Err(Error::EmptyModel);
    }
    m.signature().check_atoms(f)?;
    for alpha in f.plan_symbols() {
        lib.get(alpha)?;
    }
    Evaluator { lib, intentions }.eval(m, f)
}

pub fn holds_in(
    m: &AgentModel,
    intentions: &BTreeSet<PlanSymbol>,
    lib: &PlanLibrary,
    f: &Formula,
) -> Result<bool, Error> {
    Ok(extension_in(m, intentions, lib, f)?.is_full())
}

struct Evaluator<'a> {
    lib: &'a PlanLibrary,
    intentions: &'a BTreeSet<PlanSymbol>,
}

/// Worlds having some member of `targets` weakly (or strictly) below them.
fn reach_down(order: &Preorder, strictness: Strictness, targets: &WorldSet) -> WorldSet {
    let mut out = WorldSet::empty(order.size());
    for t in targets.iter() {
        match strictness {
            Strictness::Weak => out.union_with(order.weakly_above(t)),
            Strictness::Strict => out.union_with(&order.strictly_above(t)),
        }
    }
    out
}

fn uniform(all: &WorldSet, truth: bool) -> WorldSet {
    if truth {
        all.clone()
    } else {
        WorldSet::empty(all.capacity())
    }
}

impl Evaluator<'_> {
    fn eval(&self, m: &AgentModel, f: &Formula) -> Result<WorldSet, Error> {
        let all = m.all();
        Ok(match f {
            Formula::Top => all,
            Formula::Bottom => WorldSet::empty(m.len()),
            Formula::Atom(a) => m.valuation(a)?,
            Formula::Not(a) => self.eval(m, a)?.complement(),
            Formula::And(a, b) => self.eval(m, a)?.intersection(&self.eval(m, b)?),
            Formula::Or(a, b) => self.eval(m, a)?.union(&self.eval(m, b)?),
            Formula::Implies(a, b) => self.eval(m, a)?.complement().union(&self.eval(m, b)?),
            Formula::Universal(a) => uniform(&all, self.eval(m, a)?.is_full()),
            Formula::Existential(a) => uniform(&all, !self.eval(m, a)?.is_empty()),
            // [<=X]φ fails exactly where some ¬φ world lies below.
            Formula::Necessity(o, s, a) => {
                let counter = self.eval(m, a)?.complement();
                reach_down(m.order(*o), *s, &counter).complement()
            }
            Formula::Possibility(o, s, a) => reach_down(m.order(*o), *s, &self.eval(m, a)?),
            Formula::Mu(o, a) => {
                let inner = self.eval(m, a)?;
                inner.difference(&reach_down(m.order(*o), Strictness::Strict, &inner))
            }
            Formula::Attitude {
                kind,
                consequent,
                condition,
            } => {
                let expanded = desugar::attitude(*kind, (**consequent).clone(), (**condition).clone(), self.lib)?;
                self.eval(m, &expanded)?
            }
            Formula::Intends(alpha) => {
                self.lib.get(alpha)?;
                uniform(&all, self.intentions.contains(alpha))
            }
            Formula::Dynamic { op, argument, body } => {
                let arg = m.truth_set(argument)?;
                match op {
                    DynamicOp::Announce => self.eval_in_submodel(m, &arg, &m.restrict(&arg), body)?,
                    DynamicOp::Upgrade(o) => self.eval(&dynamics::upgrade_by(m, *o, &arg), body)?,
                    DynamicOp::Contract(o) => self.eval(&dynamics::contract_by(m, *o, &arg), body)?,
                }
            }
            Formula::Plan(alpha, body) => {
                let plan = self.lib.get(alpha)?;
                let pre = m.truth_set(plan.pre())?;
                let updated = dynamics::product_update_model(m, plan)?;
                self.eval_in_submodel(m, &pre, &updated, body)?
            }
        })
    }

    /// Evaluates `body` in `sub` (whose worlds are `kept`, in order) and
    /// pulls the result back. Worlds outside `kept` satisfy it vacuously.
    fn eval_in_submodel(
        &self,
        m: &AgentModel,
        kept: &WorldSet,
        sub: &AgentModel,
        body: &Formula,
    ) -> Result<WorldSet, Error> {
        let mut out = kept.complement();
        if sub.is_empty() {
            return Ok(out);
        }
        let inner = self.eval(sub, body)?;
        for (rank, w) in kept.iter().enumerate() {
            if inner.contains(rank) {
                out.insert(w);
            }
        }
        debug_assert_eq!(out.capacity(), m.len());
        Ok(out)
    }
}

/// Which half of the plan/intention link fails for an adopted plan.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LinkConjunct {
    /// `B(pre(α))`
    BeliefInPrecondition,
    /// `Int(pos(α))`
    IntentionOfPostcondition,
}

impl core::fmt::Display for LinkConjunct {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            LinkConjunct::BeliefInPrecondition => "B(pre)",
            LinkConjunct::IntentionOfPostcondition => "Int(pos)",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinkCounterexample {
    pub plan: PlanSymbol,
    pub conjunct: LinkConjunct,
}

/// Checks that each adopted plan `α` satisfies `B(pre(α)) & Int(pos(α))`:
/// every plan the agent is committed to is believed executable and its
/// outcome is intended. Returns the first failing plan in symbol order.
pub fn check_intention_link(m: &PracticalAgentModel, lib: &PlanLibrary) -> Result<Option<LinkCounterexample>, Error> {
    for alpha in &m.intentions {
        let plan = lib.get(alpha)?;
        let pre = Formula::belief(plan.pre().clone(), Formula::Top);
        if !holds(m, lib, &pre)? {
            return Ok(Some(LinkCounterexample {
                plan: alpha.clone(),
                conjunct: LinkConjunct::BeliefInPrecondition,
            }));
        }
        let int = Formula::attitude(crate::AttitudeKind::Intention, plan.post().clone(), Formula::Top);
        if !holds(m, lib, &int)? {
            return Ok(Some(LinkCounterexample {
                plan: alpha.clone(),
                conjunct: LinkConjunct::IntentionOfPostcondition,
            }));
        }
    }
    Ok(None)
}

/// `Min_X W`, the globally most preferred worlds.
pub fn minimal_worlds(m: &AgentModel, order: OrderKind) -> WorldSet {
    m.order(order).min_set(&m.all())
}
