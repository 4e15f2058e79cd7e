//! Plan libraries and consistency of adopted intentions.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::checker;
use crate::error::Error;
use crate::formula::{Atom, AttitudeKind, Formula, PlanSymbol};
use crate::model::AgentModel;
use crate::parse::parse_propositional;

/// An atomic plan: a propositional precondition and a literal-conjunction
/// post-condition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Plan {
    symbol: PlanSymbol,
    pre: Formula,
    post: Formula,
    effects: BTreeMap<Atom, bool>,
}

impl Plan {
    /// `post` must be a consistent conjunction of literals. `T` stands for
    /// the empty conjunction.
    pub fn new(symbol: PlanSymbol, pre: Formula, post: Formula) -> Result<Self, Error> {
        if !pre.is_propositional() {
            return Err(Error::NotPropositional(pre.to_string()));
        }
        let mut effects = BTreeMap::new();
        collect_literals(&symbol, &post, &mut effects)?;
        Ok(Plan {
            symbol,
            pre,
            post,
            effects,
        })
    }

    pub fn symbol(&self) -> &PlanSymbol {
        &self.symbol
    }

    pub fn pre(&self) -> &Formula {
        &self.pre
    }

    pub fn post(&self) -> &Formula {
        &self.post
    }

    /// Atoms the post-condition fixes, with the value it fixes them to.
    pub fn effects(&self) -> &BTreeMap<Atom, bool> {
        &self.effects
    }
}

fn collect_literals(symbol: &PlanSymbol, f: &Formula, out: &mut BTreeMap<Atom, bool>) -> Result<(), Error> {
    let (atom, value) = match f {
        Formula::Top => return Ok(()),
        Formula::And(a, b) => {
            collect_literals(symbol, a, out)?;
            return collect_literals(symbol, b, out);
        }
        Formula::Atom(a) => (a, true),
        Formula::Not(inner) => match &**inner {
            Formula::Atom(a) => (a, false),
            _ => return Err(not_literal(symbol, f)),
        },
        _ => return Err(not_literal(symbol, f)),
    };
    match out.insert(atom.clone(), value) {
        Some(prev) if prev != value => Err(Error::ContradictoryPost {
            plan: symbol.to_string(),
            atom: atom.to_string(),
        }),
        _ => Ok(()),
    }
}

fn not_literal(symbol: &PlanSymbol, f: &Formula) -> Error {
    Error::PostNotLiteralConjunction {
        plan: symbol.to_string(),
        post: f.to_string(),
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PlanLibrary {
    plans: BTreeMap<PlanSymbol, Plan>,
}

impl PlanLibrary {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(plans: Vec<Plan>) -> Result<Self, Error> {
        let mut map = BTreeMap::new();
        for plan in plans {
            let sym = plan.symbol.clone();
            if map.insert(sym.clone(), plan).is_some() {
                return Err(Error::DuplicatePlan(sym.to_string()));
            }
        }
        Ok(PlanLibrary { plans: map })
    }

    /// Builds a library from `(name, pre, post)` triples in concrete syntax.
    pub fn from_text<'a, I>(entries: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (&'a str, &'a str, &'a str)>,
    {
        let plans = entries
            .into_iter()
            .map(|(name, pre, post)| {
                let symbol = PlanSymbol::new(name)?;
                Plan::new(symbol, parse_propositional(pre)?, parse_propositional(post)?)
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Self::new(plans)
    }

    pub fn get(&self, symbol: &PlanSymbol) -> Result<&Plan, Error> {
        self.plans
            .get(symbol)
            .ok_or_else(|| Error::UnknownPlan(symbol.to_string()))
    }

    pub fn contains(&self, symbol: &PlanSymbol) -> bool {
        self.plans.contains_key(symbol)
    }

    /// Plans in symbol order.
    pub fn iter(&self) -> impl Iterator<Item = &Plan> {
        self.plans.values()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &PlanSymbol> {
        self.plans.keys()
    }

    pub fn len(&self) -> usize {
        self.plans.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plans.is_empty()
    }
}

/// The two requirements an adopted plan has to meet.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConsistencyConjunct {
    /// `B(pre(α))`
    BeliefInPrecondition,
    /// `AdmInt(pos(α))`
    AdmissiblePostcondition,
}

impl fmt::Display for ConsistencyConjunct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConsistencyConjunct::BeliefInPrecondition => "belief in precondition",
            ConsistencyConjunct::AdmissiblePostcondition => "admissibility of post-condition",
        })
    }
}

/// Which requirement, if any, `alpha` fails in `m`.
pub fn plan_failure(
    m: &AgentModel,
    lib: &PlanLibrary,
    alpha: &PlanSymbol,
) -> Result<Option<ConsistencyConjunct>, Error> {
    let plan = lib.get(alpha)?;
    let none = BTreeSet::new();
    let believes_pre = checker::holds_in(m, &none, lib, &Formula::belief(plan.pre.clone(), Formula::Top))?;
    if !believes_pre {
        return Ok(Some(ConsistencyConjunct::BeliefInPrecondition));
    }
    let admissible = checker::holds_in(
        m,
        &none,
        lib,
        &Formula::attitude(AttitudeKind::AdmissibleIntention, plan.post.clone(), Formula::Top),
    )?;
    Ok((!admissible).then_some(ConsistencyConjunct::AdmissiblePostcondition))
}

/// Checks that every plan in `intentions` has a believed precondition and an
/// admissible post-condition. Reports the first failing plan in symbol order.
pub fn check_p_consistency(m: &AgentModel, lib: &PlanLibrary, intentions: &BTreeSet<PlanSymbol>) -> Result<(), Error> {
    for alpha in intentions {
        if let Some(conjunct) = plan_failure(m, lib, alpha)? {
            return Err(Error::NotPConsistent {
                plan: alpha.to_string(),
                conjunct,
            });
        }
    }
    Ok(())
}
