//! A practical agent model under a sequence of script steps.
//!
//! Mental changes never drop intentions on their own. Each step reports
//! whether the adopted plans are still consistent; `filter` (or
//! auto-filtering) restores consistency. A change that would leave no
//! worlds is refused and the model is kept as it was.

use std::collections::BTreeSet;

use prefagent_core::checker::{holds, minimal_worlds};
use prefagent_core::dynamics::{filter_intentions, is_p_consistent, MentalOp};
use prefagent_core::{Error as CoreError, OrderKind, PlanLibrary, PlanSymbol, PracticalAgentModel};
use serde::Serialize;

use crate::error::Error;
use crate::script::{ScriptLine, Step};

pub struct Session {
    current: PracticalAgentModel,
    lib: PlanLibrary,
    history: Vec<MentalOp>,
    auto_filter: bool,
}

/// State after one step. World lists hold world ids.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct StepReport {
    pub step: usize,
    pub line: usize,
    pub op: String,
    pub worlds: usize,
    pub min_p: Vec<u32>,
    pub min_d: Vec<u32>,
    pub intentions: Vec<String>,
    pub dropped: Vec<String>,
    pub p_consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assertion: Option<bool>,
}

impl Session {
    /// With `auto_filter`, intentions are filtered after every change.
    pub fn new(start: PracticalAgentModel, lib: PlanLibrary, auto_filter: bool) -> Session {
        Session {
            current: start,
            lib,
            history: Vec::new(),
            auto_filter,
        }
    }

    pub fn current(&self) -> &PracticalAgentModel {
        &self.current
    }

    pub fn library(&self) -> &PlanLibrary {
        &self.lib
    }

    /// Mental changes applied so far, in order.
    pub fn history(&self) -> &[MentalOp] {
        &self.history
    }

    /// Runs `line` as step number `step`.
    pub fn run(&mut self, step: usize, line: &ScriptLine) -> Result<StepReport, Error> {
        let fail = |source: CoreError| Error::Step {
            step,
            op: line.text.clone(),
            source,
        };
        let before = self.current.intentions.clone();
        let mut assertion = None;
        match &line.step {
            Step::Change(op) => {
                let mut next = op.apply(&self.current, &self.lib).map_err(fail)?;
                if next.model.is_empty() {
                    return Err(fail(CoreError::EmptyModel));
                }
                if self.auto_filter {
                    next = filter_intentions(&next, &self.lib).map_err(fail)?;
                }
                self.current = next;
                self.history.push(op.clone());
            }
            Step::Filter => {
                self.current = filter_intentions(&self.current, &self.lib).map_err(fail)?;
            }
            Step::Assert(f) => {
                assertion = Some(holds(&self.current, &self.lib, f).map_err(fail)?);
            }
        }
        let dropped: BTreeSet<&PlanSymbol> = before.difference(&self.current.intentions).collect();
        let m = &self.current.model;
        let ids = |k| minimal_worlds(m, k).iter().map(|w| m.id(w).0).collect::<Vec<_>>();
        Ok(StepReport {
            step,
            line: line.line,
            op: line.text.clone(),
            worlds: m.len(),
            min_p: ids(OrderKind::Plausibility),
            min_d: ids(OrderKind::Desirability),
            intentions: self.current.intentions.iter().map(|s| s.as_str().to_string()).collect(),
            dropped: dropped.into_iter().map(|s| s.as_str().to_string()).collect(),
            p_consistent: is_p_consistent(&self.current, &self.lib).map_err(fail)?,
            assertion,
        })
    }
}
