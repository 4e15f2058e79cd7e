//! JSON documents: agent models, agent programs, plan libraries.
//!
//! Formulas are strings in the concrete syntax of [`prefagent_core::parse`].
//! Every document may carry `"schema": 1`; other versions are rejected.
//! Documents written by this crate always carry it.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use prefagent_core::parse::parse_propositional;
use prefagent_core::pgraph::characteristic;
use prefagent_core::{
    AgentModel, AgentProgram, Assignment, Atom, Formula, OrderKind, PlanLibrary, PlanSymbol, Preorder, PriorityGraph,
    Signature, WorldId,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Context, Error};

pub const SCHEMA: u32 = 1;

/// Reads and deserializes a JSON document.
pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn save<T: Serialize>(path: &Path, value: &T) -> Result<(), Error> {
    std::fs::write(path, to_json(value)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn check_schema(schema: Option<u32>, context: &str) -> Result<(), Error> {
    match schema {
        None | Some(SCHEMA) => Ok(()),
        Some(found) => Err(Error::Schema {
            context: context.into(),
            found,
        }),
    }
}

fn signature(atoms: &[String]) -> Result<Signature, Error> {
    Signature::from_names(atoms.iter().map(String::as_str)).context("atoms")
}

fn plan_symbols(names: &[String], context: &str) -> Result<BTreeSet<PlanSymbol>, Error> {
    names.iter().map(|n| PlanSymbol::new(n).context(context)).collect()
}

fn propositional(text: &str, context: &str) -> Result<Formula, Error> {
    parse_propositional(text).context(format!("{context} `{text}`"))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorldEntry {
    pub id: u32,
    pub true_atoms: Vec<String>,
}

/// An agent model. Order entries `[a, b]` mean world `a` is at least as
/// plausible (or desirable) as world `b`; reflexive and transitive pairs
/// are added on load.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<u32>,
    pub atoms: Vec<String>,
    pub worlds: Vec<WorldEntry>,
    #[serde(default)]
    pub plausibility: Vec<(u32, u32)>,
    #[serde(default)]
    pub desirability: Vec<(u32, u32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intentions: Option<Vec<String>>,
}

impl ModelFile {
    pub fn to_model(&self) -> Result<(AgentModel, BTreeSet<PlanSymbol>), Error> {
        check_schema(self.schema, "model")?;
        let sig = signature(&self.atoms)?;
        let mut worlds = Vec::with_capacity(self.worlds.len());
        for w in &self.worlds {
            let mut a = Assignment::default();
            for name in &w.true_atoms {
                let atom = Atom::new(name).context(format!("world {}", w.id))?;
                let i = sig
                    .index_of(&atom)
                    .ok_or_else(|| prefagent_core::Error::UnknownAtom(name.clone()))
                    .context(format!("world {}", w.id))?;
                a.set(i, true);
            }
            worlds.push((WorldId(w.id), a));
        }
        let position: BTreeMap<u32, usize> = self.worlds.iter().enumerate().map(|(i, w)| (w.id, i)).collect();
        let order = |pairs: &[(u32, u32)], what: &str| -> Result<Preorder, Error> {
            let gens = pairs
                .iter()
                .map(|&(a, b)| {
                    let pa = position.get(&a).ok_or(prefagent_core::Error::UnknownWorld(a));
                    let pb = position.get(&b).ok_or(prefagent_core::Error::UnknownWorld(b));
                    Ok((*pa?, *pb?))
                })
                .collect::<Result<Vec<_>, prefagent_core::Error>>()
                .context(what)?;
            Ok(Preorder::closure_of(self.worlds.len(), gens))
        };
        let p = order(&self.plausibility, "plausibility")?;
        let d = order(&self.desirability, "desirability")?;
        let model = AgentModel::new(sig, worlds, p, d).context("model")?;
        let intentions = plan_symbols(self.intentions.as_deref().unwrap_or_default(), "intentions")?;
        Ok((model, intentions))
    }

    /// The model with its full orders: every non-reflexive pair is listed.
    pub fn from_model(m: &AgentModel, intentions: Option<&BTreeSet<PlanSymbol>>) -> ModelFile {
        let sig = m.signature();
        let pairs = |k| {
            let o = m.order(k);
            let mut out = Vec::new();
            for a in 0..m.len() {
                for b in 0..m.len() {
                    if a != b && o.le(a, b) {
                        out.push((m.id(a).0, m.id(b).0));
                    }
                }
            }
            out
        };
        ModelFile {
            schema: Some(SCHEMA),
            atoms: sig.atoms().iter().map(|a| a.as_str().to_string()).collect(),
            worlds: (0..m.len())
                .map(|w| WorldEntry {
                    id: m.id(w).0,
                    true_atoms: sig
                        .atoms()
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| m.assignment(w).get(*i))
                        .map(|(_, a)| a.as_str().to_string())
                        .collect(),
                })
                .collect(),
            plausibility: pairs(OrderKind::Plausibility),
            desirability: pairs(OrderKind::Desirability),
            intentions: intentions.map(|i| i.iter().map(|s| s.as_str().to_string()).collect()),
        }
    }
}

/// A priority graph: formula nodes plus either an edge list (`[i, j]`:
/// node `i` outranks node `j`) or one integer rank per node (lower ranks
/// outrank higher ones).
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    #[serde(default)]
    pub nodes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranks: Option<Vec<i64>>,
}

impl GraphSpec {
    pub fn to_graph(&self, context: &str) -> Result<PriorityGraph, Error> {
        let nodes = self
            .nodes
            .iter()
            .map(|n| propositional(n, context))
            .collect::<Result<Vec<_>, _>>()?;
        match (&self.edges, &self.ranks) {
            (Some(_), Some(_)) => Err(Error::Format {
                context: context.into(),
                message: "give either `edges` or `ranks`, not both".into(),
            }),
            (_, Some(ranks)) => PriorityGraph::from_ranks(nodes, ranks).context(context),
            (edges, None) => PriorityGraph::new(nodes, edges.as_deref().unwrap_or_default()).context(context),
        }
    }

    pub fn from_graph(g: &PriorityGraph) -> GraphSpec {
        GraphSpec {
            nodes: g.nodes().iter().map(Formula::to_string).collect(),
            edges: Some(g.edges()),
            ranks: None,
        }
    }
}

/// An agent program `<K, B, D, I>` over declared atoms.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProgramFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<u32>,
    pub atoms: Vec<String>,
    #[serde(rename = "K", default)]
    pub knowledge: Vec<String>,
    #[serde(rename = "B", default)]
    pub beliefs: GraphSpec,
    #[serde(rename = "D", default)]
    pub desires: GraphSpec,
    #[serde(rename = "I", default)]
    pub intentions: Vec<String>,
}

impl ProgramFile {
    pub fn to_program(&self) -> Result<AgentProgram, Error> {
        check_schema(self.schema, "program")?;
        let sig = signature(&self.atoms)?;
        let knowledge = self
            .knowledge
            .iter()
            .map(|k| propositional(k, "K"))
            .collect::<Result<Vec<_>, _>>()?;
        AgentProgram::new(
            sig,
            knowledge,
            self.beliefs.to_graph("B")?,
            self.desires.to_graph("D")?,
            plan_symbols(&self.intentions, "I")?,
        )
        .context("program")
    }

    pub fn from_program(ag: &AgentProgram) -> ProgramFile {
        ProgramFile {
            schema: Some(SCHEMA),
            atoms: ag.signature().atoms().iter().map(|a| a.as_str().to_string()).collect(),
            knowledge: ag.knowledge().iter().map(Formula::to_string).collect(),
            beliefs: GraphSpec::from_graph(ag.beliefs()),
            desires: GraphSpec::from_graph(ag.desires()),
            intentions: ag.intentions().iter().map(|s| s.as_str().to_string()).collect(),
        }
    }

    /// A program inducing `m` up to world ids. Knowledge is the disjunction
    /// of the characteristic formulas of the model's valuations, so the
    /// valuations have to be distinct.
    pub fn from_model(
        m: &AgentModel,
        beliefs: &PriorityGraph,
        desires: &PriorityGraph,
        intentions: &BTreeSet<PlanSymbol>,
    ) -> ProgramFile {
        let sig = m.signature();
        let mut worlds: Vec<Assignment> = m.assignments().to_vec();
        worlds.sort_by_key(|a| sig.bits(*a));
        let k = Formula::disjunction(worlds.iter().map(|a| characteristic(sig, *a)));
        ProgramFile {
            schema: Some(SCHEMA),
            atoms: sig.atoms().iter().map(|a| a.as_str().to_string()).collect(),
            knowledge: vec![k.to_string()],
            beliefs: GraphSpec::from_graph(beliefs),
            desires: GraphSpec::from_graph(desires),
            intentions: intentions.iter().map(|s| s.as_str().to_string()).collect(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanEntry {
    pub name: String,
    pub pre: String,
    pub post: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LibraryFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<u32>,
    pub plans: Vec<PlanEntry>,
}

impl LibraryFile {
    pub fn to_library(&self) -> Result<PlanLibrary, Error> {
        check_schema(self.schema, "library")?;
        PlanLibrary::from_text(
            self.plans
                .iter()
                .map(|p| (p.name.as_str(), p.pre.as_str(), p.post.as_str())),
        )
        .context("library")
    }
}
