//! Finite-model reasoning for dynamic preference logic with BDI attitudes.
//!
//! Agent models carry two preorders over a finite world set: plausibility
//! (what the agent believes) and desirability (what it wants). Beliefs,
//! goals and intentions are evaluated as conditional modalities over the
//! minimal worlds of those orders, and the mental-change operations
//! (announcement, radical upgrade, natural contraction, plan execution)
//! are available both on models and on the priority graphs that induce them.
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]
extern crate alloc;

pub mod bitset;
pub mod checker;
pub mod desugar;
pub mod dynamics;
pub mod error;
pub mod formula;
pub mod model;
pub mod order;
pub mod parse;
pub mod pgraph;
pub mod plans;
mod render;

pub use bitset::BitSet;
pub use checker::{extension, holds};
pub use desugar::desugar;
pub use error::Error;
pub use formula::{Atom, AttitudeKind, DynamicOp, Formula, OrderKind, PlanSymbol, Strictness};
pub use model::{AgentModel, Assignment, PracticalAgentModel, PreferenceModel, Signature, WorldId, WorldSet};
pub use order::{Preorder, PreorderViolation, Relation};
pub use parse::{parse, ParseError};
pub use pgraph::{AgentProgram, PriorityGraph};
pub use plans::{Plan, PlanLibrary};
