//! Formula syntax tree for the static, dynamic, and plan modalities.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use core::fmt;

use crate::error::Error;

/// Words the concrete syntax claims for itself.
pub const RESERVED: &[&str] = &[
    "T", "F", "A", "E", "B", "G", "I", "AdmInt", "Int", "mu_P", "mu_D", "up_P", "up_D", "drop_P", "drop_D",
];

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A propositional letter: `[a-z][a-zA-Z0-9_]*`, not a reserved word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Atom(String);

impl Atom {
    pub fn new(name: &str) -> Result<Self, Error> {
        if name.starts_with(|c: char| c.is_ascii_lowercase()) && is_ident(name) && !RESERVED.contains(&name) {
            Ok(Atom(name.to_string()))
        } else {
            Err(Error::InvalidName(name.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Name of a plan in a plan library.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PlanSymbol(String);

impl PlanSymbol {
    pub fn new(name: &str) -> Result<Self, Error> {
        if is_ident(name) && !RESERVED.contains(&name) {
            Ok(PlanSymbol(name.to_string()))
        } else {
            Err(Error::InvalidName(name.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for PlanSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Which of the agent's two orders a modality talks about.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum OrderKind {
    /// Plausibility, the order behind beliefs (`P`).
    Plausibility,
    /// Desirability, the order behind goals (`D`).
    Desirability,
}

impl OrderKind {
    pub fn tag(self) -> char {
        match self {
            OrderKind::Plausibility => 'P',
            OrderKind::Desirability => 'D',
        }
    }

    pub fn from_tag(c: char) -> Option<Self> {
        match c {
            'P' => Some(OrderKind::Plausibility),
            'D' => Some(OrderKind::Desirability),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Strictness {
    Weak,
    Strict,
}

/// The conditional mental attitudes `B`, `G`, `AdmInt` and `Int`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum AttitudeKind {
    Belief,
    Goal,
    AdmissibleIntention,
    Intention,
}

impl AttitudeKind {
    pub fn keyword(self) -> &'static str {
        match self {
            AttitudeKind::Belief => "B",
            AttitudeKind::Goal => "G",
            AttitudeKind::AdmissibleIntention => "AdmInt",
            AttitudeKind::Intention => "Int",
        }
    }
}

/// A mental-change operation usable inside a dynamic modality.
///
/// Announcement shrinks the world set and so affects both orders; the
/// other two rewrite a single order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum DynamicOp {
    Announce,
    Upgrade(OrderKind),
    Contract(OrderKind),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Formula {
    Top,
    Bottom,
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    /// `A φ`: φ holds at every world.
    Universal(Box<Formula>),
    /// `E φ`: φ holds at some world.
    Existential(Box<Formula>),
    /// `[<=X] φ` / `[<X] φ`.
    Necessity(OrderKind, Strictness, Box<Formula>),
    /// `<<=X>> φ` / `<<X>> φ`.
    Possibility(OrderKind, Strictness, Box<Formula>),
    /// `mu_X φ`: the most preferred φ-worlds.
    Mu(OrderKind, Box<Formula>),
    /// `K(consequent | condition)` for an attitude `K`.
    Attitude {
        kind: AttitudeKind,
        consequent: Box<Formula>,
        condition: Box<Formula>,
    },
    /// `[op φ] ψ`, with φ propositional.
    Dynamic {
        op: DynamicOp,
        argument: Box<Formula>,
        body: Box<Formula>,
    },
    /// `[α] φ`.
    Plan(PlanSymbol, Box<Formula>),
    /// `I(α)`.
    Intends(PlanSymbol),
}

impl Formula {
    /// Atom constructor for literals in code and tests. Panics on a bad name.
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Atom::new(name).expect("valid atom name"))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn universal(f: Formula) -> Formula {
        Formula::Universal(Box::new(f))
    }

    pub fn existential(f: Formula) -> Formula {
        Formula::Existential(Box::new(f))
    }

    pub fn necessity(order: OrderKind, s: Strictness, f: Formula) -> Formula {
        Formula::Necessity(order, s, Box::new(f))
    }

    pub fn possibility(order: OrderKind, s: Strictness, f: Formula) -> Formula {
        Formula::Possibility(order, s, Box::new(f))
    }

    pub fn mu(order: OrderKind, f: Formula) -> Formula {
        Formula::Mu(order, Box::new(f))
    }

    pub fn attitude(kind: AttitudeKind, consequent: Formula, condition: Formula) -> Formula {
        Formula::Attitude {
            kind,
            consequent: Box::new(consequent),
            condition: Box::new(condition),
        }
    }

    pub fn belief(consequent: Formula, condition: Formula) -> Formula {
        Self::attitude(AttitudeKind::Belief, consequent, condition)
    }

    pub fn goal(consequent: Formula, condition: Formula) -> Formula {
        Self::attitude(AttitudeKind::Goal, consequent, condition)
    }

    pub fn dynamic(op: DynamicOp, argument: Formula, body: Formula) -> Formula {
        Formula::Dynamic {
            op,
            argument: Box::new(argument),
            body: Box::new(body),
        }
    }

    pub fn plan(alpha: PlanSymbol, body: Formula) -> Formula {
        Formula::Plan(alpha, Box::new(body))
    }

    /// Left-nested conjunction; `Top` when empty.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items.into_iter().reduce(Formula::and).unwrap_or(Formula::Top)
    }

    /// Left-nested disjunction; `Bottom` when empty.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items.into_iter().reduce(Formula::or).unwrap_or(Formula::Bottom)
    }

    /// True when the formula uses only atoms, constants and Boolean connectives.
    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::Top | Formula::Bottom | Formula::Atom(_) => true,
            Formula::Not(a) => a.is_propositional(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.is_propositional() && b.is_propositional()
            }
            _ => false,
        }
    }

    /// True when the formula contains a `mu`, attitude, or `Int` node.
    pub fn has_sugar(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| {
            if matches!(f, Formula::Mu(..) | Formula::Attitude { .. }) {
                found = true;
            }
        });
        found
    }

    pub fn atoms(&self) -> BTreeSet<&Atom> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Atom(a) = f {
                out.insert(a);
            }
        });
        out
    }

    pub fn plan_symbols(&self) -> BTreeSet<&PlanSymbol> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Plan(a, _) | Formula::Intends(a) => {
                out.insert(a);
            }
            _ => {}
        });
        out
    }

    /// Pre-order walk over every node.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Top | Formula::Bottom | Formula::Atom(_) | Formula::Intends(_) => {}
            Formula::Not(a)
            | Formula::Universal(a)
            | Formula::Existential(a)
            | Formula::Necessity(_, _, a)
            | Formula::Possibility(_, _, a)
            | Formula::Mu(_, a)
            | Formula::Plan(_, a) => a.visit(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Formula::Attitude {
                consequent: a,
                condition: b,
                ..
            }
            | Formula::Dynamic {
                argument: a, body: b, ..
            } => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Top | Formula::Bottom | Formula::Atom(_) | Formula::Intends(_) => 0,
            Formula::Not(a)
            | Formula::Universal(a)
            | Formula::Existential(a)
            | Formula::Necessity(_, _, a)
            | Formula::Possibility(_, _, a)
            | Formula::Mu(_, a)
            | Formula::Plan(_, a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => 1 + a.depth().max(b.depth()),
            Formula::Attitude {
                consequent: a,
                condition: b,
                ..
            }
            | Formula::Dynamic {
                argument: a, body: b, ..
            } => 1 + a.depth().max(b.depth()),
        }
    }

    /// Truth of a propositional formula under `lookup`.
    pub fn eval_propositional<F>(&self, lookup: &F) -> Result<bool, Error>
    where
        F: Fn(&Atom) -> Result<bool, Error>,
    {
        Ok(match self {
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Atom(a) => lookup(a)?,
            Formula::Not(a) => !a.eval_propositional(lookup)?,
            Formula::And(a, b) => a.eval_propositional(lookup)? && b.eval_propositional(lookup)?,
            Formula::Or(a, b) => a.eval_propositional(lookup)? || b.eval_propositional(lookup)?,
            Formula::Implies(a, b) => !a.eval_propositional(lookup)? || b.eval_propositional(lookup)?,
            _ => return Err(Error::NotPropositional(self.to_string())),
        })
    }
}
