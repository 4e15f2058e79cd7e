use core::fmt::{self, Display, Formatter, Write};

use crate::formula::{DynamicOp, Formula, Strictness};

// Binding strength used to decide parenthesisation. Higher binds tighter.
const IMPLIES: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const PREFIX: u8 = 4;

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Implies(..) => IMPLIES,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => PREFIX,
    }
}

fn write_at(out: &mut Formatter<'_>, f: &Formula, min: u8) -> fmt::Result {
    if level(f) < min {
        out.write_char('(')?;
        write_formula(out, f)?;
        out.write_char(')')
    } else {
        write_formula(out, f)
    }
}

fn write_formula(out: &mut Formatter<'_>, f: &Formula) -> fmt::Result {
    match f {
        Formula::Top => out.write_char('T'),
        Formula::Bottom => out.write_char('F'),
        Formula::Atom(a) => write!(out, "{a}"),
        Formula::Not(a) => {
            out.write_char('~')?;
            write_at(out, a, PREFIX)
        }
        // `&` and `|` associate to the left, `->` to the right.
        Formula::And(a, b) => {
            write_at(out, a, AND)?;
            out.write_str(" & ")?;
            write_at(out, b, PREFIX)
        }
        Formula::Or(a, b) => {
            write_at(out, a, OR)?;
            out.write_str(" | ")?;
            write_at(out, b, AND)
        }
        Formula::Implies(a, b) => {
            write_at(out, a, OR)?;
            out.write_str(" -> ")?;
            write_at(out, b, IMPLIES)
        }
        Formula::Universal(a) => {
            out.write_str("A ")?;
            write_at(out, a, PREFIX)
        }
        Formula::Existential(a) => {
            out.write_str("E ")?;
            write_at(out, a, PREFIX)
        }
        Formula::Necessity(o, s, a) => {
            let op = if *s == Strictness::Weak { "<=" } else { "<" };
            write!(out, "[{op}{}] ", o.tag())?;
            write_at(out, a, PREFIX)
        }
        Formula::Possibility(o, s, a) => {
            let op = if *s == Strictness::Weak { "=" } else { "" };
            write!(out, "<<{op}{}>> ", o.tag())?;
            write_at(out, a, PREFIX)
        }
        Formula::Mu(o, a) => {
            write!(out, "mu_{} ", o.tag())?;
            write_at(out, a, PREFIX)
        }
        Formula::Attitude {
            kind,
            consequent,
            condition,
        } => {
            write!(out, "{}(", kind.keyword())?;
            write_at(out, consequent, AND)?;
            out.write_char('|')?;
            write_formula(out, condition)?;
            out.write_char(')')
        }
        Formula::Dynamic { op, argument, body } => {
            match op {
                DynamicOp::Announce => out.write_str("[!")?,
                DynamicOp::Upgrade(o) => write!(out, "[up_{} ", o.tag())?,
                DynamicOp::Contract(o) => write!(out, "[drop_{} ", o.tag())?,
            }
            write_formula(out, argument)?;
            out.write_str("] ")?;
            write_at(out, body, PREFIX)
        }
        Formula::Plan(alpha, body) => {
            write!(out, "[{alpha}] ")?;
            write_at(out, body, PREFIX)
        }
        Formula::Intends(alpha) => write!(out, "I({alpha})"),
    }
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_formula(f, self)
    }
}
