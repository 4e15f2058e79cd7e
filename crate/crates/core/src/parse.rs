//! Recursive-descent parser for the ASCII formula syntax.
//!
//! ```text
//! formula     ::= disjunction [ "->" formula ]
//! disjunction ::= conjunction { "|" conjunction }
//! conjunction ::= unary { "&" unary }
//! unary       ::= "~" unary | "A" unary | "E" unary
//!               | "[<=P]" unary | "[<P]" unary | "[<=D]" unary | "[<D]" unary
//!               | "<<=P>>" unary | "<<P>>" unary | "<<=D>>" unary | "<<D>>" unary
//!               | "mu_P" unary | "mu_D" unary
//!               | "[" "!" prop "]" unary
//!               | "[" ("up_P" | "up_D" | "drop_P" | "drop_D") prop "]" unary
//!               | "[" plan "]" unary
//!               | primary
//! primary     ::= "T" | "F" | atom | "(" formula ")"
//!               | ("B" | "G" | "AdmInt" | "Int") "(" conjunction [ "|" formula ] ")"
//!               | "I" "(" plan ")"
//! atom        ::= [a-z][a-zA-Z0-9_]*
//! plan        ::= [a-zA-Z_][a-zA-Z0-9_]*
//! ```
//!
//! `prop` is a `formula` that must be propositional. The consequent of a
//! conditional attitude sits at conjunction level, so the first top-level
//! `|` inside the parentheses separates it from the condition.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::formula::{Atom, AttitudeKind, DynamicOp, Formula, OrderKind, PlanSymbol, Strictness, RESERVED};

const MAX_NESTING: usize = 512;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    Syntax { expected: Vec<&'static str>, found: String },
    UnknownOperator(String),
    Arity { operator: String, detail: &'static str },
    NotPropositional { context: &'static str },
    Reserved(String),
    TooDeep,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::Syntax { expected, found } => {
                if expected.len() == 1 {
                    write!(f, "expected {}, found {found}", expected[0])
                } else {
                    write!(f, "expected one of {}, found {found}", expected.join(", "))
                }
            }
            ParseErrorKind::UnknownOperator(op) => write!(f, "unknown operator `{op}`"),
            ParseErrorKind::Arity { operator, detail } => write!(f, "`{operator}` {detail}"),
            ParseErrorKind::NotPropositional { context } => {
                write!(f, "the argument of {context} must be propositional")
            }
            ParseErrorKind::Reserved(w) => write!(f, "`{w}` is a reserved word"),
            ParseErrorKind::TooDeep => write!(f, "formula nested too deeply"),
        }
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    LParen,
    RParen,
    LBracket,
    RBracket,
    Bar,
    Amp,
    Tilde,
    Arrow,
    Bang,
    Comma,
    Nec(OrderKind, Strictness),
    Poss(OrderKind, Strictness),
    Ident(String),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Nec(o, s) => format!("`[{}{}]`", if *s == Strictness::Weak { "<=" } else { "<" }, o.tag()),
            Tok::Poss(o, s) => format!("`<<{}{}>>`", if *s == Strictness::Weak { "<=" } else { "<" }, o.tag()),
            Tok::Ident(name) => format!("`{name}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;

    let starts_with = |i: usize, s: &str| s.chars().enumerate().all(|(k, c)| chars.get(i + k) == Some(&c));

    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column };
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let (tok, width) = match c {
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            ']' => (Tok::RBracket, 1),
            '|' => (Tok::Bar, 1),
            '&' => (Tok::Amp, 1),
            '~' => (Tok::Tilde, 1),
            '!' => (Tok::Bang, 1),
            ',' => (Tok::Comma, 1),
            '-' if starts_with(i, "->") => (Tok::Arrow, 2),
            '[' => {
                let mut found = (Tok::LBracket, 1);
                for (o, tag) in [(OrderKind::Plausibility, 'P'), (OrderKind::Desirability, 'D')] {
                    if starts_with(i, &format!("[<={tag}]")) {
                        found = (Tok::Nec(o, Strictness::Weak), 5);
                    } else if starts_with(i, &format!("[<{tag}]")) {
                        found = (Tok::Nec(o, Strictness::Strict), 4);
                    }
                }
                found
            }
            '<' => {
                let mut found = None;
                for (o, tag) in [(OrderKind::Plausibility, 'P'), (OrderKind::Desirability, 'D')] {
                    if starts_with(i, &format!("<<={tag}>>")) {
                        found = Some((Tok::Poss(o, Strictness::Weak), 6));
                    } else if starts_with(i, &format!("<<{tag}>>")) {
                        found = Some((Tok::Poss(o, Strictness::Strict), 5));
                    }
                }
                found.ok_or(ParseError {
                    line,
                    column,
                    kind: ParseErrorKind::UnexpectedChar('<'),
                })?
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let len = chars[i..]
                    .iter()
                    .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                    .count();
                (Tok::Ident(chars[i..i + len].iter().collect()), len)
            }
            other => {
                return Err(ParseError {
                    line,
                    column,
                    kind: ParseErrorKind::UnexpectedChar(other),
                })
            }
        };
        out.push((tok, pos));
        i += width;
        column += width;
    }
    out.push((Tok::Eof, Pos { line, column }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    depth: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error_at(&self, pos: Pos, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: pos.line,
            column: pos.column,
            kind,
        }
    }

    fn unexpected(&self, expected: Vec<&'static str>) -> ParseError {
        self.error_at(
            self.pos(),
            ParseErrorKind::Syntax {
                expected,
                found: self.peek().describe(),
            },
        )
    }

    fn expect(&mut self, tok: Tok, name: &'static str) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(alloc::vec![name]))
        }
    }

    fn enter(&mut self) -> PResult<()> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            Err(self.error_at(self.pos(), ParseErrorKind::TooDeep))
        } else {
            Ok(())
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        self.enter()?;
        let lhs = self.disjunction()?;
        let f = if *self.peek() == Tok::Arrow {
            self.bump();
            Formula::implies(lhs, self.formula()?)
        } else {
            lhs
        };
        self.depth -= 1;
        Ok(f)
    }

    fn disjunction(&mut self) -> PResult<Formula> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> PResult<Formula> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Formula> {
        self.enter()?;
        let f = match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Formula::not(self.unary()?)
            }
            Tok::Nec(o, s) => {
                self.bump();
                Formula::necessity(o, s, self.unary()?)
            }
            Tok::Poss(o, s) => {
                self.bump();
                Formula::possibility(o, s, self.unary()?)
            }
            Tok::LBracket => {
                self.bump();
                self.bracketed()?
            }
            Tok::Ident(name) if name == "A" || name == "E" => {
                self.bump();
                let body = self.unary()?;
                if name == "A" {
                    Formula::universal(body)
                } else {
                    Formula::existential(body)
                }
            }
            Tok::Ident(name) if name == "mu_P" || name == "mu_D" => {
                self.bump();
                let order = if name == "mu_P" {
                    OrderKind::Plausibility
                } else {
                    OrderKind::Desirability
                };
                Formula::mu(order, self.unary()?)
            }
            _ => self.primary()?,
        };
        self.depth -= 1;
        Ok(f)
    }

    /// Everything after `[` in a dynamic or plan modality.
    fn bracketed(&mut self) -> PResult<Formula> {
        let op = match self.peek().clone() {
            Tok::Bang => Some((DynamicOp::Announce, "an announcement")),
            Tok::Ident(name) => match name.as_str() {
                "up_P" => Some((DynamicOp::Upgrade(OrderKind::Plausibility), "an upgrade")),
                "up_D" => Some((DynamicOp::Upgrade(OrderKind::Desirability), "an upgrade")),
                "drop_P" => Some((DynamicOp::Contract(OrderKind::Plausibility), "a contraction")),
                "drop_D" => Some((DynamicOp::Contract(OrderKind::Desirability), "a contraction")),
                _ => None,
            },
            _ => {
                return Err(self.unexpected(alloc::vec![
                    "`!`",
                    "`up_P`",
                    "`up_D`",
                    "`drop_P`",
                    "`drop_D`",
                    "plan name"
                ]))
            }
        };
        match op {
            Some((op, context)) => {
                self.bump();
                let arg_pos = self.pos();
                let argument = self.formula()?;
                if !argument.is_propositional() {
                    return Err(self.error_at(arg_pos, ParseErrorKind::NotPropositional { context }));
                }
                self.expect(Tok::RBracket, "`]`")?;
                Ok(Formula::dynamic(op, argument, self.unary()?))
            }
            None => {
                let alpha = self.plan_symbol()?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok(Formula::plan(alpha, self.unary()?))
            }
        }
    }

    fn plan_symbol(&mut self) -> PResult<PlanSymbol> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                PlanSymbol::new(&name).map_err(|_| self.error_at(pos, ParseErrorKind::Reserved(name)))
            }
            _ => Err(self.unexpected(alloc::vec!["plan name"])),
        }
    }

    fn primary(&mut self) -> PResult<Formula> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "T" => Ok(Formula::Top),
                    "F" => Ok(Formula::Bottom),
                    "B" => self.attitude(AttitudeKind::Belief, &name),
                    "G" => self.attitude(AttitudeKind::Goal, &name),
                    "AdmInt" => self.attitude(AttitudeKind::AdmissibleIntention, &name),
                    "Int" => self.attitude(AttitudeKind::Intention, &name),
                    "I" => self.intends(),
                    n if RESERVED.contains(&n) => Err(self.error_at(pos, ParseErrorKind::Reserved(name))),
                    n if n.starts_with(|c: char| c.is_ascii_lowercase()) => Atom::new(n)
                        .map(Formula::Atom)
                        .map_err(|_| self.error_at(pos, ParseErrorKind::Reserved(name))),
                    _ => Err(self.error_at(pos, ParseErrorKind::UnknownOperator(name))),
                }
            }
            _ => Err(self.unexpected(alloc::vec!["formula"])),
        }
    }

    fn attitude(&mut self, kind: AttitudeKind, name: &str) -> PResult<Formula> {
        self.expect(Tok::LParen, "`(`")?;
        if *self.peek() == Tok::RParen {
            return Err(self.error_at(
                self.pos(),
                ParseErrorKind::Arity {
                    operator: name.to_string(),
                    detail: "takes a consequent and an optional `| condition`",
                },
            ));
        }
        let consequent = self.conjunction()?;
        let condition = if *self.peek() == Tok::Bar {
            self.bump();
            self.formula()?
        } else {
            Formula::Top
        };
        match self.peek() {
            Tok::RParen => {
                self.bump();
                Ok(Formula::attitude(kind, consequent, condition))
            }
            Tok::Comma => Err(self.error_at(
                self.pos(),
                ParseErrorKind::Arity {
                    operator: name.to_string(),
                    detail: "separates consequent and condition with `|`, not `,`",
                },
            )),
            _ => Err(self.unexpected(alloc::vec!["`|`", "`)`"])),
        }
    }

    fn intends(&mut self) -> PResult<Formula> {
        self.expect(Tok::LParen, "`(`")?;
        if *self.peek() == Tok::RParen {
            return Err(self.error_at(
                self.pos(),
                ParseErrorKind::Arity {
                    operator: "I".into(),
                    detail: "takes exactly one plan name",
                },
            ));
        }
        let alpha = self.plan_symbol()?;
        match self.peek() {
            Tok::RParen => {
                self.bump();
                Ok(Formula::Intends(alpha))
            }
            Tok::Comma | Tok::Bar => Err(self.error_at(
                self.pos(),
                ParseErrorKind::Arity {
                    operator: "I".into(),
                    detail: "takes exactly one plan name",
                },
            )),
            _ => Err(self.unexpected(alloc::vec!["`)`"])),
        }
    }
}

/// Parses a formula in the ASCII concrete syntax.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        depth: 0,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected(alloc::vec!["`&`", "`|`", "`->`", "end of input"]));
    }
    Ok(f)
}

/// Parses a formula and rejects anything beyond Boolean connectives.
pub fn parse_propositional(text: &str) -> Result<Formula, crate::Error> {
    let f = parse(text)?;
    if f.is_propositional() {
        Ok(f)
    } else {
        Err(crate::Error::NotPropositional(f.to_string()))
    }
}
