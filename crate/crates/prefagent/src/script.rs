//! Operation scripts for `prefagent trace`.
//!
//! One step per line; `#` starts a comment. Arguments of mental changes
//! are propositional.
//!
//! ```text
//! announce q
//! upgrade P p
//! contract D ~p
//! revise q          # contract D by ~q, then upgrade P by q
//! update alpha
//! filter
//! assert B(p|T)
//! ```

use prefagent_core::dynamics::MentalOp;
use prefagent_core::parse::parse_propositional;
use prefagent_core::{parse, Formula, OrderKind, PlanSymbol};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Step {
    Change(MentalOp),
    /// Drop adopted plans that are no longer consistent.
    Filter,
    /// Abort the trace unless the formula holds globally.
    Assert(Formula),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScriptLine {
    /// 1-based line in the source text.
    pub line: usize,
    /// The step as written, comment and surrounding space removed.
    pub text: String,
    pub step: Step,
}

pub fn parse_script(source: &str) -> Result<Vec<ScriptLine>, Error> {
    let mut out = Vec::new();
    for (i, raw) in source.lines().enumerate() {
        let line = i + 1;
        let text = raw.split('#').next().unwrap_or_default().trim();
        if text.is_empty() {
            continue;
        }
        let step = parse_step(text).map_err(|message| Error::Script { line, message })?;
        out.push(ScriptLine {
            line,
            text: text.to_string(),
            step,
        });
    }
    Ok(out)
}

fn parse_step(text: &str) -> Result<Step, String> {
    let (keyword, rest) = match text.split_once(char::is_whitespace) {
        Some((k, r)) => (k, r.trim()),
        None => (text, ""),
    };
    let prop = |s: &str| parse_propositional(s).map_err(|e| e.to_string());
    let order = |rest: &str| -> Result<(OrderKind, Formula), String> {
        let (tag, arg) = rest
            .split_once(char::is_whitespace)
            .ok_or_else(|| format!("`{keyword}` takes an order (P or D) and a formula"))?;
        let mut chars = tag.chars();
        let o = match (chars.next(), chars.next()) {
            (Some(c), None) => OrderKind::from_tag(c),
            _ => None,
        }
        .ok_or_else(|| format!("unknown order `{tag}`, expected P or D"))?;
        Ok((o, prop(arg.trim())?))
    };
    let needs_arg = |what: &str| {
        if rest.is_empty() {
            Err(format!("`{keyword}` takes {what}"))
        } else {
            Ok(())
        }
    };
    match keyword {
        "announce" => {
            needs_arg("a formula")?;
            Ok(Step::Change(MentalOp::Announce(prop(rest)?)))
        }
        "upgrade" => {
            let (o, f) = order(rest)?;
            Ok(Step::Change(MentalOp::Upgrade(o, f)))
        }
        "contract" => {
            let (o, f) = order(rest)?;
            Ok(Step::Change(MentalOp::Contract(o, f)))
        }
        "revise" => {
            needs_arg("a formula")?;
            Ok(Step::Change(MentalOp::believe_and_drop_opposing(prop(rest)?)))
        }
        "update" => {
            needs_arg("a plan name")?;
            Ok(Step::Change(MentalOp::Update(
                PlanSymbol::new(rest).map_err(|e| e.to_string())?,
            )))
        }
        "filter" if rest.is_empty() => Ok(Step::Filter),
        "filter" => Err("`filter` takes no argument".into()),
        "assert" => {
            needs_arg("a formula")?;
            Ok(Step::Assert(parse(rest).map_err(|e| e.to_string())?))
        }
        other => Err(format!("unknown step `{other}`")),
    }
}
