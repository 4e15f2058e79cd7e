//! The `prefagent` command line.
//!
//! Exit codes: `eval` gives 0 when the formula holds at every world and 1
//! when it does not; `trace` gives 1 on a failed assertion; `check` gives 1
//! when a plan is inconsistent or not intended. Any error gives 2.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use prefagent_core::checker::{extension, holds};
use prefagent_core::pgraph::extract_graph;
use prefagent_core::{parse, AgentModel, AttitudeKind, Formula, OrderKind, PlanLibrary, PracticalAgentModel, Preorder};
use serde::Serialize;

use crate::error::{Context, Error};
use crate::format::{self, LibraryFile, ModelFile, ProgramFile, SCHEMA};
use crate::script::parse_script;
use crate::session::{Session, StepReport};

#[derive(Parser, Debug)]
#[command(
    name = "prefagent",
    version,
    about = "Beliefs, goals and intentions over finite preference models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Source {
    /// Agent program (JSON) to induce the model from.
    #[arg(long, conflicts_with = "model")]
    program: Option<PathBuf>,
    /// Agent model (JSON).
    #[arg(long)]
    model: Option<PathBuf>,
    /// Plan library (JSON); empty when omitted.
    #[arg(long)]
    library: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a formula at every world.
    Eval {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        json: bool,
    },
    /// Apply an operation script step by step.
    Trace {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        script: PathBuf,
        #[arg(long)]
        json: bool,
        /// Write the final model here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Drop inconsistent intentions after every change.
        #[arg(long)]
        auto_filter: bool,
    },
    /// Print the practical agent model induced by a program.
    Induce {
        #[arg(long)]
        program: PathBuf,
        #[arg(long)]
        library: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        /// Write the model here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a program whose priority graphs induce the given model.
    Extract {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        json: bool,
        /// Write the program here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that adopted plans are consistent, believed executable and intended.
    Check {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        json: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::Trace { .. } => "trace",
            Command::Induce { .. } => "induce",
            Command::Extract { .. } => "extract",
            Command::Check { .. } => "check",
        }
    }

    fn json(&self) -> bool {
        match self {
            Command::Eval { json, .. }
            | Command::Trace { json, .. }
            | Command::Induce { json, .. }
            | Command::Extract { json, .. }
            | Command::Check { json, .. } => *json,
        }
    }
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let json = cli.command.json();
    let name = cli.command.name();
    match execute(cli.command) {
        Ok(Outcome { code, text }) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error[{}]: {e}", e.reason());
            if json {
                let report = ErrorReport {
                    schema: SCHEMA,
                    command: name,
                    status: "error",
                    reason: e.reason(),
                    plan: e.plan().map(str::to_string),
                    message: e.to_string(),
                };
                let _ = out.write_all(format::to_json(&report).as_bytes());
            }
            2
        }
    }
}

struct Outcome {
    code: u8,
    text: String,
}

#[derive(Serialize)]
struct ErrorReport {
    schema: u32,
    command: &'static str,
    status: &'static str,
    reason: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    plan: Option<String>,
    message: String,
}

fn execute(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Eval { source, formula, json } => eval(&source, &formula, json),
        Command::Trace {
            source,
            script,
            json,
            out,
            auto_filter,
        } => trace(&source, &script, json, out.as_deref(), auto_filter),
        Command::Induce {
            program,
            library,
            json,
            out,
        } => induce(&program, library.as_deref(), json, out.as_deref()),
        Command::Extract { model, json, out } => extract(&model, json, out.as_deref()),
        Command::Check { source, json } => check(&source, json),
    }
}

fn load_library(path: Option<&Path>) -> Result<PlanLibrary, Error> {
    match path {
        Some(p) => format::load::<LibraryFile>(p)?.to_library(),
        None => Ok(PlanLibrary::empty()),
    }
}

/// The starting model. With `checked`, adopted plans must be consistent.
fn load_start(source: &Source, lib: &PlanLibrary, checked: bool) -> Result<PracticalAgentModel, Error> {
    let (model, intentions) = match (&source.program, &source.model) {
        (Some(p), None) => {
            let ag = format::load::<ProgramFile>(p)?.to_program()?;
            (ag.induce_model().context("program")?, ag.intentions().clone())
        }
        (None, Some(m)) => format::load::<ModelFile>(m)?.to_model()?,
        _ => return Err(Error::Usage("give exactly one of --program or --model".into())),
    };
    for alpha in &intentions {
        lib.get(alpha).context("intentions")?;
    }
    if checked {
        PracticalAgentModel::new(model, lib, intentions).context("intentions")
    } else {
        Ok(PracticalAgentModel::with_intentions_unchecked(model, intentions))
    }
}

fn write_out<T: Serialize>(path: Option<&Path>, value: &T) -> Result<(), Error> {
    match path {
        Some(p) => format::save(p, value),
        None => Ok(()),
    }
}

fn valuation(m: &AgentModel, w: usize) -> String {
    m.signature().bits(m.assignment(w))
}

fn atom_header(m: &AgentModel) -> String {
    m.signature().atoms().iter().map(|a| a.as_str()).collect()
}

fn world_table(m: &AgentModel, mut extra: impl FnMut(usize) -> String, extra_header: &str) -> String {
    let ids: Vec<String> = m.ids().iter().map(|id| id.0.to_string()).collect();
    let id_width = ids.iter().map(String::len).max().unwrap_or(0).max(2);
    let header = atom_header(m);
    let val_width = header.len().max(1);
    let mut lines = vec![format!("{:>id_width$}  {:<val_width$}  {extra_header}", "id", header)];
    for (w, id) in ids.iter().enumerate() {
        lines.push(format!(
            "{id:>id_width$}  {:<val_width$}  {}",
            valuation(m, w),
            extra(w)
        ));
    }
    lines.iter().map(|l| format!("{}\n", l.trim_end())).collect()
}

/// `1 ~ 3 < 0 ~ 2` for total preorders; otherwise the strict pairs and ties.
fn describe_order(m: &AgentModel, o: &Preorder) -> String {
    let n = m.len();
    let id = |w: usize| m.id(w).0;
    let total = (0..n).all(|a| (0..n).all(|b| o.le(a, b) || o.le(b, a)));
    if total {
        let mut worlds: Vec<usize> = (0..n).collect();
        worlds.sort_by_key(|&w| ((0..n).filter(|&v| o.lt(v, w)).count(), id(w)));
        let mut s = String::new();
        for (i, &w) in worlds.iter().enumerate() {
            if i > 0 {
                s.push_str(if o.le(w, worlds[i - 1]) { " ~ " } else { " < " });
            }
            s.push_str(&id(w).to_string());
        }
        return s;
    }
    let mut strict = Vec::new();
    let mut ties = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if o.lt(a, b) {
                strict.push(format!("{} < {}", id(a), id(b)));
            } else if a < b && o.le(a, b) && o.le(b, a) {
                ties.push(format!("{} ~ {}", id(a), id(b)));
            }
        }
    }
    strict.extend(ties);
    if strict.is_empty() {
        "incomparable".into()
    } else {
        strict.join(", ")
    }
}

fn names<'a>(it: impl IntoIterator<Item = &'a prefagent_core::PlanSymbol>) -> Vec<String> {
    it.into_iter().map(|s| s.as_str().to_string()).collect()
}

fn braces(items: &[impl ToString]) -> String {
    format!(
        "{{{}}}",
        items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    )
}

#[derive(Serialize)]
struct WorldValue {
    id: u32,
    valuation: String,
    value: bool,
}

#[derive(Serialize)]
struct EvalReport {
    schema: u32,
    command: &'static str,
    formula: String,
    atoms: Vec<String>,
    worlds: Vec<WorldValue>,
    holds: bool,
}

fn eval(source: &Source, text: &str, json: bool) -> Result<Outcome, Error> {
    let formula = parse(text).map_err(prefagent_core::Error::from).context("formula")?;
    let lib = load_library(source.library.as_deref())?;
    let pm = load_start(source, &lib, true)?;
    let ext = extension(&pm, &lib, &formula).context("formula")?;
    let m = &pm.model;
    let global = ext.is_full();
    let text = if json {
        format::to_json(&EvalReport {
            schema: SCHEMA,
            command: "eval",
            formula: formula.to_string(),
            atoms: m.signature().atoms().iter().map(|a| a.as_str().to_string()).collect(),
            worlds: (0..m.len())
                .map(|w| WorldValue {
                    id: m.id(w).0,
                    valuation: valuation(m, w),
                    value: ext.contains(w),
                })
                .collect(),
            holds: global,
        })
    } else {
        let mut s = format!("formula: {formula}\n");
        s.push_str(&world_table(m, |w| ext.contains(w).to_string(), "value"));
        s.push_str(&format!(
            "{} at {}/{} worlds\n",
            if global { "holds" } else { "fails" },
            ext.count(),
            m.len()
        ));
        s
    };
    Ok(Outcome {
        code: if global { 0 } else { 1 },
        text,
    })
}

#[derive(Serialize)]
struct TraceReport {
    schema: u32,
    command: &'static str,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    failed_step: Option<usize>,
    steps: Vec<StepReport>,
}

fn describe_step(r: &StepReport) -> String {
    let mut s = format!("step {} (line {}): {}\n", r.step, r.line, r.op);
    s.push_str(&format!(
        "  worlds {}  min_P {}  min_D {}  I {}  p-consistent {}\n",
        r.worlds,
        braces(&r.min_p),
        braces(&r.min_d),
        braces(&r.intentions),
        if r.p_consistent { "yes" } else { "no" },
    ));
    if !r.dropped.is_empty() {
        s.push_str(&format!("  dropped {}\n", braces(&r.dropped)));
    }
    match r.assertion {
        Some(true) => s.push_str("  assertion holds\n"),
        Some(false) => s.push_str("  assertion FAILED\n"),
        None => {}
    }
    s
}

fn trace(source: &Source, script: &Path, json: bool, out: Option<&Path>, auto_filter: bool) -> Result<Outcome, Error> {
    let text = std::fs::read_to_string(script).map_err(|e| Error::Io {
        path: script.to_path_buf(),
        source: e,
    })?;
    let lines = parse_script(&text)?;
    let lib = load_library(source.library.as_deref())?;
    let start = load_start(source, &lib, true)?;
    let mut session = Session::new(start, lib, auto_filter);
    let mut steps = Vec::new();
    let mut failed_step = None;
    for (i, line) in lines.iter().enumerate() {
        let report = session.run(i + 1, line)?;
        let failed = report.assertion == Some(false);
        steps.push(report);
        if failed {
            failed_step = Some(i + 1);
            break;
        }
    }
    let current = session.current();
    write_out(out, &ModelFile::from_model(&current.model, Some(&current.intentions)))?;
    let status = if failed_step.is_some() {
        "assertion-failed"
    } else {
        "ok"
    };
    let text = if json {
        format::to_json(&TraceReport {
            schema: SCHEMA,
            command: "trace",
            status,
            failed_step,
            steps,
        })
    } else {
        let mut s: String = steps.iter().map(describe_step).collect();
        match failed_step {
            Some(k) => s.push_str(&format!("assertion failed at step {k}\n")),
            None => s.push_str(&format!("ok ({} steps)\n", steps.len())),
        }
        s
    };
    Ok(Outcome {
        code: if failed_step.is_some() { 1 } else { 0 },
        text,
    })
}

fn describe_model(pm: &PracticalAgentModel) -> String {
    let m = &pm.model;
    let mut s = format!("worlds: {}\n", m.len());
    s.push_str(&world_table(m, |_| String::new(), ""));
    s.push_str(&format!(
        "plausibility: {}\n",
        describe_order(m, m.order(OrderKind::Plausibility))
    ));
    s.push_str(&format!(
        "desirability: {}\n",
        describe_order(m, m.order(OrderKind::Desirability))
    ));
    s.push_str(&format!("intentions: {}\n", braces(&names(&pm.intentions))));
    s
}

fn induce(program: &Path, library: Option<&Path>, json: bool, out: Option<&Path>) -> Result<Outcome, Error> {
    let lib = load_library(library)?;
    let ag = format::load::<ProgramFile>(program)?.to_program()?;
    let pm = ag.induce(&lib).context("program")?;
    let file = ModelFile::from_model(&pm.model, Some(&pm.intentions));
    write_out(out, &file)?;
    Ok(Outcome {
        code: 0,
        text: if json {
            format::to_json(&file)
        } else {
            describe_model(&pm)
        },
    })
}

fn extract(model: &Path, json: bool, out: Option<&Path>) -> Result<Outcome, Error> {
    let (m, intentions) = format::load::<ModelFile>(model)?.to_model()?;
    let beliefs = extract_graph(&m.preference_model(OrderKind::Plausibility)).context("plausibility")?;
    let desires = extract_graph(&m.preference_model(OrderKind::Desirability)).context("desirability")?;
    let file = ProgramFile::from_model(&m, &beliefs, &desires, &intentions);
    write_out(out, &file)?;
    let text = if json {
        format::to_json(&file)
    } else {
        let mut s = format!("K: {}\n", file.knowledge.join(", "));
        for (tag, g) in [("B", &beliefs), ("D", &desires)] {
            s.push_str(&format!("{tag}: {} nodes\n", g.len()));
            for (i, n) in g.nodes().iter().enumerate() {
                s.push_str(&format!("  {i}: {n}\n"));
            }
            for (i, j) in g.edges() {
                s.push_str(&format!("  {i} over {j}\n"));
            }
        }
        s.push_str(&format!("I: {}\n", braces(&names(&intentions))));
        s
    };
    Ok(Outcome { code: 0, text })
}

#[derive(Serialize)]
struct PlanCheck {
    plan: String,
    believed_pre: bool,
    admissible_post: bool,
    intended_post: bool,
}

#[derive(Serialize)]
struct CheckReport {
    schema: u32,
    command: &'static str,
    p_consistent: bool,
    intention_link: bool,
    plans: Vec<PlanCheck>,
}

fn check(source: &Source, json: bool) -> Result<Outcome, Error> {
    let lib = load_library(source.library.as_deref())?;
    let pm = load_start(source, &lib, false)?;
    let mut plans = Vec::new();
    for alpha in &pm.intentions {
        let plan = lib.get(alpha).context("intentions")?;
        let h = |f: Formula| holds(&pm, &lib, &f).context(format!("plan `{}`", alpha.as_str()));
        plans.push(PlanCheck {
            plan: alpha.as_str().to_string(),
            believed_pre: h(Formula::belief(plan.pre().clone(), Formula::Top))?,
            admissible_post: h(Formula::attitude(
                AttitudeKind::AdmissibleIntention,
                plan.post().clone(),
                Formula::Top,
            ))?,
            intended_post: h(Formula::attitude(
                AttitudeKind::Intention,
                plan.post().clone(),
                Formula::Top,
            ))?,
        });
    }
    let p_consistent = plans.iter().all(|p| p.believed_pre && p.admissible_post);
    let intention_link = plans.iter().all(|p| p.believed_pre && p.intended_post);
    let report = CheckReport {
        schema: SCHEMA,
        command: "check",
        p_consistent,
        intention_link,
        plans,
    };
    let text = if json {
        format::to_json(&report)
    } else {
        let yes = |b: bool| if b { "yes" } else { "no" };
        let mut s = String::from("plan  B(pre)  AdmInt(pos)  Int(pos)\n");
        for p in &report.plans {
            s.push_str(&format!(
                "{}  {}  {}  {}\n",
                p.plan,
                yes(p.believed_pre),
                yes(p.admissible_post),
                yes(p.intended_post)
            ));
        }
        s.push_str(&format!("p-consistent: {}\n", yes(p_consistent)));
        s.push_str(&format!(
            "plans believed executable and intended: {}\n",
            yes(intention_link)
        ));
        s
    };
    Ok(Outcome {
        code: if p_consistent && intention_link { 0 } else { 1 },
        text,
    })
}
