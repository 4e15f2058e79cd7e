//! Expansion of `mu` and the mental-attitude modalities into core operators.
//!
//! ```text
//! mu_X φ        ≡ φ & ~<<X>> φ
//! B(ψ|φ)        ≡ A(mu_P φ -> ψ)
//! G(ψ|φ)        ≡ A(mu_D φ -> ψ)
//! AdmInt(ψ|φ)   ≡ G(ψ|φ) & E(ψ & φ) & ~B(ψ|φ)
//! Int(ψ|φ)      ≡ AdmInt(ψ|φ) & ⋁_α (I(α) & B(pre(α) & [α]ψ | φ))
//! ```
//!
//! The disjunction in `Int` ranges over the whole library in symbol order
//! and is `F` for an empty library.

use alloc::boxed::Box;

use crate::error::Error;
use crate::formula::{AttitudeKind, Formula, OrderKind, Strictness};
use crate::plans::PlanLibrary;

/// Rewrites every sugar node of `f`, bottom-up.
///
/// Every plan symbol in `f` has to be in `lib`.
pub fn desugar(f: &Formula, lib: &PlanLibrary) -> Result<Formula, Error> {
    for alpha in f.plan_symbols() {
        lib.get(alpha)?;
    }
    go(f, lib)
}

fn go(f: &Formula, lib: &PlanLibrary) -> Result<Formula, Error> {
    let bx = |g: &Formula| go(g, lib).map(Box::new);
    Ok(match f {
        Formula::Top | Formula::Bottom | Formula::Atom(_) | Formula::Intends(_) => f.clone(),
        Formula::Not(a) => Formula::Not(bx(a)?),
        Formula::And(a, b) => Formula::And(bx(a)?, bx(b)?),
        Formula::Or(a, b) => Formula::Or(bx(a)?, bx(b)?),
        Formula::Implies(a, b) => Formula::Implies(bx(a)?, bx(b)?),
        Formula::Universal(a) => Formula::Universal(bx(a)?),
        Formula::Existential(a) => Formula::Existential(bx(a)?),
        Formula::Necessity(o, s, a) => Formula::Necessity(*o, *s, bx(a)?),
        Formula::Possibility(o, s, a) => Formula::Possibility(*o, *s, bx(a)?),
        Formula::Plan(alpha, a) => Formula::Plan(alpha.clone(), bx(a)?),
        Formula::Dynamic { op, argument, body } => Formula::Dynamic {
            op: *op,
            argument: bx(argument)?,
            body: bx(body)?,
        },
        Formula::Mu(o, a) => mu(*o, go(a, lib)?),
        Formula::Attitude {
            kind,
            consequent,
            condition,
        } => attitude(*kind, go(consequent, lib)?, go(condition, lib)?, lib)?,
    })
}

/// `φ & ~<<X>> φ` for an already expanded `φ`.
pub(crate) fn mu(order: OrderKind, f: Formula) -> Formula {
    Formula::and(
        f.clone(),
        Formula::not(Formula::possibility(order, Strictness::Strict, f)),
    )
}

fn conditional(order: OrderKind, consequent: Formula, condition: Formula) -> Formula {
    Formula::universal(Formula::implies(mu(order, condition), consequent))
}

/// One-step expansion of an attitude whose arguments are already expanded.
pub(crate) fn attitude(
    kind: AttitudeKind,
    consequent: Formula,
    condition: Formula,
    lib: &PlanLibrary,
) -> Result<Formula, Error> {
    Ok(match kind {
        AttitudeKind::Belief => conditional(OrderKind::Plausibility, consequent, condition),
        AttitudeKind::Goal => conditional(OrderKind::Desirability, consequent, condition),
        AttitudeKind::AdmissibleIntention => admissible(consequent, condition),
        AttitudeKind::Intention => {
            let backed = Formula::disjunction(lib.iter().map(|plan| {
                let alpha = plan.symbol().clone();
                let pre = go(plan.pre(), lib).expect("preconditions are propositional");
                Formula::and(
                    Formula::Intends(alpha.clone()),
                    conditional(
                        OrderKind::Plausibility,
                        Formula::and(pre, Formula::plan(alpha, consequent.clone())),
                        condition.clone(),
                    ),
                )
            }));
            Formula::and(admissible(consequent, condition), backed)
        }
    })
}

fn admissible(consequent: Formula, condition: Formula) -> Formula {
    Formula::and(
        Formula::and(
            conditional(OrderKind::Desirability, consequent.clone(), condition.clone()),
            Formula::existential(Formula::and(consequent.clone(), condition.clone())),
        ),
        Formula::not(conditional(OrderKind::Plausibility, consequent, condition)),
    )
}
