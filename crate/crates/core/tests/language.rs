mod common;

use common::*;
use prefagent_core::{desugar, parse, Formula, PlanLibrary};
use proptest::prelude::*;

fn library() -> PlanLibrary {
    PlanLibrary::from_text([("a", "p", "q"), ("b", "T", "~p & r")]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn render_then_parse_is_identity(f in arb_formula(3, 6)) {
        let text = f.to_string();
        prop_assert_eq!(parse(&text).unwrap(), f, "rendered as {}", text);
    }

    #[test]
    fn desugar_removes_all_sugar_and_is_idempotent(f in arb_formula(3, 4)) {
        let lib = library();
        let once = desugar(&f, &lib).unwrap();
        prop_assert!(!once.has_sugar());
        prop_assert_eq!(desugar(&once, &lib).unwrap(), once.clone());
    }

    #[test]
    fn propositional_formulas_stay_propositional(f in arb_prop(3, 4)) {
        prop_assert!(f.is_propositional());
        prop_assert_eq!(desugar(&f, &PlanLibrary::empty()).unwrap(), f);
    }
}

#[test]
fn implication_associates_to_the_right() {
    let f = parse("p -> q -> r").unwrap();
    assert_eq!(
        f,
        Formula::implies(
            Formula::atom("p"),
            Formula::implies(Formula::atom("q"), Formula::atom("r"))
        )
    );
    assert_eq!(f.to_string(), "p -> q -> r");
    let left = Formula::implies(
        Formula::implies(Formula::atom("p"), Formula::atom("q")),
        Formula::atom("r"),
    );
    assert_eq!(parse(&left.to_string()).unwrap(), left);
}

#[test]
fn deep_nesting_is_rejected_not_overflowed() {
    let text = format!("{}p", "~".repeat(100_000));
    assert!(parse(&text).is_err());
}
