//! Embeddings between the calculi: Kolmogorov's double-negation translation
//! from classical propositions into problems, and Gödel's translation from
//! problems into S4.
//!
//! The double-negation variant negates every subformula twice:
//! `N(A) = ~~a`, `N(x ∘ y) = ~~(N(x) ∘ N(y))`, `N(false) = false`.
//! The Gödel variant boxes atoms and implications only.

use thiserror::Error;

use crate::formula::{lowercase_name, print, Formula, Sort, SortError};
use crate::modal::ModalFormula;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("`{0}` contains a bridge operator")]
    BridgeNode(String),
    #[error("expected a {expected} formula, got a {found} one")]
    WrongSort { expected: Sort, found: Sort },
    #[error(transparent)]
    IllSorted(#[from] SortError),
}

fn gate(f: &Formula, sort: Sort) -> Result<(), TranslateError> {
    if !f.is_bridge_free() || f.has_metas() {
        return Err(TranslateError::BridgeNode(print(f)));
    }
    let found = f.sort()?;
    if found != sort {
        return Err(TranslateError::WrongSort {
            expected: sort,
            found,
        });
    }
    Ok(())
}

fn dneg(x: Formula) -> Formula {
    let h = Formula::Bottom(Sort::Problem);
    Formula::implies(Formula::implies(x, h.clone()), h)
}

/// Double-negation translation with proposition atoms renamed by lowercasing.
pub fn double_negation_translate(f: &Formula) -> Result<Formula, TranslateError> {
    double_negation_translate_with(f, &lowercase_name)
}

/// Double-negation translation with a caller-chosen atom renaming. The
/// renamed atoms must start with a lowercase letter.
pub fn double_negation_translate_with(
    f: &Formula,
    rename: &dyn Fn(&str) -> String,
) -> Result<Formula, TranslateError> {
    gate(f, Sort::Proposition)?;
    Ok(n(f, rename))
}

fn n(f: &Formula, rename: &dyn Fn(&str) -> String) -> Formula {
    match f {
        Formula::Atom { name, .. } => dneg(Formula::atom_of_sort(&rename(name), Sort::Problem)),
        Formula::Bottom(_) => Formula::Bottom(Sort::Problem),
        Formula::And(l, r) => dneg(Formula::and(n(l, rename), n(r, rename))),
        Formula::Or(l, r) => dneg(Formula::or(n(l, rename), n(r, rename))),
        Formula::Implies(l, r) => dneg(Formula::implies(n(l, rename), n(r, rename))),
        Formula::Meta { .. } | Formula::Bang(_) | Formula::Query(_) => {
            unreachable!("rejected by the gate")
        }
    }
}

/// Gödel translation of a problem formula into S4.
pub fn godel_translate(f: &Formula) -> Result<ModalFormula, TranslateError> {
    gate(f, Sort::Problem)?;
    Ok(g(f))
}

fn g(f: &Formula) -> ModalFormula {
    match f {
        Formula::Atom { name, .. } => ModalFormula::boxed(ModalFormula::atom(name)),
        Formula::Bottom(_) => ModalFormula::Bottom,
        Formula::And(l, r) => ModalFormula::and(g(l), g(r)),
        Formula::Or(l, r) => ModalFormula::or(g(l), g(r)),
        Formula::Implies(l, r) => ModalFormula::boxed(ModalFormula::implies(g(l), g(r))),
        Formula::Meta { .. } | Formula::Bang(_) | Formula::Query(_) => {
            unreachable!("rejected by the gate")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decision::{cpc_valid, ipc_provable, s4_valid};
    use crate::formula::parse;

    fn to_a(_: &str) -> String {
        "a".to_string()
    }

    #[test]
    fn double_negation_examples() {
        let p = parse("P").unwrap();
        assert_eq!(
            print(&double_negation_translate_with(&p, &to_a).unwrap()),
            "~~a"
        );
        assert_eq!(print(&double_negation_translate(&p).unwrap()), "~~p");
        let lem = parse("P | ~P").unwrap();
        let t = double_negation_translate_with(&lem, &to_a).unwrap();
        assert_eq!(t, parse("~~(~~a | ~~(~~a -> falseH))").unwrap());
        assert!(cpc_valid(&lem).unwrap().valid);
        assert!(ipc_provable(&t).unwrap());
    }

    #[test]
    fn godel_examples() {
        assert_eq!(
            godel_translate(&parse("a").unwrap()).unwrap().to_string(),
            "Box a"
        );
        let t = godel_translate(&parse("a -> a").unwrap()).unwrap();
        assert_eq!(t.to_string(), "Box(Box a -> Box a)");
        assert!(s4_valid(&t).valid);
        let lem = parse("a | ~a").unwrap();
        assert!(!ipc_provable(&lem).unwrap());
        assert!(!s4_valid(&godel_translate(&lem).unwrap()).valid);
    }

    #[test]
    fn gates() {
        assert!(matches!(
            double_negation_translate(&parse("a").unwrap()),
            Err(TranslateError::WrongSort { .. })
        ));
        assert!(matches!(
            godel_translate(&parse("P").unwrap()),
            Err(TranslateError::WrongSort { .. })
        ));
        assert!(matches!(
            godel_translate(&parse("!P").unwrap()),
            Err(TranslateError::BridgeNode(_))
        ));
    }
}
