//! Decision procedures: truth tables for CPC, contraction-free sequent
//! search for IPC, and a signed tableau for S4.

mod cpc;
mod ipc;
mod s4;

use std::collections::BTreeMap;

use serde_json::json;
use thiserror::Error;

use crate::formula::{print, Formula, Sort, SortError};
use crate::kripke::{KripkeError, Refutation};
use crate::modal::S4Model;

pub use cpc::{cpc_valid, MAX_CPC_ATOMS};
pub use ipc::{ipc_derivable, ipc_derivable_within, ipc_provable, DEFAULT_MAX_WORLDS};
pub use s4::s4_valid;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("`{0}` contains a bridge operator")]
    BridgeNode(String),
    #[error("expected a {expected} formula, got a {found} one")]
    WrongSort { expected: Sort, found: Sort },
    #[error(transparent)]
    IllSorted(#[from] SortError),
    #[error("{0} atoms exceed the truth-table limit of {MAX_CPC_ATOMS}")]
    TooManyAtoms(usize),
    #[error(transparent)]
    Kripke(#[from] KripkeError),
}

/// Why a formula is not valid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A falsifying Boolean assignment.
    Assignment(BTreeMap<String, bool>),
    /// A Kripke model refuting the formula.
    Countermodel(Refutation),
    /// The sequent search failed but no countermodel exists up to this size.
    NoCountermodelWithin(usize),
    /// A reflexive-transitive model read off an open tableau branch; the
    /// formula is false at world 0.
    OpenBranch(S4Model),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub valid: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn valid() -> Self {
        Verdict {
            valid: true,
            witness: None,
        }
    }

    pub fn invalid(w: Witness) -> Self {
        Verdict {
            valid: false,
            witness: Some(w),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let witness = match &self.witness {
            None => serde_json::Value::Null,
            Some(Witness::Assignment(a)) => json!({"kind": "assignment", "assignment": a}),
            Some(Witness::Countermodel(r)) => json!({
                "kind": "countermodel",
                "world": r.world,
                "model": r.model.to_json_value(),
            }),
            Some(Witness::NoCountermodelWithin(n)) => {
                json!({"kind": "no-countermodel-within", "max_worlds": n})
            }
            Some(Witness::OpenBranch(m)) => {
                json!({"kind": "open-branch", "world": 0, "model": m.to_json_value()})
            }
        };
        json!({"valid": self.valid, "witness": witness})
    }
}

/// Sort and bridge gate shared by the CPC and IPC deciders.
fn pure_of_sort(f: &Formula, sort: Sort) -> Result<(), DecideError> {
    if !f.is_bridge_free() {
        return Err(DecideError::BridgeNode(print(f)));
    }
    let found = f.sort()?;
    if found != sort {
        return Err(DecideError::WrongSort {
            expected: sort,
            found,
        });
    }
    Ok(())
}
