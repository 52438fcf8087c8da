//! The two directions of the adjunction between `?` and `!`:
//! `?α -> p` is derivable exactly when `α -> !p` is.

use thiserror::Error;

use super::builder::{BuildError, ProofBuilder};
use super::check::{check_proof, CheckReport};
use super::proof::Proof;
use super::System;
use crate::formula::{print, Formula};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GaloisError {
    #[error("target `{found}` does not have the shape `{expected}`")]
    ShapeMismatch {
        expected: &'static str,
        found: String,
    },
    #[error("input proof rejected at step {step:?}: {reason}")]
    InputRejected { step: Option<usize>, reason: String },
    #[error("internal construction failed: {0}")]
    Build(#[from] BuildError),
}

fn accepted_in_hc(p: &Proof) -> Result<(), GaloisError> {
    let CheckReport {
        accepted,
        failed_step,
        reason,
    } = check_proof(p, System::Hc);
    if accepted {
        Ok(())
    } else {
        Err(GaloisError::InputRejected {
            step: failed_step,
            reason: reason.map(|r| r.to_string()).unwrap_or_default(),
        })
    }
}

/// Turns an HC proof of `?α -> p` into an HC proof of `α -> !p`.
pub fn galois_forward(p: &Proof) -> Result<Proof, GaloisError> {
    let (alpha, prop) = match &p.target {
        Formula::Implies(l, r) => match &**l {
            Formula::Query(alpha) => ((**alpha).clone(), (**r).clone()),
            _ => return Err(shape("?α -> p", &p.target)),
        },
        _ => return Err(shape("?α -> p", &p.target)),
    };
    accepted_in_hc(p)?;

    let mut b = ProofBuilder::extending(p);
    let given = b.last();
    // !(?α -> p)
    let lifted = b.ch(given);
    // !(?α -> p) -> (!?α -> !p)
    let query_alpha = Formula::query(alpha.clone());
    let b3 = b.axiom("B3", &[("p", &query_alpha), ("q", &prop)])?;
    // !?α -> !p
    let reduced = b.mp(lifted, b3)?;
    // α -> !?α
    let b2 = b.axiom("B2", &[("alpha", &alpha)])?;
    b.syllogism(b2, reduced)?;
    Ok(b.finish())
}

/// Turns an HC proof of `α -> !p` into an HC proof of `?α -> p`.
pub fn galois_backward(p: &Proof) -> Result<Proof, GaloisError> {
    let (alpha, prop) = match &p.target {
        Formula::Implies(l, r) => match &**r {
            Formula::Bang(prop) => ((**l).clone(), (**prop).clone()),
            _ => return Err(shape("α -> !p", &p.target)),
        },
        _ => return Err(shape("α -> !p", &p.target)),
    };
    accepted_in_hc(p)?;

    let mut b = ProofBuilder::extending(p);
    let given = b.last();
    // ?(α -> !p)
    let lifted = b.hc(given);
    // ?(α -> !p) -> (?α -> ?!p)
    let bang_p = Formula::bang(prop.clone());
    let b4 = b.axiom("B4", &[("alpha", &alpha), ("beta", &bang_p)])?;
    // ?α -> ?!p
    let reduced = b.mp(lifted, b4)?;
    // ?!p -> p
    let b1 = b.axiom("B1", &[("p", &prop)])?;
    b.syllogism(reduced, b1)?;
    Ok(b.finish())
}

fn shape(expected: &'static str, found: &Formula) -> GaloisError {
    GaloisError::ShapeMismatch {
        expected,
        found: print(found),
    }
}
