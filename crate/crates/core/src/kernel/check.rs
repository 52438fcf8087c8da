//! The trusted checker. Everything else in the crate produces proofs; only
//! this file decides whether they are correct.

use serde::Serialize;
use thiserror::Error;

use super::axioms::{fixed_sort, is_known_axiom, scheme};
use super::proof::{Justification, Proof, Step};
use super::System;
use crate::formula::{instantiate, match_scheme, print, Formula, Sort};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("proof has no steps")]
    EmptyProof,
    #[error("step reference {reference} is not an earlier step")]
    BadReference { reference: usize },
    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),
    #[error("axiom {name} at {sort} sort is not part of {system}")]
    AxiomNotInSystem {
        name: String,
        sort: Sort,
        system: System,
    },
    #[error("not an instance of {name}: {detail}")]
    SchemeMismatch { name: String, detail: String },
    #[error("modus ponens mismatch: {0}")]
    MpMismatch(String),
    #[error("rule {rule} illegal outside HC")]
    RuleOutsideHc { rule: &'static str },
    #[error("rule {rule} mismatch: {detail}")]
    RuleMismatch { rule: &'static str, detail: String },
    #[error("sort violation: {0}")]
    SortViolation(String),
    #[error("last step `{found}` differs from target `{expected}`")]
    TargetMismatch { expected: String, found: String },
}

/// Outcome of [`check_proof`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub accepted: bool,
    pub failed_step: Option<usize>,
    pub reason: Option<CheckError>,
}

impl CheckReport {
    fn accepted() -> Self {
        CheckReport {
            accepted: true,
            failed_step: None,
            reason: None,
        }
    }

    fn rejected(step: Option<usize>, reason: CheckError) -> Self {
        CheckReport {
            accepted: false,
            failed_step: step,
            reason: Some(reason),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Out<'a> {
            verdict: &'a str,
            failed_step: Option<usize>,
            reason: Option<String>,
        }
        serde_json::to_value(Out {
            verdict: if self.accepted {
                "accepted"
            } else {
                "rejected"
            },
            failed_step: self.failed_step,
            reason: self.reason.as_ref().map(|r| r.to_string()),
        })
        .expect("report serializes")
    }
}

/// Checks every step of `p` against the schemes and rules of `system`.
pub fn check_proof(p: &Proof, system: System) -> CheckReport {
    if p.steps.is_empty() {
        return CheckReport::rejected(None, CheckError::EmptyProof);
    }
    if system != System::Hc {
        for (i, step) in p.steps.iter().enumerate() {
            let rule = match step.by {
                Justification::Ch { .. } => "CH",
                Justification::Hc { .. } => "HC",
                _ => continue,
            };
            return CheckReport::rejected(Some(i), CheckError::RuleOutsideHc { rule });
        }
    }
    for i in 0..p.steps.len() {
        if let Err(reason) = check_step(&p.steps, i, system) {
            return CheckReport::rejected(Some(i), reason);
        }
    }
    let last = p.steps.len() - 1;
    if p.steps[last].formula != p.target {
        return CheckReport::rejected(
            Some(last),
            CheckError::TargetMismatch {
                expected: print(&p.target),
                found: print(&p.steps[last].formula),
            },
        );
    }
    CheckReport::accepted()
}

fn earlier(steps: &[Step], i: usize, reference: usize) -> Result<&Formula, CheckError> {
    if reference >= i {
        return Err(CheckError::BadReference { reference });
    }
    Ok(&steps[reference].formula)
}

fn check_step(steps: &[Step], i: usize, system: System) -> Result<(), CheckError> {
    let step = &steps[i];
    let f = &step.formula;
    if f.has_metas() {
        return Err(CheckError::SortViolation(
            "step contains a metavariable".into(),
        ));
    }
    let sort = f
        .sort()
        .map_err(|e| CheckError::SortViolation(e.to_string()))?;
    match system {
        System::Cpc | System::Ipc => {
            let want = if system == System::Cpc {
                Sort::Proposition
            } else {
                Sort::Problem
            };
            if sort != want {
                return Err(CheckError::SortViolation(format!(
                    "{system} steps must be {want}-sorted, `{}` is {sort}",
                    print(f)
                )));
            }
            if !f.is_bridge_free() {
                return Err(CheckError::SortViolation(format!(
                    "`!`/`?` outside HC in `{}`",
                    print(f)
                )));
            }
        }
        System::Hc => {}
    }

    match &step.by {
        Justification::Axiom { name, assign } => {
            if !is_known_axiom(name) {
                return Err(CheckError::UnknownAxiom(name.clone()));
            }
            if let Some(fixed) = fixed_sort(name) {
                if fixed != sort {
                    return Err(CheckError::SchemeMismatch {
                        name: name.clone(),
                        detail: format!("instances are {fixed}-sorted, step is {sort}"),
                    });
                }
            }
            let s = scheme(name, sort).ok_or_else(|| CheckError::AxiomNotInSystem {
                name: name.clone(),
                sort,
                system,
            })?;
            if !s.systems.contains(&system) {
                return Err(CheckError::AxiomNotInSystem {
                    name: name.clone(),
                    sort,
                    system,
                });
            }
            if assign.is_empty() {
                if match_scheme(&s.pattern, f).is_none() {
                    return Err(CheckError::SchemeMismatch {
                        name: name.clone(),
                        detail: format!("`{}` does not match `{}`", print(f), print(&s.pattern)),
                    });
                }
            } else {
                let pattern_metas = metas_of(&s.pattern);
                if let Some((extra, _)) = assign.iter().find(|(k, _)| !pattern_metas.contains(k)) {
                    return Err(CheckError::SchemeMismatch {
                        name: name.clone(),
                        detail: format!("no metavariable `{extra}`"),
                    });
                }
                let inst =
                    instantiate(&s.pattern, assign).map_err(|e| CheckError::SchemeMismatch {
                        name: name.clone(),
                        detail: e.to_string(),
                    })?;
                if &inst != f {
                    return Err(CheckError::SchemeMismatch {
                        name: name.clone(),
                        detail: format!(
                            "assignment yields `{}`, step is `{}`",
                            print(&inst),
                            print(f)
                        ),
                    });
                }
            }
        }
        Justification::Mp { from, imp } => {
            let x = earlier(steps, i, *from)?;
            let xy = earlier(steps, i, *imp)?;
            match xy {
                Formula::Implies(l, r) if **l == *x && **r == *f => {}
                Formula::Implies(l, _) if **l != *x => {
                    return Err(CheckError::MpMismatch(format!(
                        "antecedent of step {imp} is not step {from}"
                    )))
                }
                Formula::Implies(..) => {
                    return Err(CheckError::MpMismatch(format!(
                        "consequent of step {imp} is not `{}`",
                        print(f)
                    )))
                }
                _ => {
                    return Err(CheckError::MpMismatch(format!(
                        "step {imp} is not an implication"
                    )))
                }
            }
        }
        Justification::Ch { from } => {
            let p = earlier(steps, i, *from)?;
            if p.sort().ok() != Some(Sort::Proposition) {
                return Err(CheckError::RuleMismatch {
                    rule: "CH",
                    detail: format!("step {from} is not a proposition"),
                });
            }
            if *f != Formula::bang(p.clone()) {
                return Err(CheckError::RuleMismatch {
                    rule: "CH",
                    detail: format!("expected `!` of step {from}"),
                });
            }
        }
        Justification::Hc { from } => {
            let a = earlier(steps, i, *from)?;
            if a.sort().ok() != Some(Sort::Problem) {
                return Err(CheckError::RuleMismatch {
                    rule: "HC",
                    detail: format!("step {from} is not a problem"),
                });
            }
            if *f != Formula::query(a.clone()) {
                return Err(CheckError::RuleMismatch {
                    rule: "HC",
                    detail: format!("expected `?` of step {from}"),
                });
            }
        }
    }
    Ok(())
}

fn metas_of(f: &Formula) -> Vec<&String> {
    f.subformulas()
        .into_iter()
        .filter_map(|g| match g {
            Formula::Meta { name, .. } => Some(name),
            _ => None,
        })
        .collect()
}
