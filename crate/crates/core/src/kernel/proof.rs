use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{parse, print, Formula, ParseError, SchemeAssignment};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Axiom {
        name: String,
        assign: SchemeAssignment,
    },
    /// `from` holds `X`, `imp` holds `X -> Y`.
    Mp { from: usize, imp: usize },
    /// From a proposition `p`, infer the problem `!p`.
    Ch { from: usize },
    /// From a problem `α`, infer the proposition `?α`.
    Hc { from: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub formula: Formula,
    pub by: Justification,
}

/// A Hilbert-style derivation without hypotheses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub steps: Vec<Step>,
    pub target: Formula,
}

impl Proof {
    /// A proof whose target is its last step.
    pub fn new(steps: Vec<Step>) -> Option<Proof> {
        let target = steps.last()?.formula.clone();
        Some(Proof { steps, target })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn from_json(text: &str) -> Result<Proof, ProofFormatError> {
        let raw: Vec<RawStep> = serde_json::from_str(text)?;
        if raw.is_empty() {
            return Err(ProofFormatError::Empty);
        }
        let mut steps = Vec::with_capacity(raw.len());
        for (index, r) in raw.into_iter().enumerate() {
            let formula =
                parse(&r.formula).map_err(|source| ProofFormatError::Formula { index, source })?;
            let by = match r.by {
                RawBy::Axiom { name, assign } => {
                    let mut a = SchemeAssignment::new();
                    for (meta, text) in assign {
                        let value = parse(&text)
                            .map_err(|source| ProofFormatError::Formula { index, source })?;
                        a.insert(&meta, value);
                    }
                    Justification::Axiom { name, assign: a }
                }
                RawBy::Mp { from, imp } => Justification::Mp { from, imp },
                RawBy::Ch { from } => Justification::Ch { from },
                RawBy::Hc { from } => Justification::Hc { from },
            };
            steps.push(Step { formula, by });
        }
        Ok(Proof::new(steps).expect("nonempty"))
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let raw: Vec<RawStep> = self
            .steps
            .iter()
            .map(|s| RawStep {
                formula: print(&s.formula),
                by: match &s.by {
                    Justification::Axiom { name, assign } => RawBy::Axiom {
                        name: name.clone(),
                        assign: assign.iter().map(|(k, v)| (k.clone(), print(v))).collect(),
                    },
                    Justification::Mp { from, imp } => RawBy::Mp {
                        from: *from,
                        imp: *imp,
                    },
                    Justification::Ch { from } => RawBy::Ch { from: *from },
                    Justification::Hc { from } => RawBy::Hc { from: *from },
                },
            })
            .collect();
        serde_json::to_value(raw).expect("steps serialize")
    }

    /// Pretty JSON in the proof file format. The target is the last step.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("value serializes")
    }
}

#[derive(Debug, Error)]
pub enum ProofFormatError {
    #[error("malformed proof JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("proof has no steps")]
    Empty,
    #[error("step {index}: {source}")]
    Formula {
        index: usize,
        #[source]
        source: ParseError,
    },
}

#[derive(Serialize, Deserialize)]
struct RawStep {
    formula: String,
    #[serde(flatten)]
    by: RawBy,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "by", rename_all = "lowercase")]
enum RawBy {
    Axiom {
        name: String,
        #[serde(default)]
        assign: BTreeMap<String, String>,
    },
    Mp {
        from: usize,
        imp: usize,
    },
    Ch {
        from: usize,
    },
    Hc {
        from: usize,
    },
}
