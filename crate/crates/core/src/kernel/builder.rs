use thiserror::Error;

use super::axioms::{fixed_sort, scheme};
use super::proof::{Justification, Proof, Step};
use crate::formula::{instantiate, print, Formula, InstantiateError, SchemeAssignment, Sort};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("no axiom {0} at that sort")]
    NoSuchScheme(String),
    #[error(transparent)]
    Instantiate(#[from] InstantiateError),
    #[error("cannot apply {rule} to step {step}: `{formula}`")]
    Inapplicable {
        rule: &'static str,
        step: usize,
        formula: String,
    },
}

/// Appends steps whose formulas are computed from their justifications.
/// The builder is untrusted: its output still goes through the checker.
#[derive(Clone, Debug, Default)]
pub struct ProofBuilder {
    steps: Vec<Step>,
}

impl ProofBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Starts from an existing derivation, keeping its step numbering.
    pub fn extending(p: &Proof) -> Self {
        ProofBuilder {
            steps: p.steps.clone(),
        }
    }

    pub fn formula(&self, i: usize) -> &Formula {
        &self.steps[i].formula
    }

    pub fn last(&self) -> usize {
        self.steps.len() - 1
    }

    fn push(&mut self, formula: Formula, by: Justification) -> usize {
        self.steps.push(Step { formula, by });
        self.steps.len() - 1
    }

    /// Adds an axiom instance. The sort of a polymorphic scheme is taken
    /// from the value of its `x` (or first) metavariable.
    pub fn axiom(&mut self, name: &str, assign: &[(&str, &Formula)]) -> Result<usize, BuildError> {
        let a: SchemeAssignment = assign
            .iter()
            .map(|(k, v)| (k.to_string(), (*v).clone()))
            .collect();
        let sort = match fixed_sort(name) {
            Some(s) => s,
            None => a
                .get("x")
                .or_else(|| a.iter().next().map(|(_, v)| v))
                .and_then(|v| v.sort().ok())
                .unwrap_or(Sort::Problem),
        };
        let s = scheme(name, sort).ok_or_else(|| BuildError::NoSuchScheme(name.to_string()))?;
        let formula = instantiate(&s.pattern, &a)?;
        Ok(self.push(
            formula,
            Justification::Axiom {
                name: name.to_string(),
                assign: a,
            },
        ))
    }

    /// Modus ponens: `from` holds `X`, `imp` holds `X -> Y`.
    pub fn mp(&mut self, from: usize, imp: usize) -> Result<usize, BuildError> {
        match &self.steps[imp].formula {
            Formula::Implies(l, r) if **l == self.steps[from].formula => {
                let y = (**r).clone();
                Ok(self.push(y, Justification::Mp { from, imp }))
            }
            other => Err(BuildError::Inapplicable {
                rule: "MP",
                step: imp,
                formula: print(other),
            }),
        }
    }

    pub fn ch(&mut self, from: usize) -> usize {
        let f = Formula::bang(self.steps[from].formula.clone());
        self.push(f, Justification::Ch { from })
    }

    pub fn hc(&mut self, from: usize) -> usize {
        let f = Formula::query(self.steps[from].formula.clone());
        self.push(f, Justification::Hc { from })
    }

    /// Derives `x -> x` with A1, A2 and modus ponens.
    pub fn identity(&mut self, x: &Formula) -> Result<usize, BuildError> {
        let xx = Formula::implies(x.clone(), x.clone());
        let s1 = self.axiom("A1", &[("x", x), ("y", &xx)])?;
        let s2 = self.axiom("A2", &[("x", x), ("y", &xx), ("z", x)])?;
        let s3 = self.mp(s1, s2)?;
        let s4 = self.axiom("A1", &[("x", x), ("y", x)])?;
        self.mp(s4, s3)
    }

    /// From `X -> Y` at `xy` and `Y -> Z` at `yz`, derives `X -> Z` with
    /// explicit A1/A2 instances.
    pub fn syllogism(&mut self, xy: usize, yz: usize) -> Result<usize, BuildError> {
        let (x, y) = split(&self.steps[xy].formula, "syllogism", xy)?;
        let (y2, z) = split(&self.steps[yz].formula, "syllogism", yz)?;
        if y != y2 {
            return Err(BuildError::Inapplicable {
                rule: "syllogism",
                step: yz,
                formula: print(&self.steps[yz].formula),
            });
        }
        let yz_f = self.steps[yz].formula.clone();
        // A1: (Y -> Z) -> (X -> (Y -> Z))
        let a1 = self.axiom("A1", &[("x", &yz_f), ("y", &x)])?;
        let x_yz = self.mp(yz, a1)?;
        // A2: (X -> (Y -> Z)) -> ((X -> Y) -> (X -> Z))
        let a2 = self.axiom("A2", &[("x", &x), ("y", &y), ("z", &z)])?;
        let xy_xz = self.mp(x_yz, a2)?;
        self.mp(xy, xy_xz)
    }

    pub fn finish(self) -> Proof {
        Proof::new(self.steps).expect("builder output has at least one step")
    }
}

fn split(f: &Formula, rule: &'static str, step: usize) -> Result<(Formula, Formula), BuildError> {
    match f {
        Formula::Implies(l, r) => Ok(((**l).clone(), (**r).clone())),
        other => Err(BuildError::Inapplicable {
            rule,
            step,
            formula: print(other),
        }),
    }
}
