use std::collections::BTreeMap;

use thiserror::Error;

use super::{Formula, Sort};

/// Values for the metavariables of a scheme.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchemeAssignment(BTreeMap<String, Formula>);

impl SchemeAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, meta: &str, value: Formula) -> Self {
        self.insert(meta, value);
        self
    }

    pub fn insert(&mut self, meta: &str, value: Formula) -> Option<Formula> {
        self.0.insert(meta.to_string(), value)
    }

    pub fn get(&self, meta: &str) -> Option<&Formula> {
        self.0.get(meta)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Formula)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }
}

impl FromIterator<(String, Formula)> for SchemeAssignment {
    fn from_iter<T: IntoIterator<Item = (String, Formula)>>(iter: T) -> Self {
        SchemeAssignment(iter.into_iter().collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InstantiateError {
    #[error("metavariable `{0}` is not assigned")]
    Unassigned(String),
    #[error("metavariable `{meta}` requires a {expected} formula, got `{value}` ({found})")]
    SortMismatch {
        meta: String,
        expected: Sort,
        found: String,
        value: String,
    },
    #[error("value for `{meta}` is ill-sorted: {reason}")]
    IllSorted { meta: String, reason: String },
}

/// Replaces every metavariable of `scheme` by its assigned formula.
pub fn instantiate(scheme: &Formula, a: &SchemeAssignment) -> Result<Formula, InstantiateError> {
    Ok(match scheme {
        Formula::Meta { name, sort } => {
            let value = a
                .get(name)
                .ok_or_else(|| InstantiateError::Unassigned(name.clone()))?;
            let found = value.sort().map_err(|e| InstantiateError::IllSorted {
                meta: name.clone(),
                reason: e.to_string(),
            })?;
            if found != *sort {
                return Err(InstantiateError::SortMismatch {
                    meta: name.clone(),
                    expected: *sort,
                    found: found.to_string(),
                    value: value.to_string(),
                });
            }
            value.clone()
        }
        Formula::Atom { .. } | Formula::Bottom(_) => scheme.clone(),
        Formula::And(l, r) => Formula::and(instantiate(l, a)?, instantiate(r, a)?),
        Formula::Or(l, r) => Formula::or(instantiate(l, a)?, instantiate(r, a)?),
        Formula::Implies(l, r) => Formula::implies(instantiate(l, a)?, instantiate(r, a)?),
        Formula::Bang(x) => Formula::bang(instantiate(x, a)?),
        Formula::Query(x) => Formula::query(instantiate(x, a)?),
    })
}

/// First-order matching of a scheme against a concrete formula.
pub fn match_scheme(scheme: &Formula, f: &Formula) -> Option<SchemeAssignment> {
    let mut out = SchemeAssignment::new();
    if match_into(scheme, f, &mut out) {
        Some(out)
    } else {
        None
    }
}

fn match_into(scheme: &Formula, f: &Formula, out: &mut SchemeAssignment) -> bool {
    match (scheme, f) {
        (Formula::Meta { name, sort }, _) => {
            if f.sort().ok() != Some(*sort) {
                return false;
            }
            match out.get(name) {
                Some(prev) => prev == f,
                None => {
                    out.insert(name, f.clone());
                    true
                }
            }
        }
        (Formula::And(a, b), Formula::And(c, d))
        | (Formula::Or(a, b), Formula::Or(c, d))
        | (Formula::Implies(a, b), Formula::Implies(c, d)) => {
            match_into(a, c, out) && match_into(b, d, out)
        }
        (Formula::Bang(a), Formula::Bang(c)) | (Formula::Query(a), Formula::Query(c)) => {
            match_into(a, c, out)
        }
        _ => scheme == f,
    }
}
