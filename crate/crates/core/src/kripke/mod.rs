//! Finite Kripke models for the problem sort, forcing, and canonical
//! countermodel search.

mod search;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{print, Formula};

pub(crate) use search::Program;
pub use search::{
    countermodel_exists, countermodel_search, preorders, Refutation, SEARCH_MAX_WORLDS,
};

/// Worlds are bits of a `u64`.
pub const MAX_WORLDS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum KripkeError {
    #[error("a model needs between 1 and {MAX_WORLDS} worlds, got {0}")]
    WorldCount(usize),
    #[error("unknown world {0}")]
    UnknownWorld(usize),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("valuation of `{atom}` is not persistent: true at {from} but not at {to}")]
    NotPersistent {
        atom: String,
        from: usize,
        to: usize,
    },
    #[error("`{0}` cannot be evaluated in a Kripke model")]
    Unsupported(String),
    #[error("countermodel search supports at most {SEARCH_MAX_WORLDS} worlds, got {0}")]
    SearchTooLarge(usize),
    #[error("malformed model file: {0}")]
    Json(String),
}

/// A finite preorder with a persistent valuation.
///
/// `up[w]` is the set of worlds `v` with `w <= v`, always reflexive and
/// transitively closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    up: Vec<u64>,
    val: BTreeMap<String, u64>,
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    worlds: usize,
    le: Vec<[usize; 2]>,
    #[serde(default)]
    val: BTreeMap<String, Vec<usize>>,
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

pub(crate) fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Reflexive-transitive closure of a relation given as successor masks.
pub(crate) fn closure(n: usize, mut up: Vec<u64>) -> Vec<u64> {
    for (w, m) in up.iter_mut().enumerate() {
        *m |= 1 << w;
    }
    loop {
        let mut changed = false;
        for w in 0..n {
            let mut m = up[w];
            for v in bits(up[w]) {
                m |= up[v];
            }
            if m != up[w] {
                up[w] = m;
                changed = true;
            }
        }
        if !changed {
            return up;
        }
    }
}

impl KripkeModel {
    /// Builds a model from order pairs `(i, j)` meaning `i <= j`; the
    /// reflexive-transitive closure is taken. Atoms listed in `val` form
    /// the atom universe of the model.
    pub fn new(
        worlds: usize,
        le: &[(usize, usize)],
        val: &BTreeMap<String, Vec<usize>>,
    ) -> Result<Self, KripkeError> {
        if worlds == 0 || worlds > MAX_WORLDS {
            return Err(KripkeError::WorldCount(worlds));
        }
        let mut up = vec![0u64; worlds];
        for &(i, j) in le {
            for w in [i, j] {
                if w >= worlds {
                    return Err(KripkeError::UnknownWorld(w));
                }
            }
            up[i] |= 1 << j;
        }
        let up = closure(worlds, up);
        let mut masks = BTreeMap::new();
        for (atom, ws) in val {
            let mut m = 0u64;
            for &w in ws {
                if w >= worlds {
                    return Err(KripkeError::UnknownWorld(w));
                }
                m |= 1 << w;
            }
            masks.insert(atom.clone(), m);
        }
        Self::from_masks(up, masks)
    }

    /// Builds a model from closed successor masks and valuation masks.
    pub(crate) fn from_masks(
        up: Vec<u64>,
        val: BTreeMap<String, u64>,
    ) -> Result<Self, KripkeError> {
        let m = KripkeModel { up, val };
        for (atom, &set) in &m.val {
            for w in bits(set) {
                if let Some(v) = bits(m.up[w] & !set).next() {
                    return Err(KripkeError::NotPersistent {
                        atom: atom.clone(),
                        from: w,
                        to: v,
                    });
                }
            }
        }
        Ok(m)
    }

    pub fn worlds(&self) -> usize {
        self.up.len()
    }

    pub fn le(&self, w: usize, v: usize) -> bool {
        self.up[w] >> v & 1 == 1
    }

    /// Pairs `(i, j)` with `i <= j` and `i != j`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.worlds();
        (0..n)
            .flat_map(|i| (0..n).filter(move |&j| i != j).map(move |j| (i, j)))
            .filter(|&(i, j)| self.le(i, j))
            .collect()
    }

    pub fn atoms(&self) -> impl Iterator<Item = &String> {
        self.val.keys()
    }

    /// Worlds where `atom` holds, or `None` outside the atom universe.
    pub fn valuation(&self, atom: &str) -> Option<Vec<usize>> {
        self.val.get(atom).map(|&m| bits(m).collect())
    }

    pub fn is_upset(&self, set: u64) -> bool {
        bits(set).all(|w| self.up[w] & !set == 0)
    }

    /// The set of worlds forcing `f`, as a bitmask.
    pub fn forced_set(&self, f: &Formula) -> Result<u64, KripkeError> {
        self.forced_with(f, &|name| {
            self.val
                .get(name)
                .copied()
                .ok_or_else(|| KripkeError::UnknownAtom(name.to_string()))
        })
    }

    fn forced_with(
        &self,
        f: &Formula,
        atom: &dyn Fn(&str) -> Result<u64, KripkeError>,
    ) -> Result<u64, KripkeError> {
        Ok(match f {
            Formula::Atom { name, .. } => atom(name)?,
            Formula::Bottom(_) => 0,
            Formula::And(l, r) => self.forced_with(l, atom)? & self.forced_with(r, atom)?,
            Formula::Or(l, r) => self.forced_with(l, atom)? | self.forced_with(r, atom)?,
            Formula::Implies(l, r) => {
                let a = self.forced_with(l, atom)?;
                let b = self.forced_with(r, atom)?;
                let mut out = 0;
                for (w, &up) in self.up.iter().enumerate() {
                    if up & a & !b == 0 {
                        out |= 1 << w;
                    }
                }
                out
            }
            Formula::Meta { .. } | Formula::Bang(_) | Formula::Query(_) => {
                return Err(KripkeError::Unsupported(print(f)))
            }
        })
    }

    /// Whether world `w` forces `f`.
    pub fn eval(&self, w: usize, f: &Formula) -> Result<bool, KripkeError> {
        if w >= self.worlds() {
            return Err(KripkeError::UnknownWorld(w));
        }
        Ok(self.forced_set(f)? >> w & 1 == 1)
    }

    /// Whether the forced set of `f` is upward closed. Atoms outside the
    /// model's universe are read as true nowhere.
    pub fn persistence_check(&self, f: &Formula) -> Result<bool, KripkeError> {
        let set = self.forced_with(f, &|name| Ok(self.val.get(name).copied().unwrap_or(0)))?;
        Ok(self.is_upset(set))
    }

    pub fn from_json(text: &str) -> Result<Self, KripkeError> {
        let file: ModelFile =
            serde_json::from_str(text).map_err(|e| KripkeError::Json(e.to_string()))?;
        let le: Vec<(usize, usize)> = file.le.iter().map(|p| (p[0], p[1])).collect();
        for name in file.val.keys() {
            if crate::formula::Sort::of_atom_name(name).is_none() {
                return Err(KripkeError::Json(format!("`{name}` is not an atom name")));
            }
        }
        Self::new(file.worlds, &le, &file.val)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let file = ModelFile {
            worlds: self.worlds(),
            le: self
                .strict_pairs()
                .into_iter()
                .map(|(i, j)| [i, j])
                .collect(),
            val: self
                .val
                .keys()
                .map(|k| (k.clone(), self.valuation(k).unwrap()))
                .collect(),
        };
        serde_json::to_value(file).expect("model serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("model serializes")
    }
}

impl fmt::Display for KripkeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .strict_pairs()
            .iter()
            .map(|(i, j)| format!("{i}<={j}"))
            .collect();
        write!(f, "{} world(s)", self.worlds())?;
        if !pairs.is_empty() {
            write!(f, "; order {}", pairs.join(", "))?;
        }
        for (atom, &m) in &self.val {
            let ws: BTreeSet<usize> = bits(m).collect();
            let ws: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
            write!(f, "; {atom} at {{{}}}", ws.join(","))?;
        }
        Ok(())
    }
}
