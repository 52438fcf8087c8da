//! Two-sorted formula language: problems (intuitionistic) and propositions
//! (classical), connected by the bridge operators `!` and `?`.

mod parse;
mod print;
mod scheme;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use parse::{parse, parse_scheme, ParseError};
pub use print::{print, print_with, Notation};
pub use scheme::{instantiate, match_scheme, InstantiateError, SchemeAssignment};

/// The two sorts of the combined calculus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sort {
    Problem,
    Proposition,
}

impl Sort {
    pub fn other(self) -> Sort {
        match self {
            Sort::Problem => Sort::Proposition,
            Sort::Proposition => Sort::Problem,
        }
    }

    /// Name of the falsity constant of this sort.
    pub fn bottom_name(self) -> &'static str {
        match self {
            Sort::Problem => "falseH",
            Sort::Proposition => "falseP",
        }
    }

    /// The sort an atom name denotes: lowercase initial for problems,
    /// uppercase initial for propositions.
    pub fn of_atom_name(name: &str) -> Option<Sort> {
        let first = name.chars().next()?;
        if first.is_lowercase() {
            Some(Sort::Problem)
        } else if first.is_uppercase() {
            Some(Sort::Proposition)
        } else {
            None
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Problem => f.write_str("problem"),
            Sort::Proposition => f.write_str("proposition"),
        }
    }
}

/// A formula tree. Trees are not sort-checked on construction; use
/// [`Formula::sort`] to check one. [`parse`] only yields well-sorted trees.
///
/// `Meta` nodes only occur in axiom schemes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom {
        name: String,
        sort: Sort,
    },
    Meta {
        name: String,
        sort: Sort,
    },
    Bottom(Sort),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    /// `!p`: the problem of proving proposition `p`.
    Bang(Box<Formula>),
    /// `?α`: the proposition that problem `α` has a solution.
    Query(Box<Formula>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("sort error at `{node}`: expected {expected}, found {found}")]
pub struct SortError {
    /// The offending subformula, printed.
    pub node: String,
    pub expected: Sort,
    pub found: Sort,
}

impl Formula {
    /// An atom whose sort follows the case of its first letter.
    ///
    /// Panics if the name does not start with a cased letter.
    pub fn atom(name: &str) -> Formula {
        let sort = Sort::of_atom_name(name).expect("atom names start with a cased letter");
        Formula::Atom {
            name: name.to_string(),
            sort,
        }
    }

    pub fn atom_of_sort(name: &str, sort: Sort) -> Formula {
        Formula::Atom {
            name: name.to_string(),
            sort,
        }
    }

    pub fn meta(name: &str, sort: Sort) -> Formula {
        Formula::Meta {
            name: name.to_string(),
            sort,
        }
    }

    pub fn bottom(sort: Sort) -> Formula {
        Formula::Bottom(sort)
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn bang(inner: Formula) -> Formula {
        Formula::Bang(Box::new(inner))
    }

    pub fn query(inner: Formula) -> Formula {
        Formula::Query(Box::new(inner))
    }

    /// `~x`, i.e. `x -> bottom` at the sort of `x`.
    pub fn not(inner: Formula) -> Result<Formula, SortError> {
        let sort = inner.sort()?;
        Ok(Formula::implies(inner, Formula::Bottom(sort)))
    }

    /// Negation for trees already known to be well-sorted.
    pub(crate) fn not_of_sort(inner: Formula, sort: Sort) -> Formula {
        Formula::implies(inner, Formula::Bottom(sort))
    }

    /// Computes the sort of the tree, or reports the first offending node
    /// in left-to-right post-order.
    pub fn sort(&self) -> Result<Sort, SortError> {
        match self {
            Formula::Atom { sort, .. } | Formula::Meta { sort, .. } | Formula::Bottom(sort) => {
                Ok(*sort)
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                let ls = l.sort()?;
                let rs = r.sort()?;
                if ls != rs {
                    return Err(SortError {
                        node: print(self),
                        expected: ls,
                        found: rs,
                    });
                }
                Ok(ls)
            }
            Formula::Bang(inner) => {
                let s = inner.sort()?;
                if s != Sort::Proposition {
                    return Err(SortError {
                        node: print(self),
                        expected: Sort::Proposition,
                        found: s,
                    });
                }
                Ok(Sort::Problem)
            }
            Formula::Query(inner) => {
                let s = inner.sort()?;
                if s != Sort::Problem {
                    return Err(SortError {
                        node: print(self),
                        expected: Sort::Problem,
                        found: s,
                    });
                }
                Ok(Sort::Proposition)
            }
        }
    }

    pub fn is_well_sorted(&self) -> bool {
        self.sort().is_ok()
    }

    /// True if no `!` or `?` occurs.
    pub fn is_bridge_free(&self) -> bool {
        match self {
            Formula::Atom { .. } | Formula::Meta { .. } | Formula::Bottom(_) => true,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.is_bridge_free() && r.is_bridge_free()
            }
            Formula::Bang(_) | Formula::Query(_) => false,
        }
    }

    pub fn has_metas(&self) -> bool {
        match self {
            Formula::Meta { .. } => true,
            Formula::Atom { .. } | Formula::Bottom(_) => false,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.has_metas() || r.has_metas()
            }
            Formula::Bang(x) | Formula::Query(x) => x.has_metas(),
        }
    }

    /// Atom names occurring in the formula, sorted.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom { name, .. } => {
                out.insert(name.clone());
            }
            Formula::Meta { .. } | Formula::Bottom(_) => {}
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
            Formula::Bang(x) | Formula::Query(x) => x.collect_atoms(out),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom { .. } | Formula::Meta { .. } | Formula::Bottom(_) => 1,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                1 + l.size() + r.size()
            }
            Formula::Bang(x) | Formula::Query(x) => 1 + x.size(),
        }
    }

    /// Tree height, counting a leaf as 1.
    pub fn height(&self) -> usize {
        match self {
            Formula::Atom { .. } | Formula::Meta { .. } | Formula::Bottom(_) => 1,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                1 + l.height().max(r.height())
            }
            Formula::Bang(x) | Formula::Query(x) => 1 + x.height(),
        }
    }

    /// If this is `x -> bottom` with matching sorts, returns `x`.
    pub fn as_negation(&self) -> Option<&Formula> {
        match self {
            Formula::Implies(l, r) => match **r {
                Formula::Bottom(s) if l.sort().ok() == Some(s) => Some(l),
                _ => None,
            },
            _ => None,
        }
    }

    /// Returns `(l, r)` if this is an implication.
    pub fn as_implication(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Implies(l, r) => Some((l, r)),
            _ => None,
        }
    }

    /// Rename every atom through `f`, keeping the tree shape. The new sort of
    /// each atom is `sort`, and bottoms are moved to `sort` as well.
    pub fn resort(&self, sort: Sort, rename: &dyn Fn(&str) -> String) -> Formula {
        match self {
            Formula::Atom { name, .. } => Formula::Atom {
                name: rename(name),
                sort,
            },
            Formula::Meta { name, .. } => Formula::Meta {
                name: name.clone(),
                sort,
            },
            Formula::Bottom(_) => Formula::Bottom(sort),
            Formula::And(l, r) => Formula::and(l.resort(sort, rename), r.resort(sort, rename)),
            Formula::Or(l, r) => Formula::or(l.resort(sort, rename), r.resort(sort, rename)),
            Formula::Implies(l, r) => {
                Formula::implies(l.resort(sort, rename), r.resort(sort, rename))
            }
            Formula::Bang(x) => Formula::bang(x.resort(sort, rename)),
            Formula::Query(x) => Formula::query(x.resort(sort, rename)),
        }
    }

    /// Immediate subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom { .. } | Formula::Meta { .. } | Formula::Bottom(_) => vec![],
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => vec![l, r],
            Formula::Bang(x) | Formula::Query(x) => vec![x],
        }
    }

    /// All subformula occurrences in pre-order, the formula itself first.
    pub fn subformulas(&self) -> Vec<&Formula> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            let kids = out[i].children();
            out.extend(kids);
            i += 1;
        }
        out
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

/// Lowercase re-sorting used to move a proposition formula into the
/// problem sort (`P` becomes `p`).
pub fn lowercase_name(name: &str) -> String {
    name.to_lowercase()
}

/// Uppercase the initial letter, moving a problem atom name to the
/// proposition sort (`a` becomes `A`).
pub fn uppercase_name(name: &str) -> String {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sort_of_bridge_nodes() {
        let p = Formula::atom("P");
        let a = Formula::atom("a");
        assert_eq!(Formula::bang(p.clone()).sort(), Ok(Sort::Problem));
        assert_eq!(Formula::query(a.clone()).sort(), Ok(Sort::Proposition));
        let err = Formula::bang(a.clone()).sort().unwrap_err();
        assert_eq!(err.expected, Sort::Proposition);
        assert_eq!(err.found, Sort::Problem);
        assert_eq!(err.node, "!a");
    }

    #[test]
    fn mixed_binary_is_rejected_at_the_offending_node() {
        let f = Formula::implies(
            Formula::atom("a"),
            Formula::and(Formula::atom("P"), Formula::atom("b")),
        );
        let err = f.sort().unwrap_err();
        assert_eq!(err.expected, Sort::Proposition);
        assert_eq!(err.found, Sort::Problem);
    }

    #[test]
    fn negation_is_implication_into_bottom() {
        let n = Formula::not(Formula::atom("a")).unwrap();
        assert_eq!(
            n,
            Formula::implies(Formula::atom("a"), Formula::Bottom(Sort::Problem))
        );
        assert_eq!(n.as_negation(), Some(&Formula::atom("a")));
    }

    #[test]
    fn resort_moves_everything() {
        let f = parse("P | ~P").unwrap();
        let g = f.resort(Sort::Problem, &lowercase_name);
        assert_eq!(g, parse("p | ~p").unwrap());
    }
}
