use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::formula::{parse_scheme, Formula, Sort};

/// The three calculi the kernel checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum System {
    /// Classical propositional calculus, proposition sort only.
    Cpc,
    /// Intuitionistic propositional calculus, problem sort only.
    Ipc,
    /// Propositional fragment of the combined calculus of problems and
    /// propositions.
    Hc,
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            System::Cpc => "CPC",
            System::Ipc => "IPC",
            System::Hc => "HC",
        })
    }
}

impl FromStr for System {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cpc" => Ok(System::Cpc),
            "ipc" => Ok(System::Ipc),
            "hc" => Ok(System::Hc),
            other => Err(format!(
                "unknown system `{other}` (expected cpc, ipc or hc)"
            )),
        }
    }
}

/// One axiom scheme at one sort.
#[derive(Clone, Debug)]
pub struct AxiomScheme {
    pub name: &'static str,
    /// Sort of every instance.
    pub sort: Sort,
    pub pattern: Formula,
    pub systems: &'static [System],
}

// Implicational/propositional basis, sort-polymorphic in x, y, z.
const PROPOSITIONAL: [(&str, &str); 10] = [
    ("A1", "x -> (y -> x)"),
    ("A2", "(x -> (y -> z)) -> ((x -> y) -> (x -> z))"),
    ("A3", "x -> x | y"),
    ("A4", "y -> x | y"),
    ("A5", "(x -> z) -> ((y -> z) -> (x | y -> z))"),
    ("A6", "x & y -> x"),
    ("A7", "x & y -> y"),
    ("A8", "x -> (y -> x & y)"),
    ("A9", "BOTTOM -> x"),
    ("A10", "~~x -> x"),
];

// Bridge axioms between the two sorts.
const BRIDGE: [(&str, &str, Sort); 5] = [
    ("B1", "?!p -> p", Sort::Proposition),
    ("B2", "alpha -> !?alpha", Sort::Problem),
    ("B3", "!(p -> q) -> (!p -> !q)", Sort::Problem),
    (
        "B4",
        "?(alpha -> beta) -> (?alpha -> ?beta)",
        Sort::Proposition,
    ),
    ("B5", "~!falseP", Sort::Problem),
];

const BRIDGE_METAS: [(&str, Sort); 4] = [
    ("p", Sort::Proposition),
    ("q", Sort::Proposition),
    ("alpha", Sort::Problem),
    ("beta", Sort::Problem),
];

fn build() -> Vec<AxiomScheme> {
    const INTUITIONISTIC_SIDE: &[System] = &[System::Ipc, System::Hc];
    const CLASSICAL_SIDE: &[System] = &[System::Cpc, System::Hc];
    const HC_ONLY: &[System] = &[System::Hc];

    let mut out = Vec::new();
    for sort in [Sort::Problem, Sort::Proposition] {
        let metas = [("x", sort), ("y", sort), ("z", sort)];
        for (name, text) in PROPOSITIONAL {
            if name == "A10" && sort == Sort::Problem {
                continue;
            }
            let text = text.replace("BOTTOM", sort.bottom_name());
            let pattern = parse_scheme(&text, &metas).expect("built-in scheme parses");
            let systems = match sort {
                Sort::Problem => INTUITIONISTIC_SIDE,
                Sort::Proposition => CLASSICAL_SIDE,
            };
            out.push(AxiomScheme {
                name,
                sort,
                pattern,
                systems,
            });
        }
    }
    for (name, text, sort) in BRIDGE {
        let pattern = parse_scheme(text, &BRIDGE_METAS).expect("built-in scheme parses");
        debug_assert_eq!(pattern.sort(), Ok(sort));
        out.push(AxiomScheme {
            name,
            sort,
            pattern,
            systems: HC_ONLY,
        });
    }
    out
}

/// Every axiom scheme known to the kernel.
pub fn axiom_schemes() -> &'static [AxiomScheme] {
    static SCHEMES: OnceLock<Vec<AxiomScheme>> = OnceLock::new();
    SCHEMES.get_or_init(build)
}

/// Looks up a scheme by name and instance sort.
pub fn scheme(name: &str, sort: Sort) -> Option<&'static AxiomScheme> {
    axiom_schemes()
        .iter()
        .find(|s| s.name == name && s.sort == sort)
}

pub fn is_known_axiom(name: &str) -> bool {
    axiom_schemes().iter().any(|s| s.name == name)
}

/// The instance sort of a bridge axiom, which does not depend on the
/// assignment. `None` for the sort-polymorphic schemes.
pub fn fixed_sort(name: &str) -> Option<Sort> {
    BRIDGE
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, _, s)| *s)
}
