//! The golden fixture corpus: proofs, Kripke models, groupoids and formulas
//! stored as JSON under `fixtures/`, indexed by `fixtures/index.json`.
//!
//! Every fixture is also produced by [`catalog`], so the files on disk can
//! be compared against (and regenerated from) the code that builds them.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{parse, print, Formula};
use crate::groupoid::{FiniteGroupoid, GroupTable, HLevel};
use crate::kernel::{
    check_proof, derived_theorem, galois_backward, DerivedTag, Proof, ProofBuilder, System,
};
use crate::kripke::{countermodel_search, KripkeModel};
use crate::modal::parse_modal;

/// Directory of the shipped fixtures.
pub fn fixtures_dir() -> PathBuf {
    match std::env::var_os("KCALC_FIXTURES") {
        Some(d) => PathBuf::from(d),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum IndexEntry {
    Proof {
        path: String,
        system: System,
        target: String,
    },
    Model {
        path: String,
        refutes: String,
        world: usize,
    },
    Groupoid {
        path: String,
        h_level: i32,
    },
    Formula {
        path: String,
    },
}

impl IndexEntry {
    pub fn path(&self) -> &str {
        match self {
            IndexEntry::Proof { path, .. }
            | IndexEntry::Model { path, .. }
            | IndexEntry::Groupoid { path, .. }
            | IndexEntry::Formula { path } => path,
        }
    }
}

pub type FixtureIndex = BTreeMap<String, IndexEntry>;

/// A formula with the verdicts expected from the deciders, keyed by
/// `cpc`, `ipc`, `s4` or `medvedev3` (Medvedev frames up to base 3).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaFixture {
    pub formula: String,
    #[serde(default, skip_serializing_if = "is_false")]
    pub modal: bool,
    pub verdicts: BTreeMap<String, bool>,
}

fn is_false(b: &bool) -> bool {
    !b
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fixture {
    Proof {
        proof: Proof,
        system: System,
    },
    Model {
        model: KripkeModel,
        refutes: Formula,
        world: usize,
    },
    Groupoid {
        groupoid: FiniteGroupoid,
        h_level: HLevel,
    },
    Formula(FormulaFixture),
}

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("no fixture named `{0}`")]
    Missing(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("fixture `{name}` is malformed: {message}")]
    Malformed { name: String, message: String },
    #[error("fixture `{name}` does not validate: {message}")]
    Invalid { name: String, message: String },
}

fn read(path: &Path) -> Result<String, FixtureError> {
    fs::read_to_string(path).map_err(|e| FixtureError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn load_index(dir: &Path) -> Result<FixtureIndex, FixtureError> {
    let text = read(&dir.join("index.json"))?;
    serde_json::from_str(&text).map_err(|e| FixtureError::Malformed {
        name: "index".into(),
        message: e.to_string(),
    })
}

/// Loads and validates a fixture from the shipped corpus.
pub fn load(name: &str) -> Result<Fixture, FixtureError> {
    load_from(&fixtures_dir(), name)
}

pub fn load_from(dir: &Path, name: &str) -> Result<Fixture, FixtureError> {
    let index = load_index(dir)?;
    let entry = index
        .get(name)
        .ok_or_else(|| FixtureError::Missing(name.to_string()))?;
    let text = read(&dir.join(entry.path()))?;
    let malformed = |message: String| FixtureError::Malformed {
        name: name.into(),
        message,
    };
    let invalid = |message: String| FixtureError::Invalid {
        name: name.into(),
        message,
    };
    match entry {
        IndexEntry::Proof { system, target, .. } => {
            let proof = Proof::from_json(&text).map_err(|e| malformed(e.to_string()))?;
            let target = parse(target).map_err(|e| malformed(e.to_string()))?;
            if proof.target != target {
                return Err(invalid(format!(
                    "proves `{}`, index says `{}`",
                    proof.target, target
                )));
            }
            let report = check_proof(&proof, *system);
            if let Some(reason) = report.reason {
                return Err(invalid(format!(
                    "rejected at {:?}: {reason}",
                    report.failed_step
                )));
            }
            Ok(Fixture::Proof {
                proof,
                system: *system,
            })
        }
        IndexEntry::Model { refutes, world, .. } => {
            let model = KripkeModel::from_json(&text).map_err(|e| malformed(e.to_string()))?;
            let refutes = parse(refutes).map_err(|e| malformed(e.to_string()))?;
            match model.eval(*world, &refutes) {
                Ok(false) => Ok(Fixture::Model {
                    model,
                    refutes,
                    world: *world,
                }),
                Ok(true) => Err(invalid(format!("world {world} forces `{refutes}`"))),
                Err(e) => Err(invalid(e.to_string())),
            }
        }
        IndexEntry::Groupoid { h_level, .. } => {
            let groupoid =
                FiniteGroupoid::from_json(&text).map_err(|e| malformed(e.to_string()))?;
            let level = groupoid.h_level();
            if level != HLevel(*h_level) {
                return Err(invalid(format!("h-level is {level}, index says {h_level}")));
            }
            Ok(Fixture::Groupoid {
                groupoid,
                h_level: level,
            })
        }
        IndexEntry::Formula { .. } => {
            let f: FormulaFixture =
                serde_json::from_str(&text).map_err(|e| malformed(e.to_string()))?;
            let parsed = if f.modal {
                parse_modal(&f.formula)
                    .map(|_| ())
                    .map_err(|e| e.to_string())
            } else {
                parse(&f.formula).map(|_| ()).map_err(|e| e.to_string())
            };
            parsed.map_err(malformed)?;
            Ok(Fixture::Formula(f))
        }
    }
}

/// One generated fixture: its index entry and file contents.
#[derive(Clone, Debug)]
pub struct CatalogItem {
    pub name: String,
    pub entry: IndexEntry,
    pub contents: String,
}

/// Names of the Galois family: five inputs of shape `?α -> p` and five of
/// shape `α -> !p`.
pub const GALOIS_FORWARD_INPUTS: [&str; 5] = [
    "galois-fwd-01",
    "galois-fwd-02",
    "galois-fwd-03",
    "galois-fwd-04",
    "galois-fwd-05",
];
pub const GALOIS_BACKWARD_INPUTS: [&str; 5] = [
    "galois-bwd-01",
    "galois-bwd-02",
    "galois-bwd-03",
    "galois-bwd-04",
    "galois-bwd-05",
];

/// The Kreisel-Putnam formula.
pub const KP_FORMULA: &str = "(~a -> b | c) -> (~a -> b) | (~a -> c)";

fn f(text: &str) -> Formula {
    parse(text).expect("catalog formulas parse")
}

fn one_axiom(name: &str, assign: &[(&str, &str)]) -> Proof {
    let vals: Vec<(&str, Formula)> = assign.iter().map(|(k, v)| (*k, f(v))).collect();
    let refs: Vec<(&str, &Formula)> = vals.iter().map(|(k, v)| (*k, v)).collect();
    let mut b = ProofBuilder::new();
    b.axiom(name, &refs).expect("catalog axioms instantiate");
    b.finish()
}

fn identity(x: &str) -> Proof {
    let mut b = ProofBuilder::new();
    b.identity(&f(x)).expect("identity builds");
    b.finish()
}

fn proofs() -> Vec<(&'static str, System, Proof)> {
    let mut out = vec![
        (
            "ipc-a1",
            System::Ipc,
            one_axiom("A1", &[("x", "a"), ("y", "b")]),
        ),
        ("ipc-identity", System::Ipc, identity("a")),
        ("cpc-identity", System::Cpc, identity("P")),
        ("cpc-dne", System::Cpc, one_axiom("A10", &[("x", "P")])),
        ("hc-b1", System::Hc, one_axiom("B1", &[("p", "P")])),
        ("hc-b2", System::Hc, one_axiom("B2", &[("alpha", "a")])),
        (
            "hc-b3",
            System::Hc,
            one_axiom("B3", &[("p", "P"), ("q", "Q")]),
        ),
        (
            "hc-b4",
            System::Hc,
            one_axiom("B4", &[("alpha", "a"), ("beta", "b")]),
        ),
        ("hc-b5", System::Hc, one_axiom("B5", &[])),
    ];
    for (name, tag) in [
        ("s4-k-derivation", DerivedTag::S4K),
        ("s4-t-derivation", DerivedTag::S4T),
        ("s4-4-derivation", DerivedTag::S44),
        ("s4-nec-demo", DerivedTag::S4NecDemo),
        ("iel-coreflection", DerivedTag::IelCoreflection),
        ("iel-k-derivation", DerivedTag::IelK),
        ("iel-consistency", DerivedTag::IelConsistency),
    ] {
        out.push((name, System::Hc, derived_theorem(tag)));
    }

    // ?(a & b) -> ?a
    let mut b = ProofBuilder::new();
    let a6 = b.axiom("A6", &[("x", &f("a")), ("y", &f("b"))]).unwrap();
    let lifted = b.hc(a6);
    let b4 = b
        .axiom("B4", &[("alpha", &f("a & b")), ("beta", &f("a"))])
        .unwrap();
    b.mp(lifted, b4).unwrap();
    let query_and = b.finish();

    // !(P & Q) -> !P
    let mut b = ProofBuilder::new();
    let a6 = b.axiom("A6", &[("x", &f("P")), ("y", &f("Q"))]).unwrap();
    let lifted = b.ch(a6);
    let b3 = b
        .axiom("B3", &[("p", &f("P & Q")), ("q", &f("P"))])
        .unwrap();
    b.mp(lifted, b3).unwrap();
    let bang_and = b.finish();

    // a & b -> !?a
    let mut b = ProofBuilder::new();
    let a6 = b.axiom("A6", &[("x", &f("a")), ("y", &f("b"))]).unwrap();
    let b2 = b.axiom("B2", &[("alpha", &f("a"))]).unwrap();
    b.syllogism(a6, b2).unwrap();
    let and_coreflect = b.finish();

    let false_crossed =
        galois_backward(&one_axiom("A9", &[("x", "!falseP")])).expect("A9 has the right shape");

    let forward = [
        identity("?a"),
        one_axiom("B1", &[("p", "P")]),
        query_and,
        false_crossed,
        one_axiom("A1", &[("x", "?a"), ("y", "?b")]),
    ];
    let backward = [
        one_axiom("B2", &[("alpha", "a")]),
        identity("!P"),
        bang_and,
        one_axiom("A9", &[("x", "!P")]),
        and_coreflect,
    ];
    for (name, p) in GALOIS_FORWARD_INPUTS.iter().zip(forward) {
        out.push((name, System::Hc, p));
    }
    for (name, p) in GALOIS_BACKWARD_INPUTS.iter().zip(backward) {
        out.push((name, System::Hc, p));
    }
    out
}

fn groupoids() -> Vec<(&'static str, FiniteGroupoid)> {
    let s3 = GroupTable::symmetric3();
    let c3 = GroupTable::cyclic(3);
    let bc3 = FiniteGroupoid::delooping(&c3);
    vec![
        ("point", FiniteGroupoid::point()),
        ("empty", FiniteGroupoid::empty()),
        ("discrete2", FiniteGroupoid::discrete(2)),
        ("discrete3", FiniteGroupoid::discrete(3)),
        ("bs3", FiniteGroupoid::delooping(&s3)),
        ("bc3", bc3.clone()),
        ("bc6", FiniteGroupoid::delooping(&GroupTable::cyclic(6))),
        (
            "bs3-relabeled",
            FiniteGroupoid::delooping(&s3.relabel(&[4, 2, 5, 0, 3, 1]).expect("a permutation")),
        ),
        ("two-bc3", bc3.disjoint_union(&bc3)),
        ("indiscrete2", FiniteGroupoid::indiscrete(2)),
        ("connected2-c3", FiniteGroupoid::connected(2, &c3)),
        // the two regular triangles on a segment, each with its six symmetries
        ("euclid-e", FiniteGroupoid::connected(2, &s3)),
    ]
}

fn formulas() -> Vec<(&'static str, FormulaFixture)> {
    let item = |formula: &str, modal: bool, verdicts: &[(&str, bool)]| FormulaFixture {
        formula: formula.to_string(),
        modal,
        verdicts: verdicts.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
    };
    vec![
        ("lem-proposition", item("P | ~P", false, &[("cpc", true)])),
        (
            "lem-problem",
            item("a | ~a", false, &[("ipc", false), ("medvedev3", false)]),
        ),
        (
            "dn-lem-problem",
            item("~~(a | ~a)", false, &[("ipc", true), ("medvedev3", true)]),
        ),
        (
            "decidable-dne",
            item("(a | ~a) -> (~~a -> a)", false, &[("ipc", true)]),
        ),
        ("dne-problem", item("~~a -> a", false, &[("ipc", false)])),
        (
            "kp-shape",
            item(KP_FORMULA, false, &[("ipc", false), ("medvedev3", true)]),
        ),
        ("box-t", item("Box P -> P", true, &[("s4", true)])),
        ("box-4", item("Box P -> Box Box P", true, &[("s4", true)])),
        ("box-converse-t", item("P -> Box P", true, &[("s4", false)])),
    ]
}

fn model_fixtures() -> Vec<(&'static str, &'static str)> {
    vec![
        ("lem-countermodel", "a | ~a"),
        ("dne-countermodel", "~~a -> a"),
        ("kp-countermodel", KP_FORMULA),
    ]
}

/// Every fixture, generated from code, in index order.
pub fn catalog() -> Vec<CatalogItem> {
    let mut out = Vec::new();
    for (name, system, proof) in proofs() {
        out.push(CatalogItem {
            name: name.to_string(),
            entry: IndexEntry::Proof {
                path: format!("proofs/{name}.json"),
                system,
                target: print(&proof.target),
            },
            contents: proof.to_json(),
        });
    }
    for (name, text) in model_fixtures() {
        let r = countermodel_search(&f(text), 5)
            .expect("search runs")
            .expect("catalog models exist");
        out.push(CatalogItem {
            name: name.to_string(),
            entry: IndexEntry::Model {
                path: format!("models/{name}.json"),
                refutes: text.to_string(),
                world: r.world,
            },
            contents: r.model.to_json(),
        });
    }
    for (name, g) in groupoids() {
        out.push(CatalogItem {
            name: name.to_string(),
            entry: IndexEntry::Groupoid {
                path: format!("groupoids/{name}.json"),
                h_level: g.h_level().0,
            },
            contents: g.to_json(),
        });
    }
    for (name, ff) in formulas() {
        out.push(CatalogItem {
            name: name.to_string(),
            entry: IndexEntry::Formula {
                path: format!("formulas/{name}.json"),
            },
            contents: serde_json::to_string_pretty(&ff).expect("fixture serializes"),
        });
    }
    out
}

/// Index of the generated catalog, pretty-printed.
pub fn catalog_index_json(items: &[CatalogItem]) -> String {
    let index: FixtureIndex = items
        .iter()
        .map(|i| (i.name.clone(), i.entry.clone()))
        .collect();
    serde_json::to_string_pretty(&index).expect("index serializes")
}

/// Writes the generated catalog under `dir`.
pub fn write_catalog(dir: &Path) -> std::io::Result<()> {
    let items = catalog();
    for item in &items {
        let path = dir.join(item.entry.path());
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::write(path, format!("{}\n", item.contents))?;
    }
    fs::write(
        dir.join("index.json"),
        format!("{}\n", catalog_index_json(&items)),
    )
}
