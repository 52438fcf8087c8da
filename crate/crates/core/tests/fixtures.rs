//! The fixture files on disk must match the catalog built in code.
//! Run with `KCALC_BLESS=1` to regenerate them.

use std::fs;
use std::path::Path;

use kcalc::decision::{cpc_valid, ipc_provable, s4_valid};
use kcalc::fixtures::{catalog, catalog_index_json, load, load_index, write_catalog, Fixture};
use kcalc::formula::parse;
use kcalc::medvedev::medvedev_valid_upto;
use kcalc::modal::parse_modal;

fn dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures"))
}

#[test]
fn fixtures_match_catalog() {
    if std::env::var_os("KCALC_BLESS").is_some() {
        write_catalog(dir()).unwrap();
    }
    let items = catalog();
    let index = fs::read_to_string(dir().join("index.json")).unwrap();
    assert_eq!(index.trim_end(), catalog_index_json(&items));
    for item in &items {
        let on_disk = fs::read_to_string(dir().join(item.entry.path())).unwrap();
        assert_eq!(on_disk.trim_end(), item.contents, "{} differs", item.name);
    }
}

#[test]
fn every_fixture_loads() {
    let index = load_index(dir()).unwrap();
    assert_eq!(index.len(), catalog().len());
    for name in index.keys() {
        let fx = load(name).unwrap_or_else(|e| panic!("{e}"));
        if let Fixture::Model {
            model,
            refutes,
            world,
        } = fx
        {
            assert!(model.persistence_check(&refutes).unwrap());
            assert!(!model.eval(world, &refutes).unwrap());
        }
    }
}

#[test]
fn formula_verdicts_hold() {
    let index = load_index(dir()).unwrap();
    let mut checked = 0;
    for name in index.keys() {
        let Fixture::Formula(ff) = load(name).unwrap() else {
            continue;
        };
        for (logic, &expected) in &ff.verdicts {
            let got = match logic.as_str() {
                "s4" => s4_valid(&parse_modal(&ff.formula).unwrap()).valid,
                "cpc" => cpc_valid(&parse(&ff.formula).unwrap()).unwrap().valid,
                "ipc" => ipc_provable(&parse(&ff.formula).unwrap()).unwrap(),
                "medvedev3" => {
                    medvedev_valid_upto(&parse(&ff.formula).unwrap(), 3)
                        .unwrap()
                        .valid
                }
                other => panic!("{name}: unknown logic {other}"),
            };
            assert_eq!(got, expected, "{name} under {logic}");
            checked += 1;
        }
    }
    assert!(checked >= 10);
}
