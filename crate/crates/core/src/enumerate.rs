//! Formula enumeration for the cross-validation suites.
//!
//! Height counts leaves as 1, so height 3 over atoms `a, b` and `falseH`
//! gives 2703 formulas (negations appear as implications into `falseH`).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::formula::{lowercase_name, uppercase_name, Formula, Sort};

/// Default atoms of the enumeration suites.
pub const SUITE_ATOMS: [&str; 2] = ["a", "b"];
/// Default height bound of the exhaustive suite.
pub const SUITE_HEIGHT: usize = 3;
/// Default seed of the random suite.
pub const SUITE_SEED: u64 = 0x6b6f_6c6d;

fn leaves(atoms: &[&str], sort: Sort) -> Vec<Formula> {
    let name = |a: &str| match sort {
        Sort::Problem => lowercase_name(a),
        Sort::Proposition => uppercase_name(a),
    };
    let mut out: Vec<Formula> = atoms
        .iter()
        .map(|a| Formula::atom_of_sort(&name(a), sort))
        .collect();
    out.push(Formula::Bottom(sort));
    out
}

/// Every formula of height at most `max_height` built from the atoms (case
/// adjusted to the sort), bottom, `&`, `|` and `->`, in a fixed order.
pub fn formulas(atoms: &[&str], sort: Sort, max_height: usize) -> Vec<Formula> {
    if max_height == 0 {
        return Vec::new();
    }
    let mut all = leaves(atoms, sort);
    for _ in 1..max_height {
        let below = all.clone();
        let mut next = leaves(atoms, sort);
        for l in &below {
            for r in &below {
                next.push(Formula::and(l.clone(), r.clone()));
                next.push(Formula::or(l.clone(), r.clone()));
                next.push(Formula::implies(l.clone(), r.clone()));
            }
        }
        all = next;
    }
    all
}

/// The exhaustive problem-sort suite.
pub fn problem_suite() -> Vec<Formula> {
    formulas(&SUITE_ATOMS, Sort::Problem, SUITE_HEIGHT)
}

/// A random formula of height exactly `height`.
pub fn random_formula<R: Rng>(rng: &mut R, atoms: &[&str], sort: Sort, height: usize) -> Formula {
    if height <= 1 {
        let ls = leaves(atoms, sort);
        return ls[rng.gen_range(0..ls.len())].clone();
    }
    let tall = random_formula(rng, atoms, sort, height - 1);
    let other_height = rng.gen_range(1..height);
    let other = random_formula(rng, atoms, sort, other_height);
    let (l, r) = if rng.gen_bool(0.5) {
        (tall, other)
    } else {
        (other, tall)
    };
    match rng.gen_range(0..3) {
        0 => Formula::and(l, r),
        1 => Formula::or(l, r),
        _ => Formula::implies(l, r),
    }
}

/// `count` random formulas with heights drawn from `min_height..=max_height`.
pub fn random_suite(
    seed: u64,
    count: usize,
    atoms: &[&str],
    sort: Sort,
    min_height: usize,
    max_height: usize,
) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let h = rng.gen_range(min_height..=max_height);
            random_formula(&mut rng, atoms, sort, h)
        })
        .collect()
}
