use super::{pure_of_sort, DecideError, Verdict, Witness};
use crate::formula::{Formula, Sort};

pub const MAX_CPC_ATOMS: usize = 24;

fn truth(f: &Formula, atoms: &[String], row: u32) -> bool {
    match f {
        Formula::Atom { name, .. } => {
            let k = atoms.binary_search(name).unwrap();
            row >> k & 1 == 1
        }
        Formula::And(l, r) => truth(l, atoms, row) && truth(r, atoms, row),
        Formula::Or(l, r) => truth(l, atoms, row) || truth(r, atoms, row),
        Formula::Implies(l, r) => !truth(l, atoms, row) || truth(r, atoms, row),
        _ => false,
    }
}

/// Truth-table validity of a proposition formula without bridges. Rows are
/// tried in binary order with the alphabetically first atom as the low bit,
/// so the witness is the first falsifying row.
pub fn cpc_valid(f: &Formula) -> Result<Verdict, DecideError> {
    pure_of_sort(f, Sort::Proposition)?;
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    if atoms.len() > MAX_CPC_ATOMS {
        return Err(DecideError::TooManyAtoms(atoms.len()));
    }
    for row in 0..(1u32 << atoms.len()) {
        if !truth(f, &atoms, row) {
            let a = atoms
                .iter()
                .enumerate()
                .map(|(k, n)| (n.clone(), row >> k & 1 == 1))
                .collect();
            return Ok(Verdict::invalid(Witness::Assignment(a)));
        }
    }
    Ok(Verdict::valid())
}
