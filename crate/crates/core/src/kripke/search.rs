use std::collections::BTreeMap;
use std::sync::OnceLock;

use super::{full, KripkeError, KripkeModel};
use crate::formula::{print, Formula};

/// Largest world count the searches enumerate.
pub const SEARCH_MAX_WORLDS: usize = 6;

/// A model together with the least world that does not force the formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub model: KripkeModel,
    pub world: usize,
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Atom(usize),
    Bot,
    And,
    Or,
    Imp,
}

/// A formula flattened to postfix form over atom indices; evaluation
/// computes forced sets directly from successor masks.
#[derive(Clone, Debug)]
pub(crate) struct Program {
    pub atoms: Vec<String>,
    ops: Vec<Op>,
}

impl Program {
    pub fn compile(f: &Formula) -> Result<Program, KripkeError> {
        let atoms: Vec<String> = f.atoms().into_iter().collect();
        let mut ops = Vec::new();
        emit(f, &atoms, &mut ops)?;
        Ok(Program { atoms, ops })
    }

    pub fn run(&self, up: &[u64], val: &[u64], stack: &mut Vec<u64>) -> u64 {
        stack.clear();
        let all = full(up.len());
        for op in &self.ops {
            let v = match *op {
                Op::Atom(k) => val[k],
                Op::Bot => 0,
                Op::And | Op::Or | Op::Imp => {
                    let b = stack.pop().unwrap();
                    let a = stack.pop().unwrap();
                    match op {
                        Op::And => a & b,
                        Op::Or => a | b,
                        _ => {
                            let bad = a & !b;
                            if bad == 0 {
                                all
                            } else {
                                let mut out = 0;
                                for (w, &u) in up.iter().enumerate() {
                                    if u & bad == 0 {
                                        out |= 1 << w;
                                    }
                                }
                                out
                            }
                        }
                    }
                }
            };
            stack.push(v);
        }
        stack.pop().unwrap()
    }
}

fn emit(f: &Formula, atoms: &[String], ops: &mut Vec<Op>) -> Result<(), KripkeError> {
    match f {
        Formula::Atom { name, .. } => ops.push(Op::Atom(atoms.binary_search(name).unwrap())),
        Formula::Bottom(_) => ops.push(Op::Bot),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
            emit(l, atoms, ops)?;
            emit(r, atoms, ops)?;
            ops.push(match f {
                Formula::And(..) => Op::And,
                Formula::Or(..) => Op::Or,
                _ => Op::Imp,
            });
        }
        Formula::Meta { .. } | Formula::Bang(_) | Formula::Query(_) => {
            return Err(KripkeError::Unsupported(print(f)))
        }
    }
    Ok(())
}

/// All preorders on `n` worlds as bitmasks (bit `i*n + j` set iff `i <= j`),
/// in increasing order.
pub fn preorders(n: usize) -> &'static [u64] {
    static CACHE: [OnceLock<Vec<u64>>; SEARCH_MAX_WORLDS + 1] =
        [const { OnceLock::new() }; SEARCH_MAX_WORLDS + 1];
    assert!(
        (1..=SEARCH_MAX_WORLDS).contains(&n),
        "preorders are enumerated for 1..=6 worlds"
    );
    CACHE[n].get_or_init(|| {
        if n == 1 {
            return vec![1];
        }
        let m = n - 1;
        let mut out = Vec::new();
        for &old in preorders(m) {
            let le = |i: usize, j: usize| old >> (i * m + j) & 1 == 1;
            let mut base = 0u64;
            for i in 0..m {
                for j in 0..m {
                    if le(i, j) {
                        base |= 1 << (i * n + j);
                    }
                }
            }
            base |= 1 << (m * n + m);
            let subsets = 1u64 << m;
            let is_down = |d: u64| {
                (0..m).all(|x| d >> x & 1 == 0 || (0..m).all(|y| !le(y, x) || d >> y & 1 == 1))
            };
            let is_up = |u: u64| {
                (0..m).all(|x| u >> x & 1 == 0 || (0..m).all(|y| !le(x, y) || u >> y & 1 == 1))
            };
            let downs: Vec<u64> = (0..subsets).filter(|&d| is_down(d)).collect();
            let ups: Vec<u64> = (0..subsets).filter(|&u| is_up(u)).collect();
            for &d in &downs {
                for &u in &ups {
                    let compatible = (0..m)
                        .all(|x| d >> x & 1 == 0 || (0..m).all(|y| u >> y & 1 == 0 || le(x, y)));
                    if !compatible {
                        continue;
                    }
                    let mut mask = base;
                    for x in 0..m {
                        if d >> x & 1 == 1 {
                            mask |= 1 << (x * n + m);
                        }
                        if u >> x & 1 == 1 {
                            mask |= 1 << (m * n + x);
                        }
                    }
                    out.push(mask);
                }
            }
        }
        out.sort_unstable();
        out
    })
}

fn up_of_mask(n: usize, mask: u64) -> Vec<u64> {
    (0..n).map(|i| (mask >> (i * n)) & full(n)).collect()
}

fn upsets(up: &[u64]) -> Vec<u64> {
    let n = up.len();
    (0..=full(n))
        .filter(|&s| (0..n).all(|w| s >> w & 1 == 0 || up[w] & !s == 0))
        .collect()
}

/// Rooted partial orders on `n` worlds whose labelling extends the order,
/// with world 0 as the root, as successor masks.
fn rooted_posets(n: usize) -> &'static [Vec<u64>] {
    static CACHE: [OnceLock<Vec<Vec<u64>>>; SEARCH_MAX_WORLDS + 1] =
        [const { OnceLock::new() }; SEARCH_MAX_WORLDS + 1];
    CACHE[n].get_or_init(|| {
        if n == 1 {
            return vec![vec![1]];
        }
        let k = n - 1;
        let mut out = Vec::new();
        for p in rooted_posets(k) {
            for d in (1..(1u64 << k)).filter(|d| d & 1 == 1) {
                // below the new element: a down-closed set containing the root
                let down = (0..k).all(|x| {
                    d >> x & 1 == 0 || (0..k).all(|y| p[y] >> x & 1 == 0 || d >> y & 1 == 1)
                });
                if !down {
                    continue;
                }
                let mut q = p.clone();
                for (x, m) in q.iter_mut().enumerate() {
                    if d >> x & 1 == 1 {
                        *m |= 1 << k;
                    }
                }
                q.push(1 << k);
                out.push(q);
            }
        }
        out
    })
}

/// Steps the odometer `idx` (first digit fastest); false once it wraps.
fn advance(idx: &mut [usize], radix: usize) -> bool {
    for d in idx.iter_mut() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

fn check_size(max_worlds: usize) -> Result<(), KripkeError> {
    if max_worlds > SEARCH_MAX_WORLDS {
        Err(KripkeError::SearchTooLarge(max_worlds))
    } else {
        Ok(())
    }
}

/// Least world count `n <= max_worlds` at which some model refutes `f`.
///
/// Only rooted posets are enumerated: a refutation at a world survives in
/// the submodel generated by that world, and collapsing clusters of a
/// preorder preserves forcing.
pub fn countermodel_exists(f: &Formula, max_worlds: usize) -> Result<Option<usize>, KripkeError> {
    check_size(max_worlds)?;
    let prog = Program::compile(f)?;
    let k = prog.atoms.len();
    let mut stack = Vec::new();
    for n in 1..=max_worlds {
        for up in rooted_posets(n) {
            let ups = upsets(up);
            let mut idx = vec![0usize; k];
            let mut val = vec![0u64; k];
            loop {
                for (v, &i) in val.iter_mut().zip(&idx) {
                    *v = ups[i];
                }
                if prog.run(up, &val, &mut stack) & 1 == 0 {
                    return Ok(Some(n));
                }
                if !advance(&mut idx, ups.len()) {
                    break;
                }
            }
        }
    }
    Ok(None)
}

/// Canonical enumeration over all preorders with `from..=to` worlds.
pub(crate) fn canonical_search(
    prog: &Program,
    from: usize,
    to: usize,
) -> Option<(Vec<u64>, Vec<u64>, usize)> {
    let k = prog.atoms.len();
    let mut stack = Vec::new();
    for n in from..=to {
        let all = full(n);
        for &mask in preorders(n) {
            let up = up_of_mask(n, mask);
            let ups = upsets(&up);
            let mut idx = vec![0usize; k];
            let mut val = vec![0u64; k];
            loop {
                for (v, &i) in val.iter_mut().zip(&idx) {
                    *v = ups[i];
                }
                let forced = prog.run(&up, &val, &mut stack);
                if forced != all {
                    let world = (!forced & all).trailing_zeros() as usize;
                    return Some((up, val, world));
                }
                if !advance(&mut idx, ups.len()) {
                    break;
                }
            }
        }
    }
    None
}

/// The first refuting model in canonical order: by world count, then order
/// bitmask, then valuation bitmask (bit `k*n + w` for the `k`-th atom in
/// name order at world `w`).
pub fn countermodel_search(
    f: &Formula,
    max_worlds: usize,
) -> Result<Option<Refutation>, KripkeError> {
    let Some(n0) = countermodel_exists(f, max_worlds)? else {
        return Ok(None);
    };
    let prog = Program::compile(f)?;
    let (up, val, world) = canonical_search(&prog, n0, max_worlds)
        .expect("a rooted refutation is also a preorder one");
    let val: BTreeMap<String, u64> = prog.atoms.iter().cloned().zip(val).collect();
    let model = KripkeModel::from_masks(up, val).expect("upsets are persistent");
    Ok(Some(Refutation { model, world }))
}
