//! Medvedev frames: the nonempty subsets of `{1..n}` ordered by reverse
//! inclusion, so a world is a set of remaining candidate solutions and
//! moving up narrows it. Validity is checked exhaustively for bounded `n`
//! and says nothing about the full Medvedev logic.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::formula::{print, Formula, Sort};
use crate::kripke::{full, KripkeError, KripkeModel, Program};

/// Default cap on the base size.
pub const DEFAULT_MAX_BASE: usize = 5;
/// The frame for base 6 has 63 worlds, the most a `u64` mask holds.
pub const HARD_MAX_BASE: usize = 6;
/// Default cap on the number of valuations examined in one call.
pub const DEFAULT_VALUATION_BUDGET: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MedvedevError {
    #[error("base size {n} outside 1..={max}")]
    BaseOutOfRange { n: usize, max: usize },
    #[error("base {base} needs {needed} valuations, over the budget of {budget}")]
    Budget {
        base: usize,
        needed: u128,
        budget: u64,
    },
    #[error("`{0}` is not a bridge-free problem formula")]
    Unsupported(String),
    #[error(transparent)]
    Kripke(#[from] KripkeError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MedvedevFrame {
    base: usize,
    /// `subsets[w]` is world `w` as a bitmask over `{1..n}` (bit `i-1`).
    /// The full set comes first, singletons last.
    subsets: Vec<u32>,
    up: Vec<u64>,
}

impl MedvedevFrame {
    pub fn new(n: usize, max_base: usize) -> Result<Self, MedvedevError> {
        let max = max_base.min(HARD_MAX_BASE);
        if n == 0 || n > max {
            return Err(MedvedevError::BaseOutOfRange { n, max });
        }
        let mut subsets: Vec<u32> = (1..(1u32 << n)).collect();
        subsets.sort_by_key(|s| (std::cmp::Reverse(s.count_ones()), *s));
        let up = subsets
            .iter()
            .map(|&s| {
                subsets
                    .iter()
                    .enumerate()
                    .filter(|(_, &t)| t & !s == 0)
                    .fold(0u64, |m, (j, _)| m | 1 << j)
            })
            .collect();
        Ok(MedvedevFrame {
            base: n,
            subsets,
            up,
        })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn worlds(&self) -> usize {
        self.subsets.len()
    }

    /// World `w` as a sorted list of elements of `{1..n}`.
    pub fn subset(&self, w: usize) -> Vec<u32> {
        elements(self.subsets[w])
    }

    /// `w <= v` iff the subset of `v` is contained in that of `w`.
    pub fn le(&self, w: usize, v: usize) -> bool {
        self.up[w] >> v & 1 == 1
    }

    pub fn maximal_worlds(&self) -> Vec<usize> {
        (0..self.worlds())
            .filter(|&w| self.up[w] == 1 << w)
            .collect()
    }

    /// The frame as a Kripke model with an empty atom universe.
    pub fn skeleton(&self) -> KripkeModel {
        KripkeModel::from_masks(self.up.clone(), BTreeMap::new()).expect("no atoms")
    }

    /// All upward-closed sets of worlds, ordered by size then mask.
    pub fn upsets(&self) -> Vec<u64> {
        let n = self.worlds();
        let strict: Vec<u64> = (0..n).map(|w| self.up[w] & !(1 << w)).collect();
        let mut out = Vec::new();
        // worlds are decided from the top (singletons) down
        fn go(w: usize, set: u64, strict: &[u64], out: &mut Vec<u64>) {
            if w == 0 {
                out.push(set);
                return;
            }
            let w = w - 1;
            go(w, set, strict, out);
            if strict[w] & !set == 0 {
                go(w, set | 1 << w, strict, out);
            }
        }
        go(n, 0, &strict, &mut out);
        out.sort_by_key(|m| (m.count_ones(), *m));
        out
    }
}

fn elements(mask: u32) -> Vec<u32> {
    (0..32)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i + 1)
        .collect()
}

/// `n = 1..=max_base` frame, with the default cap.
pub fn medvedev_frame(n: usize) -> Result<MedvedevFrame, MedvedevError> {
    MedvedevFrame::new(n, DEFAULT_MAX_BASE)
}

/// A valuation on a Medvedev frame under which the formula fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MedvedevRefutation {
    pub base: usize,
    /// The least refuting world, as a subset of `{1..n}`.
    pub world: Vec<u32>,
    /// For each atom, the subsets where it holds.
    pub valuation: BTreeMap<String, Vec<Vec<u32>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MedvedevReport {
    pub valid: bool,
    /// Largest base examined.
    pub checked_up_to: usize,
    pub valuations_checked: u64,
    pub refutation: Option<MedvedevRefutation>,
}

impl MedvedevReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "valid": self.valid,
            "checked_up_to": self.checked_up_to,
            "valuations_checked": self.valuations_checked,
            "refutation": self.refutation.as_ref().map(|r| serde_json::json!({
                "base": r.base,
                "world": r.world,
                "valuation": r.valuation,
            })),
        })
    }
}

pub fn medvedev_valid_upto(f: &Formula, n_max: usize) -> Result<MedvedevReport, MedvedevError> {
    medvedev_valid_upto_with(f, n_max, DEFAULT_MAX_BASE, DEFAULT_VALUATION_BUDGET)
}

/// Whether `f` is forced everywhere under every persistent valuation on
/// every frame with base at most `n_max`. Bases are tried in order and the
/// first refutation found (valuations in canonical order) is reported.
pub fn medvedev_valid_upto_with(
    f: &Formula,
    n_max: usize,
    max_base: usize,
    budget: u64,
) -> Result<MedvedevReport, MedvedevError> {
    if !f.is_bridge_free() || f.sort().ok() != Some(Sort::Problem) {
        return Err(MedvedevError::Unsupported(print(f)));
    }
    let prog = Program::compile(f)?;
    let k = prog.atoms.len();
    let mut checked = 0u64;
    let mut stack = Vec::new();
    for n in 1..=n_max {
        let frame = MedvedevFrame::new(n, max_base)?;
        let ups = frame.upsets();
        let needed = (ups.len() as u128).pow(k as u32);
        if checked as u128 + needed > budget as u128 {
            return Err(MedvedevError::Budget {
                base: n,
                needed,
                budget,
            });
        }
        let all = full(frame.worlds());
        let mut idx = vec![0usize; k];
        let mut val = vec![0u64; k];
        loop {
            for (v, &i) in val.iter_mut().zip(&idx) {
                *v = ups[i];
            }
            checked += 1;
            let forced = prog.run(&frame.up, &val, &mut stack);
            if forced != all {
                let world = (!forced & all).trailing_zeros() as usize;
                let valuation = prog
                    .atoms
                    .iter()
                    .zip(&val)
                    .map(|(a, &m)| {
                        let sets = (0..frame.worlds())
                            .filter(|w| m >> w & 1 == 1)
                            .map(|w| frame.subset(w))
                            .collect();
                        (a.clone(), sets)
                    })
                    .collect();
                return Ok(MedvedevReport {
                    valid: false,
                    checked_up_to: n,
                    valuations_checked: checked,
                    refutation: Some(MedvedevRefutation {
                        base: n,
                        world: frame.subset(world),
                        valuation,
                    }),
                });
            }
            if !advance(&mut idx, ups.len()) {
                break;
            }
        }
    }
    Ok(MedvedevReport {
        valid: true,
        checked_up_to: n_max,
        valuations_checked: checked,
        refutation: None,
    })
}

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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    #[test]
    fn frame_sizes() {
        assert_eq!(medvedev_frame(1).unwrap().worlds(), 1);
        let f2 = medvedev_frame(2).unwrap();
        assert_eq!(f2.worlds(), 3);
        assert_eq!(f2.maximal_worlds().len(), 2);
        assert_eq!(medvedev_frame(3).unwrap().worlds(), 7);
        assert!(medvedev_frame(0).is_err());
        assert!(medvedev_frame(6).is_err());
        assert_eq!(MedvedevFrame::new(6, 6).unwrap().worlds(), 63);
    }

    #[test]
    fn order_is_reverse_inclusion() {
        for n in 1..=4 {
            let fr = medvedev_frame(n).unwrap();
            for w in 0..fr.worlds() {
                for v in 0..fr.worlds() {
                    let (s, t) = (fr.subset(w), fr.subset(v));
                    assert_eq!(fr.le(w, v), t.iter().all(|x| s.contains(x)));
                }
            }
            let maximal: Vec<Vec<u32>> = fr
                .maximal_worlds()
                .into_iter()
                .map(|w| fr.subset(w))
                .collect();
            assert!(maximal.iter().all(|s| s.len() == 1));
            assert_eq!(maximal.len(), n);
        }
    }

    #[test]
    fn upset_counts() {
        // upsets of the nonempty-subset poset: monotone Boolean functions
        // on n variables that vanish at the empty set, plus one
        let counts: Vec<usize> = (1..=4)
            .map(|n| medvedev_frame(n).unwrap().upsets().len())
            .collect();
        assert_eq!(counts, vec![2, 5, 19, 167]);
        let fr = medvedev_frame(3).unwrap();
        let sk = fr.skeleton();
        assert!(fr.upsets().iter().all(|&u| sk.is_upset(u)));
    }

    #[test]
    fn theorem_is_valid() {
        let r = medvedev_valid_upto(&parse("a -> a").unwrap(), 3).unwrap();
        assert!(r.valid && r.refutation.is_none());
    }

    #[test]
    fn lem_fails_on_base_two() {
        let r = medvedev_valid_upto(&parse("a | ~a").unwrap(), 2).unwrap();
        assert!(!r.valid);
        let refu = r.refutation.unwrap();
        assert_eq!(refu.base, 2);
        assert_eq!(refu.world, vec![1, 2]);
        assert_eq!(refu.valuation["a"], vec![vec![1]]);
    }

    #[test]
    fn budget_is_reported() {
        let f = parse("(a -> b -> c) -> a & b -> c").unwrap();
        let err = medvedev_valid_upto_with(&f, 4, 5, 1000).unwrap_err();
        assert!(matches!(err, MedvedevError::Budget { .. }));
    }
}
