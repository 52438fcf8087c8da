//! Finite groupoids as a toy model of the h-level hierarchy. Objects play
//! the role of points of a type and morphisms the role of identity proofs.
//!
//! Levels follow the numbering where the point is `-2`, the empty type and
//! other propositions are `-1`, sets are `0` and groupoids are `1`. This is
//! the truncation-level indexing; Voevodsky's h-levels are these plus two.
//! Only 1-groupoids are representable, so computed levels never exceed 1.

mod group;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use group::{isomorphism, GroupError, GroupTable};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GroupoidError {
    #[error("unknown object {0}")]
    UnknownObject(usize),
    #[error("unknown morphism {0}")]
    UnknownMorphism(usize),
    #[error("composite of {f} then {g} is not defined")]
    MissingComposite { f: usize, g: usize },
    #[error("composite of {f} then {g} is given twice")]
    DuplicateComposite { f: usize, g: usize },
    #[error("entry [{f}, {g}, {h}] does not match sources and targets")]
    BadComposite { f: usize, g: usize, h: usize },
    #[error("identity {morphism} of object {object} is not an identity")]
    BadIdentity { object: usize, morphism: usize },
    #[error("expected {expected} identities, got {found}")]
    IdentityCount { expected: usize, found: usize },
    #[error("composition is not associative at ({f}, {g}, {h})")]
    NotAssociative { f: usize, g: usize, h: usize },
    #[error("morphism {0} has no inverse")]
    NoInverse(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("the empty groupoid has no contractible truncation")]
    EmptyTruncation,
    #[error("truncation level {0} is below -2")]
    LevelOutOfRange(i32),
    #[error("malformed groupoid file: {0}")]
    Json(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Morphism {
    pub src: usize,
    pub dst: usize,
}

/// A validated finite groupoid. `compose[f][g]` is the composite "`f` then
/// `g`", defined when `dst(f) = src(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    objects: usize,
    morphisms: Vec<Morphism>,
    compose: Vec<Vec<Option<usize>>>,
    id: Vec<usize>,
    inv: Vec<usize>,
}

/// An h-level in the numbering described at the module level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HLevel(pub i32);

impl fmt::Display for HLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Serialize, Deserialize)]
struct GroupoidFile {
    objects: usize,
    morphisms: Vec<Morphism>,
    compose: Vec<[usize; 3]>,
    id: Vec<usize>,
}

impl FiniteGroupoid {
    /// Validates raw data: composition entries `[f, g, h]` read "`f` then
    /// `g` is `h`". Inverses are inferred.
    pub fn from_parts(
        objects: usize,
        morphisms: Vec<Morphism>,
        compose: &[[usize; 3]],
        id: Vec<usize>,
    ) -> Result<Self, GroupoidError> {
        let m = morphisms.len();
        for mo in &morphisms {
            for x in [mo.src, mo.dst] {
                if x >= objects {
                    return Err(GroupoidError::UnknownObject(x));
                }
            }
        }
        let mut table = vec![vec![None; m]; m];
        for &[f, g, h] in compose {
            for k in [f, g, h] {
                if k >= m {
                    return Err(GroupoidError::UnknownMorphism(k));
                }
            }
            let (mf, mg, mh) = (morphisms[f], morphisms[g], morphisms[h]);
            if mf.dst != mg.src || mh.src != mf.src || mh.dst != mg.dst {
                return Err(GroupoidError::BadComposite { f, g, h });
            }
            if table[f][g].replace(h).is_some() {
                return Err(GroupoidError::DuplicateComposite { f, g });
            }
        }
        for f in 0..m {
            for g in 0..m {
                if morphisms[f].dst == morphisms[g].src && table[f][g].is_none() {
                    return Err(GroupoidError::MissingComposite { f, g });
                }
            }
        }
        if id.len() != objects {
            return Err(GroupoidError::IdentityCount {
                expected: objects,
                found: id.len(),
            });
        }
        for (x, &i) in id.iter().enumerate() {
            if i >= m {
                return Err(GroupoidError::UnknownMorphism(i));
            }
            let endo = morphisms[i] == Morphism { src: x, dst: x };
            let law = (0..m).all(|f| {
                (morphisms[f].src != x || table[i][f] == Some(f))
                    && (morphisms[f].dst != x || table[f][i] == Some(f))
            });
            if !endo || !law {
                return Err(GroupoidError::BadIdentity {
                    object: x,
                    morphism: i,
                });
            }
        }
        for f in 0..m {
            for g in 0..m {
                let Some(fg) = table[f][g] else { continue };
                for h in 0..m {
                    if let Some(gh) = table[g][h] {
                        if table[fg][h] != table[f][gh] {
                            return Err(GroupoidError::NotAssociative { f, g, h });
                        }
                    }
                }
            }
        }
        let mut inv = Vec::with_capacity(m);
        for f in 0..m {
            let Morphism { src, dst } = morphisms[f];
            let g = (0..m)
                .find(|&g| table[f][g] == Some(id[src]) && table[g][f] == Some(id[dst]))
                .ok_or(GroupoidError::NoInverse(f))?;
            inv.push(g);
        }
        Ok(FiniteGroupoid {
            objects,
            morphisms,
            compose: table,
            id,
            inv,
        })
    }

    pub fn empty() -> Self {
        Self::discrete(0)
    }

    pub fn point() -> Self {
        Self::discrete(1)
    }

    /// `n` objects with identities only.
    pub fn discrete(n: usize) -> Self {
        Self::connected_components(&vec![(1, GroupTable::trivial()); n])
    }

    /// `n` objects with exactly one morphism between any two.
    pub fn indiscrete(n: usize) -> Self {
        Self::connected(n, &GroupTable::trivial())
    }

    /// One object whose endomorphisms are the group elements.
    pub fn delooping(group: &GroupTable) -> Self {
        Self::connected(1, group)
    }

    /// Validates a raw multiplication table, then deloops it.
    pub fn delooping_of_table(table: Vec<Vec<usize>>) -> Result<Self, GroupoidError> {
        Ok(Self::delooping(&GroupTable::new(table)?))
    }

    /// `n` objects, all isomorphic, each with automorphism group `group`.
    /// The morphism `(i, j, g)` composes as `(i, j, g) then (j, k, h) =
    /// (i, k, g*h)`.
    pub fn connected(n: usize, group: &GroupTable) -> Self {
        Self::connected_components(&[(n, group.clone())])
    }

    /// Disjoint union of connected groupoids given as (objects, group).
    fn connected_components(parts: &[(usize, GroupTable)]) -> Self {
        let mut g = FiniteGroupoid {
            objects: 0,
            morphisms: vec![],
            compose: vec![],
            id: vec![],
            inv: vec![],
        };
        for (n, group) in parts {
            g = g.disjoint_union(&Self::connected_raw(*n, group));
        }
        g
    }

    fn connected_raw(n: usize, group: &GroupTable) -> Self {
        let k = group.order();
        let index = |i: usize, j: usize, a: usize| (i * n + j) * k + a;
        let mut morphisms = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for _ in 0..k {
                    morphisms.push(Morphism { src: i, dst: j });
                }
            }
        }
        let m = morphisms.len();
        let mut compose = vec![vec![None; m]; m];
        let mut inverse = vec![0; k];
        for a in 0..k {
            inverse[a] = (0..k)
                .find(|&b| group.mul(a, b) == group.identity())
                .unwrap();
        }
        let mut inv = vec![0; m];
        for i in 0..n {
            for j in 0..n {
                for a in 0..k {
                    inv[index(i, j, a)] = index(j, i, inverse[a]);
                    for l in 0..n {
                        for b in 0..k {
                            compose[index(i, j, a)][index(j, l, b)] =
                                Some(index(i, l, group.mul(a, b)));
                        }
                    }
                }
            }
        }
        let id = (0..n).map(|i| index(i, i, group.identity())).collect();
        FiniteGroupoid {
            objects: n,
            morphisms,
            compose,
            id,
            inv,
        }
    }

    pub fn disjoint_union(&self, other: &Self) -> Self {
        let (n, m) = (self.objects, self.morphisms.len());
        let mut morphisms = self.morphisms.clone();
        morphisms.extend(other.morphisms.iter().map(|mo| Morphism {
            src: mo.src + n,
            dst: mo.dst + n,
        }));
        let total = morphisms.len();
        let mut compose = vec![vec![None; total]; total];
        for f in 0..m {
            compose[f][..m].copy_from_slice(&self.compose[f]);
        }
        for f in 0..other.morphisms.len() {
            for g in 0..other.morphisms.len() {
                compose[m + f][m + g] = other.compose[f][g].map(|h| h + m);
            }
        }
        let mut id = self.id.clone();
        id.extend(other.id.iter().map(|i| i + m));
        let mut inv = self.inv.clone();
        inv.extend(other.inv.iter().map(|i| i + m));
        FiniteGroupoid {
            objects: n + other.objects,
            morphisms,
            compose,
            id,
            inv,
        }
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn is_empty(&self) -> bool {
        self.objects == 0
    }

    pub fn identity(&self, x: usize) -> usize {
        self.id[x]
    }

    pub fn inverse(&self, f: usize) -> usize {
        self.inv[f]
    }

    /// "`f` then `g`", when composable.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.compose[f][g]
    }

    /// Morphisms from `x` to `y`.
    pub fn hom(&self, x: usize, y: usize) -> Result<Vec<usize>, GroupoidError> {
        for o in [x, y] {
            if o >= self.objects {
                return Err(GroupoidError::UnknownObject(o));
            }
        }
        Ok((0..self.morphisms.len())
            .filter(|&f| self.morphisms[f] == Morphism { src: x, dst: y })
            .collect())
    }

    /// The path space from `x` to `y`: the discrete groupoid on the hom-set.
    pub fn hom_type(&self, x: usize, y: usize) -> Result<FiniteGroupoid, GroupoidError> {
        Ok(Self::discrete(self.hom(x, y)?.len()))
    }

    /// Connected components as sorted object lists, ordered by least object.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.objects).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for mo in &self.morphisms {
            let (a, b) = (find(&mut parent, mo.src), find(&mut parent, mo.dst));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..self.objects {
            let r = find(&mut parent, x);
            groups.entry(r).or_default().push(x);
        }
        groups.into_values().collect()
    }

    /// The automorphism group of `x`, elements numbered in hom-set order.
    pub fn automorphism_group(&self, x: usize) -> Result<GroupTable, GroupoidError> {
        let endo = self.hom(x, x)?;
        let pos = |f: usize| endo.iter().position(|&e| e == f).unwrap();
        let table = endo
            .iter()
            .map(|&f| {
                endo.iter()
                    .map(|&g| pos(self.compose[f][g].unwrap()))
                    .collect()
            })
            .collect();
        Ok(GroupTable::new(table)?)
    }

    fn all_homs_singletons(&self) -> bool {
        (0..self.objects)
            .all(|x| (0..self.objects).all(|y| self.hom(x, y).map(|h| h.len()) == Ok(1)))
    }

    /// Whether the groupoid has h-level at most `n`: contractible for
    /// `n = -2`, otherwise every path space has level at most `n - 1`.
    pub fn satisfies_level(&self, n: i32) -> bool {
        if n <= -2 {
            return n == -2 && !self.is_empty() && self.all_homs_singletons();
        }
        (0..self.objects)
            .all(|x| (0..self.objects).all(|y| self.hom_type(x, y).unwrap().satisfies_level(n - 1)))
    }

    pub fn h_level(&self) -> HLevel {
        if self.is_empty() {
            return HLevel(-1);
        }
        if self.all_homs_singletons() {
            return HLevel(-2);
        }
        let mut top = -2;
        for x in 0..self.objects {
            for y in 0..self.objects {
                top = top.max(self.hom_type(x, y).unwrap().h_level().0);
            }
        }
        HLevel(top + 1)
    }

    /// Truncation to level `k`.
    pub fn truncate(&self, k: i32) -> Result<FiniteGroupoid, GroupoidError> {
        match k {
            _ if k < -2 => Err(GroupoidError::LevelOutOfRange(k)),
            -2 if self.is_empty() => Err(GroupoidError::EmptyTruncation),
            -2 => Ok(Self::point()),
            -1 if self.is_empty() => Ok(Self::empty()),
            -1 => Ok(Self::point()),
            0 => Ok(Self::discrete(self.components().len())),
            _ => Ok(self.clone()),
        }
    }

    /// Component representatives with their automorphism groups.
    fn skeleton(&self) -> Vec<GroupTable> {
        self.components()
            .iter()
            .map(|c| self.automorphism_group(c[0]).expect("objects exist"))
            .collect()
    }

    pub fn from_json(text: &str) -> Result<Self, GroupoidError> {
        let file: GroupoidFile =
            serde_json::from_str(text).map_err(|e| GroupoidError::Json(e.to_string()))?;
        Self::from_parts(file.objects, file.morphisms, &file.compose, file.id)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let m = self.morphisms.len();
        let mut compose = Vec::new();
        for f in 0..m {
            for g in 0..m {
                if let Some(h) = self.compose[f][g] {
                    compose.push([f, g, h]);
                }
            }
        }
        let file = GroupoidFile {
            objects: self.objects,
            morphisms: self.morphisms.clone(),
            compose,
            id: self.id.clone(),
        };
        serde_json::to_value(file).expect("groupoid serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("groupoid serializes")
    }
}

/// Equivalence of groupoids: the skeletons agree, i.e. the components can
/// be matched so that matched components have isomorphic automorphism
/// groups.
pub fn equivalent(g: &FiniteGroupoid, h: &FiniteGroupoid) -> bool {
    let (sg, sh) = (g.skeleton(), h.skeleton());
    if sg.len() != sh.len() {
        return false;
    }
    let mut used = vec![false; sh.len()];
    for a in &sg {
        // isomorphism is an equivalence relation, so greedy matching suffices
        match (0..sh.len()).find(|&j| !used[j] && isomorphism(a, &sh[j]).is_some()) {
            Some(j) => used[j] = true,
            None => return false,
        }
    }
    true
}
