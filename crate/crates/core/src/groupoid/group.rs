use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("a group has at least one element")]
    Empty,
    #[error("row {0} does not have one entry per element")]
    NotSquare(usize),
    #[error("product {a}*{b} = {value} is not an element")]
    OutOfRange { a: usize, b: usize, value: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element {0} has no inverse")]
    NoInverse(usize),
}

/// A validated finite group given by its multiplication table:
/// `mul(a, b)` is `table[a][b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl GroupTable {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare(a));
            }
            if let Some((b, &value)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(GroupError::OutOfRange { a, b, value });
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == identity && table[b][a] == identity) {
                return Err(GroupError::NoInverse(a));
            }
        }
        Ok(GroupTable { table, identity })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::new(table).expect("cyclic tables are groups")
    }

    /// Permutations of three points in lexicographic order, with `mul(a, b)`
    /// applying `a` first.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index([b[a[0]], b[a[1]], b[a[2]]]))
                    .collect()
            })
            .collect();
        Self::new(table).expect("S3 is a group")
    }

    /// The same group with element `x` renamed to `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, GroupError> {
        let n = self.order();
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a]][perm[b]] = perm[self.table[a][b]];
            }
        }
        Self::new(table)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// An isomorphism `g -> h` as an element map, found by backtracking over
/// order-preserving assignments.
pub fn isomorphism(g: &GroupTable, h: &GroupTable) -> Option<Vec<usize>> {
    let n = g.order();
    if n != h.order() {
        return None;
    }
    let og: Vec<usize> = (0..n).map(|a| g.element_order(a)).collect();
    let oh: Vec<usize> = (0..n).map(|a| h.element_order(a)).collect();
    let mut sg = og.clone();
    let mut sh = oh.clone();
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn consistent(g: &GroupTable, h: &GroupTable, map: &[usize], a: usize) -> bool {
        (0..map.len()).filter(|&b| map[b] != usize::MAX).all(|b| {
            [(a, b), (b, a)].iter().all(|&(x, y)| {
                let p = g.mul(x, y);
                map[p] == usize::MAX || map[p] == h.mul(map[x], map[y])
            })
        })
    }
    fn go(
        a: usize,
        g: &GroupTable,
        h: &GroupTable,
        og: &[usize],
        oh: &[usize],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if a == map.len() {
            return true;
        }
        for b in 0..map.len() {
            if used[b] || og[a] != oh[b] {
                continue;
            }
            map[a] = b;
            used[b] = true;
            if consistent(g, h, map, a) && go(a + 1, g, h, og, oh, map, used) {
                return true;
            }
            map[a] = usize::MAX;
            used[b] = false;
        }
        false
    }
    if go(0, g, h, &og, &oh, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}
