//! Signed tableau for S4. A world is a saturated set of signed formulas;
//! a false box opens a successor whose core is the false body plus every
//! true box. A core equal to one on the current path is linked back to
//! that ancestor instead of being expanded again.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{Verdict, Witness};
use crate::kripke::closure;
use crate::modal::{ModalFormula, S4Model};

type Id = u32;
/// `id << 1`, low bit set for the true sign.
type Signed = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Node {
    Atom(u32),
    Bot,
    And(Id, Id),
    Or(Id, Id),
    Imp(Id, Id),
    Box(Id),
}

fn t(id: Id) -> Signed {
    id << 1 | 1
}

fn f(id: Id) -> Signed {
    id << 1
}

struct Tableau {
    nodes: Vec<Node>,
    index: HashMap<Node, Id>,
    atoms: Vec<String>,
    worlds: Vec<BTreeSet<Signed>>,
    edges: Vec<(usize, usize)>,
}

type Path = Vec<(Vec<Signed>, usize)>;

impl Tableau {
    fn intern(&mut self, n: Node) -> Id {
        if let Some(&id) = self.index.get(&n) {
            return id;
        }
        let id = self.nodes.len() as Id;
        self.nodes.push(n);
        self.index.insert(n, id);
        id
    }

    fn load(&mut self, m: &ModalFormula) -> Id {
        let n = match m {
            ModalFormula::Atom(a) => Node::Atom(self.atoms.binary_search(a).unwrap() as u32),
            ModalFormula::Bottom => Node::Bot,
            ModalFormula::And(l, r) => Node::And(self.load(l), self.load(r)),
            ModalFormula::Or(l, r) => Node::Or(self.load(l), self.load(r)),
            ModalFormula::Implies(l, r) => Node::Imp(self.load(l), self.load(r)),
            ModalFormula::Box(x) => Node::Box(self.load(x)),
        };
        self.intern(n)
    }

    /// Saturates `set` with the pending formulas in `todo`, calling `k` on
    /// each clash-free saturation until it succeeds.
    fn expand(
        &mut self,
        mut todo: Vec<Signed>,
        mut set: BTreeSet<Signed>,
        k: &mut dyn FnMut(&mut Self, &BTreeSet<Signed>) -> bool,
    ) -> bool {
        while let Some(s) = todo.pop() {
            if !set.insert(s) {
                continue;
            }
            if set.contains(&(s ^ 1)) {
                return false;
            }
            let truth = s & 1 == 1;
            match (self.nodes[(s >> 1) as usize], truth) {
                (Node::Bot, true) => return false,
                (Node::And(a, b), true) => todo.extend([t(a), t(b)]),
                (Node::Or(a, b), false) => todo.extend([f(a), f(b)]),
                (Node::Imp(a, b), false) => todo.extend([t(a), f(b)]),
                (Node::Box(a), true) => todo.push(t(a)),
                (Node::Or(a, b), true) => {
                    if self.branch(&todo, &set, t(a), k) {
                        return true;
                    }
                    todo.push(t(b));
                }
                (Node::And(a, b), false) => {
                    if self.branch(&todo, &set, f(a), k) {
                        return true;
                    }
                    todo.push(f(b));
                }
                (Node::Imp(a, b), true) => {
                    if self.branch(&todo, &set, f(a), k) {
                        return true;
                    }
                    todo.push(t(b));
                }
                _ => {}
            }
        }
        k(self, &set)
    }

    fn branch(
        &mut self,
        todo: &[Signed],
        set: &BTreeSet<Signed>,
        extra: Signed,
        k: &mut dyn FnMut(&mut Self, &BTreeSet<Signed>) -> bool,
    ) -> bool {
        let mut todo = todo.to_vec();
        todo.push(extra);
        self.expand(todo, set.clone(), k)
    }

    /// Tries to build a world from `core`; returns its index on success.
    fn open(&mut self, core: Vec<Signed>, path: &mut Path) -> Option<usize> {
        let id = self.worlds.len();
        self.worlds.push(BTreeSet::new());
        let ok = self.expand(core.clone(), BTreeSet::new(), &mut |this, sat| {
            this.worlds.truncate(id + 1);
            this.edges.retain(|&(a, _)| a < id);
            this.worlds[id] = sat.clone();
            let true_boxes: Vec<Signed> = sat
                .iter()
                .copied()
                .filter(|&s| s & 1 == 1 && matches!(this.nodes[(s >> 1) as usize], Node::Box(_)))
                .collect();
            let demands: Vec<Id> = sat
                .iter()
                .filter(|&&s| s & 1 == 0)
                .filter_map(|&s| match this.nodes[(s >> 1) as usize] {
                    Node::Box(a) => Some(a),
                    _ => None,
                })
                .collect();
            path.push((core.clone(), id));
            for a in demands {
                let mut child = true_boxes.clone();
                child.push(f(a));
                child.sort_unstable();
                child.dedup();
                if let Some(&(_, w)) = path.iter().find(|(c, _)| *c == child) {
                    this.edges.push((id, w));
                    continue;
                }
                match this.open(child, path) {
                    Some(c) => this.edges.push((id, c)),
                    None => {
                        path.pop();
                        return false;
                    }
                }
            }
            path.pop();
            true
        });
        if ok {
            Some(id)
        } else {
            self.worlds.truncate(id);
            self.edges.retain(|&(a, _)| a < id);
            None
        }
    }

    fn model(&self) -> S4Model {
        let n = self.worlds.len();
        let mut up = vec![0u64; n];
        for &(a, b) in &self.edges {
            up[a] |= 1 << b;
        }
        let up = closure(n, up);
        let mut val = BTreeMap::new();
        for (k, name) in self.atoms.iter().enumerate() {
            let mut m = 0u64;
            for (w, set) in self.worlds.iter().enumerate() {
                let id = self.index.get(&Node::Atom(k as u32));
                if id.is_some_and(|&id| set.contains(&t(id))) {
                    m |= 1 << w;
                }
            }
            val.insert(name.clone(), m);
        }
        S4Model { up, val }
    }
}

/// Validity in all reflexive-transitive Kripke models. An invalid formula
/// comes with the model read off the first open branch, refuting it at
/// world 0.
pub fn s4_valid(m: &ModalFormula) -> Verdict {
    let mut tab = Tableau {
        nodes: Vec::new(),
        index: HashMap::new(),
        atoms: m.atoms().into_iter().collect(),
        worlds: Vec::new(),
        edges: Vec::new(),
    };
    let root = tab.load(m);
    match tab.open(vec![f(root)], &mut Vec::new()) {
        None => Verdict::valid(),
        Some(_) => Verdict::invalid(Witness::OpenBranch(tab.model())),
    }
}
