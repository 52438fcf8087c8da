//! Dyckhoff's contraction-free sequent calculus on hash-consed formulas.

use std::collections::HashMap;

use super::{pure_of_sort, DecideError, Verdict, Witness};
use crate::formula::{Formula, Sort};
use crate::kripke::countermodel_search;

/// World bound for the countermodel attached to a failed search.
pub const DEFAULT_MAX_WORLDS: usize = 5;

type Id = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Node {
    Var(u32),
    Bot,
    And(Id, Id),
    Or(Id, Id),
    Imp(Id, Id),
}

const BOT: Id = 0;

struct Prover {
    nodes: Vec<Node>,
    index: HashMap<Node, Id>,
    vars: HashMap<String, u32>,
    memo: HashMap<(Vec<Id>, Id), bool>,
}

impl Prover {
    fn new() -> Self {
        let mut p = Prover {
            nodes: Vec::new(),
            index: HashMap::new(),
            vars: HashMap::new(),
            memo: HashMap::new(),
        };
        p.intern(Node::Bot);
        p
    }

    fn intern(&mut self, n: Node) -> Id {
        if let Some(&id) = self.index.get(&n) {
            return id;
        }
        let id = self.nodes.len() as Id;
        self.nodes.push(n);
        self.index.insert(n, id);
        id
    }

    fn load(&mut self, f: &Formula) -> Id {
        match f {
            Formula::Atom { name, .. } => {
                let next = self.vars.len() as u32;
                let v = *self.vars.entry(name.clone()).or_insert(next);
                self.intern(Node::Var(v))
            }
            Formula::Bottom(_) => BOT,
            Formula::And(l, r) => {
                let (a, b) = (self.load(l), self.load(r));
                self.intern(Node::And(a, b))
            }
            Formula::Or(l, r) => {
                let (a, b) = (self.load(l), self.load(r));
                self.intern(Node::Or(a, b))
            }
            Formula::Implies(l, r) => {
                let (a, b) = (self.load(l), self.load(r));
                self.intern(Node::Imp(a, b))
            }
            Formula::Meta { .. } | Formula::Bang(_) | Formula::Query(_) => {
                unreachable!("checked by the caller")
            }
        }
    }

    fn imp(&mut self, a: Id, b: Id) -> Id {
        self.intern(Node::Imp(a, b))
    }

    fn prove(&mut self, ctx: Vec<Id>, goal: Id) -> bool {
        let key = (ctx, goal);
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let r = self.search(&key.0, goal);
        self.memo.insert(key, r);
        r
    }

    fn search(&mut self, ctx: &[Id], goal: Id) -> bool {
        if ctx.binary_search(&BOT).is_ok() || ctx.binary_search(&goal).is_ok() {
            return true;
        }
        match self.nodes[goal as usize] {
            Node::And(a, b) => return self.prove(ctx.to_vec(), a) && self.prove(ctx.to_vec(), b),
            Node::Imp(a, b) => return self.prove(with(ctx, &[a]), b),
            _ => {}
        }
        for (i, &h) in ctx.iter().enumerate() {
            match self.nodes[h as usize] {
                Node::And(a, b) => return self.prove(replace(ctx, i, &[a, b]), goal),
                Node::Or(a, b) => {
                    return self.prove(replace(ctx, i, &[a]), goal)
                        && self.prove(replace(ctx, i, &[b]), goal)
                }
                Node::Imp(a, b) => match self.nodes[a as usize] {
                    Node::Bot => return self.prove(replace(ctx, i, &[]), goal),
                    Node::Var(_) if ctx.binary_search(&a).is_ok() => {
                        return self.prove(replace(ctx, i, &[b]), goal)
                    }
                    Node::And(c, d) => {
                        let db = self.imp(d, b);
                        let cdb = self.imp(c, db);
                        return self.prove(replace(ctx, i, &[cdb]), goal);
                    }
                    Node::Or(c, d) => {
                        let cb = self.imp(c, b);
                        let db = self.imp(d, b);
                        return self.prove(replace(ctx, i, &[cb, db]), goal);
                    }
                    _ => {}
                },
                _ => {}
            }
        }
        if let Node::Or(a, b) = self.nodes[goal as usize] {
            if self.prove(ctx.to_vec(), a) || self.prove(ctx.to_vec(), b) {
                return true;
            }
        }
        for (i, &h) in ctx.iter().enumerate() {
            if let Node::Imp(a, b) = self.nodes[h as usize] {
                if let Node::Imp(c, d) = self.nodes[a as usize] {
                    let db = self.imp(d, b);
                    if self.prove(replace(ctx, i, &[db, c]), d)
                        && self.prove(replace(ctx, i, &[b]), goal)
                    {
                        return true;
                    }
                }
            }
        }
        false
    }
}

fn with(ctx: &[Id], extra: &[Id]) -> Vec<Id> {
    let mut v = ctx.to_vec();
    v.extend_from_slice(extra);
    v.sort_unstable();
    v.dedup();
    v
}

fn replace(ctx: &[Id], i: usize, extra: &[Id]) -> Vec<Id> {
    let mut v: Vec<Id> = ctx[..i].iter().chain(&ctx[i + 1..]).copied().collect();
    v.extend_from_slice(extra);
    v.sort_unstable();
    v.dedup();
    v
}

/// Sequent-search verdict alone, with no countermodel attached.
pub fn ipc_provable(f: &Formula) -> Result<bool, DecideError> {
    pure_of_sort(f, Sort::Problem)?;
    let mut p = Prover::new();
    let goal = p.load(f);
    Ok(p.prove(Vec::new(), goal))
}

pub fn ipc_derivable(f: &Formula) -> Result<Verdict, DecideError> {
    ipc_derivable_within(f, DEFAULT_MAX_WORLDS)
}

/// IPC derivability. When the search fails, the canonical countermodel
/// with at most `max_worlds` worlds is attached.
pub fn ipc_derivable_within(f: &Formula, max_worlds: usize) -> Result<Verdict, DecideError> {
    if ipc_provable(f)? {
        return Ok(Verdict::valid());
    }
    Ok(Verdict::invalid(
        match countermodel_search(f, max_worlds)? {
            Some(r) => Witness::Countermodel(r),
            None => Witness::NoCountermodelWithin(max_worlds),
        },
    ))
}
