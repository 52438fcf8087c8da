//! Single-sorted modal formulas with a box, used by the S4 decider and
//! as the target of the Gödel translation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModalFormula {
    Atom(String),
    Bottom,
    And(Box<ModalFormula>, Box<ModalFormula>),
    Or(Box<ModalFormula>, Box<ModalFormula>),
    Implies(Box<ModalFormula>, Box<ModalFormula>),
    Box(Box<ModalFormula>),
}

impl ModalFormula {
    pub fn atom(name: &str) -> Self {
        ModalFormula::Atom(name.to_string())
    }

    pub fn and(l: Self, r: Self) -> Self {
        ModalFormula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Self, r: Self) -> Self {
        ModalFormula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Self, r: Self) -> Self {
        ModalFormula::Implies(Box::new(l), Box::new(r))
    }

    pub fn boxed(inner: Self) -> Self {
        ModalFormula::Box(Box::new(inner))
    }

    pub fn not(inner: Self) -> Self {
        Self::implies(inner, ModalFormula::Bottom)
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            ModalFormula::Atom(a) => {
                out.insert(a.clone());
            }
            ModalFormula::Bottom => {}
            ModalFormula::And(l, r) | ModalFormula::Or(l, r) | ModalFormula::Implies(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
            ModalFormula::Box(x) => x.collect_atoms(out),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            ModalFormula::Atom(_) | ModalFormula::Bottom => 1,
            ModalFormula::And(l, r) | ModalFormula::Or(l, r) | ModalFormula::Implies(l, r) => {
                1 + l.size() + r.size()
            }
            ModalFormula::Box(x) => 1 + x.size(),
        }
    }

    /// All subformula occurrences, the formula itself first.
    pub fn subformulas(&self) -> Vec<&ModalFormula> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            match out[i] {
                ModalFormula::Atom(_) | ModalFormula::Bottom => {}
                ModalFormula::And(l, r) | ModalFormula::Or(l, r) | ModalFormula::Implies(l, r) => {
                    out.push(l);
                    out.push(r);
                }
                ModalFormula::Box(x) => out.push(x),
            }
            i += 1;
        }
        out
    }
}

const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

fn write_at(f: &ModalFormula, level: u8, out: &mut String) {
    let own = match f {
        ModalFormula::Implies(_, r) if **r == ModalFormula::Bottom => UNARY,
        ModalFormula::Implies(..) => IMP,
        ModalFormula::Or(..) => OR,
        ModalFormula::And(..) => AND,
        _ => UNARY,
    };
    let paren = own < level;
    if paren {
        out.push('(');
    }
    match f {
        ModalFormula::Atom(a) => out.push_str(a),
        ModalFormula::Bottom => out.push_str("false"),
        ModalFormula::Implies(l, r) if **r == ModalFormula::Bottom => {
            out.push('~');
            write_at(l, UNARY, out);
        }
        ModalFormula::Implies(l, r) => {
            write_at(l, OR, out);
            out.push_str(" -> ");
            write_at(r, IMP, out);
        }
        ModalFormula::Or(l, r) => {
            write_at(l, OR, out);
            out.push_str(" | ");
            write_at(r, AND, out);
        }
        ModalFormula::And(l, r) => {
            write_at(l, AND, out);
            out.push_str(" & ");
            write_at(r, UNARY, out);
        }
        ModalFormula::Box(x) => {
            out.push_str("Box");
            let tight = match &**x {
                ModalFormula::Implies(_, r) => **r != ModalFormula::Bottom,
                ModalFormula::And(..) | ModalFormula::Or(..) => true,
                _ => false,
            };
            if !tight {
                out.push(' ');
            }
            write_at(x, UNARY, out);
        }
    }
    if paren {
        out.push(')');
    }
}

impl fmt::Display for ModalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_at(self, IMP, &mut s);
        f.write_str(&s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at {position}: expected {expected}, found {found}")]
pub struct ModalParseError {
    pub position: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    Box,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
    Bottom,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ModalParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            _ if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '~' | '¬' => Tok::Not,
            '□' => Tok::Box,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '→' => Tok::Arrow,
            '⊥' => Tok::Bottom,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Arrow
            }
            '[' if chars.get(i + 1) == Some(&']') => {
                i += 1;
                Tok::Box
            }
            _ if c.is_alphabetic() => {
                while i + 1 < chars.len()
                    && (chars[i + 1].is_alphanumeric()
                        || chars[i + 1] == '_'
                        || chars[i + 1] == '\'')
                {
                    i += 1;
                }
                let word: String = chars[start..=i].iter().collect();
                match word.as_str() {
                    "Box" => Tok::Box,
                    "false" => Tok::Bottom,
                    _ => Tok::Ident(word),
                }
            }
            _ => {
                return Err(ModalParseError {
                    position: i,
                    expected: "a formula token".into(),
                    found: format!("`{c}`"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn error(&self, expected: &str) -> ModalParseError {
        let (position, found) = match self.toks.get(self.pos) {
            Some((p, t)) => (*p, format!("{t:?}")),
            None => (self.end, "end of input".to_string()),
        };
        ModalParseError {
            position,
            expected: expected.to_string(),
            found,
        }
    }

    fn implish(&mut self) -> Result<ModalFormula, ModalParseError> {
        let l = self.orish()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let r = self.implish()?;
            return Ok(ModalFormula::implies(l, r));
        }
        Ok(l)
    }

    fn orish(&mut self) -> Result<ModalFormula, ModalParseError> {
        let mut l = self.andish()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            l = ModalFormula::or(l, self.andish()?);
        }
        Ok(l)
    }

    fn andish(&mut self) -> Result<ModalFormula, ModalParseError> {
        let mut l = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            l = ModalFormula::and(l, self.unary()?);
        }
        Ok(l)
    }

    fn unary(&mut self) -> Result<ModalFormula, ModalParseError> {
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| self.error("a formula"))?;
        self.pos += 1;
        match tok {
            Tok::Not => Ok(ModalFormula::not(self.unary()?)),
            Tok::Box => Ok(ModalFormula::boxed(self.unary()?)),
            Tok::Ident(name) => Ok(ModalFormula::Atom(name)),
            Tok::Bottom => Ok(ModalFormula::Bottom),
            Tok::LParen => {
                let inner = self.implish()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error("`)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                Err(self.error("a formula"))
            }
        }
    }
}

/// Parses a modal formula. `Box`, `[]` and `□` all denote the box;
/// `false` and `⊥` denote falsity; any other identifier is an atom.
pub fn parse_modal(text: &str) -> Result<ModalFormula, ModalParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.chars().count(),
    };
    let f = p.implish()?;
    if p.pos < p.toks.len() {
        return Err(p.error("end of input"));
    }
    Ok(f)
}

/// A finite reflexive-transitive frame with a valuation, for modal
/// evaluation. `up[w]` holds the worlds accessible from `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S4Model {
    pub up: Vec<u64>,
    pub val: BTreeMap<String, u64>,
}

impl S4Model {
    pub fn worlds(&self) -> usize {
        self.up.len()
    }

    /// Worlds where `f` is true. Atoms absent from the valuation are false.
    pub fn truth_set(&self, f: &ModalFormula) -> u64 {
        let all = crate::kripke::full(self.worlds());
        match f {
            ModalFormula::Atom(a) => self.val.get(a).copied().unwrap_or(0),
            ModalFormula::Bottom => 0,
            ModalFormula::And(l, r) => self.truth_set(l) & self.truth_set(r),
            ModalFormula::Or(l, r) => self.truth_set(l) | self.truth_set(r),
            ModalFormula::Implies(l, r) => (!self.truth_set(l) | self.truth_set(r)) & all,
            ModalFormula::Box(x) => {
                let t = self.truth_set(x);
                let mut out = 0;
                for (w, &u) in self.up.iter().enumerate() {
                    if u & !t == 0 {
                        out |= 1 << w;
                    }
                }
                out
            }
        }
    }

    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.worlds();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.up[i] >> j & 1 == 1 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let val: BTreeMap<&String, Vec<usize>> = self
            .val
            .iter()
            .map(|(k, &m)| (k, (0..self.worlds()).filter(|w| m >> w & 1 == 1).collect()))
            .collect();
        serde_json::json!({
            "worlds": self.worlds(),
            "le": self.strict_pairs().iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
            "val": val,
        })
    }
}

impl fmt::Display for S4Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} world(s)", self.worlds())?;
        let pairs: Vec<String> = self
            .strict_pairs()
            .iter()
            .map(|(i, j)| format!("{i}R{j}"))
            .collect();
        if !pairs.is_empty() {
            write!(f, "; access {}", pairs.join(", "))?;
        }
        for (a, &m) in &self.val {
            let ws: Vec<String> = (0..self.worlds())
                .filter(|w| m >> w & 1 == 1)
                .map(|w| w.to_string())
                .collect();
            write!(f, "; {a} at {{{}}}", ws.join(","))?;
        }
        Ok(())
    }
}
