use std::collections::BTreeMap;

use thiserror::Error;

use super::{Formula, Sort, SortError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {position}: found {found}, expected {}", expected.join(" or "))]
    Syntax {
        position: usize,
        found: String,
        expected: Vec<String>,
    },
    #[error("{source} (at {position})")]
    Sort {
        position: usize,
        #[source]
        source: SortError,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    Bang,
    Query,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Not => "`~`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Query => "`?`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '~' | '¬' => Tok::Not,
            '!' => Tok::Bang,
            '?' => Tok::Query,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '→' => Tok::Arrow,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Arrow
            }
            c if c.is_alphabetic() => {
                while i + 1 < chars.len()
                    && (chars[i + 1].is_alphanumeric()
                        || chars[i + 1] == '_'
                        || chars[i + 1] == '\'')
                {
                    i += 1;
                }
                Tok::Ident(chars[start..=i].iter().collect())
            }
            other => {
                return Err(ParseError::Syntax {
                    position: start,
                    found: format!("`{other}`"),
                    expected: vec!["a formula token".into()],
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    metas: &'a BTreeMap<String, Sort>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn position(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        ParseError::Syntax {
            position: self.position(),
            found: self.peek().describe(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn checked(&self, f: Formula, position: usize) -> Result<Formula, ParseError> {
        // children are already checked, so this only inspects the new node
        match f.sort() {
            Ok(_) => Ok(f),
            Err(source) => Err(ParseError::Sort { position, source }),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let start = self.position();
        let lhs = self.orish()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            return self.checked(Formula::implies(lhs, rhs), start);
        }
        Ok(lhs)
    }

    fn orish(&mut self) -> Result<Formula, ParseError> {
        let start = self.position();
        let mut acc = self.andish()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.andish()?;
            acc = self.checked(Formula::or(acc, rhs), start)?;
        }
        Ok(acc)
    }

    fn andish(&mut self) -> Result<Formula, ParseError> {
        let start = self.position();
        let mut acc = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            acc = self.checked(Formula::and(acc, rhs), start)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let start = self.position();
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                let inner = self.unary()?;
                // inner is well-sorted here
                let sort = inner.sort().map_err(|source| ParseError::Sort {
                    position: start,
                    source,
                })?;
                Ok(Formula::not_of_sort(inner, sort))
            }
            Tok::Bang => {
                self.bump();
                let inner = self.unary()?;
                self.checked(Formula::bang(inner), start)
            }
            Tok::Query => {
                self.bump();
                let inner = self.unary()?;
                self.checked(Formula::query(inner), start)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.formula()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected(&["`)`", "`->`", "`|`", "`&`"]));
                }
                self.bump();
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(self.leaf(&name))
            }
            _ => Err(self.unexpected(&["atom", "`(`", "`~`", "`!`", "`?`"])),
        }
    }

    fn leaf(&self, name: &str) -> Formula {
        if let Some(sort) = self.metas.get(name) {
            return Formula::meta(name, *sort);
        }
        match name {
            "falseH" => Formula::Bottom(Sort::Problem),
            "falseP" => Formula::Bottom(Sort::Proposition),
            // the lexer guarantees an alphabetic first character, but not a cased one
            _ => match Sort::of_atom_name(name) {
                Some(sort) => Formula::atom_of_sort(name, sort),
                None => Formula::atom_of_sort(name, Sort::Problem),
            },
        }
    }
}

fn run(text: &str, metas: &BTreeMap<String, Sort>) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    if let Some((position, Tok::Ident(name))) = toks.iter().find(|(_, t)| {
        matches!(t, Tok::Ident(n) if Sort::of_atom_name(n).is_none() && !metas.contains_key(n))
    }) {
        return Err(ParseError::Syntax {
            position: *position,
            found: format!("`{name}`"),
            expected: vec!["an identifier starting with a cased letter".into()],
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        metas,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected(&["`->`", "`|`", "`&`", "end of input"]));
    }
    Ok(f)
}

/// Parses a formula. Lowercase atoms are problems, uppercase atoms are
/// propositions; `falseH` and `falseP` are the two falsities.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    run(text, &BTreeMap::new())
}

/// Parses a scheme, treating the listed identifiers as metavariables of the
/// given sorts.
pub fn parse_scheme(text: &str, metas: &[(&str, Sort)]) -> Result<Formula, ParseError> {
    let metas: BTreeMap<String, Sort> = metas.iter().map(|(n, s)| (n.to_string(), *s)).collect();
    run(text, &metas)
}
