use super::Formula;

/// Connective spelling used by the printer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Notation {
    #[default]
    Ascii,
    Unicode,
}

impl Notation {
    fn not(self) -> &'static str {
        match self {
            Notation::Ascii => "~",
            Notation::Unicode => "¬",
        }
    }

    fn and(self) -> &'static str {
        match self {
            Notation::Ascii => " & ",
            Notation::Unicode => " ∧ ",
        }
    }

    fn or(self) -> &'static str {
        match self {
            Notation::Ascii => " | ",
            Notation::Unicode => " ∨ ",
        }
    }

    fn arrow(self) -> &'static str {
        match self {
            Notation::Ascii => " -> ",
            Notation::Unicode => " → ",
        }
    }
}

// binding strength, loosest first
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Implies(..) if f.as_negation().is_some() => UNARY,
        Formula::Implies(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

/// ASCII rendering with minimal parentheses. `x -> bottom` prints as `~x`.
pub fn print(f: &Formula) -> String {
    print_with(f, Notation::Ascii)
}

pub fn print_with(f: &Formula, notation: Notation) -> String {
    let mut out = String::new();
    write(f, 0, notation, &mut out);
    out
}

fn write(f: &Formula, min: u8, n: Notation, out: &mut String) {
    let paren = level(f) < min;
    if paren {
        out.push('(');
    }
    match f {
        Formula::Atom { name, .. } | Formula::Meta { name, .. } => out.push_str(name),
        Formula::Bottom(s) => out.push_str(s.bottom_name()),
        Formula::Implies(l, r) => match f.as_negation() {
            Some(inner) => {
                out.push_str(n.not());
                write(inner, UNARY, n, out);
            }
            None => {
                write(l, OR, n, out);
                out.push_str(n.arrow());
                write(r, IMP, n, out);
            }
        },
        Formula::Or(l, r) => {
            write(l, OR, n, out);
            out.push_str(n.or());
            write(r, AND, n, out);
        }
        Formula::And(l, r) => {
            write(l, AND, n, out);
            out.push_str(n.and());
            write(r, UNARY, n, out);
        }
        Formula::Bang(x) => {
            out.push('!');
            write(x, UNARY, n, out);
        }
        Formula::Query(x) => {
            out.push('?');
            write(x, UNARY, n, out);
        }
    }
    if paren {
        out.push(')');
    }
}
