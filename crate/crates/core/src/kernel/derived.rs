//! Concrete HC derivations of the modal principles obtained by reading
//! `?!` as a box on propositions and `!?` as a modality on problems.

use std::fmt;
use std::str::FromStr;

use super::builder::ProofBuilder;
use super::galois::{galois_backward, GaloisError};
use super::proof::Proof;
use crate::formula::{Formula, Sort};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DerivedTag {
    /// `?!(P -> Q) -> (?!P -> ?!Q)`
    S4K,
    /// `?!P -> P`
    S4T,
    /// `?!P -> ?!?!P`
    S44,
    /// `?!(P -> P)`, necessitation of a classical theorem
    S4NecDemo,
    /// `a -> !?a`
    IelCoreflection,
    /// `!?(a -> b) -> (!?a -> !?b)`
    IelK,
    /// `~!?falseH`
    IelConsistency,
}

impl DerivedTag {
    pub const ALL: [DerivedTag; 7] = [
        DerivedTag::S4K,
        DerivedTag::S4T,
        DerivedTag::S44,
        DerivedTag::S4NecDemo,
        DerivedTag::IelCoreflection,
        DerivedTag::IelK,
        DerivedTag::IelConsistency,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DerivedTag::S4K => "S4-K",
            DerivedTag::S4T => "S4-T",
            DerivedTag::S44 => "S4-4",
            DerivedTag::S4NecDemo => "S4-Nec-demo",
            DerivedTag::IelCoreflection => "IEL-coreflection",
            DerivedTag::IelK => "IEL-K",
            DerivedTag::IelConsistency => "IEL-consistency",
        }
    }

    /// The formula the derivation ends with.
    pub fn statement(self) -> &'static str {
        match self {
            DerivedTag::S4K => "?!(P -> Q) -> ?!P -> ?!Q",
            DerivedTag::S4T => "?!P -> P",
            DerivedTag::S44 => "?!P -> ?!?!P",
            DerivedTag::S4NecDemo => "?!(P -> P)",
            DerivedTag::IelCoreflection => "a -> !?a",
            DerivedTag::IelK => "!?(a -> b) -> !?a -> !?b",
            DerivedTag::IelConsistency => "!?falseH -> falseH",
        }
    }
}

impl fmt::Display for DerivedTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DerivedTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DerivedTag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown derived theorem `{s}`"))
    }
}

fn atom(name: &str) -> Formula {
    Formula::atom(name)
}

/// Builds the HC derivation for `tag`.
pub fn derived_theorem(tag: DerivedTag) -> Proof {
    build(tag).expect("built-in derivations are well formed")
}

fn build(tag: DerivedTag) -> Result<Proof, GaloisError> {
    let p = atom("P");
    let q = atom("Q");
    let a = atom("a");
    let b = atom("b");
    let mut pb = ProofBuilder::new();
    match tag {
        DerivedTag::S4T => {
            pb.axiom("B1", &[("p", &p)])?;
        }
        DerivedTag::S44 => {
            let bang_p = Formula::bang(p.clone());
            // !P -> !?!P
            let b2 = pb.axiom("B2", &[("alpha", &bang_p)])?;
            // ?(!P -> !?!P)
            let lifted = pb.hc(b2);
            let bqb = Formula::bang(Formula::query(bang_p.clone()));
            // ?(!P -> !?!P) -> (?!P -> ?!?!P)
            let b4 = pb.axiom("B4", &[("alpha", &bang_p), ("beta", &bqb)])?;
            pb.mp(lifted, b4)?;
        }
        DerivedTag::S4K => {
            let pq = Formula::implies(p.clone(), q.clone());
            // !(P -> Q) -> (!P -> !Q)
            let b3 = pb.axiom("B3", &[("p", &p), ("q", &q)])?;
            let lifted = pb.hc(b3);
            let bang_pq = Formula::bang(pq);
            let bp_bq = Formula::implies(Formula::bang(p.clone()), Formula::bang(q.clone()));
            // ?(!(P->Q) -> (!P -> !Q)) -> (?!(P->Q) -> ?(!P -> !Q))
            let b4 = pb.axiom("B4", &[("alpha", &bang_pq), ("beta", &bp_bq)])?;
            let first = pb.mp(lifted, b4)?;
            // ?(!P -> !Q) -> (?!P -> ?!Q)
            let b4b = pb.axiom(
                "B4",
                &[("alpha", &Formula::bang(p)), ("beta", &Formula::bang(q))],
            )?;
            pb.syllogism(first, b4b)?;
        }
        DerivedTag::S4NecDemo => {
            let thm = pb.identity(&p)?;
            let bang = pb.ch(thm);
            pb.hc(bang);
        }
        DerivedTag::IelCoreflection => {
            pb.axiom("B2", &[("alpha", &a)])?;
        }
        DerivedTag::IelK => {
            // ?(a -> b) -> (?a -> ?b)
            let b4 = pb.axiom("B4", &[("alpha", &a), ("beta", &b)])?;
            let lifted = pb.ch(b4);
            let qab = Formula::query(Formula::implies(a.clone(), b.clone()));
            let qa_qb = Formula::implies(Formula::query(a.clone()), Formula::query(b.clone()));
            // !(?(a->b) -> (?a -> ?b)) -> (!?(a->b) -> !(?a -> ?b))
            let b3 = pb.axiom("B3", &[("p", &qab), ("q", &qa_qb)])?;
            let first = pb.mp(lifted, b3)?;
            // !(?a -> ?b) -> (!?a -> !?b)
            let b3b = pb.axiom(
                "B3",
                &[("p", &Formula::query(a)), ("q", &Formula::query(b))],
            )?;
            pb.syllogism(first, b3b)?;
        }
        DerivedTag::IelConsistency => {
            let false_h = Formula::Bottom(Sort::Problem);
            let false_p = Formula::Bottom(Sort::Proposition);
            // falseH -> !falseP, then across the adjunction: ?falseH -> falseP
            let mut seed = ProofBuilder::new();
            seed.axiom("A9", &[("x", &Formula::bang(false_p.clone()))])?;
            let crossed = galois_backward(&seed.finish())?;
            let mut pb2 = ProofBuilder::extending(&crossed);
            let given = pb2.last();
            // !(?falseH -> falseP)
            let lifted = pb2.ch(given);
            let b3 = pb2.axiom("B3", &[("p", &Formula::query(false_h)), ("q", &false_p)])?;
            // !?falseH -> !falseP
            let reduced = pb2.mp(lifted, b3)?;
            // !falseP -> falseH
            let b5 = pb2.axiom("B5", &[])?;
            pb2.syllogism(reduced, b5)?;
            return Ok(pb2.finish());
        }
    }
    Ok(pb.finish())
}
