//! The `kcalc` command line. Every subcommand produces a text report or,
//! with `--json`, a single JSON document on standard output.
//!
//! Exit codes: 0 valid/accepted, 1 invalid/rejected (with a witness),
//! 2 usage, input or resource-cap errors.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::decision::{
    cpc_valid, ipc_derivable_within, ipc_provable, s4_valid, DecideError, Verdict, Witness,
};
use crate::enumerate::{formulas, random_suite, SUITE_ATOMS, SUITE_HEIGHT, SUITE_SEED};
use crate::formula::{parse, print, print_with, Formula, Notation, Sort};
use crate::groupoid::{equivalent, FiniteGroupoid, GroupTable, GroupoidError};
use crate::kernel::{check_proof, galois_backward, galois_forward, GaloisError, Proof, System};
use crate::kripke::{countermodel_exists, countermodel_search, KripkeError};
use crate::medvedev::{
    medvedev_valid_upto_with, MedvedevError, DEFAULT_MAX_BASE, DEFAULT_VALUATION_BUDGET,
};
use crate::modal::parse_modal;
use crate::translations::{double_negation_translate, godel_translate, TranslateError};

/// Default world bound for countermodel searches.
pub const ENV_MAX_WORLDS: &str = "KCALC_MAX_WORLDS";
/// Largest Medvedev base a single invocation may examine.
pub const ENV_MAX_BASE: &str = "KCALC_MAX_BASE";
/// Valuation budget for Medvedev checks.
pub const ENV_VALUATION_BUDGET: &str = "KCALC_VALUATION_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "kcalc",
    version,
    about = "Calculus of problems and propositions workbench"
)]
struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a formula and report its sort and shape.
    Parse {
        formula: String,
        #[arg(long)]
        unicode: bool,
    },
    /// Check a proof file against a calculus.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        system: SystemArg,
    },
    /// Decide validity in CPC, IPC or S4.
    Decide {
        formula: String,
        #[arg(long, value_enum)]
        logic: Logic,
        /// World bound for the IPC countermodel.
        #[arg(long)]
        max_worlds: Option<usize>,
    },
    /// Search for the smallest Kripke countermodel.
    Countermodel {
        formula: String,
        #[arg(long)]
        max_worlds: Option<usize>,
    },
    /// Check validity on Medvedev frames with base 1..=N.
    Medvedev {
        formula: String,
        #[arg(long, default_value_t = 3)]
        max_base: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Apply the double-negation or modal translation.
    Translate {
        formula: String,
        #[arg(long, value_enum)]
        via: Via,
        #[arg(long)]
        unicode: bool,
    },
    /// Carry a proof across the ! / ? adjunction.
    Galois {
        file: PathBuf,
        #[arg(long, value_enum)]
        dir: Direction,
        /// Write the resulting proof here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute the h-level of a groupoid file.
    Hlevel { file: PathBuf },
    /// Truncate a groupoid to level K.
    Truncate {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        level: i32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a narrated example.
    Demo {
        #[arg(value_enum)]
        name: DemoName,
    },
    /// Cross-validate the deciders and translations over enumerated formulas.
    Crosscheck {
        /// Height bound of the exhaustive enumeration (at most 3).
        #[arg(long, default_value_t = SUITE_HEIGHT)]
        height: usize,
        #[arg(long)]
        max_worlds: Option<usize>,
        /// Number of random deeper formulas.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 5)]
        sample_height: usize,
        #[arg(long, default_value_t = SUITE_SEED)]
        seed: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SystemArg {
    Cpc,
    Ipc,
    Hc,
}

impl From<SystemArg> for System {
    fn from(s: SystemArg) -> System {
        match s {
            SystemArg::Cpc => System::Cpc,
            SystemArg::Ipc => System::Ipc,
            SystemArg::Hc => System::Hc,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Logic {
    Cpc,
    Ipc,
    S4,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Via {
    Dneg,
    Godel,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Direction {
    Fwd,
    Bwd,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DemoName {
    Fermat,
    Goldbach,
    Triangle,
    Euclid,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
    Resource(String),
}

impl Failure {
    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Input(_) => "input",
            Failure::Resource(_) => "resource",
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Resource(m) => m,
        }
    }
}

impl From<KripkeError> for Failure {
    fn from(e: KripkeError) -> Self {
        match e {
            KripkeError::SearchTooLarge(_) => Failure::Resource(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<DecideError> for Failure {
    fn from(e: DecideError) -> Self {
        match e {
            DecideError::TooManyAtoms(_) => Failure::Resource(e.to_string()),
            DecideError::Kripke(k) => k.into(),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<MedvedevError> for Failure {
    fn from(e: MedvedevError) -> Self {
        match e {
            MedvedevError::BaseOutOfRange { .. } | MedvedevError::Budget { .. } => {
                Failure::Resource(e.to_string())
            }
            MedvedevError::Kripke(k) => k.into(),
            MedvedevError::Unsupported(_) => Failure::Input(e.to_string()),
        }
    }
}

impl From<TranslateError> for Failure {
    fn from(e: TranslateError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<GroupoidError> for Failure {
    fn from(e: GroupoidError) -> Self {
        Failure::Input(e.to_string())
    }
}

struct Report {
    json: Value,
    text: String,
    code: i32,
}

impl Report {
    fn new(json: Value, text: String, code: i32) -> Self {
        Report { json, text, code }
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(out, "{rendered}");
                    if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                        2
                    } else {
                        0
                    }
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    2
                }
            };
        }
    };
    match execute(cli.command) {
        Ok(report) => {
            let _ = if cli.json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report.json).unwrap_or_default()
                )
            } else {
                write!(out, "{}", report.text)
            };
            report.code
        }
        Err(f) => {
            if cli.json {
                let doc = json!({"error": f.message(), "kind": f.kind()});
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&doc).unwrap_or_default()
                );
            }
            let _ = writeln!(err, "kcalc: {} error: {}", f.kind(), f.message());
            2
        }
    }
}

fn execute(cmd: Command) -> Result<Report, Failure> {
    match cmd {
        Command::Parse { formula, unicode } => cmd_parse(&formula, unicode),
        Command::Check { file, system } => cmd_check(&file, system.into()),
        Command::Decide {
            formula,
            logic,
            max_worlds,
        } => cmd_decide(&formula, logic, max_worlds),
        Command::Countermodel {
            formula,
            max_worlds,
        } => cmd_countermodel(&formula, max_worlds),
        Command::Medvedev {
            formula,
            max_base,
            budget,
        } => cmd_medvedev(&formula, max_base, budget),
        Command::Translate {
            formula,
            via,
            unicode,
        } => cmd_translate(&formula, via, unicode),
        Command::Galois { file, dir, output } => cmd_galois(&file, dir, output.as_deref()),
        Command::Hlevel { file } => cmd_hlevel(&file),
        Command::Truncate {
            file,
            level,
            output,
        } => cmd_truncate(&file, level, output.as_deref()),
        Command::Demo { name } => Ok(cmd_demo(name)),
        Command::Crosscheck {
            height,
            max_worlds,
            samples,
            sample_height,
            seed,
        } => cmd_crosscheck(height, max_worlds, samples, sample_height, seed),
    }
}

fn env_or<T: std::str::FromStr>(var: &str, default: T) -> Result<T, Failure> {
    match std::env::var(var) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{var}={v} is not a valid number"))),
        Err(_) => Ok(default),
    }
}

fn max_worlds(flag: Option<usize>) -> Result<usize, Failure> {
    match flag {
        Some(n) => Ok(n),
        None => env_or(ENV_MAX_WORLDS, crate::decision::DEFAULT_MAX_WORLDS),
    }
}

fn formula(text: &str) -> Result<Formula, Failure> {
    parse(text).map_err(|e| Failure::Input(format!("cannot parse `{text}`: {e}")))
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, format!("{contents}\n"))
        .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

fn load_proof(path: &Path) -> Result<Proof, Failure> {
    Proof::from_json(&read_file(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_groupoid(path: &Path) -> Result<FiniteGroupoid, Failure> {
    FiniteGroupoid::from_json(&read_file(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn verdict_code(valid: bool) -> i32 {
    if valid {
        0
    } else {
        1
    }
}

fn cmd_parse(text: &str, unicode: bool) -> Result<Report, Failure> {
    let f = formula(text)?;
    let notation = if unicode {
        Notation::Unicode
    } else {
        Notation::Ascii
    };
    let printed = print_with(&f, notation);
    let sort = f.sort().map_err(|e| Failure::Input(e.to_string()))?;
    let json = json!({
        "formula": printed,
        "sort": sort.to_string(),
        "bridge_free": f.is_bridge_free(),
        "atoms": f.atoms(),
        "size": f.size(),
        "height": f.height(),
    });
    let text = format!(
        "{printed}\nsort: {sort}\nbridge-free: {}\nsize: {}, height: {}\n",
        f.is_bridge_free(),
        f.size(),
        f.height()
    );
    Ok(Report::new(json, text, 0))
}

fn cmd_check(path: &Path, system: System) -> Result<Report, Failure> {
    let proof = load_proof(path)?;
    let report = check_proof(&proof, system);
    let mut json = report.to_json();
    json["system"] = json!(system.to_string());
    json["target"] = json!(print(&proof.target));
    json["steps"] = json!(proof.len());
    let text = match &report.reason {
        None => format!(
            "accepted in {system}: {} ({} steps)\n",
            proof.target,
            proof.len()
        ),
        Some(reason) => match report.failed_step {
            Some(i) => format!("rejected in {system} at step {i}: {reason}\n"),
            None => format!("rejected in {system}: {reason}\n"),
        },
    };
    Ok(Report::new(json, text, verdict_code(report.accepted)))
}

fn witness_text(v: &Verdict) -> String {
    match &v.witness {
        None => String::new(),
        Some(Witness::Assignment(a)) => {
            let parts: Vec<String> = a.iter().map(|(k, b)| format!("{k}={b}")).collect();
            format!("falsifying assignment: {}\n", parts.join(", "))
        }
        Some(Witness::Countermodel(r)) => {
            format!("countermodel, refuted at world {}:\n{}\n", r.world, r.model)
        }
        Some(Witness::NoCountermodelWithin(n)) => {
            format!("not derivable; no countermodel with at most {n} worlds\n")
        }
        Some(Witness::OpenBranch(m)) => format!("countermodel, refuted at world 0:\n{m}\n"),
    }
}

fn cmd_decide(text: &str, logic: Logic, worlds: Option<usize>) -> Result<Report, Failure> {
    let (printed, verdict, name) = match logic {
        Logic::Cpc => {
            let f = formula(text)?;
            (print(&f), cpc_valid(&f)?, "cpc")
        }
        Logic::Ipc => {
            let f = formula(text)?;
            (
                print(&f),
                ipc_derivable_within(&f, max_worlds(worlds)?)?,
                "ipc",
            )
        }
        Logic::S4 => {
            let f = parse_modal(text)
                .map_err(|e| Failure::Input(format!("cannot parse `{text}`: {e}")))?;
            (f.to_string(), s4_valid(&f), "s4")
        }
    };
    let mut json = verdict.to_json();
    json["logic"] = json!(name);
    json["formula"] = json!(printed);
    let word = if verdict.valid { "valid" } else { "invalid" };
    let text = format!(
        "{printed}\n{}: {word}\n{}",
        name.to_uppercase(),
        witness_text(&verdict)
    );
    Ok(Report::new(json, text, verdict_code(verdict.valid)))
}

fn cmd_countermodel(text: &str, worlds: Option<usize>) -> Result<Report, Failure> {
    let f = formula(text)?;
    let n = max_worlds(worlds)?;
    let found = countermodel_search(&f, n)?;
    let json = json!({
        "formula": print(&f),
        "max_worlds": n,
        "found": found.is_some(),
        "world": found.as_ref().map(|r| r.world),
        "model": found.as_ref().map(|r| r.model.to_json_value()),
    });
    let text = match &found {
        Some(r) => format!(
            "{f}\ncountermodel with {} worlds, refuted at world {}:\n{}\n",
            r.model.worlds(),
            r.world,
            r.model
        ),
        None => format!("{f}\nno countermodel with at most {n} worlds\n"),
    };
    Ok(Report::new(json, text, verdict_code(found.is_none())))
}

fn cmd_medvedev(text: &str, max_base: usize, budget: Option<u64>) -> Result<Report, Failure> {
    let f = formula(text)?;
    let cap = env_or(ENV_MAX_BASE, DEFAULT_MAX_BASE)?;
    let budget = match budget {
        Some(b) => b,
        None => env_or(ENV_VALUATION_BUDGET, DEFAULT_VALUATION_BUDGET)?,
    };
    let report = medvedev_valid_upto_with(&f, max_base, cap, budget)?;
    let mut json = report.to_json();
    json["formula"] = json!(print(&f));
    let mut text = format!(
        "{f}\nMedvedev frames with base <= {}: {} ({} valuations checked)\n",
        report.checked_up_to,
        if report.valid { "valid" } else { "refuted" },
        report.valuations_checked
    );
    if let Some(r) = &report.refutation {
        let set = |s: &[u32]| {
            let v: Vec<String> = s.iter().map(u32::to_string).collect();
            format!("{{{}}}", v.join(","))
        };
        let _ = writeln!(text, "base {}, fails at world {}", r.base, set(&r.world));
        for (atom, sets) in &r.valuation {
            let s: Vec<String> = sets.iter().map(|x| set(x)).collect();
            let _ = writeln!(text, "  {atom}: [{}]", s.join(" "));
        }
    }
    Ok(Report::new(json, text, verdict_code(report.valid)))
}

fn cmd_translate(text: &str, via: Via, unicode: bool) -> Result<Report, Failure> {
    let f = formula(text)?;
    let (name, result) = match via {
        Via::Dneg => {
            let t = double_negation_translate(&f)?;
            let notation = if unicode {
                Notation::Unicode
            } else {
                Notation::Ascii
            };
            ("dneg", print_with(&t, notation))
        }
        Via::Godel => ("godel", godel_translate(&f)?.to_string()),
    };
    let json = json!({"via": name, "input": print(&f), "output": result});
    Ok(Report::new(json, format!("{result}\n"), 0))
}

fn cmd_galois(path: &Path, dir: Direction, output: Option<&Path>) -> Result<Report, Failure> {
    let proof = load_proof(path)?;
    let (name, result) = match dir {
        Direction::Fwd => ("fwd", galois_forward(&proof)),
        Direction::Bwd => ("bwd", galois_backward(&proof)),
    };
    match result {
        Ok(p) => {
            let check = check_proof(&p, System::Hc);
            if let Some(o) = output {
                write_file(o, &p.to_json())?;
            }
            let json = json!({
                "direction": name,
                "input_target": print(&proof.target),
                "target": print(&p.target),
                "check": check.to_json(),
                "proof": p.to_json_value(),
            });
            let text = format!(
                "{} => {} ({} steps, {})\n",
                proof.target,
                p.target,
                p.len(),
                if check.accepted {
                    "accepted"
                } else {
                    "rejected"
                }
            );
            Ok(Report::new(json, text, verdict_code(check.accepted)))
        }
        Err(GaloisError::InputRejected { step, reason }) => {
            let json = json!({
                "direction": name,
                "input_target": print(&proof.target),
                "target": Value::Null,
                "check": {"verdict": "rejected", "failed_step": step, "reason": reason},
                "proof": Value::Null,
            });
            Ok(Report::new(
                json,
                format!("input proof rejected: {reason}\n"),
                1,
            ))
        }
        Err(e) => Err(Failure::Input(e.to_string())),
    }
}

fn groupoid_summary(g: &FiniteGroupoid) -> Value {
    json!({
        "h_level": g.h_level().0,
        "objects": g.objects(),
        "morphisms": g.morphisms().len(),
        "components": g.components().len(),
    })
}

fn cmd_hlevel(path: &Path) -> Result<Report, Failure> {
    let g = load_groupoid(path)?;
    let json = groupoid_summary(&g);
    let text = format!(
        "h-level {} ({} objects, {} morphisms, {} components)\n",
        g.h_level(),
        g.objects(),
        g.morphisms().len(),
        g.components().len()
    );
    Ok(Report::new(json, text, 0))
}

fn cmd_truncate(path: &Path, level: i32, output: Option<&Path>) -> Result<Report, Failure> {
    let g = load_groupoid(path)?;
    let t = g.truncate(level)?;
    if let Some(o) = output {
        write_file(o, &t.to_json())?;
    }
    let mut json = groupoid_summary(&t);
    json["level"] = json!(level);
    json["input_h_level"] = json!(g.h_level().0);
    json["groupoid"] = t.to_json_value();
    let text = format!(
        "{level}-truncation: h-level {} ({} objects, {} morphisms); input h-level {}\n",
        t.h_level(),
        t.objects(),
        t.morphisms().len(),
        g.h_level()
    );
    Ok(Report::new(json, text, 0))
}

struct Claim {
    statement: String,
    expected: bool,
    observed: bool,
}

fn claim(statement: impl Into<String>, expected: bool, observed: bool) -> Claim {
    Claim {
        statement: statement.into(),
        expected,
        observed,
    }
}

fn ipc(text: &str) -> bool {
    ipc_provable(&parse(text).expect("demo formula")).expect("demo formula is pure")
}

fn cpc(text: &str) -> bool {
    cpc_valid(&parse(text).expect("demo formula"))
        .expect("demo formula is pure")
        .valid
}

fn hc_accepts(text: &str, proof: Proof) -> bool {
    proof.target == parse(text).expect("demo formula") && check_proof(&proof, System::Hc).accepted
}

fn demo_claims(name: DemoName) -> (&'static str, Vec<Claim>) {
    use crate::kernel::ProofBuilder;
    match name {
        DemoName::Fermat => {
            let mut b = ProofBuilder::new();
            b.axiom("B2", &[("alpha", &parse("a").unwrap())])
                .expect("B2 instance");
            let b2 = b.finish();
            (
                "Problem a: find whole numbers x, y, z, n > 2 with x^n + y^n = z^n.\n\
                 Problem ~~a: show that the claim that no such numbers exist is absurd.\n\
                 A solution of a solves ~~a, not conversely; as propositions the two agree.",
                vec![
                    claim("a -> ~~a is IPC-derivable", true, ipc("a -> ~~a")),
                    claim("~~a -> a is IPC-derivable", false, ipc("~~a -> a")),
                    claim(
                        "P <-> ~~P is CPC-valid",
                        true,
                        cpc("(P -> ~~P) & (~~P -> P)"),
                    ),
                    claim(
                        "a -> !?a (a solution proves solvability) is HC-accepted",
                        true,
                        hc_accepts("a -> !?a", b2),
                    ),
                ],
            )
        }
        DemoName::Goldbach => (
            "Atom a stands for a decidable statement, such as an instance of the Goldbach\n\
             conjecture for one even number. Decidability licenses double-negation\n\
             elimination for it; without it the intuitionistic law fails.",
            vec![
                claim(
                    "(a | ~a) -> (~~a -> a) is IPC-derivable",
                    true,
                    ipc("(a | ~a) -> (~~a -> a)"),
                ),
                claim("~~a -> a is IPC-derivable", false, ipc("~~a -> a")),
                claim("~~(a | ~a) is IPC-derivable", true, ipc("~~(a | ~a)")),
                claim("a | ~a is IPC-derivable", false, ipc("a | ~a")),
                claim("~~P -> P is CPC-valid", true, cpc("~~P -> P")),
            ],
        ),
        DemoName::Triangle => {
            let s3 = GroupTable::symmetric3();
            let bs3 = FiniteGroupoid::delooping(&s3);
            let trivial = FiniteGroupoid::delooping(&GroupTable::trivial());
            let bc3 = FiniteGroupoid::delooping(&GroupTable::cyclic(3));
            let auts = bs3.automorphism_group(0).map(|g| g.order()).unwrap_or(0);
            (
                "A regular triangle has 3! = 6 isometries (the group S3), the rotations\n\
                 alone form C3. One triangle with its symmetries is the delooping of S3;\n\
                 forgetting symmetry leaves the delooping of the trivial group.",
                vec![
                    claim("delooping(S3) has 6 automorphisms", true, auts == 6),
                    claim("delooping(S3) has h-level 1", true, bs3.h_level().0 == 1),
                    claim(
                        "delooping(trivial) has h-level -2",
                        true,
                        trivial.h_level().0 == -2,
                    ),
                    claim(
                        "delooping(S3) is equivalent to delooping(trivial)",
                        false,
                        equivalent(&bs3, &trivial),
                    ),
                    claim(
                        "delooping(C3) is equivalent to delooping(S3)",
                        false,
                        equivalent(&bc3, &bs3),
                    ),
                ],
            )
        }
        DemoName::Euclid => {
            let s3 = GroupTable::symmetric3();
            let e = FiniteGroupoid::connected(2, &s3);
            let h = e.truncate(-1).expect("-1 truncation exists");
            (
                "(E) asks to construct a regular triangle on a given side: its solutions\n\
                 are the two triangles, related by symmetries. (H) says such a triangle\n\
                 exists: the (-1)-truncation of (E), which keeps only inhabitation.",
                vec![
                    claim("(E) has h-level >= 0", true, e.h_level().0 >= 0),
                    claim(
                        "(H) = ||E||_{-1} has h-level <= -1",
                        true,
                        h.h_level().0 <= -1,
                    ),
                    claim(
                        "(E) is equivalent to delooping(S3)",
                        true,
                        equivalent(&e, &FiniteGroupoid::delooping(&s3)),
                    ),
                    claim(
                        "(H) is equivalent to the point",
                        true,
                        equivalent(&h, &FiniteGroupoid::point()),
                    ),
                ],
            )
        }
    }
}

fn cmd_demo(name: DemoName) -> Report {
    let (story, claims) = demo_claims(name);
    let all = claims.iter().all(|c| c.expected == c.observed);
    let mut text = format!("{story}\n\n");
    for c in &claims {
        let mark = if c.expected == c.observed {
            "ok  "
        } else {
            "FAIL"
        };
        let _ = writeln!(text, "[{mark}] {}: {}", c.statement, c.observed);
    }
    let json = json!({
        "demo": format!("{name:?}").to_lowercase(),
        "holds": all,
        "claims": claims.iter().map(|c| json!({
            "claim": c.statement,
            "expected": c.expected,
            "observed": c.observed,
            "holds": c.expected == c.observed,
        })).collect::<Vec<_>>(),
    });
    Report::new(json, text, verdict_code(all))
}

#[derive(Default)]
struct Suite {
    name: &'static str,
    checked: usize,
    discrepancies: Vec<String>,
    inconclusive: usize,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            name,
            ..Suite::default()
        }
    }

    fn record(&mut self, f: &Formula, agree: bool) {
        self.checked += 1;
        if !agree {
            self.discrepancies.push(print(f));
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "checked": self.checked,
            "discrepancies": self.discrepancies.len(),
            "inconclusive": self.inconclusive,
            "examples": self.discrepancies.iter().take(5).collect::<Vec<_>>(),
        })
    }
}

fn cmd_crosscheck(
    height: usize,
    worlds: Option<usize>,
    samples: usize,
    sample_height: usize,
    seed: u64,
) -> Result<Report, Failure> {
    if height > SUITE_HEIGHT {
        return Err(Failure::Resource(format!(
            "exhaustive height {height} exceeds {SUITE_HEIGHT}; use --samples for deeper formulas"
        )));
    }
    if samples > 0 && !(4..=8).contains(&sample_height) {
        return Err(Failure::Usage("--sample-height must be in 4..=8".into()));
    }
    let n = max_worlds(worlds)?;
    let problems = formulas(&SUITE_ATOMS, Sort::Problem, height);
    let propositions = formulas(&SUITE_ATOMS, Sort::Proposition, height);
    let random = random_suite(seed, samples, &SUITE_ATOMS, Sort::Problem, 4, sample_height);

    let mut search = Suite::new("ipc-vs-countermodel");
    for f in &problems {
        let provable = ipc_provable(f)?;
        search.record(f, provable == countermodel_exists(f, n)?.is_none());
    }
    let mut sampled = Suite::new("ipc-vs-countermodel-random");
    for f in &random {
        let provable = ipc_provable(f)?;
        let refuted = countermodel_exists(f, n)?.is_some();
        if !provable && !refuted {
            sampled.inconclusive += 1;
        }
        sampled.record(f, !(provable && refuted));
    }
    let mut glivenko = Suite::new("cpc-vs-ipc-of-dneg");
    for f in &propositions {
        let classical = cpc_valid(f)?.valid;
        glivenko.record(
            f,
            classical == ipc_provable(&double_negation_translate(f)?)?,
        );
    }
    let mut modal = Suite::new("ipc-vs-s4-of-godel");
    for f in problems.iter().chain(&random) {
        modal.record(f, ipc_provable(f)? == s4_valid(&godel_translate(f)?).valid);
    }

    let suites = [search, sampled, glivenko, modal];
    let ok = suites.iter().all(|s| s.discrepancies.is_empty());
    let mut text = String::new();
    for s in &suites {
        let _ = write!(
            text,
            "{:<28} {:>5} checked, {} discrepancies",
            s.name,
            s.checked,
            s.discrepancies.len()
        );
        if s.inconclusive > 0 {
            let _ = write!(
                text,
                ", {} without a countermodel within {n} worlds",
                s.inconclusive
            );
        }
        text.push('\n');
        for d in s.discrepancies.iter().take(5) {
            let _ = writeln!(text, "    {d}");
        }
    }
    let json = json!({
        "seed": seed,
        "height": height,
        "max_worlds": n,
        "ok": ok,
        "suites": suites.iter().map(Suite::to_json).collect::<Vec<_>>(),
    });
    Ok(Report::new(json, text, verdict_code(ok)))
}
