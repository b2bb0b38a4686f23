//! Command-line front end: every verification and derivation as a
//! reproducible command with text or structured output.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thetadef::bundle::{Bundle, Normalizer};
use thetadef::coaction::{s5_generic, s5xs5_generic, CoactionSpec, ConstraintSet};
use thetadef::quantumgroup::{build_su3_theta, HopfSpec, RelationEntry};
use thetadef::report::CheckReport;
use thetadef::{Bindings, Error, LinearForm};

pub const SCHEMA: &str = "thetadef.report/1";
pub const GOLDEN_RELATIONS: &str = include_str!("../golden/relations.txt");
/// Largest degree accepted by `coinvariants`.
pub const MAX_COINVARIANT_DEGREE: usize = 6;

#[derive(Parser, Debug)]
#[command(name = "thetadef", version, about = "Exact checks for theta-deformed spheres and SU(3)_theta")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Derive the 36 commutation relations of SU(3)_theta and diff them against the golden table.
    Relations,
    /// Run a check suite.
    Check {
        #[arg(value_enum)]
        target: CheckTarget,
        /// Degree bound for the Hopf checks.
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = Variant::Corrected)]
        variant: Variant,
        /// Leave every parameter free instead of solving the constraints.
        #[arg(long)]
        generic: bool,
    },
    /// Extract the parameter constraints for a coaction.
    Constraints {
        #[arg(value_enum)]
        target: Target,
        /// Set every parameter to zero first.
        #[arg(long)]
        classical: bool,
    },
    /// Coinvariants of a coaction per bidegree.
    Coinvariants {
        #[arg(value_enum)]
        target: Target,
        #[arg(long)]
        degree: Option<usize>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum CheckTarget {
    Hopf,
    CoactionS5,
    CoactionS5s5,
    Projection,
    WRelations,
    Haar,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    S5,
    S5s5,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Variant {
    Corrected,
    PaperLiteral,
}

/// One derived relation next to its golden line.
#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct RelationLine {
    pub derived: String,
    pub golden: Option<String>,
    pub matches: bool,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct CoinvariantLine {
    pub bidegree: (usize, usize),
    pub free_dimension: usize,
    pub elements: Vec<String>,
    pub confirmed: bool,
}

#[derive(Serialize, Debug, Default)]
pub struct Output {
    pub schema: &'static str,
    pub command: Vec<String>,
    pub bindings: Vec<String>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<RelationLine>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constraints: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub coinvariants: Vec<CoinvariantLine>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub reports: Vec<CheckReport>,
}

/// Rendered output and exit status.
pub struct Run {
    pub stdout: String,
    pub code: i32,
}

const KNOWN_FLAGS: &[&str] = &["format", "degree", "variant", "generic", "classical", "help", "version"];

/// Splits `--name=form` parameter bindings off the argument list.
pub fn split_bindings(args: &[String]) -> Result<(Vec<String>, Bindings), Error> {
    let mut rest = Vec::new();
    let mut bindings = Bindings::new();
    for a in args {
        if let Some((name, value)) = a.strip_prefix("--").and_then(|s| s.split_once('=')) {
            if !KNOWN_FLAGS.contains(&name) {
                bindings.insert(name, value.parse::<LinearForm>()?);
                continue;
            }
        }
        rest.push(a.clone());
    }
    bindings.resolved()?;
    Ok((rest, bindings))
}

/// Runs the command line `args` (without the program name).
pub fn run(args: &[String]) -> Run {
    match try_run(args) {
        Ok(r) => r,
        Err(e) => Run { stdout: format!("error: {e}\n"), code: 2 },
    }
}

fn try_run(args: &[String]) -> Result<Run, Box<dyn std::error::Error>> {
    let (rest, bindings) = split_bindings(args)?;
    let cli = match Cli::try_parse_from(std::iter::once("thetadef".to_string()).chain(rest)) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Ok(Run { stdout: e.render().to_string(), code });
        }
    };
    let mut out = Output {
        schema: SCHEMA,
        command: args.to_vec(),
        bindings: bindings.iter().map(|(p, f)| format!("{p} = {f}")).collect(),
        ..Default::default()
    };
    let hopf = build_su3_theta("theta")?;
    match cli.command {
        Command::Relations => relations(&hopf, &bindings, &mut out)?,
        Command::Check { target, degree, variant, generic } => {
            check(&hopf, target, degree, variant, generic, &bindings, &mut out)?
        }
        Command::Constraints { target, classical } => {
            let mut c = coaction(&hopf, target)?;
            if classical {
                c = c.classical();
            } else if !bindings.is_empty() {
                c = c.substitute(&bindings)?;
            }
            let cs = c.extract_constraints()?;
            out.passed = cs.is_consistent();
            out.constraints = Some(cs.lines());
        }
        Command::Coinvariants { target, degree } => {
            let degree = degree.unwrap_or(match target {
                Target::S5 => 3,
                Target::S5s5 => 2,
            });
            if degree > MAX_COINVARIANT_DEGREE {
                return Err(Box::new(Error::DegreeOutOfRange(format!(
                    "degree {degree} exceeds the budget {MAX_COINVARIANT_DEGREE}"
                ))));
            }
            let c = solved(coaction(&hopf, target)?, &bindings)?;
            let inv = c.coinvariants(degree)?;
            for b in &inv.bidegrees {
                out.coinvariants.push(CoinvariantLine {
                    bidegree: b.bidegree,
                    free_dimension: b.free_dimension,
                    elements: b.elements.iter().map(|e| c.target().render(e)).collect(),
                    confirmed: b.confirmed,
                });
            }
            out.passed = inv.all_confirmed();
        }
    }
    let stdout = match cli.format {
        Format::Structured => serde_json::to_string_pretty(&out)? + "\n",
        Format::Text => render_text(&out),
    };
    Ok(Run { stdout, code: if out.passed { 0 } else { 1 } })
}

fn coaction(hopf: &HopfSpec, target: Target) -> thetadef::Result<CoactionSpec> {
    match target {
        Target::S5 => s5_generic(hopf),
        Target::S5s5 => s5xs5_generic(hopf),
    }
}

/// Applies explicit bindings if any, otherwise the extracted constraints.
fn solved(c: CoactionSpec, bindings: &Bindings) -> thetadef::Result<CoactionSpec> {
    if bindings.is_empty() {
        let cs = c.extract_constraints()?;
        c.substitute(&cs.bindings())
    } else {
        c.substitute(bindings)
    }
}

fn relations(hopf: &HopfSpec, bindings: &Bindings, out: &mut Output) -> thetadef::Result<()> {
    let golden: Vec<RelationEntry> =
        GOLDEN_RELATIONS.lines().filter(|l| !l.trim().is_empty()).map(RelationEntry::parse).collect::<Result<_, _>>()?;
    let mut all = true;
    for mut d in hopf.derive_relation_table() {
        d.phase = d.phase.substitute(bindings)?;
        let g = golden.iter().find(|g| g.key() == d.key()).cloned();
        let matches = match &g {
            Some(g) => g.ordered_phase().substitute(bindings)? == d.ordered_phase(),
            None => false,
        };
        all &= matches;
        out.relations.push(RelationLine { derived: d.to_string(), golden: g.map(|g| g.to_string()), matches });
    }
    out.passed = all && golden.len() == out.relations.len();
    Ok(())
}

fn check(
    hopf: &HopfSpec,
    target: CheckTarget,
    degree: usize,
    variant: Variant,
    generic: bool,
    bindings: &Bindings,
    out: &mut Output,
) -> thetadef::Result<()> {
    let hopf = if bindings.is_empty() { hopf.clone() } else { hopf.substitute(bindings)? };
    let reports = match target {
        CheckTarget::Hopf => vec![hopf.check_all(degree)?],
        CheckTarget::Haar => vec![hopf.check_unimodularity()?],
        CheckTarget::CoactionS5 | CheckTarget::CoactionS5s5 => {
            let t = if target == CheckTarget::CoactionS5 { Target::S5 } else { Target::S5s5 };
            let c = coaction(&hopf, t)?;
            let c = if generic { c } else { solved(c, bindings)? };
            let mut r = vec![c.check_homomorphism()?];
            if r[0].passed() {
                r.push(c.check_coaction_axioms()?);
            }
            r
        }
        CheckTarget::WRelations => vec![Bundle::from_hopf(&hopf)?.check_w_relations()?],
        CheckTarget::Projection => {
            let b = Bundle::from_hopf(&hopf)?;
            let normalizer = match variant {
                Variant::Corrected => Normalizer::Corrected,
                Variant::PaperLiteral => Normalizer::PaperLiteral,
            };
            let frames = b.fundamental_frames(normalizer)?;
            let mut reports = Vec::new();
            for (name, fr) in [("p^(1,0)", &frames.z), ("p^(0,1)", &frames.w)] {
                let mut r = CheckReport::new(name);
                r.extend(b.check_gram(fr)?);
                let p = b.projection_unchecked(fr)?;
                r.extend(b.check_projection(&p)?);
                let ch = b.chern0(&p)?;
                let two = ch == thetadef::algebra::Element::from_int(2);
                r.push("ch0 = 2", two, b.algebra().render(&ch));
                reports.push(r);
            }
            reports
        }
    };
    out.passed = reports.iter().all(|r| r.passed());
    out.reports = reports;
    Ok(())
}

/// The human-readable rendering; deterministic for equal inputs.
pub fn render_text(out: &Output) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "$ thetadef {}", out.command.join(" "));
    for b in &out.bindings {
        let _ = writeln!(s, "bind {b}");
    }
    if !out.relations.is_empty() {
        let n = out.relations.iter().filter(|r| r.matches).count();
        for r in &out.relations {
            if r.matches {
                let _ = writeln!(s, "  ok    {}", r.derived);
            } else {
                let _ = writeln!(s, "  DIFF  {}", r.derived);
                let _ = writeln!(s, "        golden: {}", r.golden.as_deref().unwrap_or("(missing)"));
            }
        }
        let _ = writeln!(s, "{n}/{} relations match the golden table", out.relations.len());
    }
    if let Some(cs) = &out.constraints {
        if cs.is_empty() {
            let _ = writeln!(s, "no constraints");
        }
        for l in cs {
            let _ = writeln!(s, "  {l}");
        }
        let _ = writeln!(s, "{} constraints", cs.len());
    }
    for c in &out.coinvariants {
        let _ = writeln!(
            s,
            "bidegree ({}, {}): {} classical, {} new{}",
            c.bidegree.0,
            c.bidegree.1,
            c.free_dimension,
            c.elements.len(),
            if c.confirmed { "" } else { " (NOT confirmed)" }
        );
        for e in &c.elements {
            let _ = writeln!(s, "  {e}");
        }
    }
    for r in &out.reports {
        s.push_str(&r.to_string());
    }
    let _ = writeln!(s, "{}", if out.passed { "PASS" } else { "FAIL" });
    s
}

/// The constraints of a target as canonical strings.
pub fn constraint_lines(target: &str) -> thetadef::Result<Vec<String>> {
    let hopf = build_su3_theta("theta")?;
    let c = match target {
        "s5" => s5_generic(&hopf)?,
        _ => s5xs5_generic(&hopf)?,
    };
    let cs: ConstraintSet = c.extract_constraints()?;
    Ok(cs.lines())
}
