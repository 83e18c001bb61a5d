use std::cmp::Ordering;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use cfk_calc::cfk::{validate, CfkComplex};
use cfk_calc::concordance::{
    cable_tau, class_cmp, dominance_evidence, dominates_by_invariants, independence_certificate,
    Certificate, ClassRep, ConcordanceError, Dominance, Evidence,
};
use cfk_calc::invariants::{check_whitehead_model, hfk_table, Invariants};
use cfk_calc::knots::{alexander, parse};
use cfk_calc::laurent::staircase_exponents;
use cfk_calc::render::{layout, render_ascii, render_svg};

/// Knot Floer concordance calculator.
///
/// Knots are given as expressions such as "T(3,4)", "C(D;3,4) + -T(3,4)",
/// or as "@path" to a file in the cfk v1 text format.
#[derive(Parser)]
#[command(name = "cfk-calc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// tau, epsilon, a1, a2 and basic data of a knot
    Invariants {
        #[arg(allow_hyphen_values = true)]
        knot: String,
        #[arg(long)]
        json: bool,
    },
    /// Compare two classes
    Cmp {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
    },
    /// Try to prove that the first class dominates the second
    Dominates {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
        /// Also check first > n * second for n = 1..=N by direct computation
        #[arg(long, value_name = "N")]
        evidence: Option<u32>,
    },
    /// Build (or recheck) a linear independence certificate
    Independence {
        /// Knot expressions or @files. Put options first: the list takes
        /// everything after it, since a mirror starts with '-'
        #[arg(allow_hyphen_values = true, required_unless_present = "recheck")]
        knots: Vec<String>,
        /// Write the certificate JSON here
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Print JSON instead of text
        #[arg(long)]
        json: bool,
        /// Recompute every witness of a saved certificate
        #[arg(long, value_name = "FILE", conflicts_with = "knots")]
        recheck: Option<PathBuf>,
    },
    /// Alexander polynomial of an expression
    Alexander {
        #[arg(allow_hyphen_values = true)]
        knot: String,
    },
    /// Draw the reduced complex in the (i, j) plane
    Show {
        #[arg(allow_hyphen_values = true)]
        knot: String,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Check a cfk file or a certificate JSON file
    Validate {
        file: PathBuf,
        /// Also require rank-one column and row homology
        #[arg(long)]
        knot: bool,
        /// Test the complex as a model for the Whitehead double of the trefoil
        #[arg(long)]
        whitehead_model: bool,
        #[arg(long)]
        json: bool,
    },
    /// tau of the (p, q) cable from tau and epsilon of the companion
    #[command(allow_negative_numbers = true)]
    TauCable {
        p: i64,
        q: i64,
        #[arg(long, allow_hyphen_values = true)]
        tau: i64,
        #[arg(long, allow_hyphen_values = true)]
        epsilon: i8,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Ascii,
    Svg,
    Cfk,
}

/// Exit 1: a well-posed question with a negative answer.
/// Exit 2: the input could not be used.
enum Failure {
    Negative(String),
    Input(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<(), Failure>;

fn negative(msg: impl Into<String>) -> Failure {
    Failure::Negative(msg.into())
}

fn load_complex(path: &Path) -> anyhow::Result<CfkComplex> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    CfkComplex::from_text(&text).with_context(|| format!("{}", path.display()))
}

fn load_class(arg: &str) -> anyhow::Result<ClassRep> {
    let rep = match arg.strip_prefix('@') {
        Some(path) => ClassRep::from_complex(path, &load_complex(Path::new(path))?)?,
        None => ClassRep::parse(arg)?,
    };
    for w in rep.warnings() {
        eprintln!("warning: {w}");
    }
    Ok(rep)
}

fn invariants_of(rep: &ClassRep) -> anyhow::Result<Invariants> {
    rep.invariants()
        .map_err(|e| anyhow!("{}: {e}", rep.label()))
}

fn write_output(path: &Path, contents: &str) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn cmd_invariants(knot: &str, json: bool) -> Outcome {
    let rep = load_class(knot)?;
    let inv = invariants_of(&rep)?;
    let c = rep.complex();
    let a_note = (inv.epsilon != 1).then(|| format!("n/a (epsilon = {})", inv.epsilon));
    let show = |v: Option<i64>| match (&a_note, v) {
        (Some(note), _) => note.clone(),
        (None, Some(v)) => v.to_string(),
        (None, None) => "undefined".to_string(),
    };
    if json {
        let table: Vec<_> = hfk_table(c)
            .into_iter()
            .map(|((a, m), n)| json!({"alexander": a, "maslov": m, "rank": n}))
            .collect();
        let out = json!({
            "knot": rep.label(),
            "generators": c.len(),
            "max_alexander": c.max_alexander(),
            "tau": inv.tau,
            "epsilon": inv.epsilon,
            "a1": inv.a1,
            "a2": inv.a2,
            "hfk": table,
            "warnings": rep.warnings(),
        });
        println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    } else {
        println!("knot: {}", rep.label());
        println!("generators: {}", c.len());
        println!("max A: {}", c.max_alexander().unwrap_or(0));
        println!("tau: {}", inv.tau);
        println!("epsilon: {}", inv.epsilon);
        println!("a1: {}", show(inv.a1));
        println!("a2: {}", show(inv.a2));
    }
    Ok(())
}

fn cmd_cmp(first: &str, second: &str) -> Outcome {
    let (a, b) = (load_class(first)?, load_class(second)?);
    let ord = class_cmp(&a, &b).map_err(|e| anyhow!("{e}"))?;
    let sym = match ord {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    };
    println!("{a} {sym} {b}");
    Ok(())
}

fn cmd_dominates(first: &str, second: &str, evidence: Option<u32>) -> Outcome {
    let (k, j) = (load_class(first)?, load_class(second)?);
    let proved = match dominates_by_invariants(&k, &j) {
        Ok(Dominance::Proved(rule)) => {
            println!("proved: {k} >> {j} ({rule})");
            true
        }
        Ok(Dominance::Unknown) => {
            println!("unknown: no sufficient condition shows {k} >> {j}");
            false
        }
        Err(e @ ConcordanceError::NotPositive { .. }) => return Err(negative(e.to_string())),
        Err(e) => return Err(Failure::Input(e.into())),
    };
    let mut refuted = false;
    if let Some(n) = evidence {
        match dominance_evidence(&k, &j, n).map_err(|e| anyhow!("{e}"))? {
            Evidence::ConsistentUpTo(n) => {
                println!("evidence: epsilon({k} - n({j})) = 1 for n = 1..{n}")
            }
            Evidence::Refuted(0) => {
                println!("evidence: refuted, {j} is not positive");
                refuted = true;
            }
            Evidence::Refuted(n) => {
                println!("evidence: refuted at n = {n}");
                refuted = true;
            }
        }
    }
    if proved && !refuted {
        Ok(())
    } else {
        Err(negative(String::new()))
    }
}

fn cmd_independence(knots: &[String], out: Option<&Path>, json: bool) -> Outcome {
    let family = knots
        .iter()
        .map(|k| load_class(k))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let cert = match independence_certificate(&family) {
        Ok(cert) => cert,
        Err(e @ (ConcordanceError::NotAChain { .. } | ConcordanceError::NotPositive { .. })) => {
            return Err(negative(e.to_string()))
        }
        Err(e) => return Err(Failure::Input(e.into())),
    };
    let text = cert.to_json();
    if let Some(path) = out {
        write_output(path, &format!("{text}\n"))?;
    }
    if json {
        println!("{text}");
    } else {
        print!("{cert}");
    }
    Ok(())
}

fn load_certificate(path: &Path) -> anyhow::Result<Certificate> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Certificate::from_json(&text)
        .with_context(|| format!("{} is not a certificate", path.display()))
}

fn recheck(path: &Path) -> Outcome {
    let report = load_certificate(path)?.recheck();
    if report.ok() {
        println!("recheck: ok");
        Ok(())
    } else {
        for m in &report.mismatches {
            println!("mismatch: {m}");
        }
        Err(negative("recheck failed"))
    }
}

fn cmd_alexander(knot: &str) -> Outcome {
    let e = parse(knot).map_err(|e| anyhow!("{e}"))?;
    let poly = alexander(&e).map_err(|e| anyhow!("{e}"))?;
    println!("{poly}");
    if let Ok(exps) = staircase_exponents(&poly) {
        let list: Vec<String> = exps.as_slice().iter().map(ToString::to_string).collect();
        println!("staircase exponents: {}", list.join(" "));
    }
    Ok(())
}

fn cmd_show(knot: &str, format: Format, out: Option<&Path>) -> Outcome {
    let rep = load_class(knot)?;
    let text = match format {
        Format::Ascii => render_ascii(&layout(rep.complex())),
        Format::Svg => render_svg(&layout(rep.complex())),
        Format::Cfk => rep.complex().to_text(),
    };
    match out {
        Some(path) => write_output(path, &text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_validate(file: &Path, knot: bool, whitehead: bool, json: bool) -> Outcome {
    let text =
        fs::read_to_string(file).with_context(|| format!("cannot read {}", file.display()))?;
    if text.trim_start().starts_with('{') {
        return recheck(file);
    }
    let c = CfkComplex::from_text(&text).with_context(|| format!("{}", file.display()))?;
    let report = validate(&c, knot || whitehead);
    let model = whitehead.then(|| check_whitehead_model(&c));
    if json {
        let out = json!({ "validation": report, "whitehead_model": model });
        println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    } else {
        print!("{report}");
        if let Some(m) = &model {
            print!("{m}");
        }
    }
    if report.is_valid() && model.as_ref().is_none_or(|m| m.passes()) {
        Ok(())
    } else {
        Err(negative(String::new()))
    }
}

fn cmd_tau_cable(p: i64, q: i64, tau: i64, epsilon: i8) -> Outcome {
    let t = cable_tau(tau, epsilon, p, q).map_err(|e| anyhow!("{e}"))?;
    println!("{t}");
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Invariants { knot, json } => cmd_invariants(&knot, json),
        Command::Cmp { first, second } => cmd_cmp(&first, &second),
        Command::Dominates {
            first,
            second,
            evidence,
        } => cmd_dominates(&first, &second, evidence),
        Command::Independence {
            knots,
            out,
            json,
            recheck: check,
        } => match check {
            Some(path) => recheck(&path),
            None => cmd_independence(&knots, out.as_deref(), json),
        },
        Command::Alexander { knot } => cmd_alexander(&knot),
        Command::Show { knot, format, out } => cmd_show(&knot, format, out.as_deref()),
        Command::Validate {
            file,
            knot,
            whitehead_model,
            json,
        } => cmd_validate(&file, knot, whitehead_model, json),
        Command::TauCable { p, q, tau, epsilon } => cmd_tau_cable(p, q, tau, epsilon),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative(msg)) => {
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
