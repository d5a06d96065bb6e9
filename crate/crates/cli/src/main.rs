//! `thompson`: command-line access to elements of F and its groupoid.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thompson_core::annular::{are_conjugate, AnnularStrandDiagram};
use thompson_core::dyadic::fmt_q;
use thompson_core::mather::{mather_equivalent, mather_invariant};
use thompson_core::orbits::{in_same_orbit, multipoint_transporter};
use thompson_core::parse::{parse_diagram, parse_element, parse_point};
use thompson_core::plmap::{FixedInterval, PLMap};
use thompson_core::strand::StrandDiagram;
use thompson_core::{random, Error};

#[derive(Parser)]
#[command(name = "thompson", version, about = "Exact computations in Thompson's group F")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for generator commands; a fresh one is drawn and printed if absent.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

/// Elements are words (`x0 x1^-1`), tree pairs (`(*(**)) | ((**)*)`) or
/// map JSON; `-` reads the element from stdin.
#[derive(Subcommand)]
enum Command {
    /// Reduced strand diagram of an element.
    Reduce { elem: String },
    /// The product: first `a`, then `b`.
    Mul { a: String, b: String },
    /// The inverse element.
    Inv { elem: String },
    /// Conjugacy verdict with the closure keys.
    Conj { a: String, b: String },
    /// Fixed intervals, analytic and read from the loops.
    Fixed { elem: String },
    /// Mather invariant of a one-bump element.
    Mather { elem: String },
    /// Whether two Mather invariants agree up to rotation.
    MatherEq { a: String, b: String },
    /// Whether two points (`.10(01)` or `p/q`) lie in one orbit.
    Orbit { t: String, u: String },
    /// An element carrying each point before `--` to the one after it.
    Transport {
        from: Vec<String>,
        #[arg(last = true)]
        to: Vec<String>,
    },
    /// Graphviz text for the square or annular diagram.
    Render {
        elem: String,
        #[arg(long)]
        annular: bool,
        /// Accepted for symmetry with `--format dot`; output is always DOT.
        #[arg(long)]
        dot: bool,
    },
    /// A random word of length at most `length`.
    Random {
        #[arg(long, default_value_t = 6)]
        length: usize,
    },
}

enum Failure {
    Domain(String),
    Parse(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse() {
            Failure::Parse(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

type Outcome = Result<String, Failure>;

fn read_arg(s: &str) -> Result<String, Failure> {
    if s != "-" {
        return Ok(s.to_string());
    }
    let mut buf = String::new();
    std::io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| Failure::Domain(format!("reading stdin: {e}")))?;
    Ok(buf)
}

fn element(s: &str) -> Result<PLMap, Failure> {
    Ok(parse_element(&read_arg(s)?)?)
}

/// Square elements of F print as tree pairs so the output parses back.
fn show_element(f: &PLMap, format: Format) -> Outcome {
    Ok(match format {
        Format::Json => pretty(&f.to_json()?),
        Format::Dot => StrandDiagram::from_pl_map(f)?.to_dot(),
        Format::Text => match StrandDiagram::tree_pair(f) {
            Ok((d, r)) => format!("{d} | {r}\n"),
            Err(_) => format!("{f}\n"),
        },
    })
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn verdict(name: &str, yes: bool, no: &str, format: Format, extra: serde_json::Value) -> String {
    let word = if yes { name } else { no };
    match format {
        Format::Json => {
            let mut v = json!({ "verdict": word });
            if let (Some(o), serde_json::Value::Object(e)) = (v.as_object_mut(), extra) {
                o.extend(e);
            }
            pretty(&v)
        }
        _ => {
            let mut s = format!("{word}\n");
            if let serde_json::Value::Object(e) = extra {
                for (k, v) in e {
                    let v = v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string());
                    s.push_str(&format!("{k}: {v}\n"));
                }
            }
            s
        }
    }
}

fn fixed(f: &PLMap, format: Format) -> Outcome {
    let analytic = f.fixed_intervals()?;
    let closure = AnnularStrandDiagram::of_element(f)?;
    let (from_loops, mismatch) = match closure.fixed_intervals_from_loops(f) {
        Ok(l) => {
            let same = l == analytic;
            (Some(l), (!same).then(|| "slopes read from loops differ".to_string()))
        }
        Err(e) => (None, Some(e.to_string())),
    };
    let entry = |fi: &FixedInterval| match fi {
        FixedInterval::CantorPoint(c) => json!({
            "kind": if c.is_attracting() { "attracting" } else { "repelling" },
            "point": fmt_q(&c.value()),
            "expansion": format!("{} + {}", c.offset, c.location),
            "slope": format!("2^{}", c.slope_exp),
            "tail": c.tail().to_string(),
        }),
        FixedInterval::Pointwise { start, end } => json!({
            "kind": "interval",
            "start": fmt_q(start),
            "end": fmt_q(end),
        }),
    };
    if format == Format::Json {
        return Ok(pretty(&json!({
            "analytic": analytic.iter().map(entry).collect::<Vec<_>>(),
            "loops": from_loops.as_ref().map(|l| l.iter().map(entry).collect::<Vec<_>>()),
            "agree": mismatch.is_none(),
            "disagreement": mismatch,
        })));
    }
    let mut s = String::new();
    for fi in &analytic {
        s.push_str(&format!("{fi}\n"));
    }
    match mismatch {
        None => s.push_str("loops agree\n"),
        Some(m) => s.push_str(&format!("DISAGREE: {m}\n")),
    }
    Ok(s)
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    match cli.command {
        Command::Reduce { elem } => {
            let d = parse_diagram(&read_arg(&elem)?)?.reduce();
            Ok(match format {
                Format::Dot => d.to_dot(),
                Format::Json => pretty(&json!({
                    "sources": d.source_count(),
                    "sinks": d.sink_count(),
                    "splits": d.split_count(),
                    "merges": d.merge_count(),
                    "element": d.to_pl_map()?.to_json()?,
                })),
                Format::Text => d.to_text(),
            })
        }
        Command::Mul { a, b } => {
            let f = element(&a)?.compose(&element(&b)?)?;
            show_element(&f, format)
        }
        Command::Inv { elem } => show_element(&element(&elem)?.invert(), format),
        Command::Conj { a, b } => {
            let (f, g) = (element(&a)?, element(&b)?);
            let kf = AnnularStrandDiagram::of_element(&f)?.canonical_key_hex()?;
            let kg = AnnularStrandDiagram::of_element(&g)?.canonical_key_hex()?;
            let yes = are_conjugate(&f, &g)?;
            Ok(verdict("conjugate", yes, "not-conjugate", format, json!({ "key_a": kf, "key_b": kg })))
        }
        Command::Fixed { elem } => fixed(&element(&elem)?, format),
        Command::Mather { elem } => {
            let c = mather_invariant(&element(&elem)?)?;
            Ok(match format {
                Format::Text => format!("{c}\n"),
                _ => pretty(&c.to_json()?),
            })
        }
        Command::MatherEq { a, b } => {
            let c = mather_invariant(&element(&a)?)?;
            let d = mather_invariant(&element(&b)?)?;
            Ok(verdict("equivalent", mather_equivalent(&c, &d), "not-equivalent", format, json!({})))
        }
        Command::Orbit { t, u } => {
            let (t, u) = (parse_point(&t)?, parse_point(&u)?);
            let yes = in_same_orbit(&t, &u)?;
            Ok(verdict("same-orbit", yes, "different-orbits", format, json!({})))
        }
        Command::Transport { from, to } => {
            let ts = from.iter().map(|s| parse_point(s)).collect::<Result<Vec<_>, _>>()?;
            let us = to.iter().map(|s| parse_point(s)).collect::<Result<Vec<_>, _>>()?;
            let g = multipoint_transporter(&ts, &us)?;
            match format {
                Format::Text => show_element(&g, format),
                _ => Ok(pretty(&g.to_json()?)),
            }
        }
        Command::Render { elem, annular, dot: _ } => {
            let d = parse_diagram(&read_arg(&elem)?)?;
            if annular {
                Ok(AnnularStrandDiagram::close(&d)?.reduce().to_dot())
            } else {
                Ok(d.reduce().to_dot())
            }
        }
        Command::Random { length } => {
            let seed = cli.seed.unwrap_or_else(fresh_seed);
            eprintln!("seed {seed}");
            let mut rng = random::rng(seed);
            let w = random::word(&mut rng, length);
            Ok(match format {
                Format::Json => pretty(&json!({ "seed": seed, "word": w.to_string() })),
                _ => format!("{w}\n"),
            })
        }
    }
}

fn fresh_seed() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_nanos() as u64)
        .unwrap_or(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Parse(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
