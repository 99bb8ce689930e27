//! `cvect`: command-line access to the cvect(0|3) toolkit.
//!
//! Exit codes: 0 success, 1 an identity was falsified, 2 usage or domain error.

use std::collections::HashMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cvect_core::buttin::buttin_bracket;
use cvect_core::exceptional::{
    alpha_field, bracket_pair, decompose, i1_field, i2_field, membership, mixed_bracket, named_fields, phi_auto,
    realize, regrade, Equation, Variant,
};
use cvect_core::prolong::{prolong_to, ProlongationInput};
use cvect_core::text::{
    field_record, format_field, format_pair, format_poly, pair_record, parse_field, parse_pair, parse_poly, poly_record,
};
use cvect_core::verify::{cell_matches, selftest};
use cvect_core::{Chart, Error, SuperField, SuperPolynomial};

#[derive(Parser)]
#[command(name = "cvect", version, about = "Exact computation in cvect(0|3) inside vect(4|3)")]
struct Cli {
    /// Emit one JSON record per result line.
    #[arg(long, global = true)]
    json: bool,

    /// Read inputs from a file, one expression per line. Two-operand commands
    /// take `left ; right` on each line.
    #[arg(long, global = true, value_name = "PATH")]
    file: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bracket of two pairs `(f, g)` or of two fields on `(u1,u2,u3,y|x1,x2,x3)`.
    Bracket {
        #[arg(long, allow_hyphen_values = true)]
        left: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        right: Option<String>,
    },
    /// Buttin bracket of two generating functions.
    Buttin {
        #[arg(long, allow_hyphen_values = true)]
        left: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        right: Option<String>,
    },
    /// The field i1(h).
    I1 {
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
    },
    /// The field i2(f).
    I2 {
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
    },
    /// The field alpha_g.
    Alpha {
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
    },
    /// The field realizing a pair.
    Realize {
        #[arg(long, allow_hyphen_values = true)]
        pair: Option<String>,
    },
    /// The canonical pair of a field of cvect(0|3).
    Decompose {
        #[arg(long, allow_hyphen_values = true)]
        field: Option<String>,
    },
    /// Pass/fail of each defining equation E1..E7.
    Membership {
        #[arg(long, allow_hyphen_values = true)]
        field: Option<String>,
        /// `vect` checks the full system, `cvect` drops the trace condition.
        #[arg(long, value_enum, default_value_t = VariantArg::Vect)]
        variant: VariantArg,
    },
    /// The regrading R of a generating function.
    Regrade {
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
    },
    /// The automorphism phi on a pair.
    Phi {
        #[arg(long, allow_hyphen_values = true)]
        pair: Option<String>,
    },
    /// Per-degree dimensions of a Cartan prolongation.
    Prolong {
        /// One of vect03, cvect03, vect1, odd1.
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 1)]
        max_degree: i64,
    },
    /// The mixed bracket [i2 f, i1 h] from the tables, checked against the commutator.
    Table {
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        h: Option<String>,
    },
    /// Divergence of a field.
    Div {
        #[arg(long, allow_hyphen_values = true)]
        field: Option<String>,
    },
    /// Runs the full identity suite.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Vect,
    Cvect,
}

/// One printable result.
struct Line {
    text: String,
    record: Value,
}

struct Outcome {
    lines: Vec<Line>,
    falsified: bool,
}

impl Outcome {
    fn one(text: String, record: Value) -> Self {
        Outcome { lines: vec![Line { text, record }], falsified: false }
    }
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Run = std::result::Result<Outcome, Failure>;

struct Env {
    fields: HashMap<String, SuperField>,
}

impl Env {
    fn poly(&self, s: &str) -> Result<SuperPolynomial, Error> {
        parse_poly(s, &Chart::periplectic())
    }

    fn field(&self, s: &str) -> Result<SuperField, Error> {
        parse_field(s, &Chart::standard(), &self.fields)
    }
}

fn poly_line(p: &SuperPolynomial) -> Outcome {
    Outcome::one(format_poly(p), poly_record(p))
}

fn field_line(d: &SuperField) -> Outcome {
    Outcome::one(format_field(d), field_record(d))
}

fn pair_line(p: &cvect_core::exceptional::GluedPair) -> Outcome {
    Outcome::one(format_pair(p), pair_record(p))
}

fn looks_like_pair(s: &str) -> bool {
    let t = s.trim();
    if !(t.starts_with('(') && t.ends_with(')')) {
        return false;
    }
    let mut depth = 0;
    for c in t[1..t.len() - 1].chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return true,
            _ => {}
        }
    }
    false
}

fn single(env: &Env, cmd: &Command, x: &str) -> Run {
    match cmd {
        Command::I1 { .. } => Ok(field_line(&i1_field(&env.poly(x)?)?)),
        Command::I2 { .. } => Ok(field_line(&i2_field(&env.poly(x)?)?)),
        Command::Alpha { .. } => Ok(field_line(&alpha_field(&env.poly(x)?)?)),
        Command::Regrade { .. } => Ok(poly_line(&regrade(&env.poly(x)?)?)),
        Command::Realize { .. } => Ok(field_line(&realize(&parse_pair(x)?)?)),
        Command::Phi { .. } => Ok(pair_line(&phi_auto(&parse_pair(x)?)?)),
        Command::Decompose { .. } => Ok(pair_line(&decompose(&env.field(x)?)?)),
        Command::Div { .. } => Ok(poly_line(&env.field(x)?.div()?)),
        Command::Membership { variant, .. } => {
            let v = match variant {
                VariantArg::Vect => Variant::Vect,
                VariantArg::Cvect => Variant::Cvect,
            };
            let report = membership(&env.field(x)?, v)?;
            let failed = report.violated();
            let mut lines = Vec::new();
            for e in Equation::ALL {
                let pass = !failed.contains(&e);
                let text = format!("{e}: {}", if pass { "pass" } else { "fail" });
                let record = json!({ "equation": format!("E{}", e.number()), "label": e.label(), "pass": pass });
                lines.push(Line { text, record });
            }
            lines.push(Line {
                text: format!("member: {}", if report.is_member() { "yes" } else { "no" }),
                record: json!({ "member": report.is_member(), "parity": report.parity.to_string() }),
            });
            Ok(Outcome { lines, falsified: false })
        }
        _ => unreachable!("not a one-operand command"),
    }
}

fn double(env: &Env, cmd: &Command, a: &str, b: &str) -> Run {
    match cmd {
        Command::Bracket { .. } => {
            if looks_like_pair(a) && looks_like_pair(b) {
                Ok(pair_line(&bracket_pair(&parse_pair(a)?, &parse_pair(b)?)?))
            } else {
                Ok(field_line(&env.field(a)?.commutator(&env.field(b)?)?))
            }
        }
        Command::Buttin { .. } => Ok(poly_line(&buttin_bracket(&env.poly(a)?, &env.poly(b)?)?)),
        Command::Table { .. } => {
            let (f, h) = (env.poly(a)?, env.poly(b)?);
            let pair = mixed_bracket(&f, &h)?;
            let ok = cell_matches(&f, &h)?;
            let text = format!("{}  oracle: {}", format_pair(&pair), if ok { "match" } else { "MISMATCH" });
            let mut record = pair_record(&pair);
            record["oracle_match"] = json!(ok);
            Ok(Outcome { lines: vec![Line { text, record }], falsified: !ok })
        }
        _ => unreachable!("not a two-operand command"),
    }
}

fn need(x: &Option<String>, flag: &str) -> std::result::Result<String, Failure> {
    x.clone().ok_or_else(|| Failure::Usage(format!("missing --{flag} (or --file)")))
}

fn file_lines(path: &std::path::Path) -> std::result::Result<Vec<String>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(text.lines().map(str::trim).filter(|l| !l.is_empty()).map(String::from).collect())
}

fn split_line(line: &str) -> std::result::Result<(String, String), Failure> {
    line.split_once(';')
        .map(|(a, b)| (a.trim().to_string(), b.trim().to_string()))
        .ok_or_else(|| Failure::Usage(format!("expected `left ; right` in line `{line}`")))
}

fn operand(cmd: &Command) -> Option<(&Option<String>, &'static str)> {
    match cmd {
        Command::I1 { poly } | Command::I2 { poly } | Command::Alpha { poly } | Command::Regrade { poly } => {
            Some((poly, "poly"))
        }
        Command::Realize { pair } | Command::Phi { pair } => Some((pair, "pair")),
        Command::Decompose { field } | Command::Div { field } | Command::Membership { field, .. } => Some((field, "field")),
        _ => None,
    }
}

fn operands(cmd: &Command) -> Option<(&Option<String>, &Option<String>, [&'static str; 2])> {
    match cmd {
        Command::Bracket { left, right } | Command::Buttin { left, right } => Some((left, right, ["left", "right"])),
        Command::Table { f, h } => Some((f, h, ["f", "h"])),
        _ => None,
    }
}

fn prolong(name: &str, max_degree: i64) -> Run {
    let input = ProlongationInput::by_name(name)
        .ok_or_else(|| Failure::Usage(format!("unknown input `{name}`; expected one of {}", ProlongationInput::NAMES.join(", "))))?;
    let comps = prolong_to(&input, max_degree)?;
    let mut lines = vec![Line { text: "degree  dim".into(), record: json!({ "input": name, "max_degree": max_degree }) }];
    for c in &comps {
        lines.push(Line {
            text: format!("{:>6}  {c}", c.degree),
            record: json!({ "degree": c.degree, "even": c.dims.0, "odd": c.dims.1 }),
        });
    }
    Ok(Outcome { lines, falsified: false })
}

fn run(cli: &Cli) -> Vec<Run> {
    let env = Env { fields: named_fields() };
    let cmd = &cli.command;
    match cmd {
        Command::Prolong { input, max_degree } => return vec![prolong(input, *max_degree)],
        Command::Selftest => {
            let outcomes = selftest();
            let falsified = outcomes.iter().any(|o| !o.passed);
            let lines = outcomes
                .iter()
                .map(|o| Line { text: o.to_string(), record: json!({ "check": o.name, "passed": o.passed, "detail": o.detail }) })
                .collect();
            return vec![Ok(Outcome { lines, falsified })];
        }
        _ => {}
    }
    if let Some((x, flag)) = operand(cmd) {
        let inputs = match &cli.file {
            Some(path) => match file_lines(path) {
                Ok(l) => l,
                Err(e) => return vec![Err(e)],
            },
            None => match need(x, flag) {
                Ok(s) => vec![s],
                Err(e) => return vec![Err(e)],
            },
        };
        return inputs.iter().map(|s| single(&env, cmd, s)).collect();
    }
    if let Some((a, b, [fa, fb])) = operands(cmd) {
        let inputs = match &cli.file {
            Some(path) => match file_lines(path).and_then(|ls| ls.iter().map(|l| split_line(l)).collect()) {
                Ok(l) => l,
                Err(e) => return vec![Err(e)],
            },
            None => match need(a, fa).and_then(|a| need(b, fb).map(|b| (a, b))) {
                Ok(p) => vec![p],
                Err(e) => return vec![Err(e)],
            },
        };
        return inputs.iter().map(|(a, b)| double(&env, cmd, a, b)).collect();
    }
    unreachable!("every command is dispatched")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut code = 0u8;
    for result in run(&cli) {
        match result {
            Ok(out) => {
                for line in &out.lines {
                    if cli.json {
                        println!("{}", line.record);
                    } else {
                        println!("{}", line.text);
                    }
                }
                if out.falsified {
                    code = code.max(1);
                }
            }
            Err(Failure::Usage(msg)) => {
                eprintln!("error: {msg}");
                eprintln!("run `cvect --help` for usage");
                code = 2;
            }
            Err(Failure::Domain(e)) => {
                if cli.json {
                    println!("{}", json!({ "error": e.to_string() }));
                }
                eprintln!("error: {e}");
                code = 2;
            }
        }
    }
    ExitCode::from(code)
}
