use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hooksum_core::bijection::{unsort_chain, DecoratedTree};
use hooksum_core::identities::{theta_product, theta_sum, theta_with_root_hook};
use hooksum_core::json::{decorated_from_json, phi_to_json, poly_to_json, tree_to_json, JsonError};
use hooksum_core::matrixtree::{build_kirchhoff, principal_minor};
use hooksum_core::trees::{enumerate_cayley, enumerate_increasing};
use hooksum_core::{LabelSet, Polynomial};
use serde_json::{json, Value};

mod verify;

use verify::{Check, Params};

#[derive(Parser)]
#[command(
    name = "hooksum",
    version,
    about = "Hook-length tree polynomials: enumerate, evaluate, verify"
)]
struct Cli {
    /// Render polynomials as text (`x[i]`, `y[i,j]`) instead of term arrays.
    #[arg(long, global = true)]
    pretty: bool,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stream trees on a label set as JSON lines, or count them.
    Enumerate(EnumerateArgs),
    /// Print the generating polynomial of increasing trees.
    Theta {
        #[arg(long, value_parser = parse_labels)]
        labels: LabelSet,
        #[arg(long, value_enum, default_value_t = Form::Product)]
        form: Form,
    },
    /// Run an identity check and print a JSON report.
    Verify(VerifyArgs),
    /// Print every unsorting step from a decorated tree down to grade (i, 0).
    TraceUnsort {
        /// Tree JSON, inline or as a file path.
        #[arg(long)]
        tree: String,
        /// Inline phi JSON; defaults to the tree's own "phi" field, or empty.
        #[arg(long)]
        phi: Option<String>,
    },
    /// Dump the Kirchhoff matrix as an array of rows.
    Matrix {
        #[arg(long, value_parser = parse_labels)]
        labels: LabelSet,
        /// Drop the root's row and column.
        #[arg(long)]
        minor: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Cayley,
    Increasing,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Sum,
    Product,
    /// product formula times the root's hook sum
    Thm3,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(value_enum)]
    kind: Kind,
    #[arg(long, value_parser = parse_labels)]
    labels: LabelSet,
    /// Print only the number of trees.
    #[arg(long)]
    count: bool,
    /// Largest label set accepted without --force.
    #[arg(long, env = "HOOKSUM_MAX_SIZE", default_value_t = 7)]
    max_size: usize,
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    check: Check,
    #[arg(long, value_parser = parse_labels)]
    labels: Option<LabelSet>,
    /// Label of the subtree split off at the root (recursion; default: every one).
    #[arg(long)]
    a: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    u: Option<num_bigint::BigInt>,
    #[arg(long, allow_hyphen_values = true)]
    v: Option<num_bigint::BigInt>,
    /// Largest label set {1..k} used by `verify all`.
    #[arg(long, default_value_t = 5)]
    labels_max: u32,
}

fn parse_labels(s: &str) -> Result<LabelSet, String> {
    let labels = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("{t:?} is not a label"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    LabelSet::new(labels).map_err(|e| e.to_string())
}

/// Exit status plus a message for stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

pub(crate) fn render_poly(p: &Polynomial, pretty: bool) -> Value {
    if pretty {
        Value::String(p.pretty())
    } else {
        poly_to_json(p)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(f) => run(&cli, &mut BufWriter::new(f)),
            Err(e) => Err(Failure::usage(format!("{}: {e}", path.display()))),
        },
        None => run(&cli, &mut BufWriter::new(io::stdout().lock())),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("hooksum: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<u8, Failure> {
    let code = match &cli.command {
        Command::Enumerate(args) => enumerate(args, out)?,
        Command::Theta { labels, form } => {
            let p = match form {
                Form::Sum => theta_sum(labels),
                Form::Product => theta_product(labels),
                Form::Thm3 => theta_with_root_hook(labels),
            };
            match render_poly(&p, cli.pretty) {
                Value::String(s) => writeln!(out, "{s}")?,
                v => writeln!(out, "{v}")?,
            }
            0
        }
        Command::Verify(args) => {
            let params = Params {
                labels: args.labels.clone(),
                a: args.a,
                n: args.n,
                u: args.u.clone(),
                v: args.v.clone(),
                labels_max: args.labels_max,
            };
            let outcome = verify::run(args.check, &params, cli.pretty).map_err(Failure::usage)?;
            writeln!(out, "{}", outcome.report)?;
            outcome.code
        }
        Command::TraceUnsort { tree, phi } => trace_unsort(tree, phi.as_deref(), cli.pretty, out)?,
        Command::Matrix { labels, minor } => {
            let mut k = build_kirchhoff(labels).map_err(|e| Failure::usage(e.to_string()))?;
            if *minor {
                k = principal_minor(&k).map_err(|e| Failure::usage(e.to_string()))?;
            }
            let rows: Vec<Value> = k
                .rows()
                .map(|r| Value::Array(r.iter().map(|p| render_poly(p, cli.pretty)).collect()))
                .collect();
            writeln!(
                out,
                "{}",
                json!({"labels": labels.as_slice(), "matrix": rows})
            )?;
            0
        }
    };
    out.flush()?;
    Ok(code)
}

fn enumerate(args: &EnumerateArgs, out: &mut impl Write) -> Result<u8, Failure> {
    if args.labels.len() > args.max_size && !args.force {
        return Err(Failure::usage(format!(
            "{} labels exceeds --max-size {}; pass --force to enumerate anyway",
            args.labels.len(),
            args.max_size
        )));
    }
    let trees: Box<dyn Iterator<Item = _>> = match args.kind {
        Kind::Cayley => Box::new(enumerate_cayley(&args.labels)),
        Kind::Increasing => Box::new(enumerate_increasing(&args.labels)),
    };
    if args.count {
        writeln!(out, "{}", trees.count())?;
    } else {
        for t in trees {
            writeln!(out, "{}", tree_to_json(&t))?;
        }
    }
    Ok(0)
}

fn read_tree_arg(arg: &str) -> Result<Value, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_owned()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::usage(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::usage(format!("tree: {e}")))
}

fn trace_unsort(
    tree: &str,
    phi: Option<&str>,
    pretty: bool,
    out: &mut impl Write,
) -> Result<u8, Failure> {
    let tree = read_tree_arg(tree)?;
    let phi: Option<Value> = phi
        .map(serde_json::from_str)
        .transpose()
        .map_err(|e| Failure::usage(format!("phi: {e}")))?;
    let start: DecoratedTree = match decorated_from_json(&tree, phi.as_ref()) {
        Ok(d) => d,
        Err(JsonError::Bijection(e)) => {
            writeln!(
                out,
                "{}",
                json!({"valid": false, "condition": e.condition(), "error": e.to_string()})
            )?;
            out.flush()?;
            return Ok(1);
        }
        Err(JsonError::Tree(e)) => {
            writeln!(
                out,
                "{}",
                json!({"valid": false, "condition": null, "error": e.to_string()})
            )?;
            out.flush()?;
            return Ok(1);
        }
        Err(e) => return Err(Failure::usage(e.to_string())),
    };
    let chain = unsort_chain(&start).map_err(|e| Failure {
        code: 1,
        message: e.to_string(),
    })?;
    let steps: Vec<Value> = chain
        .iter()
        .enumerate()
        .map(|(k, d)| {
            json!({
                "step": k,
                "tree": tree_to_json(d.tree()),
                "phi": phi_to_json(d.phi()),
                "index": {"i": d.index().decreasing, "j": d.index().displaced},
                "weight": render_poly(&d.weight(), pretty),
            })
        })
        .collect();
    writeln!(out, "{}", Value::Array(steps))?;
    Ok(0)
}
