//! Command-line front end over the manifest language.
//!
//! Exit codes: 0 all checks passed, 1 at least one check failed, 2 bad
//! input (file, parse, resolution or type errors), 3 at least one equality
//! was inconclusive within the configured bounds.

use clap::{Parser, Subcommand};
use dblcat::dsl::{self, Command, RenderFormat, RunOpts};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "dblcat",
    version,
    about = "Symbolic engine for strict double categories",
    after_help = "Exit codes: 0 = all checks passed, 1 = check failures, \
                  2 = input errors, 3 = inconclusive equalities.\n\
                  MAX_REWRITE and MAX_LEN environment variables override the \
                  built-in defaults; the flags override both."
)]
struct Cli {
    /// Manifest file with category/functor/check declarations
    manifest: PathBuf,

    /// Category to interpret expressions in (defaults to the sole category)
    #[arg(long = "in", global = true, value_name = "NAME")]
    in_cat: Option<String>,

    /// Rewrite-step budget for free categories
    #[arg(long, global = true, value_name = "N")]
    max_rewrite: Option<usize>,

    /// Path-length bound for enumerations
    #[arg(long, global = true, value_name = "N")]
    max_len: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run all validations registered for one declaration
    Check { name: String },
    /// Rewrite an expression to its normal form
    Normalize { expr: String },
    /// Decide equality of two expressions
    Eq { e1: String, e2: String },
    /// Tensor two declared categories and verify its defining relations
    Tensor {
        a: String,
        b: String,
        /// Print the resulting presentation as a manifest declaration
        #[arg(long)]
        emit: bool,
    },
    /// Compose declared structures; supported kind: functor
    Compose { kind: String, names: Vec<String> },
    /// Check the constraint cells of a built-in tricategory instance
    VerifyTricat { instance: String },
    /// Render an expression's boundary and cells
    Render {
        expr: String,
        /// Output format: ascii or dot
        #[arg(long, default_value = "ascii")]
        format: String,
    },
}

fn env_usize(name: &str) -> Option<usize> {
    std::env::var(name).ok().and_then(|v| v.parse().ok())
}

fn main() {
    let cli = Cli::parse();
    let opts = RunOpts {
        max_rewrite: cli.max_rewrite.or_else(|| env_usize("MAX_REWRITE")),
        max_len: cli.max_len.or_else(|| env_usize("MAX_LEN")),
        in_cat: cli.in_cat,
    };
    let text = match std::fs::read_to_string(&cli.manifest) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("ERROR: cannot read {}: {}", cli.manifest.display(), e);
            std::process::exit(2);
        }
    };
    let man = match dsl::parse(&text) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("ERROR: {}", e);
            std::process::exit(2);
        }
    };
    let cmd = match cli.cmd {
        Cmd::Check { name } => Command::Check { name },
        Cmd::Normalize { expr } => Command::Normalize { expr },
        Cmd::Eq { e1, e2 } => Command::Eq { e1, e2 },
        Cmd::Tensor { a, b, emit } => Command::Tensor { a, b, emit },
        Cmd::Compose { kind, names } => Command::Compose { kind, names },
        Cmd::VerifyTricat { instance } => Command::VerifyTricat { instance },
        Cmd::Render { expr, format } => {
            let format = match format.as_str() {
                "ascii" => RenderFormat::Ascii,
                "dot" => RenderFormat::Dot,
                other => {
                    eprintln!("ERROR: unknown render format `{}` (use ascii or dot)", other);
                    std::process::exit(2);
                }
            };
            Command::Render { expr, format }
        }
    };
    let outcome = dsl::run(&man, &cmd, &opts);
    print!("{}", outcome.output);
    std::process::exit(outcome.code);
}
