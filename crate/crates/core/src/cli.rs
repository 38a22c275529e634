//! Command-line front end.
//!
//! Exit codes: 0 success or true, 1 predicate false (or failed property
//! suite), 2 parse or argument error, 3 resource limit, 4 internal
//! assertion failure.

use std::panic::{catch_unwind, AssertUnwindSafe};

use clap::{Args, Parser, Subcommand};

use crate::budget::{with_state_budget, DEFAULT_MAX_STATES};
use crate::closed::{cb_rank, derivative, perfect_kernel, ClosedSet};
use crate::delta02::{as_closed, closure, equals, eq_mod_countable, is_countable, Delta02Set};
use crate::error::{Error, Result};
use crate::expr::evaluate;
use crate::hierarchy::decompose;
use crate::oracle::{run_suite, Suite};
use crate::point::UpPoint;
use crate::selector::phi_report;

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "d02sel", version, about = "Regular Δ⁰₂ subsets of Cantor space modulo countable sets")]
struct Cli {
    /// Cap on the number of states of any product construction.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STATES)]
    max_states: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Expr {
    /// Set expression (or script of `let` bindings and an expression).
    #[arg(short = 'e', long = "expr")]
    expr: String,
}

#[derive(Args, Debug)]
struct Format {
    #[arg(long, conflicts_with = "dot")]
    json: bool,
    #[arg(long)]
    dot: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the normalized set.
    Eval {
        #[command(flatten)]
        expr: Expr,
        #[command(flatten)]
        format: Format,
    },
    /// Print the difference chain and its rank.
    Decompose {
        #[command(flatten)]
        expr: Expr,
        #[arg(long)]
        json: bool,
    },
    /// Print the selected representative of the set's class.
    Select {
        #[command(flatten)]
        expr: Expr,
        /// Print the chain, the kernels and the selected set as JSON.
        #[arg(long, conflicts_with_all = ["json", "dot"])]
        report: bool,
        #[command(flatten)]
        format: Format,
    },
    /// Compare two sets, exactly or modulo countable sets.
    Equiv {
        #[command(flatten)]
        expr: Expr,
        #[arg(short = 'f', long = "other")]
        other: String,
        #[arg(long)]
        mod_countable: bool,
    },
    /// Decide whether the set is countable.
    Countable {
        #[command(flatten)]
        expr: Expr,
    },
    /// Decide whether the point STEM·CYCLE^ω belongs to the set.
    Member {
        #[command(flatten)]
        expr: Expr,
        #[arg(short = 'u', long = "stem", allow_hyphen_values = true)]
        stem: String,
        #[arg(short = 'v', long = "cycle")]
        cycle: String,
    },
    /// Print the topological closure.
    Closure {
        #[command(flatten)]
        expr: Expr,
        #[command(flatten)]
        format: Format,
    },
    /// Print the perfect kernel of a closed set.
    Kernel {
        #[command(flatten)]
        expr: Expr,
        #[command(flatten)]
        format: Format,
    },
    /// Print the Cantor–Bendixson derivative of a closed set.
    Derivative {
        #[command(flatten)]
        expr: Expr,
        #[command(flatten)]
        format: Format,
    },
    /// Print the Cantor–Bendixson rank of a closed set.
    Rank {
        #[command(flatten)]
        expr: Expr,
    },
    /// Run a property suite.
    Check {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn closed_output(c: &ClosedSet, format: &Format) -> Result<String> {
    Ok(if format.json {
        serde_json::to_string(c)? + "\n"
    } else if format.dot {
        c.to_dot()
    } else {
        format!("{c}\n")
    })
}

fn set_output(s: &Delta02Set, format: &Format) -> Result<String> {
    Ok(if format.json {
        serde_json::to_string(s)? + "\n"
    } else if format.dot {
        s.to_dot()
    } else {
        format!("{s}\n")
    })
}

fn closed_operand(text: &str) -> Result<ClosedSet> {
    as_closed(&evaluate(text)?)?
        .ok_or_else(|| Error::Argument("the expression does not denote a closed set".into()))
}

fn verdict(value: bool) -> (i32, String) {
    (if value { EXIT_TRUE } else { EXIT_FALSE }, format!("{value}\n"))
}

fn execute(command: Command) -> Result<(i32, String)> {
    let ok = |s: String| Ok((EXIT_TRUE, s));
    match command {
        Command::Eval { expr, format } => ok(set_output(&evaluate(&expr.expr)?, &format)?),
        Command::Decompose { expr, json } => {
            let chain = decompose(&evaluate(&expr.expr)?)?;
            ok(if json { serde_json::to_string(&chain)? + "\n" } else { format!("{chain}\n") })
        }
        Command::Select { expr, report, format } => {
            let r = phi_report(&evaluate(&expr.expr)?)?;
            if report {
                ok(serde_json::to_string(&r)? + "\n")
            } else {
                ok(set_output(&r.selected, &format)?)
            }
        }
        Command::Equiv { expr, other, mod_countable } => {
            let (a, b) = (evaluate(&expr.expr)?, evaluate(&other)?);
            Ok(verdict(if mod_countable { eq_mod_countable(&a, &b)? } else { equals(&a, &b)? }))
        }
        Command::Countable { expr } => Ok(verdict(is_countable(&evaluate(&expr.expr)?)?)),
        Command::Member { expr, stem, cycle } => {
            let p = UpPoint::parse(&stem, &cycle)?;
            Ok(verdict(evaluate(&expr.expr)?.contains(&p)))
        }
        Command::Closure { expr, format } => ok(closed_output(&closure(&evaluate(&expr.expr)?)?, &format)?),
        Command::Kernel { expr, format } => ok(closed_output(&perfect_kernel(&closed_operand(&expr.expr)?), &format)?),
        Command::Derivative { expr, format } => ok(closed_output(&derivative(&closed_operand(&expr.expr)?), &format)?),
        Command::Rank { expr } => ok(format!("{}\n", cb_rank(&closed_operand(&expr.expr)?))),
        Command::Check { suite, cases, seed } => {
            let suite: Suite = suite.parse()?;
            let report = run_suite(suite, cases, seed);
            let code = if report.ok() { EXIT_TRUE } else { EXIT_FALSE };
            Ok((code, serde_json::to_string(&report)? + "\n"))
        }
    }
}

/// Runs the CLI on `args` (including the program name) and captures its
/// output instead of printing it.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_TRUE, stdout: text, stderr: String::new() }
            };
        }
    };
    let max_states = cli.max_states;
    let result = catch_unwind(AssertUnwindSafe(|| with_state_budget(max_states, || execute(cli.command))));
    match result {
        Ok(Ok((code, stdout))) => Outcome { code, stdout, stderr: String::new() },
        Ok(Err(e)) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
        Err(panic) => {
            let message = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Outcome {
                code: EXIT_INTERNAL,
                stdout: String::new(),
                stderr: format!("internal assertion failure: {message}\n"),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Outcome {
        run(std::iter::once("d02sel").chain(args.iter().copied()))
    }

    #[test]
    fn predicates_map_to_exit_codes() {
        assert_eq!(cli(&["equiv", "-e", "full", "-f", "full \\ pt(0,0)", "--mod-countable"]).code, 0);
        assert_eq!(cli(&["equiv", "-e", "full", "-f", "full \\ pt(0,0)"]).code, 1);
        assert_eq!(cli(&["countable", "-e", "nofactor(11)"]).code, 1);
        assert_eq!(cli(&["member", "-e", "cyl(0)", "-u", "e", "-v", "0"]).code, 0);
        assert_eq!(cli(&["member", "-e", "cyl(0)", "-u", "", "-v", "1"]).code, 1);
    }

    #[test]
    fn errors_map_to_exit_codes() {
        assert_eq!(cli(&["eval", "-e", "pt(,0)"]).code, 2);
        assert_eq!(cli(&["eval"]).code, 2);
        assert_eq!(cli(&["kernel", "-e", "full \\ pt(0,0)"]).code, 2);
        assert_eq!(cli(&["check", "--suite", "nope"]).code, 2);
        let out = cli(&["--max-states", "2", "closure", "-e", "pt(e,0001) | pt(e,00001)"]);
        assert_eq!(out.code, 3, "{out:?}");
        assert!(out.stderr.contains("resource limit"));
    }

    #[test]
    fn closed_set_commands() {
        assert_eq!(cli(&["rank", "-e", "tree(0*|0*10*)"]).stdout, "2\n");
        assert_eq!(cli(&["derivative", "-e", "tree(0*|0*10*)"]).stdout, "states 1, initial 0\n  0 -0-> 0\n");
        assert_eq!(cli(&["kernel", "-e", "cyl(0) | pt(1,1)", "--json"]).stdout,
            "{\"states\":2,\"initial\":0,\"edges\":[[0,0,1],[1,0,1],[1,1,1]]}\n");
    }

    #[test]
    fn check_runs_a_suite() {
        let out = cli(&["check", "--suite", "algebra", "--cases", "3", "--seed", "9"]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, "{\"suite\":\"algebra\",\"cases\":3,\"passed\":3,\"failed\":0,\"counterexample\":null}\n");
    }
}
