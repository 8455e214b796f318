//! Command-line front end. Every subcommand with two computation paths
//! prints both and exits with status 1 when they differ.

pub mod expr;
mod lex;
pub mod parse;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::bottcases::{any_mismatch, builtin_registry, load_registry, render_json, render_table, report, set_twists};
use crate::chern::LinearForm;
use crate::exact::{parse_rational, render_rational, Rational};
use crate::rr::{f_splitting_oracle, f_value};
use crate::theorems::{
    thm1_derived, thm2_chain, thm3_h0_split, thm3_hrr_crosscheck, thm3_q, DivisorCaseInput, PlaneBundleInput,
    ThreefoldNumerics,
};

pub use lex::SyntaxError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// The closed forms compared against each derivation. Tests swap in
/// broken versions to check that disagreement is caught.
#[derive(Clone, Copy)]
pub struct ClosedForms {
    pub thm1: fn(&ThreefoldNumerics) -> LinearForm,
    pub thm2: fn(&DivisorCaseInput) -> Rational,
    pub thm3: fn(&PlaneBundleInput) -> Rational,
}

impl Default for ClosedForms {
    fn default() -> Self {
        Self {
            thm1: crate::theorems::thm1_closed,
            thm2: crate::theorems::thm2_closed,
            thm3: crate::theorems::thm3_value,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "bottcheck", version, about = "Exact Euler characteristic checks for Bott vanishing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// -chi(X, Omega^2(H - K)) from intersection numbers
    Thm1(Thm1Args),
    /// -chi(X, Omega^2(aH + U)) for X in |kH + 2U| on P(E) over P1
    Thm2 {
        #[arg(long, allow_hyphen_values = true)]
        bundle: String,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<i64>,
    },
    /// -chi(X, Omega^2(H + U)) for X = P(E) over P2
    Thm3 {
        #[arg(long, allow_hyphen_values = true)]
        bundle: String,
    },
    /// f(x, y) = chi(W, xH + yU) on P(O + O + O(p) + O(q)) over P1
    ChiF {
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
        #[arg(long, allow_hyphen_values = true)]
        y: i64,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        /// Compare against the pushforward enumeration (needs y >= 0)
        #[arg(long)]
        oracle: bool,
    },
    /// Verdicts for the case registry
    BottReport {
        /// Registry file; defaults to the built-in cases
        #[arg(long)]
        cases: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        /// Twists for a divisorial case, as ID=a0,a1,a2,a3
        #[arg(long, value_name = "ID=A0,A1,A2,A3")]
        twists: Vec<String>,
    },
    /// Reduce a class in a Chow ring and take its degree
    ChowEval {
        /// line:a0,a1,a2,a3 or plane:c1,c2
        #[arg(long, allow_hyphen_values = true)]
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
}

#[derive(Args, Debug)]
struct Thm1Args {
    #[arg(long, required_unless_present = "symbolic_h", conflicts_with = "symbolic_h")]
    h: Option<u64>,
    /// Keep h as a symbol
    #[arg(long)]
    symbolic_h: bool,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    c13: Rational,
    #[arg(long = "c12H", value_parser = rational_arg, allow_hyphen_values = true)]
    c12h: Rational,
    #[arg(long = "c1H2", value_parser = rational_arg, allow_hyphen_values = true)]
    c1h2: Rational,
    #[arg(long = "c2H", value_parser = rational_arg, allow_hyphen_values = true)]
    c2h: Rational,
    #[arg(long = "H3", value_parser = rational_arg, allow_hyphen_values = true)]
    h3: Rational,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Input problems, reported with exit status 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn status(matched: bool) -> (&'static str, i32) {
    if matched {
        ("MATCH", EXIT_OK)
    } else {
        ("MISMATCH", EXIT_MISMATCH)
    }
}

pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &ClosedForms::default(), &mut stdout.lock(), &mut stderr.lock())
}

/// Runs one invocation, writing to `out` and `err`; returns the exit code.
pub fn run_with<I, T>(args: I, forms: &ClosedForms, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_INPUT
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let mut buf = String::new();
    match dispatch(cli.command, forms, &mut buf) {
        Ok(code) => {
            let _ = out.write_all(buf.as_bytes());
            code
        }
        Err(InputError(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_INPUT
        }
    }
}

fn dispatch(cmd: Command, forms: &ClosedForms, out: &mut String) -> Result<i32, InputError> {
    use std::fmt::Write as _;
    match cmd {
        Command::Thm1(a) => {
            let mut n = ThreefoldNumerics::numeric(a.c13, a.c12h, a.c1h2, a.c2h, a.h3);
            if let Some(h) = a.h {
                n.h = LinearForm::int(i64::try_from(h)?);
            }
            let derived = thm1_derived(&n);
            let closed = (forms.thm1)(&n);
            let (word, code) = status(derived == closed);
            writeln!(out, "derived: {derived}\nclosed: {closed}\n{word}")?;
            Ok(code)
        }
        Command::Thm2 { bundle, k, a } => {
            let twists = parse::parse_bundle(&bundle)?.rank4_line()?;
            let inp = DivisorCaseInput::new(twists, k, a)?;
            let chain = thm2_chain(&inp)?;
            let closed = (forms.thm2)(&inp);
            let norm = &chain.normalized;
            writeln!(
                out,
                "twists: {} {} {} {}\nshift: {}\np: {}\nq: {}\nk: {}",
                twists[0], twists[1], twists[2], twists[3], norm.shift, norm.p, norm.q, chain.k_normalized
            )?;
            writeln!(out, "chain(a): {}", chain.in_a.render("a"))?;
            let value = chain.value(a);
            let shown = value.as_ref().map_or_else(|| "depends on a".to_string(), render_rational);
            let (word, code) = status(value.as_ref() == Some(&closed));
            writeln!(out, "chain: {shown}\nclosed: {}\n{word}", render_rational(&closed))?;
            Ok(code)
        }
        Command::Thm3 { bundle } => {
            let inp = parse::parse_bundle(&bundle)?.rank2_plane()?;
            let polys = thm3_q(&inp);
            let at_minus_one = polys.q.eval_int(-1);
            let closed = (forms.thm3)(&inp);
            let grid_ok = (-3..=6).all(|b| thm3_hrr_crosscheck(&inp, b) == polys.q.eval_int(b));
            writeln!(out, "c1: {}\nc2: {}", inp.c1, inp.c2)?;
            for (name, p) in [("Q1", &polys.q1), ("Q2", &polys.q2), ("Q3", &polys.q3), ("Q", &polys.q)] {
                writeln!(out, "{name}(b): {}", p.render("b"))?;
            }
            writeln!(out, "Q(-1): {}\nclosed: {}", render_rational(&at_minus_one), render_rational(&closed))?;
            writeln!(out, "hrr b=-3..6: {}", if grid_ok { "agree" } else { "disagree" })?;
            if let Some((a, b)) = inp.split {
                writeln!(out, "h0: {}", thm3_h0_split(a, b))?;
            }
            let (word, code) = status(at_minus_one == closed && grid_ok);
            writeln!(out, "{word}")?;
            Ok(code)
        }
        Command::ChiF { x, y, p, q, oracle } => {
            let value = f_value(x, y, p, q);
            if !oracle {
                writeln!(out, "{}", render_rational(&value))?;
                return Ok(EXIT_OK);
            }
            let reference = f_splitting_oracle(x, y, p, q)?;
            let (word, code) = status(value == reference);
            writeln!(
                out,
                "f: {}\noracle: {}\n{word}",
                render_rational(&value),
                render_rational(&reference)
            )?;
            Ok(code)
        }
        Command::BottReport { cases, json, twists } => {
            let mut records = match cases {
                Some(path) => load_registry(&path)?,
                None => builtin_registry(),
            };
            for arg in &twists {
                let (id, values) = arg
                    .split_once('=')
                    .ok_or_else(|| InputError(format!("--twists {arg:?}: expected ID=a0,a1,a2,a3")))?;
                let parsed: Vec<i64> = values
                    .split(',')
                    .map(|v| v.trim().parse::<i64>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| InputError(format!("--twists {arg:?}: {e}")))?;
                let arr: [i64; 4] = parsed
                    .try_into()
                    .map_err(|_| InputError(format!("--twists {arg:?}: expected four twists")))?;
                set_twists(&mut records, id, arr)?;
            }
            let rows = report(&records);
            out.push_str(&if json { render_json(&rows) } else { render_table(&rows) });
            Ok(if any_mismatch(&records) { EXIT_MISMATCH } else { EXIT_OK })
        }
        Command::ChowEval { ring, expr } => {
            let amb = expr::parse_ring(&ring)?;
            let raw = expr::parse_class(&expr).map_err(|e| InputError(format!("--expr: {e}")))?;
            let class = amb.reduce(&raw);
            writeln!(out, "ring: {amb}\nclass: {class}\ndegree: {}", render_rational(&class.degree()))?;
            Ok(EXIT_OK)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("bottcheck").chain(args.iter().copied());
        let code = run_with(argv, &ClosedForms::default(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn thm1_symbolic_and_numeric() {
        let (code, out, _) = run_args(&[
            "thm1", "--h", "0", "--c13", "4", "--c12H", "6", "--c1H2", "6", "--c2H", "24", "--H3", "6",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out, "derived: 14\nclosed: 14\nMATCH\n");
        let (code, out, _) = run_args(&[
            "thm1", "--symbolic-h", "--c13", "-1/2", "--c12H", "0", "--c1H2", "0", "--c2H", "0", "--H3", "0",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out, "derived: 65/4 + h\nclosed: 65/4 + h\nMATCH\n");
    }

    #[test]
    fn thm1_needs_hodge_choice() {
        let (code, _, err) = run_args(&["thm1", "--c13", "4", "--c12H", "6", "--c1H2", "6", "--c2H", "24", "--H3", "6"]);
        assert_eq!(code, 2);
        assert!(!err.is_empty());
        let (code, _, _) = run_args(&["thm1", "--h", "-1", "--c13", "4", "--c12H", "6", "--c1H2", "6", "--c2H", "24", "--H3", "6"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn input_errors_exit_two() {
        assert_eq!(run_args(&["thm2", "--bundle", "P1: O(1) + O(2)", "--k", "0"]).0, 2);
        assert_eq!(run_args(&["thm2", "--bundle", "P1: O(0) + O(1) + O(2) + O(3)", "--k", "0"]).0, 2);
        assert_eq!(run_args(&["thm3", "--bundle", "P2: O(1"]).0, 2);
        assert_eq!(run_args(&["chi-f", "--x", "0", "--y", "-1", "--p", "0", "--q", "0", "--oracle"]).0, 2);
        assert_eq!(run_args(&["chow-eval", "--ring", "plane:1", "--expr", "H"]).0, 2);
        assert_eq!(run_args(&["bott-report", "--twists", "table9=0,0,0,0"]).0, 2);
        assert_eq!(run_args(&["frobnicate"]).0, 2);
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("thm1"));
    }

    #[test]
    fn thm2_with_fixed_twist() {
        let (code, out, _) = run_args(&["thm2", "--bundle", "P1: O(1)^4", "--k", "0", "--a", "-5"]);
        assert_eq!(code, 0);
        assert!(out.ends_with("chain: 8\nclosed: 8\nMATCH\n"), "{out}");
        assert!(out.contains("shift: 1\n"));
    }

    #[test]
    fn chow_eval_output() {
        let (code, out, _) = run_args(&["chow-eval", "--ring", "plane:3,3", "--expr", "U^2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "ring: plane:3,3\nclass: 3*H*U - 3*H^2\ndegree: 0\n");
    }
}
