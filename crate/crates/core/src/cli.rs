//! Command-line front end. `run` is the whole program so tests can drive it
//! in-process.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad input.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};

use crate::error::Error;
use crate::ratgf::{hadamard_rational, RationalGF};
use crate::series::hadamard_series;
use crate::tilings::bijection::{lemma11_bijection_audit, strip_pairs, tail_switch, PairKind, Switch};
use crate::tilings::{enumerate_pair_tilings, prime_blocks, render_listing, RowSpec};
use crate::verify::{all_passed, verify_all, verify_theorem, Theorem, MAX_ORDER};
use crate::xpoly::XPoly;

#[derive(Parser, Debug)]
#[command(
    name = "hadamard",
    version,
    about = "Exact Hadamard products of rational generating functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand num/den as a power series in x.
    Expand {
        #[arg(long)]
        num: String,
        #[arg(long)]
        den: String,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        json: bool,
    },
    /// Hadamard product of two rational generating functions.
    Hadamard {
        #[arg(long)]
        lnum: String,
        #[arg(long)]
        lden: String,
        #[arg(long)]
        rnum: String,
        #[arg(long)]
        rden: String,
        /// Rational closed form via the Kronecker construction.
        #[arg(long, conflicts_with = "series", required_unless_present = "series")]
        closed: bool,
        /// Coefficientwise product of the expansions up to this order.
        #[arg(long, value_name = "N")]
        series: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Check closed forms against independent oracles.
    Verify {
        /// shapiro, t1, t2, t3, t4, lemma, b0, cheb or all.
        #[arg(long, required_unless_present = "all")]
        theorem: Option<String>,
        /// Same as --theorem all.
        #[arg(long)]
        all: bool,
        #[arg(long, allow_negative_numbers = true)]
        m: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        n: Option<i64>,
        #[arg(long, default_value_t = crate::verify::DEFAULT_ORDER)]
        order: usize,
    },
    /// Weighted count of two-row tilings of length k.
    Tilings {
        /// Brick spec for the top row, e.g. `1:a,2:1`.
        #[arg(long)]
        top: String,
        /// Brick spec for the bottom row, e.g. `1:b,3:1,prefix=2`.
        #[arg(long)]
        bottom: String,
        #[arg(long)]
        k: usize,
        /// Draw every tiling.
        #[arg(long)]
        show: bool,
        /// Keep only tilings without interior fault lines.
        #[arg(long)]
        prime_only: bool,
    },
    /// Tail-switching audit for strip pairs with m > n.
    Bijection {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Draw every pair and its image.
        #[arg(long)]
        show: bool,
    },
}

struct Failure {
    code: i32,
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

/// Maps a library error to an exit code, with a caret under the offending
/// byte for syntax errors.
fn input_error(flag: &str, input: &str, e: Error) -> Failure {
    match e {
        Error::Parse { pos, .. } => Failure::usage(format!("--{flag}: {e}\n  {input}\n  {}^", " ".repeat(pos))),
        Error::Domain(_) => Failure::usage(format!("--{flag}: {e}")),
        other => Failure {
            code: 1,
            message: other.to_string(),
        },
    }
}

fn lib_error(e: Error) -> Failure {
    match e {
        Error::Parse { .. } | Error::Domain(_) => Failure::usage(e.to_string()),
        other => Failure {
            code: 1,
            message: other.to_string(),
        },
    }
}

fn check_order(order: usize) -> Result<(), Failure> {
    if order > MAX_ORDER {
        return Err(Failure::usage(format!(
            "order {order} exceeds the supported maximum {MAX_ORDER}"
        )));
    }
    Ok(())
}

fn parse_gf(num_flag: &str, num: &str, den_flag: &str, den: &str) -> Result<RationalGF, Failure> {
    let n: XPoly = num.parse().map_err(|e| input_error(num_flag, num, e))?;
    let d: XPoly = den.parse().map_err(|e| input_error(den_flag, den, e))?;
    RationalGF::new(n, d).map_err(|e| input_error(den_flag, den, e))
}

fn write_io(r: std::io::Result<()>) -> Result<(), Failure> {
    r.map_err(|e| Failure {
        code: 1,
        message: format!("write failed: {e}"),
    })
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Expand { num, den, order, json } => {
            check_order(order)?;
            let gf = parse_gf("num", &num, "den", &den)?;
            let s = gf.expand(order);
            if json {
                write_io(writeln!(out, "{}", s.to_json()))?;
            } else {
                for (k, c) in s.coeffs().iter().enumerate() {
                    write_io(writeln!(out, "{k}\t{c}"))?;
                }
            }
            Ok(0)
        }
        Command::Hadamard {
            lnum,
            lden,
            rnum,
            rden,
            closed: _,
            series,
            json,
        } => {
            let u = parse_gf("lnum", &lnum, "lden", &lden)?;
            let v = parse_gf("rnum", &rnum, "rden", &rden)?;
            if let Some(order) = series {
                check_order(order)?;
                let s = hadamard_series(&u.expand(order), &v.expand(order)).map_err(lib_error)?;
                if json {
                    write_io(writeln!(out, "{}", s.to_json()))?;
                } else {
                    for (k, c) in s.coeffs().iter().enumerate() {
                        write_io(writeln!(out, "{k}\t{c}"))?;
                    }
                }
            } else {
                let h = hadamard_rational(&u, &v).map_err(lib_error)?;
                if json {
                    let v = serde_json::json!({ "num": h.num().to_string(), "den": h.den().to_string() });
                    write_io(writeln!(out, "{v}"))?;
                } else {
                    write_io(writeln!(out, "num\t{}", h.num()))?;
                    write_io(writeln!(out, "den\t{}", h.den()))?;
                }
            }
            Ok(0)
        }
        Command::Verify {
            theorem,
            all,
            m,
            n,
            order,
        } => {
            check_order(order)?;
            let results = if all {
                verify_all(order)
            } else {
                let name = theorem.expect("clap enforces --theorem or --all");
                let th: Theorem = name.parse().map_err(|e| Failure::usage(format!("--theorem: {e}")))?;
                verify_theorem(th, m, n, order).map_err(lib_error)?
            };
            for r in &results {
                write_io(writeln!(out, "{r}"))?;
            }
            let ok = all_passed(&results);
            write_io(writeln!(out, "{}", if ok { "PASS" } else { "FAIL" }))?;
            Ok(if ok { 0 } else { 1 })
        }
        Command::Tilings {
            top,
            bottom,
            k,
            show,
            prime_only,
        } => {
            let top_spec: RowSpec = top.parse().map_err(|e| input_error("top", &top, e))?;
            let bottom_spec: RowSpec = bottom.parse().map_err(|e| input_error("bottom", &bottom, e))?;
            let items = if prime_only {
                prime_blocks(&top_spec, &bottom_spec, k)
            } else {
                enumerate_pair_tilings(&top_spec, &bottom_spec, k)
            };
            let total: crate::Polynomial = items.iter().map(|(_, w)| w.clone()).sum();
            write_io(writeln!(out, "count\t{}", items.len()))?;
            write_io(writeln!(out, "weight\t{total}"))?;
            if show {
                write_io(write!(out, "{}", render_listing(&items)))?;
            }
            Ok(0)
        }
        Command::Bijection { m, n, show } => {
            if m <= n {
                return Err(Failure::usage(format!("bijection needs m > n, got m = {m}, n = {n}")));
            }
            if show {
                for kind in [PairKind::A, PairKind::B] {
                    for p in strip_pairs(m, n, kind) {
                        let label = if kind == PairKind::A { "A" } else { "B" };
                        write_io(writeln!(out, "{label} weight {}", p.weight()))?;
                        write_io(writeln!(out, "{}", p.render()))?;
                        match tail_switch(&p).map_err(lib_error)? {
                            Switch::Exceptional => write_io(writeln!(out, "exceptional"))?,
                            Switch::Image(q) => write_io(writeln!(out, "maps to\n{}", q.render()))?,
                        }
                        write_io(writeln!(out))?;
                    }
                }
            }
            match lemma11_bijection_audit(m, n) {
                Ok(r) => {
                    write_io(writeln!(out, "A\t{}", r.size_a))?;
                    write_io(writeln!(out, "B\t{}", r.size_b))?;
                    write_io(writeln!(out, "matched weight\t{}", r.matched_weight))?;
                    write_io(writeln!(out, "exceptional A\t{}", r.exceptional_a))?;
                    write_io(writeln!(out, "exceptional B\t{}", r.exceptional_b))?;
                    write_io(writeln!(out, "difference\t{}", r.expected_difference))?;
                    write_io(writeln!(out, "PASS"))?;
                    Ok(0)
                }
                Err(Error::Audit(msg)) => {
                    write_io(writeln!(out, "{msg}"))?;
                    write_io(writeln!(out, "FAIL"))?;
                    Ok(1)
                }
                Err(e) => Err(lib_error(e)),
            }
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return 0;
                }
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 2,
                _ => 2,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
