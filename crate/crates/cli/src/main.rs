use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use oocf::approx::{best_one_rationals, keita_monotonicity, verify_thm1};
use oocf::convergents::convergent_table;
use oocf::maps::{measure_check, Interval};
use oocf::oocf::{all_expansions, evaluate, expand, OocfExpansion, Terminator};
use oocf::rcf_bridge::{
    eicf_best_to_oocf, rcf_to_oocf, verify_conjugacy, verify_intermediate, RcfExpansion,
};
use oocf::{Rational, Real};

mod render;
mod svg;

use render::{big, Format};

#[derive(Parser)]
#[command(name = "oocf", version, about = "Odd-odd continued fractions, exactly")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a number in [0, 1].
    Expand {
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 1000)]
        max_digits: usize,
        /// Both expansions of a rational in (0, 1).
        #[arg(long)]
        all: bool,
    },
    /// Principal, sub- and pseudo-convergents.
    Convergents {
        #[arg(long)]
        input: String,
        #[arg(short = 'n', default_value_t = 10)]
        n: usize,
    },
    /// Best odd/odd approximations by exhaustive search.
    Best {
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 10_000)]
        qmax: u64,
    },
    /// Convert a regular continued fraction [0; d1, d2, ...].
    Convert {
        #[arg(long, value_enum, default_value_t = Kind::Rcf)]
        from: Kind,
        #[arg(long, value_enum, default_value_t = Kind::Oocf)]
        to: Kind,
        /// Partial quotients d1, d2, ... separated by commas or spaces.
        #[arg(long)]
        digits: String,
        /// The digits are a prefix of a longer expansion.
        #[arg(long)]
        truncated: bool,
    },
    /// Run a verification suite; exit status 2 on failure.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Invariant-measure check on [lo, hi].
    Measure {
        #[arg(long)]
        lo: String,
        #[arg(long)]
        hi: String,
        #[arg(long = "K", default_value_t = 2000)]
        k: u64,
        #[arg(long, default_value_t = 5e-3)]
        tol: f64,
    },
    /// Ford circles with the convergents of the input highlighted.
    FordSvg {
        #[arg(long)]
        input: String,
        #[arg(short = 'n', default_value_t = 6)]
        n: usize,
        /// Write the SVG here instead of stdout.
        #[arg(short = 'o')]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 9)]
        den_max: u64,
    },
}

#[derive(Subcommand)]
enum Suite {
    /// Principal convergents against the exhaustive best list.
    Thm1 {
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 10_000)]
        qmax: u64,
    },
    /// The expansion ends or repeats, and evaluates back to the input.
    Thm2 {
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = oocf::oocf::DEFAULT_PERIOD_CAP)]
        cap: usize,
    },
    /// Principal convergents among the RCF intermediate convergents.
    Intermediate {
        #[arg(long)]
        input: String,
        #[arg(short = 'n', default_value_t = 10)]
        n: usize,
    },
    /// OOCF and EICF related by (1 - x)/(1 + x).
    Conjugacy {
        #[arg(long)]
        input: String,
        #[arg(short = 'n', default_value_t = 30)]
        n: usize,
    },
    /// Monotone chains at one RCF level.
    Keita {
        #[arg(long)]
        input: String,
        #[arg(short = 'n', default_value_t = 4)]
        n: usize,
    },
    /// Odd/odd EICF-derived candidates are principal convergents.
    EicfBest {
        #[arg(long)]
        input: String,
        #[arg(short = 'n', default_value_t = 10)]
        n: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Rcf,
    Oocf,
}

/// `Ok(pass)` or an input error.
type Run = Result<(Value, bool), String>;

fn parse_real(s: &str) -> Result<Real, String> {
    s.parse::<Real>().map_err(|e| format!("cannot read {s:?}: {e}"))
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    match parse_real(s)? {
        Real::Rational(r) => Ok(r),
        _ => Err(format!("{s:?} is not rational")),
    }
}

fn e2s(e: oocf::Error) -> String {
    e.to_string()
}

fn expansion_json(e: &OocfExpansion) -> Value {
    let mut v = json!({
        "digits": e.digits.iter().map(|d| json!([big(d.a()), d.eps()])).collect::<Vec<_>>(),
        "terminator": e.terminator.name(),
    });
    if let Terminator::Periodic { start } = e.terminator {
        v["period_start"] = json!(start);
    }
    v
}

fn with_header(mut body: Value, input: &str) -> Value {
    let mut out = json!({ "schema": 1, "input": input });
    out.as_object_mut().unwrap().append(body.as_object_mut().unwrap());
    out
}

fn run(cmd: Command) -> Run {
    match cmd {
        Command::Expand { input, max_digits, all } => {
            let x = parse_real(&input)?;
            let body = match (&x, all) {
                (Real::Rational(r), true) if !x.is_zero() && !x.is_one() => {
                    let both = all_expansions(r).map_err(e2s)?;
                    json!({ "expansions": both.iter().map(expansion_json).collect::<Vec<_>>() })
                }
                (_, true) => json!({ "expansions": [expansion_json(&expand(&x, max_digits).map_err(e2s)?)] }),
                (_, false) => expansion_json(&expand(&x, max_digits).map_err(e2s)?),
            };
            Ok((with_header(body, &input), true))
        }
        Command::Convergents { input, n } => {
            let x = parse_real(&input)?;
            let digits = expand(&x, n).map_err(e2s)?.take(n);
            let rows: Vec<Value> = convergent_table(&digits)
                .iter()
                .skip(1)
                .zip(&digits)
                .map(|(r, d)| {
                    json!({
                        "n": r.n,
                        "digit": format!("({},{})", d.a(), d.eps()),
                        "principal": r.principal().to_string(),
                        "sub": r.sub().map(|s| s.to_string()).unwrap_or_else(|| "1/0".into()),
                        "pseudo": r.pseudo().to_string(),
                    })
                })
                .collect();
            Ok((with_header(json!({ "rows": rows }), &input), true))
        }
        Command::Best { input, qmax } => {
            let x = parse_real(&input)?;
            let best = best_one_rationals(&x, qmax).map_err(e2s)?;
            let list: Vec<String> = best.iter().map(|r| r.to_string()).collect();
            Ok((with_header(json!({ "qmax": qmax, "best": list }), &input), true))
        }
        Command::Convert { from, to, digits, truncated } => {
            if (from, to) != (Kind::Rcf, Kind::Oocf) {
                return Err("only --from rcf --to oocf is supported".into());
            }
            let ds = digits
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<BigInt>().map_err(|e| format!("bad digit {t:?}: {e}")))
                .collect::<Result<Vec<_>, _>>()?;
            let e = if truncated {
                RcfExpansion::truncated(ds)
            } else {
                RcfExpansion::finite(ds)
            }
            .map_err(e2s)?;
            let out = rcf_to_oocf(&e).map_err(e2s)?;
            let mut body = expansion_json(&out);
            if e.is_finite() {
                body["value"] = json!(e.value().to_string());
            }
            Ok((with_header(body, &e.to_string()), true))
        }
        Command::Verify { suite } => verify(suite),
        Command::Measure { lo, hi, k, tol } => {
            let iv = Interval::closed(parse_rational(&lo)?, parse_rational(&hi)?).map_err(e2s)?;
            let rep = measure_check(&iv, k, tol).map_err(e2s)?;
            let body = json!({
                "K": k, "tol": tol, "lhs": rep.lhs, "rhs": rep.rhs,
                "diff": rep.diff, "tail_bound": rep.tail_bound, "pass": rep.pass,
            });
            Ok((with_header(body, &iv.to_string()), rep.pass))
        }
        Command::FordSvg { input, n, output, den_max } => {
            let x = parse_real(&input)?;
            let drawing = svg::render(&x, n, den_max)?;
            let body = json!({
                "circles": drawing.circles,
                "highlighted": drawing.highlighted,
            });
            match output {
                Some(path) => {
                    std::fs::write(&path, &drawing.svg)
                        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
                    let mut out = with_header(body, &input);
                    out["output"] = json!(path.display().to_string());
                    Ok((out, true))
                }
                None => Ok((Value::String(drawing.svg), true)),
            }
        }
    }
}

fn verify(suite: Suite) -> Run {
    let (name, input, body) = match suite {
        Suite::Thm1 { input, qmax } => {
            let rep = verify_thm1(&parse_real(&input)?, qmax).map_err(e2s)?;
            let list = |v: &[Rational]| v.iter().map(|r| r.to_string()).collect::<Vec<_>>();
            let body = json!({
                "qmax": qmax,
                "oocf_list": list(&rep.oocf_list),
                "brute_list": list(&rep.brute_list),
                "pass": rep.pass,
            });
            ("thm1", input, body)
        }
        Suite::Thm2 { input, cap } => {
            let x = parse_real(&input)?;
            let e = expand(&x, cap).map_err(e2s)?;
            let ended = e.terminator != Terminator::Truncated;
            let pass = ended && evaluate(&e).map_err(e2s)? == x;
            let mut body = expansion_json(&e);
            body["pass"] = json!(pass);
            ("thm2", input, body)
        }
        Suite::Intermediate { input, n } => {
            let rep = verify_intermediate(&parse_real(&input)?, n).map_err(e2s)?;
            let located: Vec<Value> = rep
                .located
                .iter()
                .map(|(r, at)| match at {
                    Some((level, j)) => json!({ "convergent": r.to_string(), "level": level, "j": big(j) }),
                    None => json!({ "convergent": r.to_string(), "level": null, "j": null }),
                })
                .collect();
            ("intermediate", input, json!({ "located": located, "pass": rep.pass }))
        }
        Suite::Conjugacy { input, n } => {
            let rep = verify_conjugacy(&parse_real(&input)?, n).map_err(e2s)?;
            let body = json!({
                "digits": rep.digits,
                "maps_commute": rep.maps_commute,
                "digits_correspond": rep.digits_correspond,
                "convergents_correspond": rep.convergents_correspond,
                "eicf_convergents_inf_rational": rep.eicf_convergents_inf_rational,
                "pass": rep.pass,
            });
            ("conjugacy", input, body)
        }
        Suite::Keita { input, n } => {
            let rep = keita_monotonicity(&parse_real(&input)?, n).map_err(e2s)?;
            let body = json!({
                "n": rep.n,
                "d_n": big(&rep.d_n),
                "denominators": rep.denominators.iter().map(big).collect::<Vec<_>>(),
                "errors": rep.errors.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                "degenerate": rep.degenerate,
                "denominators_ok": rep.denominators_ok,
                "errors_ok": rep.errors_ok,
                "pass": rep.pass,
            });
            ("keita", input, body)
        }
        Suite::EicfBest { input, n } => {
            let rep = eicf_best_to_oocf(&parse_real(&input)?, n).map_err(e2s)?;
            let list = |v: &[Rational]| v.iter().map(|r| r.to_string()).collect::<Vec<_>>();
            let body = json!({
                "candidates": list(&rep.candidates),
                "one_rationals": rep.one_rationals,
                "missing": list(&rep.missing),
                "pass": rep.pass,
            });
            ("eicf-best", input, body)
        }
    };
    let pass = body["pass"].as_bool().unwrap_or(false);
    let mut out = with_header(body, &input);
    out["suite"] = json!(name);
    Ok((out, pass))
}

fn set_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("OODD_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("OODD_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = set_threads().and_then(|()| run(cli.command));
    match result {
        Ok((value, pass)) => {
            let mut stdout = std::io::stdout().lock();
            let text = render::render(&value, cli.format);
            if stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
