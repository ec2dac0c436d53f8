//! Command-line front end.

use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::algebra::field::{field_make, Field, FieldCtx, FiniteField, GaloisField, PrimeField};
use crate::algebra::valued::ValuedFrac;
use crate::centext::{Extension, Flavor};
use crate::error::{Error, Result};
use crate::expr;
use crate::recip::{self, k_to_bipoly};
use crate::report::{Report, Summary};
use crate::satake::{self, SatakeData};
use crate::suites::{self, SuiteConfig};
use crate::tlf::{
    k_field, nu_symbol, nu_symbol_composite, parse_k, tlf_parse, KElem, KField, Symbols,
};

#[derive(Parser, Debug)]
#[command(
    name = "twodim",
    version,
    about = "Symbols, cocycles and reciprocity laws for F_q((u))((t))"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Coefficient field: p=5, p=2,k=3 or p=2,k=3,modulus=x^3+x+1
    #[arg(long, global = true, default_value = "p=5")]
    pub field: String,
    /// Matrix size for sampled suites
    #[arg(long, global = true, default_value_t = 2)]
    pub n: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 200)]
    pub trials: usize,
    /// Starting u-adic precision for branch computations
    #[arg(long, global = true, default_value_t = 16)]
    pub prec: i64,
    #[arg(long, global = true, value_enum, default_value_t = FlavorArg::Tilde)]
    pub flavor: FlavorArg,
    /// JSON output (default)
    #[arg(long, global = true, conflicts_with = "table")]
    pub json: bool,
    /// Plain-text table output
    #[arg(long, global = true)]
    pub table: bool,
    /// Omit the timestamp from reports
    #[arg(long, global = true)]
    pub deterministic: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FlavorArg {
    Tilde,
    Hat,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Tilde => Flavor::Tilde,
            FlavorArg::Hat => Flavor::Hat,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// nu_K(f, g) by both routes
    Symbol { f: String, g: String },
    /// sigma(g, h) for matrices given as JSON arrays of expression strings
    Cocycle { g: String, h: String },
    /// <A, B> for commuting matrices
    Commutator { a: String, b: String },
    /// Run a property suite (symbol-laws, cocycle-id, o-split, b-split,
    /// commutator-bridge, block-laws, recip-point, recip-curve, horizontal,
    /// satake-laws, all)
    Verify { suite: String },
    /// Branch sum of symbols at the origin for polynomials f, g
    RecipPoint {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Sum over places of the line t = 0
    RecipCurve {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Product formula and horizontal symbols for a rational a
    RecipHorizontal {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Satake parameters and exponent vectors
    Satake {
        /// Residue field size; defaults to the size of --field
        #[arg(long)]
        q: Option<u64>,
        /// Comma-separated parameters r or r:theta
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[command(subcommand)]
        op: SatakeOp,
    },
}

#[derive(Subcommand, Debug)]
pub enum SatakeOp {
    /// Parameters and alpha values, round-tripped
    Params,
    /// Character exponents of a block upper triangular matrix
    Chi {
        #[arg(long)]
        matrix: String,
        /// Comma-separated block sizes; defaults to all 1
        #[arg(long)]
        sizes: Option<String>,
    },
    /// Frobenius exponent of (f, g)
    Frobenius { f: String, g: String },
    /// Blockwise cocycle of two matrices with GL_2 diagonal blocks
    Parabolic { g: String, h: String },
}

/// Result of a command: JSON payload and process exit code.
pub struct Outcome {
    pub value: Value,
    pub code: i32,
    pub summary: Option<String>,
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::PrecisionCap(_) => 3,
        _ => 2,
    }
}

/// Parses "p=5", "p=2,k=3", "p=2,k=3,modulus=x^3+x+1" or a bare prime.
pub fn parse_field_spec(spec: &str) -> Result<FieldCtx> {
    let (mut p, mut k, mut modulus) = (None, 1usize, None);
    for part in spec.split(',').map(str::trim) {
        let bad = || Error::BadField(format!("cannot read '{part}'"));
        match part.split_once('=') {
            Some(("p", v)) => p = Some(v.trim().parse::<u64>().map_err(|_| bad())?),
            Some(("k", v)) => k = v.trim().parse::<usize>().map_err(|_| bad())?,
            Some(("modulus", v)) => modulus = Some(v.trim().to_string()),
            None if p.is_none() => p = Some(part.parse::<u64>().map_err(|_| bad())?),
            _ => return Err(bad()),
        }
    }
    let p = p.ok_or_else(|| Error::BadField("missing p".into()))?;
    let modulus = match modulus {
        Some(text) => {
            if !crate::algebra::field::is_prime(p) || p > (1 << 31) {
                return field_make(p, k, None);
            }
            let fx = ValuedFrac::new(PrimeField::with_p(p as u32), 'x');
            let ast = expr::parse(&text.replace('x', "u"))?;
            let v = expr::eval(&ast, &fx, &|c| (c == 'u').then(|| fx.x_pow(1)))?;
            Some(
                fx.as_poly(&v)
                    .ok_or_else(|| Error::BadField("modulus must be a polynomial".into()))?,
            )
        }
        None => None,
    };
    field_make(p, k, modulus)
}

fn parse_matrix<F: Symbols>(k: &KField<F>, text: &str) -> Result<Vec<Vec<KElem<F>>>> {
    expr::parse_matrix_json(text)?
        .iter()
        .map(|r| r.iter().map(|s| parse_k(k, s)).collect())
        .collect()
}

fn timestamp(g: &Global) -> Option<u64> {
    (!g.deterministic).then(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    })
}

fn pass_code(pass: bool) -> i32 {
    if pass {
        0
    } else {
        1
    }
}

fn run_field<F: FiniteField + Symbols>(
    base: F,
    ctx: &FieldCtx,
    g: &Global,
    cmd: &Command,
) -> Result<Outcome> {
    let k = k_field(base);
    let ext = || Extension::new(k.clone(), g.flavor.into());
    let done = |value: Value, code: i32| {
        Ok(Outcome {
            value,
            code,
            summary: None,
        })
    };
    match cmd {
        Command::Symbol { f, g: gg } => {
            let (a, b) = (tlf_parse(&k, f)?, tlf_parse(&k, gg)?);
            let closed = nu_symbol(&k, &a, &b)?;
            let comp = nu_symbol_composite(&k, &a, &b)?;
            done(
                json!({"f": k.format(&a), "g": k.format(&b), "nu": closed.nu, "composite": comp.nu, "residue": comp.residue}),
                pass_code(closed.nu == comp.nu),
            )
        }
        Command::Cocycle { g: gm, h } => {
            let (a, b) = (parse_matrix(&k, gm)?, parse_matrix(&k, h)?);
            done(
                json!({"flavor": Flavor::from(g.flavor), "sigma": ext().cocycle(&a, &b)?}),
                0,
            )
        }
        Command::Commutator { a, b } => {
            let (x, y) = (parse_matrix(&k, a)?, parse_matrix(&k, b)?);
            done(
                json!({"flavor": Flavor::from(g.flavor), "pairing": ext().commutator_pairing(&x, &y)?}),
                0,
            )
        }
        Command::Verify { suite } => {
            let cfg = SuiteConfig {
                seed: g.seed,
                trials: g.trials,
                n: g.n,
                prec: g.prec,
                flavor: g.flavor.into(),
            };
            let cases = suites::run_suite(suite, &k, &cfg)
                .ok_or_else(|| Error::Invalid(format!("unknown suite '{suite}'")))?;
            let config = json!({
                "suite": suite, "field": ctx.describe(), "n": g.n, "seed": g.seed,
                "trials": g.trials, "prec": g.prec, "flavor": Flavor::from(g.flavor),
            });
            let report = Report::new(config, cases, timestamp(g));
            let Summary {
                passed,
                failed,
                skipped,
            } = report.summary;
            let capped = report.cases.iter().any(|c| {
                c.skipped
                    .as_deref()
                    .is_some_and(|s| s.starts_with("precision cap"))
            });
            let code = if failed > 0 {
                1
            } else if capped {
                3
            } else {
                0
            };
            Ok(Outcome {
                value: serde_json::to_value(&report).expect("serializable"),
                code,
                summary: Some(format!(
                    "{suite}: {passed} passed, {failed} failed, {skipped} skipped"
                )),
            })
        }
        Command::RecipPoint { f, g: gg } => {
            let a = k_to_bipoly(&k, &parse_k(&k, f)?)?;
            let b = k_to_bipoly(&k, &parse_k(&k, gg)?)?;
            let r = recip::point_reciprocity(&k, &a, &b, g.prec)?;
            done(
                serde_json::to_value(&r).expect("serializable"),
                pass_code(r.pass),
            )
        }
        Command::RecipCurve { f, g: gg } => {
            let r = recip::curve_reciprocity_p1(&k, &tlf_parse(&k, f)?, &tlf_parse(&k, gg)?)?;
            done(
                serde_json::to_value(&r).expect("serializable"),
                pass_code(r.pass),
            )
        }
        Command::RecipHorizontal { a } => {
            let a: BigRational = a
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad rational '{a}'")))?;
            let p = recip::product_formula_q(&a)?;
            let h = recip::horizontal_symbol_check(&a)?;
            let pass = p.pass && h.pass;
            done(
                json!({"product": h.product, "pass": pass, "product_formula": p, "horizontal": h}),
                pass_code(pass),
            )
        }
        Command::Satake { q, a, op } => {
            let q = match q {
                Some(q) => *q,
                None => ctx
                    .q_u64()
                    .ok_or_else(|| Error::BadField("field too large for q".into()))?,
            };
            let data = SatakeData::parse(q, a)?;
            let alphas = || -> Value {
                json!(data
                    .alphas()
                    .iter()
                    .map(|x| {
                        let (re, im) = x.to_complex(q);
                        json!({"log_q_abs": x.log_abs.to_string(), "turn": x.turn.to_string(), "complex": [re, im]})
                    })
                    .collect::<Vec<_>>())
            };
            match op {
                SatakeOp::Params => {
                    let back = satake::satake_round_trip(&data)?;
                    done(
                        json!({"data": data, "alphas": alphas(), "round_trip": back == data}),
                        pass_code(back == data),
                    )
                }
                SatakeOp::Chi { matrix, sizes } => {
                    let m = parse_matrix(&k, matrix)?;
                    let sizes: Vec<usize> = match sizes {
                        Some(s) => s
                            .split(',')
                            .map(|x| {
                                x.trim()
                                    .parse()
                                    .map_err(|_| Error::Invalid(format!("bad block size '{x}'")))
                            })
                            .collect::<Result<_>>()?,
                        None => vec![1; m.len()],
                    };
                    let e = satake::chi_exponent(&k, &m, &sizes, &data)?;
                    let v = data.evaluate(&e)?;
                    let (re, im) = v.to_complex(q);
                    done(
                        json!({"exponents": e, "value": {"log_q_abs": v.log_abs.to_string(), "turn": v.turn.to_string()}, "complexValue": [re, im]}),
                        0,
                    )
                }
                SatakeOp::Frobenius { f, g: gg } => done(
                    json!({"frobenius_exponent": satake::frobenius_exponent(&k, &tlf_parse(&k, f)?, &tlf_parse(&k, gg)?)?}),
                    0,
                ),
                SatakeOp::Parabolic { g: gm, h } => {
                    let (x, y) = (parse_matrix(&k, gm)?, parse_matrix(&k, h)?);
                    done(
                        json!({"flavor": Flavor::from(g.flavor), "exponents": satake::parabolic_cocycle(&ext(), &x, &y, &data)?}),
                        0,
                    )
                }
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let ctx = parse_field_spec(&cli.global.field)?;
    if ctx.k == 1 {
        run_field(PrimeField::new(&ctx), &ctx, &cli.global, &cli.command)
    } else {
        run_field(GaloisField::new(&ctx), &ctx, &cli.global, &cli.command)
    }
}

fn table(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (key, x) in m {
                if x.is_object()
                    || x.is_array()
                        && x.as_array()
                            .is_some_and(|a| a.iter().any(|y| y.is_object()))
                {
                    out.push_str(&format!("{pad}{key}:\n"));
                    table(x, indent + 2, out);
                } else {
                    out.push_str(&format!("{pad}{key}: {}\n", plain(x)));
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if x.is_object() {
                    out.push_str(&format!("{pad}-\n"));
                    table(x, indent + 2, out);
                } else {
                    out.push_str(&format!("{pad}- {}\n", plain(x)));
                }
            }
        }
        x => out.push_str(&format!("{pad}{}\n", plain(x))),
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        x => x.to_string(),
    }
}

fn verify_table(v: &Value) -> String {
    let mut out = String::new();
    for c in v["cases"].as_array().into_iter().flatten() {
        let status = if c.get("skipped").is_some() {
            "skip"
        } else if c["pass"].as_bool() == Some(true) {
            "pass"
        } else {
            "FAIL"
        };
        let what = c
            .get("skipped")
            .map(plain)
            .unwrap_or_else(|| plain(&c["computed"]));
        out.push_str(&format!("{:<32} {:<5} {}\n", plain(&c["id"]), status, what));
    }
    out
}

/// Runs the parsed command, printing to stdout/stderr; returns the exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(&cli) {
        Ok(o) => {
            let text = if cli.global.table {
                if matches!(cli.command, Command::Verify { .. }) {
                    verify_table(&o.value)
                } else {
                    let mut s = String::new();
                    table(&o.value, 0, &mut s);
                    s
                }
            } else {
                serde_json::to_string_pretty(&o.value).expect("serializable") + "\n"
            };
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            if let Some(s) = o.summary {
                eprintln!("{s}");
            }
            o.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
