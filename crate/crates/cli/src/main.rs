//! Batch front door: configuration parsing, element I/O, one subcommand per
//! core operation, verification suites, and a persistent result cache.
//!
//! Exit codes: 0 success, 1 mathematical negative (e.g. a non-member or a
//! failed verification), 2 undecided / budget exhausted, 3 usage or parse
//! errors, 4 internal errors.

mod cache;
mod config;
mod ioformat;
mod verify;

use std::collections::BTreeMap;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use qshuffle_core::error::CoreError;
use qshuffle_core::pairing::{pair_minus, pair_plus, pair_words_oracle};
use qshuffle_core::poly::{DegreeVector, LaurentPoly, Monomial};
use qshuffle_core::quantum::{
    context_vars, kernel_window, membership, order_classes, phi_map, psi_map, straighten,
    transfer_kernel, upsilon, MembershipVerdict, Perm,
};
use qshuffle_core::scalar::Scalar;
use qshuffle_core::shuffle::{ideal_generators, shuffle_mul, Sign};
use qshuffle_core::words::Word;
use qshuffle_core::zeta::find_wheels;

use cache::CacheEntry;
use config::Config;
use ioformat::*;

pub const REPORT_SCHEMA: &str = "qshuffle-report/1";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(CoreError),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 3,
            CliError::Core(CoreError::BudgetExhausted(_)) => 2,
            CliError::Core(_) => 4,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "qshuffle",
    about = "Exact shuffle algebras and quadratic quantum loop groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Path to the JSON configuration
    #[arg(long)]
    config: String,
    /// Initial exponent-window margin for adaptive loops
    #[arg(long)]
    budget_window: Option<i64>,
    /// Number of enlarge-and-retry rounds for adaptive loops
    #[arg(long)]
    budget_iters: Option<u32>,
    /// Disable the persistent result cache
    #[arg(long)]
    no_cache: bool,
    /// Write the report to this path instead of stdout
    #[arg(long)]
    output: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Derived constants of the zeta datum and the symmetry predicate
    ZetaInfo {
        #[command(flatten)]
        common: Common,
    },
    /// Shuffle product of two graded elements
    Mul {
        #[command(flatten)]
        common: Common,
        /// Left factor (inline JSON or a path)
        #[arg(long)]
        left: String,
        /// Right factor (inline JSON or a path)
        #[arg(long)]
        right: String,
    },
    /// Evaluate a word combination in the shuffle algebra
    Upsilon {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        element: String,
    },
    /// Bilinear pairing: word elements against polynomials, or the
    /// permutation-sum route on two words
    Pair {
        #[command(flatten)]
        common: Common,
        /// plus | minus | oracle
        #[arg(long)]
        mode: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Rewrite a word combination onto the non-increasing basis
    Straighten {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        element: String,
    },
    /// Membership of a graded element in the span of word images
    Member {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        element: String,
    },
    /// Kernel of the evaluation map over a windowed span of words
    Kernel {
        #[command(flatten)]
        common: Common,
        /// Degree vector, e.g. {"1":1,"2":1}
        #[arg(long)]
        degree: String,
        #[arg(long, allow_hyphen_values = true)]
        homdeg: i64,
        /// Exponent window lo,hi
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value = "+")]
        sign: String,
    },
    /// Wheel points of the factored datum at a degree
    Wheels {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        degree: String,
        #[arg(long, default_value_t = 1000)]
        max_points: usize,
    },
    /// Specialize the factored datum at a point
    Specialize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        degree: String,
        #[arg(long)]
        point: String,
    },
    /// Transfer a kernel element of the class quiver along a specialization
    Transfer {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        point: String,
        #[arg(long)]
        element: String,
        /// Comma-separated class order, e.g. 0,2,1
        #[arg(long)]
        class_order: Option<String>,
    },
    /// Check that the trivial-relation generator lands in the kernel of the
    /// symmetrized sum
    PhiPsiCheck {
        #[command(flatten)]
        common: Common,
        /// Color context as a JSON list of vertex names
        #[arg(long)]
        colors: String,
        #[arg(long, default_value_t = 5)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a named invariant suite
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Order-product generators and the discriminant at a degree
    IdealGens {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        degree: String,
    },
}

fn main() {
    // restore default SIGPIPE behavior so piping into head/less works
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let code = match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}

fn common_of(cmd: &Command) -> &Common {
    match cmd {
        Command::ZetaInfo { common }
        | Command::Mul { common, .. }
        | Command::Upsilon { common, .. }
        | Command::Pair { common, .. }
        | Command::Straighten { common, .. }
        | Command::Member { common, .. }
        | Command::Kernel { common, .. }
        | Command::Wheels { common, .. }
        | Command::Specialize { common, .. }
        | Command::Transfer { common, .. }
        | Command::PhiPsiCheck { common, .. }
        | Command::Verify { common, .. }
        | Command::IdealGens { common, .. } => common,
    }
}

fn execute(cmd: Command) -> Result<i32, CliError> {
    let common = common_of(&cmd).clone();
    let cfg = Config::load(&common.config)?;
    if cfg.field == "rational" {
        // the datum must then avoid the parameter q entirely
        let z = cfg.zeta_datum()?;
        for i in 0..z.vertex_count() {
            for j in 0..z.vertex_count() {
                if z.tilde(i, j).terms().any(|(_, c)| !c.is_rational()) {
                    return Err(CliError::Usage(
                        "config declares the rational field but the datum uses q".into(),
                    ));
                }
            }
        }
    }
    let mut budgets = cfg.budgets;
    if let Some(w) = common.budget_window {
        budgets.window = w;
    }
    if let Some(r) = common.budget_iters {
        budgets.iters = r;
    }
    qshuffle_core::pairing::set_extra_truncation_order(budgets.truncation_margin as usize);
    let (name, args_key) = command_key(&cmd);
    let cache_key = cache::key(
        &format!(
            "{}|w{}g{}i{}t{}",
            cfg.canonical_json(),
            budgets.window,
            budgets.growth,
            budgets.iters,
            budgets.truncation_margin
        ),
        &name,
        &args_key,
    );
    if !common.no_cache {
        if let Some(entry) = cache::lookup(&cache_key) {
            emit(&common, &entry.report)?;
            return Ok(entry.exit_code);
        }
    }
    let (exit_code, result) = run_command(&cmd, &cfg, &budgets)?;
    let digest = cache::key(&cfg.canonical_json(), "", "");
    let report = json!({
        "schema": REPORT_SCHEMA,
        "command": name,
        "config_digest": digest,
        "result": result,
    });
    if !common.no_cache {
        cache::store(
            &cache_key,
            &CacheEntry {
                exit_code,
                report: report.clone(),
            },
        );
    }
    emit(&common, &report)?;
    Ok(exit_code)
}

fn emit(common: &Common, report: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(report)
        .map_err(|e| CliError::Usage(format!("serialization failed: {e}")))?;
    match &common.output {
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .map_err(|e| CliError::Usage(format!("cannot write {path}: {e}"))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

/// Canonical (command, argument) key for caching; inline JSON and file
/// contents hash identically because files are read first.
fn command_key(cmd: &Command) -> (String, String) {
    let read = |s: &str| read_json_arg(s).unwrap_or_else(|_| s.to_string());
    match cmd {
        Command::ZetaInfo { .. } => ("zeta-info".into(), String::new()),
        Command::Mul { left, right, .. } => {
            ("mul".into(), format!("{}|{}", read(left), read(right)))
        }
        Command::Upsilon { element, .. } => ("upsilon".into(), read(element)),
        Command::Pair {
            mode, left, right, ..
        } => (
            "pair".into(),
            format!("{mode}|{}|{}", read(left), read(right)),
        ),
        Command::Straighten { element, .. } => ("straighten".into(), read(element)),
        Command::Member { element, .. } => ("member".into(), read(element)),
        Command::Kernel {
            degree,
            homdeg,
            window,
            sign,
            ..
        } => (
            "kernel".into(),
            format!("{}|{homdeg}|{window}|{sign}", read(degree)),
        ),
        Command::Wheels {
            degree, max_points, ..
        } => ("wheels".into(), format!("{}|{max_points}", read(degree))),
        Command::Specialize { degree, point, .. } => (
            "specialize".into(),
            format!("{}|{}", read(degree), read(point)),
        ),
        Command::Transfer {
            point,
            element,
            class_order,
            ..
        } => (
            "transfer".into(),
            format!("{}|{}|{:?}", read(point), read(element), class_order),
        ),
        Command::PhiPsiCheck {
            colors,
            trials,
            seed,
            ..
        } => (
            "phi-psi-check".into(),
            format!("{colors}|{trials}|{seed}"),
        ),
        Command::Verify { suite, seed, .. } => ("verify".into(), format!("{suite}|{seed}")),
        Command::IdealGens { degree, .. } => ("ideal-gens".into(), read(degree)),
    }
}

fn parse_degree(arg: &str, cfg: &Config) -> Result<DegreeVector, CliError> {
    let text = read_json_arg(arg)?;
    let j: BTreeMap<String, u32> = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("invalid degree vector: {e}")))?;
    degree_from_json(&j, cfg)
}

fn run_command(
    cmd: &Command,
    cfg: &Config,
    budgets: &config::Budgets,
) -> Result<(i32, Value), CliError> {
    let budget = budgets.to_budget();
    match cmd {
        Command::ZetaInfo { .. } => {
            let z = cfg.zeta_datum()?;
            let n = cfg.vertices.len();
            let mut entries = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    entries.push(json!({
                        "i": cfg.vertices[i],
                        "j": cfg.vertices[j],
                        "s": z.s(i, j),
                        "spread": z.spread(i, j),
                        "alpha": z.alpha(i, j).to_string(),
                        "beta": z.beta(i, j).to_string(),
                        "pole": z.has_pole(i, j),
                        "tilde": z.tilde(i, j).terms().map(|(e, c)| json!([e, c.to_string()])).collect::<Vec<_>>(),
                    }));
                }
            }
            Ok((
                0,
                json!({
                    "vertices": cfg.vertices,
                    "symmetric": z.is_symmetric(),
                    "entries": entries,
                }),
            ))
        }
        Command::Mul { left, right, .. } => {
            let z = cfg.zeta_datum()?;
            let a: ShuffleElementJson = parse_json(&read_json_arg(left)?)?;
            let b: ShuffleElementJson = parse_json(&read_json_arg(right)?)?;
            let a = shuffle_from_json(&a, cfg)?;
            let b = shuffle_from_json(&b, cfg)?;
            let prod = shuffle_mul(&a, &b, &z)?;
            Ok((0, json!({ "product": shuffle_to_json(&prod, cfg) })))
        }
        Command::Upsilon { element, .. } => {
            let z = cfg.zeta_datum()?;
            let e: UElementJson = parse_json(&read_json_arg(element)?)?;
            let e = uelement_from_json(&e, cfg)?;
            let img = upsilon(&e, &z)?;
            Ok((
                0,
                json!({ "image": shuffle_to_json(&img, cfg), "is_zero": img.is_zero() }),
            ))
        }
        Command::Pair {
            mode, left, right, ..
        } => {
            let z = cfg.zeta_datum()?;
            let value = match mode.as_str() {
                "plus" => {
                    let u: UElementJson = parse_json(&read_json_arg(left)?)?;
                    let r: ShuffleElementJson = parse_json(&read_json_arg(right)?)?;
                    let u = uelement_from_json(&u, cfg)?;
                    let r = shuffle_from_json(&r, cfg)?;
                    if u.sign != Sign::Plus || r.sign != Sign::Minus {
                        return Err(CliError::Usage(
                            "plus mode pairs a '+' element against a '-' polynomial".into(),
                        ));
                    }
                    pair_plus(&u.terms, &r, &z)?
                }
                "minus" => {
                    let r: ShuffleElementJson = parse_json(&read_json_arg(left)?)?;
                    let u: UElementJson = parse_json(&read_json_arg(right)?)?;
                    let r = shuffle_from_json(&r, cfg)?;
                    let u = uelement_from_json(&u, cfg)?;
                    if u.sign != Sign::Minus || r.sign != Sign::Plus {
                        return Err(CliError::Usage(
                            "minus mode pairs a '+' polynomial against a '-' element".into(),
                        ));
                    }
                    pair_minus(&r, &u.terms, &z)?
                }
                "oracle" => {
                    let v: WordJson = parse_json(&read_json_arg(left)?)?;
                    let w: WordJson = parse_json(&read_json_arg(right)?)?;
                    let v = word_from_json(&v, cfg)?;
                    let w = word_from_json(&w, cfg)?;
                    pair_words_oracle(&v, &w, &z)?
                }
                other => {
                    return Err(CliError::Usage(format!(
                        "invalid pair mode {other:?}; expected plus|minus|oracle"
                    )))
                }
            };
            Ok((
                0,
                json!({ "value": value.to_string(), "is_zero": value.is_zero() }),
            ))
        }
        Command::Straighten { element, .. } => {
            let z = cfg.zeta_datum()?;
            let e: UElementJson = parse_json(&read_json_arg(element)?)?;
            let e = uelement_from_json(&e, cfg)?;
            match straighten(&e, &z, &budget) {
                Ok(s) => Ok((0, json!({ "straightened": uelement_to_json(&s, cfg) }))),
                Err(CoreError::BudgetExhausted(diag)) => Ok((2, json!({ "undecided": diag }))),
                Err(e) => Err(e.into()),
            }
        }
        Command::Member { element, .. } => {
            let z = cfg.zeta_datum()?;
            let r: ShuffleElementJson = parse_json(&read_json_arg(element)?)?;
            let r = shuffle_from_json(&r, cfg)?;
            match membership(&r, &z, &budget)? {
                MembershipVerdict::Member { expansion } => {
                    let terms: Vec<Value> = expansion
                        .iter()
                        .map(|(w, c)| {
                            json!({ "word": word_to_json(w, cfg), "coeff": c.to_string() })
                        })
                        .collect();
                    Ok((0, json!({ "verdict": "MEMBER", "expansion": terms })))
                }
                MembershipVerdict::NotMember { witness } => Ok((
                    1,
                    json!({
                        "verdict": "NOT_MEMBER",
                        "witness": uelement_to_json(&witness, cfg),
                    }),
                )),
                MembershipVerdict::Undecided { report } => {
                    Ok((2, json!({ "verdict": "UNDECIDED", "report": report })))
                }
            }
        }
        Command::Kernel {
            degree,
            homdeg,
            window,
            sign,
            ..
        } => {
            let z = cfg.zeta_datum()?;
            let n = parse_degree(degree, cfg)?;
            let (lo, hi) = parse_window(window)?;
            let sign = parse_sign(sign)?;
            let basis = kernel_window((&n, *homdeg), (lo, hi), sign, &z)?;
            let out: Vec<Value> = basis
                .iter()
                .map(|u| json!(uelement_to_json(u, cfg)))
                .collect();
            Ok((0, json!({ "dimension": out.len(), "basis": out })))
        }
        Command::Wheels {
            degree, max_points, ..
        } => {
            let fz = cfg.factored()?.ok_or_else(|| {
                CliError::Usage(
                    "wheels requires a factored datum (kac_moody, quiver or factored kind)".into(),
                )
            })?;
            let n = parse_degree(degree, cfg)?;
            let res = find_wheels(&fz, &n, *max_points);
            let found: Vec<Value> = res
                .found
                .iter()
                .map(|(p, w)| {
                    json!({
                        "point": point_to_json(p, cfg),
                        "cycle": w.cycle.iter().map(|v| var_key(*v, cfg)).collect::<Vec<_>>(),
                        "ratios": w.ratios.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok((
                0,
                json!({ "count": found.len(), "truncated": res.truncated, "wheels": found }),
            ))
        }
        Command::Specialize { degree, point, .. } => {
            let fz = cfg
                .factored()?
                .ok_or_else(|| CliError::Usage("specialize requires a factored datum".into()))?;
            let n = parse_degree(degree, cfg)?;
            let pj: SpecPointJson = parse_json(&read_json_arg(point)?)?;
            let p = point_from_json(&pj, cfg)?;
            let sp = qshuffle_core::zeta::specialize(&fz, &n, &p)?;
            let classes: Vec<Value> = sp
                .classes
                .iter()
                .enumerate()
                .map(|(k, members)| {
                    json!({
                        "index": k,
                        "color": cfg.vertices[sp.class_color[k]],
                        "value": sp.class_value[k].to_string(),
                        "members": members.iter().map(|v| var_key(*v, cfg)).collect::<Vec<_>>(),
                        "size": sp.counts[k],
                    })
                })
                .collect();
            let partial: Vec<Value> = sp
                .partial
                .iter()
                .map(|row| {
                    Value::from(
                        row.iter()
                            .map(|u| {
                                Value::from(
                                    u.terms()
                                        .map(|(e, c)| json!([e, c.to_string()]))
                                        .collect::<Vec<_>>(),
                                )
                            })
                            .collect::<Vec<_>>(),
                    )
                })
                .collect();
            Ok((
                0,
                json!({
                    "classes": classes,
                    "quiver": sp.quiver,
                    "partial": partial,
                }),
            ))
        }
        Command::Transfer {
            point,
            element,
            class_order,
            ..
        } => {
            let fz = cfg
                .factored()?
                .ok_or_else(|| CliError::Usage("transfer requires a factored datum".into()))?;
            let pj: SpecPointJson = parse_json(&read_json_arg(point)?)?;
            let p = point_from_json(&pj, cfg)?;
            // the element lives over the specialized class quiver: its words
            // use class indices as colors
            let ej: UElementJson = parse_json(&read_json_arg(element)?)?;
            let phi = uelement_from_class_json(&ej)?;
            let order: Option<Vec<usize>> = match class_order {
                Some(text) => Some(
                    text.split(',')
                        .map(|t| {
                            t.trim()
                                .parse::<usize>()
                                .map_err(|_| CliError::Usage("invalid class order".into()))
                        })
                        .collect::<Result<_, _>>()?,
                ),
                None => None,
            };
            let moved = transfer_kernel(&phi, &p, &fz, order.as_deref())?;
            let check = upsilon(&moved, &fz.expand())?;
            Ok((
                0,
                json!({
                    "transferred": uelement_to_json(&moved, cfg),
                    "evaluates_to_zero": check.is_zero(),
                }),
            ))
        }
        Command::PhiPsiCheck {
            colors,
            trials,
            seed,
            ..
        } => {
            use rand::{Rng, SeedableRng};
            let z = cfg.zeta_datum()?;
            let names: Vec<String> = parse_json(&read_json_arg(colors)?)?;
            let ctx: Vec<usize> = names
                .iter()
                .map(|n| cfg.color_of(n))
                .collect::<Result<_, _>>()?;
            let classes = order_classes(&ctx);
            let vars = context_vars(&ctx);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
            let mut failures = 0u32;
            for _ in 0..*trials {
                if classes.len() < 2 {
                    break;
                }
                let mut f: BTreeMap<(Perm, Perm), LaurentPoly> = BTreeMap::new();
                let s = rng.gen_range(0..classes.len());
                let mut t = rng.gen_range(0..classes.len());
                if s == t {
                    t = (t + 1) % classes.len();
                }
                let mut poly = LaurentPoly::zero();
                for _ in 0..2 {
                    let m = Monomial::from_pairs(
                        vars.iter().map(|v| (*v, rng.gen_range(-1..=1i64))),
                    );
                    poly.add_term(m, Scalar::from_int(rng.gen_range(-2..=2)));
                }
                if poly.is_zero() {
                    continue;
                }
                f.insert((classes[s].clone(), classes[t].clone()), poly);
                let p = psi_map(&f, &ctx, &z)?;
                if !phi_map(&p, &ctx, &z)?.is_zero() {
                    failures += 1;
                }
            }
            let ok = failures == 0;
            Ok((
                if ok { 0 } else { 1 },
                json!({ "trials": trials, "failures": failures, "ok": ok }),
            ))
        }
        Command::Verify { suite, seed, .. } => {
            let z = cfg.zeta_datum()?;
            let checks = verify::run(suite, &z, &budget, *seed)?;
            let all_ok = checks.iter().all(|c| c.ok);
            for c in &checks {
                eprintln!(
                    "{} {} ({})",
                    if c.ok { "ok  " } else { "FAIL" },
                    c.name,
                    c.detail
                );
            }
            let out: Vec<Value> = checks
                .iter()
                .map(|c| json!({ "name": c.name, "ok": c.ok, "detail": c.detail }))
                .collect();
            Ok((
                if all_ok { 0 } else { 1 },
                json!({ "suite": suite, "ok": all_ok, "checks": out }),
            ))
        }
        Command::IdealGens { degree, .. } => {
            let z = cfg.zeta_datum()?;
            let n = parse_degree(degree, cfg)?;
            let (gens, delta) = ideal_generators(&n, &z);
            Ok((
                0,
                json!({
                    "generators": gens.iter().map(|g| poly_to_json(g, cfg)).collect::<Vec<_>>(),
                    "discriminant": poly_to_json(&delta, cfg),
                }),
            ))
        }
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Usage(format!("invalid JSON argument: {e}")))
}

fn parse_window(text: &str) -> Result<(i64, i64), CliError> {
    let (lo, hi) = text
        .split_once(',')
        .ok_or_else(|| CliError::Usage("window must be lo,hi".into()))?;
    let lo = lo
        .trim()
        .parse()
        .map_err(|_| CliError::Usage("invalid window lower bound".into()))?;
    let hi = hi
        .trim()
        .parse()
        .map_err(|_| CliError::Usage("invalid window upper bound".into()))?;
    Ok((lo, hi))
}

/// Parse a class-quiver element: words carry class indices rather than
/// vertex names.
fn uelement_from_class_json(
    j: &UElementJson,
) -> Result<qshuffle_core::quantum::UElement, CliError> {
    let mut u = qshuffle_core::quantum::UElement::zero(parse_sign(&j.sign)?);
    for t in &j.terms {
        let letters = t
            .word
            .iter()
            .map(|(name, exp)| {
                name.parse::<usize>()
                    .map(|color| qshuffle_core::words::Letter { color, exp: *exp })
                    .map_err(|_| {
                        CliError::Usage(format!(
                            "transfer words use class indices; {name:?} is not an index"
                        ))
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        u.add_term(
            Word(letters),
            qshuffle_core::scalar::parse_scalar(&t.coeff)?,
        );
    }
    Ok(u)
}
