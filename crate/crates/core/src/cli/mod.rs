//! Command-line front end.

use crate::battery::{self, KNOWN_DEVIATIONS};
use crate::coxeter::{format_word, parse_word, WeylElem, WeylGroup};
use crate::error::{Error, Result};
use crate::extaffine::bounded_affine_perms;
use crate::hecke::Hecke;
use crate::locaffine::MainVerifier;
use crate::locfinite::FlagLoc;
use crate::pipedream::{enumerate_pd, gtilde, PipeDream, PositroidVerifier};
use crate::richardson::ProjLoc;
use crate::ring::{Int, RatFun};
use crate::subword::{classify, q_coeffs, subword_sum, u_subwords, WeightScheme};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::sync::Arc;

pub const THREADS_ENV: &str = "SCHUBLOC_THREADS";

#[derive(Parser, Debug)]
#[command(name = "schubloc", version, about = "Exact localization of motivic Chern classes")]
pub struct Cli {
    /// Worker threads; defaults to $SCHUBLOC_THREADS, then to all cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GroupArg {
    /// Root system such as A3, B2, G2, or GL3.
    #[arg(long = "type", value_name = "TYPE")]
    pub ty: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// R-polynomial R_{u,w}(q) as ascending coefficients.
    Rpoly {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        w: Option<String>,
        /// CSV of every pair.
        #[arg(long, conflicts_with_all = ["u", "w"])]
        all: bool,
        #[arg(long)]
        json: bool,
    },
    /// Twisted R-polynomial R^{(v)}_{u,w}(q).
    TwistedRpoly {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
        #[arg(long)]
        json: bool,
    },
    /// Classification of the u-subwords of a word, and the weighted sum.
    Subwords {
        /// Defaults to A_n with n the largest letter.
        #[arg(long = "type", value_name = "TYPE")]
        ty: Option<String>,
        #[arg(long)]
        word: String,
        #[arg(long)]
        u: String,
        #[arg(long, default_value = "e")]
        v: String,
        #[arg(long, value_enum, default_value_t = Scheme::R)]
        scheme: Scheme,
        /// Print one row per subword.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        json: bool,
    },
    /// Restriction of SMC(Y(u)) to the fixed point w.
    Smc {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, requires = "w")]
        u: Option<String>,
        #[arg(long, requires = "u")]
        w: Option<String>,
        /// Multiply by prod_{alpha>0} (1+y e^{w alpha})/(1-e^{w alpha}).
        #[arg(long)]
        times_prefactor: bool,
        /// Limit in the chamber of v instead of the value.
        #[arg(long, value_name = "V")]
        limit_chamber: Option<String>,
        /// Full table when u and w are omitted.
        #[arg(long)]
        json: bool,
    },
    /// AJS-Billey restriction of the Schubert class, in simple-root coordinates a_i.
    AjsBilley {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        u: String,
        #[arg(long)]
        w: String,
        #[arg(long)]
        json: bool,
    },
    /// Chamber limit of the normalized restriction.
    Limit {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        u: String,
        #[arg(long)]
        w: String,
        /// Chamber; defaults to the dominant one.
        #[arg(long, default_value = "e")]
        v: String,
        #[arg(long)]
        json: bool,
    },
    /// Restrictions of MC and SMC of a projected Richardson cell in G/P.
    Richardson {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<i64>,
        #[arg(long)]
        u: String,
        #[arg(long)]
        w: String,
        #[arg(long)]
        json: bool,
    },
    /// Compares the finite and affine sides at every fixed point of the Schubert variety of lambda.
    VerifyMain {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<i64>,
        #[arg(long, requires = "w", conflicts_with = "all")]
        u: Option<String>,
        #[arg(long, requires = "u", conflicts_with = "all")]
        w: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Periodic pipe dreams of a bounded affine permutation.
    Pipedream {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Window f(1),...,f(n); omitted means every bounded permutation.
        #[arg(long, value_delimiter = ',')]
        f: Option<Vec<i64>>,
        /// Trace one tiling given as rows, bottom first, e.g. XBB,BXB.
        #[arg(long, value_delimiter = ',', conflicts_with = "f")]
        rows: Option<Vec<String>>,
        #[arg(long, conflicts_with_all = ["gtilde", "verify"])]
        count: bool,
        #[arg(long, conflicts_with = "verify")]
        gtilde: bool,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        ascii: bool,
        #[arg(long)]
        json: bool,
    },
    /// Runs the acceptance battery.
    Selftest {
        /// Only this criterion.
        #[arg(long)]
        criterion: Option<u8>,
        /// Exit 0 when the only failures are listed deviations.
        #[arg(long)]
        allow_known: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    R,
    Smc,
    Ajs,
}

/// Exit status and everything written to stdout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn verdict(pass: bool, stdout: String) -> Outcome {
        Outcome { code: if pass { 0 } else { 1 }, stdout, stderr: String::new() }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    execute(cli)
}

/// Thread count from the flag, then the environment.
pub fn thread_count(flag: Option<usize>) -> Option<usize> {
    flag.or_else(|| std::env::var(THREADS_ENV).ok()?.parse().ok()).filter(|&n| n > 0)
}

pub fn execute(cli: Cli) -> Outcome {
    let res = match thread_count(cli.threads) {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(cli.cmd)),
            Err(e) => Err(Error::Unsupported(e.to_string())),
        },
        None => dispatch(cli.cmd),
    };
    res.unwrap_or_else(|e| Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") })
}

fn group(ty: &str) -> Result<Arc<WeylGroup>> {
    Ok(Arc::new(WeylGroup::parse(ty)?))
}

fn lines(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

fn dispatch(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Rpoly { group: ga, u, w, all, json } => {
            let h = Hecke::new(group(&ga.ty)?);
            if all {
                return Ok(Outcome::ok(h.csv_dump()));
            }
            let (Some(u), Some(w)) = (u, w) else {
                return Err(Error::Parse("rpoly needs --u and --w, or --all".into()));
            };
            let (ue, we) = (h.g.parse_elem(&u)?, h.g.parse_elem(&w)?);
            let r = h.r_poly(ue, we);
            Ok(Outcome::ok(if json {
                lines(json!({"type": ga.ty, "u": h.g.fmt_elem(ue), "w": h.g.fmt_elem(we), "coefficients": r.coeff_list(), "low": r.low()}))
            } else {
                format!("{}\n", r.coeff_list())
            }))
        }
        Command::TwistedRpoly { group: ga, u, v, w, json } => {
            let h = Hecke::new(group(&ga.ty)?);
            let (ue, ve, we) = (h.g.parse_elem(&u)?, h.g.parse_elem(&v)?, h.g.parse_elem(&w)?);
            let r = h.twisted_r(ue, we, ve);
            Ok(Outcome::ok(if json {
                lines(json!({
                    "type": ga.ty, "u": h.g.fmt_elem(ue), "v": h.g.fmt_elem(ve), "w": h.g.fmt_elem(we),
                    "coefficients": r.coeff_list(), "low": r.low()
                }))
            } else {
                format!("{}\n", r.coeff_list())
            }))
        }
        Command::Subwords { ty, word, u, v, scheme, list, json } => subwords(ty, &word, &u, &v, scheme, list, json),
        Command::Smc { group: ga, u, w, times_prefactor, limit_chamber, json } => {
            let l = FlagLoc::new(group(&ga.ty)?);
            let g = l.g.clone();
            let value = |ue: WeylElem, we: WeylElem| -> Result<RatFun> {
                match &limit_chamber {
                    Some(v) => l.limit_in_chamber(ue, we, g.parse_elem(v)?),
                    None if times_prefactor => Ok(l.smc(ue, we) * &l.prefactor(we)),
                    None => Ok(l.smc(ue, we).clone()),
                }
            };
            let pairs: Vec<(WeylElem, WeylElem)> = match (&u, &w) {
                (Some(u), Some(w)) => vec![(g.parse_elem(u)?, g.parse_elem(w)?)],
                _ if json => g.elements().flat_map(|u| g.elements().map(move |w| (u, w))).collect(),
                _ => return Err(Error::Parse("smc needs --u and --w unless --json".into())),
            };
            if json {
                let recs = pairs
                    .iter()
                    .map(|&(ue, we)| Ok(json!({"u": g.fmt_elem(ue), "w": g.fmt_elem(we), "value": value(ue, we)?.to_string()})))
                    .collect::<Result<Vec<Value>>>()?;
                Ok(Outcome::ok(lines(json!({"type": ga.ty, "records": recs}))))
            } else {
                let (ue, we) = pairs[0];
                Ok(Outcome::ok(format!("{}\n", value(ue, we)?)))
            }
        }
        Command::AjsBilley { group: ga, u, w, json } => {
            let l = FlagLoc::new(group(&ga.ty)?);
            let (ue, we) = (l.g.parse_elem(&u)?, l.g.parse_elem(&w)?);
            let p = l.ajs_billey(ue, we)?;
            Ok(Outcome::ok(if json {
                lines(json!({"type": ga.ty, "u": l.g.fmt_elem(ue), "w": l.g.fmt_elem(we), "value": p.to_string()}))
            } else {
                format!("{p}\n")
            }))
        }
        Command::Limit { group: ga, u, w, v, json } => {
            let l = FlagLoc::new(group(&ga.ty)?);
            let g = &l.g;
            let (ue, we, ve) = (g.parse_elem(&u)?, g.parse_elem(&w)?, g.parse_elem(&v)?);
            let (lim, expect) = l.limit_to_twisted(ue, ve, we)?;
            let pass = lim == expect;
            let text = if json {
                lines(json!({
                    "type": ga.ty, "u": g.fmt_elem(ue), "w": g.fmt_elem(we), "v": g.fmt_elem(ve),
                    "limit": lim.to_string(), "twisted_r_at_minus_y": expect.to_string(), "equal": pass
                }))
            } else {
                format!("{lim}\n")
            };
            Ok(Outcome::verdict(pass, text))
        }
        Command::Richardson { group: ga, lambda, u, w, json } => {
            let p = ProjLoc::parse(&ga.ty, &lambda)?;
            let g = p.g();
            let (ue, we) = (g.parse_elem(&u)?, g.parse_elem(&w)?);
            if !p.par.is_rep(we) {
                return Err(Error::IllFormed(format!("{w} is not a minimal coset representative")));
            }
            let mc = p.mc_projected(ue, we);
            let smc = p.smc_projected(ue, we);
            let rows: Vec<(String, String, String)> = p
                .par
                .reps
                .iter()
                .enumerate()
                .map(|(k, &z)| (g.fmt_elem(z), mc.values[k].to_string(), smc.values[k].to_string()))
                .collect();
            Ok(Outcome::ok(if json {
                let rs: Vec<Value> = rows.iter().map(|(z, m, s)| json!({"fixed_point": z, "mc": m, "smc": s})).collect();
                lines(json!({"type": ga.ty, "lambda": lambda, "u": g.fmt_elem(ue), "w": g.fmt_elem(we), "rows": rs}))
            } else {
                rows.iter().fold(String::new(), |mut s, (z, m, sm)| {
                    let _ = writeln!(s, "{z}\tMC={m}\tSMC={sm}");
                    s
                })
            }))
        }
        Command::VerifyMain { group: ga, lambda, u, w, all } => {
            let m = MainVerifier::parse(&ga.ty, &lambda)?;
            let g = m.proj.g();
            let reports = match (u, w) {
                (Some(u), Some(w)) if !all => {
                    let we = g.parse_elem(&w)?;
                    if !m.proj.par.is_rep(we) {
                        return Err(Error::IllFormed(format!("{w} is not a minimal coset representative")));
                    }
                    vec![m.verify(g.parse_elem(&u)?, we)?]
                }
                _ if all => m.verify_all()?,
                _ => return Err(Error::Parse("verify-main needs --u and --w, or --all".into())),
            };
            let pass = reports.iter().all(|r| r.pass());
            let aff = &m.proj.aff;
            let recs: Vec<Value> = reports
                .iter()
                .flat_map(|r| {
                    r.rows.iter().map(move |row| {
                        json!({
                            "u": g.fmt_elem(r.u), "w": g.fmt_elem(r.w), "f": aff.fmt_elem(&r.f),
                            "fixed_point": g.fmt_elem(row.fixed_point),
                            "lhs": row.lhs.to_string(), "rhs": row.rhs.to_string(), "equal": row.equal
                        })
                    })
                })
                .collect();
            Ok(Outcome::verdict(
                pass,
                lines(json!({"type": ga.ty, "lambda": lambda, "pairs": reports.len(), "records": recs, "pass": pass})),
            ))
        }
        Command::Pipedream { n, k, f, rows, count, gtilde: want_g, verify, ascii, json } => {
            pipedream(n, k, f, rows, count, want_g, verify, ascii, json)
        }
        Command::Selftest { criterion, allow_known, json } => {
            let reports = match criterion {
                Some(id) => vec![battery::run(id)?],
                None => battery::run_all(),
            };
            let pass = reports.iter().all(|r| r.pass() || (allow_known && r.only_known_failures()));
            let text = if json {
                let rs: Vec<Value> = reports
                    .iter()
                    .map(|r| {
                        let checks: Vec<Value> =
                            r.checks.iter().map(|c| json!({"name": c.name, "ok": c.ok, "detail": c.detail})).collect();
                        json!({
                            "id": r.id, "title": r.title, "pass": r.pass(),
                            "elapsed_seconds": r.elapsed.as_secs_f64(), "budget_seconds": r.budget.as_secs(),
                            "checks": checks
                        })
                    })
                    .collect();
                lines(json!({"criteria": rs, "pass": pass}))
            } else {
                let mut s = String::new();
                for r in &reports {
                    let _ = writeln!(s, "{r}");
                    if !r.pass() {
                        for &(_, name, why) in KNOWN_DEVIATIONS.iter().filter(|d| d.0 == r.id) {
                            let _ = writeln!(s, "    known deviation ({name}): {why}");
                        }
                    }
                }
                s
            };
            Ok(Outcome::verdict(pass, text))
        }
    }
}

fn subwords(ty: Option<String>, word: &str, u: &str, v: &str, scheme: Scheme, list: bool, json: bool) -> Result<Outcome> {
    let letters = parse_word(word)?;
    let ty = ty.unwrap_or_else(|| format!("A{}", letters.iter().max().map_or(1, |m| m + 1)));
    let g = group(&ty)?;
    let (ue, ve) = (g.parse_elem(u)?, g.parse_elem(v)?);
    let sch = match scheme {
        Scheme::R => WeightScheme::r_poly(&g.datum),
        Scheme::Smc => WeightScheme::smc(&g.datum),
        Scheme::Ajs => WeightScheme::ajs(&g.datum),
    };
    let masks = u_subwords(&g, &letters, ue);
    let mut rows = Vec::with_capacity(masks.len());
    for m in &masks {
        let c = classify(&g, &letters, m, ve)?;
        let shown: Vec<String> =
            letters.iter().zip(m).map(|(&i, &used)| if used { format!("s{}", i + 1) } else { "\u{b7}".into() }).collect();
        rows.push((format!("({})", shown.join(",")), c));
    }
    let total = subword_sum(&g, &letters, ue, &sch, ve)?;
    if json {
        let rs: Vec<Value> = rows
            .iter()
            .map(|(s, c)| {
                json!({
                    "subword": s, "j_plus": c.j_plus, "j_minus": c.j_minus, "e_plus": c.e_plus, "e_minus": c.e_minus,
                    "reduced": c.is_reduced(), "distinguished": c.is_distinguished()
                })
            })
            .collect();
        return Ok(Outcome::ok(lines(json!({
            "type": ty, "word": format_word(letters.iter().copied()), "u": g.fmt_elem(ue), "v": g.fmt_elem(ve),
            "scheme": format!("{scheme:?}").to_lowercase(), "subwords": rs, "sum": sum_text(&total, scheme)
        }))));
    }
    let mut s = String::new();
    if list {
        for (w, c) in &rows {
            let _ = writeln!(s, "{w}  {c}");
        }
    }
    let _ = writeln!(s, "{}", sum_text(&total, scheme));
    Ok(Outcome::ok(s))
}

/// Ascending coefficient list for R-scheme sums, canonical text otherwise.
fn sum_text(total: &RatFun, scheme: Scheme) -> String {
    let coeffs = (scheme == Scheme::R).then(|| total.as_laurent().and_then(|p| q_coeffs(&p))).flatten();
    match coeffs {
        Some(c) if !c.is_empty() && c[0].0 >= 0 => {
            let top = c.last().expect("nonempty").0;
            let mut dense = vec![Int::ZERO; top as usize + 1];
            for (e, v) in c {
                dense[e as usize] = v;
            }
            dense.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
        }
        _ => total.to_string(),
    }
}

#[allow(clippy::too_many_arguments)]
fn pipedream(
    n: usize,
    k: usize,
    f: Option<Vec<i64>>,
    rows: Option<Vec<String>>,
    count: bool,
    want_g: bool,
    verify: bool,
    ascii: bool,
    json: bool,
) -> Result<Outcome> {
    if let Some(rows) = rows {
        let refs: Vec<&str> = rows.iter().map(|s| s.as_str()).collect();
        let pd = PipeDream::parse_rows(&refs)?;
        if pd.n != n || pd.k != k {
            return Err(Error::DimensionMismatch { expected: n * k, got: pd.n * pd.k });
        }
        let t = pd.trace()?;
        return Ok(Outcome::ok(if json {
            lines(json!({"n": n, "k": k, "window": t.window, "top_labels": t.top_labels, "tiles": tiles_json(&pd)}))
        } else {
            let mut s = String::new();
            if ascii {
                s.push_str(&pd.ascii());
            }
            let _ = writeln!(s, "{}", join(&t.window));
            s
        }));
    }
    let windows = match f {
        Some(f) => {
            if f.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: f.len() });
            }
            vec![f]
        }
        None => bounded_affine_perms(n, k),
    };
    let verifier = if verify { Some(PositroidVerifier::new(n, k)?) } else { None };
    let mut pass = true;
    let mut out = String::new();
    let mut recs = Vec::new();
    for w in &windows {
        let pds = enumerate_pd(w, k)?;
        let mut rec = json!({"window": w, "count": pds.len()});
        let _ = write!(out, "{}", join(w));
        if count {
            let _ = write!(out, "\t{}", pds.len());
        }
        if want_g {
            let g = gtilde(w, k)?;
            let _ = write!(out, "\t{g}");
            rec["gtilde"] = json!(g.to_string());
        }
        if let Some(v) = &verifier {
            let r = v.verify(w)?;
            pass &= r.pass();
            let _ = write!(out, "\t{}", if r.pass() { "PASS" } else { "FAIL" });
            let rows: Vec<Value> = r
                .rows
                .iter()
                .map(|x| json!({"subset": x.subset, "gtilde": x.gtilde.to_string(), "smc": x.smc.to_string(), "equal": x.equal}))
                .collect();
            rec["verify"] = json!({"pass": r.pass(), "rows": rows});
        }
        if !count && !want_g && !verify {
            let _ = write!(out, "\t{} pipe dreams", pds.len());
        }
        out.push('\n');
        if ascii {
            for pd in &pds {
                out.push_str(&pd.ascii());
                out.push('\n');
            }
        }
        if json {
            rec["tilings"] = Value::Array(pds.iter().map(tiles_json).collect());
        }
        recs.push(rec);
    }
    let text = if json { lines(json!({"n": n, "k": k, "permutations": recs, "pass": pass})) } else { out };
    Ok(Outcome::verdict(pass, text))
}

/// Rows bottom first, 1 for elbows.
fn tiles_json(pd: &PipeDream) -> Value {
    json!(pd.tiles.iter().map(|r| r.iter().map(|&e| e as u8).collect::<Vec<u8>>()).collect::<Vec<_>>())
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
