//! Acceptance battery shared by the `selftest` verb and the integration tests.

use crate::coxeter::{WeylElem, WeylGroup};
use crate::error::{CheckResult, Error, Result};
use crate::extaffine::{bounded_affine_perms, ExtAffine};
use crate::hecke::Hecke;
use crate::locaffine::{check_translation_recursions, AffineLoc, MainVerifier};
use crate::locfinite::{ajs_by_recursion, at_y_zero_in_roots, check_richardson_recursion, FlagLoc};
use crate::pipedream::{gtilde, is_bounded, is_symmetric_in_x, k1_closed_form, PipeDream, PositroidVerifier};
use crate::richardson::{check_projected_mc_recursion, check_projected_smc_recursion, ProjLoc};
use crate::ring::{lowest_component, parse_ratfun, Int, RatFun, Var};
use crate::subword::{subword_sum, WeightScheme};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

pub const CRITERIA: [(u8, &str, u64); 9] = [
    (1, "R-polynomials", 5),
    (2, "twisted R-polynomials", 30),
    (3, "SMC restriction formula", 60),
    (4, "duality", 10),
    (5, "limit theorems", 120),
    (6, "main theorem", 300),
    (7, "recursion identities", 300),
    (8, "pipe dreams", 600),
    (9, "AJS-Billey", 60),
];

/// Sub-checks expected to fail, with the reason.
pub const KNOWN_DEVIATIONS: [(u8, &str, &str); 1] = [(
    5,
    "six-chamber table as printed",
    "the printed y^2-y entries disagree with the displayed expression and the twisted limit theorem, both of which give y^2+y",
)];

pub const RNG_SEED: u64 = 0x5eed_2024;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CriterionReport {
    pub fn within_budget(&self) -> bool {
        self.elapsed <= self.budget
    }

    pub fn pass(&self) -> bool {
        self.within_budget() && self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }

    /// True when every failing sub-check is a listed deviation.
    pub fn only_known_failures(&self) -> bool {
        self.within_budget()
            && self.failures().all(|c| KNOWN_DEVIATIONS.iter().any(|&(id, name, _)| id == self.id && name == c.name))
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} {} {} ({:.2} s / {} s)",
            self.id,
            if self.pass() { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        )?;
        for c in &self.checks {
            write!(f, "\n    [{}] {}: {}", if c.ok { "ok" } else { "FAIL" }, c.name, c.detail)?;
        }
        if !self.within_budget() {
            write!(f, "\n    [FAIL] runtime over budget")?;
        }
        Ok(())
    }
}

fn check(name: &str, f: impl FnOnce() -> CheckResult<String>) -> Check {
    match f() {
        Ok(detail) => Check { name: name.into(), ok: true, detail },
        Err(detail) => Check { name: name.into(), ok: false, detail },
    }
}

fn lib<T>(r: Result<T>) -> CheckResult<T> {
    r.map_err(|e| e.to_string())
}

fn group(ty: &str) -> CheckResult<Arc<WeylGroup>> {
    Ok(Arc::new(lib(WeylGroup::parse(ty))?))
}

fn flag(ty: &str) -> CheckResult<FlagLoc> {
    lib(FlagLoc::parse(ty))
}

fn cases(seen: &[bool]) -> CheckResult<String> {
    let n = seen.iter().filter(|&&s| s).count();
    if n == seen.len() {
        Ok(format!("zero residuals, {n}/{} cases exercised", seen.len()))
    } else {
        Err(format!("zero residuals but only {n}/{} cases exercised: {seen:?}", seen.len()))
    }
}

/// Runs one criterion.
pub fn run(id: u8) -> Result<CriterionReport> {
    let &(_, title, budget) = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .ok_or_else(|| Error::IllFormed(format!("no criterion {id}")))?;
    let start = Instant::now();
    let checks = match id {
        1 => criterion1(),
        2 => criterion2(),
        3 => criterion3(),
        4 => criterion4(),
        5 => criterion5(),
        6 => criterion6(),
        7 => criterion7(),
        8 => criterion8(),
        _ => criterion9(),
    };
    Ok(CriterionReport { id, title, checks, elapsed: start.elapsed(), budget: Duration::from_secs(budget) })
}

pub fn run_all() -> Vec<CriterionReport> {
    CRITERIA.iter().map(|c| run(c.0).expect("listed criterion")).collect()
}

fn criterion1() -> Vec<Check> {
    vec![
        check("A4 golden value", || {
            let h = Hecke::new(group("A4")?);
            let u = lib(h.g.parse_elem("s3.s4.s3.s2"))?;
            let w = lib(h.g.parse_elem("s4.s3.s1.s4.s2.s1.s3.s2"))?;
            let got = h.r_poly(u, w).coeff_list();
            if got == "1 -3 4 -3 1" {
                Ok(got)
            } else {
                Err(format!("got {got}"))
            }
        }),
        check("recursion = definition on A3 and B2", || {
            let mut n = 0;
            for ty in ["A3", "B2"] {
                let h = Hecke::new(group(ty)?);
                for u in h.g.elements() {
                    for w in h.g.elements() {
                        if h.r_poly(u, w) != h.r_poly_def(u, w) {
                            return Err(format!("{ty} u={} w={}", h.g.fmt_elem(u), h.g.fmt_elem(w)));
                        }
                        n += 1;
                    }
                }
            }
            Ok(format!("{n} pairs"))
        }),
        check("w0-symmetry on A3", || {
            let h = Hecke::new(group("A3")?);
            let g = &h.g;
            let w0 = g.longest();
            for u in g.elements() {
                for w in g.elements() {
                    let a = g.mul(g.inverse(w), w0);
                    let b = g.mul(g.inverse(u), w0);
                    if h.r_poly(a, b) != h.r_poly(u, w) {
                        return Err(format!("u={} w={}", g.fmt_elem(u), g.fmt_elem(w)));
                    }
                }
            }
            Ok(format!("{} pairs", g.order() * g.order()))
        }),
    ]
}

fn twisted_agree(h: &Hecke, scheme: &WeightScheme, u: WeylElem, v: WeylElem, w: WeylElem) -> CheckResult<()> {
    let g = &h.g;
    let s = lib(subword_sum(g, &g.word_vec(w), u, scheme, v))?;
    if s == RatFun::from_poly(h.twisted_r(u, w, v).to_laurent()) {
        Ok(())
    } else {
        Err(format!("u={} v={} w={}", g.fmt_elem(u), g.fmt_elem(v), g.fmt_elem(w)))
    }
}

fn criterion2() -> Vec<Check> {
    vec![
        check("all A2 triples", || {
            let h = Hecke::new(group("A2")?);
            let scheme = WeightScheme::r_poly(&h.g.datum);
            let mut n = 0;
            for u in h.g.elements() {
                for v in h.g.elements() {
                    for w in h.g.elements() {
                        twisted_agree(&h, &scheme, u, v, w)?;
                        n += 1;
                    }
                }
            }
            Ok(format!("{n} triples"))
        }),
        check("random A3 triples", || {
            let h = Hecke::new(group("A3")?);
            let scheme = WeightScheme::r_poly(&h.g.datum);
            let els: Vec<WeylElem> = h.g.elements().collect();
            let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED);
            for _ in 0..200 {
                let pick = |r: &mut ChaCha8Rng| *els.choose(r).expect("nonempty group");
                let (u, v, w) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
                twisted_agree(&h, &scheme, u, v, w)?;
            }
            Ok(format!("200 triples, seed {RNG_SEED:#x}"))
        }),
        check("identity twist is R", || {
            for ty in ["A2", "A3"] {
                let h = Hecke::new(group(ty)?);
                for u in h.g.elements() {
                    for w in h.g.elements() {
                        if h.twisted_r(u, w, WeylElem::ID) != h.r_poly(u, w) {
                            return Err(format!("{ty} u={} w={}", h.g.fmt_elem(u), h.g.fmt_elem(w)));
                        }
                    }
                }
            }
            Ok("A2, A3".into())
        }),
    ]
}

fn criterion3() -> Vec<Check> {
    vec![
        check("word independence on A2", || {
            let l = flag("A2")?;
            let g = &l.g;
            let scheme = WeightScheme::smc(&g.datum);
            let mut n = 0;
            for w in g.elements() {
                let red = g.word_vec(w);
                let non_reduced: Vec<usize> = [vec![0, 0], red.clone()].concat();
                let third = alternative_word(g, &red).unwrap_or_else(|| [red.clone(), vec![1, 1]].concat());
                for word in [&red, &non_reduced, &third] {
                    for u in g.elements() {
                        if &lib(subword_sum(g, word, u, &scheme, WeylElem::ID))? != l.smc(u, w) {
                            return Err(format!("word {word:?} u={}", g.fmt_elem(u)));
                        }
                    }
                    n += 1;
                }
            }
            Ok(format!("{n} words"))
        }),
        check("partition of unity on A2, A3, B2", || {
            for ty in ["A2", "A3", "B2"] {
                let l = flag(ty)?;
                for w in l.g.elements() {
                    let s: RatFun = l.g.elements().map(|u| l.smc(u, w).clone()).sum();
                    if !s.is_one() {
                        return Err(format!("{ty} at {}: {s}", l.g.fmt_elem(w)));
                    }
                }
            }
            Ok("sums are 1".into())
        }),
        check("support is the Bruhat interval on A3", || {
            let l = flag("A3")?;
            for u in l.g.elements() {
                for w in l.g.elements() {
                    if l.smc(u, w).is_zero() == l.g.bruhat_leq(u, w) {
                        return Err(format!("u={} w={}", l.g.fmt_elem(u), l.g.fmt_elem(w)));
                    }
                }
            }
            Ok("576 pairs".into())
        }),
        check("worked A2 value", || {
            let l = flag("A2")?;
            let g = &l.g;
            let u = lib(g.parse_elem("s2"))?;
            let w = lib(g.parse_elem("s1.s2"))?;
            let got = l.smc(u, w) * &l.prefactor(w);
            let e1 = g.datum.root_char(g.datum.simple_id(0));
            let e2 = g.datum.root_char(g.datum.simple_id(1));
            let y = RatFun::var(Var::Y);
            let one = RatFun::one();
            let expect = &(&(&one + &y) * &(&(-&(&y * &e2)) - &one)) / &(&(&e1 - &one) * &(&e2 - &one));
            let text = got.to_string();
            if text == expect.to_string() && lib(parse_ratfun(&text).map_err(Error::Parse))? == got {
                Ok(text)
            } else {
                Err(format!("got {text}, expected {expect}"))
            }
        }),
    ]
}

/// A different reduced word for the same element, if one exists.
fn alternative_word(g: &WeylGroup, word: &[usize]) -> Option<Vec<usize>> {
    let w = g.from_word(word).ok()?;
    let mut x = w;
    let mut rev = Vec::new();
    while x != WeylElem::ID {
        let i = (0..g.rank()).rev().find(|&i| g.has_right_descent(x, i))?;
        rev.push(i);
        x = g.rmul_s(x, i);
    }
    rev.reverse();
    (rev != word).then_some(rev)
}

fn criterion4() -> Vec<Check> {
    ["A2", "B2"]
        .iter()
        .map(|&ty| {
            check(&format!("pairing matrix on {ty}"), || {
                let l = flag(ty)?;
                let g = &l.g;
                for w in g.elements() {
                    for u in g.elements() {
                        let p = l.pairing(l.mc_x_table(w), l.mc_dual_table(u));
                        let ok = if w == u { p.is_one() } else { p.is_zero() };
                        if !ok {
                            return Err(format!("w={} u={}: {p}", g.fmt_elem(w), g.fmt_elem(u)));
                        }
                    }
                }
                Ok(format!("{0}x{0} identity", g.order()))
            })
        })
        .collect()
}

const CHAMBERS: [&str; 6] = ["e", "s1", "s2", "s1.s2", "s2.s1", "s1.s2.s1"];

fn six_chamber(expect: [&str; 6]) -> CheckResult<String> {
    let l = flag("A2")?;
    let g = &l.g;
    let u = lib(g.parse_elem("s2"))?;
    let w = lib(g.parse_elem("s1.s2"))?;
    let mut got = Vec::new();
    let mut ok = true;
    for (v, e) in CHAMBERS.iter().zip(expect) {
        let lim = lib(l.limit_in_chamber(u, w, lib(g.parse_elem(v))?))?;
        ok &= lim == lib(parse_ratfun(e).map_err(Error::Parse))?;
        got.push(lim.to_string());
    }
    let got = got.join(", ");
    if ok {
        Ok(got)
    } else {
        Err(format!("computed ({got}), expected ({})", expect.join(", ")))
    }
}

fn criterion5() -> Vec<Check> {
    vec![
        check("limit is R(-y) on A2 and A3", || {
            let mut n = 0;
            for ty in ["A2", "A3"] {
                let l = flag(ty)?;
                for u in l.g.elements() {
                    for w in l.g.elements() {
                        let lim = lib(l.limit_to_rpoly(u, w))?;
                        if lim != RatFun::from_poly(l.hecke.r_poly(u, w).at_neg_y()) {
                            return Err(format!("{ty} u={} w={}", l.g.fmt_elem(u), l.g.fmt_elem(w)));
                        }
                        n += 1;
                    }
                }
            }
            Ok(format!("{n} pairs"))
        }),
        check("six-chamber table as printed", || six_chamber(["-y-1", "0", "y^2-y", "0", "y^2-y", "0"])),
        check("six-chamber table from the twisted limit theorem", || {
            six_chamber(["-y-1", "0", "y^2+y", "0", "y^2+y", "0"])
        }),
        check("twisted limits on A2", || {
            let l = flag("A2")?;
            let g = &l.g;
            for u in g.elements() {
                for v in g.elements() {
                    for w in g.elements() {
                        let (lim, r) = lib(l.limit_to_twisted(u, v, w))?;
                        if lim != r {
                            return Err(format!("u={} v={} w={}: {lim} vs {r}", g.fmt_elem(u), g.fmt_elem(v), g.fmt_elem(w)));
                        }
                    }
                }
            }
            Ok("216 triples".into())
        }),
    ]
}

fn criterion6() -> Vec<Check> {
    let mut out: Vec<Check> = [("GL2", vec![1, 0]), ("GL2", vec![2, 0]), ("GL3", vec![1, 0, 0]), ("GL3", vec![1, 1, 0])]
        .into_iter()
        .map(|(ty, lam)| {
            check(&format!("{ty} lambda={lam:?}"), || {
                let m = lib(MainVerifier::parse(ty, &lam))?;
                let reps = lib(m.verify_all())?;
                let points: usize = reps.iter().map(|r| r.rows.len()).sum();
                if let Some(bad) = reps.iter().find(|r| !r.pass()) {
                    return Err(format!("u={} w={}", m.proj.g().fmt_elem(bad.u), m.proj.g().fmt_elem(bad.w)));
                }
                Ok(format!("{} pairs, {points} fixed points", reps.len()))
            })
        })
        .collect();
    out.push(check("base values at t_lambda", || {
        let y = RatFun::var(Var::Y);
        let one = RatFun::one();
        for (ty, lam) in [("GL2", vec![1, 0]), ("GL2", vec![2, 0]), ("GL3", vec![1, 0, 0]), ("GL3", vec![1, 1, 0])] {
            let p = lib(ProjLoc::parse(ty, &lam))?;
            let g = p.g();
            let t = lib(p.aff.translation(&lam))?;
            let got = AffineLoc::new(p.aff.clone()).vector(&t).get(&t);
            let (mut restricted, mut coefficient, mut euler) = (one.clone(), one.clone(), one.clone());
            for &(a, c) in &p.par.rest_plus {
                let e = g.datum.root_char(a);
                let d = &one + &(&y * &e);
                restricted = &restricted * &(&(&one - &e) / &d).pow(c as i32);
                coefficient = &coefficient * &d.inv().pow(c as i32);
                euler = &euler * &(&one - &e).pow(c as i32);
            }
            if got != restricted || &got / &euler != coefficient {
                return Err(format!("{ty} {lam:?}: {got}"));
            }
            let lhs = lib(p.lhs_main(&t, WeylElem::ID))?;
            if lhs != got {
                return Err(format!("{ty} {lam:?}: finite side {lhs}"));
            }
        }
        Ok("restriction and point-class coefficient agree".into())
    }));
    out
}

fn criterion7() -> Vec<Check> {
    vec![
        check("Richardson MC recursion on A2", || cases(&check_richardson_recursion(&flag("A2")?)?)),
        check("projected MC recursion, GL3 lambda=(1,0,0)", || {
            cases(&check_projected_mc_recursion(&lib(ProjLoc::parse("GL3", &[1, 0, 0]))?)?)
        }),
        check("projected SMC recursion, GL3 lambda=(1,0,0)", || {
            cases(&check_projected_smc_recursion(&lib(ProjLoc::parse("GL3", &[1, 0, 0]))?)?)
        }),
        check("translation recursions, GL2, |mu| <= 2", || {
            let a = Arc::new(lib(ExtAffine::parse("GL2"))?);
            cases(&check_translation_recursions(&AffineLoc::new(a), 2)?)
        }),
    ]
}

fn criterion8() -> Vec<Check> {
    vec![
        check("n=7 k=3 reading permutation", || {
            let pd = lib(PipeDream::parse_rows(&["XBBXBBX", "BBXBXBX", "XXBXXBX"]))?;
            let w = lib(pd.trace())?.window;
            if w == [2, 6, 5, 10, 8, 11, 7] && is_bounded(&w, 3) {
                Ok(format!("{w:?}"))
            } else {
                Err(format!("{w:?}"))
            }
        }),
        check("k=1 closed form, n <= 6", || {
            let mut n_sets = 0;
            for n in 1..=6usize {
                for bits in 1u64..1 << n {
                    let a: Vec<usize> = (1..=n).filter(|j| bits >> (j - 1) & 1 == 1).collect();
                    let f = lib(lib(PipeDream::single_row(n, &a))?.trace())?.window;
                    let af: Vec<usize> = (1..=n).filter(|&i| f[i - 1] != i as i64).collect();
                    if af != a || lib(gtilde(&f, 1))? != k1_closed_form(n, &a) {
                        return Err(format!("n={n} A={a:?}"));
                    }
                    n_sets += 1;
                }
            }
            Ok(format!("{n_sets} subsets"))
        }),
        check("x-symmetry, n <= 4, k <= 2", || {
            let mut n_f = 0;
            for n in 2..=4 {
                for k in 1..=2 {
                    for f in bounded_affine_perms(n, k) {
                        if !is_symmetric_in_x(&lib(gtilde(&f, k))?, k) {
                            return Err(format!("n={n} k={k} f={f:?}"));
                        }
                        n_f += 1;
                    }
                }
            }
            Ok(format!("{n_f} bounded permutations"))
        }),
        check("positroid classes", || {
            let mut n_f = 0;
            for (n, k) in [(2, 1), (3, 1), (4, 1), (3, 2), (4, 2)] {
                let v = lib(PositroidVerifier::new(n, k))?;
                for r in lib(v.verify_all())? {
                    if !r.pass() {
                        return Err(format!("n={n} k={k} f={:?}", r.window));
                    }
                    n_f += 1;
                }
            }
            Ok(format!("{n_f} bounded permutations"))
        }),
    ]
}

fn criterion9() -> Vec<Check> {
    vec![
        check("subword formula = recursion on A2, A3", || {
            let mut n = 0;
            for ty in ["A2", "A3"] {
                let l = flag(ty)?;
                let rec = ajs_by_recursion(&l.g);
                for u in l.g.elements() {
                    for w in l.g.elements() {
                        if lib(l.ajs_billey(u, w))? != rec[&(u, w)] {
                            return Err(format!("{ty} u={} w={}", l.g.fmt_elem(u), l.g.fmt_elem(w)));
                        }
                        n += 1;
                    }
                }
            }
            Ok(format!("{n} pairs"))
        }),
        check("lowest-degree part of SMC on A2", || {
            let l = flag("A2")?;
            let g = &l.g;
            for u in g.elements() {
                for w in g.elements() {
                    if !g.bruhat_leq(u, w) {
                        continue;
                    }
                    let p = lib(at_y_zero_in_roots(g, l.smc(u, w)))?;
                    let (k, comp) = lowest_component(&p, g.length(w) as u32 + 1).ok_or("zero restriction")?;
                    if k as usize != g.length(u) || comp != lib(l.ajs_billey(u, w))?.scale(&Int::factorial(k)) {
                        return Err(format!("u={} w={}", g.fmt_elem(u), g.fmt_elem(w)));
                    }
                }
            }
            Ok("all u <= w".into())
        }),
    ]
}
