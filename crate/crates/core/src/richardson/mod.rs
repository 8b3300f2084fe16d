use crate::coxeter::{pair, RootId, WeylElem, WeylGroup};
use crate::error::{CheckResult, Error, Result};
use crate::extaffine::{ExtAffine, ExtAffineElem};
use crate::locfinite::{FlagLoc, LocTable};
use crate::ring::{RatFun, Var};
use rustc_hash::FxHashMap;
use std::sync::{Arc, Mutex};

/// Which way `s_i` moves a minimal coset representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetMove {
    /// `s_i w < w`, and `s_i w` is again minimal.
    Down,
    /// `s_i w > w` with `s_i w` minimal.
    Up,
    /// `s_i w = w s_j` with `s_j` in the parabolic.
    Absorbed(usize),
}

/// Classifies `s_i w` for `w` minimal in `w W_P`.
pub fn coset_move(g: &WeylGroup, p: &[usize], i: usize, w: WeylElem) -> CosetMove {
    let sw = g.lmul_s(i, w);
    if g.length(sw) < g.length(w) {
        return CosetMove::Down;
    }
    let x = g.mul(g.inverse(w), sw);
    match p.iter().find(|&&j| g.s(j) == x) {
        Some(&j) => CosetMove::Absorbed(j),
        None => CosetMove::Up,
    }
}

/// Parabolic data attached to a dominant cocharacter.
#[derive(Clone, Debug)]
pub struct ParabolicDatum {
    pub lambda: Vec<i64>,
    /// Simple reflections fixing `lambda`, 0-based.
    pub p: Vec<usize>,
    pub wp: Vec<WeylElem>,
    pub reps: Vec<WeylElem>,
    rep_pos: FxHashMap<WeylElem, usize>,
    coset_pos: Vec<usize>,
    pub rp_plus: Vec<RootId>,
    /// Positive roots with `<lambda, alpha> > 0`, with that pairing.
    pub rest_plus: Vec<(RootId, i64)>,
}

impl ParabolicDatum {
    pub fn new(g: &WeylGroup, lambda: &[i64]) -> Result<ParabolicDatum> {
        let d = &g.datum;
        if lambda.len() != d.dim {
            return Err(Error::DimensionMismatch { expected: d.dim, got: lambda.len() });
        }
        let mut p = Vec::new();
        for i in 0..g.rank() {
            let c = pair(&d.roots[d.simple_id(i)].vec, lambda);
            if c < 0 {
                return Err(Error::IllFormed(format!("cocharacter {lambda:?} is not dominant")));
            }
            if c == 0 {
                p.push(i);
            }
        }
        let wp = g.parabolic_subgroup(&p);
        let reps = g.min_coset_reps(&p);
        let rep_pos: FxHashMap<WeylElem, usize> = reps.iter().enumerate().map(|(k, &w)| (w, k)).collect();
        let coset_pos = g.elements().map(|x| rep_pos[&g.coset_rep(x, &p)]).collect();
        let mut rp_plus = Vec::new();
        let mut rest_plus = Vec::new();
        for r in d.positive() {
            let c = pair(&d.roots[r].vec, lambda);
            if c == 0 {
                rp_plus.push(r);
            } else {
                rest_plus.push((r, c));
            }
        }
        Ok(ParabolicDatum { lambda: lambda.to_vec(), p, wp, reps, rep_pos, coset_pos, rp_plus, rest_plus })
    }

    /// Position of a minimal representative.
    pub fn pos(&self, z: WeylElem) -> Option<usize> {
        self.rep_pos.get(&z).copied()
    }

    /// Position of the coset of `x`.
    pub fn coset_of(&self, x: WeylElem) -> usize {
        self.coset_pos[x.idx()]
    }

    pub fn is_rep(&self, z: WeylElem) -> bool {
        self.rep_pos.contains_key(&z)
    }
}

/// Localized classes on `G/P` and the finite side of the comparison with the affine Grassmannian.
pub struct ProjLoc {
    pub flag: Arc<FlagLoc>,
    pub aff: Arc<ExtAffine>,
    pub par: ParabolicDatum,
    lambda_gp: Vec<RatFun>,
    mcp: Mutex<FxHashMap<(WeylElem, WeylElem), Arc<LocTable>>>,
}

impl ProjLoc {
    pub fn new(flag: Arc<FlagLoc>, lambda: &[i64]) -> Result<ProjLoc> {
        let g = flag.g.clone();
        let par = ParabolicDatum::new(&g, lambda)?;
        let d = &g.datum;
        let lambda_gp = par
            .reps
            .iter()
            .map(|&z| {
                par.rest_plus
                    .iter()
                    .map(|&(a, _)| &RatFun::one() + &(&RatFun::var(Var::Y) * &d.root_char(g.act_root(z, a))))
                    .product()
            })
            .collect();
        Ok(ProjLoc { aff: Arc::new(ExtAffine::new(g)?), flag, par, lambda_gp, mcp: Mutex::new(FxHashMap::default()) })
    }

    pub fn parse(ty: &str, lambda: &[i64]) -> Result<ProjLoc> {
        ProjLoc::new(Arc::new(FlagLoc::parse(ty)?), lambda)
    }

    pub fn g(&self) -> &WeylGroup {
        &self.flag.g
    }

    pub fn n_points(&self) -> usize {
        self.par.reps.len()
    }

    /// `MC(X(w)) * SMC(Y(u))` at `z`.
    pub fn mc_richardson(&self, u: WeylElem, w: WeylElem, z: WeylElem) -> RatFun {
        self.flag.mc_x(w, z) * self.flag.smc(u, z)
    }

    pub fn mc_richardson_table(&self, u: WeylElem, w: WeylElem) -> LocTable {
        self.flag.mc_x_table(w).mul(self.flag.smc_table(u))
    }

    /// `(pi_* F)|_{zP} = sum_{v in W_P} F|_{zv} / prod_{alpha in R_P^+} (1 - e^{zv alpha})`.
    pub fn pushforward(&self, t: &LocTable) -> LocTable {
        let g = self.g();
        let d = &g.datum;
        let values = self
            .par
            .reps
            .iter()
            .map(|&z| {
                self.par
                    .wp
                    .iter()
                    .map(|&v| {
                        let x = g.mul(z, v);
                        let den: RatFun = self
                            .par
                            .rp_plus
                            .iter()
                            .map(|&a| &RatFun::one() - &d.root_char(g.act_root(x, a)))
                            .product();
                        t.at(x) / &den
                    })
                    .sum()
            })
            .collect();
        LocTable { values }
    }

    /// Left action of `s_i` on a table over `W^P`.
    pub fn s_left(&self, t: &LocTable, i: usize) -> LocTable {
        let g = self.g();
        let si = g.s(i);
        let values =
            self.par.reps.iter().map(|&z| g.act_ratfun(si, &t.values[self.par.coset_of(g.lmul_s(i, z))])).collect();
        LocTable { values }
    }

    /// `MC(Pi_{u,w})` over `W^P`; `w` need not be minimal.
    pub fn mc_projected(&self, u: WeylElem, w: WeylElem) -> Arc<LocTable> {
        if let Some(t) = self.mcp.lock().unwrap().get(&(u, w)) {
            return t.clone();
        }
        let t = Arc::new(self.pushforward(&self.mc_richardson_table(u, w)));
        self.mcp.lock().unwrap().insert((u, w), t.clone());
        t
    }

    /// `lambda_y(T^*(G/P))` at the `k`-th fixed point.
    pub fn lambda_gp(&self, k: usize) -> &RatFun {
        &self.lambda_gp[k]
    }

    pub fn smc_projected(&self, u: WeylElem, w: WeylElem) -> LocTable {
        let m = self.mc_projected(u, w);
        LocTable { values: m.values.iter().zip(&self.lambda_gp).map(|(a, b)| a / b).collect() }
    }

    pub fn make_f(&self, u: WeylElem, w: WeylElem) -> ExtAffineElem {
        self.aff.make_f(u, w, &self.par.lambda)
    }

    pub fn split_f(&self, f: &ExtAffineElem) -> Result<(WeylElem, WeylElem)> {
        self.aff.split_f(f, &self.par.lambda, &self.par.reps)
    }

    pub fn smc_projected_f(&self, f: &ExtAffineElem) -> Result<LocTable> {
        let (u, w) = self.split_f(f)?;
        Ok(self.smc_projected(u, w))
    }

    /// `prod_{alpha > 0, <lambda, alpha> > 0} ((1 - e^{v alpha}) / (1 + y e^{v alpha}))^{<lambda, alpha> - 1}`.
    pub fn normal_factor(&self, v: WeylElem) -> RatFun {
        let g = self.g();
        let y = RatFun::var(Var::Y);
        self.par
            .rest_plus
            .iter()
            .filter(|&&(_, c)| c > 1)
            .map(|&(a, c)| {
                let e = g.datum.root_char(g.act_root(v, a));
                (&(&RatFun::one() - &e) / &(&RatFun::one() + &(&y * &e))).pow(c as i32 - 1)
            })
            .product()
    }

    /// Finite side of the comparison at the fixed point `t_{v lambda}`, `v` minimal.
    pub fn lhs_main(&self, f: &ExtAffineElem, v: WeylElem) -> Result<RatFun> {
        let k = self.par.pos(v).ok_or_else(|| Error::IllFormed(format!("{} is not minimal", self.g().fmt_elem(v))))?;
        let t = self.smc_projected_f(f)?;
        Ok(&t.values[k] * &self.normal_factor(v))
    }

    /// All `(u, w)` with `w` minimal.
    pub fn pairs(&self) -> Vec<(WeylElem, WeylElem)> {
        let g = self.g();
        g.elements().flat_map(|u| self.par.reps.iter().map(move |&w| (u, w))).collect()
    }
}

/// Left recursion of projected MC classes; returns which of the eight cases occurred.
pub fn check_projected_mc_recursion(p: &ProjLoc) -> CheckResult<[bool; 8]> {
    let g = p.g();
    let y = RatFun::var(Var::Y);
    let one = RatFun::one();
    let opy = &one + &y;
    let mut seen = [false; 8];
    for i in 0..g.rank() {
        let em = g.datum.root_char(g.datum.simple_id(i)).inv();
        let c = &one - &em;
        let yc = &y * &c;
        for &w in &p.par.reps {
            for u in g.elements() {
                let su = g.lmul_s(i, u);
                let sw = g.lmul_s(i, w);
                let u_up = g.length(su) > g.length(u);
                let m = p.mc_projected(u, w);
                let sm = p.s_left(&m, i);
                let s_su = p.s_left(&p.mc_projected(su, w), i);
                let (case, lhs, rhs) = match (coset_move(g, &p.par.p, i, w), u_up) {
                    (CosetMove::Up, true) => (
                        0,
                        sm.scale(&(&opy * &em)).sub(&m.scale(&opy)),
                        s_su.scale(&yc).add(&p.mc_projected(u, sw).scale(&c)),
                    ),
                    (CosetMove::Absorbed(j), true) => {
                        let usj = g.rmul_s(u, j);
                        let t = p.mc_projected(usj, w);
                        if g.length(usj) < g.length(u) {
                            (1, sm.scale(&(&opy * &em)).sub(&m.scale(&opy)), s_su.scale(&yc).add(&t.scale(&c)))
                        } else {
                            (2, sm.sub(&m).scale(&(&opy * &em)), s_su.scale(&yc).sub(&t.scale(&yc)))
                        }
                    }
                    (CosetMove::Up, false) => (
                        3,
                        sm.scale(&opy).sub(&m.scale(&opy)),
                        p.mc_projected(u, sw).scale(&c).sub(&s_su.scale(&c)),
                    ),
                    (CosetMove::Absorbed(j), false) => {
                        let usj = g.rmul_s(u, j);
                        let t = p.mc_projected(usj, w);
                        if g.length(usj) < g.length(u) {
                            (4, sm.scale(&opy).sub(&m.scale(&opy)), t.scale(&c).sub(&s_su.scale(&c)))
                        } else {
                            (
                                5,
                                sm.scale(&opy).sub(&m.scale(&(&opy * &em))),
                                t.scale(&-&yc).sub(&s_su.scale(&c)),
                            )
                        }
                    }
                    (CosetMove::Down, true) => (
                        6,
                        sm.sub(&m).scale(&(&opy * &em)),
                        s_su.scale(&yc).sub(&p.mc_projected(u, sw).scale(&yc)),
                    ),
                    (CosetMove::Down, false) => (
                        7,
                        sm.sub(&m.scale(&em)).scale(&opy),
                        s_su.scale(&-&c).sub(&p.mc_projected(u, sw).scale(&yc)),
                    ),
                };
                seen[case] = true;
                if lhs != rhs {
                return Err(format!("case {} at u={} w={} i={}", case + 1, g.fmt_elem(u), g.fmt_elem(w), i + 1));
            }
            }
        }
    }
    Ok(seen)
}

/// Projected SMC recursion in affine form; returns which of the four cases occurred.
pub fn check_projected_smc_recursion(p: &ProjLoc) -> CheckResult<[bool; 4]> {
    let g = p.g();
    let a = &p.aff;
    let y = RatFun::var(Var::Y);
    let one = RatFun::one();
    let opy = &one + &y;
    let mut seen = [false; 4];
    for (u, w) in p.pairs() {
        let f = p.make_f(u, w);
        let s_f = p.smc_projected_f(&f).map_err(|e| e.to_string())?;
        for i in 0..g.rank() {
            let ai = i + 1;
            let em = g.datum.root_char(g.datum.simple_id(i)).inv();
            let c = &one - &em;
            let sf = a.lmul_s(ai, &f);
            let fs = a.rmul_s(&f, ai);
            let t_sf = p.s_left(&p.smc_projected_f(&sf).map_err(|e| e.to_string())?, i);
            let t_fs = p.smc_projected_f(&fs).map_err(|e| e.to_string())?;
            let sm = p.s_left(&s_f, i);
            let (case, lhs, rhs) = match (a.has_left_descent(ai, &f), a.has_right_descent(&f, ai)) {
                (true, true) => (0, sm.sub(&s_f).scale(&opy), t_fs.scale(&c).sub(&t_sf.scale(&c))),
                (true, false) => (
                    1,
                    sm.scale(&opy).sub(&s_f.scale(&(&opy * &em))),
                    t_sf.scale(&-&c).sub(&t_fs.scale(&(&y * &c))),
                ),
                (false, true) => (
                    2,
                    sm.scale(&(&opy * &em)).sub(&s_f.scale(&opy)),
                    t_sf.scale(&(&y * &c)).add(&t_fs.scale(&c)),
                ),
                (false, false) => (
                    3,
                    sm.sub(&s_f).scale(&(&opy * &em)),
                    t_sf.scale(&(&y * &c)).sub(&t_fs.scale(&(&y * &c))),
                ),
            };
            seen[case] = true;
            assert_eq!(lhs, rhs, "case {} at {}", case + 1, a.fmt_elem(&f));
        }
    }
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::locfinite;

    fn proj(ty: &str, lam: &[i64]) -> ProjLoc {
        ProjLoc::parse(ty, lam).unwrap()
    }

    fn ones(n: usize) -> LocTable {
        LocTable { values: vec![RatFun::one(); n] }
    }

    #[test]
    fn pushforward_of_one() {
        for (ty, lam) in [("GL3", vec![1, 0, 0]), ("GL3", vec![1, 1, 0]), ("A3", vec![1, 1, 1]), ("B2", vec![]), ("G2", vec![])] {
            let lam = if lam.is_empty() { ExtAffine::parse(ty).unwrap().theta_coroot().to_vec() } else { lam };
            let p = proj(ty, &lam);
            assert!(!p.par.p.is_empty());
            let t = p.pushforward(&ones(p.flag.n()));
            assert_eq!(t, ones(p.n_points()));
        }
    }

    #[test]
    fn regular_pushforward_is_identity() {
        let p = proj("GL3", &[2, 1, 0]);
        assert!(p.par.p.is_empty());
        let u = p.g().parse_elem("s1").unwrap();
        let t = p.flag.smc_table(u);
        let pushed = p.pushforward(t);
        for (k, &z) in p.par.reps.iter().enumerate() {
            assert_eq!(&pushed.values[k], t.at(z));
        }
    }

    #[test]
    fn pushforward_commutes_with_left_action() {
        let p = proj("GL3", &[1, 0, 0]);
        let g = p.g();
        for u in g.elements() {
            for w in g.elements() {
                let t = p.mc_richardson_table(u, w);
                for i in 0..g.rank() {
                    let a = p.s_left(&p.pushforward(&t), i);
                    let b = p.pushforward(&locfinite::s_left(g, &t, i));
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn richardson_support_and_base() {
        let p = proj("GL3", &[1, 0, 0]);
        let g = p.g();
        assert_eq!(&p.mc_richardson(WeylElem::ID, WeylElem::ID, WeylElem::ID), p.flag.lefschetz(WeylElem::ID));
        for u in g.elements() {
            for w in g.elements() {
                for z in g.elements() {
                    let v = p.mc_richardson(u, w, z);
                    let expect_zero = !(g.bruhat_leq(z, w) && g.bruhat_leq(u, z));
                    assert_eq!(v.is_zero(), expect_zero);
                }
            }
        }
        let u = g.s(0);
        let w = g.parse_elem("s1.s2").unwrap();
        assert_eq!(p.mc_richardson(u, w, u), p.flag.mc_x(w, u) * p.flag.smc(u, u));
    }

    #[test]
    fn translation_base_values() {
        let p = proj("GL2", &[1, 0]);
        let f = p.make_f(WeylElem::ID, WeylElem::ID);
        assert_eq!(f, p.aff.translation(&[1, 0]).unwrap());
        let y = RatFun::var(Var::Y);
        let e = p.g().datum.root_char(p.g().datum.simple_id(0));
        let expect = &(&RatFun::one() - &e) / &(&RatFun::one() + &(&y * &e));
        assert_eq!(p.smc_projected_f(&f).unwrap().values[0], expect);
        assert_eq!(p.lhs_main(&f, WeylElem::ID).unwrap(), expect);
        for lam in [vec![2, 0, 0], vec![2, 1, 0], vec![3, 1, 0]] {
            let p = proj("GL3", &lam);
            let f = p.make_f(WeylElem::ID, WeylElem::ID);
            let d = &p.g().datum;
            let expect: RatFun = d
                .positive()
                .map(|a| {
                    let e = d.root_char(a);
                    (&(&RatFun::one() - &e) / &(&RatFun::one() + &(&y * &e))).pow(pair(&d.roots[a].vec, &lam) as i32)
                })
                .product();
            assert_eq!(p.lhs_main(&f, WeylElem::ID).unwrap(), expect, "{lam:?}");
        }
    }

    #[test]
    fn split_rejects_outside_image() {
        let p = proj("GL3", &[1, 0, 0]);
        let f = p.aff.translation(&[2, 0, 0]).unwrap();
        assert!(matches!(p.split_f(&f), Err(Error::NotInImage(_))));
        for (u, w) in p.pairs() {
            assert_eq!(p.split_f(&p.make_f(u, w)).unwrap(), (u, w));
        }
    }

    #[test]
    fn coset_trichotomy_a3() {
        let g = WeylGroup::parse("A3").unwrap();
        for mask in 0u32..8 {
            let p: Vec<usize> = (0..3).filter(|i| mask >> i & 1 == 1).collect();
            let reps = g.min_coset_reps(&p);
            for &w in &reps {
                for i in 0..3 {
                    let sw = g.lmul_s(i, w);
                    let down = g.length(sw) < g.length(w);
                    let up_min = !down && reps.contains(&sw);
                    let absorbed = !down && p.iter().any(|&j| g.rmul_s(w, j) == sw);
                    assert_eq!(down as u8 + up_min as u8 + absorbed as u8, 1);
                    if down {
                        assert!(reps.contains(&sw));
                    }
                    let m = coset_move(&g, &p, i, w);
                    match m {
                        CosetMove::Down => assert!(down),
                        CosetMove::Up => assert!(up_min),
                        CosetMove::Absorbed(j) => assert!(absorbed && g.rmul_s(w, j) == sw),
                    }
                }
            }
        }
    }

    #[test]
    fn descents_of_f() {
        for lam in [vec![1, 0, 0], vec![1, 1, 0], vec![2, 1, 0], vec![2, 0, 0]] {
            let p = proj("GL3", &lam);
            let g = p.g();
            let a = &p.aff;
            for (u, w) in p.pairs() {
                let f = p.make_f(u, w);
                assert_eq!(a.length(&f) + g.length(w), g.length(u) + a.length(&a.translation(&lam).unwrap()));
                for i in 0..g.rank() {
                    let ai = i + 1;
                    let su_down = g.length(g.lmul_s(i, u)) < g.length(u);
                    assert_eq!(a.has_left_descent(ai, &f), su_down);
                    let right = match coset_move(g, &p.par.p, i, w) {
                        CosetMove::Up => true,
                        CosetMove::Down => false,
                        CosetMove::Absorbed(j) => {
                            assert_eq!(a.make_f(g.rmul_s(u, j), w, &lam), a.rmul_s(&f, ai));
                            g.length(g.rmul_s(u, j)) < g.length(u)
                        }
                    };
                    assert_eq!(a.has_right_descent(&f, ai), right);
                }
            }
        }
    }

    #[test]
    fn not_minimal_pushforward() {
        let p = proj("GL3", &[1, 0, 0]);
        let g = p.g();
        let y = RatFun::var(Var::Y);
        for &w in &p.par.reps {
            for &j in &p.par.p {
                let wsj = g.rmul_s(w, j);
                for u in g.elements() {
                    let usj = g.rmul_s(u, j);
                    let lhs = p.mc_projected(u, wsj);
                    let rhs = if g.length(usj) < g.length(u) {
                        (*p.mc_projected(usj, w)).clone()
                    } else {
                        p.mc_projected(u, w)
                            .scale(&-(&RatFun::one() + &y))
                            .sub(&p.mc_projected(usj, w).scale(&y))
                    };
                    assert_eq!(*lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn projected_mc_recursion_eight_cases() {
        let mut seen = [false; 8];
        for (ty, lam) in [("GL3", vec![1, 0, 0]), ("GL3", vec![1, 1, 0]), ("A3", vec![1, 1, 1])] {
            let s = check_projected_mc_recursion(&proj(ty, &lam)).unwrap();
            for k in 0..8 {
                seen[k] |= s[k];
            }
        }
        assert!(seen.iter().all(|&s| s), "{seen:?}");
    }

    #[test]
    fn projected_smc_recursion_four_cases() {
        let mut seen = [false; 4];
        for (ty, lam) in [("GL2", vec![1, 0]), ("GL3", vec![1, 0, 0]), ("GL3", vec![1, 1, 0])] {
            let s = check_projected_smc_recursion(&proj(ty, &lam)).unwrap();
            for k in 0..4 {
                seen[k] |= s[k];
            }
        }
        assert!(seen.iter().all(|&s| s));
    }
}
