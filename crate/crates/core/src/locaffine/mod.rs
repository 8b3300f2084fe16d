use crate::coxeter::{RootId, WeylElem};
use crate::error::{CheckResult, Result};
use crate::extaffine::{ExtAffine, ExtAffineElem};
use crate::richardson::ProjLoc;
use crate::ring::{RatFun, Var};
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

/// `SMC(Sigma^f)|_t` for every `f` at one fixed point `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLocVector {
    pub base: ExtAffineElem,
    pub values: BTreeMap<ExtAffineElem, RatFun>,
}

impl AffineLocVector {
    pub fn get(&self, f: &ExtAffineElem) -> RatFun {
        self.values.get(f).cloned().unwrap_or_else(RatFun::zero)
    }
}

/// Finite part of `alpha_i`, with `alpha_0 = -theta`.
pub fn finite_simple(a: &ExtAffine, i: usize) -> RootId {
    let d = &a.g.datum;
    if i == 0 {
        d.neg(a.theta())
    } else {
        d.simple_id(i - 1)
    }
}

/// `e^{g alpha_i}` on the finite torus.
pub fn affine_simple_char(a: &ExtAffine, g: &ExtAffineElem, i: usize) -> RatFun {
    a.g.datum.root_char(a.g.act_root(g.w, finite_simple(a, i)))
}

/// Restrictions of affine Segre motivic Chern classes by the right recursion.
pub struct AffineLoc {
    pub a: Arc<ExtAffine>,
    cache: Mutex<FxHashMap<ExtAffineElem, Arc<AffineLocVector>>>,
}

impl AffineLoc {
    pub fn new(a: Arc<ExtAffine>) -> AffineLoc {
        AffineLoc { a, cache: Mutex::new(FxHashMap::default()) }
    }

    /// All values at `t`, from its reduced factorization.
    pub fn vector(&self, t: &ExtAffineElem) -> Arc<AffineLocVector> {
        if let Some(v) = self.cache.lock().unwrap().get(t) {
            return v.clone();
        }
        let (omega, word) = self.a.reduced_factorization(t);
        let v = Arc::new(self.vector_along(&omega, &word));
        self.cache.lock().unwrap().insert(t.clone(), v.clone());
        v
    }

    /// Values at `omega * s_{j_1} ... s_{j_m}`, walking the given word.
    pub fn vector_along(&self, omega: &ExtAffineElem, word: &[usize]) -> AffineLocVector {
        let a = &self.a;
        let y = RatFun::var(Var::Y);
        let one = RatFun::one();
        let opy = &one + &y;
        let mut vals: BTreeMap<ExtAffineElem, RatFun> = BTreeMap::new();
        vals.insert(omega.clone(), RatFun::one());
        let mut g = omega.clone();
        for &i in word {
            let e = affine_simple_char(a, &g, i).inv();
            let den = &one + &(&y * &e);
            let ome = &one - &e;
            let mut keys: Vec<ExtAffineElem> = vals.keys().cloned().collect();
            keys.extend(vals.keys().map(|f| a.rmul_s(f, i)).collect::<Vec<_>>());
            keys.sort();
            keys.dedup();
            let mut next = BTreeMap::new();
            for f in keys {
                let fs = a.rmul_s(&f, i);
                let x = vals.get(&f);
                let z = vals.get(&fs);
                let zero = RatFun::zero();
                let (x, z) = (x.unwrap_or(&zero), z.unwrap_or(&zero));
                let num = if a.has_right_descent(&f, i) {
                    &(&opy * x) + &(&ome * z)
                } else {
                    &(&(&opy * &e) * x) - &(&(&y * &ome) * z)
                };
                if !num.is_zero() {
                    next.insert(f, &num / &den);
                }
            }
            vals = next;
            g = a.rmul_s(&g, i);
        }
        AffineLocVector { base: g, values: vals }
    }
}

/// One fixed point of the comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainRow {
    pub fixed_point: WeylElem,
    pub lhs: RatFun,
    pub rhs: RatFun,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainReport {
    pub u: WeylElem,
    pub w: WeylElem,
    pub f: ExtAffineElem,
    pub rows: Vec<MainRow>,
}

impl MainReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.equal)
    }
}

/// Compares the finite `G/P` side with the affine restrictions at every `t_{v lambda}`.
pub struct MainVerifier {
    pub proj: Arc<ProjLoc>,
    pub aff: AffineLoc,
}

impl MainVerifier {
    pub fn new(proj: Arc<ProjLoc>) -> MainVerifier {
        let aff = AffineLoc::new(proj.aff.clone());
        MainVerifier { proj, aff }
    }

    pub fn parse(ty: &str, lambda: &[i64]) -> Result<MainVerifier> {
        Ok(MainVerifier::new(Arc::new(ProjLoc::parse(ty, lambda)?)))
    }

    /// `t_{v lambda}`.
    pub fn fixed_point(&self, v: WeylElem) -> ExtAffineElem {
        let g = self.proj.g();
        ExtAffineElem { w: WeylElem::ID, lam: g.act_cochar(v, &self.proj.par.lambda) }
    }

    pub fn verify(&self, u: WeylElem, w: WeylElem) -> Result<MainReport> {
        let p = &self.proj;
        let f = p.make_f(u, w);
        let finite = p.smc_projected(u, w);
        let rows = p
            .par
            .reps
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                let lhs = &finite.values[k] * &p.normal_factor(v);
                let rhs = self.aff.vector(&self.fixed_point(v)).get(&f);
                MainRow { fixed_point: v, equal: lhs == rhs, lhs, rhs }
            })
            .collect();
        Ok(MainReport { u, w, f, rows })
    }

    /// Every `(u, w)` with `w` minimal; the affine vectors are shared.
    pub fn verify_all(&self) -> Result<Vec<MainReport>> {
        let reps = self.proj.par.reps.clone();
        reps.par_iter().for_each(|&v| {
            self.aff.vector(&self.fixed_point(v));
        });
        self.proj.pairs().par_iter().map(|&(u, w)| self.verify(u, w)).collect()
    }
}

/// Cocharacters with every coordinate in `-bound..=bound`.
pub fn cube(dim: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out.into_iter().flat_map(|v: Vec<i64>| (-bound..=bound).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out
}

/// Both recursions at translations `t_mu`, `|mu_i| <= bound`; returns which of the four cases occurred.
pub fn check_translation_recursions(l: &AffineLoc, bound: i64) -> CheckResult<[bool; 4]> {
    let a = &l.a;
    let g0 = &a.g;
    let y = RatFun::var(Var::Y);
    let one = RatFun::one();
    let opy = &one + &y;
    let mut seen = [false; 4];
    for mu in cube(a.dim(), bound) {
        for i in 0..a.n_simple() {
            let sw = a.simple(i).w;
            let smu = g0.act_cochar(sw, &mu);
            let em = g0.datum.root_char(g0.datum.neg(finite_simple(a, i)));
            let c = &one - &em;
            let v_mu = l.vector(&a.translation(&mu).map_err(|e| e.to_string())?);
            let v_smu = l.vector(&a.translation(&smu).map_err(|e| e.to_string())?);
            let mut fs: Vec<ExtAffineElem> = v_mu.values.keys().chain(v_smu.values.keys()).cloned().collect();
            fs.extend(fs.clone().iter().flat_map(|f| [a.lmul_s(i, f), a.rmul_s(f, i)]));
            for f in fs {
                let sf = a.lmul_s(i, &f);
                let fs_ = a.rmul_s(&f, i);
                let left_down = a.has_left_descent(i, &f);
                let right_down = a.has_right_descent(&f, i);
                let a1 = g0.act_ratfun(sw, &v_smu.get(&sf));
                let a2 = g0.act_ratfun(sw, &v_smu.get(&f));
                let lhs = if left_down {
                    &(&c * &a1) + &(&opy * &a2)
                } else {
                    &(&(&(-&y) * &c) * &a1) + &(&(&opy * &em) * &a2)
                };
                let rhs = if right_down {
                    &(&opy * &v_mu.get(&f)) + &(&c * &v_mu.get(&fs_))
                } else {
                    &(&(&opy * &em) * &v_mu.get(&f)) - &(&(&y * &c) * &v_mu.get(&fs_))
                };
                seen[(left_down as usize) * 2 + right_down as usize] = true;
                if lhs != rhs {
                    return Err(format!("mu={mu:?} f={} i={i}", a.fmt_elem(&f)));
                }
            }
        }
    }
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aloc(ty: &str) -> AffineLoc {
        AffineLoc::new(Arc::new(ExtAffine::parse(ty).unwrap()))
    }

    /// Reduced factorization stripping the highest-index descent first.
    fn alt_factorization(a: &ExtAffine, t: &ExtAffineElem) -> (ExtAffineElem, Vec<usize>) {
        let mut x = t.clone();
        let mut rev = Vec::new();
        'strip: loop {
            for i in (0..a.n_simple()).rev() {
                if a.has_right_descent(&x, i) {
                    x = a.rmul_s(&x, i);
                    rev.push(i);
                    continue 'strip;
                }
            }
            break;
        }
        rev.reverse();
        (x, rev)
    }

    #[test]
    fn length_zero_is_delta() {
        let l = aloc("GL3");
        for c in -2..=2 {
            let om = l.a.omega_rep(c);
            let v = l.vector(&om);
            assert_eq!(v.values.len(), 1);
            assert!(v.get(&om).is_one());
        }
    }

    #[test]
    fn translation_value_gl2() {
        let l = aloc("GL2");
        let t = l.a.translation(&[1, 0]).unwrap();
        let v = l.vector(&t);
        let e = l.a.g.datum.root_char(l.a.g.datum.simple_id(0));
        let y = RatFun::var(Var::Y);
        let expect = &(&RatFun::one() - &e) / &(&RatFun::one() + &(&y * &e));
        assert_eq!(v.get(&t), expect);
        for f in v.values.keys() {
            assert!(l.a.bruhat_leq(f, &t));
        }
    }

    #[test]
    fn word_independence() {
        for ty in ["GL3", "A2"] {
            let l = aloc(ty);
            let classes: Vec<i64> = if l.a.g.datum.is_gl() { vec![0, 1] } else { vec![0] };
            let mut checked = 0;
            for t in l.a.ball(4, &classes) {
                let (om, w1) = l.a.reduced_factorization(&t);
                let (om2, w2) = alt_factorization(&l.a, &t);
                assert_eq!(om, om2);
                if w1 != w2 {
                    checked += 1;
                    assert_eq!(l.vector_along(&om, &w1), l.vector_along(&om2, &w2), "{}", l.a.fmt_elem(&t));
                }
            }
            assert!(checked > 0);
        }
    }

    #[test]
    fn right_recursion_and_quadratic_relation() {
        let l = aloc("GL2");
        let a = &l.a;
        let y = RatFun::var(Var::Y);
        let one = RatFun::one();
        let opy = &one + &y;
        let t_op = |gam: &dyn Fn(&ExtAffineElem) -> RatFun, g: &ExtAffineElem, i: usize| -> RatFun {
            let e = affine_simple_char(a, g, i);
            let gs = a.rmul_s(g, i);
            &(&(&(&one + &(&y * &e)) * &gam(g)) - &(&(&e + &y) * &gam(&gs))) / &(&one - &e) - gam(g)
        };
        for g in a.ball(3, &[0, 1]) {
            for i in 0..a.n_simple() {
                let gs = a.rmul_s(&g, i);
                let vg = l.vector(&g);
                let vgs = l.vector(&gs);
                let mut fs: Vec<ExtAffineElem> = vg.values.keys().chain(vgs.values.keys()).cloned().collect();
                fs.extend(fs.clone().iter().map(|f| a.rmul_s(f, i)));
                for f in fs {
                    let fsi = a.rmul_s(&f, i);
                    let gam = |h: &ExtAffineElem| l.vector(h).get(&f);
                    let tg = t_op(&gam, &g, i);
                    let want = if a.has_right_descent(&f, i) {
                        l.vector(&g).get(&fsi)
                    } else {
                        &(&(-&opy) * &l.vector(&g).get(&f)) - &(&y * &l.vector(&g).get(&fsi))
                    };
                    assert_eq!(tg, want);
                    let tgs = t_op(&gam, &gs, i);
                    let tt = {
                        let e = affine_simple_char(a, &g, i);
                        &(&(&(&one + &(&y * &e)) * &tg) - &(&(&e + &y) * &tgs)) / &(&one - &e) - tg.clone()
                    };
                    let res = &(&tt + &(&opy * &tg)) + &(&y * &gam(&g));
                    assert!(res.is_zero());
                }
            }
        }
    }

    fn check_left_recursion(ty: &str, radius: usize) {
        let l = aloc(ty);
        let a = &l.a;
        let g0 = &a.g;
        let y = RatFun::var(Var::Y);
        let one = RatFun::one();
        let opy = &one + &y;
        let classes: Vec<i64> = if g0.datum.is_gl() { vec![0, 1] } else { vec![0] };
        for g in a.ball(radius, &classes) {
            for i in 0..a.n_simple() {
                let si = a.simple(i);
                let sw = si.w;
                let em = g0.datum.root_char(g0.datum.neg(finite_simple(a, i)));
                let c = &one - &em;
                let sg = a.lmul_s(i, &g);
                let vg = l.vector(&g);
                let vsg = l.vector(&sg);
                let mut fs: Vec<ExtAffineElem> = vg.values.keys().chain(vsg.values.keys()).cloned().collect();
                fs.extend(fs.clone().iter().map(|f| a.lmul_s(i, f)));
                for f in fs {
                    let sf = a.lmul_s(i, &f);
                    let lhs = &(&one + &(&y * &em)) * &vsg.get(&f);
                    let s_sf = g0.act_ratfun(sw, &vg.get(&sf));
                    let s_f = g0.act_ratfun(sw, &vg.get(&f));
                    let rhs = if a.has_left_descent(i, &f) {
                        &(&c * &s_sf) + &(&opy * &s_f)
                    } else {
                        &(&(&(-&y) * &c) * &s_sf) + &(&(&opy * &em) * &s_f)
                    };
                    assert_eq!(lhs, rhs, "{ty} g={} f={} i={i}", a.fmt_elem(&g), a.fmt_elem(&f));
                }
            }
        }
    }

    #[test]
    fn left_recursion_gl2() {
        check_left_recursion("GL2", 3);
    }

    #[test]
    fn left_recursion_a2() {
        check_left_recursion("A2", 2);
    }

    #[test]
    fn translation_recursions_gl2() {
        let seen = check_translation_recursions(&aloc("GL2"), 2).unwrap();
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn translation_recursions_a2() {
        let seen = check_translation_recursions(&aloc("A2"), 1).unwrap();
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn support_is_bruhat_interval() {
        for ty in ["GL2", "GL3"] {
            let l = aloc(ty);
            let a = &l.a;
            let ball = a.ball(4, &[0, 1]);
            for t in a.ball(3, &[0, 1]) {
                let v = l.vector(&t);
                let below: Vec<&ExtAffineElem> = ball.iter().filter(|f| a.bruhat_leq(f, &t)).collect();
                assert_eq!(v.values.len(), below.len(), "{}", a.fmt_elem(&t));
                for f in below {
                    assert!(v.values.contains_key(f));
                }
            }
        }
    }

    #[test]
    fn main_gl2_and_gl3() {
        for (ty, lam) in [("GL2", vec![1, 0]), ("GL2", vec![2, 0]), ("GL3", vec![1, 0, 0]), ("GL3", vec![1, 1, 0])] {
            let m = MainVerifier::parse(ty, &lam).unwrap();
            let reps = m.verify_all().unwrap();
            assert_eq!(reps.len(), m.proj.g().order() * m.proj.par.reps.len());
            for r in &reps {
                assert!(r.pass(), "{ty} {lam:?} {:?}", r);
                if !m.proj.g().bruhat_leq(r.u, r.w) {
                    assert!(r.rows.iter().all(|x| x.lhs.is_zero() && x.rhs.is_zero()));
                }
            }
        }
    }

    #[test]
    fn main_non_minuscule() {
        for (ty, lam) in [("GL3", vec![2, 0, 0]), ("GL3", vec![2, 1, 0]), ("A2", vec![1, 1])] {
            let m = MainVerifier::parse(ty, &lam).unwrap();
            for r in m.verify_all().unwrap() {
                assert!(r.pass(), "{ty} {lam:?}");
            }
        }
    }
}
