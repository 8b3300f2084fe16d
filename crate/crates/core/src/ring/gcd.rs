use super::int::Int;
use super::mono::{Mono, NV};
use super::poly::{mulmod, powmod, LaurentPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const P: u64 = (1u64 << 61) - 1;
const HEU_ATTEMPTS: usize = 6;

/// Greatest common divisor of two polynomials with nonnegative exponents.
///
/// The result has a positive leading coefficient; `gcd(0, 0) = 0`.
pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    debug_assert!(a.is_poly() && b.is_poly());
    if a.is_zero() {
        return positive(b.clone());
    }
    if b.is_zero() {
        return positive(a.clone());
    }
    let ma = a.min_mono();
    let mb = b.min_mono();
    let mg = ma.meet(&mb);
    let a1 = a.mul_mono(&ma.inv());
    let b1 = b.mul_mono(&mb.inv());
    let ca = a1.content();
    let cb = b1.content();
    let cg = ca.gcd(&cb);
    let a2 = a1.div_int(&ca);
    let b2 = b1.div_int(&cb);
    let g = primitive_gcd(&a2, &b2);
    positive(g.scale(&cg).mul_mono(&mg))
}

fn positive(p: LaurentPoly) -> LaurentPoly {
    if p.leading_coeff().is_negative() {
        -p
    } else {
        p
    }
}

/// Both arguments primitive with no monomial factor.
fn primitive_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_constant() || b.is_constant() {
        return LaurentPoly::one();
    }
    if a == b || a == &-b {
        return positive(a.clone());
    }
    let va = a.vars();
    let vb = b.vars();
    let common: Vec<usize> = va.iter().copied().filter(|v| vb.contains(v)).collect();
    if common.is_empty() {
        return LaurentPoly::one();
    }
    if probably_coprime(a, b, &common) {
        return LaurentPoly::one();
    }
    if let Some(d) = trial_divisor(a, b) {
        return d;
    }
    if let Some((h, _, _)) = heu_gcd(a, b) {
        return positive(h);
    }
    prs_gcd(a, b)
}

fn trial_divisor(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    big.div_exact(small).map(|_| positive(small.clone()))
}

/// Proves coprimality by reduction modulo a prime at a random point.
///
/// Returns `true` only when the proof succeeds; `false` means undecided.
fn probably_coprime(a: &LaurentPoly, b: &LaurentPoly, common: &[usize]) -> bool {
    let mut all = a.vars();
    for v in b.vars() {
        if !all.contains(&v) {
            all.push(v);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f_c0de);
    'outer: for &keep in common {
        for _attempt in 0..3 {
            let point: Vec<(usize, u64)> =
                all.iter().filter(|&&s| s != keep).map(|&s| (s, rng.gen_range(2..P))).collect();
            let ua = a.eval_mod(&point, keep, P);
            let ub = b.eval_mod(&point, keep, P);
            let da = a.degree_in(keep) as usize;
            let db = b.degree_in(keep) as usize;
            if ua[da] == 0 || ub[db] == 0 {
                continue;
            }
            if univariate_gcd_degree(ua, ub) == 0 {
                continue 'outer;
            }
            return false;
        }
        return false;
    }
    true
}

fn trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn univariate_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.len() == 1 && b[0] == 0 {
            return a.len() - 1;
        }
        let inv = powmod(*b.last().unwrap(), P - 2, P);
        while a.len() >= b.len() && !(a.len() == 1 && a[0] == 0) {
            let shift = a.len() - b.len();
            let c = mulmod(*a.last().unwrap(), inv, P);
            for (i, &bc) in b.iter().enumerate() {
                let t = mulmod(c, bc, P);
                a[i + shift] = (a[i + shift] + P - t) % P;
            }
            a.pop();
            if a.is_empty() {
                a.push(0);
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
}

fn first_var(a: &LaurentPoly, b: &LaurentPoly) -> Option<usize> {
    let mut seen = [false; NV];
    for p in [a, b] {
        for (m, _) in p.terms() {
            for (s, &e) in m.0.iter().enumerate() {
                if e != 0 {
                    seen[s] = true;
                }
            }
        }
    }
    (0..NV).find(|&s| seen[s])
}

/// Heuristic gcd by evaluation at a large integer and balanced interpolation.
///
/// Returns `(h, a/h, b/h)` with `h` the gcd including integer content.
fn heu_gcd(a: &LaurentPoly, b: &LaurentPoly) -> Option<(LaurentPoly, LaurentPoly, LaurentPoly)> {
    if a.is_zero() && b.is_zero() {
        return Some((LaurentPoly::zero(), LaurentPoly::zero(), LaurentPoly::zero()));
    }
    if a.is_zero() {
        let s = if b.leading_coeff().is_negative() { -1 } else { 1 };
        return Some((b.scale(&s.into()), LaurentPoly::zero(), LaurentPoly::constant(s)));
    }
    if b.is_zero() {
        let s = if a.leading_coeff().is_negative() { -1 } else { 1 };
        return Some((a.scale(&s.into()), LaurentPoly::constant(s), LaurentPoly::zero()));
    }
    let Some(v) = first_var(a, b) else {
        let x = a.constant_value().unwrap();
        let y = b.constant_value().unwrap();
        let g = x.gcd(&y);
        return Some((
            LaurentPoly::constant(g.clone()),
            LaurentPoly::constant(x.div_exact(&g).unwrap()),
            LaurentPoly::constant(y.div_exact(&g).unwrap()),
        ));
    };
    let ca = a.content();
    let cb = b.content();
    let cg = ca.gcd(&cb);
    let f = a.div_int(&cg);
    let g = b.div_int(&cg);
    let fnorm = f.max_norm();
    let gnorm = g.max_norm();
    let bound = &(&Int::from(2) * &fnorm.clone().min(gnorm.clone())) + &Int::from(29);
    let sq = &Int::from(99) * &bound.isqrt();
    let ground = |p: &LaurentPoly, n: &Int| -> Int {
        let lc = ground_leading(p).abs();
        n.div_trunc(&lc)
    };
    let alt = &(&Int::from(2) * &ground(&f, &fnorm).min(ground(&g, &gnorm))) + &Int::from(4);
    let mut x = bound.clone().min(sq).max(alt);
    for _ in 0..HEU_ATTEMPTS {
        let ff = f.eval_int(v, &x);
        let gg = g.eval_int(v, &x);
        if !ff.is_zero() && !gg.is_zero() {
            if let Some((h, cff, cfg)) = heu_gcd(&ff, &gg) {
                let h = interpolate(&h, &x, v);
                let h = primitive_part(&h);
                if let Some(cf) = f.div_exact(&h) {
                    if let Some(cgq) = g.div_exact(&h) {
                        return Some((h.scale(&cg), cf, cgq));
                    }
                }
                let cff = interpolate(&cff, &x, v);
                if let Some(h) = f.div_exact(&cff) {
                    if let Some(cgq) = g.div_exact(&h) {
                        return Some((h.scale(&cg), cff, cgq));
                    }
                }
                let cfg = interpolate(&cfg, &x, v);
                if let Some(h) = g.div_exact(&cfg) {
                    if let Some(cf) = f.div_exact(&h) {
                        return Some((h.scale(&cg), cf, cfg));
                    }
                }
            }
        }
        let r = x.isqrt().isqrt();
        x = (&(&Int::from(73794) * &x) * &r).div_trunc(&Int::from(27011));
    }
    None
}

/// Leading coefficient in the lexicographic order; the integer coefficient of the top term.
fn ground_leading(p: &LaurentPoly) -> Int {
    p.leading_coeff()
}

fn primitive_part(p: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = p.content();
    let q = p.div_int(&c);
    positive(q)
}

fn interpolate(h: &LaurentPoly, x: &Int, v: usize) -> LaurentPoly {
    let mut out: Vec<(Mono, Int)> = Vec::new();
    let mut h = h.clone();
    let mut k: i16 = 0;
    while !h.is_zero() {
        let g = LaurentPoly::from_terms(h.terms().iter().map(|(m, c)| (*m, c.symmetric_rem(x))));
        let mut shift = Mono::ONE;
        shift.0[v] = k;
        out.extend(g.terms().iter().map(|(m, c)| (m.mul(&shift), c.clone())));
        h = (&h - &g).div_int(x);
        k += 1;
    }
    let p = LaurentPoly::from_terms(out);
    positive(p)
}

fn content_in(p: &LaurentPoly, v: usize) -> LaurentPoly {
    let mut g = LaurentPoly::zero();
    for (_, c) in p.by_degree(v).into_iter().rev() {
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn lead_in(p: &LaurentPoly, v: usize) -> LaurentPoly {
    let d = p.degree_in(v) as i16;
    p.coeff_of(v, d)
}

fn prem(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> LaurentPoly {
    let db = b.degree_in(v);
    let lb = lead_in(b, v);
    let mut r = a.clone();
    let mut steps = a.degree_in(v) - db + 1;
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = lead_in(&r, v);
        let mut sh = Mono::ONE;
        sh.0[v] = (dr - db) as i16;
        r = &(&lb * &r) - &(&lr * &b.mul_mono(&sh));
        steps -= 1;
    }
    if steps > 0 {
        r = &lb.pow(steps as u32) * &r;
    }
    r
}

/// Primitive polynomial remainder sequence in the first shared variable.
fn prs_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let va = a.vars();
    let Some(v) = b.vars().into_iter().find(|s| va.contains(s)) else {
        return LaurentPoly::one();
    };
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).unwrap();
    let mut q = b.div_exact(&cb).unwrap();
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        let r = prem(&p, &q, v);
        p = q;
        q = if r.is_zero() { r } else { r.div_exact(&content_in(&r, v)).unwrap() };
    }
    let g = if p.degree_in(v) == 0 { LaurentPoly::one() } else { positive(p) };
    positive(&g * &c)
}

#[cfg(test)]
mod tests {
    use super::super::poly::parse_poly;
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn shared_factor_recovered() {
        let f = p("t1 + y*t2");
        let a = &f * &p("t1 - t3");
        let b = &f * &p("t2^2 + 3");
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn coprime_inputs() {
        assert!(gcd(&p("t1 + y*t2"), &p("t1 - t2")).is_one());
        assert!(gcd(&p("y + 1"), &p("y - 1")).is_one());
    }

    #[test]
    fn content_and_monomials() {
        let a = p("6*t1^2*y + 6*t1*y");
        let b = p("4*t1*y^2");
        assert_eq!(gcd(&a, &b), p("2*t1*y"));
    }

    #[test]
    fn prs_agrees_with_heuristic() {
        let f = p("t1^2 - y*t1*t2 + 3*t2");
        let a = &(&f * &f) * &p("t1 + 1");
        let b = &f * &p("t1*t2 - y");
        let h = prs_gcd(&a, &b);
        assert_eq!(h, f);
        assert_eq!(positive(heu_gcd(&a, &b).unwrap().0), f);
    }
}
