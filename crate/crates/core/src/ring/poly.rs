use super::int::Int;
use super::mono::{Mono, Var, NV};
use rustc_hash::FxHashMap;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse multivariate Laurent polynomial over the integers.
///
/// Terms are kept sorted by descending monomial with no zero coefficients,
/// so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(Mono, Int)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Int::ONE)
    }

    pub fn constant(c: impl Into<Int>) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(Mono::ONE, c)] }
        }
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Mono::var(v), Int::ONE)
    }

    pub fn monomial(m: Mono, c: impl Into<Int>) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(m, c)] }
        }
    }

    /// Builds from arbitrary terms, combining duplicates.
    pub fn from_terms(it: impl IntoIterator<Item = (Mono, Int)>) -> Self {
        let mut acc: FxHashMap<Mono, Int> = FxHashMap::default();
        for (m, c) in it {
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(e) => *e += &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(acc)
    }

    fn from_map(acc: FxHashMap<Mono, Int>) -> Self {
        let mut terms: Vec<(Mono, Int)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        LaurentPoly { terms }
    }

    pub fn terms(&self) -> &[(Mono, Int)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, Int)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<Int> {
        match self.terms.as_slice() {
            [] => Some(Int::ZERO),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Mono, Int)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Int {
        self.terms.first().map(|t| t.1.clone()).unwrap_or(Int::ZERO)
    }

    /// True when no exponent is negative.
    pub fn is_poly(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_poly())
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_mono(&self) -> Mono {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Mono::ONE;
        };
        it.fold(*first, |acc, (m, _)| acc.meet(m))
    }

    pub fn max_mono(&self) -> Mono {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Mono::ONE;
        };
        it.fold(*first, |acc, (m, _)| acc.join(m))
    }

    /// Slots with a nonzero exponent in some term.
    pub fn vars(&self) -> Vec<usize> {
        let mut seen = [false; NV];
        for (m, _) in &self.terms {
            for (s, &e) in m.0.iter().enumerate() {
                if e != 0 {
                    seen[s] = true;
                }
            }
        }
        (0..NV).filter(|&s| seen[s]).collect()
    }

    pub fn degree_in(&self, slot: usize) -> i32 {
        self.terms.iter().map(|(m, _)| m.0[slot] as i32).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, slot: usize) -> i32 {
        self.terms.iter().map(|(m, _)| m.0[slot] as i32).min().unwrap_or(0)
    }

    pub fn total_degree(&self) -> i32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn max_norm(&self) -> Int {
        self.terms.iter().map(|(_, c)| c.abs()).max().unwrap_or(Int::ZERO)
    }

    pub fn content(&self) -> Int {
        let mut g = Int::ZERO;
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, c: &Int) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_int(&self, c: &Int) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (*m, a.div_exact(c).expect("inexact integer division")))
                .collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Applies a monomial map; terms that collide are combined.
    pub fn map_monos(&self, f: impl Fn(&Mono) -> Mono) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Substitutes `slot -> sign * m`.
    pub fn subst_mono(&self, slot: usize, sign: i64, m: &Mono) -> Self {
        Self::from_terms(self.terms.iter().map(|(a, c)| {
            let e = a.0[slot];
            let mut b = *a;
            b.0[slot] = 0;
            let b = b.mul(&m.pow(e));
            let c = if sign < 0 && e.rem_euclid(2) == 1 { -c } else { c.clone() };
            (b, c)
        }))
    }

    /// Substitutes an integer value for a variable occurring with nonnegative exponents.
    pub fn eval_int(&self, slot: usize, x: &Int) -> Self {
        let mut pows: Vec<Int> = vec![Int::ONE];
        Self::from_terms(self.terms.iter().map(|(a, c)| {
            let e = a.0[slot];
            assert!(e >= 0, "negative exponent in integer evaluation");
            while pows.len() <= e as usize {
                let next = pows.last().unwrap() * x;
                pows.push(next);
            }
            let mut b = *a;
            b.0[slot] = 0;
            (b, c * &pows[e as usize])
        }))
    }

    /// Coefficient polynomial of `slot^e`.
    pub fn coeff_of(&self, slot: usize, e: i16) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[slot] == e)
            .map(|(m, c)| {
                let mut b = *m;
                b.0[slot] = 0;
                (b, c.clone())
            })
            .collect();
        LaurentPoly::from_sorted_after_strip(terms)
    }

    fn from_sorted_after_strip(terms: Vec<(Mono, Int)>) -> Self {
        // stripping one slot preserves relative order among terms sharing that slot's exponent
        let p = LaurentPoly { terms };
        debug_assert!(p.terms.windows(2).all(|w| w[0].0 > w[1].0));
        p
    }

    /// Splits by the exponent of `slot`, ascending.
    pub fn by_degree(&self, slot: usize) -> BTreeMap<i16, LaurentPoly> {
        let mut out: BTreeMap<i16, Vec<(Mono, Int)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut b = *m;
            let e = b.0[slot];
            b.0[slot] = 0;
            out.entry(e).or_default().push((b, c.clone()));
        }
        out.into_iter().map(|(e, t)| (e, LaurentPoly { terms: t })).collect()
    }

    /// Exact quotient, or `None` if `d` does not divide `self` in the Laurent ring
    /// restricted to the lex-descending division algorithm.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.terms.len() == 1 {
            let (dm, dc) = &d.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                terms.push((m.div(dm), c.div_exact(dc)?));
            }
            return Some(LaurentPoly { terms });
        }
        let (lm, lc) = d.terms[0].clone();
        let mut rem: BTreeMap<Mono, Int> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(Mono, Int)> = Vec::new();
        let dmin = d.min_mono();
        let smin = self.min_mono();
        while let Some((&m, _)) = rem.iter().next_back() {
            let c = rem.remove(&m).unwrap();
            let qm = m.div(&lm);
            // every exponent of a true quotient is bounded below by smin - dmin
            if !smin.div(&dmin).divides(&qm) {
                return None;
            }
            let qc = c.div_exact(&lc)?;
            for (dm, dc) in &d.terms[1..] {
                let key = qm.mul(dm);
                let delta = &qc * dc;
                match rem.get_mut(&key) {
                    Some(v) => {
                        *v = &*v - &delta;
                        if v.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, -delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(LaurentPoly { terms: quot })
    }

    /// Evaluates at `slot -> value mod p`, for every variable in `point`; the rest stay symbolic.
    pub fn eval_mod(&self, point: &[(usize, u64)], keep: usize, p: u64) -> Vec<u64> {
        let deg = self.degree_in(keep).max(0) as usize;
        let mut out = vec![0u64; deg + 1];
        for (m, c) in &self.terms {
            let mut v = c.rem_u64(p);
            for &(s, x) in point {
                let e = m.0[s];
                if e != 0 {
                    v = mulmod(v, powmod(x, e as u64, p), p);
                }
            }
            let e = m.0[keep] as usize;
            out[e] = (out[e] + v) % p;
        }
        out
    }

    pub fn substitute_q_neg_y(&self) -> LaurentPoly {
        self.subst_mono(Var::Q.slot(), -1, &Mono::var(Var::Y))
    }
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

fn merge(a: &[(Mono, Int)], b: &[(Mono, Int)], negate_b: bool) -> Vec<(Mono, Int)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        let c = if negate_b { -&t.1 } else { t.1.clone() };
        out.push((t.0, c));
    }
    out
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        LaurentPoly { terms: merge(&self.terms, &o.terms, false) }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        LaurentPoly { terms: merge(&self.terms, &o.terms, true) }
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || o.is_zero() {
            return LaurentPoly::zero();
        }
        if o.terms.len() == 1 {
            let (m, c) = &o.terms[0];
            return LaurentPoly { terms: self.terms.iter().map(|(a, b)| (a.mul(m), b * c)).collect() };
        }
        if self.terms.len() == 1 {
            return o * self;
        }
        let mut acc: FxHashMap<Mono, Int> =
            FxHashMap::with_capacity_and_hasher(self.terms.len() * o.terms.len(), Default::default());
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let m = a.mul(b);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(e) => *e += &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        LaurentPoly::from_map(acc)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, o: LaurentPoly) -> LaurentPoly {
                (&self).$f(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<Var> for LaurentPoly {
    fn from(v: Var) -> Self {
        LaurentPoly::var(v)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses expressions such as `t1^2*t2 - 3*y + 1` or `(1 + y)*(t1 - t2)`.
pub fn parse_poly(s: &str) -> Result<LaurentPoly, String> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(format!("trailing input in {s:?}"));
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Num(t.parse().map_err(|e| format!("{e}"))?));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<LaurentPoly, String> {
        let mut neg = false;
        if self.peek() == Some(&Tok::Op('-')) {
            neg = true;
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if neg {
            acc = -acc;
        }
        while let Some(Tok::Op(c)) = self.peek() {
            let c = *c;
            if c != '+' && c != '-' {
                break;
            }
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPoly, String> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Op('*')) {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPoly, String> {
        let base = match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                LaurentPoly::constant(n)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let v = Var::parse(&name).ok_or_else(|| format!("unknown variable {name}"))?;
                LaurentPoly::var(v)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err("missing )".into());
                }
                self.pos += 1;
                e
            }
            t => return Err(format!("unexpected token {t:?}")),
        };
        if self.peek() == Some(&Tok::Op('^')) {
            self.pos += 1;
            let mut neg = false;
            if self.peek() == Some(&Tok::Op('(')) {
                self.pos += 1;
                if self.peek() == Some(&Tok::Op('-')) {
                    neg = true;
                    self.pos += 1;
                }
                let e = self.exponent()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err("missing )".into());
                }
                self.pos += 1;
                return raise(&base, if neg { -e } else { e });
            }
            let e = self.exponent()?;
            return raise(&base, e);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64, String> {
        match self.toks.get(self.pos) {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(*n)
            }
            t => Err(format!("expected exponent, got {t:?}")),
        }
    }
}

fn raise(base: &LaurentPoly, e: i64) -> Result<LaurentPoly, String> {
    if e >= 0 {
        return Ok(base.pow(e as u32));
    }
    if base.is_monomial() && base.terms[0].1.abs().is_one() {
        let (m, c) = &base.terms[0];
        let c = if e % 2 != 0 { c.clone() } else { Int::ONE };
        return Ok(LaurentPoly::monomial(m.pow(e as i16), c));
    }
    Err("negative power of a non-unit".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn canonical_order_and_print() {
        let a = p("y*t2 + t1");
        assert_eq!(a.to_string(), "t1 + y*t2");
        let b = p("t1 - t2");
        assert_eq!(b.to_string(), "t1 - t2");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("-3*y^2 + 1").to_string(), "-3*y^2 + 1");
    }

    #[test]
    fn exact_division_round_trip() {
        let a = p("t1^2 - t2*y + 3*t3");
        let b = p("t1 + y - 1");
        let c = &a * &b;
        assert_eq!(c.div_exact(&b), Some(a.clone()));
        assert_eq!(c.div_exact(&a), Some(b));
        assert_eq!(a.div_exact(&p("t1 + 1")), None);
    }

    #[test]
    fn laurent_division() {
        let a = p("t1*t2^(-1) - 1");
        let b = p("t1 - t2");
        let q = b.div_exact(&a).unwrap();
        assert_eq!(q, p("t2"));
    }

    #[test]
    fn substitution() {
        let a = p("q^2 - 3*q + 1");
        assert_eq!(a.substitute_q_neg_y(), p("y^2 + 3*y + 1"));
    }
}
