use super::gcd::gcd;
use super::int::Int;
use super::mono::{Mono, Var};
use super::poly::{parse_poly, LaurentPoly};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Quotient of two coprime integer polynomials.
///
/// Both parts have nonnegative exponents, share no nonunit factor, and the
/// denominator's leading coefficient is positive. Laurent inputs are cleared
/// by monomials on construction, so the form is canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFun {
    pub fn zero() -> Self {
        RatFun { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        RatFun { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    pub fn constant(c: impl Into<Int>) -> Self {
        RatFun::from_poly(LaurentPoly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        RatFun::from_poly(LaurentPoly::var(v))
    }

    /// Laurent monomial `prod t_i^{e_i}`.
    pub fn t_monomial(exps: &[i64]) -> Self {
        let mut m = Mono::ONE;
        for (i, &e) in exps.iter().enumerate() {
            m.0[Var::T(i + 1).slot()] = e as i16;
        }
        RatFun::from_poly(LaurentPoly::monomial(m, Int::ONE))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFun::unit_normalize(p, LaurentPoly::one())
    }

    /// Reduces `n/d` to canonical form. Panics if `d` is zero.
    pub fn new(n: LaurentPoly, d: LaurentPoly) -> Self {
        assert!(!d.is_zero(), "zero denominator");
        if n.is_zero() {
            return RatFun::zero();
        }
        let m = n.min_mono().meet(&d.min_mono());
        let n = n.mul_mono(&m.inv());
        let d = d.mul_mono(&m.inv());
        let g = gcd(&n, &d);
        if g.is_one() {
            return RatFun::sign_fix(n, d);
        }
        let n = n.div_exact(&g).expect("gcd divides numerator");
        let d = d.div_exact(&g).expect("gcd divides denominator");
        RatFun::sign_fix(n, d)
    }

    /// Normalizes when `n` and `d` are already coprime up to monomials.
    fn unit_normalize(n: LaurentPoly, d: LaurentPoly) -> Self {
        if n.is_zero() {
            return RatFun::zero();
        }
        let m = n.min_mono().meet(&d.min_mono());
        let n = n.mul_mono(&m.inv());
        let d = d.mul_mono(&m.inv());
        let g = n.content().gcd(&d.content());
        if g.is_one() {
            return RatFun::sign_fix(n, d);
        }
        RatFun::sign_fix(n.div_int(&g), d.div_int(&g))
    }

    fn sign_fix(n: LaurentPoly, d: LaurentPoly) -> Self {
        if d.leading_coeff().is_negative() {
            RatFun { num: -n, den: -d }
        } else {
            RatFun { num: n, den: d }
        }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// Laurent polynomial value when the denominator is a signed monomial.
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        if !self.den.is_monomial() {
            return None;
        }
        let (m, c) = &self.den.terms()[0];
        if !c.is_one() {
            return None;
        }
        Some(self.num.mul_mono(&m.inv()))
    }

    /// Equality by cross-multiplication, independent of normal form.
    pub fn eq_by_cross(&self, o: &RatFun) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }

    pub fn inv(&self) -> RatFun {
        assert!(!self.is_zero(), "inverse of zero");
        RatFun::sign_fix(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> RatFun {
        if e < 0 {
            return self.inv().pow(-e);
        }
        RatFun::sign_fix(self.num.pow(e as u32), self.den.pow(e as u32))
    }

    pub fn scale(&self, c: &Int) -> RatFun {
        self * &RatFun::constant(c.clone())
    }

    /// Applies a monomial automorphism of the Laurent ring.
    ///
    /// Coprimality survives automorphisms, so only units are renormalized.
    pub fn map_automorphism(&self, f: impl Fn(&Mono) -> Mono) -> RatFun {
        let n = self.num.map_monos(&f);
        let d = self.den.map_monos(&f);
        RatFun::unit_normalize(n, d)
    }

    /// Applies an arbitrary ring map given on numerator and denominator.
    pub fn map_polys(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> RatFun {
        RatFun::new(f(&self.num), f(&self.den))
    }

    /// Substitutes `q -> -y`.
    pub fn q_to_neg_y(&self) -> RatFun {
        self.map_polys(|p| p.substitute_q_neg_y())
    }

    /// Substitutes an integer for `v`.
    pub fn eval_var(&self, v: Var, x: &Int) -> RatFun {
        self.map_polys(|p| p.eval_int(v.slot(), x))
    }

    /// Substitutes `v -> sign * m` for a monomial `m`.
    pub fn subst_var(&self, v: Var, sign: i64, m: &Mono) -> RatFun {
        self.map_polys(|p| p.subst_mono(v.slot(), sign, m))
    }
}

impl Default for RatFun {
    fn default() -> Self {
        RatFun::zero()
    }
}

impl From<LaurentPoly> for RatFun {
    fn from(p: LaurentPoly) -> Self {
        RatFun::from_poly(p)
    }
}

impl From<i64> for RatFun {
    fn from(c: i64) -> Self {
        RatFun::constant(c)
    }
}

impl From<Var> for RatFun {
    fn from(v: Var) -> Self {
        RatFun::var(v)
    }
}

impl<'a> Add<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let t = &self.num + &o.num;
            if self.den.is_one() {
                return RatFun::from_poly(t);
            }
            return RatFun::new(t, self.den.clone());
        }
        if self.den.is_one() {
            return RatFun::sign_fix(&(&self.num * &o.den) + &o.num, o.den.clone());
        }
        if o.den.is_one() {
            return RatFun::sign_fix(&(&o.num * &self.den) + &self.num, self.den.clone());
        }
        let g = gcd(&self.den, &o.den);
        if g.is_one() {
            let t = &(&self.num * &o.den) + &(&o.num * &self.den);
            return RatFun::sign_fix(t, &self.den * &o.den);
        }
        let d1 = self.den.div_exact(&g).unwrap();
        let d2 = o.den.div_exact(&g).unwrap();
        let t = &(&self.num * &d2) + &(&o.num * &d1);
        if t.is_zero() {
            return RatFun::zero();
        }
        let h = gcd(&t, &g);
        let (t, g2) = if h.is_one() {
            (t, g)
        } else {
            (t.div_exact(&h).unwrap(), g.div_exact(&h).unwrap())
        };
        RatFun::unit_normalize(t, &(&d1 * &d2) * &g2)
    }
}

impl<'a> Sub<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let (n1, d2) = if g1.is_one() {
            (self.num.clone(), o.den.clone())
        } else {
            (self.num.div_exact(&g1).unwrap(), o.den.div_exact(&g1).unwrap())
        };
        let (n2, d1) = if g2.is_one() {
            (o.num.clone(), self.den.clone())
        } else {
            (o.num.div_exact(&g2).unwrap(), self.den.div_exact(&g2).unwrap())
        };
        RatFun::unit_normalize(&n1 * &n2, &d1 * &d2)
    }
}

impl<'a> Div<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn div(self, o: &RatFun) -> RatFun {
        self * &o.inv()
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr for RatFun {
            type Output = RatFun;
            fn $f(self, o: RatFun) -> RatFun {
                (&self).$f(&o)
            }
        }
        impl<'a> $tr<&'a RatFun> for RatFun {
            type Output = RatFun;
            fn $f(self, o: &RatFun) -> RatFun {
                (&self).$f(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl std::iter::Sum for RatFun {
    fn sum<I: Iterator<Item = RatFun>>(it: I) -> RatFun {
        it.fold(RatFun::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for RatFun {
    fn product<I: Iterator<Item = RatFun>>(it: I) -> RatFun {
        it.fold(RatFun::one(), |a, b| &a * &b)
    }
}

fn paren(p: &LaurentPoly) -> String {
    if p.len() > 1 {
        format!("({p})")
    } else {
        p.to_string()
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let den = self.den.to_string();
        if self.den.len() > 1 || den.contains(['*', '-']) {
            write!(f, "{}/({den})", paren(&self.num))
        } else {
            write!(f, "{}/{den}", paren(&self.num))
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `num` or `num/den`, where each side is a polynomial expression.
pub fn parse_ratfun(s: &str) -> Result<RatFun, String> {
    let mut depth = 0i32;
    let mut split = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => {
                if split.is_some() {
                    return Err("more than one top-level '/'".into());
                }
                split = Some(i);
            }
            _ => {}
        }
    }
    match split {
        None => Ok(RatFun::from_poly(parse_poly(s)?)),
        Some(i) => {
            let n = parse_poly(&s[..i])?;
            let d = parse_poly(&s[i + 1..])?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(RatFun::new(n, d))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RatFun {
        parse_ratfun(s).unwrap()
    }

    #[test]
    fn canonical_text() {
        assert_eq!(r("(t1 - t2)/(t1 + y*t2)").to_string(), "(t1 - t2)/(t1 + y*t2)");
        assert_eq!(r("(t1^2 - t2^2)/(t1 + t2)").to_string(), "t1 - t2");
        assert_eq!(r("1/(-t1 - y*t2)").to_string(), "-1/(t1 + y*t2)");
        assert_eq!(r("0/(t1 + 1)").to_string(), "0");
        assert_eq!(r("t1*t2^(-1)").to_string(), "t1/t2");
    }

    #[test]
    fn sums_cancel() {
        let a = r("1/(t1 - 1)");
        let b = r("t1/(t1 - 1)");
        assert_eq!(&b - &a, RatFun::one());
        let c = r("1/((t1 - 1)*(t2 + y))");
        let d = r("1/((t1 - 1)*(t3 + y))");
        let s = &c + &d;
        assert!(s.eq_by_cross(&r("(t2 + t3 + 2*y)/((t1 - 1)*(t2 + y)*(t3 + y))")));
    }

    #[test]
    fn automorphism_keeps_form() {
        let a = r("(t1 - t2)/(t1 + y*t2)");
        let swapped = a.map_automorphism(|m| {
            let mut n = *m;
            n.0.swap(0, 1);
            n
        });
        assert_eq!(swapped, r("(t2 - t1)/(t2 + y*t1)"));
    }
}
