use crate::ring::{Int, LaurentPoly, Mono, Var};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense Laurent polynomial in one variable `q`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    low: i32,
    coeffs: Vec<Int>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(1)
    }

    pub fn constant(c: impl Into<Int>) -> Self {
        QPoly::from_coeffs(0, vec![c.into()])
    }

    /// `q^k`.
    pub fn q_pow(k: i32) -> Self {
        QPoly::from_coeffs(k, vec![Int::ONE])
    }

    /// `q - 1`.
    pub fn q_minus_one() -> Self {
        QPoly::from_coeffs(0, vec![Int::from(-1), Int::ONE])
    }

    pub fn from_coeffs(low: i32, coeffs: Vec<Int>) -> Self {
        let mut p = QPoly { low, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low(&self) -> i32 {
        self.low
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn coeff(&self, k: i32) -> Int {
        let i = k - self.low;
        if i < 0 || i as usize >= self.coeffs.len() {
            Int::ZERO
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Highest exponent, or `None` for zero.
    pub fn degree(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn shift(&self, k: i32) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        QPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// `q -> q^{-1}`.
    pub fn bar(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let high = self.low + self.coeffs.len() as i32 - 1;
        let mut c = self.coeffs.clone();
        c.reverse();
        QPoly { low: -high, coeffs: c }
    }

    pub fn scale(&self, c: &Int) -> QPoly {
        QPoly::from_coeffs(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Value at `q = -y` in the multivariate ring.
    pub fn at_neg_y(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.coeffs.iter().enumerate().map(|(i, c)| {
            let e = self.low + i as i32;
            let c = if e.rem_euclid(2) == 1 { -c } else { c.clone() };
            (Mono::var_pow(Var::Y, e as i16), c)
        }))
    }

    /// As a polynomial in `q`.
    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Mono::var_pow(Var::Q, (self.low + i as i32) as i16), c.clone())),
        )
    }

    /// Ascending coefficient list, e.g. `1 -3 4 -3 1`; a nonzero lowest exponent is prefixed as `q^k:`.
    pub fn coeff_list(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let body: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        if self.low == 0 {
            body.join(" ")
        } else {
            format!("q^{}: {}", self.low, body.join(" "))
        }
    }

    pub fn eval_i64(&self, q: i64) -> Option<Int> {
        if self.low < 0 && q.abs() != 1 {
            return None;
        }
        let mut acc = Int::ZERO;
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.low + i as i32;
            let qe = if e >= 0 { Int::from(q).pow(e as u32) } else { Int::from(q).pow((-e) as u32) };
            acc = &acc + &(c * &qe);
        }
        Some(acc)
    }
}

impl<'a> Add<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let high = self.degree().unwrap().max(o.degree().unwrap());
        let c = (low..=high).map(|k| &self.coeff(k) + &o.coeff(k)).collect();
        QPoly::from_coeffs(low, c)
    }
}

impl<'a> Sub<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn sub(self, o: &QPoly) -> QPoly {
        self + &(-o)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<'a> Mul<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![Int::ZERO; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += &(a * b);
            }
        }
        QPoly::from_coeffs(self.low + o.low, c)
    }
}

macro_rules! owned {
    ($tr:ident, $f:ident) => {
        impl $tr for QPoly {
            type Output = QPoly;
            fn $f(self, o: QPoly) -> QPoly {
                (&self).$f(&o)
            }
        }
    };
}
owned!(Add, add);
owned!(Sub, sub);
owned!(Mul, mul);

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_laurent())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.coeff_list())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bar_and_shift() {
        let p = QPoly::q_minus_one();
        assert_eq!(p.bar().coeff_list(), "q^-1: 1 -1");
        assert_eq!(p.bar().shift(1).coeff_list(), "1 -1");
        assert_eq!((&p * &p).coeff_list(), "1 -2 1");
    }

    #[test]
    fn neg_y_substitution() {
        let p = QPoly::from_coeffs(0, vec![1.into(), (-3).into(), 4.into()]);
        assert_eq!(p.at_neg_y().to_string(), "4*y^2 + 3*y + 1");
    }
}
