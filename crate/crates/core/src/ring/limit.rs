use super::int::Int;
use super::mono::{Mono, Var, NA, NT};
use super::poly::LaurentPoly;
use super::ratfun::RatFun;
use crate::error::{Error, Result};
use num_rational::Ratio;
use num_traits::{One, Zero};

type Q = Ratio<i64>;

/// Coordinates `z_i = e^{b_i}` on the torus-character lattice spanned by `b_1..b_r`.
///
/// Each `b_i` is an exponent vector over the torus slots.
#[derive(Clone, Debug)]
pub struct RootBasis {
    basis: Vec<Vec<i64>>,
    pivots: Vec<usize>,
    inv: Vec<Vec<Q>>,
}

impl RootBasis {
    pub fn new(basis: Vec<Vec<i64>>) -> Result<Self> {
        let r = basis.len();
        if r > NA {
            return Err(Error::Unsupported(format!("rank {r} exceeds {NA} limit coordinates")));
        }
        let dim = basis.first().map(|b| b.len()).unwrap_or(0);
        if dim > NT {
            return Err(Error::DimensionMismatch { expected: NT, got: dim });
        }
        if basis.iter().any(|b| b.len() != dim) {
            return Err(Error::IllFormed("basis vectors of unequal length".into()));
        }
        // choose r independent coordinates by elimination on the transpose
        let rows: Vec<Vec<Q>> =
            (0..dim).map(|j| basis.iter().map(|b| Q::from_integer(b[j])).collect()).collect();
        let mut pivots = Vec::new();
        let mut work: Vec<Vec<Q>> = Vec::new();
        for (j, row) in rows.iter().enumerate() {
            let mut v = row.clone();
            for w in work.iter() {
                if let Some(c) = lead_col(w) {
                    if !v[c].is_zero() {
                        let f = v[c] / w[c];
                        for t in 0..r {
                            v[t] -= f * w[t];
                        }
                    }
                }
            }
            if v.iter().any(|x| !x.is_zero()) {
                work.push(v);
                pivots.push(j);
            }
            if pivots.len() == r {
                break;
            }
        }
        if pivots.len() < r {
            return Err(Error::IllFormed("limit basis is not linearly independent".into()));
        }
        let m: Vec<Vec<Q>> =
            pivots.iter().map(|&j| basis.iter().map(|b| Q::from_integer(b[j])).collect()).collect();
        let inv = invert(m);
        Ok(RootBasis { basis, pivots, inv })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Integer coordinates of `e` in the basis, if it lies in the span.
    pub fn coords(&self, e: &[i64]) -> Result<Vec<i64>> {
        let r = self.rank();
        let rhs: Vec<Q> = self.pivots.iter().map(|&j| Q::from_integer(e.get(j).copied().unwrap_or(0))).collect();
        let c: Vec<Q> = (0..r).map(|i| (0..r).fold(Q::zero(), |acc, k| acc + self.inv[i][k] * rhs[k])).collect();
        if c.iter().any(|x| !x.is_integer()) {
            return Err(Error::NotCharacter(format!("{e:?}")));
        }
        let c: Vec<i64> = c.iter().map(|x| x.to_integer()).collect();
        for j in 0..NT {
            let want = e.get(j).copied().unwrap_or(0);
            let got: i64 = (0..r).map(|i| c[i] * self.basis[i].get(j).copied().unwrap_or(0)).sum();
            if want != got {
                return Err(Error::NotCharacter(format!("{e:?}")));
            }
        }
        Ok(c)
    }

    /// Rewrites torus exponents, relative to `shift`, in the `a_i` slots.
    pub fn rewrite(&self, p: &LaurentPoly, shift: &[i16]) -> Result<LaurentPoly> {
        let mut terms = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            let e: Vec<i64> = (0..NT).map(|j| (m.0[j] - shift[j]) as i64).collect();
            let z = self.coords(&e)?;
            let mut n = *m;
            for j in 0..NT {
                n.0[j] = 0;
            }
            for (i, &zi) in z.iter().enumerate() {
                n.0[Var::A(i + 1).slot()] += zi as i16;
            }
            terms.push((n, c.clone()));
        }
        Ok(LaurentPoly::from_terms(terms))
    }

    /// Numerator and denominator of `f` in the `a_i` slots, after dividing both by
    /// the leading torus monomial of the denominator.
    pub fn rewrite_ratfun(&self, f: &RatFun) -> Result<(LaurentPoly, LaurentPoly)> {
        let lead = f.denom().leading().map(|t| t.0).unwrap_or(Mono::ONE);
        let shift: Vec<i16> = lead.t_part().to_vec();
        Ok((self.rewrite(f.numer(), &shift)?, self.rewrite(f.denom(), &shift)?))
    }
}

fn lead_col(v: &[Q]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

fn invert(mut m: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut inv: Vec<Vec<Q>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero()).expect("singular pivot block");
        m.swap(col, p);
        inv.swap(col, p);
        let d = m[col][col];
        for j in 0..n {
            m[col][j] /= d;
            inv[col][j] /= d;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for j in 0..n {
                    let a = m[col][j];
                    let b = inv[col][j];
                    m[r][j] -= f * a;
                    inv[r][j] -= f * b;
                }
            }
        }
    }
    inv
}

/// Iterated limit `z_i -> 0` in the given coordinate order.
///
/// At each step the lowest `z_i`-degrees of numerator and denominator are
/// compared: a higher numerator degree gives 0, equal degrees keep the ratio of
/// the lowest coefficients, and a higher denominator degree diverges.
pub fn chamber_limit(f: &RatFun, basis: &RootBasis, order: &[usize]) -> Result<RatFun> {
    if f.is_zero() {
        return Ok(RatFun::zero());
    }
    let (mut n, mut d) = basis.rewrite_ratfun(f)?;
    for &i in order {
        if i >= basis.rank() {
            return Err(Error::DimensionMismatch { expected: basis.rank(), got: i + 1 });
        }
        let slot = Var::A(i + 1).slot();
        let nd = n.min_degree_in(slot);
        let dd = d.min_degree_in(slot);
        if nd > dd {
            return Ok(RatFun::zero());
        }
        if nd < dd {
            return Err(Error::Diverges { coord: i + 1 });
        }
        n = n.coeff_of(slot, nd as i16);
        d = d.coeff_of(slot, dd as i16);
    }
    Ok(RatFun::new(n, d))
}

/// Lowest nonvanishing homogeneous component of `p` under `e^{c.a} = sum (c.a)^k / k!`.
///
/// Returns `(k, k! * component)`; the scaled component has integer coefficients.
/// `p` must involve only the `a_i` slots.
pub fn lowest_component(p: &LaurentPoly, max_degree: u32) -> Option<(u32, LaurentPoly)> {
    if p.is_zero() {
        return None;
    }
    let forms: Vec<(LaurentPoly, Int)> = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let form = LaurentPoly::from_terms((0..NA).filter_map(|i| {
                let e = m.0[Var::A(i + 1).slot()];
                (e != 0).then(|| (Mono::var(Var::A(i + 1)), Int::from(e as i64)))
            }));
            (form, c.clone())
        })
        .collect();
    let mut powers: Vec<LaurentPoly> = vec![LaurentPoly::one(); forms.len()];
    for k in 0..=max_degree {
        let mut acc = LaurentPoly::zero();
        for (j, (form, c)) in forms.iter().enumerate() {
            if k > 0 {
                powers[j] = &powers[j] * form;
            }
            acc = &acc + &powers[j].scale(c);
        }
        if !acc.is_zero() {
            return Some((k, acc));
        }
    }
    None
}
