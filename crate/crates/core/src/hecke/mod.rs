mod qpoly;

pub use qpoly::QPoly;

use crate::coxeter::{WeylElem, WeylGroup};
use crate::extaffine::{ExtAffine, ExtAffineElem};
use rustc_hash::FxHashMap;
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

/// Element of the Hecke algebra, as coefficients on the standard basis `T_w`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HeckeElem {
    pub coeffs: BTreeMap<WeylElem, QPoly>,
}

impl HeckeElem {
    pub fn zero() -> Self {
        HeckeElem { coeffs: BTreeMap::new() }
    }

    pub fn basis(w: WeylElem) -> Self {
        HeckeElem::term(w, QPoly::one())
    }

    pub fn term(w: WeylElem, c: QPoly) -> Self {
        let mut h = HeckeElem::zero();
        h.add_term(w, &c);
        h
    }

    pub fn add_term(&mut self, w: WeylElem, c: &QPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(w).or_insert_with(QPoly::zero);
        *e = &*e + c;
        if e.is_zero() {
            self.coeffs.remove(&w);
        }
    }

    pub fn coeff(&self, w: WeylElem) -> QPoly {
        self.coeffs.get(&w).cloned().unwrap_or_else(QPoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &HeckeElem) -> HeckeElem {
        let mut r = self.clone();
        for (w, c) in &o.coeffs {
            r.add_term(*w, c);
        }
        r
    }

    pub fn scale(&self, c: &QPoly) -> HeckeElem {
        let mut r = HeckeElem::zero();
        for (w, a) in &self.coeffs {
            r.add_term(*w, &(a * c));
        }
        r
    }
}

/// Hecke algebra of a finite Weyl group with `(T_s + 1)(T_s - q) = 0`.
pub struct Hecke {
    pub g: Arc<WeylGroup>,
    rmemo: Mutex<FxHashMap<(u32, u32), QPoly>>,
    inv_memo: Mutex<FxHashMap<u32, HeckeElem>>,
}

impl Hecke {
    pub fn new(g: Arc<WeylGroup>) -> Hecke {
        Hecke { g, rmemo: Mutex::new(FxHashMap::default()), inv_memo: Mutex::new(FxHashMap::default()) }
    }

    /// `h * T_s`.
    pub fn mul_s_right(&self, h: &HeckeElem, s: usize) -> HeckeElem {
        let mut r = HeckeElem::zero();
        for (&w, c) in &h.coeffs {
            let ws = self.g.rmul_s(w, s);
            if self.g.length(ws) > self.g.length(w) {
                r.add_term(ws, c);
            } else {
                r.add_term(w, &(c * &QPoly::q_minus_one()));
                r.add_term(ws, &c.shift(1));
            }
        }
        r
    }

    /// `T_s * h`.
    pub fn mul_s_left(&self, s: usize, h: &HeckeElem) -> HeckeElem {
        let mut r = HeckeElem::zero();
        for (&w, c) in &h.coeffs {
            let sw = self.g.lmul_s(s, w);
            if self.g.length(sw) > self.g.length(w) {
                r.add_term(sw, c);
            } else {
                r.add_term(w, &(c * &QPoly::q_minus_one()));
                r.add_term(sw, &c.shift(1));
            }
        }
        r
    }

    /// `h * T_s^{-1}` with `T_s^{-1} = q^{-1} T_s + (q^{-1} - 1)`.
    pub fn mul_s_inv_right(&self, h: &HeckeElem, s: usize) -> HeckeElem {
        let a = self.mul_s_right(h, s).scale(&QPoly::q_pow(-1));
        let b = h.scale(&(&QPoly::q_pow(-1) - &QPoly::one()));
        a.add(&b)
    }

    pub fn mul(&self, a: &HeckeElem, b: &HeckeElem) -> HeckeElem {
        let mut r = HeckeElem::zero();
        for (&v, c) in &b.coeffs {
            let mut t = a.clone();
            for &i in self.g.word(v) {
                t = self.mul_s_right(&t, i as usize);
            }
            r = r.add(&t.scale(c));
        }
        r
    }

    /// `T_w^{-1}`.
    pub fn t_inverse(&self, w: WeylElem) -> HeckeElem {
        if let Some(h) = self.inv_memo.lock().unwrap().get(&w.0) {
            return h.clone();
        }
        // T_w^{-1} = T_{s_k}^{-1} ... T_{s_1}^{-1} for w = s_1 ... s_k
        let mut h = HeckeElem::basis(WeylElem::ID);
        for &i in self.g.word(w).iter().rev() {
            h = self.mul_s_inv_right(&h, i as usize);
        }
        self.inv_memo.lock().unwrap().insert(w.0, h.clone());
        h
    }

    /// `sum a_w T_w -> sum bar(a_w) T_{w^{-1}}^{-1}`.
    pub fn bar(&self, h: &HeckeElem) -> HeckeElem {
        let mut r = HeckeElem::zero();
        for (&w, c) in &h.coeffs {
            r = r.add(&self.t_inverse(self.g.inverse(w)).scale(&c.bar()));
        }
        r
    }

    /// R-polynomial by the left-descent recursion.
    pub fn r_poly(&self, u: WeylElem, w: WeylElem) -> QPoly {
        if let Some(p) = self.rmemo.lock().unwrap().get(&(u.0, w.0)) {
            return p.clone();
        }
        let g = &self.g;
        let r = if g.length(w) == 0 {
            if u == w {
                QPoly::one()
            } else {
                QPoly::zero()
            }
        } else if g.length(u) > g.length(w) || !g.bruhat_leq(u, w) {
            QPoly::zero()
        } else {
            let s = g.word(w)[0] as usize;
            let sw = g.lmul_s(s, w);
            let su = g.lmul_s(s, u);
            if g.length(su) < g.length(u) {
                self.r_poly(su, sw)
            } else {
                &(&QPoly::q_minus_one() * &self.r_poly(u, sw)) + &self.r_poly(su, sw).shift(1)
            }
        };
        self.rmemo.lock().unwrap().insert((u.0, w.0), r.clone());
        r
    }

    /// R-polynomial read off the expansion of `T_{w^{-1}}^{-1}`.
    pub fn r_poly_def(&self, u: WeylElem, w: WeylElem) -> QPoly {
        let h = self.t_inverse(self.g.inverse(w));
        extract_r(&h.coeff(u), self.g.length(u) as i32)
    }

    /// Twisted R-polynomial read off `T_v T_{w^{-1}}^{-1}` at `T_{vu}`.
    pub fn twisted_r(&self, u: WeylElem, w: WeylElem, v: WeylElem) -> QPoly {
        let h = self.mul(&HeckeElem::basis(v), &self.t_inverse(self.g.inverse(w)));
        let vu = self.g.mul(v, u);
        extract_r(&h.coeff(vu), self.g.length(vu) as i32 - self.g.length(v) as i32)
    }

    /// `T_v T_{w^{-1}}^{-1}`, shared across all `u` for one `(v, w)`.
    pub fn twisted_expansion(&self, w: WeylElem, v: WeylElem) -> HeckeElem {
        self.mul(&HeckeElem::basis(v), &self.t_inverse(self.g.inverse(w)))
    }

    pub fn twisted_from_expansion(&self, h: &HeckeElem, u: WeylElem, v: WeylElem) -> QPoly {
        let vu = self.g.mul(v, u);
        extract_r(&h.coeff(vu), self.g.length(vu) as i32 - self.g.length(v) as i32)
    }

    /// CSV rows `u,w,coefficients` over all pairs with `u <= w`.
    pub fn csv_dump(&self) -> String {
        let mut out = String::from("u,w,coeffs\n");
        for w in self.g.elements() {
            for u in self.g.elements() {
                if self.g.bruhat_leq(u, w) {
                    out.push_str(&format!(
                        "{},{},{}\n",
                        self.g.fmt_elem(u),
                        self.g.fmt_elem(w),
                        self.r_poly(u, w).coeff_list()
                    ));
                }
            }
        }
        out
    }
}

/// Turns a Hecke coefficient `c = q^{-shift} bar(R)` into `R`.
pub fn extract_r(c: &QPoly, shift: i32) -> QPoly {
    c.shift(shift).bar()
}

/// R-polynomials of the extended affine Weyl group by the same recursion.
pub struct AffineHecke {
    pub a: Arc<ExtAffine>,
    memo: Mutex<FxHashMap<(ExtAffineElem, ExtAffineElem), QPoly>>,
}

impl AffineHecke {
    pub fn new(a: Arc<ExtAffine>) -> AffineHecke {
        AffineHecke { a, memo: Mutex::new(FxHashMap::default()) }
    }

    pub fn r_poly(&self, u: &ExtAffineElem, w: &ExtAffineElem) -> QPoly {
        let key = (u.clone(), w.clone());
        if let Some(p) = self.memo.lock().unwrap().get(&key) {
            return p.clone();
        }
        let a = &self.a;
        let lw = a.length(w);
        let r = if a.omega_class(u) != a.omega_class(w) || a.length(u) > lw {
            QPoly::zero()
        } else if lw == 0 {
            if u == w {
                QPoly::one()
            } else {
                QPoly::zero()
            }
        } else {
            let s = (0..a.n_simple()).find(|&i| a.has_left_descent(i, w)).unwrap();
            let sw = a.lmul_s(s, w);
            let su = a.lmul_s(s, u);
            if a.has_left_descent(s, u) {
                self.r_poly(&su, &sw)
            } else {
                &(&QPoly::q_minus_one() * &self.r_poly(u, &sw)) + &self.r_poly(&su, &sw).shift(1)
            }
        };
        self.memo.lock().unwrap().insert(key, r.clone());
        r
    }
}
