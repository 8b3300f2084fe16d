use crate::coxeter::{pair, RootId, WeylElem, WeylGroup};
use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// `w t_lambda` in `W ⋉ X_*(T)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtAffineElem {
    pub w: WeylElem,
    pub lam: Vec<i64>,
}

/// Affine root `mu + k delta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineRoot {
    pub mu: Vec<i64>,
    pub k: i64,
}

/// Extended affine Weyl group of a finite root datum.
pub struct ExtAffine {
    pub g: Arc<WeylGroup>,
    theta: RootId,
    s_theta: WeylElem,
}

impl ExtAffine {
    pub fn new(g: Arc<WeylGroup>) -> Result<ExtAffine> {
        if g.rank() == 0 {
            return Err(Error::Unsupported("affine group of a rank-0 datum".into()));
        }
        let theta = g.datum.theta();
        let d = g.datum.dim;
        let mut m = vec![0; d * d];
        for j in 0..d {
            let mut e = vec![0; d];
            e[j] = 1;
            let col = g.datum.reflect_char_root(theta, &e);
            for k in 0..d {
                m[k * d + j] = col[k];
            }
        }
        let s_theta = g.from_matrix(&m).expect("reflection in the highest root");
        Ok(ExtAffine { g, theta, s_theta })
    }

    pub fn parse(s: &str) -> Result<ExtAffine> {
        ExtAffine::new(Arc::new(WeylGroup::parse(s)?))
    }

    pub fn dim(&self) -> usize {
        self.g.datum.dim
    }

    /// Number of affine simple reflections, `s_0` included.
    pub fn n_simple(&self) -> usize {
        self.g.rank() + 1
    }

    pub fn theta(&self) -> RootId {
        self.theta
    }

    pub fn theta_coroot(&self) -> &[i64] {
        &self.g.datum.roots[self.theta].coroot
    }

    pub fn one(&self) -> ExtAffineElem {
        ExtAffineElem { w: WeylElem::ID, lam: vec![0; self.dim()] }
    }

    pub fn finite(&self, w: WeylElem) -> ExtAffineElem {
        ExtAffineElem { w, lam: vec![0; self.dim()] }
    }

    pub fn translation(&self, lam: &[i64]) -> Result<ExtAffineElem> {
        if lam.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: lam.len() });
        }
        Ok(ExtAffineElem { w: WeylElem::ID, lam: lam.to_vec() })
    }

    /// Affine simple reflection; index 0 is `s_0 = s_theta t_{-theta^vee}`.
    pub fn simple(&self, i: usize) -> ExtAffineElem {
        if i == 0 {
            let lam = self.theta_coroot().iter().map(|x| -x).collect();
            ExtAffineElem { w: self.s_theta, lam }
        } else {
            self.finite(self.g.s(i - 1))
        }
    }

    pub fn mul(&self, a: &ExtAffineElem, b: &ExtAffineElem) -> ExtAffineElem {
        let winv = self.g.inverse(b.w);
        let moved = self.g.act_cochar(winv, &a.lam);
        ExtAffineElem { w: self.g.mul(a.w, b.w), lam: moved.iter().zip(&b.lam).map(|(x, y)| x + y).collect() }
    }

    pub fn inverse(&self, a: &ExtAffineElem) -> ExtAffineElem {
        let lam = self.g.act_cochar(a.w, &a.lam).iter().map(|x| -x).collect();
        ExtAffineElem { w: self.g.inverse(a.w), lam }
    }

    pub fn rmul_s(&self, a: &ExtAffineElem, i: usize) -> ExtAffineElem {
        if i == 0 {
            let th = self.theta_coroot();
            let shifted: Vec<i64> = a.lam.iter().zip(th).map(|(x, t)| x + t).collect();
            let lam = self.g.datum.reflect_cochar_root(self.theta, &shifted);
            ExtAffineElem { w: self.g.mul(a.w, self.s_theta), lam }
        } else {
            ExtAffineElem { w: self.g.rmul_s(a.w, i - 1), lam: self.g.datum.reflect_cochar(i - 1, &a.lam) }
        }
    }

    pub fn lmul_s(&self, i: usize, a: &ExtAffineElem) -> ExtAffineElem {
        self.mul(&self.simple(i), a)
    }

    pub fn length(&self, a: &ExtAffineElem) -> usize {
        let d = &self.g.datum;
        let mut total = 0i64;
        for r in d.positive() {
            let c = pair(&d.roots[r].vec, &a.lam);
            let wr = self.g.act_root(a.w, r);
            total += if d.is_positive(wr) { c.abs() } else { (c + 1).abs() };
        }
        total as usize
    }

    /// `g (mu + k delta) = w mu + (k - <lambda, mu>) delta`.
    pub fn act_affine_root(&self, a: &ExtAffineElem, r: &AffineRoot) -> AffineRoot {
        let k = r.k - pair(&r.mu, &a.lam);
        AffineRoot { mu: self.g.act_char(a.w, &r.mu), k }
    }

    pub fn affine_simple_root(&self, i: usize) -> AffineRoot {
        let d = &self.g.datum;
        if i == 0 {
            AffineRoot { mu: d.roots[self.theta].vec.iter().map(|x| -x).collect(), k: 1 }
        } else {
            AffineRoot { mu: d.simple[i - 1].clone(), k: 0 }
        }
    }

    pub fn affine_root_positive(&self, r: &AffineRoot) -> bool {
        let id = self.g.datum.root_id(&r.mu).expect("finite part is a root");
        if self.g.datum.is_positive(id) {
            r.k >= 0
        } else {
            r.k >= 1
        }
    }

    pub fn has_right_descent(&self, a: &ExtAffineElem, i: usize) -> bool {
        !self.affine_root_positive(&self.act_affine_root(a, &self.affine_simple_root(i)))
    }

    pub fn has_left_descent(&self, i: usize, a: &ExtAffineElem) -> bool {
        let inv = self.inverse(a);
        self.has_right_descent(&inv, i)
    }

    /// Component of `a` in `W_ext / W_aff`.
    pub fn omega_class(&self, a: &ExtAffineElem) -> i64 {
        if self.g.datum.is_gl() {
            a.lam.iter().sum()
        } else {
            0
        }
    }

    /// Representative of an `Omega` class: a power of the cyclic shift for `GL_n`.
    pub fn omega_rep(&self, class: i64) -> ExtAffineElem {
        if !self.g.datum.is_gl() || class == 0 {
            return self.one();
        }
        let shift = self.shift();
        let step = if class > 0 { shift } else { self.inverse(&shift) };
        let mut x = self.one();
        for _ in 0..class.unsigned_abs() {
            x = self.mul(&x, &step);
        }
        x
    }

    /// `GL_n` element with window `[2, ..., n+1]`.
    pub fn shift(&self) -> ExtAffineElem {
        let n = self.dim();
        let win: Vec<i64> = (2..=n as i64 + 1).collect();
        self.from_window(&win).expect("shift window")
    }

    /// Writes `a = omega * s_{j_1} ... s_{j_m}` with `m = length(a)`.
    pub fn reduced_factorization(&self, a: &ExtAffineElem) -> (ExtAffineElem, Vec<usize>) {
        let mut x = a.clone();
        let mut rev = Vec::new();
        'strip: loop {
            for i in 0..self.n_simple() {
                if self.has_right_descent(&x, i) {
                    x = self.rmul_s(&x, i);
                    rev.push(i);
                    continue 'strip;
                }
            }
            break;
        }
        rev.reverse();
        (x, rev)
    }

    pub fn from_factorization(&self, omega: &ExtAffineElem, word: &[usize]) -> ExtAffineElem {
        word.iter().fold(omega.clone(), |acc, &i| self.rmul_s(&acc, i))
    }

    pub fn bruhat_leq(&self, u: &ExtAffineElem, w: &ExtAffineElem) -> bool {
        if self.omega_class(u) != self.omega_class(w) {
            return false;
        }
        let (mut u, mut w) = (u.clone(), w.clone());
        loop {
            let lw = self.length(&w);
            let lu = self.length(&u);
            if lu > lw {
                return false;
            }
            if lw == 0 {
                return u == w;
            }
            let s = (0..self.n_simple()).find(|&i| self.has_right_descent(&w, i)).unwrap();
            if self.has_right_descent(&u, s) {
                u = self.rmul_s(&u, s);
            }
            w = self.rmul_s(&w, s);
        }
    }

    /// `u t_lambda w^{-1}`.
    pub fn make_f(&self, u: WeylElem, w: WeylElem, lam: &[i64]) -> ExtAffineElem {
        ExtAffineElem { w: self.g.mul(u, self.g.inverse(w)), lam: self.g.act_cochar(w, lam) }
    }

    /// Inverse of [`make_f`](Self::make_f) over `w in W^P`.
    pub fn split_f(&self, f: &ExtAffineElem, lam: &[i64], reps: &[WeylElem]) -> Result<(WeylElem, WeylElem)> {
        let mut hit = None;
        for &w in reps {
            let lam2 = self.g.act_cochar(self.g.inverse(w), &f.lam);
            if lam2.iter().zip(lam).all(|(a, b)| a == b) {
                if hit.is_some() {
                    return Err(Error::NotInImage(format!("{f:?} has several preimages")));
                }
                hit = Some((self.g.mul(f.w, w), w));
            }
        }
        hit.ok_or_else(|| Error::NotInImage(self.fmt_elem(f).to_string()))
    }

    /// Window `[f(1), ..., f(n)]` with `f(i) = w(i) + n lambda_i`.
    pub fn window(&self, a: &ExtAffineElem) -> Result<Vec<i64>> {
        if !self.g.datum.is_gl() {
            return Err(Error::Unsupported("window notation needs GL_n".into()));
        }
        let n = self.dim();
        let perm = self.perm(a.w);
        Ok((0..n).map(|i| perm[i] as i64 + 1 + n as i64 * a.lam[i]).collect())
    }

    /// One-line notation of a finite `GL_n` element, 0-based.
    pub fn perm(&self, w: WeylElem) -> Vec<usize> {
        let n = self.dim();
        let m = self.g.matrix(w);
        (0..n).map(|j| (0..n).find(|&i| m[i * n + j] == 1).unwrap()).collect()
    }

    pub fn from_perm(&self, p: &[usize]) -> Result<WeylElem> {
        let n = self.dim();
        let mut m = vec![0; n * n];
        for (j, &i) in p.iter().enumerate() {
            m[i * n + j] = 1;
        }
        self.g.from_matrix(&m).ok_or_else(|| Error::IllFormed(format!("not a permutation: {p:?}")))
    }

    pub fn from_window(&self, win: &[i64]) -> Result<ExtAffineElem> {
        if !self.g.datum.is_gl() {
            return Err(Error::Unsupported("window notation needs GL_n".into()));
        }
        let n = self.dim() as i64;
        if win.len() != n as usize {
            return Err(Error::DimensionMismatch { expected: n as usize, got: win.len() });
        }
        let perm: Vec<usize> = win.iter().map(|&f| (f - 1).rem_euclid(n) as usize).collect();
        let mut seen = vec![false; n as usize];
        for &p in &perm {
            if seen[p] {
                return Err(Error::IllFormed(format!("window residues repeat: {win:?}")));
            }
            seen[p] = true;
        }
        let lam = win.iter().zip(&perm).map(|(&f, &p)| (f - 1 - p as i64) / n).collect();
        Ok(ExtAffineElem { w: self.from_perm(&perm)?, lam })
    }

    pub fn fmt_elem(&self, a: &ExtAffineElem) -> String {
        let lam: Vec<String> = a.lam.iter().map(|x| x.to_string()).collect();
        format!("{} t({})", self.g.fmt_elem(a.w), lam.join(","))
    }

    /// Elements of length at most `max_len` in the given `Omega` classes.
    pub fn ball(&self, max_len: usize, classes: &[i64]) -> Vec<ExtAffineElem> {
        let mut out = Vec::new();
        for &c in classes {
            let mut layer = vec![self.omega_rep(c)];
            let mut seen: std::collections::HashSet<ExtAffineElem> = layer.iter().cloned().collect();
            out.extend(layer.iter().cloned());
            for _ in 0..max_len {
                let mut next = Vec::new();
                for x in &layer {
                    for i in 0..self.n_simple() {
                        let y = self.rmul_s(x, i);
                        if !self.has_right_descent(x, i) && seen.insert(y.clone()) {
                            next.push(y);
                        }
                    }
                }
                out.extend(next.iter().cloned());
                layer = next;
            }
        }
        out
    }
}

/// Bounded affine permutations: `i <= f(i) <= i + n` with average shift `k`.
pub fn bounded_affine_perms(n: usize, k: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(i: usize, n: usize, k: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == n {
            let s: i64 = cur.iter().enumerate().map(|(j, &f)| f - j as i64 - 1).sum();
            if s == (k * n) as i64 {
                let mut res: Vec<i64> = cur.iter().map(|f| (f - 1).rem_euclid(n as i64)).collect();
                res.sort_unstable();
                if res.iter().enumerate().all(|(j, &r)| r == j as i64) {
                    out.push(cur.clone());
                }
            }
            return;
        }
        let base = i as i64 + 1;
        for f in base..=base + n as i64 {
            cur.push(f);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl fmt::Display for AffineRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}+{}d", self.mu, self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugation_law() {
        let a = ExtAffine::parse("GL2").unwrap();
        let s1 = a.simple(1);
        let t = a.translation(&[1, 0]).unwrap();
        let c = a.mul(&a.mul(&s1, &t), &s1);
        assert_eq!(c, a.translation(&[0, 1]).unwrap());
    }

    #[test]
    fn lengths() {
        let a = ExtAffine::parse("GL2").unwrap();
        assert_eq!(a.length(&a.translation(&[1, 0]).unwrap()), 1);
        assert_eq!(a.length(&a.shift()), 0);
        let g3 = ExtAffine::parse("GL3").unwrap();
        assert_eq!(g3.length(&g3.translation(&[1, 1, 0]).unwrap()), 2);
        assert_eq!(g3.length(&g3.translation(&[2, 1, 0]).unwrap()), 4);
    }

    #[test]
    fn windows() {
        let a = ExtAffine::parse("GL3").unwrap();
        assert_eq!(a.window(&a.one()).unwrap(), vec![1, 2, 3]);
        let f = a.from_window(&[2, 6, 4]).unwrap();
        assert_eq!(a.window(&f).unwrap(), vec![2, 6, 4]);
        let g7 = ExtAffine::parse("GL7").unwrap();
        let w = [2, 6, 5, 10, 8, 11, 7];
        assert_eq!(g7.window(&g7.from_window(&w).unwrap()).unwrap(), w.to_vec());
        assert_eq!(bounded_affine_perms(1, 1), vec![vec![2]]);
    }

    #[test]
    fn factorization_round_trip() {
        let a = ExtAffine::parse("GL2").unwrap();
        let t = a.translation(&[1, 0]).unwrap();
        let (om, word) = a.reduced_factorization(&t);
        assert_eq!(word.len(), 1);
        assert_eq!(a.length(&om), 0);
        assert_eq!(a.omega_class(&om), 1);
        assert_eq!(a.from_factorization(&om, &word), t);
    }
}
