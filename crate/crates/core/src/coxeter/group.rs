use super::datum::{RootDatum, RootId};
use crate::error::{Error, Result};
use crate::ring::{Mono, RatFun, NT};
use rustc_hash::FxHashMap;
use std::fmt;
use std::sync::OnceLock;

const MAX_ORDER: usize = 50_000;

/// Element of a finite Weyl group, as an index into its group's tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElem(pub u32);

impl WeylElem {
    pub const ID: WeylElem = WeylElem(0);

    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// Finite Weyl group with precomputed multiplication and root-action tables.
pub struct WeylGroup {
    pub datum: RootDatum,
    mats: Vec<Vec<i64>>,
    rmul: Vec<Vec<u32>>,
    lmul: Vec<Vec<u32>>,
    inv: Vec<u32>,
    len: Vec<u32>,
    words: Vec<Vec<u8>>,
    root_act: Vec<Vec<u32>>,
    bruhat: OnceLock<Vec<Vec<u64>>>,
}

fn mat_mul(a: &[i64], b: &[i64], d: usize) -> Vec<i64> {
    let mut c = vec![0; d * d];
    for i in 0..d {
        for k in 0..d {
            let x = a[i * d + k];
            if x == 0 {
                continue;
            }
            for j in 0..d {
                c[i * d + j] += x * b[k * d + j];
            }
        }
    }
    c
}

impl WeylGroup {
    pub fn parse(s: &str) -> Result<WeylGroup> {
        WeylGroup::new(RootDatum::parse(s)?)
    }

    pub fn new(datum: RootDatum) -> Result<WeylGroup> {
        let d = datum.dim;
        let r = datum.rank;
        let gens: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                let mut m = vec![0; d * d];
                for j in 0..d {
                    let mut e = vec![0; d];
                    e[j] = 1;
                    let col = datum.reflect_char(i, &e);
                    for k in 0..d {
                        m[k * d + j] = col[k];
                    }
                }
                m
            })
            .collect();
        let mut id = vec![0; d * d];
        for i in 0..d {
            id[i * d + i] = 1;
        }
        let mut index: FxHashMap<Vec<i64>, u32> = FxHashMap::default();
        index.insert(id.clone(), 0);
        let mut mats = vec![id];
        let mut len = vec![0u32];
        let mut rmul: Vec<Vec<u32>> = Vec::new();
        let mut k = 0;
        while k < mats.len() {
            let mut row = Vec::with_capacity(r);
            for g in &gens {
                let p = mat_mul(&mats[k], g, d);
                let next = mats.len() as u32;
                let e = *index.entry(p.clone()).or_insert_with(|| {
                    mats.push(p);
                    len.push(len[k] + 1);
                    next
                });
                row.push(e);
            }
            rmul.push(row);
            k += 1;
            if mats.len() > MAX_ORDER {
                return Err(Error::Unsupported(format!("Weyl group larger than {MAX_ORDER}")));
            }
        }
        let n = mats.len();
        let mut lmul = vec![vec![0u32; r]; n];
        for (w, m) in mats.iter().enumerate() {
            for (i, g) in gens.iter().enumerate() {
                lmul[w][i] = index[&mat_mul(g, m, d)];
            }
        }
        let mut words: Vec<Vec<u8>> = vec![Vec::new(); n];
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&w| len[w]);
        for &w in &order {
            if len[w] == 0 {
                continue;
            }
            let i = (0..r).find(|&i| len[lmul[w][i] as usize] < len[w]).expect("nonidentity has a left descent");
            let mut word = vec![i as u8];
            word.extend_from_slice(&words[lmul[w][i] as usize]);
            words[w] = word;
        }
        let mut inv = vec![0u32; n];
        for w in 0..n {
            let mut x = 0u32;
            for &i in words[w].iter().rev() {
                x = rmul[x as usize][i as usize];
            }
            inv[w] = x;
        }
        let nr = datum.roots.len();
        let mut root_act = vec![vec![0u32; nr]; n];
        for w in 0..n {
            for (ri, root) in datum.roots.iter().enumerate() {
                let v: Vec<i64> =
                    (0..d).map(|a| (0..d).map(|b| mats[w][a * d + b] * root.vec[b]).sum()).collect();
                root_act[w][ri] = datum.root_id(&v).expect("Weyl group permutes roots") as u32;
            }
        }
        Ok(WeylGroup { datum, mats, rmul, lmul, inv, len, words, root_act, bruhat: OnceLock::new() })
    }

    pub fn order(&self) -> usize {
        self.mats.len()
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn elements(&self) -> impl Iterator<Item = WeylElem> + '_ {
        (0..self.order() as u32).map(WeylElem)
    }

    pub fn id(&self) -> WeylElem {
        WeylElem::ID
    }

    pub fn s(&self, i: usize) -> WeylElem {
        WeylElem(self.rmul[0][i])
    }

    pub fn length(&self, w: WeylElem) -> usize {
        self.len[w.idx()] as usize
    }

    /// Greedy reduced word, 0-based letters.
    pub fn word(&self, w: WeylElem) -> &[u8] {
        &self.words[w.idx()]
    }

    pub fn word_vec(&self, w: WeylElem) -> Vec<usize> {
        self.words[w.idx()].iter().map(|&i| i as usize).collect()
    }

    pub fn rmul_s(&self, w: WeylElem, i: usize) -> WeylElem {
        WeylElem(self.rmul[w.idx()][i])
    }

    pub fn lmul_s(&self, i: usize, w: WeylElem) -> WeylElem {
        WeylElem(self.lmul[w.idx()][i])
    }

    pub fn inverse(&self, w: WeylElem) -> WeylElem {
        WeylElem(self.inv[w.idx()])
    }

    pub fn mul(&self, a: WeylElem, b: WeylElem) -> WeylElem {
        let mut x = a.0;
        for &i in &self.words[b.idx()] {
            x = self.rmul[x as usize][i as usize];
        }
        WeylElem(x)
    }

    pub fn from_word(&self, word: &[usize]) -> Result<WeylElem> {
        let mut x = 0u32;
        for &i in word {
            if i >= self.rank() {
                return Err(Error::Parse(format!("letter s{} out of range", i + 1)));
            }
            x = self.rmul[x as usize][i];
        }
        Ok(WeylElem(x))
    }

    pub fn is_reduced(&self, word: &[usize]) -> bool {
        self.from_word(word).map(|w| self.length(w) == word.len()).unwrap_or(false)
    }

    pub fn longest(&self) -> WeylElem {
        WeylElem((0..self.order()).max_by_key(|&w| self.len[w]).unwrap() as u32)
    }

    pub fn has_right_descent(&self, w: WeylElem, i: usize) -> bool {
        self.len[self.rmul[w.idx()][i] as usize] < self.len[w.idx()]
    }

    pub fn has_left_descent(&self, w: WeylElem, i: usize) -> bool {
        self.len[self.lmul[w.idx()][i] as usize] < self.len[w.idx()]
    }

    /// Character matrix, row-major.
    pub fn matrix(&self, w: WeylElem) -> &[i64] {
        &self.mats[w.idx()]
    }

    pub fn act_char(&self, w: WeylElem, mu: &[i64]) -> Vec<i64> {
        let d = self.datum.dim;
        let m = &self.mats[w.idx()];
        (0..d).map(|a| (0..d).map(|b| m[a * d + b] * mu[b]).sum()).collect()
    }

    /// Action on cocharacters: the transpose of the character matrix of `w^{-1}`.
    pub fn act_cochar(&self, w: WeylElem, lam: &[i64]) -> Vec<i64> {
        let d = self.datum.dim;
        let m = &self.mats[self.inv[w.idx()] as usize];
        (0..d).map(|a| (0..d).map(|b| m[b * d + a] * lam[b]).sum()).collect()
    }

    pub fn act_root(&self, w: WeylElem, r: RootId) -> RootId {
        self.root_act[w.idx()][r] as RootId
    }

    /// Finds `w` with the given character matrix.
    pub fn from_matrix(&self, m: &[i64]) -> Option<WeylElem> {
        self.mats.iter().position(|x| x == m).map(|i| WeylElem(i as u32))
    }

    /// `w` applied to a rational function in the torus generators.
    pub fn act_ratfun(&self, w: WeylElem, f: &RatFun) -> RatFun {
        if w == WeylElem::ID {
            return f.clone();
        }
        let d = self.datum.dim;
        let m = self.mats[w.idx()].clone();
        f.map_automorphism(move |mono: &Mono| {
            let mut out = *mono;
            for a in 0..d.min(NT) {
                out.0[a] = (0..d).map(|b| m[a * d + b] as i16 * mono.0[b]).sum();
            }
            out
        })
    }

    /// Inversion count `#{a > 0 : w a < 0}`.
    pub fn inversions(&self, w: WeylElem) -> usize {
        self.datum.positive().filter(|&r| !self.datum.is_positive(self.act_root(w, r))).count()
    }

    fn bruhat_table(&self) -> &Vec<Vec<u64>> {
        self.bruhat.get_or_init(|| {
            let n = self.order();
            let words = n.div_ceil(64);
            let mut rows: Vec<Vec<u64>> = vec![Vec::new(); n];
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&w| self.len[w]);
            for &w in &order {
                let mut row = vec![0u64; words];
                if self.len[w] == 0 {
                    row[0] |= 1;
                } else {
                    let s = self.words[w][0] as usize;
                    let sw = self.lmul[w][s] as usize;
                    let prev = &rows[sw];
                    for u in 0..n {
                        let su = self.lmul[u][s] as usize;
                        let src = if self.len[su] < self.len[u] { su } else { u };
                        if prev[src / 64] >> (src % 64) & 1 == 1 {
                            row[u / 64] |= 1 << (u % 64);
                        }
                    }
                }
                rows[w] = row;
            }
            rows
        })
    }

    pub fn bruhat_leq(&self, u: WeylElem, w: WeylElem) -> bool {
        let t = self.bruhat_table();
        t[w.idx()][u.idx() / 64] >> (u.idx() % 64) & 1 == 1
    }

    /// Minimal-length coset representatives for `W/W_P`, sorted by length then word.
    pub fn min_coset_reps(&self, p: &[usize]) -> Vec<WeylElem> {
        let mut v: Vec<WeylElem> =
            self.elements().filter(|&w| p.iter().all(|&i| !self.has_right_descent(w, i))).collect();
        v.sort_by(|a, b| (self.length(*a), self.word(*a)).cmp(&(self.length(*b), self.word(*b))));
        v
    }

    /// Minimal representative of `w W_P`.
    pub fn coset_rep(&self, w: WeylElem, p: &[usize]) -> WeylElem {
        let mut x = w;
        while let Some(&i) = p.iter().find(|&&i| self.has_right_descent(x, i)) {
            x = self.rmul_s(x, i);
        }
        x
    }

    /// Elements of the parabolic subgroup generated by `p`.
    pub fn parabolic_subgroup(&self, p: &[usize]) -> Vec<WeylElem> {
        self.elements().filter(|&w| self.word(w).iter().all(|&i| p.contains(&(i as usize)))).collect()
    }

    /// `beta_k = s_{i_1} ... s_{i_{k-1}} alpha_{i_k}`.
    pub fn beta_sequence(&self, word: &[usize]) -> Vec<RootId> {
        let mut p = WeylElem::ID;
        let mut out = Vec::with_capacity(word.len());
        for &i in word {
            out.push(self.act_root(p, self.datum.simple_id(i)));
            p = self.rmul_s(p, i);
        }
        out
    }

    /// Parses `s1.s2.s1`, `e`, or `id`.
    pub fn parse_elem(&self, s: &str) -> Result<WeylElem> {
        let w = parse_word(s)?;
        self.from_word(&w)
    }

    pub fn fmt_elem(&self, w: WeylElem) -> String {
        format_word(self.word(w).iter().map(|&i| i as usize))
    }
}

/// Parses a dotted word into 0-based letters.
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() || s == "e" || s == "id" {
        return Ok(Vec::new());
    }
    s.split(['.', '*', ','])
        .filter(|t| !t.is_empty())
        .map(|t| {
            let t = t.trim();
            let num = t.strip_prefix('s').ok_or_else(|| Error::Parse(format!("letter {t:?}")))?;
            let i: usize = num.parse().map_err(|_| Error::Parse(format!("letter {t:?}")))?;
            if i == 0 {
                return Err(Error::Parse("letters are 1-based".into()));
            }
            Ok(i - 1)
        })
        .collect()
}

pub fn format_word(w: impl IntoIterator<Item = usize>) -> String {
    let parts: Vec<String> = w.into_iter().map(|i| format!("s{}", i + 1)).collect();
    if parts.is_empty() {
        "e".into()
    } else {
        parts.join(".")
    }
}

impl fmt::Debug for WeylGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylGroup({}, order {})", self.datum.kind, self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        for (s, n) in [("A1", 2), ("A2", 6), ("A3", 24), ("B2", 8), ("G2", 12), ("D4", 192), ("GL3", 6)] {
            assert_eq!(WeylGroup::parse(s).unwrap().order(), n, "{s}");
        }
    }

    #[test]
    fn lengths() {
        let g = WeylGroup::parse("A2").unwrap();
        assert_eq!(g.length(g.id()), 0);
        assert_eq!(g.length(g.parse_elem("s1.s2.s1").unwrap()), 3);
        let a4 = WeylGroup::parse("A4").unwrap();
        assert_eq!(a4.length(a4.parse_elem("s3.s4.s3.s2").unwrap()), 4);
    }

    #[test]
    fn incomparable_simple_reflections() {
        let g = WeylGroup::parse("A2").unwrap();
        assert!(!g.bruhat_leq(g.s(0), g.s(1)));
        assert!(g.bruhat_leq(g.id(), g.longest()));
    }

    #[test]
    fn coset_reps_gr13() {
        let g = WeylGroup::parse("A2").unwrap();
        let reps = g.min_coset_reps(&[1]);
        let lens: Vec<usize> = reps.iter().map(|&w| g.length(w)).collect();
        assert_eq!(lens, vec![0, 1, 2]);
        assert_eq!(g.min_coset_reps(&[0, 1]), vec![g.id()]);
        assert_eq!(g.min_coset_reps(&[]).len(), 6);
    }

    #[test]
    fn beta_sequence_examples() {
        let g = WeylGroup::parse("A2").unwrap();
        let b = g.beta_sequence(&[0, 1]);
        assert_eq!(g.datum.roots[b[0]].coeffs, vec![1, 0]);
        assert_eq!(g.datum.roots[b[1]].coeffs, vec![1, 1]);
    }
}
