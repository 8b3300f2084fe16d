use crate::coxeter::{RootDatum, RootId, WeylElem, WeylGroup};
use crate::error::{Error, Result};
use crate::ring::{LaurentPoly, RatFun, Var};
use rustc_hash::FxHashMap;
use std::fmt;

/// Positions of a subword split by use and descent, 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Classification {
    pub j_plus: Vec<usize>,
    pub j_minus: Vec<usize>,
    pub e_plus: Vec<usize>,
    pub e_minus: Vec<usize>,
}

impl Classification {
    pub fn is_reduced(&self) -> bool {
        self.j_minus.is_empty()
    }

    pub fn is_distinguished(&self) -> bool {
        self.e_minus.is_empty()
    }
}

fn fmt_set(s: &[usize]) -> String {
    if s.is_empty() {
        "{}".into()
    } else {
        let v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
        format!("{{{}}}", v.join(","))
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "J+={} J-={} E+={} E-={} {} {}",
            fmt_set(&self.j_plus),
            fmt_set(&self.j_minus),
            fmt_set(&self.e_plus),
            fmt_set(&self.e_minus),
            if self.is_reduced() { "reduced" } else { "not-reduced" },
            if self.is_distinguished() { "distinguished" } else { "not-distinguished" }
        )
    }
}

/// Which of the four cases a position falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    EMinus,
    JPlus,
    EPlus,
    JMinus,
}

impl Slot {
    fn of(used: bool, descent: bool) -> Slot {
        match (used, descent) {
            (false, true) => Slot::EMinus,
            (true, false) => Slot::JPlus,
            (false, false) => Slot::EPlus,
            (true, true) => Slot::JMinus,
        }
    }

    fn index(self) -> usize {
        match self {
            Slot::EMinus => 0,
            Slot::JPlus => 1,
            Slot::EPlus => 2,
            Slot::JMinus => 3,
        }
    }
}

/// Classifies the positions of `mask` in `word`, twisted by `v`.
pub fn classify(g: &WeylGroup, word: &[usize], mask: &[bool], v: WeylElem) -> Result<Classification> {
    if word.len() != mask.len() {
        return Err(Error::DimensionMismatch { expected: word.len(), got: mask.len() });
    }
    let mut c = Classification::default();
    let mut x = v;
    for (k, (&i, &m)) in word.iter().zip(mask).enumerate() {
        if i >= g.rank() {
            return Err(Error::Parse(format!("letter s{} out of range", i + 1)));
        }
        let slot = Slot::of(m, g.has_right_descent(x, i));
        let pos = k + 1;
        match slot {
            Slot::EMinus => c.e_minus.push(pos),
            Slot::JPlus => c.j_plus.push(pos),
            Slot::EPlus => c.e_plus.push(pos),
            Slot::JMinus => c.j_minus.push(pos),
        }
        if m {
            x = g.rmul_s(x, i);
        }
    }
    Ok(c)
}

/// Product of the selected letters.
pub fn subword_product(g: &WeylGroup, word: &[usize], mask: &[bool]) -> WeylElem {
    word.iter().zip(mask).filter(|(_, &m)| m).fold(WeylElem::ID, |x, (&i, _)| g.rmul_s(x, i))
}

/// All `u`-subwords of `word`, in lexicographic mask order with unused before used.
pub fn u_subwords(g: &WeylGroup, word: &[usize], u: WeylElem) -> Vec<Vec<bool>> {
    let mut out = Vec::new();
    let mut mask = Vec::with_capacity(word.len());
    dfs_masks(g, word, u, WeylElem::ID, &mut mask, &mut out);
    out
}

fn dfs_masks(g: &WeylGroup, word: &[usize], u: WeylElem, x: WeylElem, mask: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
    let k = mask.len();
    let rest = word.len() - k;
    if g.length(g.mul(g.inverse(x), u)) > rest {
        return;
    }
    if rest == 0 {
        out.push(mask.clone());
        return;
    }
    mask.push(false);
    dfs_masks(g, word, u, x, mask, out);
    mask.pop();
    mask.push(true);
    dfs_masks(g, word, u, g.rmul_s(x, word[k]), mask, out);
    mask.pop();
}

/// Four weight functions `p11, p12, p21, p22` tabulated on every root.
#[derive(Clone, Debug)]
pub struct WeightScheme {
    pub name: String,
    weights: Vec<[RatFun; 4]>,
    pub requires_reduced: bool,
}

impl WeightScheme {
    pub fn from_fn(
        name: &str,
        datum: &RootDatum,
        requires_reduced: bool,
        f: impl Fn(RootId) -> [RatFun; 4],
    ) -> WeightScheme {
        WeightScheme { name: name.into(), weights: (0..datum.roots.len()).map(f).collect(), requires_reduced }
    }

    pub fn uniform(name: &str, datum: &RootDatum, p: [RatFun; 4]) -> WeightScheme {
        WeightScheme::from_fn(name, datum, false, |_| p.clone())
    }

    /// `p11 = 0, p12 = 1, p21 = q - 1, p22 = q`.
    pub fn r_poly(datum: &RootDatum) -> WeightScheme {
        let q = RatFun::var(Var::Q);
        WeightScheme::uniform("R", datum, [RatFun::zero(), RatFun::one(), &q - &RatFun::one(), q])
    }

    /// Segre motivic Chern restriction weights.
    pub fn smc(datum: &RootDatum) -> WeightScheme {
        let y = RatFun::var(Var::Y);
        let one = RatFun::one();
        let one_y = &one + &y;
        WeightScheme::from_fn("SMC", datum, false, |r| {
            let e = datum.root_char(r);
            let den = &e + &y;
            let em1 = &e - &one;
            [
                &(&one_y * &e) / &den,
                &em1 / &den,
                &one_y / &den,
                &(&(-&y) * &em1) / &den,
            ]
        })
    }

    /// `p11 = 1, p12 = beta, p21 = 1, p22 = 0`, with `beta` a linear form in the `a_i`.
    pub fn ajs(datum: &RootDatum) -> WeightScheme {
        WeightScheme::from_fn("AJS", datum, true, |r| {
            [RatFun::one(), RatFun::from_poly(datum.root_linear_form(r)), RatFun::one(), RatFun::zero()]
        })
    }

    pub fn constant(datum: &RootDatum, c: i64) -> WeightScheme {
        let c = RatFun::constant(c);
        WeightScheme::uniform("constant", datum, [c.clone(), c.clone(), c.clone(), c])
    }

    pub fn weight(&self, slot: Slot, root: RootId) -> &RatFun {
        &self.weights[root][slot.index()]
    }
}

fn check_word(g: &WeylGroup, word: &[usize], scheme: &WeightScheme) -> Result<()> {
    if let Some(&i) = word.iter().find(|&&i| i >= g.rank()) {
        return Err(Error::Parse(format!("letter s{} out of range", i + 1)));
    }
    if scheme.requires_reduced && !g.is_reduced(word) {
        return Err(Error::NonReducedWord(crate::coxeter::format_word(word.iter().copied())));
    }
    Ok(())
}

/// Sum over `u`-subwords of the product of case weights at `beta_k`.
pub fn subword_sum(g: &WeylGroup, word: &[usize], u: WeylElem, scheme: &WeightScheme, v: WeylElem) -> Result<RatFun> {
    check_word(g, word, scheme)?;
    let betas = g.beta_sequence(word);
    let mut acc = RatFun::zero();
    for mask in u_subwords(g, word, u) {
        let mut x = v;
        let mut term = RatFun::one();
        for (k, (&i, &m)) in word.iter().zip(&mask).enumerate() {
            let slot = Slot::of(m, g.has_right_descent(x, i));
            let w = scheme.weight(slot, betas[k]);
            if w.is_zero() {
                term = RatFun::zero();
                break;
            }
            if !w.is_one() {
                term = &term * w;
            }
            if m {
                x = g.rmul_s(x, i);
            }
        }
        if !term.is_zero() {
            acc = &acc + &term;
        }
    }
    Ok(acc)
}

/// All values `S_{u,w}` at once by running the letter recursion over partial products.
pub fn subword_sum_dp_all(g: &WeylGroup, word: &[usize], scheme: &WeightScheme, v: WeylElem) -> Result<FxHashMap<WeylElem, RatFun>> {
    check_word(g, word, scheme)?;
    let betas = g.beta_sequence(word);
    let mut cur: FxHashMap<WeylElem, RatFun> = FxHashMap::default();
    cur.insert(WeylElem::ID, RatFun::one());
    for (k, &i) in word.iter().enumerate() {
        let mut next: FxHashMap<WeylElem, RatFun> = FxHashMap::default();
        let mut keys: Vec<WeylElem> = cur.keys().copied().collect();
        keys.sort();
        for x in keys {
            let a = &cur[&x];
            let desc = g.has_right_descent(g.mul(v, x), i);
            for (m, target) in [(false, x), (true, g.rmul_s(x, i))] {
                let w = scheme.weight(Slot::of(m, desc), betas[k]);
                if w.is_zero() {
                    continue;
                }
                let t = a * w;
                let e = next.entry(target).or_insert_with(RatFun::zero);
                *e = &*e + &t;
            }
        }
        next.retain(|_, val| !val.is_zero());
        cur = next;
    }
    Ok(cur)
}

pub fn subword_sum_dp(g: &WeylGroup, word: &[usize], u: WeylElem, scheme: &WeightScheme, v: WeylElem) -> Result<RatFun> {
    Ok(subword_sum_dp_all(g, word, scheme, v)?.remove(&u).unwrap_or_else(RatFun::zero))
}

/// Turns a polynomial in `q` into coefficient order, lowest first.
pub fn q_coeffs(p: &LaurentPoly) -> Option<Vec<(i16, crate::ring::Int)>> {
    let slot = Var::Q.slot();
    let mut out = Vec::new();
    for (m, c) in p.terms() {
        if (0..crate::ring::NV).any(|s| s != slot && m.0[s] != 0) {
            return None;
        }
        out.push((m.0[slot], c.clone()));
    }
    out.sort_by_key(|(e, _)| *e);
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::parse_word;
    use crate::hecke::Hecke;
    use std::sync::Arc;

    fn mask(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn a4_table_rows() {
        let g = WeylGroup::parse("A4").unwrap();
        let word = parse_word("s4.s3.s1.s4.s2.s1.s3.s2").unwrap();
        let c = classify(&g, &word, &mask("11011000"), WeylElem::ID).unwrap();
        assert_eq!(c.j_plus, vec![1, 2, 4, 5]);
        assert_eq!(c.e_plus, vec![3, 6, 7]);
        assert_eq!(c.e_minus, vec![8]);
        assert!(c.j_minus.is_empty());
        let c = classify(&g, &word, &mask("01110111"), WeylElem::ID).unwrap();
        assert_eq!(c.j_plus, vec![2, 3, 4, 7, 8]);
        assert_eq!(c.j_minus, vec![6]);
        assert_eq!(c.e_plus, vec![1, 5]);
        assert!(c.e_minus.is_empty());
        let u = g.parse_elem("s3.s4.s3.s2").unwrap();
        assert_eq!(u_subwords(&g, &word, u).len(), 5);
    }

    #[test]
    fn r_scheme_matches_hecke() {
        let g = Arc::new(WeylGroup::parse("A4").unwrap());
        let word = parse_word("s4.s3.s1.s4.s2.s1.s3.s2").unwrap();
        let u = g.parse_elem("s3.s4.s3.s2").unwrap();
        let s = subword_sum(&g, &word, u, &WeightScheme::r_poly(&g.datum), WeylElem::ID).unwrap();
        let h = Hecke::new(g.clone());
        let w = g.from_word(&word).unwrap();
        assert_eq!(s, RatFun::from_poly(h.r_poly(u, w).to_laurent()));
    }

    #[test]
    fn constant_scheme_counts() {
        let g = WeylGroup::parse("A2").unwrap();
        let s = subword_sum(&g, &[0, 0], WeylElem::ID, &WeightScheme::constant(&g.datum, 1), WeylElem::ID).unwrap();
        assert_eq!(s, RatFun::constant(2));
        let e = subword_sum_dp(&g, &[], WeylElem::ID, &WeightScheme::constant(&g.datum, 1), WeylElem::ID).unwrap();
        assert!(e.is_one());
    }

    #[test]
    fn ajs_rejects_non_reduced() {
        let g = WeylGroup::parse("A2").unwrap();
        let r = subword_sum(&g, &[0, 0], WeylElem::ID, &WeightScheme::ajs(&g.datum), WeylElem::ID);
        assert!(matches!(r, Err(Error::NonReducedWord(_))));
    }

    #[test]
    fn twisted_matches_hecke_a2() {
        let g = Arc::new(WeylGroup::parse("A2").unwrap());
        let h = Hecke::new(g.clone());
        let scheme = WeightScheme::r_poly(&g.datum);
        for w in g.elements() {
            let word = g.word_vec(w);
            for v in g.elements() {
                for u in g.elements() {
                    let s = subword_sum(&g, &word, u, &scheme, v).unwrap();
                    assert_eq!(s, RatFun::from_poly(h.twisted_r(u, w, v).to_laurent()));
                }
            }
        }
    }

    #[test]
    fn dp_matches_enumeration_a2() {
        let g = WeylGroup::parse("A2").unwrap();
        for scheme in [WeightScheme::r_poly(&g.datum), WeightScheme::smc(&g.datum)] {
            for w in g.elements() {
                let word = g.word_vec(w);
                for u in g.elements() {
                    for v in g.elements() {
                        let a = subword_sum(&g, &word, u, &scheme, v).unwrap();
                        let b = subword_sum_dp(&g, &word, u, &scheme, v).unwrap();
                        assert_eq!(a, b);
                    }
                }
            }
        }
    }
}
