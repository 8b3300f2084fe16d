use crate::error::{Error, Result};
use crate::extaffine::bounded_affine_perms;
use crate::richardson::ProjLoc;
use crate::ring::{LaurentPoly, Mono, RatFun, Var, NT, NX};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;

/// One period of an `n`-periodic tiling of `k` rows; row 0 is the bottom.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PipeDream {
    pub n: usize,
    pub k: usize,
    /// `true` is an elbow.
    pub tiles: Vec<Vec<bool>>,
}

/// Pipe labels meeting at one tile of the fundamental domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileInfo {
    pub row: usize,
    /// 1-based.
    pub col: usize,
    pub elbow: bool,
    /// Pipe entering from the left; absent when the row has no elbow.
    pub a: Option<i64>,
    /// Pipe entering from the bottom.
    pub b: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    /// `[f(1), ..., f(n)]`.
    pub window: Vec<i64>,
    /// Bottom labels of the pipes leaving the top edge at columns `1..=n`.
    pub top_labels: Vec<i64>,
    pub tiles: Vec<TileInfo>,
}

fn check_size(n: usize, k: usize) -> Result<()> {
    if n == 0 || n > NT {
        return Err(Error::Unsupported(format!("n must lie in 1..={NT}")));
    }
    if k > NX || k > n {
        return Err(Error::Unsupported(format!("k must be at most min(n, {NX})")));
    }
    if k * n > 63 {
        return Err(Error::Unsupported("k*n exceeds 63".into()));
    }
    Ok(())
}

impl PipeDream {
    pub fn new(tiles: Vec<Vec<bool>>) -> Result<PipeDream> {
        let k = tiles.len();
        let n = tiles.first().map_or(0, |r| r.len());
        check_size(n, k)?;
        if tiles.iter().any(|r| r.len() != n) {
            return Err(Error::IllFormed("rows of unequal length".into()));
        }
        Ok(PipeDream { n, k, tiles })
    }

    /// Bit `r*n + j` is the tile in row `r`, column `j+1`.
    pub fn from_mask(n: usize, k: usize, mask: u64) -> PipeDream {
        let tiles = (0..k).map(|r| (0..n).map(|j| mask >> (r * n + j) & 1 == 1).collect()).collect();
        PipeDream { n, k, tiles }
    }

    pub fn mask(&self) -> u64 {
        let mut m = 0u64;
        for (r, row) in self.tiles.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                if e {
                    m |= 1 << (r * self.n + j);
                }
            }
        }
        m
    }

    /// Rows bottom first, `B`/`%`/`1` for elbows and `X`/`+`/`0` for crosses.
    pub fn parse_rows(rows: &[&str]) -> Result<PipeDream> {
        let tiles = rows
            .iter()
            .map(|r| {
                r.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| match c {
                        'B' | 'b' | '%' | '1' => Ok(true),
                        'X' | 'x' | '+' | '0' => Ok(false),
                        _ => Err(Error::Parse(format!("bad tile {c:?}"))),
                    })
                    .collect::<Result<Vec<bool>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PipeDream::new(tiles)
    }

    /// Single-row tiling with elbows at the 1-based columns in `a`.
    pub fn single_row(n: usize, a: &[usize]) -> Result<PipeDream> {
        let mut row = vec![false; n];
        for &j in a {
            if j == 0 || j > n {
                return Err(Error::IllFormed(format!("column {j} outside 1..={n}")));
            }
            row[j - 1] = true;
        }
        PipeDream::new(vec![row])
    }

    /// Top row first, `+` for crosses and `%` for elbows.
    pub fn ascii(&self) -> String {
        let mut s = String::new();
        for row in self.tiles.iter().rev() {
            s.extend(row.iter().map(|&e| if e { '%' } else { '+' }));
            s.push('\n');
        }
        s
    }

    pub fn trace(&self) -> Result<Trace> {
        let (n, ni) = (self.n, self.n as i64);
        let mut cur: Vec<i64> = (1..=ni).collect();
        let at = |cur: &[i64], j: i64| -> i64 {
            let q = (j - 1).div_euclid(ni);
            cur[(j - 1).rem_euclid(ni) as usize] + q * ni
        };
        let mut infos = Vec::with_capacity(self.k * n);
        for (r, row) in self.tiles.iter().enumerate() {
            let elbow = |j: i64| row[(j - 1).rem_euclid(ni) as usize];
            let mut next = vec![0; n];
            for j in 1..=ni {
                let pe = (1..=ni).map(|d| j - d).find(|&c| elbow(c));
                let b = at(&cur, j);
                let e = elbow(j);
                let a = pe.map(|c| at(&cur, c));
                next[j as usize - 1] = if e { a.expect("elbow row") } else { b };
                infos.push(TileInfo { row: r, col: j as usize, elbow: e, a, b });
            }
            cur = next;
        }
        let mut window = vec![0i64; n];
        let mut seen = vec![false; n];
        for (j, &lab) in cur.iter().enumerate() {
            let res = (lab - 1).rem_euclid(ni) as usize;
            if seen[res] {
                return Err(Error::IllFormed("trace is not a bijection".into()));
            }
            seen[res] = true;
            let q = (lab - 1).div_euclid(ni);
            window[res] = j as i64 + 1 - q * ni;
        }
        Ok(Trace { window, top_labels: cur, tiles: infos })
    }

    /// Product of the tile numerators; the denominator is always [`common_denominator`].
    pub fn weight_numerator(&self) -> Result<LaurentPoly> {
        let tr = self.trace()?;
        let y = LaurentPoly::var(Var::Y);
        let one = LaurentPoly::one();
        let mut w = LaurentPoly::one();
        for ti in &tr.tiles {
            let x = LaurentPoly::var(Var::X(ti.row + 1));
            let t = LaurentPoly::var(Var::T(ti.col));
            let a = ti.a.ok_or_else(|| Error::IllFormed(format!("row {} has no elbow", ti.row + 1)))?;
            let f = match (ti.elbow, a < ti.b) {
                (true, true) => &(&one + &y) * &x,
                (true, false) => &(&one + &y) * &t,
                (false, true) => &t - &x,
                (false, false) => &(-&y) * &(&t - &x),
            };
            w = &w * &f;
        }
        Ok(w)
    }

    pub fn weight(&self) -> Result<RatFun> {
        Ok(RatFun::new(self.weight_numerator()?, common_denominator(self.n, self.k)))
    }
}

impl fmt::Display for PipeDream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ascii())
    }
}

/// `prod_{r, j} (t_j + y x_r)`.
pub fn common_denominator(n: usize, k: usize) -> LaurentPoly {
    let y = LaurentPoly::var(Var::Y);
    let mut d = LaurentPoly::one();
    for r in 1..=k {
        let yx = &y * &LaurentPoly::var(Var::X(r));
        for j in 1..=n {
            d = &d * &(&LaurentPoly::var(Var::T(j)) + &yx);
        }
    }
    d
}

pub fn is_bounded(window: &[i64], k: usize) -> bool {
    let n = window.len() as i64;
    let s: i64 = window.iter().enumerate().map(|(i, &f)| f - i as i64 - 1).sum();
    s == k as i64 * n && window.iter().enumerate().all(|(i, &f)| (i as i64 + 1..=i as i64 + 1 + n).contains(&f))
}

fn check_window(f: &[i64]) -> Result<()> {
    let n = f.len() as i64;
    let mut seen = vec![false; f.len()];
    for &x in f {
        let r = (x - 1).rem_euclid(n) as usize;
        if std::mem::replace(&mut seen[r], true) {
            return Err(Error::IllFormed(format!("window residues repeat: {f:?}")));
        }
    }
    Ok(())
}

/// All tilings whose trace is `f`, in increasing mask order.
pub fn enumerate_pd(f: &[i64], k: usize) -> Result<Vec<PipeDream>> {
    let n = f.len();
    check_size(n, k)?;
    check_window(f)?;
    Ok((0..1u64 << (k * n))
        .into_par_iter()
        .map(|m| PipeDream::from_mask(n, k, m))
        .filter(|pd| pd.trace().is_ok_and(|t| t.window == f))
        .collect())
}

/// Number of tilings per traced window, over all `2^{kn}` tilings.
pub fn trace_counts(n: usize, k: usize) -> Result<BTreeMap<Vec<i64>, usize>> {
    check_size(n, k)?;
    let wins: Vec<Vec<i64>> =
        (0..1u64 << (k * n)).into_par_iter().map(|m| PipeDream::from_mask(n, k, m).trace().map(|t| t.window)).collect::<Result<_>>()?;
    let mut out = BTreeMap::new();
    for w in wins {
        *out.entry(w).or_insert(0) += 1;
    }
    Ok(out)
}

/// Sum of the weights of all pipe dreams of `f`.
pub fn gtilde(f: &[i64], k: usize) -> Result<RatFun> {
    let n = f.len();
    let pds = enumerate_pd(f, k)?;
    let nums: Vec<LaurentPoly> = pds.par_iter().map(|pd| pd.weight_numerator()).collect::<Result<_>>()?;
    let num = nums.iter().fold(LaurentPoly::zero(), |acc, p| &acc + p);
    Ok(RatFun::new(num, common_denominator(n, k)))
}

/// `prod_{j in A} (1+y)x/(t_j+yx) * prod_{j not in A} (t_j-x)/(t_j+yx)`.
pub fn k1_closed_form(n: usize, a: &[usize]) -> RatFun {
    let y = RatFun::var(Var::Y);
    let x = RatFun::var(Var::X(1));
    let one = RatFun::one();
    (1..=n)
        .map(|j| {
            let t = RatFun::var(Var::T(j));
            let num = if a.contains(&j) { &(&one + &y) * &x } else { &t - &x };
            &num / &(&t + &(&y * &x))
        })
        .product()
}

/// Swaps `x_i` and `x_j`.
pub fn swap_x(g: &RatFun, i: usize, j: usize) -> RatFun {
    let (si, sj) = (Var::X(i).slot(), Var::X(j).slot());
    g.map_automorphism(|m| {
        let mut e = *m;
        e.0.swap(si, sj);
        e
    })
}

pub fn is_symmetric_in_x(g: &RatFun, k: usize) -> bool {
    (1..k).all(|i| swap_x(g, i, i + 1) == *g)
}

/// Substitutes `x_r -> t_{s_r}`.
pub fn substitute_x(g: &RatFun, s: &[usize]) -> RatFun {
    s.iter().enumerate().fold(g.clone(), |acc, (r, &t)| acc.subst_var(Var::X(r + 1), 1, &Mono::var(Var::T(t))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositroidRow {
    /// 1-based subset `{z(1), ..., z(k)}`.
    pub subset: Vec<usize>,
    pub gtilde: RatFun,
    pub smc: RatFun,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositroidReport {
    pub window: Vec<i64>,
    pub pipe_dreams: usize,
    pub rows: Vec<PositroidRow>,
}

impl PositroidReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.equal)
    }
}

/// Compares `gtilde` with the Grassmannian restrictions of `GL_n`, `lambda = (1^k, 0^{n-k})`.
pub struct PositroidVerifier {
    pub n: usize,
    pub k: usize,
    pub proj: ProjLoc,
}

impl PositroidVerifier {
    pub fn new(n: usize, k: usize) -> Result<PositroidVerifier> {
        check_size(n, k)?;
        if k == 0 || k == n {
            return Err(Error::Unsupported("need 0 < k < n".into()));
        }
        let lam: Vec<i64> = (0..n).map(|i| (i < k) as i64).collect();
        Ok(PositroidVerifier { n, k, proj: ProjLoc::parse(&format!("GL{n}"), &lam)? })
    }

    pub fn bounded(&self) -> Vec<Vec<i64>> {
        bounded_affine_perms(self.n, self.k)
    }

    pub fn verify(&self, f: &[i64]) -> Result<PositroidReport> {
        if f.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: f.len() });
        }
        let aff = &self.proj.aff;
        let elem = aff.from_window(f)?;
        let (u, w) = self.proj.split_f(&elem)?;
        let smc = self.proj.smc_projected(u, w);
        let pds = enumerate_pd(f, self.k)?;
        let g = gtilde(f, self.k)?;
        let rows = self
            .proj
            .par
            .reps
            .iter()
            .enumerate()
            .map(|(pos, &z)| {
                let perm = aff.perm(z);
                let subset: Vec<usize> = perm[..self.k].iter().map(|p| p + 1).collect();
                let gv = substitute_x(&g, &subset);
                let sv = smc.values[pos].clone();
                PositroidRow { equal: gv == sv, subset, gtilde: gv, smc: sv }
            })
            .collect();
        Ok(PositroidReport { window: f.to_vec(), pipe_dreams: pds.len(), rows })
    }

    pub fn verify_all(&self) -> Result<Vec<PositroidReport>> {
        self.bounded().iter().map(|f| self.verify(f)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_7_3() -> PipeDream {
        PipeDream::parse_rows(&["XBBXBBX", "BBXBXBX", "XXBXXBX"]).unwrap()
    }

    #[test]
    fn reading_permutation_n7_k3() {
        let t = example_7_3().trace().unwrap();
        assert_eq!(t.window, vec![2, 6, 5, 10, 8, 11, 7]);
        assert!(is_bounded(&t.window, 3));
    }

    #[test]
    fn k1_picture_n9() {
        let pd = PipeDream::single_row(9, &[1, 3, 7, 8]).unwrap();
        let t = pd.trace().unwrap();
        assert_eq!(t.top_labels, vec![-1, 2, 1, 4, 5, 6, 3, 7, 9]);
        assert_eq!(t.window, vec![3, 2, 7, 4, 5, 6, 8, 10, 9]);
        assert_eq!(gtilde(&t.window, 1).unwrap(), k1_closed_form(9, &[1, 3, 7, 8]));
    }

    #[test]
    fn k1_bijection_and_closed_form() {
        for n in 1..=6usize {
            let mut windows = Vec::new();
            for bits in 1u64..1 << n {
                let a: Vec<usize> = (1..=n).filter(|j| bits >> (j - 1) & 1 == 1).collect();
                let t = PipeDream::single_row(n, &a).unwrap().trace().unwrap();
                let af: Vec<usize> = (1..=n).filter(|&i| t.window[i - 1] != i as i64).collect();
                assert_eq!(af, a, "n={n}");
                assert!(is_bounded(&t.window, 1));
                let pds = enumerate_pd(&t.window, 1).unwrap();
                assert_eq!(pds.len(), 1);
                assert_eq!(gtilde(&t.window, 1).unwrap(), k1_closed_form(n, &a));
                windows.push(t.window);
            }
            windows.sort();
            windows.dedup();
            assert_eq!(windows.len(), (1 << n) - 1);
            assert_eq!(bounded_affine_perms(n, 1).len(), (1 << n) - 1);
        }
    }

    #[test]
    fn enumeration_matches_exhaustive_counts() {
        let counts = trace_counts(3, 2).unwrap();
        assert_eq!(counts.values().sum::<usize>(), 64);
        for f in bounded_affine_perms(3, 2) {
            let pds = enumerate_pd(&f, 2).unwrap();
            assert!(!pds.is_empty());
            assert_eq!(pds.len(), counts[&f]);
            assert!(pds.windows(2).all(|p| p[0].mask() < p[1].mask()));
            let direct = pds.iter().fold(RatFun::zero(), |acc, pd| &acc + &pd.weight().unwrap());
            assert_eq!(direct, gtilde(&f, 2).unwrap());
        }
    }

    #[test]
    fn tiling_counts() {
        for (n, k, expect) in [(2, 1, 3), (3, 1, 7), (4, 1, 15), (2, 2, 3), (3, 2, 25), (4, 2, 145)] {
            let counts = trace_counts(n, k).unwrap();
            assert_eq!(counts.values().sum::<usize>(), 1 << (k * n));
            let on_b: usize = bounded_affine_perms(n, k).iter().map(|f| counts.get(f).copied().unwrap_or(0)).sum();
            let bounded_keys = counts.iter().filter(|(w, _)| is_bounded(w, k)).map(|(_, c)| c).sum::<usize>();
            assert_eq!(on_b, bounded_keys);
            assert_eq!(on_b, expect);
        }
    }

    #[test]
    fn x_symmetry() {
        for (n, k) in [(2, 2), (3, 2), (4, 2)] {
            for f in bounded_affine_perms(n, k) {
                let g = gtilde(&f, k).unwrap();
                assert!(is_symmetric_in_x(&g, k), "{f:?}");
            }
        }
    }

    #[test]
    fn positroid_small() {
        for (n, k) in [(2, 1), (3, 1), (3, 2)] {
            let v = PositroidVerifier::new(n, k).unwrap();
            let reps = v.verify_all().unwrap();
            assert_eq!(reps.len(), v.bounded().len());
            for r in reps {
                assert!(r.pass(), "{:?}", r.window);
            }
        }
    }

    #[test]
    fn substitution_order_is_irrelevant() {
        let v = PositroidVerifier::new(4, 2).unwrap();
        for f in v.bounded() {
            let g = gtilde(&f, 2).unwrap();
            for s in [[1usize, 3], [2, 4]] {
                assert_eq!(substitute_x(&g, &s), substitute_x(&g, &[s[1], s[0]]));
            }
        }
    }

    #[test]
    fn ascii_round_trip() {
        let pd = example_7_3();
        let rows: Vec<String> = pd.ascii().lines().rev().map(String::from).collect();
        let refs: Vec<&str> = rows.iter().map(|s| s.as_str()).collect();
        assert_eq!(PipeDream::parse_rows(&refs).unwrap(), pd);
        assert_eq!(PipeDream::from_mask(7, 3, pd.mask()), pd);
    }
}
