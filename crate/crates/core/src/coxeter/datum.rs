use crate::error::{Error, Result};
use crate::ring::{LaurentPoly, Mono, RatFun, Var, NT};
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use rustc_hash::FxHashMap;
use std::collections::VecDeque;
use std::fmt;

pub type RootId = usize;

const MAX_ROOTS: usize = 512;

/// Root system type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    G2,
    /// General linear group, with the full `Z^n` lattices.
    GL(usize),
    Custom(Vec<Vec<i64>>),
}

impl CartanType {
    pub fn parse(s: &str) -> Result<CartanType> {
        let s = s.trim();
        if let Some(body) = s.strip_prefix("cartan:") {
            let m: std::result::Result<Vec<Vec<i64>>, _> = body
                .split(';')
                .map(|row| row.split(',').map(|x| x.trim().parse::<i64>()).collect())
                .collect();
            return m.map(CartanType::Custom).map_err(|e| Error::Parse(format!("cartan matrix: {e}")));
        }
        let up = s.to_ascii_uppercase().replace('_', "");
        if up == "G2" {
            return Ok(CartanType::G2);
        }
        let (head, tail) = if let Some(t) = up.strip_prefix("GL") {
            ("GL", t)
        } else if up.is_empty() {
            return Err(Error::Parse("empty type".into()));
        } else {
            up.split_at(1)
        };
        let n: usize = tail.parse().map_err(|_| Error::Parse(format!("type {s:?}")))?;
        let t = match head {
            "A" if n >= 1 => CartanType::A(n),
            "B" if n >= 2 => CartanType::B(n),
            "C" if n >= 2 => CartanType::C(n),
            "D" if n >= 4 => CartanType::D(n),
            "GL" if n >= 1 => CartanType::GL(n),
            _ => return Err(Error::Parse(format!("unsupported type {s:?}"))),
        };
        Ok(t)
    }

    fn cartan(&self) -> Vec<Vec<i64>> {
        let chain = |n: usize| -> Vec<Vec<i64>> {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| match (i as i64 - j as i64).abs() {
                            0 => 2,
                            1 => -1,
                            _ => 0,
                        })
                        .collect()
                })
                .collect()
        };
        match self {
            CartanType::A(n) => chain(*n),
            CartanType::GL(n) => chain(n.saturating_sub(1)),
            CartanType::B(n) => {
                let mut m = chain(*n);
                m[n - 1][n - 2] = -2;
                m
            }
            CartanType::C(n) => {
                let mut m = chain(*n);
                m[n - 2][n - 1] = -2;
                m
            }
            CartanType::D(n) => {
                let mut m = chain(*n);
                m[n - 1][n - 2] = 0;
                m[n - 2][n - 1] = 0;
                m[n - 1][n - 3] = -1;
                m[n - 3][n - 1] = -1;
                m
            }
            CartanType::G2 => vec![vec![2, -3], vec![-1, 2]],
            CartanType::Custom(m) => m.clone(),
        }
    }

    /// Number of positive roots for the named types.
    fn expected_positive(&self) -> Option<usize> {
        match self {
            CartanType::A(n) => Some(n * (n + 1) / 2),
            CartanType::GL(n) => Some(n * n.saturating_sub(1) / 2),
            CartanType::B(n) | CartanType::C(n) => Some(n * n),
            CartanType::D(n) => Some(n * (n - 1)),
            CartanType::G2 => Some(6),
            CartanType::Custom(_) => None,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::C(n) => write!(f, "C{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::G2 => write!(f, "G2"),
            CartanType::GL(n) => write!(f, "GL{n}"),
            CartanType::Custom(m) => {
                let rows: Vec<String> =
                    m.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")).collect();
                write!(f, "cartan:{}", rows.join(";"))
            }
        }
    }
}

/// A root with its coroot and simple-root expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Character coordinates.
    pub vec: Vec<i64>,
    /// Coefficients in the simple roots.
    pub coeffs: Vec<i64>,
    /// Cocharacter coordinates of the coroot.
    pub coroot: Vec<i64>,
    pub positive: bool,
    pub height: i64,
}

/// Finite root datum.
///
/// For the simply connected types characters are written in fundamental-weight
/// coordinates and cocharacters in simple-coroot coordinates, so the pairing is
/// the dot product. For `GL_n` both lattices are `Z^n`.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub kind: CartanType,
    pub rank: usize,
    pub dim: usize,
    pub cartan: Vec<Vec<i64>>,
    pub simple: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
    /// Positive roots sorted by height, then negatives in the same order.
    pub roots: Vec<Root>,
    pub n_pos: usize,
    index: FxHashMap<Vec<i64>, RootId>,
}

pub fn pair(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl RootDatum {
    pub fn parse(s: &str) -> Result<RootDatum> {
        RootDatum::new(CartanType::parse(s)?)
    }

    pub fn new(kind: CartanType) -> Result<RootDatum> {
        let cartan = kind.cartan();
        validate_cartan(&cartan)?;
        let rank = cartan.len();
        let (dim, simple, simple_coroots) = match &kind {
            CartanType::GL(n) => {
                let v: Vec<Vec<i64>> = (0..rank)
                    .map(|i| {
                        let mut e = vec![0; *n];
                        e[i] = 1;
                        e[i + 1] = -1;
                        e
                    })
                    .collect();
                (*n, v.clone(), v)
            }
            _ => {
                let alpha: Vec<Vec<i64>> = (0..rank).map(|j| (0..rank).map(|i| cartan[i][j]).collect()).collect();
                let cor: Vec<Vec<i64>> = (0..rank)
                    .map(|j| {
                        let mut e = vec![0; rank];
                        e[j] = 1;
                        e
                    })
                    .collect();
                (rank, alpha, cor)
            }
        };
        if dim > NT {
            return Err(Error::Unsupported(format!("lattice dimension {dim} exceeds {NT}")));
        }
        let roots = close_roots(&simple, &simple_coroots)?;
        let n_pos = roots.len() / 2;
        if let Some(exp) = kind.expected_positive() {
            if exp != n_pos {
                return Err(Error::InvalidCartan(format!("closure gave {n_pos} positive roots, expected {exp}")));
            }
        }
        let index = roots.iter().enumerate().map(|(i, r)| (r.vec.clone(), i)).collect();
        Ok(RootDatum { kind, rank, dim, cartan, simple, simple_coroots, roots, n_pos, index })
    }

    pub fn is_gl(&self) -> bool {
        matches!(self.kind, CartanType::GL(_))
    }

    pub fn root_id(&self, v: &[i64]) -> Option<RootId> {
        self.index.get(v).copied()
    }

    pub fn simple_id(&self, i: usize) -> RootId {
        self.root_id(&self.simple[i]).expect("simple root present")
    }

    pub fn neg(&self, r: RootId) -> RootId {
        if r < self.n_pos {
            r + self.n_pos
        } else {
            r - self.n_pos
        }
    }

    pub fn positive(&self) -> std::ops::Range<RootId> {
        0..self.n_pos
    }

    pub fn is_positive(&self, r: RootId) -> bool {
        r < self.n_pos
    }

    /// Highest root.
    pub fn theta(&self) -> RootId {
        (0..self.n_pos).max_by_key(|&i| (self.roots[i].height, i)).expect("nonempty root system")
    }

    /// `s_i` on a character.
    pub fn reflect_char(&self, i: usize, mu: &[i64]) -> Vec<i64> {
        let c = pair(mu, &self.simple_coroots[i]);
        mu.iter().zip(&self.simple[i]).map(|(m, a)| m - c * a).collect()
    }

    /// `s_i` on a cocharacter.
    pub fn reflect_cochar(&self, i: usize, lam: &[i64]) -> Vec<i64> {
        let c = pair(&self.simple[i], lam);
        lam.iter().zip(&self.simple_coroots[i]).map(|(l, a)| l - c * a).collect()
    }

    /// Reflection in an arbitrary root, on characters.
    pub fn reflect_char_root(&self, r: RootId, mu: &[i64]) -> Vec<i64> {
        let root = &self.roots[r];
        let c = pair(mu, &root.coroot);
        mu.iter().zip(&root.vec).map(|(m, a)| m - c * a).collect()
    }

    /// Reflection in an arbitrary root, on cocharacters.
    pub fn reflect_cochar_root(&self, r: RootId, lam: &[i64]) -> Vec<i64> {
        let root = &self.roots[r];
        let c = pair(&root.vec, lam);
        lam.iter().zip(&root.coroot).map(|(l, a)| l - c * a).collect()
    }

    /// `e^mu` as a Laurent monomial.
    pub fn char_mono(&self, mu: &[i64]) -> Mono {
        let mut m = Mono::ONE;
        for (j, &e) in mu.iter().enumerate() {
            m.0[Var::T(j + 1).slot()] = e as i16;
        }
        m
    }

    pub fn char_eval(&self, mu: &[i64]) -> Result<RatFun> {
        if mu.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: mu.len() });
        }
        Ok(RatFun::from_poly(LaurentPoly::monomial(self.char_mono(mu), 1)))
    }

    pub fn root_char(&self, r: RootId) -> RatFun {
        RatFun::from_poly(LaurentPoly::monomial(self.char_mono(&self.roots[r].vec), 1))
    }

    pub fn root_mono(&self, r: RootId) -> Mono {
        self.char_mono(&self.roots[r].vec)
    }

    /// The root as a linear form `sum c_i a_i` in the auxiliary slots.
    pub fn root_linear_form(&self, r: RootId) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.roots[r]
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (Mono::var(Var::A(i + 1)), c.into())),
        )
    }

    /// Sum of positive roots.
    pub fn two_rho(&self) -> Vec<i64> {
        let mut s = vec![0; self.dim];
        for r in self.positive() {
            for (a, b) in s.iter_mut().zip(&self.roots[r].vec) {
                *a += b;
            }
        }
        s
    }
}

fn close_roots(simple: &[Vec<i64>], coroots: &[Vec<i64>]) -> Result<Vec<Root>> {
    let rank = simple.len();
    let mut seen: FxHashMap<Vec<i64>, usize> = FxHashMap::default();
    let mut all: Vec<Root> = Vec::new();
    let mut queue = VecDeque::new();
    for i in 0..rank {
        let mut coeffs = vec![0; rank];
        coeffs[i] = 1;
        let r = Root { vec: simple[i].clone(), coeffs, coroot: coroots[i].clone(), positive: true, height: 1 };
        if seen.insert(r.vec.clone(), all.len()).is_none() {
            queue.push_back(all.len());
            all.push(r);
        }
    }
    while let Some(k) = queue.pop_front() {
        for j in 0..rank {
            let r = &all[k];
            let c = pair(&r.vec, &coroots[j]);
            let d = pair(&simple[j], &r.coroot);
            let vec: Vec<i64> = r.vec.iter().zip(&simple[j]).map(|(m, a)| m - c * a).collect();
            if seen.contains_key(&vec) {
                continue;
            }
            let mut coeffs = r.coeffs.clone();
            coeffs[j] -= c;
            let coroot: Vec<i64> = r.coroot.iter().zip(&coroots[j]).map(|(l, a)| l - d * a).collect();
            let positive = coeffs.iter().all(|&x| x >= 0);
            if !positive && !coeffs.iter().all(|&x| x <= 0) {
                return Err(Error::InvalidCartan("root with mixed-sign coefficients".into()));
            }
            let height = coeffs.iter().sum();
            seen.insert(vec.clone(), all.len());
            queue.push_back(all.len());
            all.push(Root { vec, coeffs, coroot, positive, height });
            if all.len() > MAX_ROOTS {
                return Err(Error::InvalidCartan("root closure exceeds size cap".into()));
            }
        }
    }
    let mut pos: Vec<Root> = all.iter().filter(|r| r.positive).cloned().collect();
    pos.sort_by_key(|r| (r.height, r.coeffs.iter().map(|c| -c).collect::<Vec<_>>()));
    let neg: Vec<Root> = pos
        .iter()
        .map(|r| Root {
            vec: r.vec.iter().map(|x| -x).collect(),
            coeffs: r.coeffs.iter().map(|x| -x).collect(),
            coroot: r.coroot.iter().map(|x| -x).collect(),
            positive: false,
            height: -r.height,
        })
        .collect();
    if neg.len() + pos.len() != all.len() {
        return Err(Error::InvalidCartan("root set is not symmetric".into()));
    }
    pos.extend(neg);
    Ok(pos)
}

/// Checks that `m` is a Cartan matrix of finite type.
pub fn validate_cartan(m: &[Vec<i64>]) -> Result<()> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidCartan("matrix is not square".into()));
    }
    for i in 0..n {
        if m[i][i] != 2 {
            return Err(Error::InvalidCartan(format!("diagonal entry {i} is not 2")));
        }
        for j in 0..n {
            if i != j {
                if m[i][j] > 0 {
                    return Err(Error::InvalidCartan(format!("positive off-diagonal entry ({i},{j})")));
                }
                if (m[i][j] == 0) != (m[j][i] == 0) {
                    return Err(Error::InvalidCartan(format!("zero pattern not symmetric at ({i},{j})")));
                }
            }
        }
    }
    // symmetrize: d_i m_ij = d_j m_ji
    type Q = Ratio<i64>;
    let mut d: Vec<Option<Q>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Q::from_integer(1));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i == j || m[i][j] == 0 {
                    continue;
                }
                let want = d[i].unwrap() * Q::new(m[i][j], m[j][i]);
                match d[j] {
                    None => {
                        d[j] = Some(want);
                        stack.push(j);
                    }
                    Some(v) if v != want => {
                        return Err(Error::InvalidCartan("matrix is not symmetrizable".into()));
                    }
                    _ => {}
                }
            }
        }
    }
    let sym: Vec<Vec<Q>> =
        (0..n).map(|i| (0..n).map(|j| d[i].unwrap() * Q::from_integer(m[i][j])).collect()).collect();
    for k in 1..=n {
        let minor: Vec<Vec<Q>> = sym[..k].iter().map(|r| r[..k].to_vec()).collect();
        if !det(minor).is_positive() {
            return Err(Error::InvalidCartan("not of finite type".into()));
        }
    }
    Ok(())
}

fn det(mut a: Vec<Vec<Ratio<i64>>>) -> Ratio<i64> {
    let n = a.len();
    let mut acc = Ratio::from_integer(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Ratio::zero();
        };
        if p != c {
            a.swap(p, c);
            acc = -acc;
        }
        acc *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                let v = a[c][k];
                a[r][k] -= f * v;
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        for (s, n) in [("A2", 3), ("A3", 6), ("B2", 4), ("C3", 9), ("D4", 12), ("G2", 6), ("GL3", 3)] {
            let d = RootDatum::parse(s).unwrap();
            assert_eq!(d.n_pos, n, "{s}");
        }
    }

    #[test]
    fn rejects_affine_and_bad_matrices() {
        assert!(RootDatum::parse("cartan:2,-2;-2,2").is_err());
        assert!(RootDatum::parse("cartan:2,1;1,2").is_err());
        assert!(RootDatum::parse("cartan:2,-1;0,2").is_err());
        assert!(RootDatum::parse("cartan:2,-1;-1,2").is_ok());
    }

    #[test]
    fn simple_roots_first() {
        let d = RootDatum::parse("A3").unwrap();
        for i in 0..3 {
            assert_eq!(d.simple_id(i), i);
        }
        assert_eq!(d.roots[d.theta()].coeffs, vec![1, 1, 1]);
    }

    #[test]
    fn gl_characters() {
        let d = RootDatum::parse("GL3").unwrap();
        assert_eq!(d.root_char(0).to_string(), "t1/t2");
        let a12 = d.root_id(&[1, 0, -1]).unwrap();
        assert_eq!(d.root_char(a12).to_string(), "t1/t3");
        assert_eq!(d.char_eval(&[0, 0, 0]).unwrap(), RatFun::one());
        assert!(d.char_eval(&[1, 0]).is_err());
    }
}
