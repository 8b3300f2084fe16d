use std::fmt;

pub const NT: usize = 10;
pub const NX: usize = 4;
pub const NA: usize = 8;
pub const NV: usize = NT + NX + NA + 2;

/// Generator of the coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// Torus character, 1-based.
    T(usize),
    /// Chern root, 1-based.
    X(usize),
    /// Auxiliary coordinate used by chamber limits and root expansions, 1-based.
    A(usize),
    Y,
    Q,
}

impl Var {
    pub fn slot(self) -> usize {
        match self {
            Var::T(i) => {
                assert!((1..=NT).contains(&i), "t{i} out of range");
                i - 1
            }
            Var::X(i) => {
                assert!((1..=NX).contains(&i), "x{i} out of range");
                NT + i - 1
            }
            Var::A(i) => {
                assert!((1..=NA).contains(&i), "a{i} out of range");
                NT + NX + i - 1
            }
            Var::Y => NT + NX + NA,
            Var::Q => NT + NX + NA + 1,
        }
    }

    pub fn from_slot(s: usize) -> Var {
        if s < NT {
            Var::T(s + 1)
        } else if s < NT + NX {
            Var::X(s - NT + 1)
        } else if s < NT + NX + NA {
            Var::A(s - NT - NX + 1)
        } else if s == NT + NX + NA {
            Var::Y
        } else {
            Var::Q
        }
    }

    pub fn parse(s: &str) -> Option<Var> {
        let (head, tail) = s.split_at(1.min(s.len()));
        match head {
            "y" if tail.is_empty() => Some(Var::Y),
            "q" if tail.is_empty() => Some(Var::Q),
            "t" | "x" | "a" => {
                let i: usize = tail.parse().ok()?;
                let v = match head {
                    "t" if (1..=NT).contains(&i) => Var::T(i),
                    "x" if (1..=NX).contains(&i) => Var::X(i),
                    "a" if (1..=NA).contains(&i) => Var::A(i),
                    _ => return None,
                };
                Some(v)
            }
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::T(i) => write!(f, "t{i}"),
            Var::X(i) => write!(f, "x{i}"),
            Var::A(i) => write!(f, "a{i}"),
            Var::Y => write!(f, "y"),
            Var::Q => write!(f, "q"),
        }
    }
}

/// Exponent vector, ordered lexicographically by slot.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono(pub [i16; NV]);

impl Mono {
    pub const ONE: Mono = Mono([0; NV]);

    pub fn var(v: Var) -> Mono {
        Mono::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: i16) -> Mono {
        let mut m = Mono::ONE;
        m.0[v.slot()] = e;
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a += *b;
        }
        r
    }

    pub fn div(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a -= *b;
        }
        r
    }

    pub fn inv(&self) -> Mono {
        let mut r = *self;
        for a in r.0.iter_mut() {
            *a = -*a;
        }
        r
    }

    pub fn pow(&self, k: i16) -> Mono {
        let mut r = *self;
        for a in r.0.iter_mut() {
            *a *= k;
        }
        r
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn meet(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a = (*a).min(*b);
        }
        r
    }

    pub fn join(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a = (*a).max(*b);
        }
        r
    }

    pub fn is_poly(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().map(|&e| e as i32).sum()
    }

    /// Exponents of the torus slots.
    pub fn t_part(&self) -> &[i16] {
        &self.0[..NT]
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let y = Var::Y.slot();
        let q = Var::Q.slot();
        let order = [y, q].into_iter().chain((0..NV).filter(|&s| s != y && s != q));
        let mut first = true;
        for s in order {
            let e = self.0[s];
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", Var::from_slot(s))?;
            if e != 1 {
                if e < 0 {
                    write!(f, "^({e})")?;
                } else {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slots_round_trip() {
        for s in 0..NV {
            assert_eq!(Var::from_slot(s).slot(), s);
            let name = Var::from_slot(s).to_string();
            assert_eq!(Var::parse(&name), Some(Var::from_slot(s)));
        }
    }

    #[test]
    fn y_prints_first() {
        let m = Mono::var(Var::T(2)).mul(&Mono::var(Var::Y));
        assert_eq!(m.to_string(), "y*t2");
        let m = Mono::var_pow(Var::T(1), 2).mul(&Mono::var_pow(Var::T(3), -1));
        assert_eq!(m.to_string(), "t1^2*t3^(-1)");
    }
}
