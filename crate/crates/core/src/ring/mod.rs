mod gcd;
mod int;
mod limit;
mod mono;
mod poly;
mod ratfun;

pub use gcd::gcd;
pub use int::Int;
pub use limit::{chamber_limit, lowest_component, RootBasis};
pub use mono::{Mono, Var, NA, NT, NV, NX};
pub use poly::{parse_poly, LaurentPoly};
pub use ratfun::{parse_ratfun, RatFun};

/// Laurent monomial `e^weight` in the torus generators.
pub fn char_eval(weight: &[i64], rank: usize) -> crate::error::Result<RatFun> {
    if weight.len() != rank {
        return Err(crate::error::Error::DimensionMismatch { expected: rank, got: weight.len() });
    }
    if rank > NT {
        return Err(crate::error::Error::Unsupported(format!("more than {NT} torus coordinates")));
    }
    Ok(RatFun::t_monomial(weight))
}
