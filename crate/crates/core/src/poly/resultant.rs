use super::dense::Poly;
use crate::error::{Error, Result};

/// Resultant of two nonzero polynomials over one field.
///
/// Normalised so that `Res(A, B) = lc(B)^deg A * prod A(r)` over the roots
/// `r` of `B`; in particular `Res(z - a, z - b) = b - a`. Computed by the
/// remainder chain `Res(A, B) = (-1)^(deg R * deg B) lc(B)^(deg A - deg R)
/// Res(B, R)` with `R = A mod B`.
pub fn resultant(a: &Poly, b: &Poly) -> Result<u32> {
    a.field().check_same(b.field())?;
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = a.field().clone();
    let mut acc = 1u32;
    let mut a = a.clone();
    let mut b = b.clone();
    loop {
        let da = a.degree().unwrap_or(0) as i64;
        let db = b.degree().unwrap_or(0);
        if db == 0 {
            let c = f.pow(b.lc(), da).expect("nonnegative power");
            return Ok(f.mul(acc, c));
        }
        let r = a.rem(&b)?;
        if r.is_zero() {
            return Ok(0);
        }
        let dr = r.degree().unwrap_or(0);
        let mut factor = f.pow(b.lc(), da - dr as i64).expect("nonnegative power");
        if (dr * db) % 2 == 1 {
            factor = f.neg(factor);
        }
        acc = f.mul(acc, factor);
        a = b;
        b = r;
    }
}
