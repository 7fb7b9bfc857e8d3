use std::fmt;

use super::dense::{pow_by_digits, Poly};
use super::kernel::{self, Acc};
use crate::error::{Error, Result};
use crate::ff::FieldSpec;

/// `x^offset * body`, where `body` has a nonzero constant term (or is zero,
/// in which case `offset` is 0).
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    body: Poly,
    offset: i64,
}

impl LaurentPoly {
    pub fn new(body: Poly, offset: i64) -> Self {
        let lead_zeros = body.coeffs().iter().take_while(|&&c| c == 0).count();
        if body.is_zero() {
            return LaurentPoly { body, offset: 0 };
        }
        if lead_zeros == 0 {
            return LaurentPoly { body, offset };
        }
        let field = body.field().clone();
        let coeffs = body.into_coeffs()[lead_zeros..].to_vec();
        LaurentPoly {
            body: Poly::new(&field, coeffs),
            offset: offset + lead_zeros as i64,
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::new(p, 0)
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Self::from_poly(Poly::zero(field))
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::from_poly(Poly::one(field))
    }

    pub fn constant(field: &FieldSpec, c: u32) -> Self {
        Self::from_poly(Poly::constant(field, c))
    }

    /// `c * x^exp` with a possibly negative exponent.
    pub fn monomial(field: &FieldSpec, c: u32, exp: i64) -> Self {
        Self::new(Poly::constant(field, c), exp)
    }

    pub(crate) fn from_acc(field: &FieldSpec, acc: Acc) -> Self {
        Self::new(Poly::new(field, acc.data), acc.lo)
    }

    pub fn field(&self) -> &FieldSpec {
        self.body.field()
    }

    pub fn body(&self) -> &Poly {
        &self.body
    }

    /// Lowest exponent present; 0 for the zero polynomial.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Highest exponent present, `None` for zero.
    pub fn top(&self) -> Option<i64> {
        self.body.degree().map(|d| self.offset + d as i64)
    }

    /// Coefficient of `x^exp`.
    pub fn coeff(&self, exp: i64) -> u32 {
        if exp < self.offset {
            return 0;
        }
        self.body.coeff((exp - self.offset) as usize)
    }

    pub fn nnz(&self) -> usize {
        self.body.nnz()
    }

    fn check(&self, other: &LaurentPoly) -> Result<()> {
        self.field().check_same(other.field())
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let f = self.field();
        let mut acc = Acc::new();
        acc.add_scaled(f, self.offset, 1, self.body.coeffs());
        acc.add_scaled(f, other.offset, 1, other.body.coeffs());
        Ok(Self::from_acc(f, acc))
    }

    pub fn checked_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check(other)?;
        let f = self.field();
        let body = kernel::mul(f, self.body.coeffs(), other.body.coeffs());
        Ok(Self::new(Poly::new(f, body), self.offset + other.offset))
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            body: self.body.neg(),
            offset: self.offset,
        }
    }

    pub fn scale(&self, c: u32) -> LaurentPoly {
        Self::new(self.body.scale(c), self.offset)
    }

    /// Multiply by `x^d`.
    pub fn shift(&self, d: i64) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            body: self.body.clone(),
            offset: self.offset + d,
        }
    }

    /// `f^{p^j}`.
    pub fn frobenius_dilate(&self, j: u32) -> LaurentPoly {
        let pj = (self.field().characteristic() as i64).pow(j);
        LaurentPoly {
            body: self.body.frobenius_dilate(j),
            offset: self.offset * pj,
        }
    }

    pub fn pow(&self, k: u64) -> LaurentPoly {
        pow_by_digits(
            self,
            k,
            self.field().characteristic() as u64,
            LaurentPoly::one(self.field()),
            |a, b| a.checked_mul(b).expect("same field"),
            |a, j| a.frobenius_dilate(j),
        )
    }

    /// The plain polynomial equal to `self`; fails if a negative exponent
    /// survives normalization.
    pub fn lift(&self) -> Result<Poly> {
        if self.offset < 0 {
            return Err(Error::NonpolynomialLaurent(self.offset));
        }
        Ok(self.body.shift(self.offset as usize))
    }

    pub fn format_with(&self, var: &str) -> String {
        if self.offset >= 0 {
            return self.body.shift(self.offset as usize).format_with(var);
        }
        format!("{var}^({}) * ({})", self.offset, self.body.format_with(var))
    }
}

impl From<Poly> for LaurentPoly {
    fn from(p: Poly) -> Self {
        LaurentPoly::from_poly(p)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("T"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;

    #[test]
    fn lift_examples() {
        let f = make_field(5, 1).unwrap();
        let t_plus_1 = LaurentPoly::new(Poly::new(&f, vec![1, 1]), 0);
        assert_eq!(t_plus_1.lift().unwrap().coeffs(), &[1, 1]);

        let cancel = LaurentPoly::new(Poly::new(&f, vec![0, 0, 1]), -2);
        assert_eq!(cancel.offset(), 0);
        assert!(cancel.lift().unwrap().is_one());

        let bad = LaurentPoly::new(Poly::new(&f, vec![1, 1]), -1);
        let err = bad.lift().unwrap_err();
        assert_eq!(err, Error::NonpolynomialLaurent(-1));
        assert!(err.to_string().contains("nonpolynomial Laurent part"));
    }

    #[test]
    fn arithmetic_with_negative_powers() {
        let f = make_field(3, 1).unwrap();
        let t_inv = LaurentPoly::monomial(&f, 1, -1);
        let t = LaurentPoly::monomial(&f, 1, 1);
        assert_eq!(t_inv.checked_mul(&t).unwrap(), LaurentPoly::one(&f));
        let s = t_inv.checked_add(&t).unwrap(); // T^-1 + T
        assert_eq!(s.offset(), -1);
        assert_eq!(s.top(), Some(1));
        let sq = s.pow(3); // T^-3 + T^3 in char 3
        assert_eq!(sq.offset(), -3);
        assert_eq!(sq.nnz(), 2);
        let diff = s.checked_sub(&t_inv).unwrap();
        assert_eq!(diff, t);
        assert!(s.checked_sub(&s).unwrap().is_zero());
        assert_eq!(s.checked_sub(&s).unwrap().offset(), 0);
    }
}
