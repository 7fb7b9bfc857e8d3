use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::kernel;
use crate::error::{Error, Result};
use crate::ff::{Embedding, FieldElement, FieldSpec};

/// Dense univariate polynomial over a finite field.
///
/// `coeffs[i]` is the coefficient of `x^i`; the vector never ends in a zero,
/// so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<u32>,
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl Poly {
    /// Build from raw coefficients (constant term first); trailing zeros are
    /// dropped.
    pub fn new(field: &FieldSpec, mut coeffs: Vec<u32>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| field.is_valid(c)));
        trim(&mut coeffs);
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: &FieldSpec, c: u32) -> Self {
        Self::new(field, vec![c])
    }

    /// `c * x^d`.
    pub fn monomial(field: &FieldSpec, c: u32, d: usize) -> Self {
        if c == 0 {
            return Self::zero(field);
        }
        let mut coeffs = vec![0; d + 1];
        coeffs[d] = c;
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn x(field: &FieldSpec) -> Self {
        Self::monomial(field, 1, 1)
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms(field: &FieldSpec, terms: &[(usize, u32)]) -> Self {
        let len = terms.iter().map(|&(d, _)| d + 1).max().unwrap_or(0);
        let mut coeffs = vec![0u32; len];
        for &(d, c) in terms {
            coeffs[d] = field.add(coeffs[d], c);
        }
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Leading coefficient, `0` for the zero polynomial.
    pub fn lc(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Number of nonzero coefficients.
    pub fn nnz(&self) -> usize {
        kernel::nnz(&self.coeffs)
    }

    fn same(&self, other: &Poly) -> Result<()> {
        if self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.same(other)?;
        let f = &self.field;
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };
        let mut out = long.clone();
        for (x, &y) in out.iter_mut().zip(short.iter()) {
            *x = f.add(*x, y);
        }
        Ok(Poly::new(f, out))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.same(other)?;
        Ok(Poly::new(
            &self.field,
            kernel::mul(&self.field, &self.coeffs, &other.coeffs),
        ))
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    /// Multiply by `x^d`.
    pub fn shift(&self, d: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; d];
        coeffs.extend_from_slice(&self.coeffs);
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Substitute `x -> x^k` (k >= 1).
    pub fn dilate(&self, k: usize) -> Poly {
        assert!(k >= 1);
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut coeffs = vec![0u32; (self.coeffs.len() - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c;
        }
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// `f^{p^j}`: Frobenius on the coefficients and dilation of exponents.
    pub fn frobenius_dilate(&self, j: u32) -> Poly {
        let f = &self.field;
        let pj = (f.characteristic() as usize).pow(j);
        let twisted = Poly {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|&c| f.frobenius_pow(c, j)).collect(),
        };
        twisted.dilate(pj)
    }

    /// `f^k` through the base-`p` digits of `k`: each `f^{p^j}` comes from
    /// [`Poly::frobenius_dilate`], each digit power from square-and-multiply.
    pub fn pow(&self, k: u64) -> Poly {
        pow_by_digits(
            self,
            k,
            self.field.characteristic() as u64,
            Poly::one(&self.field),
            |a, b| a * b,
            |a, j| a.frobenius_dilate(j),
        )
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.same(d)?;
        if d.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = &self.field;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv_lc = f.inv(d.lc()).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        let mut quo = vec![0u32; r.len() - dd];
        for top in (dd..r.len()).rev() {
            let c = f.mul(r[top], inv_lc);
            if c == 0 {
                continue;
            }
            quo[top - dd] = c;
            let nc = f.neg(c);
            f.axpy(&mut r[top - dd..=top], nc, &d.coeffs);
        }
        r.truncate(dd);
        Ok((Poly::new(f, quo), Poly::new(f, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(d)?.1)
    }

    pub fn monic(&self) -> Poly {
        match self.field.inv(self.lc()) {
            Some(i) => self.scale(i),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.same(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Horner evaluation at a raw element of the same field.
    pub fn eval(&self, a: u32) -> u32 {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0u32, |acc, &c| f.add(f.mul(acc, a), c))
    }

    /// Evaluate at a point of the coefficient field or of an extension of it.
    pub fn eval_at(&self, point: &FieldElement) -> Result<FieldElement> {
        if point.field().same_as(&self.field) {
            return FieldElement::from_raw(&self.field, self.eval(point.raw()));
        }
        let emb = self.field.embedding_into(point.field())?;
        FieldElement::from_raw(point.field(), self.eval_embedded(&emb, point.raw()))
    }

    /// Horner evaluation after mapping coefficients through `emb`.
    pub fn eval_embedded(&self, emb: &Embedding, a: u32) -> u32 {
        let t = emb.target();
        self.coeffs
            .iter()
            .rev()
            .fold(0u32, |acc, &c| t.add(t.mul(acc, a), emb.map(c)))
    }

    /// Image of this polynomial under a field embedding.
    pub fn embed(&self, emb: &Embedding) -> Result<Poly> {
        if !emb.source().same_as(&self.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Poly::new(
            emb.target(),
            self.coeffs.iter().map(|&c| emb.map(c)).collect(),
        ))
    }

    /// Render with the given variable name, highest degree first.
    pub fn format_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let f = &self.field;
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let cs = f.format_raw(c);
            let needs_parens = cs.contains(' ');
            parts.push(match (c, mono.is_empty()) {
                (_, true) => cs,
                (1, false) => mono,
                (_, false) if needs_parens => format!("({cs})*{mono}"),
                (_, false) => format!("{cs}*{mono}"),
            });
        }
        parts.join(" + ")
    }
}

/// Shared digit-decomposition power: `x^k = prod_j (x^{p^j})^{d_j}`.
pub(crate) fn pow_by_digits<T: Clone>(
    base: &T,
    k: u64,
    p: u64,
    one: T,
    mul: impl Fn(&T, &T) -> T,
    frob: impl Fn(&T, u32) -> T,
) -> T {
    let mut acc: Option<T> = None;
    let mut rest = k;
    let mut j = 0u32;
    while rest > 0 {
        let d = rest % p;
        if d > 0 {
            let twisted = if j == 0 { base.clone() } else { frob(base, j) };
            let mut piece: Option<T> = None;
            let mut sq = twisted;
            let mut dd = d;
            while dd > 0 {
                if dd & 1 == 1 {
                    piece = Some(match piece {
                        None => sq.clone(),
                        Some(x) => mul(&x, &sq),
                    });
                }
                dd >>= 1;
                if dd > 0 {
                    sq = mul(&sq, &sq);
                }
            }
            let piece = piece.expect("nonzero digit");
            acc = Some(match acc {
                None => piece,
                Some(a) => mul(&a, &piece),
            });
        }
        rest /= p;
        j += 1;
    }
    acc.unwrap_or(one)
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.format_with("x"), self.field)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("x"))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("field mismatch")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$checked(&rhs).expect("field mismatch")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;

    fn p(f: &FieldSpec, c: &[u32]) -> Poly {
        Poly::new(f, c.to_vec())
    }

    #[test]
    fn normalization() {
        let f = make_field(5, 1).unwrap();
        assert!(p(&f, &[0, 0, 0]).is_zero());
        assert_eq!(p(&f, &[1, 2, 0]).degree(), Some(1));
        assert_eq!(Poly::zero(&f).degree(), None);
        assert_eq!((&p(&f, &[1, 1]) - &p(&f, &[1, 1])).coeffs(), &[] as &[u32]);
    }

    #[test]
    fn evaluation_examples() {
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(p(&f3, &[1, 0, 1]).eval(1), 2);
        assert_eq!(Poly::zero(&f3).eval(2), 0);

        // T^3 + T over F_2 at beta in F_8
        let f2 = make_field(2, 1).unwrap();
        let f8 = make_field(2, 3).unwrap();
        let beta = FieldElement::generating_class(&f8);
        let got = p(&f2, &[0, 1, 0, 1]).eval_at(&beta).unwrap();
        let want = beta.pow(3).unwrap().try_add(&beta).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn evaluation_without_embedding_fails() {
        let f4 = make_field(2, 2).unwrap();
        let f8 = make_field(2, 3).unwrap();
        let err = p(&f4, &[1, 1]).eval_at(&f8.one()).unwrap_err();
        assert!(matches!(err, Error::NoEmbedding { .. }));
    }

    #[test]
    fn mismatched_fields() {
        let a = p(&make_field(5, 1).unwrap(), &[1]);
        let b = p(&make_field(7, 1).unwrap(), &[1]);
        assert_eq!(a.checked_mul(&b).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn division_and_gcd() {
        let f = make_field(7, 1).unwrap();
        let a = p(&f, &[6, 0, 1]); // x^2 - 1
        let b = p(&f, &[6, 1]); // x - 1
        let (qt, r) = a.divrem(&b).unwrap();
        assert_eq!(qt.coeffs(), &[1, 1]);
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&f, &[1, 1])).unwrap().coeffs(), &[1, 1]);
        assert_eq!(
            a.divrem(&Poly::zero(&f)).unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn frobenius_dilation_is_a_power() {
        let f = make_field(3, 2).unwrap();
        let g = p(&f, &[4, 7, 0, 2]);
        assert_eq!(g.frobenius_dilate(1), &(&g * &g) * &g);
        assert_eq!(
            g.frobenius_dilate(2),
            g.frobenius_dilate(1).frobenius_dilate(1)
        );
    }
}
