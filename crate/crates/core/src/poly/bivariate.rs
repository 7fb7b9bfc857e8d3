//! Polynomials in two or three variables with Laurent coefficients in `T`.
//!
//! [`XyPoly`] is sparse in `(X, Y)` and carries the closed-form expansion.
//! [`BiPoly`] is dense in one outer variable (`z` or `Y`) over `T`; with
//! `z` outside, "identically zero" is a check that every row vanishes.

use std::collections::BTreeMap;

use super::dense::{pow_by_digits, Poly};
use super::kernel::Acc;
use super::laurent::LaurentPoly;
use crate::error::Result;
use crate::ff::FieldSpec;

/// Sparse polynomial in `X, Y` with coefficients in `F_q[T, 1/T]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XyPoly {
    field: FieldSpec,
    terms: BTreeMap<(u32, u32), LaurentPoly>,
}

impl XyPoly {
    pub fn zero(field: &FieldSpec) -> Self {
        XyPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::term(0, 0, LaurentPoly::one(field))
    }

    /// `c(T) X^m Y^n`.
    pub fn term(m: u32, n: u32, c: LaurentPoly) -> Self {
        let mut out = Self::zero(c.field());
        if !c.is_zero() {
            out.terms.insert((m, n), c);
        }
        out
    }

    pub fn x(field: &FieldSpec) -> Self {
        Self::term(1, 0, LaurentPoly::one(field))
    }

    pub fn y(field: &FieldSpec) -> Self {
        Self::term(0, 1, LaurentPoly::one(field))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), LaurentPoly> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<(u32, u32), LaurentPoly> {
        self.terms
    }

    pub fn coeff(&self, m: u32, n: u32) -> LaurentPoly {
        self.terms
            .get(&(m, n))
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_accs(field: &FieldSpec, accs: BTreeMap<(u32, u32), Acc>) -> Self {
        let terms = accs
            .into_iter()
            .map(|(k, a)| (k, LaurentPoly::from_acc(field, a)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        XyPoly {
            field: field.clone(),
            terms,
        }
    }

    pub fn checked_add(&self, other: &XyPoly) -> Result<XyPoly> {
        self.field.check_same(&other.field)?;
        let f = &self.field;
        let mut accs: BTreeMap<(u32, u32), Acc> = BTreeMap::new();
        for (k, c) in self.terms.iter().chain(other.terms.iter()) {
            accs.entry(*k)
                .or_default()
                .add_scaled(f, c.offset(), 1, c.body().coeffs());
        }
        Ok(Self::from_accs(f, accs))
    }

    pub fn checked_sub(&self, other: &XyPoly) -> Result<XyPoly> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &XyPoly) -> Result<XyPoly> {
        self.field.check_same(&other.field)?;
        let f = &self.field;
        let mut accs: BTreeMap<(u32, u32), Acc> = BTreeMap::new();
        for (&(ma, na), ca) in &self.terms {
            for (&(mb, nb), cb) in &other.terms {
                accs.entry((ma + mb, na + nb)).or_default().add_mul(
                    f,
                    ca.offset() + cb.offset(),
                    ca.body().coeffs(),
                    cb.body().coeffs(),
                );
            }
        }
        Ok(Self::from_accs(f, accs))
    }

    pub fn neg(&self) -> XyPoly {
        XyPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    /// Multiply every coefficient by `c(T)`.
    pub fn scale(&self, c: &LaurentPoly) -> Result<XyPoly> {
        self.checked_mul(&XyPoly::term(0, 0, c.clone()))
    }

    pub fn scale_raw(&self, c: u32) -> XyPoly {
        XyPoly {
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, v.scale(c)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    /// Multiply by `X^dm Y^dn T^dt`.
    pub fn shift(&self, dm: u32, dn: u32, dt: i64) -> XyPoly {
        XyPoly {
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&(m, n), v)| ((m + dm, n + dn), v.shift(dt)))
                .collect(),
        }
    }

    /// `f^{p^j}`.
    pub fn frobenius_dilate(&self, j: u32) -> XyPoly {
        let pj = self.field.characteristic().pow(j);
        XyPoly {
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&(m, n), v)| ((m * pj, n * pj), v.frobenius_dilate(j)))
                .collect(),
        }
    }

    pub fn pow(&self, k: u64) -> XyPoly {
        pow_by_digits(
            self,
            k,
            self.field.characteristic() as u64,
            XyPoly::one(&self.field),
            |a, b| a.checked_mul(b).expect("same field"),
            |a, j| a.frobenius_dilate(j),
        )
    }
}

/// Polynomial in an outer variable with Laurent coefficients in `T`:
/// `rows[i]` is the coefficient of `outer^i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiPoly {
    field: FieldSpec,
    rows: Vec<LaurentPoly>,
}

impl BiPoly {
    pub fn new(field: &FieldSpec, mut rows: Vec<LaurentPoly>) -> Self {
        while rows.last().is_some_and(|r| r.is_zero()) {
            rows.pop();
        }
        BiPoly {
            field: field.clone(),
            rows,
        }
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::constant(LaurentPoly::one(field))
    }

    pub fn constant(c: LaurentPoly) -> Self {
        let field = c.field().clone();
        Self::new(&field, vec![c])
    }

    /// `c(T) * outer^i`.
    pub fn term(i: usize, c: LaurentPoly) -> Self {
        let field = c.field().clone();
        let mut rows = vec![LaurentPoly::zero(&field); i];
        rows.push(c);
        Self::new(&field, rows)
    }

    /// `c1 * T^e1 * outer^i1 + ...` from a term list.
    pub fn from_terms(field: &FieldSpec, terms: &[(usize, i64, u32)]) -> Self {
        terms.iter().fold(Self::zero(field), |acc, &(i, e, c)| {
            acc.checked_add(&Self::term(i, LaurentPoly::monomial(field, c, e)))
                .expect("same field")
        })
    }

    /// Outer variable with `T`-polynomial coefficients taken from `rows`.
    pub fn from_polys(field: &FieldSpec, rows: Vec<Poly>) -> Self {
        Self::new(
            field,
            rows.into_iter().map(LaurentPoly::from_poly).collect(),
        )
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> &[LaurentPoly] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> LaurentPoly {
        self.rows
            .get(i)
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(&self.field))
    }

    pub fn degree(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Total number of nonzero `(outer, T)` terms.
    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.nnz()).sum()
    }

    pub(crate) fn from_accs(field: &FieldSpec, accs: Vec<Acc>) -> Self {
        Self::new(
            field,
            accs.into_iter()
                .map(|a| LaurentPoly::from_acc(field, a))
                .collect(),
        )
    }

    pub fn checked_add(&self, other: &BiPoly) -> Result<BiPoly> {
        self.field.check_same(&other.field)?;
        let n = self.rows.len().max(other.rows.len());
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            rows.push(match (self.rows.get(i), other.rows.get(i)) {
                (Some(a), Some(b)) => a.checked_add(b)?,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Ok(Self::new(&self.field, rows))
    }

    pub fn checked_sub(&self, other: &BiPoly) -> Result<BiPoly> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &BiPoly) -> Result<BiPoly> {
        self.field.check_same(&other.field)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.field));
        }
        let f = &self.field;
        let mut accs = vec![Acc::new(); self.rows.len() + other.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.rows.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                accs[i + j].add_mul(
                    f,
                    a.offset() + b.offset(),
                    a.body().coeffs(),
                    b.body().coeffs(),
                );
            }
        }
        Ok(Self::from_accs(f, accs))
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly {
            field: self.field.clone(),
            rows: self.rows.iter().map(|r| r.neg()).collect(),
        }
    }

    /// Multiply every row by `c(T)`.
    pub fn scale(&self, c: &LaurentPoly) -> Result<BiPoly> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.checked_mul(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(&self.field, rows))
    }

    /// Multiply by `outer^d * T^dt`.
    pub fn shift(&self, d: usize, dt: i64) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut rows = vec![LaurentPoly::zero(&self.field); d];
        rows.extend(self.rows.iter().map(|r| r.shift(dt)));
        BiPoly {
            field: self.field.clone(),
            rows,
        }
    }

    /// `f^{p^j}`.
    pub fn frobenius_dilate(&self, j: u32) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let pj = (self.field.characteristic() as usize).pow(j);
        let mut rows = vec![LaurentPoly::zero(&self.field); (self.rows.len() - 1) * pj + 1];
        for (i, r) in self.rows.iter().enumerate() {
            rows[i * pj] = r.frobenius_dilate(j);
        }
        BiPoly {
            field: self.field.clone(),
            rows,
        }
    }

    pub fn pow(&self, k: u64) -> BiPoly {
        pow_by_digits(
            self,
            k,
            self.field.characteristic() as u64,
            BiPoly::one(&self.field),
            |a, b| a.checked_mul(b).expect("same field"),
            |a, j| a.frobenius_dilate(j),
        )
    }

    /// Lowest `T` exponent over all rows (0 when zero).
    pub fn min_t_exponent(&self) -> i64 {
        self.rows
            .iter()
            .filter(|r| !r.is_zero())
            .map(|r| r.offset())
            .min()
            .unwrap_or(0)
    }

    /// Rows as plain `T`-polynomials; fails on a surviving negative power.
    pub fn lift_rows(&self) -> Result<Vec<Poly>> {
        self.rows.iter().map(|r| r.lift()).collect()
    }
}
