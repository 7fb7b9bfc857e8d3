use std::collections::BTreeMap;

use crate::combinat::{binom_mod_p, catalan_mod};
use crate::error::{Error, Result};
use crate::ff::{field_of_order, prime_power, Embedding, FieldSpec};
use crate::poly::{BiPoly, LaurentPoly, Poly, XyPoly};

/// `Phi_T(X, Y)` as a sparse map from `(m, n)` to the `F_q[T]` coefficient
/// of `X^m Y^n`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularPoly {
    q: u32,
    field: FieldSpec,
    terms: BTreeMap<(u32, u32), Poly>,
}

impl ModularPoly {
    /// Assemble from raw terms, dropping zeros and rejecting exponents above
    /// `q + 1` or coefficients over another field.
    pub fn from_terms(field: &FieldSpec, terms: BTreeMap<(u32, u32), Poly>) -> Result<Self> {
        let q = field.order();
        for (&(m, n), c) in &terms {
            field.check_same(c.field())?;
            if m > q + 1 || n > q + 1 {
                return Err(Error::Malformed(format!(
                    "exponent pair ({m}, {n}) exceeds q + 1 = {}",
                    q + 1
                )));
            }
        }
        Ok(ModularPoly {
            q,
            field: field.clone(),
            terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Poly> {
        &self.terms
    }

    pub fn coeff(&self, m: u32, n: u32) -> Poly {
        self.terms
            .get(&(m, n))
            .cloned()
            .unwrap_or_else(|| Poly::zero(&self.field))
    }

    /// Copy with the coefficient of `X^m Y^n` replaced.
    pub fn with_coeff(&self, m: u32, n: u32, c: Poly) -> Result<Self> {
        let mut terms = self.terms.clone();
        terms.insert((m, n), c);
        Self::from_terms(&self.field, terms)
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(&(m, n), c)| self.terms.get(&(n, m)) == Some(c))
    }

    /// Largest `T`-degree among the coefficients, with the pair attaining it
    /// first in `(m, n)` order.
    pub fn max_t_degree(&self) -> Option<((u32, u32), usize)> {
        self.terms
            .iter()
            .filter_map(|(&k, c)| c.degree().map(|d| (k, d)))
            .fold(None, |best, (k, d)| match best {
                Some((_, bd)) if bd >= d => best,
                _ => Some((k, d)),
            })
    }

    /// Coefficients specialised at a point of an extension field.
    pub fn specialize(&self, emb: &Embedding, alpha: u32) -> Result<BTreeMap<(u32, u32), u32>> {
        self.field.check_same(emb.source())?;
        Ok(self
            .terms
            .iter()
            .map(|(&k, c)| (k, c.eval_embedded(emb, alpha)))
            .collect())
    }

    /// `Phi(x, y)` with `T = alpha`, all values in the target of `emb`.
    pub fn eval_specialized(&self, emb: &Embedding, alpha: u32, x: u32, y: u32) -> u32 {
        let f = emb.target();
        self.terms.iter().fold(0, |acc, (&(m, n), c)| {
            let mono = f.mul(
                f.pow(x, m as i64).expect("nonnegative"),
                f.pow(y, n as i64).expect("nonnegative"),
            );
            f.add(acc, f.mul(c.eval_embedded(emb, alpha), mono))
        })
    }
}

fn field_for(q: u64) -> Result<FieldSpec> {
    prime_power(q).ok_or(Error::NotPrimePower(q))?;
    field_of_order(q)
}

/// `-T (T^(q-1) - 1)^(q+1)` over `F_q`.
pub fn j0(q: u64) -> Result<Poly> {
    let f = field_for(q)?;
    Ok(j0_in(&f))
}

pub(crate) fn j0_in(f: &FieldSpec) -> Poly {
    let q = f.order() as usize;
    let base = Poly::from_terms(f, &[(0, f.neg(1)), (q - 1, 1)]);
    base.pow(q as u64 + 1).shift(1).neg()
}

fn t_pow(f: &FieldSpec, e: i64) -> LaurentPoly {
    LaurentPoly::monomial(f, 1, e)
}

fn laurent(p: Poly) -> LaurentPoly {
    LaurentPoly::from_poly(p)
}

fn lift_all(xy: XyPoly) -> Result<BTreeMap<(u32, u32), Poly>> {
    xy.into_terms()
        .into_iter()
        .map(|((m, n), c)| {
            c.lift()
                .map(|p| ((m, n), p))
                .map_err(|_| Error::CancellationViolated {
                    m,
                    n,
                    lowest: c.offset(),
                })
        })
        .collect()
}

/// Expand the closed form of `Phi_T` for `q = p^e`:
///
/// `(X+Y-j0)^(q+1) - X Y^q - X^q Y + (XY)^q (T^(1-q) - 1) + XY (T^(q-1) - 1)^(q^2)
///  - T^(1-q) XY sum_i C_i W^(q-1-2i) (XY T^(q^2+1))^i`
///
/// with `W = XY - T^q (X + Y - j0)` and `i` up to `(q-1)/2`. Coefficients are
/// carried as Laurent polynomials in `T`; every negative power has to cancel.
pub fn expand_phi(q: u64) -> Result<ModularPoly> {
    let f = field_for(q)?;
    let p = f.characteristic();
    let q = q as u32;
    let qi = q as i64;
    let one = LaurentPoly::one(&f);
    let x = XyPoly::x(&f);
    let y = XyPoly::y(&f);
    let xy = XyPoly::term(1, 1, one.clone());

    let s = x
        .checked_add(&y)?
        .checked_sub(&XyPoly::term(0, 0, laurent(j0_in(&f))))?;
    let mut total = s.pow(q as u64 + 1);

    let mixed = XyPoly::term(1, q, one.clone()).checked_add(&XyPoly::term(q, 1, one.clone()))?;
    total = total.checked_sub(&mixed)?;

    let t_inv_minus_one = t_pow(&f, 1 - qi).checked_sub(&one)?;
    total = total.checked_add(&XyPoly::term(q, q, t_inv_minus_one))?;

    let big = t_pow(&f, qi - 1)
        .checked_sub(&one)?
        .pow(q as u64 * q as u64);
    total = total.checked_add(&XyPoly::term(1, 1, big))?;

    let w = xy.checked_sub(&s.scale(&t_pow(&f, qi))?)?;
    let mut sum = XyPoly::zero(&f);
    for i in 0..=(q - 1) / 2 {
        let c = catalan_mod(i as usize, p);
        if c == 0 {
            continue;
        }
        let piece =
            w.pow((q - 1 - 2 * i) as u64)
                .scale_raw(c)
                .shift(i, i, i as i64 * (qi * qi + 1));
        sum = sum.checked_add(&piece)?;
    }
    total = total.checked_sub(&sum.shift(1, 1, 1 - qi))?;

    ModularPoly::from_terms(&f, lift_all(total)?)
}

/// `P_m(Y) = sum_n c_{m,n} Y^n`, with `Y` as the outer variable.
pub fn coeff_pm(phi: &ModularPoly, m: u32) -> Result<BiPoly> {
    if m > phi.q + 1 {
        return Err(Error::CoefficientOutOfRange { m, q: phi.q });
    }
    let rows = (0..=phi.q + 1).map(|n| phi.coeff(m, n)).collect();
    Ok(BiPoly::from_polys(&phi.field, rows))
}

/// Independent closed formula for `P_m(Y)`, `2 <= m <= q - 1`:
///
/// `-T^(1-q) Y sum_i C_i binom(q-1-2i, m-1-i) (Y - T^q)^(m-1-i)
///  (-T^q (Y - j0))^(q-m-i) (T^(q^2+1) Y)^i`.
pub fn pm_closed_form(q: u64, m: u32) -> Result<BiPoly> {
    let f = field_for(q)?;
    let p = f.characteristic();
    let q = q as u32;
    if m < 2 || m + 1 > q {
        return Err(Error::CoefficientOutOfRange { m, q });
    }
    let qi = q as i64;
    let y_minus_tq = BiPoly::new(&f, vec![t_pow(&f, qi).neg(), LaurentPoly::one(&f)]);
    let y_minus_j0 = BiPoly::new(&f, vec![laurent(j0_in(&f)).neg(), LaurentPoly::one(&f)]);
    let second = y_minus_j0.scale(&t_pow(&f, qi).neg())?;
    let mut sum = BiPoly::zero(&f);
    for i in 0..=(q - 1) / 2 {
        let a = m as i64 - 1 - i as i64;
        let b = q as i64 - m as i64 - i as i64;
        if a < 0 || b < 0 {
            continue;
        }
        let c = f.mul(
            catalan_mod(i as usize, p),
            binom_mod_p(q as i64 - 1 - 2 * i as i64, a, p),
        );
        if c == 0 {
            continue;
        }
        let piece = y_minus_tq
            .pow(a as u64)
            .checked_mul(&second.pow(b as u64))?
            .shift(i as usize, i as i64 * (qi * qi + 1))
            .scale(&LaurentPoly::constant(&f, c))?;
        sum = sum.checked_add(&piece)?;
    }
    let out = sum.shift(1, 1 - qi).neg();
    let rows = out.lift_rows()?;
    Ok(BiPoly::from_polys(&f, rows))
}
