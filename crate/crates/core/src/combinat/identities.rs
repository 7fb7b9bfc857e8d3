use num_bigint::BigInt;

use super::binom::{binom_ext, reduce_mod};
use super::catalan::{catalan, catalan_mod, catalan_mod_via_congruence};
use crate::error::{Error, Result};
use crate::ff::{make_field, prime_power, FieldSpec};
use crate::poly::{IntPoly, Poly};

/// Both sides of a polynomial identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck<P> {
    pub lhs: P,
    pub rhs: P,
}

impl<P: PartialEq> IdentityCheck<P> {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalanCheck {
    pub main: IdentityCheck<Poly>,
    pub restated: IdentityCheck<Poly>,
}

impl CatalanCheck {
    pub fn passed(&self) -> bool {
        self.main.passed() && self.restated.passed()
    }
}

fn prime_field_of(q: u64) -> Result<(FieldSpec, u32)> {
    let (p, _) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    Ok((make_field(p as u64, 1)?, p))
}

/// Returns whether `binom(r,m) binom(m,n) = binom(r,n) binom(r-n, m-n)` and
/// whether `sum_{i=0}^{l} (-1)^i binom(r-i, l) binom(l, i) = 1`.
pub fn verify_trinomial_and_sum(r: i64, m: i64, n: i64, l: i64) -> (bool, bool) {
    let trin = binom_ext(r, m) * binom_ext(m, n) == binom_ext(r, n) * binom_ext(r - n, m - n);
    let sum: BigInt = (0..=l.max(-1))
        .map(|i| {
            let term = binom_ext(r - i, l) * binom_ext(l, i);
            if i % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum();
    (trin, l >= 0 && sum == BigInt::from(1))
}

/// `t^(e+1) - (-1)^e` against
/// `sum_{n=0}^{(e+1)/2} (binom(e-n, n-1) + binom(e-n+1, n)) (t-1)^(e+1-2n) t^n`
/// over the integers.
pub fn verify_char0_identity(e: i64) -> Result<IdentityCheck<IntPoly>> {
    if e < 2 {
        return Err(Error::ExponentOutOfRange(e));
    }
    let sign = if e % 2 == 0 { 1 } else { -1 };
    let lhs = &IntPoly::monomial(1, (e + 1) as usize) - &IntPoly::constant(sign);
    let t_minus_1 = IntPoly::from_i64(&[-1, 1]);
    let mut rhs = IntPoly::zero();
    for n in 0..=(e + 1) / 2 {
        let c = binom_ext(e - n, n - 1) + binom_ext(e - n + 1, n);
        let term = t_minus_1
            .pow((e + 1 - 2 * n) as u64)
            .shift(n as usize)
            .scale(&c);
        rhs = &rhs + &term;
    }
    Ok(IdentityCheck { lhs, rhs })
}

/// `sum_{i <= (q-1)/2} C_i (t(1-t))^i` against `t^(q-1) + (1-t)^(q-1)` and
/// against `1 + t + ... + t^(q-2) + 2 t^(q-1)`, all over `F_p`.
pub fn verify_catalan_identity(q: u64) -> Result<CatalanCheck> {
    let (f, p) = prime_field_of(q)?;
    let q = q as usize;
    let one_minus_t = Poly::new(&f, vec![1, f.neg(1)]);
    let base = &Poly::x(&f) * &one_minus_t;
    let mut power = Poly::one(&f);
    let mut lhs = Poly::zero(&f);
    for i in 0..=(q - 1) / 2 {
        lhs = &lhs + &power.scale(catalan_mod(i, p));
        power = &power * &base;
    }
    let rhs = &Poly::monomial(&f, 1, q - 1) + &one_minus_t.pow(q as u64 - 1);
    let mut geometric = vec![1u32; q];
    geometric[q - 1] = f.add(1, 1);
    let restated = Poly::new(&f, geometric);
    Ok(CatalanCheck {
        main: IdentityCheck {
            lhs: lhs.clone(),
            rhs,
        },
        restated: IdentityCheck { lhs, rhs: restated },
    })
}

/// `s_1^k + s_2^k` for the roots of `s^2 - s + t`, as a polynomial in `t`.
pub fn power_sum_poly(k: usize) -> IntPoly {
    let mut prev = IntPoly::constant(2);
    if k == 0 {
        return prev;
    }
    let mut cur = IntPoly::constant(1);
    let t = IntPoly::t();
    for _ in 1..k {
        let next = &cur - &(&t * &prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `s_1^(q-1) + s_2^(q-1)` reduced mod `p` against `sum_{i <= (q-1)/2} C_i t^i`.
pub fn verify_power_sum(q: u64) -> Result<IdentityCheck<Poly>> {
    let (f, p) = prime_field_of(q)?;
    let lhs = power_sum_poly(q as usize - 1).reduce(&f);
    let rhs = Poly::new(
        &f,
        (0..=(q as usize - 1) / 2)
            .map(|i| catalan_mod(i, p))
            .collect(),
    );
    Ok(IdentityCheck { lhs, rhs })
}

/// `C_i = 0 mod p` for every `(q-1)/2 < i < q-1`.
pub fn verify_zero_window(q: u64) -> Result<bool> {
    let (_, p) = prime_field_of(q)?;
    let q = q as usize;
    Ok(((q - 1) / 2 + 1..q.saturating_sub(1)).all(|i| catalan_mod(i, p) == 0))
}

/// The relation between `u = x^q + x` and `v = x^(q+1) / u`, cleared of
/// denominators by substituting `v` and multiplying through by `u`:
/// `u^(q+1) = x^(q^2+q) + x^(q+1) + sum_i C_i u^(q-1-2i) x^((q+1)(i+1))`
/// over `F_p`, with `i` running up to `(q-1)/2`.
pub fn verify_tower_relation(q: u64) -> Result<IdentityCheck<Poly>> {
    let (f, p) = prime_field_of(q)?;
    let q = q as usize;
    let u = Poly::from_terms(&f, &[(1, 1), (q, 1)]);
    let lhs = &u.pow(q as u64) * &u;

    let top = (q - 1) / 2;
    let u2 = &u * &u;
    let mut u_pow = u.pow(((q - 1) % 2) as u64);
    let mut rhs = Poly::from_terms(&f, &[(q + 1, 1), (q * q + q, 1)]);
    for i in (0..=top).rev() {
        let c = catalan_mod(i, p);
        if c != 0 {
            rhs = &rhs + &u_pow.scale(c).shift((q + 1) * (i + 1));
        }
        if i > 0 {
            u_pow = &u_pow * &u2;
        }
    }
    Ok(IdentityCheck { lhs, rhs })
}

/// `binom(n, k) = (-1)^(n-k) binom(q-1-k, n-k) mod p` for `n >= 0`,
/// `n - k < q`, swept over `0 <= n < 3q` and `n - q < k <= n + q`, using
/// exact integers on both sides.
pub fn verify_binomial_reduction(q: u64) -> Result<bool> {
    let (_, p) = prime_field_of(q)?;
    let q = q as i64;
    for n in 0..3 * q {
        for k in (n - q + 1)..=(n + q) {
            let lhs = reduce_mod(&binom_ext(n, k), p);
            let mut rhs = binom_ext(q - 1 - k, n - k);
            if (n - k) % 2 != 0 {
                rhs = -rhs;
            }
            if lhs != reduce_mod(&rhs, p) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The congruence form of `C_i mod p` against the exact Catalan residue for
/// every `0 <= i < q - 1`.
pub fn verify_catalan_congruence(q: u64) -> Result<bool> {
    let (_, p) = prime_field_of(q)?;
    for i in 0..q.saturating_sub(1) {
        if catalan_mod_via_congruence(i, q)? != reduce_mod(&catalan(i as usize), p) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trinomial_examples() {
        assert_eq!(verify_trinomial_and_sum(6, 4, 2, 0), (true, true));
        assert!(verify_trinomial_and_sum(7, 0, 0, 0).1);
        assert!(verify_trinomial_and_sum(3, 1, 1, 5).1);
    }

    #[test]
    fn char0_small_cases() {
        let c2 = verify_char0_identity(2).unwrap();
        assert_eq!(c2.lhs, IntPoly::from_i64(&[-1, 0, 0, 1]));
        assert!(c2.passed());
        let c3 = verify_char0_identity(3).unwrap();
        assert_eq!(c3.rhs, IntPoly::from_i64(&[1, 0, 0, 0, 1]));
        assert!(c3.passed());
        assert!(verify_char0_identity(64).unwrap().passed());
        assert_eq!(
            verify_char0_identity(1).unwrap_err(),
            Error::ExponentOutOfRange(1)
        );
    }

    #[test]
    fn catalan_identity_examples() {
        let c2 = verify_catalan_identity(2).unwrap();
        assert!(c2.main.lhs.is_one());
        assert!(c2.passed());
        let c3 = verify_catalan_identity(3).unwrap();
        assert_eq!(c3.main.rhs.coeffs(), &[1, 1, 2]);
        assert!(c3.passed());
        let c4 = verify_catalan_identity(4).unwrap();
        assert_eq!(c4.main.lhs.coeffs(), &[1, 1, 1]);
        assert!(c4.passed());
        assert!(verify_catalan_identity(6).is_err());
    }

    #[test]
    fn power_sums() {
        assert_eq!(power_sum_poly(0), IntPoly::constant(2));
        assert_eq!(power_sum_poly(1), IntPoly::constant(1));
        assert_eq!(power_sum_poly(2), IntPoly::from_i64(&[1, -2]));
        assert_eq!(power_sum_poly(4), IntPoly::from_i64(&[1, -4, 2]));
        let c5 = verify_power_sum(5).unwrap();
        assert_eq!(c5.lhs.coeffs(), &[1, 1, 2]);
        assert!(c5.passed());
    }

    #[test]
    fn zero_window_examples() {
        for q in [5, 7, 9] {
            assert!(verify_zero_window(q).unwrap());
        }
    }

    #[test]
    fn tower_examples() {
        let t2 = verify_tower_relation(2).unwrap();
        assert_eq!(t2.lhs.coeffs(), &[0, 0, 0, 1, 1, 1, 1]);
        assert!(t2.passed());
        assert!(verify_tower_relation(3).unwrap().passed());
        assert!(verify_tower_relation(8).unwrap().passed());
    }

    #[test]
    fn congruence_examples() {
        assert!(verify_binomial_reduction(4).unwrap());
        assert!(verify_catalan_congruence(9).unwrap());
    }
}
