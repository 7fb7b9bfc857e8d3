use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::binom::{binom_ext, binom_mod_p, reduce_mod};
use crate::error::{Error, Result};
use crate::ff::prime_power;

fn cache() -> &'static RwLock<Vec<BigInt>> {
    static CACHE: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![BigInt::from(1)]))
}

/// The `i`-th Catalan number `binom(2i, i) / (i + 1)`.
///
/// Values are cached; each newly computed entry is also checked against the
/// difference form `binom(2i, i) - binom(2i, i - 1)`.
pub fn catalan(i: usize) -> BigInt {
    if let Some(c) = cache().read().unwrap().get(i) {
        return c.clone();
    }
    let mut table = cache().write().unwrap();
    while table.len() <= i {
        let j = table.len() as i64;
        let central = binom_ext(2 * j, j);
        let (c, rem) = central.div_rem(&BigInt::from(j + 1));
        assert!(rem.is_zero(), "central binomial not divisible by i + 1");
        assert_eq!(
            c,
            &central - binom_ext(2 * j, j - 1),
            "Catalan forms disagree"
        );
        table.push(c);
    }
    table[i].clone()
}

pub fn catalan_mod(i: usize, p: u32) -> u32 {
    reduce_mod(&catalan(i), p)
}

/// `C_i mod p` via `(-1)^i (binom(q-1-i, i) + binom(q-i, i+1))`, valid for
/// `0 <= i < q - 1`.
pub fn catalan_mod_via_congruence(i: u64, q: u64) -> Result<u32> {
    let (p, _) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if i + 1 >= q {
        return Err(Error::IndexOutOfCongruenceRange { i, q });
    }
    let (i, q) = (i as i64, q as i64);
    let s = (binom_mod_p(q - 1 - i, i, p) + binom_mod_p(q - i, i + 1, p)) % p;
    Ok(if i % 2 == 0 { s } else { (p - s) % p })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let expect = [1, 1, 2, 5, 14, 42, 132, 429];
        for (i, &c) in expect.iter().enumerate() {
            assert_eq!(catalan(i), BigInt::from(c));
        }
    }

    #[test]
    fn congruence_examples() {
        assert_eq!(catalan_mod_via_congruence(2, 5).unwrap(), 2);
        assert_eq!(catalan_mod_via_congruence(3, 5).unwrap(), 0);
        assert_eq!(catalan_mod_via_congruence(3, 9).unwrap(), 2);
        assert_eq!(
            catalan_mod_via_congruence(4, 5).unwrap_err(),
            Error::IndexOutOfCongruenceRange { i: 4, q: 5 }
        );
        assert!(catalan_mod_via_congruence(1, 6).is_err());
    }
}
