use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

/// `n (n-1) ... (n-k+1) / k!` for `k >= 0`, and 0 for `k < 0`.
pub fn binom_ext(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    // Symmetry shortcut for the ordinary range keeps the products short.
    let k = if n >= 0 && k <= n { k.min(n - k) } else { k };
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for j in 0..k {
        num *= n - j;
        den *= j + 1;
    }
    let (quo, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "binomial product not divisible by k!");
    quo
}

/// `binom(n, k)` for `0 <= k <= n < p`, by a direct product mod `p`.
fn small_binom(n: u64, k: u64, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num = 1u64;
    let mut den = 1u64;
    for j in 0..k {
        num = num * ((n - j) % p) % p;
        den = den * ((j + 1) % p) % p;
    }
    num * modpow(den, p - 2, p) % p
}

fn modpow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// `binom(n, k) mod p`: Lucas' theorem on base-`p` digits for `n >= 0`, and
/// the reflection `binom(n, k) = (-1)^k binom(k - n - 1, k)` for `n < 0`.
pub fn binom_mod_p(n: i64, k: i64, p: u32) -> u32 {
    let p = p as u64;
    if k < 0 {
        return 0;
    }
    if n < 0 {
        let v = binom_mod_p(k - n - 1, k, p as u32) as u64;
        return if k % 2 == 0 { v } else { (p - v) % p } as u32;
    }
    let (mut n, mut k) = (n as u64, k as u64);
    let mut acc = 1u64;
    while k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = acc * small_binom(nd, kd, p) % p;
        n /= p;
        k /= p;
    }
    acc as u32
}

/// Exact reduction of a big integer into `[0, p)`.
pub fn reduce_mod(x: &BigInt, p: u32) -> u32 {
    x.mod_floor(&BigInt::from(p))
        .to_u32()
        .expect("residue fits")
}
