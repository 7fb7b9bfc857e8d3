//! Polynomials over a prime field on raw residue vectors.
//!
//! These helpers exist for field construction (irreducibility tests,
//! generator search) and for the slow vector backend. Everything here is
//! little-endian and trimmed: no trailing zeros, zero polynomial = empty.

#[inline]
pub(crate) fn mulmod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub(crate) fn addmod(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    if s >= p as u64 {
        (s - p as u64) as u32
    } else {
        s as u32
    }
}

#[inline]
pub(crate) fn submod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        (a as u64 + p as u64 - b as u64) as u32
    }
}

pub(crate) fn powmod(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn invmod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    powmod(a, p as u64 - 2, p)
}

pub(crate) fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = addmod(out[i + j], mulmod(x, y, p), p);
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `m`.
pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let inv_lc = invmod(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = mulmod(r[top], inv_lc, p);
        if c != 0 {
            let shift = top - dm;
            for (j, &mj) in m.iter().enumerate() {
                r[shift + j] = submod(r[shift + j], mulmod(c, mj, p), p);
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

pub(crate) fn mulmod_poly(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn powmod_poly(base: &[u32], mut exp: u64, m: &[u32], p: u32) -> Vec<u32> {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_poly(&acc, &b, m, p);
        }
        b = mulmod_poly(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out: Vec<u32> = (0..n)
        .map(|i| {
            submod(
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
                p,
            )
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Irreducibility of a monic `f` of degree `e`: gcd(x^{p^i} - x, f) = 1 for
/// every 1 <= i <= e/2.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let e = f.len() - 1;
    if e == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x = [0, 1];
    let mut xp = x.to_vec();
    for _ in 1..=e / 2 {
        xp = powmod_poly(&xp, p as u64, f, p);
        let g = gcd(f, &sub(&xp, &x, p), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Unpack a base-`p` integer into `e` little-endian digits.
pub(crate) fn unpack(mut v: u32, p: u32, e: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(e as usize);
    for _ in 0..e {
        out.push(v % p);
        v /= p;
    }
    out
}

pub(crate) fn pack(digits: &[u32], p: u32) -> u32 {
    digits
        .iter()
        .rev()
        .fold(0u64, |acc, &d| acc * p as u64 + d as u64) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_irreducibles() {
        // x^2 + x + 1 over F_2
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        // x^2 + 1 over F_3, x^2 + 1 = (x+2)(x+3) over F_5
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[1, 0, 1], 5));
        // x^4 + x + 1 over F_2 is irreducible, x^4 + x^2 + 1 = (x^2+x+1)^2 is not
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
    }

    #[test]
    fn pack_roundtrip() {
        for v in 0..243 {
            assert_eq!(pack(&unpack(v, 3, 5), 3), v);
        }
    }
}
