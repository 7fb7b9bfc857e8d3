//! Raw multiplication kernels over packed field elements.
//!
//! Operands in this crate are very often sparse (Frobenius dilations of
//! short polynomials), so the product routine picks between a
//! nonzero-by-nonzero loop, a sparse-outer `axpy` loop and Karatsuba.
//! Karatsuba only engages when both operands are at least half full and
//! longer than [`KARATSUBA_CUTOFF`]; below that, schoolbook with table
//! lookups wins on every field tried.

use crate::ff::FieldSpec;

pub(crate) const KARATSUBA_CUTOFF: usize = 48;

pub(crate) fn nnz(a: &[u32]) -> usize {
    a.iter().filter(|&&x| x != 0).count()
}

pub(crate) fn nonzeros(a: &[u32]) -> Vec<(usize, u32)> {
    a.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| (i, x))
        .collect()
}

/// `acc += a * b`, with `acc.len() >= a.len() + b.len() - 1`.
pub(crate) fn mul_acc(f: &FieldSpec, acc: &mut [u32], a: &[u32], b: &[u32]) {
    if a.is_empty() || b.is_empty() {
        return;
    }
    let (na, nb) = (nnz(a), nnz(b));
    if na == 0 || nb == 0 {
        return;
    }
    let sparse_a = na * 4 < a.len();
    let sparse_b = nb * 4 < b.len();
    if sparse_a && sparse_b {
        let zb = nonzeros(b);
        for (i, x) in nonzeros(a) {
            for &(j, y) in &zb {
                acc[i + j] = f.add(acc[i + j], f.mul(x, y));
            }
        }
        return;
    }
    if !sparse_a
        && !sparse_b
        && na * 2 >= a.len()
        && nb * 2 >= b.len()
        && a.len().min(b.len()) >= KARATSUBA_CUTOFF
    {
        karatsuba(f, acc, a, b);
        return;
    }
    if na * b.len() <= nb * a.len() {
        for (i, x) in nonzeros(a) {
            f.axpy(&mut acc[i..], x, b);
        }
    } else {
        for (j, y) in nonzeros(b) {
            f.axpy(&mut acc[j..], y, a);
        }
    }
}

pub(crate) fn mul(f: &FieldSpec, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    mul_acc(f, &mut out, a, b);
    out
}

fn schoolbook(f: &FieldSpec, acc: &mut [u32], a: &[u32], b: &[u32]) {
    for (i, &x) in a.iter().enumerate() {
        f.axpy(&mut acc[i..], x, b);
    }
}

fn add_into(f: &FieldSpec, acc: &mut [u32], src: &[u32]) {
    for (x, &s) in acc.iter_mut().zip(src) {
        *x = f.add(*x, s);
    }
}

fn sub_into(f: &FieldSpec, acc: &mut [u32], src: &[u32]) {
    for (x, &s) in acc.iter_mut().zip(src) {
        *x = f.sub(*x, s);
    }
}

fn sum(f: &FieldSpec, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; a.len().max(b.len())];
    out[..a.len()].copy_from_slice(a);
    add_into(f, &mut out, b);
    out
}

/// `acc += a * b` by Karatsuba; unbalanced operands are cut into chunks of
/// the shorter length.
fn karatsuba(f: &FieldSpec, acc: &mut [u32], a: &[u32], b: &[u32]) {
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if b.len() < KARATSUBA_CUTOFF {
        schoolbook(f, acc, a, b);
        return;
    }
    if a.len() > b.len() {
        for (k, chunk) in a.chunks(b.len()).enumerate() {
            karatsuba(f, &mut acc[k * b.len()..], chunk, b);
        }
        return;
    }
    let n = a.len();
    let m = n / 2;
    let (a0, a1) = a.split_at(m);
    let (b0, b1) = b.split_at(m);

    let mut z0 = vec![0u32; 2 * m - 1];
    karatsuba(f, &mut z0, a0, b0);
    let mut z2 = vec![0u32; a1.len() + b1.len() - 1];
    karatsuba(f, &mut z2, a1, b1);
    let sa = sum(f, a0, a1);
    let sb = sum(f, b0, b1);
    let mut z1 = vec![0u32; sa.len() + sb.len() - 1];
    karatsuba(f, &mut z1, &sa, &sb);
    sub_into(f, &mut z1, &z0);
    sub_into(f, &mut z1, &z2);

    add_into(f, acc, &z0);
    add_into(f, &mut acc[m..], &z1);
    add_into(f, &mut acc[2 * m..], &z2);
}

/// Growable dense accumulator for a Laurent polynomial: `data[i]` is the
/// coefficient of exponent `lo + i`.
#[derive(Clone, Debug, Default)]
pub(crate) struct Acc {
    pub lo: i64,
    pub data: Vec<u32>,
}

impl Acc {
    pub fn new() -> Self {
        Acc::default()
    }

    /// Make room for exponents `lo..lo + len`.
    pub fn reserve_range(&mut self, lo: i64, len: usize) {
        if len == 0 {
            return;
        }
        if self.data.is_empty() {
            self.lo = lo;
            self.data = vec![0; len];
            return;
        }
        let hi = (lo + len as i64).max(self.lo + self.data.len() as i64);
        if lo < self.lo {
            let grow = (self.lo - lo) as usize;
            let mut data = vec![0u32; (hi - lo) as usize];
            data[grow..grow + self.data.len()].copy_from_slice(&self.data);
            self.data = data;
            self.lo = lo;
        } else if hi > self.lo + self.data.len() as i64 {
            self.data.resize((hi - self.lo) as usize, 0);
        }
    }

    /// `self += x^lo * (a * b)` where `a`, `b` are dense bodies.
    pub fn add_mul(&mut self, f: &FieldSpec, lo: i64, a: &[u32], b: &[u32]) {
        if a.is_empty() || b.is_empty() {
            return;
        }
        self.reserve_range(lo, a.len() + b.len() - 1);
        let start = (lo - self.lo) as usize;
        mul_acc(f, &mut self.data[start..], a, b);
    }

    /// `self += c * x^lo * a`.
    pub fn add_scaled(&mut self, f: &FieldSpec, lo: i64, c: u32, a: &[u32]) {
        if a.is_empty() || c == 0 {
            return;
        }
        self.reserve_range(lo, a.len());
        let start = (lo - self.lo) as usize;
        f.axpy(&mut self.data[start..], c, a);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn naive(f: &FieldSpec, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        out
    }

    #[test]
    fn strategies_agree_with_naive_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (p, e) in [(2u64, 1u32), (3, 3), (5, 1), (2, 10), (1009, 1)] {
            let f = make_field(p, e).unwrap();
            for &(la, lb, density) in &[
                (10usize, 7usize, 1.0f64),
                (200, 130, 1.0),
                (300, 47, 0.9),
                (500, 500, 0.05),
                (400, 90, 0.3),
                (97, 311, 0.6),
            ] {
                let gen = |rng: &mut ChaCha8Rng, len: usize| -> Vec<u32> {
                    (0..len)
                        .map(|_| {
                            if rng.gen_bool(density) {
                                f.random_raw(rng, false)
                            } else {
                                0
                            }
                        })
                        .collect()
                };
                let a = gen(&mut rng, la);
                let b = gen(&mut rng, lb);
                assert_eq!(mul(&f, &a, &b), naive(&f, &a, &b), "p={p} e={e} {la}x{lb}");
            }
        }
    }

    #[test]
    fn accumulator_grows_both_ways() {
        let f = make_field(7, 1).unwrap();
        let mut acc = Acc::new();
        acc.add_scaled(&f, 5, 1, &[1, 2]);
        acc.add_scaled(&f, -3, 2, &[3]);
        acc.add_scaled(&f, 10, 1, &[4]);
        assert_eq!(acc.lo, -3);
        assert_eq!(acc.data.len(), 14);
        assert_eq!(acc.data[0], 6);
        assert_eq!(acc.data[8], 1);
        assert_eq!(acc.data[9], 2);
        assert_eq!(acc.data[13], 4);
    }
}
