use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::ff::{make_field, Embedding, FieldSpec};
use crate::poly::{resultant, Matrix, Poly};

use super::phi::ModularPoly;

const MIN_POINTS: u64 = 1 << 16;
const MAX_ATTEMPTS: u32 = 5;

/// Smallest `k` with `q^k >= 2^16`.
pub fn default_extension_degree(q: u64) -> u32 {
    let mut k = 1;
    let mut size = q;
    while size < MIN_POINTS {
        size *= q;
        k += 1;
    }
    k
}

/// `F_{q^k}` together with the embedding of the coefficient field of `phi`.
fn specialization_field(phi: &ModularPoly, k: u32) -> Result<Arc<Embedding>> {
    let f = phi.field();
    let size = (f.order() as u64).checked_pow(k).unwrap_or(u64::MAX);
    if size < MIN_POINTS {
        return Err(Error::ExtensionTooSmall(size));
    }
    let ext = make_field(f.characteristic() as u64, f.degree() * k)?;
    f.embedding_into(&ext)
}

/// A value for `T` that is nonzero and not a root of `T^(q-1) - 1`.
fn draw_alpha<R: Rng + ?Sized>(ext: &FieldSpec, q: u32, rng: &mut R) -> u32 {
    loop {
        let a = ext.random_raw(rng, true);
        if ext.pow(a, q as i64 - 1) != Some(1) {
            return a;
        }
    }
}

/// `(j(b), j'(b)) = ((b + a)^(q+1) / b, (b + a^q)^(q+1) / b^q)`.
fn param_point(ext: &FieldSpec, q: u32, alpha: u32, beta: u32) -> (u32, u32) {
    let aq = ext.pow(alpha, q as i64).expect("nonnegative");
    let qq = q as i64;
    let x = ext
        .div(
            ext.pow(ext.add(beta, alpha), qq + 1).expect("nonnegative"),
            beta,
        )
        .expect("beta is nonzero");
    let y = ext
        .div(
            ext.pow(ext.add(beta, aq), qq + 1).expect("nonnegative"),
            ext.pow(beta, qq).expect("nonnegative"),
        )
        .expect("beta is nonzero");
    (x, y)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpolationVerdict {
    pub field: FieldSpec,
    pub alpha: u32,
    pub attempts: u32,
    /// Coefficients recovered from the nullspace, `(q+1, 0)` normalised to 1.
    pub interpolated: BTreeMap<(u32, u32), u32>,
    /// Coefficients of the candidate specialised at `T = alpha`.
    pub expected: BTreeMap<(u32, u32), u32>,
}

impl InterpolationVerdict {
    pub fn agrees(&self) -> bool {
        self.interpolated == self.expected
    }
}

/// Recover `Phi(X, Y)` at `T = alpha` from points of the parametrised curve.
///
/// Draws `alpha` in `F_{q^k}` outside `{0} u {T^(q-1) = 1}` and
/// `(q+2)^2 + 8` distinct nonzero `beta`, evaluates every monomial
/// `X^m Y^n` with `m, n <= q+1` at `(j(beta), j'(beta))`, and requires a
/// one-dimensional nullspace. A degenerate nullspace is retried with fresh
/// `beta` values. The result is compared against `phi` at `T = alpha`.
pub fn oracle_interpolate<R: Rng + ?Sized>(
    phi: &ModularPoly,
    k: u32,
    rng: &mut R,
) -> Result<InterpolationVerdict> {
    let emb = specialization_field(phi, k)?;
    let ext = emb.target().clone();
    let q = phi.q();
    let side = (q + 2) as usize;
    let npoints = side * side + 8;
    let alpha = draw_alpha(&ext, q, rng);

    let expected: BTreeMap<(u32, u32), u32> = phi
        .specialize(&emb, alpha)?
        .into_iter()
        .filter(|&(_, v)| v != 0)
        .collect();

    for attempt in 1..=MAX_ATTEMPTS {
        let mut seen = HashSet::new();
        let mut rows = Vec::with_capacity(npoints);
        while rows.len() < npoints {
            let beta = ext.random_raw(rng, true);
            if !seen.insert(beta) {
                continue;
            }
            let (x, y) = param_point(&ext, q, alpha, beta);
            let mut row = Vec::with_capacity(side * side);
            let mut xm = 1u32;
            for _ in 0..side {
                let mut v = xm;
                for _ in 0..side {
                    row.push(v);
                    v = ext.mul(v, y);
                }
                xm = ext.mul(xm, x);
            }
            rows.push(row);
        }
        let basis = Matrix::from_rows(&ext, &rows)?.nullspace();
        if basis.len() != 1 {
            continue;
        }
        let v = &basis[0];
        let lead = v[(side - 1) * side];
        let Some(inv) = ext.inv(lead) else {
            continue;
        };
        let interpolated = v
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (((i / side) as u32, (i % side) as u32), ext.mul(c, inv)))
            .collect();
        return Ok(InterpolationVerdict {
            field: ext,
            alpha,
            attempts: attempt,
            interpolated,
            expected,
        });
    }
    Err(Error::OracleDegenerate {
        alpha: ext.format_raw(alpha),
        attempts: MAX_ATTEMPTS,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultantTrial {
    pub alpha: u32,
    pub gamma: u32,
    pub beta: u32,
    /// `R(X) / Phi(X, gamma)` when the two are proportional.
    pub scalar: Option<u32>,
    /// `Phi(j(beta), j'(beta)) = 0` at `T = alpha`.
    pub root_vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultantVerdict {
    pub field: FieldSpec,
    pub trials: Vec<ResultantTrial>,
}

impl ResultantVerdict {
    /// Every trial is proportional with scalar `+1` or `-1`, and every root
    /// check vanishes.
    pub fn passed(&self) -> bool {
        let minus_one = self.field.neg(1);
        self.trials
            .iter()
            .all(|t| t.root_vanishes && matches!(t.scalar, Some(s) if s == 1 || s == minus_one))
    }
}

/// Coefficients of the polynomial of degree `< xs.len()` through `(xs, ys)`.
fn interpolate(f: &FieldSpec, xs: &[u32], ys: &[u32]) -> Result<Poly> {
    let master = xs.iter().fold(Poly::one(f), |acc, &x| {
        &acc * &Poly::new(f, vec![f.neg(x), 1])
    });
    let mut out = Poly::zero(f);
    for (i, (&xi, &yi)) in xs.iter().zip(ys).enumerate() {
        let (basis, _) = master.divrem(&Poly::new(f, vec![f.neg(xi), 1]))?;
        let denom = xs
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(1u32, |acc, (_, &xj)| f.mul(acc, f.sub(xi, xj)));
        let c = f.div(yi, denom).ok_or(Error::DivisionByZero)?;
        out = &out + &basis.scale(c);
    }
    Ok(out)
}

/// Eliminate `z` between `j(z) = X` and `j'(z) = gamma` at `T = alpha`.
///
/// `R(X) = Res_z((z+alpha)^(q+1) - X z, B) / Res_z(z, B)` with
/// `B = (z+alpha^q)^(q+1) - gamma z^q`; the division by `Res_z(z, B)` strips
/// the `alpha^(q(q+1))` factor that the `z` denominator contributes. `R` is
/// sampled at `q+2` values of `X` and interpolated, then compared with
/// `Phi(X, gamma)` at `T = alpha`. Each trial also checks that a random
/// point of the parametrisation is a root.
pub fn oracle_resultant_points<R: Rng + ?Sized>(
    phi: &ModularPoly,
    k: u32,
    trials: u32,
    rng: &mut R,
) -> Result<ResultantVerdict> {
    let emb = specialization_field(phi, k)?;
    let ext = emb.target().clone();
    let q = phi.q();
    let n1 = (q + 1) as u64;
    let mut out = Vec::with_capacity(trials as usize);

    for _ in 0..trials {
        let alpha = draw_alpha(&ext, q, rng);
        let aq = ext.pow(alpha, q as i64).expect("nonnegative");
        let spec = phi.specialize(&emb, alpha)?;

        let (gamma, b, denom) = loop {
            let gamma = ext.random_raw(rng, false);
            let mut b = Poly::new(&ext, vec![aq, 1]).pow(n1).into_coeffs();
            b[q as usize] = ext.sub(b[q as usize], gamma);
            let b = Poly::new(&ext, b);
            let denom = resultant(&Poly::x(&ext), &b)?;
            if denom != 0 && b.degree() == Some(n1 as usize) {
                break (gamma, b, denom);
            }
        };

        let a_base = Poly::new(&ext, vec![alpha, 1]).pow(n1);
        let xs: Vec<u32> = (0..q + 2).collect();
        let ys = xs
            .iter()
            .map(|&x| {
                let mut a = a_base.coeffs().to_vec();
                a[1] = ext.sub(a[1], x);
                let r = resultant(&Poly::new(&ext, a), &b)?;
                Ok(ext.div(r, denom).expect("nonzero denominator"))
            })
            .collect::<Result<Vec<u32>>>()?;
        let r_poly = interpolate(&ext, &xs, &ys)?;

        let mut target = vec![0u32; q as usize + 2];
        for (&(m, n), &c) in &spec {
            let gn = ext.pow(gamma, n as i64).expect("nonnegative");
            target[m as usize] = ext.add(target[m as usize], ext.mul(c, gn));
        }
        let target = Poly::new(&ext, target);

        let scalar = if target.is_zero() || r_poly.degree() != target.degree() {
            None
        } else {
            let s = ext.div(r_poly.lc(), target.lc()).expect("nonzero");
            (target.scale(s) == r_poly).then_some(s)
        };

        let beta = ext.random_raw(rng, true);
        let (x, y) = param_point(&ext, q, alpha, beta);
        let root_vanishes = phi.eval_specialized(&emb, alpha, x, y) == 0;

        out.push(ResultantTrial {
            alpha,
            gamma,
            beta,
            scalar,
            root_vanishes,
        });
    }
    Ok(ResultantVerdict {
        field: ext,
        trials: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drinfeld::expand_phi;
    use crate::rng::stream;

    fn perturbed(phi: &ModularPoly) -> ModularPoly {
        let bumped = &phi.coeff(1, 1) + &Poly::one(phi.field());
        phi.with_coeff(1, 1, bumped).unwrap()
    }

    #[test]
    fn extension_degrees() {
        assert_eq!(default_extension_degree(2), 16);
        assert_eq!(default_extension_degree(5), 7);
        assert_eq!(default_extension_degree(27), 4);
        let phi = expand_phi(2).unwrap();
        assert_eq!(
            oracle_interpolate(&phi, 4, &mut stream(0, 2, 0, 0)).unwrap_err(),
            Error::ExtensionTooSmall(16)
        );
    }

    #[test]
    fn interpolation_agrees_and_catches_mutation() {
        for (q, k) in [(2u64, 20u32), (5, 8), (3, 11)] {
            let phi = expand_phi(q).unwrap();
            let v = oracle_interpolate(&phi, k, &mut stream(1, q, 0, 0)).unwrap();
            assert!(v.agrees(), "q = {q}");
            let bad = perturbed(&phi);
            let v = oracle_interpolate(&bad, k, &mut stream(1, q, 0, 0)).unwrap();
            assert!(!v.agrees(), "q = {q}");
        }
    }

    #[test]
    fn resultant_points_agree_and_catch_mutation() {
        for q in [2u64, 3, 4] {
            let phi = expand_phi(q).unwrap();
            let k = default_extension_degree(q);
            let v = oracle_resultant_points(&phi, k, 10, &mut stream(2, q, 0, 0)).unwrap();
            assert!(v.passed(), "q = {q}: {v:?}");
            assert!(v.trials.iter().all(|t| t.scalar == Some(1)));
            let bad = perturbed(&phi);
            let v = oracle_resultant_points(&bad, k, 10, &mut stream(2, q, 0, 0)).unwrap();
            assert!(!v.passed(), "q = {q}");
        }
    }

    #[test]
    fn parametrisation_point_one_is_a_root() {
        let phi = expand_phi(3).unwrap();
        let emb = specialization_field(&phi, 11).unwrap();
        let ext = emb.target().clone();
        let alpha = draw_alpha(&ext, 3, &mut stream(3, 3, 0, 0));
        let (x, y) = param_point(&ext, 3, alpha, 1);
        assert_eq!(phi.eval_specialized(&emb, alpha, x, y), 0);
    }
}
