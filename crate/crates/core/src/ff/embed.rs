use super::{fp_poly, FieldElement, FieldSpec};
use crate::error::{Error, Result};

/// Ring homomorphism F_{p^e} -> F_{p^{ek}} fixed by the image of `x`.
pub struct Embedding {
    source: FieldSpec,
    target: FieldSpec,
    root: u32,
    /// Images of `root^i`, `i < e`.
    powers: Vec<u32>,
    /// Full image table for small sources.
    table: Option<Vec<u32>>,
}

const TABLE_LIMIT: u32 = 1 << 16;

impl Embedding {
    pub(super) fn find(source: &FieldSpec, target: &FieldSpec) -> Result<Embedding> {
        let (p, e, te) = (source.characteristic(), source.degree(), target.degree());
        if target.characteristic() != p || te % e != 0 {
            return Err(Error::NoEmbedding { p, from: e, to: te });
        }
        let modulus = source.modulus();
        let eval = |y: u32| {
            modulus
                .iter()
                .rev()
                .fold(0u32, |acc, &c| target.add(target.mul(acc, y), c))
        };
        let root = if e == 1 {
            0
        } else {
            // The nonzero elements of the copy of F_q are the powers of
            // g^((Q-1)/(q-1)).
            let big = target.order() as u64 - 1;
            let small = source.order() as u64 - 1;
            let h = target
                .pow(target.generator(), (big / small) as i64)
                .expect("generator is nonzero");
            let mut y = 1u32;
            let mut found = None;
            for _ in 0..small {
                if eval(y) == 0 {
                    found = Some(y);
                    break;
                }
                y = target.mul(y, h);
            }
            found.ok_or(Error::NoEmbedding { p, from: e, to: te })?
        };
        let mut powers = Vec::with_capacity(e as usize);
        let mut acc = 1u32;
        for _ in 0..e {
            powers.push(acc);
            acc = target.mul(acc, root);
        }
        let mut emb = Embedding {
            source: source.clone(),
            target: target.clone(),
            root,
            powers,
            table: None,
        };
        if source.order() <= TABLE_LIMIT {
            emb.table = Some((0..source.order()).map(|v| emb.map_slow(v)).collect());
        }
        Ok(emb)
    }

    fn map_slow(&self, v: u32) -> u32 {
        let p = self.source.characteristic();
        let digits = fp_poly::unpack(v, p, self.source.degree());
        digits
            .iter()
            .zip(&self.powers)
            .fold(0u32, |acc, (&c, &rp)| {
                // c lies in the prime field, which is 0..p in every packing
                self.target.add(acc, self.target.mul(c, rp))
            })
    }

    /// Image of a raw source element.
    #[inline]
    pub fn map(&self, v: u32) -> u32 {
        match &self.table {
            Some(t) => t[v as usize],
            None => self.map_slow(v),
        }
    }

    pub fn map_element(&self, a: &FieldElement) -> Result<FieldElement> {
        self.source.check_same(a.field())?;
        FieldElement::from_raw(&self.target, self.map(a.raw()))
    }

    pub fn source(&self) -> &FieldSpec {
        &self.source
    }

    pub fn target(&self) -> &FieldSpec {
        &self.target
    }

    /// Image of the generating class of the source.
    pub fn root(&self) -> u32 {
        self.root
    }
}

#[cfg(test)]
mod tests {
    use crate::ff::make_field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for (p, e, k) in [
            (2u64, 2u32, 5u32),
            (3, 2, 3),
            (2, 3, 4),
            (5, 1, 4),
            (3, 3, 2),
        ] {
            let small = make_field(p, e).unwrap();
            let big = small.extension(k).unwrap();
            let emb = small.embedding_into(&big).unwrap();
            assert_eq!(emb.map(0), 0);
            assert_eq!(emb.map(1), 1);
            for _ in 0..300 {
                let a = small.random_raw(&mut rng, false);
                let b = small.random_raw(&mut rng, false);
                assert_eq!(emb.map(small.add(a, b)), big.add(emb.map(a), emb.map(b)));
                assert_eq!(emb.map(small.mul(a, b)), big.mul(emb.map(a), emb.map(b)));
            }
        }
    }

    #[test]
    fn embedding_rejects_non_subfields() {
        let f4 = make_field(2, 2).unwrap();
        let f8 = make_field(2, 3).unwrap();
        assert!(f4.embedding_into(&f8).is_err());
        let f9 = make_field(3, 2).unwrap();
        assert!(f4.embedding_into(&f9).is_err());
    }

    #[test]
    fn embedding_is_cached() {
        let f4 = make_field(2, 2).unwrap();
        let f16 = f4.extension(2).unwrap();
        let a = f4.embedding_into(&f16).unwrap();
        let b = f4.embedding_into(&f16).unwrap();
        assert!(std::sync::Arc::ptr_eq(&a, &b));
    }
}
