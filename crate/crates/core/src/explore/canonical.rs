//! Affine symmetry of configurations.
//!
//! `(u, t, s)` with `u ≠ 0` maps `(A, B, S)` to `(uA+t, uB+s, uS+(t−s))`,
//! and the swap maps it to `(B, A, −S)`. Both preserve `|C|`.

use crate::error::Result;
use crate::residue::{mask, ResidueSet};

/// Lexicographically least image of `(A, B, S)` (compared as the mask
/// triple) under the affine group and the swap.
pub fn canonicalize(a: &ResidueSet, b: &ResidueSet, s: &ResidueSet) -> Result<(ResidueSet, ResidueSet, ResidueSet)> {
    let m = a.modulus();
    m.check_same(b.modulus())?;
    m.check_same(s.modulus())?;
    let (am, bm, sm) = canonical_masks(a.mask(), b.mask(), s.mask(), m.get());
    Ok((ResidueSet::from_mask(m, am)?, ResidueSet::from_mask(m, bm)?, ResidueSet::from_mask(m, sm)?))
}

pub fn canonical_masks(a: u64, b: u64, s: u64, p: u32) -> (u64, u64, u64) {
    let mut best = (u64::MAX, u64::MAX, u64::MAX);
    for (x, y, z) in [(a, b, s), (b, a, mask::negate(s, p))] {
        for u in 1..p {
            let (xu, yu, zu) = (mask::dilate(x, u, p), mask::dilate(y, u, p), mask::dilate(z, u, p));
            for t in 0..p {
                let xa = mask::rotate(xu, t, p);
                if xa > best.0 {
                    continue;
                }
                for sh in 0..p {
                    let cand = (xa, mask::rotate(yu, sh, p), mask::rotate(zu, (t + p - sh) % p, p));
                    if cand < best {
                        best = cand;
                    }
                }
            }
        }
    }
    best
}

/// `A` is the least mask among all `uA + t`.
pub fn is_affine_representative(a: u64, p: u32) -> bool {
    (1..p).all(|u| {
        let d = mask::dilate(a, u, p);
        (0..p).all(|t| mask::rotate(d, t, p) >= a)
    })
}

/// `B` is the least mask among its translates.
pub fn is_translation_representative(b: u64, p: u32) -> bool {
    (1..p).all(|t| mask::rotate(b, t, p) >= b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::PrimeModulus;

    fn set(p: u64, xs: &[u32]) -> ResidueSet {
        ResidueSet::from_values(PrimeModulus::new(p).unwrap(), xs.iter().copied()).unwrap()
    }

    #[test]
    fn examples() {
        let c = canonicalize(&set(5, &[1, 2, 3]), &set(5, &[1, 2, 3]), &set(5, &[0])).unwrap();
        assert_eq!(c, (set(5, &[0, 1, 2]), set(5, &[0, 1, 2]), set(5, &[0])));
        let c = canonicalize(&set(5, &[0, 2, 4]), &set(5, &[0, 2, 4]), &set(5, &[0])).unwrap();
        assert_eq!(c, (set(5, &[0, 1, 2]), set(5, &[0, 1, 2]), set(5, &[0])));
    }

    #[test]
    fn idempotent_and_size_preserving_p5() {
        let p = 5u32;
        let full = mask::full(p);
        for a in 0..=full {
            for b in (0..=full).step_by(3) {
                for s in (0..=full).step_by(5) {
                    let (ca, cb, cs) = canonical_masks(a, b, s, p);
                    assert_eq!(canonical_masks(ca, cb, cs, p), (ca, cb, cs));
                    assert!((ca, cb, cs) <= (a, b, s));
                    assert_eq!(
                        mask::restricted_sumset(ca, cb, cs, p).count_ones(),
                        mask::restricted_sumset(a, b, s, p).count_ones()
                    );
                }
            }
        }
    }

    #[test]
    fn representatives() {
        assert!(is_affine_representative(0b00111, 5));
        assert!(!is_affine_representative(0b10101, 5));
        assert!(is_translation_representative(0b0011, 5));
        assert!(!is_translation_representative(0b0110, 5));
        // Every 2-subset of Z_5 is affinely equivalent to {0, 1}.
        let reps: Vec<u64> = mask::subsets_of_size(5, 2).filter(|&a| is_affine_representative(a, 5)).collect();
        assert_eq!(reps, vec![0b11]);
    }
}
