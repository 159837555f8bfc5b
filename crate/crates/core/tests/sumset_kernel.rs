//! Bitmask kernel against a direct pair loop, and basic invariants of the
//! restricted sumset.

use proptest::prelude::*;
use sumset_core::residue::bound_table;
use sumset_core::residue::mask;
use sumset_core::{PrimeModulus, Residue, ResidueSet};

fn oracle(a: u64, b: u64, s: u64, p: u32) -> u64 {
    let mut c = 0;
    for x in 0..p {
        for y in 0..p {
            if a >> x & 1 == 1 && b >> y & 1 == 1 && s >> ((x + p - y) % p) & 1 == 0 {
                c |= 1 << ((x + y) % p);
            }
        }
    }
    c
}

fn masks(p: u32) -> impl Strategy<Value = (u64, u64, u64)> {
    let full = mask::full(p);
    (0..=full, 0..=full, 0..=full)
}

macro_rules! kernel_matches_oracle {
    ($name:ident, $p:expr) => {
        proptest! {
            #![proptest_config(ProptestConfig::with_cases(10_000))]
            #[test]
            fn $name((a, b, s) in masks($p)) {
                prop_assert_eq!(mask::restricted_sumset(a, b, s, $p), oracle(a, b, s, $p));
            }
        }
    };
}

kernel_matches_oracle!(kernel_p3, 3);
kernel_matches_oracle!(kernel_p5, 5);
kernel_matches_oracle!(kernel_p7, 7);
kernel_matches_oracle!(kernel_p11, 11);
kernel_matches_oracle!(kernel_p13, 13);

proptest! {
    #[test]
    fn large_prime_kernel((a, b, s) in masks(61)) {
        prop_assert_eq!(mask::restricted_sumset(a, b, s, 61), oracle(a, b, s, 61));
    }

    #[test]
    fn excluding_more_never_grows(((a, b, s), t) in (masks(13), 0..=mask::full(13))) {
        let small = mask::restricted_sumset(a, b, s | t, 13);
        let big = mask::restricted_sumset(a, b, s, 13);
        prop_assert_eq!(small & !big, 0);
        prop_assert_eq!(big & !mask::sumset(a, b, 13), 0);
    }

    #[test]
    fn affine_equivariance((a, b, s) in masks(11), u in 1u32..11, t in 0u32..11, r in 0u32..11) {
        let p = PrimeModulus::new(11).unwrap();
        let set = |m| ResidueSet::from_mask(p, m).unwrap();
        let (a, b, s) = (set(a), set(b), set(s));
        let c = a.restricted_sumset(&b, &s).unwrap();
        let unit = Residue::new(u as u64, p).unwrap();
        let res = |x: u32| Residue::new(x as u64, p).unwrap();
        let shift = res((t + 11 - r) % 11);
        let mapped = a.affine_image(unit, res(t)).unwrap()
            .restricted_sumset(&b.affine_image(unit, res(r)).unwrap(), &s.affine_image(unit, shift).unwrap())
            .unwrap();
        prop_assert_eq!(mapped, c.affine_image(unit, res((t + r) % 11)).unwrap());
        prop_assert_eq!(b.restricted_sumset(&a, &s.negate()).unwrap(), c);
    }

    #[test]
    fn sizes_respect_bound((a, b, s) in masks(13)) {
        let p = PrimeModulus::new(13).unwrap();
        let set = |m| ResidueSet::from_mask(p, m).unwrap();
        let (a, b, s) = (set(a), set(b), set(s));
        prop_assume!(!a.is_empty() && !b.is_empty());
        let c = a.restricted_sumset(&b, &s).unwrap();
        let bounds = bound_table(p, a.len(), b.len(), s.len()).unwrap();
        prop_assert!(c.len() as u64 >= bounds.thm2 as u64);
    }
}
