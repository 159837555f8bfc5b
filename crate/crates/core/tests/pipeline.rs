//! End-to-end properties across the field, transform, witness and trace
//! layers.

use proptest::prelude::*;
use sumset_core::fourier::random_nonzero_function;
use sumset_core::proof::{theorem2_statement_check, trace_theorem2, Branch};
use sumset_core::witness::{construct_witness, solve_support_system, verify_witness};
use sumset_core::{CycNum, Error, PrimeModulus, ResidueSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn set(p: u64, m: u64) -> ResidueSet {
    ResidueSet::from_mask(PrimeModulus::new(p).unwrap(), m).unwrap()
}

fn triple(p: u64) -> impl Strategy<Value = (ResidueSet, ResidueSet, ResidueSet)> {
    let full = (1u64 << p) - 1;
    (1..=full, 1..=full, 0..=full).prop_map(move |(a, b, s)| (set(p, a), set(p, b), set(p, s)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn trace_agrees_with_statement((a, b, s) in triple(7), seed in any::<u64>()) {
        prop_assume!(a.len().min(b.len()) >= 2 && a.len() + b.len() > 2 * s.len() + 1);
        let p = a.modulus();
        let r = trace_theorem2(p, &a, &b, &s, seed).unwrap();
        let st = theorem2_statement_check(&a, &b, &s).unwrap();
        prop_assert!(st.holds);
        prop_assert_eq!(r.derived_bound, st.bound);
        prop_assert_eq!(&r.actual_c, &st.c);
        prop_assert!(r.big_f.support().is_subset(&r.actual_c));
        prop_assert_eq!(r.context.swapped, a.len() > b.len());
        if r.branch == Branch::Counting {
            let hat = r.big_f_hat.support().len() as u32;
            prop_assert!(hat <= p.get() + 1 - r.derived_bound);
            prop_assert!(r.big_f.support().len() as u32 + hat > p.get());
        }
    }

    #[test]
    fn witnesses_at_p11((a, b) in (1..=0x7ffu64, 1..=0x7ffu64), seed in any::<u64>()) {
        let (a, b) = (set(11, a), set(11, b));
        prop_assume!(a.len() + b.len() >= 12);
        let f = construct_witness(a.modulus(), &a, &b, seed).unwrap();
        prop_assert!(verify_witness(&f, &a, &b));
        prop_assert_eq!(&f, &construct_witness(a.modulus(), &a, &b, seed).unwrap());
    }
}

#[test]
fn nullspace_dimension_is_size_surplus() {
    let p = PrimeModulus::new(11).unwrap();
    for (a, b) in [("0,1,2,3,4,5", "0,1,2,3,4,5"), ("0,2,4,6,8,10", "1,3,5,7,9,10"), ("0,1,2,3,4,5,6,7,8", "3,4,5")] {
        let a = ResidueSet::parse(p, a).unwrap();
        let b = ResidueSet::parse(p, b).unwrap();
        let sys = solve_support_system(p, &a, &b).unwrap();
        assert_eq!(sys.dimension(), a.len() + b.len() - 11);
        for v in &sys.nullspace_basis {
            assert!(v.support().is_subset(&a));
            assert!(v.dft().support().is_subset(&b));
        }
    }
}

#[test]
fn undersized_pairs_are_rejected() {
    let p = PrimeModulus::new(7).unwrap();
    let a = ResidueSet::parse(p, "0,1,2").unwrap();
    let b = ResidueSet::parse(p, "0,1,2,3").unwrap();
    assert!(matches!(construct_witness(p, &a, &b, 1), Err(Error::Precondition(_))));
}

#[test]
fn transforms_stay_in_the_field() {
    let p = PrimeModulus::new(13).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..20 {
        let f = random_nonzero_function(&mut rng, p, 9);
        let fh = f.dft();
        // Parseval: sum |f|^2 times p equals sum |f^|^2, conjugation is x -> -x.
        let energy = |h: &sumset_core::ZpFunction| {
            h.values().iter().fold(CycNum::zero(p), |acc, v| &acc + &(v * &v.galois(p.get() - 1)))
        };
        assert_eq!(energy(&f).scale_int(13), energy(&fh));
        assert_eq!(fh.idft(), f);
    }
}
