//! Functions with prescribed support and prescribed Fourier support.
//!
//! For `|A| + |B| ≥ p + 1` there is an `f` with `supp f = A` and
//! `supp f̂ = B`. The vanishing conditions `f(x) = 0 (x ∉ A)` and
//! `f̂(y) = 0 (y ∉ B)` are linear, so their nullspace contains every
//! candidate; a generic element of it has the full supports. We draw seeded
//! integer combinations of a nullspace basis and keep the first one whose
//! supports verify exactly.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::fourier::ZpFunction;
use crate::linalg;
use crate::residue::{PrimeModulus, ResidueSet};

/// Random combinations tried before the deterministic sweep.
pub const DEFAULT_RETRY_CAP: usize = 64;

/// Upper limit on tuples visited by the deterministic sweep.
const FALLBACK_LIMIT: usize = 100_000;

#[derive(Debug, Clone)]
pub struct SupportSystem {
    pub modulus: PrimeModulus,
    pub a: ResidueSet,
    pub b: ResidueSet,
    /// `(p−|A|) + (p−|B|)` rows of length `p`: unit rows for `x ∉ A`, then
    /// Fourier rows `(e_p(ay))_a` for `y ∉ B`.
    pub constraint_matrix: Vec<Vec<CycNum>>,
    pub nullspace_basis: Vec<ZpFunction>,
}

impl SupportSystem {
    pub fn dimension(&self) -> usize {
        self.nullspace_basis.len()
    }
}

fn check_sizes(p: PrimeModulus, a: &ResidueSet, b: &ResidueSet) -> Result<()> {
    p.require_odd()?;
    p.check_same(a.modulus())?;
    p.check_same(b.modulus())?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::precondition("A and B must be nonempty"));
    }
    if a.len() + b.len() < p.get() as usize + 1 {
        return Err(Error::precondition(format!("|A| + |B| = {} is below p + 1 = {}", a.len() + b.len(), p.get() + 1)));
    }
    Ok(())
}

pub fn solve_support_system(p: PrimeModulus, a: &ResidueSet, b: &ResidueSet) -> Result<SupportSystem> {
    check_sizes(p, a, b)?;
    let n = p.get() as usize;
    let mut rows = Vec::with_capacity(2 * n - a.len() - b.len());
    for x in a.complement().iter() {
        let mut row = alloc::vec![CycNum::zero(p); n];
        row[x as usize] = CycNum::one(p);
        rows.push(row);
    }
    for y in b.complement().iter() {
        rows.push((0..n as i64).map(|col| CycNum::e(p, col * i64::from(y))).collect());
    }
    let nullspace_basis =
        linalg::nullspace(p, rows.clone(), n).into_iter().map(|v| ZpFunction::new(p, v)).collect::<Result<Vec<_>>>()?;
    Ok(SupportSystem { modulus: p, a: *a, b: *b, constraint_matrix: rows, nullspace_basis })
}

fn combine(basis: &[ZpFunction], coeffs: &[i64]) -> ZpFunction {
    let p = basis[0].modulus();
    basis.iter().zip(coeffs).fold(ZpFunction::zero(p), |acc, (v, &c)| {
        acc.checked_add(&v.scale(&BigRational::from_integer(BigInt::from(c)))).expect("same modulus")
    })
}

/// A function with `supp f = A` and `supp f̂ = B`, deterministic in `seed`.
pub fn construct_witness(p: PrimeModulus, a: &ResidueSet, b: &ResidueSet, seed: u64) -> Result<ZpFunction> {
    construct_witness_with(p, a, b, seed, DEFAULT_RETRY_CAP)
}

pub fn construct_witness_with(
    p: PrimeModulus,
    a: &ResidueSet,
    b: &ResidueSet,
    seed: u64,
    retry_cap: usize,
) -> Result<ZpFunction> {
    let system = solve_support_system(p, a, b)?;
    witness_from_system(&system, seed, retry_cap)
}

pub fn witness_from_system(system: &SupportSystem, seed: u64, retry_cap: usize) -> Result<ZpFunction> {
    let basis = &system.nullspace_basis;
    let dim = basis.len();
    let dump = || format!("p = {}, A = {}, B = {}, nullspace dimension {}", system.modulus, system.a, system.b, dim);
    if dim == 0 {
        return Err(Error::WitnessExhausted { attempts: 0, system: dump() });
    }
    let accept = |f: &ZpFunction| verify_witness(f, &system.a, &system.b);

    let hi = (system.modulus.get() as usize * dim) as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..retry_cap {
        let coeffs: Vec<i64> = (0..dim).map(|_| rng.random_range(1..=hi)).collect();
        let f = combine(basis, &coeffs);
        if accept(&f) {
            return Ok(f);
        }
    }

    // Lexicographic sweep over {1..=hi}^dim.
    let mut coeffs = alloc::vec![1i64; dim];
    for _ in 0..FALLBACK_LIMIT {
        let f = combine(basis, &coeffs);
        if accept(&f) {
            return Ok(f);
        }
        let mut i = dim;
        loop {
            if i == 0 {
                return Err(Error::WitnessExhausted { attempts: retry_cap, system: dump() });
            }
            i -= 1;
            if coeffs[i] < hi {
                coeffs[i] += 1;
                coeffs[i + 1..].iter_mut().for_each(|c| *c = 1);
                break;
            }
        }
    }
    Err(Error::WitnessExhausted { attempts: retry_cap + FALLBACK_LIMIT, system: dump() })
}

/// `supp f = A` and `supp f̂ = B`, both exact.
pub fn verify_witness(f: &ZpFunction, a: &ResidueSet, b: &ResidueSet) -> bool {
    f.modulus() == a.modulus() && f.modulus() == b.modulus() && f.support() == *a && f.dft().support() == *b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn set(p: u64, xs: &[u32]) -> ResidueSet {
        ResidueSet::from_values(pm(p), xs.iter().copied()).unwrap()
    }

    #[test]
    fn system_examples() {
        let p = pm(3);
        let sys = solve_support_system(p, &set(3, &[0]), &set(3, &[0, 1, 2])).unwrap();
        assert_eq!(sys.nullspace_basis, vec![ZpFunction::delta(p, 0)]);
        assert_eq!(sys.constraint_matrix.len(), 2);

        let sys = solve_support_system(p, &set(3, &[0, 1, 2]), &set(3, &[0])).unwrap();
        assert_eq!(sys.nullspace_basis, vec![ZpFunction::constant(p, 1)]);

        let sys = solve_support_system(p, &set(3, &[0, 1]), &set(3, &[0, 1])).unwrap();
        let expected = ZpFunction::new(p, vec![-CycNum::zeta_pow(p, 1), CycNum::one(p), CycNum::zero(p)]).unwrap();
        assert_eq!(sys.nullspace_basis, vec![expected]);
    }

    #[test]
    fn witness_examples() {
        let p = pm(3);
        let full = ResidueSet::full(p);
        let f = construct_witness(p, &full, &set(3, &[0]), 1).unwrap();
        assert!(f.values().iter().all(|v| v == &f.values()[0] && v.is_rational() && !v.is_zero()));

        let f = construct_witness(p, &set(3, &[0]), &full, 1).unwrap();
        assert_eq!(f.support(), set(3, &[0]));

        let f = construct_witness(p, &set(3, &[0, 1]), &set(3, &[0, 1]), 1).unwrap();
        let solved = ZpFunction::new(p, vec![-CycNum::zeta_pow(p, 1), CycNum::one(p), CycNum::zero(p)]).unwrap();
        // Dimension one: the witness is a rational multiple of (−ζ, 1, 0).
        let c = f.values()[1].coefficient(0);
        assert_eq!(f, solved.scale(&c));
        let one = CycNum::one(p);
        let z = CycNum::zeta_pow(p, 1);
        let hat = vec![&one - &z, &CycNum::zeta_pow(p, 2) - &z, CycNum::zero(p)];
        assert_eq!(solved.dft(), ZpFunction::new(p, hat).unwrap());
    }

    #[test]
    fn verify_examples() {
        let p5 = pm(5);
        assert!(verify_witness(&ZpFunction::delta(p5, 0), &set(5, &[0]), &ResidueSet::full(p5)));
        assert!(!verify_witness(&ZpFunction::delta(p5, 0), &set(5, &[0]), &set(5, &[0])));
        assert!(verify_witness(&ZpFunction::constant(p5, 1), &ResidueSet::full(p5), &set(5, &[0])));
    }

    #[test]
    fn preconditions() {
        let p = pm(5);
        assert!(matches!(solve_support_system(p, &set(5, &[0, 1]), &set(5, &[0, 1, 2])), Err(Error::Precondition(_))));
        assert!(matches!(
            solve_support_system(p, &ResidueSet::empty(p), &ResidueSet::full(p)),
            Err(Error::Precondition(_))
        ));
        let p2 = pm(2);
        assert_eq!(
            solve_support_system(p2, &ResidueSet::full(p2), &ResidueSet::full(p2)).unwrap_err(),
            Error::EvenModulus(2)
        );
    }

    #[test]
    fn exhaustive_small_primes() {
        for p in [3u64, 5, 7] {
            let m = pm(p);
            let full = m.full_mask();
            for am in 1..=full {
                for bm in 1..=full {
                    if am.count_ones() + bm.count_ones() < p as u32 + 1 {
                        continue;
                    }
                    let a = ResidueSet::from_mask(m, am).unwrap();
                    let b = ResidueSet::from_mask(m, bm).unwrap();
                    let sys = solve_support_system(m, &a, &b).unwrap();
                    assert!(sys.dimension() >= a.len() + b.len() - p as usize);
                    for v in &sys.nullspace_basis {
                        assert!(v.support().is_subset(&a));
                        assert!(v.dft().support().is_subset(&b));
                    }
                    let f = witness_from_system(&sys, 9, DEFAULT_RETRY_CAP).unwrap();
                    assert!(verify_witness(&f, &a, &b));
                }
            }
        }
    }

    #[test]
    fn seeded_determinism() {
        let p = pm(7);
        let a = set(7, &[0, 2, 3, 5, 6]);
        let b = set(7, &[1, 2, 4, 6]);
        let f1 = construct_witness(p, &a, &b, 17).unwrap();
        let f2 = construct_witness(p, &a, &b, 17).unwrap();
        assert_eq!(f1, f2);
    }

    #[test]
    fn fallback_sweep_without_random_draws() {
        let p = pm(7);
        let a = set(7, &[0, 1, 3, 4, 6]);
        let b = set(7, &[0, 2, 3, 5]);
        let f = construct_witness_with(p, &a, &b, 0, 0).unwrap();
        assert!(verify_witness(&f, &a, &b));
    }
}
