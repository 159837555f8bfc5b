//! Functions `Z_p → Q(ζ_p)`, their exact Fourier transform, and supports.
//!
//! The transform follows the sign convention `f̂(x) = Σ_a f(a)·e_p(ax)` with
//! `e_p(r) = e^{−2πir/p}`; the inverse carries `e_p(−ax)/p`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::residue::{PrimeModulus, ResidueSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZpFunction {
    modulus: PrimeModulus,
    values: Vec<CycNum>,
}

impl ZpFunction {
    pub fn new(modulus: PrimeModulus, values: Vec<CycNum>) -> Result<Self> {
        if values.len() != modulus.get() as usize {
            return Err(Error::precondition(alloc::format!(
                "function on Z_{} needs {} values, got {}",
                modulus,
                modulus.get(),
                values.len()
            )));
        }
        for v in &values {
            modulus.check_same(v.modulus())?;
        }
        Ok(ZpFunction { modulus, values })
    }

    pub fn zero(modulus: PrimeModulus) -> Self {
        ZpFunction { modulus, values: vec![CycNum::zero(modulus); modulus.get() as usize] }
    }

    /// `δ_a`: 1 at `a`, 0 elsewhere.
    pub fn delta(modulus: PrimeModulus, a: u32) -> Self {
        let mut f = Self::zero(modulus);
        f.values[modulus.reduce(i64::from(a)) as usize] = CycNum::one(modulus);
        f
    }

    pub fn constant(modulus: PrimeModulus, c: i64) -> Self {
        ZpFunction { modulus, values: vec![CycNum::from_integer(modulus, c); modulus.get() as usize] }
    }

    pub fn from_integers(modulus: PrimeModulus, values: &[i64]) -> Result<Self> {
        Self::new(modulus, values.iter().map(|&v| CycNum::from_integer(modulus, v)).collect())
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn values(&self) -> &[CycNum] {
        &self.values
    }

    /// `f(a)` for any integer `a`.
    pub fn at(&self, a: i64) -> &CycNum {
        &self.values[self.modulus.reduce(a) as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(CycNum::is_zero)
    }

    /// `{x : f(x) ≠ 0}`, decided exactly.
    pub fn support(&self) -> ResidueSet {
        let mask = self.values.iter().enumerate().filter(|(_, v)| !v.is_zero()).fold(0u64, |m, (i, _)| m | (1 << i));
        ResidueSet::from_mask(self.modulus, mask).expect("support lies in Z_p")
    }

    pub fn checked_add(&self, other: &ZpFunction) -> Result<ZpFunction> {
        self.modulus.check_same(other.modulus)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(ZpFunction { modulus: self.modulus, values })
    }

    pub fn scale(&self, q: &BigRational) -> ZpFunction {
        ZpFunction { modulus: self.modulus, values: self.values.iter().map(|v| v.scale(q)).collect() }
    }

    /// Pointwise multiplication by a field element.
    pub fn mul_scalar(&self, c: &CycNum) -> ZpFunction {
        ZpFunction { modulus: self.modulus, values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn pointwise_mul(&self, other: &ZpFunction) -> Result<ZpFunction> {
        self.modulus.check_same(other.modulus)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(ZpFunction { modulus: self.modulus, values })
    }

    /// `h(x) = Σ_a f(a)·g(x − a)`.
    pub fn convolve(&self, other: &ZpFunction) -> Result<ZpFunction> {
        self.modulus.check_same(other.modulus)?;
        let p = self.modulus.get() as i64;
        let values = (0..p)
            .map(|x| {
                (0..p).fold(CycNum::zero(self.modulus), |acc, a| {
                    let (fa, gb) = (self.at(a), other.at(x - a));
                    if fa.is_zero() || gb.is_zero() {
                        acc
                    } else {
                        &acc + &(fa * gb)
                    }
                })
            })
            .collect();
        Ok(ZpFunction { modulus: self.modulus, values })
    }

    /// `f̂(x) = Σ_a f(a)·e_p(ax)`.
    pub fn dft(&self) -> ZpFunction {
        self.transform(-1, BigInt::one())
    }

    /// `f(a) = (1/p)·Σ_x g(x)·e_p(−ax)`.
    pub fn idft(&self) -> ZpFunction {
        self.transform(1, BigInt::from(self.modulus.get()))
    }

    /// `out(x) = (1/extra_den)·Σ_a f(a)·ζ^{sign·a·x}`.
    ///
    /// Multiplying by a root of unity only permutes coordinates, so every
    /// input is brought to one common denominator and all `p²` terms are
    /// summed in a single integer accumulator per output point.
    fn transform(&self, sign: i64, extra_den: BigInt) -> ZpFunction {
        let m = self.modulus;
        let p = m.get() as usize;
        let den = self.values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.raw().1));
        let scaled: Vec<Option<Vec<BigInt>>> = self
            .values
            .iter()
            .map(|v| {
                if v.is_zero() {
                    return None;
                }
                let (num, d) = v.raw();
                let factor = &den / d;
                Some(num.iter().map(|n| n * &factor).collect())
            })
            .collect();
        let values = (0..p)
            .map(|x| {
                let mut acc = vec![BigInt::zero(); p];
                for (a, nums) in scaled.iter().enumerate() {
                    let Some(nums) = nums else { continue };
                    let shift = m.reduce(sign * (a * x) as i64) as usize;
                    for (i, n) in nums.iter().enumerate() {
                        if !n.is_zero() {
                            acc[(i + shift) % p] += n;
                        }
                    }
                }
                CycNum::from_wide(m, acc, &den * &extra_den)
            })
            .collect();
        ZpFunction { modulus: m, values }
    }
}

/// Outcome of `|supp f| + |supp f̂| ≥ p + 1` on one function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UncertaintyCheck {
    pub lhs: usize,
    pub holds: bool,
}

pub fn uncertainty_check(f: &ZpFunction) -> Result<UncertaintyCheck> {
    f.modulus().require_odd()?;
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let lhs = f.support().len() + f.dft().support().len();
    Ok(UncertaintyCheck { lhs, holds: lhs > f.modulus().get() as usize })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UncertaintyTrials {
    pub p: u32,
    pub seed: u64,
    pub trials: usize,
    pub violations: usize,
    /// Smallest `|supp f| + |supp f̂|` seen; `None` when no trial ran.
    pub min_lhs: Option<usize>,
}

/// Checks the uncertainty inequality on `trials` seeded random nonzero
/// functions with integer values in `[−5, 5]`.
///
/// Each value is zeroed with probability 1/2 before drawing, so sparse
/// supports (the interesting regime) are well represented.
pub fn uncertainty_trials(p: PrimeModulus, trials: usize, seed: u64) -> Result<UncertaintyTrials> {
    p.require_odd()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut min_lhs: Option<usize> = None;
    for _ in 0..trials {
        let f = random_nonzero_function(&mut rng, p, 5);
        let check = uncertainty_check(&f)?;
        if !check.holds {
            violations += 1;
        }
        min_lhs = Some(min_lhs.map_or(check.lhs, |m| m.min(check.lhs)));
    }
    Ok(UncertaintyTrials { p: p.get(), seed, trials, violations, min_lhs })
}

/// Random nonzero integer-valued function with entries in `[−bound, bound]`.
pub fn random_nonzero_function<R: Rng>(rng: &mut R, p: PrimeModulus, bound: i64) -> ZpFunction {
    loop {
        let values: Vec<i64> =
            (0..p.get()).map(|_| if rng.random_bool(0.5) { 0 } else { rng.random_range(-bound..=bound) }).collect();
        if values.iter().any(|&v| v != 0) {
            return ZpFunction::from_integers(p, &values).expect("length p");
        }
    }
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

    /// Textbook evaluation through generic field multiplication.
    fn dft_oracle(f: &ZpFunction) -> ZpFunction {
        let m = f.modulus();
        let p = m.get() as i64;
        let values =
            (0..p).map(|x| (0..p).fold(CycNum::zero(m), |acc, a| &acc + &(f.at(a) * &CycNum::e(m, a * x)))).collect();
        ZpFunction::new(m, values).unwrap()
    }

    #[test]
    fn dft_examples() {
        let p = pm(3);
        assert_eq!(ZpFunction::delta(p, 0).dft(), ZpFunction::constant(p, 1));
        assert_eq!(ZpFunction::constant(p, 1).dft(), ZpFunction::from_integers(p, &[3, 0, 0]).unwrap());
        let f = ZpFunction::from_integers(p, &[1, 1, 0]).unwrap();
        let one = CycNum::one(p);
        let expected = vec![CycNum::from_integer(p, 2), &one + &CycNum::zeta_pow(p, 2), &one + &CycNum::zeta_pow(p, 1)];
        assert_eq!(f.dft(), ZpFunction::new(p, expected).unwrap());
    }

    #[test]
    fn idft_examples() {
        let p5 = pm(5);
        let d = ZpFunction::delta(p5, 0);
        assert_eq!(d.dft().idft(), d);
        for p in [3u64, 5, 7] {
            let m = pm(p);
            let mut spike = vec![0i64; p as usize];
            spike[0] = p as i64;
            assert_eq!(ZpFunction::from_integers(m, &spike).unwrap().idft(), ZpFunction::constant(m, 1));
        }
        let f = ZpFunction::from_integers(pm(7), &[3, -1, 0, 4, 0, 0, -5]).unwrap();
        assert_eq!(f.dft().idft(), f);
    }

    #[test]
    fn support_examples() {
        let p = pm(3);
        assert_eq!(ZpFunction::delta(p, 0).support(), set(3, &[0]));
        assert!(ZpFunction::zero(p).support().is_empty());
        let vanishing = &(&CycNum::one(p) + &CycNum::zeta_pow(p, 1)) + &CycNum::zeta_pow(p, 2);
        let f = ZpFunction::new(p, vec![vanishing, CycNum::one(p), CycNum::zero(p)]).unwrap();
        assert_eq!(f.support(), set(3, &[1]));
    }

    #[test]
    fn uncertainty_examples() {
        let c = uncertainty_check(&ZpFunction::delta(pm(5), 0)).unwrap();
        assert_eq!(c, UncertaintyCheck { lhs: 6, holds: true });
        let c = uncertainty_check(&ZpFunction::from_integers(pm(3), &[1, 1, 0]).unwrap()).unwrap();
        assert_eq!(c, UncertaintyCheck { lhs: 5, holds: true });
        let c = uncertainty_check(&ZpFunction::constant(pm(7), 1)).unwrap();
        assert_eq!(c, UncertaintyCheck { lhs: 8, holds: true });
        assert_eq!(uncertainty_check(&ZpFunction::zero(pm(5))), Err(Error::ZeroFunction));
        assert_eq!(uncertainty_check(&ZpFunction::delta(pm(2), 0)), Err(Error::EvenModulus(2)));
    }

    #[test]
    fn wrong_length_rejected() {
        assert!(ZpFunction::from_integers(pm(5), &[1, 2]).is_err());
        assert!(ZpFunction::new(pm(3), vec![CycNum::one(pm(5)); 3]).is_err());
    }

    #[test]
    fn fast_transform_matches_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [2u64, 3, 5, 7, 11] {
            for _ in 0..20 {
                let f = random_nonzero_function(&mut rng, pm(p), 5);
                let half = BigRational::new(1.into(), 2.into());
                let g = f.mul_scalar(&CycNum::zeta_pow(pm(p), 1)).scale(&half);
                assert_eq!(f.dft(), dft_oracle(&f));
                assert_eq!(g.dft(), dft_oracle(&g));
            }
        }
    }

    #[test]
    fn roundtrip_linearity_and_convolution() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for p in [3u64, 5, 7, 11] {
            let m = pm(p);
            for _ in 0..100 {
                let f = random_nonzero_function(&mut rng, m, 5);
                let g = random_nonzero_function(&mut rng, m, 5);
                assert_eq!(f.dft().idft(), f);
                assert_eq!(f.idft().dft(), f);
                let alpha = BigRational::new(rng.random_range(-4..=4).into(), 3.into());
                let beta = BigRational::from_integer(rng.random_range(-4..=4).into());
                let combo = f.scale(&alpha).checked_add(&g.scale(&beta)).unwrap();
                let lin = f.dft().scale(&alpha).checked_add(&g.dft().scale(&beta)).unwrap();
                assert_eq!(combo.dft(), lin);
                let conv = f.convolve(&g).unwrap();
                assert_eq!(conv.dft(), f.dft().pointwise_mul(&g.dft()).unwrap());
            }
        }
    }

    #[test]
    fn uncertainty_random_trials() {
        for p in [3u64, 5, 7, 11, 13] {
            let t = uncertainty_trials(pm(p), 200, 42).unwrap();
            assert_eq!(t.violations, 0);
            assert!(t.min_lhs.unwrap() > p as usize);
        }
        assert_eq!(uncertainty_trials(pm(5), 0, 1).unwrap().min_lhs, None);
    }
}
