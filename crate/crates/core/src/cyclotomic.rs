//! Exact arithmetic in `Q(ζ_p)`, `ζ_p = e^{2πi/p}`.
//!
//! A number is stored in the power basis `1, ζ, …, ζ^{p−2}`: an integer
//! numerator vector over one positive common denominator, reduced so the
//! gcd of the denominator and every numerator is 1. `Φ_p` is irreducible,
//! so this form is unique and zero testing is a coefficient check.
//!
//! For `p = 2` the basis is `{1}` and `ζ = −1`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::residue::{PrimeModulus, Residue};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    modulus: PrimeModulus,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    pub fn zero(modulus: PrimeModulus) -> Self {
        CycNum { modulus, num: vec![BigInt::zero(); dim(modulus)], den: BigInt::one() }
    }

    pub fn one(modulus: PrimeModulus) -> Self {
        Self::from_integer(modulus, 1)
    }

    pub fn from_integer(modulus: PrimeModulus, n: i64) -> Self {
        let mut out = Self::zero(modulus);
        out.num[0] = BigInt::from(n);
        out
    }

    pub fn from_rational(modulus: PrimeModulus, q: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); dim(modulus)];
        num[0] = q.numer().clone();
        Self::from_parts(modulus, num, q.denom().clone())
    }

    /// Builds a number from its `p − 1` power-basis coordinates.
    pub fn from_coefficients(modulus: PrimeModulus, coeffs: &[BigRational]) -> Result<Self> {
        if coeffs.len() != dim(modulus) {
            return Err(Error::precondition(alloc::format!(
                "expected {} coefficients for p = {}, got {}",
                dim(modulus),
                modulus,
                coeffs.len()
            )));
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(Self::from_parts(modulus, num, den))
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(modulus: PrimeModulus, k: i64) -> Self {
        let p = modulus.get() as usize;
        let mut wide = vec![BigInt::zero(); p];
        wide[modulus.reduce(k) as usize] = BigInt::one();
        Self::from_wide(modulus, wide, BigInt::one())
    }

    /// `e_p(r) = e^{−2πir/p} = ζ^{(p−r) mod p}`.
    pub fn root_power(r: Residue) -> Self {
        Self::zeta_pow(r.modulus(), -i64::from(r.value()))
    }

    /// `e_p(r)` for an integer `r`.
    pub fn e(modulus: PrimeModulus, r: i64) -> Self {
        Self::zeta_pow(modulus, -r)
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    /// Coordinates in the power basis, each in lowest terms.
    pub fn coefficients(&self) -> Vec<BigRational> {
        self.num.iter().map(|n| BigRational::new(n.clone(), self.den.clone())).collect()
    }

    pub fn coefficient(&self, i: usize) -> BigRational {
        BigRational::new(self.num[i].clone(), self.den.clone())
    }

    /// Exact zero test.
    #[inline]
    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// Whether the number lies in `Q`.
    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn checked_add(&self, other: &CycNum) -> Result<CycNum> {
        self.modulus.check_same(other.modulus)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn checked_sub(&self, other: &CycNum) -> Result<CycNum> {
        self.modulus.check_same(other.modulus)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn checked_mul(&self, other: &CycNum) -> Result<CycNum> {
        self.modulus.check_same(other.modulus)?;
        Ok(self.mul_unchecked(other))
    }

    /// Coefficientwise multiplication by a rational.
    pub fn scale(&self, q: &BigRational) -> CycNum {
        if q.is_zero() || self.is_zero() {
            return Self::zero(self.modulus);
        }
        let num = self.num.iter().map(|n| n * q.numer()).collect();
        Self::from_parts(self.modulus, num, &self.den * q.denom())
    }

    pub fn scale_int(&self, k: i64) -> CycNum {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    /// `self · ζ^k`; a cyclic shift followed by one reduction step.
    pub fn mul_zeta_pow(&self, k: i64) -> CycNum {
        let p = self.modulus.get() as usize;
        let shift = self.modulus.reduce(k) as usize;
        let mut wide = vec![BigInt::zero(); p];
        for (i, n) in self.num.iter().enumerate() {
            wide[(i + shift) % p] = n.clone();
        }
        Self::from_wide(self.modulus, wide, self.den.clone())
    }

    /// The Galois automorphism `ζ ↦ ζ^k`, `k` a unit mod `p`.
    pub fn galois(&self, k: u32) -> CycNum {
        let p = self.modulus.get() as usize;
        let mut wide = vec![BigInt::zero(); p];
        for (i, n) in self.num.iter().enumerate() {
            wide[(i * k as usize) % p] = n.clone();
        }
        Self::from_wide(self.modulus, wide, self.den.clone())
    }

    /// Multiplicative inverse through the field norm: `x⁻¹ = Π_{k≠1} σ_k(x) / N(x)`.
    /// Only the linear solver needs it.
    pub(crate) fn inverse(&self) -> Option<CycNum> {
        if self.is_zero() {
            return None;
        }
        let p = self.modulus.get();
        let mut conj = Self::one(self.modulus);
        for k in 2..p {
            conj = conj.mul_unchecked(&self.galois(k));
        }
        let norm = self.mul_unchecked(&conj);
        debug_assert!(norm.is_rational());
        let n = norm.coefficient(0);
        Some(conj.scale(&n.recip()))
    }

    fn add_unchecked(&self, other: &CycNum, subtract: bool) -> CycNum {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if subtract { other.neg_ref() } else { other.clone() };
        }
        if self.den == other.den {
            let num = self.num.iter().zip(&other.num).map(|(a, b)| if subtract { a - b } else { a + b }).collect();
            return Self::from_parts(self.modulus, num, self.den.clone());
        }
        let den = self.den.lcm(&other.den);
        let fa = &den / &self.den;
        let fb = &den / &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| if subtract { a * &fa - b * &fb } else { a * &fa + b * &fb })
            .collect();
        Self::from_parts(self.modulus, num, den)
    }

    fn mul_unchecked(&self, other: &CycNum) -> CycNum {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.modulus);
        }
        let p = self.modulus.get() as usize;
        let mut wide = vec![BigInt::zero(); p];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                wide[(i + j) % p] += a * b;
            }
        }
        Self::from_wide(self.modulus, wide, &self.den * &other.den)
    }

    fn neg_ref(&self) -> CycNum {
        CycNum { modulus: self.modulus, num: self.num.iter().map(|n| -n).collect(), den: self.den.clone() }
    }

    /// Reduces a length-`p` vector modulo `1 + ζ + … + ζ^{p−1}`.
    pub(crate) fn from_wide(modulus: PrimeModulus, mut wide: Vec<BigInt>, den: BigInt) -> Self {
        let top = wide.pop().expect("wide vector has length p");
        if !top.is_zero() {
            for w in wide.iter_mut() {
                *w -= &top;
            }
        }
        Self::from_parts(modulus, wide, den)
    }

    /// Normalizes sign and common factors.
    pub(crate) fn from_parts(modulus: PrimeModulus, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert_eq!(num.len(), dim(modulus));
        assert!(!den.is_zero(), "zero denominator");
        if num.iter().all(Zero::is_zero) {
            return Self::zero(modulus);
        }
        if den.is_negative() {
            den = -den;
            for n in num.iter_mut() {
                *n = -&*n;
            }
        }
        if !den.is_one() {
            let mut g = den.clone();
            for n in &num {
                if g.is_one() {
                    break;
                }
                g = g.gcd(n);
            }
            if !g.is_one() {
                den /= &g;
                for n in num.iter_mut() {
                    *n /= &g;
                }
            }
        }
        CycNum { modulus, num, den }
    }

    /// Numerators over the common denominator, for bulk accumulation.
    pub(crate) fn raw(&self) -> (&[BigInt], &BigInt) {
        (&self.num, &self.den)
    }
}

#[inline]
fn dim(modulus: PrimeModulus) -> usize {
    modulus.get() as usize - 1
}

fn same(a: &CycNum, b: &CycNum) {
    assert_eq!(a.modulus, b.modulus, "cyclotomic operands with different moduli");
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        same(self, rhs);
        self.add_unchecked(rhs, false)
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        same(self, rhs);
        self.add_unchecked(rhs, true)
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        same(self, rhs);
        self.mul_unchecked(rhs)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.neg_ref()
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.neg_ref()
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[p={}]({})", self.modulus, self)
    }
}

/// Polynomial in `ζ`, e.g. `1 - 2/3ζ + ζ^3`.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, q) in self.coefficients().into_iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let mag = q.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let unit = mag.is_one();
            if i == 0 || !unit {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}/{}", mag.numer(), mag.denom())?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "ζ")?,
                _ => write!(f, "ζ^{i}")?,
            }
        }
        Ok(())
    }
}
