//! Residues modulo a small prime, residue sets as bitmasks, sumsets, and the
//! closed-form lower bounds on their sizes.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Widest prime a `u64` mask can hold.
pub const MAX_SET_PRIME: u32 = 61;

/// Default ceiling for anything that computes in `Q(ζ_p)`.
pub const DEFAULT_FIELD_CEILING: u32 = 31;

/// A prime `p` with `2 ≤ p ≤ 61`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u32);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        Self::with_ceiling(p, MAX_SET_PRIME)
    }

    /// Like [`PrimeModulus::new`] but with a lower ceiling. Ceilings above
    /// [`MAX_SET_PRIME`] are clamped to it.
    pub fn with_ceiling(p: u64, ceiling: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let ceiling = ceiling.min(MAX_SET_PRIME);
        if p > u64::from(ceiling) {
            return Err(Error::PrimeTooLarge { p, ceiling: u64::from(ceiling) });
        }
        Ok(PrimeModulus(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_odd(self) -> bool {
        self.0 != 2
    }

    /// Mask with the low `p` bits set.
    #[inline]
    pub fn full_mask(self) -> u64 {
        mask::full(self.0)
    }

    /// Canonical representative of an arbitrary integer.
    #[inline]
    pub fn reduce(self, r: i64) -> u32 {
        r.rem_euclid(i64::from(self.0)) as u32
    }

    pub(crate) fn check_same(self, other: PrimeModulus) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ModulusMismatch { left: self.0, right: other.0 })
        }
    }

    /// Errors unless `p` is odd.
    pub fn require_odd(self) -> Result<()> {
        if self.is_odd() {
            Ok(())
        } else {
            Err(Error::EvenModulus(self.0))
        }
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `Z_p` in canonical form `0 ≤ value < p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u32,
    modulus: PrimeModulus,
}

#[allow(clippy::should_implement_trait)]
impl Residue {
    pub fn new(value: u64, modulus: PrimeModulus) -> Result<Self> {
        if value >= u64::from(modulus.get()) {
            return Err(Error::ResidueOutOfRange { value, p: modulus.get() });
        }
        Ok(Residue { value: value as u32, modulus })
    }

    /// The class `r + pZ`.
    pub fn from_int(r: i64, modulus: PrimeModulus) -> Self {
        Residue { value: modulus.reduce(r), modulus }
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn add(self, other: Residue) -> Result<Residue> {
        self.modulus.check_same(other.modulus)?;
        Ok(Residue::from_int(i64::from(self.value) + i64::from(other.value), self.modulus))
    }

    pub fn sub(self, other: Residue) -> Result<Residue> {
        self.modulus.check_same(other.modulus)?;
        Ok(Residue::from_int(i64::from(self.value) - i64::from(other.value), self.modulus))
    }

    pub fn mul(self, other: Residue) -> Result<Residue> {
        self.modulus.check_same(other.modulus)?;
        Ok(Residue::from_int(i64::from(self.value) * i64::from(other.value), self.modulus))
    }

    pub fn neg(self) -> Residue {
        Residue::from_int(-i64::from(self.value), self.modulus)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(self) -> Option<Residue> {
        if self.value == 0 {
            return None;
        }
        Some(Residue { value: mask::inverse(self.value, self.modulus.get()), modulus: self.modulus })
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Raw mask kernels. Bit `i` stands for the residue `i`; callers guarantee
/// that bits at positions `≥ p` are clear.
pub mod mask {
    #[inline]
    pub fn full(p: u32) -> u64 {
        (1u64 << p) - 1
    }

    /// `{x + k : x ∈ m}` for `0 ≤ k < p`.
    #[inline]
    pub fn rotate(m: u64, k: u32, p: u32) -> u64 {
        if k == 0 {
            m
        } else {
            ((m << k) | (m >> (p - k))) & full(p)
        }
    }

    /// `{−x : x ∈ m}`.
    #[inline]
    pub fn negate(m: u64, p: u32) -> u64 {
        // x ↦ p − x on the nonzero part is a bit reversal of bits 1..p−1.
        let zero = m & 1;
        let rest = m >> 1;
        let rev = rest.reverse_bits() >> (64 - (p - 1));
        ((rev << 1) | zero) & full(p)
    }

    /// `{u·x : x ∈ m}`.
    pub fn dilate(m: u64, u: u32, p: u32) -> u64 {
        let mut out = 0u64;
        let mut rest = m;
        while rest != 0 {
            let x = rest.trailing_zeros();
            rest &= rest - 1;
            out |= 1u64 << ((u64::from(x) * u64::from(u)) % u64::from(p));
        }
        out
    }

    /// `{u·x + t : x ∈ m}`.
    #[inline]
    pub fn affine(m: u64, u: u32, t: u32, p: u32) -> u64 {
        rotate(dilate(m, u, p), t, p)
    }

    #[inline]
    pub fn sumset(a: u64, b: u64, p: u32) -> u64 {
        let mut out = 0u64;
        let mut rest = a;
        while rest != 0 {
            let x = rest.trailing_zeros();
            rest &= rest - 1;
            out |= rotate(b, x, p);
        }
        out
    }

    /// `{a + b : a ∈ A, b ∈ B, a − b ∉ S}`, given `neg_s = −S`.
    ///
    /// For fixed `a` the admissible `b` are `B \ (a − S)`, and `a − S` is
    /// `−S` rotated by `a`.
    #[inline]
    pub fn restricted_sumset_neg(a: u64, b: u64, neg_s: u64, p: u32) -> u64 {
        let mut out = 0u64;
        let mut rest = a;
        while rest != 0 {
            let x = rest.trailing_zeros();
            rest &= rest - 1;
            let allowed = b & !rotate(neg_s, x, p);
            out |= rotate(allowed, x, p);
        }
        out
    }

    #[inline]
    pub fn restricted_sumset(a: u64, b: u64, s: u64, p: u32) -> u64 {
        restricted_sumset_neg(a, b, negate(s, p), p)
    }

    /// Inverse of a nonzero `x` modulo prime `p`.
    pub fn inverse(x: u32, p: u32) -> u32 {
        let (mut r0, mut r1) = (i64::from(p), i64::from(x % p));
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        t0.rem_euclid(i64::from(p)) as u32
    }

    /// Next mask with the same popcount (Gosper's hack); `None` past `limit`.
    #[inline]
    pub fn next_same_popcount(m: u64, limit: u64) -> Option<u64> {
        if m == 0 {
            return None;
        }
        let c = m & m.wrapping_neg();
        let r = m.checked_add(c)?;
        let next = (((r ^ m) >> 2) / c) | r;
        (next <= limit).then_some(next)
    }

    /// All `k`-subsets of `{0..p−1}` in increasing mask order.
    pub fn subsets_of_size(p: u32, k: u32) -> impl Iterator<Item = u64> {
        let limit = full(p);
        let first = if k > p { None } else { Some(full(k)) };
        let mut cur = first;
        core::iter::from_fn(move || {
            let out = cur?;
            cur = if out == 0 { None } else { next_same_popcount(out, limit) };
            Some(out)
        })
    }
}

/// A subset of `Z_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueSet {
    modulus: PrimeModulus,
    mask: u64,
}

impl ResidueSet {
    pub fn empty(modulus: PrimeModulus) -> Self {
        ResidueSet { modulus, mask: 0 }
    }

    pub fn full(modulus: PrimeModulus) -> Self {
        ResidueSet { modulus, mask: modulus.full_mask() }
    }

    pub fn from_mask(modulus: PrimeModulus, mask: u64) -> Result<Self> {
        if mask & !modulus.full_mask() != 0 {
            let value = 63 - u64::from(mask.leading_zeros());
            return Err(Error::ResidueOutOfRange { value, p: modulus.get() });
        }
        Ok(ResidueSet { modulus, mask })
    }

    /// Builds a set from canonical residues; duplicates are an error.
    pub fn from_values<I>(modulus: PrimeModulus, values: I) -> Result<Self>
    where
        I: IntoIterator<Item = u32>,
    {
        let mut mask = 0u64;
        for v in values {
            if v >= modulus.get() {
                return Err(Error::ResidueOutOfRange { value: u64::from(v), p: modulus.get() });
            }
            if mask & (1 << v) != 0 {
                return Err(Error::DuplicateResidue(v));
            }
            mask |= 1 << v;
        }
        Ok(ResidueSet { modulus, mask })
    }

    /// Parses `"0,1,2"`. The empty string (or only whitespace) is `∅`.
    pub fn parse(modulus: PrimeModulus, literal: &str) -> Result<Self> {
        let trimmed = literal.trim();
        if trimmed.is_empty() {
            return Ok(Self::empty(modulus));
        }
        let mut values = Vec::new();
        for tok in trimmed.split(',') {
            let tok = tok.trim();
            let v: u64 =
                tok.parse().map_err(|_| Error::SetLiteral(alloc::format!("`{tok}` is not a nonnegative integer")))?;
            if v >= u64::from(modulus.get()) {
                return Err(Error::ResidueOutOfRange { value: v, p: modulus.get() });
            }
            values.push(v as u32);
        }
        Self::from_values(modulus, values)
    }

    /// `{start, start+1, …, start+len−1}` taken mod `p`.
    pub fn interval(modulus: PrimeModulus, start: i64, len: usize) -> Result<Self> {
        if len > modulus.get() as usize {
            return Err(Error::SizeOutOfRange { size: len, p: modulus.get() });
        }
        let mut mask = 0u64;
        for i in 0..len as i64 {
            mask |= 1 << modulus.reduce(start + i);
        }
        Ok(ResidueSet { modulus, mask })
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        self.mask
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        x < 64 && self.mask & (1 << x) != 0
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        let mut rest = self.mask;
        core::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let x = rest.trailing_zeros();
            rest &= rest - 1;
            Some(x)
        })
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ResidueSet) -> bool {
        self.mask & !other.mask == 0
    }

    fn with_mask(&self, mask: u64) -> Self {
        ResidueSet { modulus: self.modulus, mask }
    }

    pub fn union(&self, other: &ResidueSet) -> Result<Self> {
        self.modulus.check_same(other.modulus)?;
        Ok(self.with_mask(self.mask | other.mask))
    }

    pub fn intersection(&self, other: &ResidueSet) -> Result<Self> {
        self.modulus.check_same(other.modulus)?;
        Ok(self.with_mask(self.mask & other.mask))
    }

    pub fn difference(&self, other: &ResidueSet) -> Result<Self> {
        self.modulus.check_same(other.modulus)?;
        Ok(self.with_mask(self.mask & !other.mask))
    }

    pub fn complement(&self) -> Self {
        self.with_mask(!self.mask & self.modulus.full_mask())
    }

    pub fn negate(&self) -> Self {
        self.with_mask(mask::negate(self.mask, self.modulus.get()))
    }

    pub fn translate(&self, t: i64) -> Self {
        self.with_mask(mask::rotate(self.mask, self.modulus.reduce(t), self.modulus.get()))
    }

    /// `{u·x + t : x ∈ X}`.
    pub fn affine_image(&self, u: Residue, t: Residue) -> Result<Self> {
        self.modulus.check_same(u.modulus())?;
        self.modulus.check_same(t.modulus())?;
        if u.is_zero() {
            return Err(Error::ZeroDilation);
        }
        let p = self.modulus.get();
        Ok(self.with_mask(mask::affine(self.mask, u.value(), t.value(), p)))
    }

    /// `A + B`; empty when either side is.
    pub fn sumset(&self, other: &ResidueSet) -> Result<Self> {
        self.modulus.check_same(other.modulus)?;
        Ok(self.with_mask(mask::sumset(self.mask, other.mask, self.modulus.get())))
    }

    /// `{a + b : a ∈ self, b ∈ other, a − b ∉ excluded}`.
    pub fn restricted_sumset(&self, other: &ResidueSet, excluded: &ResidueSet) -> Result<Self> {
        self.modulus.check_same(other.modulus)?;
        self.modulus.check_same(excluded.modulus)?;
        let p = self.modulus.get();
        Ok(self.with_mask(mask::restricted_sumset(self.mask, other.mask, excluded.mask, p)))
    }

    /// `{a + b : a ∈ self, b ∈ other, a ≠ b}`.
    pub fn strict_sumset(&self, other: &ResidueSet) -> Result<Self> {
        self.modulus.check_same(other.modulus)?;
        let zero = self.with_mask(1);
        self.restricted_sumset(other, &zero)
    }

    /// Comma-separated members, e.g. `0,1,2`.
    pub fn literal(&self) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{x}");
        }
        out
    }
}

impl fmt::Display for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.literal())
    }
}

/// The four classical lower bounds for a configuration of given sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundReport {
    /// `min{p, |A|+|B|−1}` (Cauchy–Davenport).
    pub cd: u32,
    /// `min{p, 2|A|−3}` (Erdős–Heilbronn), only when `|A| = |B|`.
    pub eh: Option<u32>,
    /// `min{p, |A|+|B|−2|S|−1}`.
    pub thm2: u32,
    /// `min{p, |A|+|B|−|S|−2}`, meaningful for odd `p` with `∅ ≠ S ≠ Z_p`.
    pub pan_sun: u32,
    /// Some raw bound was negative and got clamped to zero.
    pub clamped: bool,
}

pub fn bound_table(p: PrimeModulus, n_a: usize, n_b: usize, n_s: usize) -> Result<BoundReport> {
    let pv = p.get();
    for size in [n_a, n_b, n_s] {
        if size > pv as usize {
            return Err(Error::SizeOutOfRange { size, p: pv });
        }
    }
    let (a, b, s) = (n_a as i64, n_b as i64, n_s as i64);
    let mut clamped = false;
    let mut bound = |raw: i64| -> u32 {
        if raw < 0 {
            clamped = true;
        }
        raw.clamp(0, i64::from(pv)) as u32
    };
    let cd = bound(a + b - 1);
    let eh = (n_a == n_b).then(|| bound(2 * a - 3));
    let thm2 = bound(a + b - 2 * s - 1);
    let pan_sun = bound(a + b - s - 2);
    Ok(BoundReport { cd, eh, thm2, pan_sun, clamped })
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

    /// Pair-loop oracle, independent of the rotation kernels.
    fn restricted_oracle(a: &ResidueSet, b: &ResidueSet, s: &ResidueSet) -> ResidueSet {
        let p = a.modulus().get();
        let mut out = Vec::new();
        for x in a.iter() {
            for y in b.iter() {
                let diff = (x + p - y) % p;
                if !s.contains(diff) {
                    let sum = (x + y) % p;
                    if !out.contains(&sum) {
                        out.push(sum);
                    }
                }
            }
        }
        ResidueSet::from_values(a.modulus(), out).unwrap()
    }

    #[test]
    fn modulus_validation() {
        assert!(PrimeModulus::new(2).is_ok());
        assert!(PrimeModulus::new(61).is_ok());
        assert_eq!(PrimeModulus::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PrimeModulus::new(9), Err(Error::NotPrime(9)));
        assert!(matches!(PrimeModulus::new(67), Err(Error::PrimeTooLarge { .. })));
        assert!(matches!(PrimeModulus::with_ceiling(37, 31), Err(Error::PrimeTooLarge { .. })));
    }

    #[test]
    fn sumset_examples() {
        assert_eq!(set(5, &[0, 1, 2]).sumset(&set(5, &[0, 1, 2])).unwrap(), set(5, &[0, 1, 2, 3, 4]));
        assert_eq!(set(7, &[0]).sumset(&set(7, &[0, 1, 2, 3])).unwrap(), set(7, &[0, 1, 2, 3]));
        assert_eq!(set(5, &[0, 1]).sumset(&set(5, &[0, 2])).unwrap(), set(5, &[0, 1, 2, 3]));
        assert!(ResidueSet::empty(pm(5)).sumset(&set(5, &[1])).unwrap().is_empty());
    }

    #[test]
    fn restricted_sumset_examples() {
        let c = set(7, &[0, 1, 2]).restricted_sumset(&set(7, &[0, 1, 2, 3]), &set(7, &[0])).unwrap();
        assert_eq!(c, set(7, &[1, 2, 3, 4, 5]));
        let c = set(5, &[0, 1, 2]).restricted_sumset(&set(5, &[0, 1, 2]), &set(5, &[0])).unwrap();
        assert_eq!(c, set(5, &[1, 2, 3]));
        let a = set(7, &[0, 3, 5]);
        assert!(a.restricted_sumset(&a, &ResidueSet::full(pm(7))).unwrap().is_empty());
    }

    #[test]
    fn strict_sumset_examples() {
        let a = set(5, &[0, 1, 2]);
        assert_eq!(a.strict_sumset(&a).unwrap(), set(5, &[1, 2, 3]));
        let a = set(7, &[0, 1, 2, 3]);
        assert_eq!(a.strict_sumset(&a).unwrap(), set(7, &[1, 2, 3, 4, 5]));
        let a = set(3, &[0]);
        assert!(a.strict_sumset(&a).unwrap().is_empty());
    }

    #[test]
    fn modulus_mismatch_is_rejected() {
        let err = set(5, &[0]).sumset(&set(7, &[0])).unwrap_err();
        assert_eq!(err, Error::ModulusMismatch { left: 5, right: 7 });
        assert!(set(5, &[0]).restricted_sumset(&set(5, &[0]), &set(3, &[])).is_err());
    }

    #[test]
    fn bound_examples() {
        let b = bound_table(pm(7), 3, 4, 1).unwrap();
        assert_eq!((b.thm2, b.pan_sun, b.cd, b.eh), (4, 4, 6, None));
        let b = bound_table(pm(5), 3, 3, 0).unwrap();
        assert_eq!((b.cd, b.thm2, b.eh), (5, 5, Some(3)));
        let b = bound_table(pm(7), 1, 1, 3).unwrap();
        assert_eq!(b.thm2, 0);
        assert!(b.clamped);
        assert!(!bound_table(pm(7), 3, 4, 1).unwrap().clamped);
        assert!(matches!(bound_table(pm(5), 6, 1, 0), Err(Error::SizeOutOfRange { .. })));
    }

    #[test]
    fn affine_examples() {
        let r = |v, p| Residue::new(v, pm(p)).unwrap();
        assert_eq!(set(5, &[0, 1, 2]).affine_image(r(1, 5), r(0, 5)).unwrap(), set(5, &[0, 1, 2]));
        assert_eq!(set(5, &[0, 1, 2]).affine_image(r(2, 5), r(0, 5)).unwrap(), set(5, &[0, 2, 4]));
        assert_eq!(set(7, &[1, 2]).affine_image(r(1, 7), r(5, 7)).unwrap(), set(7, &[6, 0]));
        assert_eq!(set(7, &[1, 2]).affine_image(r(0, 7), r(5, 7)), Err(Error::ZeroDilation));
    }

    #[test]
    fn literal_parsing() {
        let p = pm(7);
        assert_eq!(ResidueSet::parse(p, "0, 1,2").unwrap(), set(7, &[0, 1, 2]));
        assert!(ResidueSet::parse(p, "").unwrap().is_empty());
        assert_eq!(ResidueSet::parse(p, "1,1"), Err(Error::DuplicateResidue(1)));
        assert!(matches!(ResidueSet::parse(p, "7"), Err(Error::ResidueOutOfRange { .. })));
        assert!(matches!(ResidueSet::parse(p, "-1"), Err(Error::SetLiteral(_))));
        assert!(matches!(ResidueSet::parse(p, "1,,2"), Err(Error::SetLiteral(_))));
        assert_eq!(set(7, &[3, 0, 5]).literal(), "0,3,5");
    }

    #[test]
    fn interval_wraps() {
        assert_eq!(ResidueSet::interval(pm(5), 3, 4).unwrap(), set(5, &[3, 4, 0, 1]));
        assert_eq!(ResidueSet::interval(pm(5), 5, 1).unwrap(), set(5, &[0]));
        assert_eq!(ResidueSet::interval(pm(5), -2, 2).unwrap(), set(5, &[3, 4]));
    }

    #[test]
    fn mask_kernels() {
        assert_eq!(mask::negate(0b0000011, 7), 0b1000001);
        assert_eq!(mask::negate(0b1, 2), 0b1);
        assert_eq!(mask::negate(0b10, 2), 0b10);
        assert_eq!(mask::inverse(3, 7), 5);
        let all: Vec<u64> = mask::subsets_of_size(4, 2).collect();
        assert_eq!(all, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(mask::subsets_of_size(3, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(mask::subsets_of_size(3, 3).collect::<Vec<_>>(), vec![0b111]);
        assert_eq!(mask::subsets_of_size(61, 61).count(), 1);
        assert_eq!(mask::subsets_of_size(61, 60).count(), 61);
    }

    #[test]
    fn empty_s_gives_plain_sumset_exhaustively() {
        for p in [2u32, 3, 5] {
            let full = mask::full(p);
            for a in 0..=full {
                for b in 0..=full {
                    assert_eq!(mask::restricted_sumset(a, b, 0, p), mask::sumset(a, b, p));
                }
            }
        }
    }

    #[test]
    fn restricted_bounds_small_primes() {
        for p in [2u32, 3, 5] {
            let m = pm(u64::from(p));
            let full = mask::full(p);
            for a in 1..=full {
                for b in 1..=full {
                    for s in 0..=full {
                        let c = mask::restricted_sumset(a, b, s, p).count_ones();
                        let bounds =
                            bound_table(m, a.count_ones() as usize, b.count_ones() as usize, s.count_ones() as usize)
                                .unwrap();
                        assert!(c >= bounds.thm2);
                        if p != 2 && s != 0 && s != full {
                            assert!(c >= bounds.pan_sun);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn equivariance_exhaustive_p5() {
        let p = 5u32;
        let full = mask::full(p);
        for a in 0..=full {
            for b in 0..=full {
                for s in 0..=full {
                    let c = mask::restricted_sumset(a, b, s, p);
                    for u in 1..p {
                        for t in 0..p {
                            for sh in 0..p {
                                let lhs = mask::restricted_sumset(
                                    mask::affine(a, u, t, p),
                                    mask::affine(b, u, sh, p),
                                    mask::affine(s, u, (t + p - sh) % p, p),
                                    p,
                                );
                                assert_eq!(lhs, mask::affine(c, u, (t + sh) % p, p));
                            }
                        }
                    }
                    let swapped = mask::restricted_sumset(b, a, mask::negate(s, p), p);
                    assert_eq!(swapped, c);
                }
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn rotation_kernel_matches_pair_loop(
            pi in 0usize..5,
            a in proptest::num::u64::ANY,
            b in proptest::num::u64::ANY,
            s in proptest::num::u64::ANY,
        ) {
            let p = [3u64, 5, 7, 11, 13][pi];
            let m = pm(p);
            let f = m.full_mask();
            let (a, b, s) = (
                ResidueSet::from_mask(m, a & f).unwrap(),
                ResidueSet::from_mask(m, b & f).unwrap(),
                ResidueSet::from_mask(m, s & f).unwrap(),
            );
            proptest::prop_assert_eq!(a.restricted_sumset(&b, &s).unwrap(), restricted_oracle(&a, &b, &s));
            proptest::prop_assert_eq!(
                b.restricted_sumset(&a, &s.negate()).unwrap(),
                a.restricted_sumset(&b, &s).unwrap()
            );
        }
    }
}
