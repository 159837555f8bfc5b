//! Checked execution of the Fourier-analytic lower bound
//! `|C| ≥ min{p, |A|+|B|−2|S|−1}` for `C = {a+b : a∈A, b∈B, a−b∉S}`.
//!
//! On a concrete instance the engine picks the interval sets `Â`, `B̂`,
//! builds witnesses `f`, `g` with `supp f = A`, `supp f̂ = Â`, `supp g = B`,
//! `supp ĝ = B̂`, forms
//!
//! ```text
//! F(x) = Σ_a f(a) g(x−a) Π_{d∈S} (e_p(x−a) − e_p(a−d))
//! ```
//!
//! and checks every intermediate claim the bound rests on: `supp F ⊆ C`,
//! `F̂(p−|S|) ≠ 0`, the location of `supp F̂`, and the resulting count.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::fourier::ZpFunction;
use crate::residue::{bound_table, PrimeModulus, Residue, ResidueSet};
use crate::witness::construct_witness;

/// Largest `|S|` for which the `2^|S|`-term expansion of `F̂` is evaluated.
pub const DEFAULT_EXPANSION_CAP: usize = 10;

/// `Â = {0, …, p−|A|}` and `B̂ = {|B|−|S|, …, p−|S|}`, both mod `p`.
pub fn hat_sets(p: PrimeModulus, n_a: usize, n_b: usize, n_s: usize) -> Result<(ResidueSet, ResidueSet)> {
    p.require_odd()?;
    let pv = p.get() as usize;
    if n_a > pv || n_b > pv || n_s > pv {
        return Err(Error::SizeOutOfRange { size: n_a.max(n_b).max(n_s), p: p.get() });
    }
    if n_a + n_b <= 2 * n_s + 1 {
        return Err(Error::precondition(format!("|A| + |B| = {} must exceed 2|S| + 1 = {}", n_a + n_b, 2 * n_s + 1)));
    }
    if !(2 <= n_a && n_a <= n_b) {
        return Err(Error::precondition(format!("need 2 ≤ |A| ≤ |B|, got |A| = {n_a}, |B| = {n_b}")));
    }
    let k = pv - n_a + 1;
    let l = pv - n_b + 1;
    let a_hat = ResidueSet::interval(p, 0, k)?;
    let b_hat = ResidueSet::interval(p, (n_b - n_s) as i64, l)?;
    Ok((a_hat, b_hat))
}

/// `F(x) = Σ_a f(a)·g(x−a)·Π_{d∈S}(e_p(x−a) − e_p(a−d))`; the empty product is 1.
pub fn build_f(f: &ZpFunction, g: &ZpFunction, s: &ResidueSet) -> Result<ZpFunction> {
    let m = f.modulus();
    m.check_same(g.modulus())?;
    m.check_same(s.modulus())?;
    let p = m.get() as i64;
    let e: Vec<CycNum> = (0..p).map(|r| CycNum::e(m, r)).collect();
    let e_at = |r: i64| &e[m.reduce(r) as usize];
    let values = (0..p)
        .map(|x| {
            let mut acc = CycNum::zero(m);
            for a in 0..p {
                let (fa, gb) = (f.at(a), g.at(x - a));
                if fa.is_zero() || gb.is_zero() {
                    continue;
                }
                let mut term = fa * gb;
                for d in s.iter() {
                    let factor = e_at(x - a) - e_at(a - i64::from(d));
                    term = &term * &factor;
                    if term.is_zero() {
                        break;
                    }
                }
                acc = &acc + &term;
            }
            acc
        })
        .collect();
    ZpFunction::new(m, values)
}

/// `F̂(x) = Σ_{T⊆S} (−1)^{|T|} e_p(−Σ_{d∈T} d) f̂(x+|T|) ĝ(x+|S|−|T|)`.
pub fn hat_f_expansion(f_hat: &ZpFunction, g_hat: &ZpFunction, s: &ResidueSet, x: Residue) -> Result<CycNum> {
    hat_f_expansion_with_cap(f_hat, g_hat, s, x, DEFAULT_EXPANSION_CAP)
}

pub fn hat_f_expansion_with_cap(
    f_hat: &ZpFunction,
    g_hat: &ZpFunction,
    s: &ResidueSet,
    x: Residue,
    cap: usize,
) -> Result<CycNum> {
    let m = f_hat.modulus();
    m.check_same(g_hat.modulus())?;
    m.check_same(s.modulus())?;
    m.check_same(x.modulus())?;
    if s.len() > cap {
        return Err(Error::ExpansionCap { size: s.len(), cap });
    }
    let members = s.to_vec();
    let n = members.len();
    let x = i64::from(x.value());
    let mut acc = CycNum::zero(m);
    for subset in 0u32..(1 << n) {
        let t = subset.count_ones() as i64;
        let fh = f_hat.at(x + t);
        let gh = g_hat.at(x + n as i64 - t);
        if fh.is_zero() || gh.is_zero() {
            continue;
        }
        let sum_t: i64 = (0..n).filter(|i| subset & (1 << i) != 0).map(|i| i64::from(members[i])).sum();
        let term = &(fh * gh) * &CycNum::e(m, -sum_t);
        acc = if t % 2 == 1 { &acc - &term } else { &acc + &term };
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofContext {
    pub p: PrimeModulus,
    /// Sets as used by the argument, after the optional swap.
    pub a: ResidueSet,
    pub b: ResidueSet,
    pub s: ResidueSet,
    /// `k = p − |A| + 1`.
    pub k: usize,
    /// `l = p − |B| + 1`.
    pub l: usize,
    pub a_hat: ResidueSet,
    pub b_hat: ResidueSet,
    /// `(A, B, S)` was replaced by `(B, A, −S)` to get `|A| ≤ |B|`.
    pub swapped: bool,
}

/// Which half of the final case split produced the bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `|A| + |B| ≥ p + 2|S| + 1`: `supp F̂` is the single point `p − |S|`.
    Saturated,
    /// Otherwise `|supp F̂| ≤ k + l − p + 2|S|`.
    Counting,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::Saturated => "saturated",
            Branch::Counting => "counting",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceReport {
    pub context: ProofContext,
    pub f: ZpFunction,
    pub g: ZpFunction,
    pub big_f: ZpFunction,
    pub big_f_hat: ZpFunction,
    /// Every checkpoint, in pipeline order.
    pub checks: Vec<Check>,
    pub branch: Branch,
    /// Points where `F̂` may be nonzero.
    pub predicted_hat_support: ResidueSet,
    pub derived_bound: u32,
    pub actual_c: ResidueSet,
}

struct Checks(Vec<Check>);

impl Checks {
    fn require(&mut self, name: &'static str, passed: bool, detail: impl FnOnce() -> String) -> Result<()> {
        self.0.push(Check { name, passed });
        if passed {
            Ok(())
        } else {
            Err(Error::Checkpoint { name, detail: detail() })
        }
    }
}

/// Runs the argument on one instance. Any failed checkpoint is an error.
pub fn trace_theorem2(
    p: PrimeModulus,
    a: &ResidueSet,
    b: &ResidueSet,
    s: &ResidueSet,
    seed: u64,
) -> Result<TraceReport> {
    p.require_odd()?;
    for set in [a, b, s] {
        p.check_same(set.modulus())?;
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::precondition("A and B must be nonempty"));
    }
    let (a, b, s, swapped) = if a.len() > b.len() { (*b, *a, s.negate(), true) } else { (*a, *b, *s, false) };
    let (na, nb, ns) = (a.len(), b.len(), s.len());
    let pv = p.get() as usize;
    if na < 2 {
        return Err(Error::precondition(format!("min(|A|, |B|) = {na} must be at least 2")));
    }
    let (a_hat, b_hat) = hat_sets(p, na, nb, ns)?;
    let k = pv - na + 1;
    let l = pv - nb + 1;
    let context = ProofContext { p, a, b, s, k, l, a_hat, b_hat, swapped };
    let c = a.restricted_sumset(&b, &s)?;
    let mut checks = Checks(Vec::new());

    checks.require("hat_set_sizes", a_hat.len() == pv + 1 - na && b_hat.len() == pv + 1 - nb, || {
        format!("|Â| = {}, |B̂| = {}", a_hat.len(), b_hat.len())
    })?;
    checks.require(
        "k_l_ranges",
        k + l <= 2 * pv - 2 * ns && l <= pv - ns && (1..pv).contains(&k) && (1..pv).contains(&l),
        || format!("k = {k}, l = {l}"),
    )?;

    let f = construct_witness(p, &a, &a_hat, seed)?;
    let f_hat = f.dft();
    checks.require("witness_f_supports", f.support() == a && f_hat.support() == a_hat, || {
        format!("supp f = {}, supp f̂ = {}", f.support(), f_hat.support())
    })?;
    let g = construct_witness(p, &b, &b_hat, seed.wrapping_add(1))?;
    let g_hat = g.dft();
    checks.require("witness_g_supports", g.support() == b && g_hat.support() == b_hat, || {
        format!("supp g = {}, supp ĝ = {}", g.support(), g_hat.support())
    })?;

    let big_f = build_f(&f, &g, &s)?;
    let supp_f = big_f.support();
    checks.require("supp_F_within_C", supp_f.is_subset(&c), || format!("supp F = {supp_f}, C = {c}"))?;

    let big_f_hat = big_f.dft();
    if ns <= DEFAULT_EXPANSION_CAP {
        let mut mismatch = None;
        for x in 0..p.get() {
            let x = Residue::new(u64::from(x), p)?;
            if hat_f_expansion(&f_hat, &g_hat, &s, x)? != *big_f_hat.at(i64::from(x.value())) {
                mismatch = Some(x.value());
                break;
            }
        }
        checks.require("F_hat_expansion", mismatch.is_none(), || format!("expansion differs at x = {mismatch:?}"))?;
    }

    let top = (pv - ns) as i64;
    let sum_s: i64 = s.iter().map(i64::from).sum();
    let sign = if ns % 2 == 0 { 1 } else { -1 };
    let closed = (&(f_hat.at(0) * g_hat.at(top)) * &CycNum::e(p, -sum_s)).scale_int(sign);
    let at_top = big_f_hat.at(top);
    checks.require("F_hat_nonzero_at_p_minus_s", !at_top.is_zero() && *at_top == closed, || {
        format!("F̂({}) = {}, expected {}", p.reduce(top), at_top, closed)
    })?;

    // {p−|S|} ∪ {r mod p : |B|−2|S| ≤ r ≤ k−1}
    let lo = nb as i64 - 2 * ns as i64;
    let hi = k as i64 - 1;
    let mut predicted = ResidueSet::interval(p, top, 1)?;
    if lo <= hi {
        let len = ((hi - lo + 1) as usize).min(pv);
        predicted = predicted.union(&ResidueSet::interval(p, lo, len)?)?;
    }
    let supp_hat = big_f_hat.support();
    checks.require("supp_F_hat_within_prediction", supp_hat.is_subset(&predicted), || {
        format!("supp F̂ = {supp_hat}, predicted {predicted}")
    })?;

    let (branch, derived_bound) = if na + nb > pv + 2 * ns {
        checks.require("branch_saturated_support", supp_hat.len() == 1, || {
            format!("supp F̂ = {supp_hat}, expected the single point {}", p.reduce(top))
        })?;
        (Branch::Saturated, p.get())
    } else {
        let count_bound = k + l + 2 * ns - pv;
        checks.require("branch_counting_support", supp_hat.len() <= count_bound, || {
            format!("|supp F̂| = {} exceeds k + l − p + 2|S| = {count_bound}", supp_hat.len())
        })?;
        (Branch::Counting, (na + nb - 2 * ns - 1) as u32)
    };

    checks.require("uncertainty_chain", c.len() >= supp_f.len() && supp_f.len() + supp_hat.len() > pv, || {
        format!("|C| = {}, |supp F| = {}, |supp F̂| = {}", c.len(), supp_f.len(), supp_hat.len())
    })?;
    let thm2 = bound_table(p, na, nb, ns)?.thm2;
    checks.require("bound_matches_formula", derived_bound == thm2, || {
        format!("derived {derived_bound}, formula {thm2}")
    })?;
    checks.require("bound_below_actual", derived_bound as usize <= c.len(), || {
        format!("derived {derived_bound} > |C| = {}", c.len())
    })?;

    Ok(TraceReport {
        context,
        f,
        g,
        big_f,
        big_f_hat,
        checks: checks.0,
        branch,
        predicted_hat_support: predicted,
        derived_bound,
        actual_c: c,
    })
}

/// Direct check of `|C| ≥ min{p, |A|+|B|−2|S|−1}` (clamped at 0) on any
/// instance with nonempty `A`, `B`, including `p = 2` and `|A| = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StatementCheck {
    pub c: ResidueSet,
    pub bound: u32,
    pub holds: bool,
}

pub fn theorem2_statement_check(a: &ResidueSet, b: &ResidueSet, s: &ResidueSet) -> Result<StatementCheck> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::precondition("A and B must be nonempty"));
    }
    let c = a.restricted_sumset(b, s)?;
    let bound = bound_table(a.modulus(), a.len(), b.len(), s.len())?.thm2;
    Ok(StatementCheck { c, bound, holds: c.len() >= bound as usize })
}
