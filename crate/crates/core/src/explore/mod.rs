//! Search over configurations `(A, B, S)` of fixed sizes for the least
//! `|C|`, compared against the closed-form bounds.
//!
//! A scan is split into independent work units (one per first set `A` in
//! exhaustive mode, fixed-size chunks of draws in sampled mode). Each unit
//! yields a [`Partial`]; partials merge associatively and the merge result
//! does not depend on how units were distributed, which is what lets the
//! companion crate fan units out over threads.

mod canonical;

pub use canonical::{canonical_masks, canonicalize, is_affine_representative, is_translation_representative};

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::residue::{bound_table, mask, BoundReport, PrimeModulus, ResidueSet};

/// Extremal configurations kept per report.
pub const MAX_WITNESSES: usize = 10;

/// Default cap on configurations an exhaustive scan may visit.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

/// Draws per sampled work unit. Fixed so results do not depend on workers.
pub const SAMPLE_CHUNK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchSpec {
    pub p: PrimeModulus,
    pub n_a: usize,
    pub n_b: usize,
    pub n_s: usize,
    pub mode: Mode,
    pub symmetry_reduction: bool,
    pub workers: usize,
}

impl SearchSpec {
    pub fn exhaustive(p: PrimeModulus, n_a: usize, n_b: usize, n_s: usize) -> Self {
        SearchSpec { p, n_a, n_b, n_s, mode: Mode::Exhaustive, symmetry_reduction: true, workers: 1 }
    }

    pub fn sampled(p: PrimeModulus, n_a: usize, n_b: usize, n_s: usize, count: u64, seed: u64) -> Self {
        SearchSpec { p, n_a, n_b, n_s, mode: Mode::Sampled { count, seed }, symmetry_reduction: false, workers: 1 }
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.p.get() as usize;
        for (name, n, lo) in [("|A|", self.n_a, 1), ("|B|", self.n_b, 1), ("|S|", self.n_s, 0)] {
            if n < lo || n > p {
                return Err(Error::precondition(format!("{name} = {n} must lie in [{lo}, {p}]")));
            }
        }
        if self.workers == 0 {
            return Err(Error::precondition("workers must be positive"));
        }
        Ok(())
    }
}

/// A configuration as a mask triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Config {
    pub a: u64,
    pub b: u64,
    pub s: u64,
}

impl Config {
    pub fn sets(&self, p: PrimeModulus) -> (ResidueSet, ResidueSet, ResidueSet) {
        let f = |m| ResidueSet::from_mask(p, m).expect("mask within Z_p");
        (f(self.a), f(self.b), f(self.s))
    }
}

/// Running minimum over part of a scan.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Partial {
    pub min_c: Option<u32>,
    /// Up to [`MAX_WITNESSES`] least configurations attaining `min_c`, sorted.
    pub witnesses: Vec<Config>,
    /// Minimum over configurations with `A ≠ B`.
    pub min_c_a_ne_b: Option<u32>,
    pub scanned: u64,
}

impl Partial {
    #[inline]
    fn observe(&mut self, cfg: Config, size: u32) {
        self.scanned += 1;
        if cfg.a != cfg.b {
            self.min_c_a_ne_b = Some(self.min_c_a_ne_b.map_or(size, |m| m.min(size)));
        }
        match self.min_c {
            Some(m) if size > m => {}
            Some(m) if size == m => {
                if self.witnesses.len() < MAX_WITNESSES || cfg < *self.witnesses.last().unwrap() {
                    if let Err(pos) = self.witnesses.binary_search(&cfg) {
                        self.witnesses.insert(pos, cfg);
                        self.witnesses.truncate(MAX_WITNESSES);
                    }
                }
            }
            _ => {
                self.min_c = Some(size);
                self.witnesses.clear();
                self.witnesses.push(cfg);
            }
        }
    }

    pub fn merge(mut self, other: Partial) -> Partial {
        self.scanned += other.scanned;
        self.min_c_a_ne_b = match (self.min_c_a_ne_b, other.min_c_a_ne_b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        match (self.min_c, other.min_c) {
            (_, None) => {}
            (None, Some(_)) => {
                self.min_c = other.min_c;
                self.witnesses = other.witnesses;
            }
            (Some(x), Some(y)) if y < x => {
                self.min_c = other.min_c;
                self.witnesses = other.witnesses;
            }
            (Some(x), Some(y)) if y == x => {
                self.witnesses.extend(other.witnesses);
                self.witnesses.sort_unstable();
                self.witnesses.dedup();
                self.witnesses.truncate(MAX_WITNESSES);
            }
            _ => {}
        }
        self
    }
}

/// One independent piece of a scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    /// All configurations with this first set.
    FirstSet(u64),
    /// Draws `index·SAMPLE_CHUNK ..` of a sampled scan.
    Chunk { index: u64, draws: u64 },
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

/// Configurations an exhaustive scan of `spec` would visit (an estimate
/// when symmetry reduction is on).
pub fn exhaustive_cost(spec: &SearchSpec) -> u128 {
    let p = u64::from(spec.p.get());
    let (ca, cb, cs) = (binomial(p, spec.n_a as u64), binomial(p, spec.n_b as u64), binomial(p, spec.n_s as u64));
    if spec.symmetry_reduction {
        let ga = u128::from(p * (p - 1).max(1));
        let reduced = ca.div_ceil(ga).saturating_mul(cb.div_ceil(u128::from(p))).saturating_mul(cs);
        reduced.max(ca)
    } else {
        ca.saturating_mul(cb).saturating_mul(cs)
    }
}

/// Splits a scan into units, in enumeration order.
pub fn plan(spec: &SearchSpec, budget: u128) -> Result<Vec<Unit>> {
    spec.validate()?;
    let p = spec.p.get();
    match spec.mode {
        Mode::Exhaustive => {
            let needed = exhaustive_cost(spec);
            if needed > budget {
                return Err(Error::BudgetExceeded { needed, budget });
            }
            Ok(mask::subsets_of_size(p, spec.n_a as u32)
                .filter(|&a| !spec.symmetry_reduction || is_affine_representative(a, p))
                .map(Unit::FirstSet)
                .collect())
        }
        Mode::Sampled { count, .. } => Ok((0..count.div_ceil(SAMPLE_CHUNK))
            .map(|index| Unit::Chunk { index, draws: SAMPLE_CHUNK.min(count - index * SAMPLE_CHUNK) })
            .collect()),
    }
}

fn random_subset<R: Rng>(rng: &mut R, p: u32, k: usize) -> u64 {
    let mut pool: Vec<u32> = (0..p).collect();
    let mut out = 0u64;
    for i in 0..k {
        let j = rng.random_range(i..p as usize);
        pool.swap(i, j);
        out |= 1 << pool[i];
    }
    out
}

pub fn scan_unit(spec: &SearchSpec, unit: Unit) -> Partial {
    let p = spec.p.get();
    let mut part = Partial::default();
    match unit {
        Unit::FirstSet(a) => {
            let ss: Vec<(u64, u64)> =
                mask::subsets_of_size(p, spec.n_s as u32).map(|s| (s, mask::negate(s, p))).collect();
            for b in mask::subsets_of_size(p, spec.n_b as u32) {
                if spec.symmetry_reduction && !is_translation_representative(b, p) {
                    continue;
                }
                for &(s, neg_s) in &ss {
                    let size = mask::restricted_sumset_neg(a, b, neg_s, p).count_ones();
                    part.observe(Config { a, b, s }, size);
                }
            }
        }
        Unit::Chunk { index, draws } => {
            let Mode::Sampled { seed, .. } = spec.mode else {
                panic!("chunk unit in an exhaustive scan");
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(index);
            for _ in 0..draws {
                let a = random_subset(&mut rng, p, spec.n_a);
                let b = random_subset(&mut rng, p, spec.n_b);
                let s = random_subset(&mut rng, p, spec.n_s);
                let size = mask::restricted_sumset(a, b, s, p).count_ones();
                part.observe(Config { a, b, s }, size);
            }
        }
    }
    part
}

/// `min{p, |A|+|B|−|S|−1}`, the conjectured strengthening.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConjectureValue {
    pub value: u32,
    pub tight: bool,
    pub violated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub spec: SearchSpec,
    /// Least `|C|` seen; `p` when nothing was scanned.
    pub min_c: u32,
    /// Nothing was scanned.
    pub empty: bool,
    /// Sampled scans only bound the true minimum from above.
    pub upper_bound_only: bool,
    pub extremal_witnesses: Vec<Config>,
    pub bounds: BoundReport,
    pub tight_thm2: bool,
    pub tight_pan_sun: bool,
    pub conjecture: ConjectureValue,
    pub configs_scanned: u64,
}

pub fn strengthened_bound(p: PrimeModulus, n_a: usize, n_b: usize, n_s: usize) -> u32 {
    (n_a as i64 + n_b as i64 - n_s as i64 - 1).clamp(0, i64::from(p.get())) as u32
}

/// Turns the merged partial into a report, enforcing `min_C ≥` the bounds
/// that are theorems for this cell.
pub fn finish(spec: &SearchSpec, partial: Partial) -> Result<SearchReport> {
    let p = spec.p;
    let bounds = bound_table(p, spec.n_a, spec.n_b, spec.n_s)?;
    let empty = partial.min_c.is_none();
    let min_c = partial.min_c.unwrap_or(p.get());
    if !empty {
        if min_c < bounds.thm2 {
            return Err(Error::Checkpoint {
                name: "search_min_at_least_thm2",
                detail: format!("min |C| = {min_c} < {} at {:?}", bounds.thm2, partial.witnesses.first()),
            });
        }
        let pan_sun_applies = p.is_odd() && spec.n_s > 0 && spec.n_s < p.get() as usize;
        if pan_sun_applies && min_c < bounds.pan_sun {
            return Err(Error::Checkpoint {
                name: "search_min_at_least_pan_sun",
                detail: format!("min |C| = {min_c} < {} at {:?}", bounds.pan_sun, partial.witnesses.first()),
            });
        }
    }
    let value = strengthened_bound(p, spec.n_a, spec.n_b, spec.n_s);
    Ok(SearchReport {
        spec: *spec,
        min_c,
        empty,
        upper_bound_only: matches!(spec.mode, Mode::Sampled { .. }),
        extremal_witnesses: partial.witnesses,
        bounds,
        tight_thm2: !empty && min_c == bounds.thm2,
        tight_pan_sun: !empty && min_c == bounds.pan_sun,
        conjecture: ConjectureValue { value, tight: !empty && min_c == value, violated: !empty && min_c < value },
        configs_scanned: partial.scanned,
    })
}

/// Runs every unit of `spec` in order on the calling thread.
pub fn run_sequential(spec: &SearchSpec, budget: u128) -> Result<(SearchReport, Partial)> {
    let units = plan(spec, budget)?;
    let partial = units.into_iter().map(|u| scan_unit(spec, u)).fold(Partial::default(), Partial::merge);
    Ok((finish(spec, partial.clone())?, partial))
}

pub fn exhaustive_min(spec: &SearchSpec) -> Result<SearchReport> {
    if spec.mode != Mode::Exhaustive {
        return Err(Error::precondition("exhaustive_min needs exhaustive mode"));
    }
    Ok(run_sequential(spec, DEFAULT_BUDGET)?.0)
}

pub fn sampled_min(spec: &SearchSpec) -> Result<SearchReport> {
    if !matches!(spec.mode, Mode::Sampled { .. }) {
        return Err(Error::precondition("sampled_min needs sampled mode"));
    }
    Ok(run_sequential(spec, DEFAULT_BUDGET)?.0)
}

/// One row of the conjecture table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureCell {
    /// Unreduced exhaustive scan of the cell.
    pub report: SearchReport,
    /// Minimum restricted to `A ≠ B`; `None` when every configuration has `A = B`.
    pub min_c_a_ne_b: Option<u32>,
    pub strengthened_bound: u32,
    pub s_even: bool,
    pub s_nonempty_proper: bool,
    /// `min_C` over all configurations reaches the strengthened bound.
    pub all_meets_strengthened: bool,
    /// Same, restricted to `A ≠ B`.
    pub a_ne_b_meets_strengthened: Option<bool>,
}

/// Cells `(|A|, |B|, |S|)` with `1 ≤ |A| ≤ |B| ≤ p`, `0 ≤ |S| ≤ max_s`.
/// Swapping `A` and `B` (with `S ↦ −S`) covers `|A| > |B|`.
pub fn conjecture_cells(p: PrimeModulus, max_s: usize) -> Vec<SearchSpec> {
    let pv = p.get() as usize;
    let mut cells = Vec::new();
    for n_s in 0..=max_s.min(pv) {
        for n_a in 1..=pv {
            for n_b in n_a..=pv {
                let mut spec = SearchSpec::exhaustive(p, n_a, n_b, n_s);
                spec.symmetry_reduction = false;
                cells.push(spec);
            }
        }
    }
    cells
}

pub fn conjecture_cell(spec: &SearchSpec, partial: Partial) -> Result<ConjectureCell> {
    if spec.symmetry_reduction || spec.mode != Mode::Exhaustive {
        return Err(Error::precondition("conjecture cells need an unreduced exhaustive scan"));
    }
    let min_c_a_ne_b = partial.min_c_a_ne_b;
    let report = finish(spec, partial)?;
    let bound = report.conjecture.value;
    Ok(ConjectureCell {
        all_meets_strengthened: report.min_c >= bound,
        a_ne_b_meets_strengthened: min_c_a_ne_b.map(|m| m >= bound),
        min_c_a_ne_b,
        strengthened_bound: bound,
        s_even: spec.n_s.is_multiple_of(2),
        s_nonempty_proper: spec.n_s > 0 && spec.n_s < spec.p.get() as usize,
        report,
    })
}

pub fn conjecture_scan(p: PrimeModulus, max_s: usize) -> Result<Vec<ConjectureCell>> {
    conjecture_cells(p, max_s)
        .iter()
        .map(|spec| {
            let (_, partial) = run_sequential(spec, DEFAULT_BUDGET)?;
            conjecture_cell(spec, partial)
        })
        .collect()
}

/// Result of checking a lower bound on every configuration of one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceCheck {
    pub p: u32,
    pub triples: u64,
    pub violations: u64,
    pub first_violation: Option<Config>,
}

/// Which bound [`instance_check`] tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// `min{p, |A|+|B|−2|S|−1}` over all nonempty `A`, `B` and all `S`.
    Thm2,
    /// `min{p, |A|+|B|−|S|−2}` over nonempty `A`, `B` and `∅ ≠ S ≠ Z_p`.
    PanSun,
}

pub fn instance_check(p: PrimeModulus, kind: BoundKind) -> Result<InstanceCheck> {
    if kind == BoundKind::PanSun {
        p.require_odd()?;
    }
    let pv = p.get();
    let full = p.full_mask();
    let mut out = InstanceCheck { p: pv, triples: 0, violations: 0, first_violation: None };
    let (s_lo, s_hi) = match kind {
        BoundKind::Thm2 => (0, full),
        BoundKind::PanSun => (1, full - 1),
    };
    for a in 1..=full {
        let na = i64::from(a.count_ones());
        for b in 1..=full {
            let nb = i64::from(b.count_ones());
            for s in s_lo..=s_hi {
                let ns = i64::from(s.count_ones());
                let raw = match kind {
                    BoundKind::Thm2 => na + nb - 2 * ns - 1,
                    BoundKind::PanSun => na + nb - ns - 2,
                };
                let bound = raw.clamp(0, i64::from(pv));
                let c = i64::from(mask::restricted_sumset(a, b, s, pv).count_ones());
                out.triples += 1;
                if c < bound {
                    out.violations += 1;
                    out.first_violation.get_or_insert(Config { a, b, s });
                }
            }
        }
    }
    Ok(out)
}
