//! JSON shapes of every report the CLI emits.
//!
//! Field order in each struct is the key order on the wire. Sets are sorted
//! arrays of residues; a field element is an array of `p − 1` strings
//! `"num/den"` in lowest terms (power-basis coordinates); a function on
//! `Z_p` is an array of `p` field elements indexed by residue.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use sumset_core::explore::{Config, ConjectureCell, Mode, SearchReport};
use sumset_core::fourier::UncertaintyTrials;
use sumset_core::proof::TraceReport;
use sumset_core::{BoundReport, CycNum, Error, PrimeModulus, ResidueSet, ZpFunction};

pub type CycNumJson = Vec<String>;
pub type FunctionJson = Vec<CycNumJson>;

pub fn cycnum_to_json(x: &CycNum) -> CycNumJson {
    x.coefficients().iter().map(|q| format!("{}/{}", q.numer(), q.denom())).collect()
}

pub fn cycnum_from_json(p: PrimeModulus, json: &[String]) -> Result<CycNum, Error> {
    let coeffs = json
        .iter()
        .map(|s| {
            let (n, d) = s.split_once('/').ok_or_else(|| Error::Precondition(format!("`{s}` is not num/den")))?;
            let parse = |t: &str| t.parse::<BigInt>().map_err(|_| Error::Precondition(format!("bad integer `{t}`")));
            let den = parse(d)?;
            if den == BigInt::from(0) {
                return Err(Error::Precondition(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(parse(n)?, den))
        })
        .collect::<Result<Vec<_>, _>>()?;
    CycNum::from_coefficients(p, &coeffs)
}

pub fn function_to_json(f: &ZpFunction) -> FunctionJson {
    f.values().iter().map(cycnum_to_json).collect()
}

pub fn function_from_json(p: PrimeModulus, json: &[CycNumJson]) -> Result<ZpFunction, Error> {
    let values = json.iter().map(|v| cycnum_from_json(p, v)).collect::<Result<Vec<_>, _>>()?;
    ZpFunction::new(p, values)
}

pub fn set_to_json(s: &ResidueSet) -> Vec<u32> {
    s.to_vec()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsJson {
    pub cd: u32,
    pub eh: Option<u32>,
    pub thm2: u32,
    pub pan_sun: u32,
    pub clamped: bool,
}

impl From<&BoundReport> for BoundsJson {
    fn from(b: &BoundReport) -> Self {
        BoundsJson { cd: b.cd, eh: b.eh, thm2: b.thm2, pan_sun: b.pan_sun, clamped: b.clamped }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumsetJson {
    pub p: u32,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub s: Vec<u32>,
    pub c: Vec<u32>,
    pub size: usize,
    pub bounds: BoundsJson,
    pub thm2_bound: u32,
    pub tight: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UncertaintyJson {
    pub p: u32,
    pub seed: u64,
    pub trials: usize,
    pub violations: usize,
    pub min_lhs: Option<usize>,
}

impl From<&UncertaintyTrials> for UncertaintyJson {
    fn from(t: &UncertaintyTrials) -> Self {
        UncertaintyJson { p: t.p, seed: t.seed, trials: t.trials, violations: t.violations, min_lhs: t.min_lhs }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportsJson {
    pub f: Vec<u32>,
    pub f_hat: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub p: u32,
    pub seed: u64,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub f: FunctionJson,
    pub f_hat: FunctionJson,
    pub supports: SupportsJson,
    pub verified: bool,
}

impl WitnessJson {
    pub fn new(p: PrimeModulus, seed: u64, a: &ResidueSet, b: &ResidueSet, f: &ZpFunction, verified: bool) -> Self {
        let f_hat = f.dft();
        WitnessJson {
            p: p.get(),
            seed,
            a: set_to_json(a),
            b: set_to_json(b),
            f: function_to_json(f),
            f_hat: function_to_json(&f_hat),
            supports: SupportsJson { f: set_to_json(&f.support()), f_hat: set_to_json(&f_hat.support()) },
            verified,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextJson {
    pub p: u32,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub s: Vec<u32>,
    pub k: usize,
    pub l: usize,
    pub a_hat: Vec<u32>,
    pub b_hat: Vec<u32>,
    pub swapped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub seed: u64,
    pub context: ContextJson,
    pub f: FunctionJson,
    pub g: FunctionJson,
    #[serde(rename = "F")]
    pub big_f: FunctionJson,
    #[serde(rename = "F_hat")]
    pub big_f_hat: FunctionJson,
    pub checks: Vec<CheckJson>,
    pub branch: String,
    pub predicted_hat_support: Vec<u32>,
    pub derived_bound: u32,
    pub actual_c: Vec<u32>,
    pub actual_c_size: usize,
    pub passed: bool,
}

impl TraceJson {
    pub fn new(r: &TraceReport, seed: u64) -> Self {
        let c = &r.context;
        TraceJson {
            seed,
            context: ContextJson {
                p: c.p.get(),
                a: set_to_json(&c.a),
                b: set_to_json(&c.b),
                s: set_to_json(&c.s),
                k: c.k,
                l: c.l,
                a_hat: set_to_json(&c.a_hat),
                b_hat: set_to_json(&c.b_hat),
                swapped: c.swapped,
            },
            f: function_to_json(&r.f),
            g: function_to_json(&r.g),
            big_f: function_to_json(&r.big_f),
            big_f_hat: function_to_json(&r.big_f_hat),
            checks: r.checks.iter().map(|c| CheckJson { name: c.name.to_string(), passed: c.passed }).collect(),
            branch: r.branch.name().to_string(),
            predicted_hat_support: set_to_json(&r.predicted_hat_support),
            derived_bound: r.derived_bound,
            actual_c: set_to_json(&r.actual_c),
            actual_c_size: r.actual_c.len(),
            passed: r.checks.iter().all(|c| c.passed),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpecJson {
    pub p: u32,
    pub a_size: usize,
    pub b_size: usize,
    pub s_size: usize,
    /// `exhaustive` or `sampled`.
    pub mode: String,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub symmetry_reduction: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigJson {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub s: Vec<u32>,
    pub c: Vec<u32>,
}

impl ConfigJson {
    pub fn new(p: PrimeModulus, cfg: &Config) -> Self {
        let (a, b, s) = cfg.sets(p);
        let c = a.restricted_sumset(&b, &s).expect("same modulus");
        ConfigJson { a: set_to_json(&a), b: set_to_json(&b), s: set_to_json(&s), c: set_to_json(&c) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureValueJson {
    pub value: u32,
    pub tight: bool,
    pub violated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchJson {
    pub spec: SearchSpecJson,
    pub min_c: u32,
    pub empty: bool,
    pub upper_bound_only: bool,
    pub extremal_witnesses: Vec<ConfigJson>,
    pub bounds: BoundsJson,
    pub tight_thm2: bool,
    pub tight_pan_sun: bool,
    pub conjecture: ConjectureValueJson,
    pub configs_scanned: u64,
    /// Wall-clock time; only present when timings were requested, since it
    /// would otherwise break byte-identical reruns.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

impl SearchJson {
    pub fn new(r: &SearchReport, elapsed_ms: Option<u64>) -> Self {
        let s = &r.spec;
        let (mode, samples, seed) = match s.mode {
            Mode::Exhaustive => ("exhaustive", None, None),
            Mode::Sampled { count, seed } => ("sampled", Some(count), Some(seed)),
        };
        SearchJson {
            spec: SearchSpecJson {
                p: s.p.get(),
                a_size: s.n_a,
                b_size: s.n_b,
                s_size: s.n_s,
                mode: mode.to_string(),
                samples,
                seed,
                symmetry_reduction: s.symmetry_reduction,
            },
            min_c: r.min_c,
            empty: r.empty,
            upper_bound_only: r.upper_bound_only,
            extremal_witnesses: r.extremal_witnesses.iter().map(|c| ConfigJson::new(s.p, c)).collect(),
            bounds: (&r.bounds).into(),
            tight_thm2: r.tight_thm2,
            tight_pan_sun: r.tight_pan_sun,
            conjecture: ConjectureValueJson {
                value: r.conjecture.value,
                tight: r.conjecture.tight,
                violated: r.conjecture.violated,
            },
            configs_scanned: r.configs_scanned,
            elapsed_ms,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureCellJson {
    pub a_size: usize,
    pub b_size: usize,
    pub s_size: usize,
    pub min_c: u32,
    pub min_c_a_ne_b: Option<u32>,
    pub thm2: u32,
    pub pan_sun: u32,
    pub strengthened_bound: u32,
    pub s_even: bool,
    pub s_nonempty_proper: bool,
    pub all_meets_strengthened: bool,
    pub a_ne_b_meets_strengthened: Option<bool>,
    pub configs_scanned: u64,
    pub extremal_witness: Option<ConfigJson>,
}

impl From<&ConjectureCell> for ConjectureCellJson {
    fn from(c: &ConjectureCell) -> Self {
        let r = &c.report;
        ConjectureCellJson {
            a_size: r.spec.n_a,
            b_size: r.spec.n_b,
            s_size: r.spec.n_s,
            min_c: r.min_c,
            min_c_a_ne_b: c.min_c_a_ne_b,
            thm2: r.bounds.thm2,
            pan_sun: r.bounds.pan_sun,
            strengthened_bound: c.strengthened_bound,
            s_even: c.s_even,
            s_nonempty_proper: c.s_nonempty_proper,
            all_meets_strengthened: c.all_meets_strengthened,
            a_ne_b_meets_strengthened: c.a_ne_b_meets_strengthened,
            configs_scanned: r.configs_scanned,
            extremal_witness: r.extremal_witnesses.first().map(|w| ConfigJson::new(r.spec.p, w)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanJson {
    pub p: u32,
    pub max_s: usize,
    pub cells: Vec<ConjectureCellJson>,
}
