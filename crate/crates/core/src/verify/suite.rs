//! Deterministic verification suite: builds instances from the generator
//! families, draws seeded random trial functions, runs every check, and
//! aggregates per-check statistics. One seed fully determines every trial,
//! so reports are byte-identical across runs.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::families::{build_family, FamilyKind};
use crate::hypergroup::{
    compute_haar, invariance_residual, HaarWeights, HypergroupTable, SampledFunction,
};
use crate::instance::{HypergroupDoc, InstanceDocument};
use crate::norms::{embedding_gap, lebesgue_norm};
use crate::potential::{GrowthSpace, RieszParams};
use crate::step::{distribution, maximal, rearrangement, MaximalFunction, PiecewiseConstant};
use crate::verify::{
    check_fractional, check_hardy, check_oneil, check_truncation_lemma, check_young,
    ext_f64, kernel_weak_norm_refinement, CheckResult, YoungExponents,
};

/// Exponent grids the trial checks rotate through. Infinite variants
/// (`q = ∞`, weak norms, the maximal admissible `q0`) are generated
/// internally, so the lists stay finite and JSON-friendly. Every combination
/// is validated against its theorem's hypotheses before the suite runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExponentGrids {
    /// First Lorentz indices for the Young check; pairs with
    /// `1/p1 + 1/p2 > 1` are formed from this list.
    pub young_p: Vec<f64>,
    /// Finite second indices for the Young check; `(q, ∞)` and `(∞, ∞)`
    /// variants are added automatically.
    pub young_q: Vec<f64>,
    /// Exponents for the Lebesgue–Lorentz two-sided comparison.
    pub lorentz_lebesgue_p: Vec<f64>,
    /// `(p, q, r)` triples for the second-index embedding; restricted to
    /// `1 < q ≤ p ≤ r < ∞`, where the stated constant is valid.
    pub embedding: Vec<(f64, f64, f64)>,
    pub hardy_p: Vec<f64>,
    pub hardy_q: Vec<f64>,
    /// Lebesgue exponents for the fractional bounds (`1 < p < ∞`).
    pub fractional_p: Vec<f64>,
    /// `α` as a fraction of `N/p`, in `(0, 1)`.
    pub fractional_theta: Vec<f64>,
    /// Ball-growth exponents.
    pub fractional_n: Vec<f64>,
}

impl Default for ExponentGrids {
    fn default() -> Self {
        Self {
            young_p: vec![4.0 / 3.0, 1.5, 2.0, 3.0],
            young_q: vec![1.0, 1.5, 2.0, 3.0],
            lorentz_lebesgue_p: vec![1.5, 2.0, 3.0],
            embedding: vec![
                (2.0, 1.5, 3.0),
                (2.0, 2.0, 4.0),
                (3.0, 2.0, 3.0),
                (1.5, 1.25, 2.0),
                (3.0, 1.5, 6.0),
                (2.0, 2.0, 2.5),
            ],
            hardy_p: vec![1.0, 1.5, 2.0, 3.0],
            hardy_q: vec![0.5, 1.0, 2.0],
            fractional_p: vec![1.5, 2.0, 3.0],
            fractional_theta: vec![0.25, 0.5, 0.75],
            fractional_n: vec![1.0, 2.0],
        }
    }
}

impl ExponentGrids {
    fn validate(&self) -> Result<(), SuiteError> {
        let finite = |xs: &[f64]| xs.iter().all(|x| x.is_finite());
        if !(finite(&self.young_p)
            && finite(&self.young_q)
            && finite(&self.lorentz_lebesgue_p)
            && finite(&self.hardy_p)
            && finite(&self.hardy_q)
            && finite(&self.fractional_p)
            && finite(&self.fractional_theta)
            && finite(&self.fractional_n))
        {
            return Err(SuiteError::Config("exponent grids must be finite".into()));
        }
        if self.young_p.iter().any(|p| *p < 1.0) || self.young_q.iter().any(|q| *q < 1.0) {
            return Err(SuiteError::Config("young exponents must be >= 1".into()));
        }
        if self.lorentz_lebesgue_p.iter().any(|p| *p <= 1.0) {
            return Err(SuiteError::Config("lorentz_lebesgue_p must be > 1".into()));
        }
        for &(p, q, r) in &self.embedding {
            if !(1.0 < q && q <= p && p <= r && q < r && r.is_finite()) {
                return Err(SuiteError::Config(format!(
                    "embedding triple ({p}, {q}, {r}) must satisfy 1 < q ≤ p ≤ r < ∞ with q < r"
                )));
            }
        }
        if self.hardy_p.iter().any(|p| *p < 1.0) || self.hardy_q.iter().any(|q| *q <= 0.0) {
            return Err(SuiteError::Config("hardy grid needs p >= 1 and q > 0".into()));
        }
        if self.fractional_p.iter().any(|p| *p <= 1.0) {
            return Err(SuiteError::Config("fractional_p must be > 1".into()));
        }
        if self.fractional_theta.iter().any(|t| !(0.0 < *t && *t < 1.0)) {
            return Err(SuiteError::Config("fractional_theta must lie in (0, 1)".into()));
        }
        if self.fractional_n.iter().any(|n| *n <= 0.0) {
            return Err(SuiteError::Config("fractional_n must be positive".into()));
        }
        for list in [
            &self.young_p,
            &self.young_q,
            &self.lorentz_lebesgue_p,
            &self.hardy_p,
            &self.hardy_q,
            &self.fractional_p,
            &self.fractional_theta,
            &self.fractional_n,
        ] {
            if list.is_empty() {
                return Err(SuiteError::Config("exponent grids must not be empty".into()));
            }
        }
        if self.embedding.is_empty() {
            return Err(SuiteError::Config("embedding grid must not be empty".into()));
        }
        Ok(())
    }
}

/// Everything a suite run depends on. Serializable so that instance files can
/// embed a `suite` block and reports can echo their configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: u64,
    pub families: Vec<FamilyKind>,
    pub sizes: Vec<usize>,
    /// Relative slack absorbing quadrature tolerance in inequality
    /// comparisons.
    pub slack: f64,
    /// Random sample points per trial, on top of every breakpoint.
    pub t_samples: usize,
    /// Axiom residual tolerance for instance validation.
    pub axiom_tol: f64,
    pub exponents: ExponentGrids,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            trials: 1000,
            families: FamilyKind::ALL.to_vec(),
            sizes: vec![4, 16, 64],
            slack: 1e-9,
            t_samples: 100,
            axiom_tol: 1e-12,
            exponents: ExponentGrids::default(),
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), SuiteError> {
        if self.trials == 0 {
            return Err(SuiteError::Config("trials must be >= 1".into()));
        }
        if self.families.is_empty() {
            return Err(SuiteError::Config("family list must not be empty".into()));
        }
        if self.sizes.is_empty() || self.sizes.iter().any(|s| *s < 2) {
            return Err(SuiteError::Config("sizes must all be >= 2".into()));
        }
        if !(self.slack > 0.0 && self.slack.is_finite()) {
            return Err(SuiteError::Config("slack must be positive".into()));
        }
        if self.t_samples == 0 {
            return Err(SuiteError::Config("t_samples must be >= 1".into()));
        }
        if !(self.axiom_tol > 0.0 && self.axiom_tol.is_finite()) {
            return Err(SuiteError::Config("axiom_tol must be positive".into()));
        }
        self.exponents.validate()
    }
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("suite configuration: {0}")]
    Config(String),
    /// A structural failure; the offending instance is serialized so the run
    /// can be replayed.
    #[error("structural failure: {error}")]
    Structural {
        error: Error,
        instance: Box<InstanceDocument>,
    },
}

/// Aggregate statistics for one check name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckStats {
    pub count: u64,
    pub violations: u64,
    pub vacuous: u64,
    #[serde(with = "ext_f64")]
    pub max_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub trials: u64,
    pub checks: u64,
    pub violations: u64,
    pub vacuous: u64,
    pub per_check: BTreeMap<String, CheckStats>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl SuiteReport {
    /// Compact deterministic JSON (non-finite values as `"inf"` strings).
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is total")
    }

    /// Flat tabular export: `trial_id,check_name,lhs,rhs,ratio,pass`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("trial_id,check_name,lhs,rhs,ratio,pass\n");
        for r in &self.results {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.trial_id, r.check_name, r.lhs, r.rhs, r.ratio, r.pass
            ));
        }
        out
    }
}

struct Instance {
    name: String,
    table: HypergroupTable,
    haar: HaarWeights,
    axioms: crate::hypergroup::AxiomReport,
}

/// Exponent grids rotated across trials. Values stay inside each theorem's
/// hypotheses; for the second-index embedding that means `q ≤ p ≤ r`, the
/// regime its stated constant actually covers.
struct Grids {
    young: Vec<YoungExponents>,
    embedding: Vec<(f64, f64, f64)>,
    lebesgue_lorentz: Vec<f64>,
    hardy: Vec<(f64, f64)>,
    fractional: Vec<(f64, f64, f64, f64)>, // (p, alpha-fraction of N/p, N, q)
}

impl Grids {
    fn new(grids: &ExponentGrids) -> Result<Self, SuiteError> {
        let inf = f64::INFINITY;
        let mut q_pairs: Vec<(f64, f64)> = Vec::new();
        for &q1 in &grids.young_q {
            for &q2 in &grids.young_q {
                q_pairs.push((q1, q2));
            }
            q_pairs.push((q1, inf));
        }
        q_pairs.push((inf, inf));
        let mut young = Vec::new();
        for &p1 in &grids.young_p {
            for &p2 in &grids.young_p {
                if p2 < p1 {
                    continue;
                }
                for &(q1, q2) in &q_pairs {
                    let q_min = YoungExponents::minimal_q0(q1, q2);
                    for q0 in [q_min, inf] {
                        if let Ok(exps) = YoungExponents::new(p1, q1, p2, q2, q0) {
                            if !young.contains(&exps) {
                                young.push(exps);
                            }
                        }
                    }
                }
            }
        }
        if young.is_empty() {
            return Err(SuiteError::Config(
                "young_p admits no pair with 1/p1 + 1/p2 > 1".into(),
            ));
        }
        let mut fractional = Vec::new();
        for &p in &grids.fractional_p {
            for &theta in &grids.fractional_theta {
                for &big_n in &grids.fractional_n {
                    for q in [1.0, 2.0, p, inf] {
                        fractional.push((p, theta, big_n, q));
                    }
                }
            }
        }
        Ok(Self {
            young,
            embedding: grids.embedding.clone(),
            lebesgue_lorentz: grids.lorentz_lebesgue_p.clone(),
            hardy: grids
                .hardy_p
                .iter()
                .flat_map(|&p| grids.hardy_q.iter().map(move |&q| (p, q)))
                .collect(),
            fractional,
        })
    }
}

/// Runs every check over seeded random trials. Deterministic under the seed:
/// two runs with equal configurations serialize to identical bytes.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    config.validate()?;
    let instances = build_instances(config)?;
    let grids = Grids::new(&config.exponents)?;
    let mut results = Vec::new();

    instance_checks(config, &instances, &mut results)?;
    refinement_checks(config, &mut results)?;

    for trial in 0..config.trials {
        let instance = &instances[(trial % instances.len() as u64) as usize];
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(trial.wrapping_add(1));
        run_trial(config, &grids, instance, trial, &mut rng, &mut results)
            .map_err(|error| structural(error, instance))?;
    }

    let summary = summarize(config, &results);
    Ok(SuiteReport { config: config.clone(), results, summary })
}

fn structural(error: Error, instance: &Instance) -> SuiteError {
    let doc = InstanceDocument {
        hypergroup: Some(HypergroupDoc::from_table(&instance.table, Some(&instance.haar))),
        ..Default::default()
    };
    SuiteError::Structural { error, instance: Box::new(doc) }
}

fn build_instances(config: &SuiteConfig) -> Result<Vec<Instance>, SuiteError> {
    let mut instances = Vec::new();
    for &kind in &config.families {
        for &size in &config.sizes {
            let family = kind
                .instance_of_size(size)
                .map_err(|e| SuiteError::Config(e.to_string()))?;
            let table = build_family(&family).map_err(|e| SuiteError::Config(e.to_string()))?;
            let name = format!("{}-{}", kind.name(), size);
            let report = table.validate(config.axiom_tol);
            if !report.pass {
                let error = Error::InvalidTable(format!(
                    "instance {name} fails axiom validation (max residual {:.3e})",
                    report.max_residual()
                ));
                let doc = InstanceDocument {
                    hypergroup: Some(HypergroupDoc::from_table(&table, None)),
                    ..Default::default()
                };
                return Err(SuiteError::Structural { error, instance: Box::new(doc) });
            }
            let haar = compute_haar(&table).map_err(|error| {
                let doc = InstanceDocument {
                    hypergroup: Some(HypergroupDoc::from_table(&table, None)),
                    ..Default::default()
                };
                SuiteError::Structural { error, instance: Box::new(doc) }
            })?;
            instances.push(Instance { name, table, haar, axioms: report });
        }
    }
    Ok(instances)
}

/// Per-instance rows: axiom residuals, Haar invariance, and agreement of the
/// closed-form weights with a least-squares solution of the invariance
/// system.
fn instance_checks(
    config: &SuiteConfig,
    instances: &[Instance],
    results: &mut Vec<CheckResult>,
) -> Result<(), SuiteError> {
    for (idx, inst) in instances.iter().enumerate() {
        let trial_id = idx as u64;
        let note = Some(inst.name.clone());
        results.push(CheckResult::compare(
            "axioms",
            trial_id,
            inst.axioms.max_residual(),
            config.axiom_tol,
            config.slack,
            note.clone(),
        ));
        results.push(CheckResult::compare(
            "haar_invariance",
            trial_id,
            invariance_residual(&inst.table, &inst.haar),
            config.axiom_tol,
            config.slack,
            note.clone(),
        ));
        results.push(CheckResult::compare(
            "haar_linear_system",
            trial_id,
            haar_system_mismatch(&inst.table, &inst.haar),
            1e-9,
            config.slack,
            note,
        ));
    }
    Ok(())
}

/// Largest relative difference between the closed-form Haar weights and the
/// least-squares solution of the stacked invariance system with `w(e) = 1`.
fn haar_system_mismatch(table: &HypergroupTable, haar: &HaarWeights) -> f64 {
    let n = table.n();
    let e = table.identity();
    if n == 1 {
        return 0.0;
    }
    let cols: Vec<usize> = (0..n).filter(|y| *y != e).collect();
    let mut a = nalgebra::DMatrix::<f64>::zeros(n * n, cols.len());
    let mut b = nalgebra::DVector::<f64>::zeros(n * n);
    for x in 0..n {
        for z in 0..n {
            let row = x * n + z;
            for (j, &y) in cols.iter().enumerate() {
                let mut v = table.c(x, y, z);
                if y == z {
                    v -= 1.0;
                }
                a[(row, j)] = v;
            }
            let mut ve = table.c(x, e, z);
            if e == z {
                ve -= 1.0;
            }
            b[row] = -ve;
        }
    }
    let solution = a.svd(true, true).solve(&b, 1e-13).expect("svd solve");
    cols.iter()
        .enumerate()
        .map(|(j, &y)| (solution[j] - haar.get(y)).abs() / haar.get(y))
        .fold(0.0, f64::max)
}

/// Weak-norm refinement rows: accuracy at the finest grid and monotone decay
/// of the error under grid doubling, for N ∈ {1, 2} with α = N/4 and spans
/// chosen so both error sources (grid ratio, finite span) stay small.
fn refinement_checks(
    config: &SuiteConfig,
    results: &mut Vec<CheckResult>,
) -> Result<(), SuiteError> {
    for (idx, big_n) in [1.0, 2.0].into_iter().enumerate() {
        let alpha = big_n / 4.0;
        let hi = 2f64.powf(28.0 / big_n);
        let rows = kernel_weak_norm_refinement(1.0, big_n, alpha, &[32, 64, 128, 256], 1.0, hi)
            .map_err(|e| SuiteError::Config(e.to_string()))?;
        let note = |m: usize| Some(format!("N={big_n} alpha={alpha} M={m}"));
        for pair in rows.windows(2) {
            results.push(CheckResult::compare(
                "riesz_weak_norm_refinement",
                idx as u64,
                pair[1].relative_error,
                pair[0].relative_error,
                config.slack,
                note(pair[1].grid_size),
            ));
        }
        let last = rows.last().expect("nonempty schedule");
        results.push(CheckResult::compare(
            "riesz_weak_norm",
            idx as u64,
            last.relative_error,
            0.05,
            config.slack,
            note(last.grid_size),
        ));
    }
    Ok(())
}

fn run_trial(
    config: &SuiteConfig,
    grids: &Grids,
    instance: &Instance,
    trial: u64,
    rng: &mut ChaCha8Rng,
    results: &mut Vec<CheckResult>,
) -> Result<(), Error> {
    let table = &instance.table;
    let haar = &instance.haar;
    let n = table.n();
    let slack = config.slack;

    let f = random_function(rng, n);
    let phi = random_function(rng, n);
    let psi = random_function(rng, n);

    // convolution algebra: commutativity, associativity, Lebesgue bound
    let h = table.convolve(haar, &f, &phi)?;
    let h_swapped = table.convolve(haar, &phi, &f)?;
    results.push(CheckResult::compare(
        "conv_commutativity",
        trial,
        relative_gap(&h, &h_swapped),
        1e-10,
        slack,
        None,
    ));
    let left = table.convolve(haar, &h, &psi)?;
    let phi_psi = table.convolve(haar, &phi, &psi)?;
    let right = table.convolve(haar, &f, &phi_psi)?;
    results.push(CheckResult::compare(
        "conv_associativity",
        trial,
        relative_gap(&left, &right),
        1e-10,
        slack,
        None,
    ));
    for p in [1.0, 2.0, f64::INFINITY] {
        results.push(CheckResult::compare(
            "conv_lebesgue_bound",
            trial,
            lebesgue_norm(&h, haar, p)?,
            lebesgue_norm(&f, haar, p)? * lebesgue_norm(&phi, haar, 1.0)?,
            slack,
            Some(format!("p={p}")),
        ));
    }

    // sample points: breakpoints of every maximal function plus random
    // log-uniform t
    let f_max = maximal(&rearrangement(&distribution(&f, haar)));
    let phi_max = maximal(&rearrangement(&distribution(&phi, haar)));
    let h_max = maximal(&rearrangement(&distribution(&h, haar)));
    let ts = sample_ts(rng, config.t_samples, &[&f_max, &phi_max, &h_max]);

    results.extend(check_truncation_lemma(table, haar, &f, &phi, &ts, slack, trial)?);
    results.extend(check_oneil(table, haar, &f, &phi, &ts, slack, trial)?);

    let hardy_f = random_hardy_function(rng);
    for &(p, q) in &grids.hardy {
        results.push(check_hardy(&hardy_f, p, q, slack, trial)?);
    }

    let young = &grids.young[(trial % grids.young.len() as u64) as usize];
    results.push(check_young(table, haar, &f, &phi, young, slack, trial)?);

    // Lebesgue–Lorentz comparison and second-index embedding
    let p = grids.lebesgue_lorentz[(trial % grids.lebesgue_lorentz.len() as u64) as usize];
    let (pe, qe, re) = grids.embedding[(trial % grids.embedding.len() as u64) as usize];
    let gap = embedding_gap(&f, haar, p, (p / 2.0).max(1.25), p * 2.0)?;
    results.push(CheckResult::compare(
        "lorentz_lebesgue_lower",
        trial,
        gap.lebesgue,
        gap.lorentz_pp,
        slack,
        Some(format!("p={p}")),
    ));
    results.push(CheckResult::compare(
        "lorentz_lebesgue_upper",
        trial,
        gap.lorentz_pp,
        gap.p_conjugate * gap.lebesgue,
        slack,
        Some(format!("p={p}")),
    ));
    let emb = embedding_gap(&f, haar, pe, qe, re)?;
    results.push(CheckResult::compare(
        "lorentz_embedding",
        trial,
        emb.lorentz_pr,
        emb.embedding_constant * emb.lorentz_pq,
        slack,
        Some(format!("p={pe} q={qe} r={re}")),
    ));

    // fractional bounds on the growth-calibrated instance
    let (fp, theta, big_n, fq) =
        grids.fractional[(trial % grids.fractional.len() as u64) as usize];
    let alpha = theta * big_n / fp;
    let params = RieszParams::new(alpha, big_n)?;
    let space = GrowthSpace::calibrate(haar, table.identity(), 1.0, big_n)?;
    results.extend(check_fractional(
        table, haar, &space, &params, &f, &phi, fp, fq, slack, trial,
    )?);

    Ok(())
}

/// `max|a - b| / max(1, max|a|)`: scale-aware residual for algebra identities.
fn relative_gap(a: &SampledFunction, b: &SampledFunction) -> f64 {
    let scale = a.max_abs().max(1.0);
    a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
        / scale
}

fn random_function(rng: &mut ChaCha8Rng, n: usize) -> SampledFunction {
    let style: u32 = rng.gen_range(0..16);
    let values: Vec<f64> = match style {
        0 => vec![0.0; n],
        1..=6 => (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        7..=10 => (0..n)
            .map(|_| if rng.gen_bool(0.5) { 0.0 } else { rng.gen_range(-1.0..1.0) })
            .collect(),
        11..=13 => (0..n).map(|_| rng.gen_range(-3i32..=3) as f64).collect(),
        _ => (0..n)
            .map(|_| {
                let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                sign * 10f64.powf(rng.gen_range(-2.0..2.0))
            })
            .collect(),
    };
    SampledFunction::new(values).expect("generated values are finite")
}

fn random_hardy_function(rng: &mut ChaCha8Rng) -> PiecewiseConstant {
    let pieces: usize = rng.gen_range(1..=6);
    let mut starts = vec![0.0];
    let mut t = 0.0;
    for _ in 0..pieces {
        t += rng.gen_range(0.05..2.0);
        starts.push(t);
    }
    let mut values: Vec<f64> = (0..pieces)
        .map(|_| if rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(0.0..2.0) })
        .collect();
    values.push(0.0);
    PiecewiseConstant::new(starts, values).expect("generated pieces are valid")
}

fn sample_ts(rng: &mut ChaCha8Rng, count: usize, maxes: &[&MaximalFunction]) -> Vec<f64> {
    let mut ts: Vec<f64> = maxes
        .iter()
        .flat_map(|m| m.starts().iter().copied())
        .filter(|t| *t > 0.0)
        .collect();
    let hi = ts.iter().fold(1.0_f64, |m, t| m.max(*t)) * 10.0;
    let lo = ts.iter().fold(hi, |m, t| m.min(*t)).min(1.0) * 1e-3;
    for _ in 0..count {
        let u = rng.gen_range(lo.ln()..hi.ln());
        ts.push(u.exp());
    }
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    ts
}

fn summarize(config: &SuiteConfig, results: &[CheckResult]) -> Summary {
    let mut per_check: BTreeMap<String, CheckStats> = BTreeMap::new();
    let mut violations = 0;
    let mut vacuous = 0;
    for r in results {
        let stats = per_check.entry(r.check_name.clone()).or_insert(CheckStats {
            count: 0,
            violations: 0,
            vacuous: 0,
            max_ratio: 0.0,
        });
        stats.count += 1;
        if !r.pass {
            stats.violations += 1;
            violations += 1;
        }
        if r.vacuous {
            stats.vacuous += 1;
            vacuous += 1;
        }
        if r.ratio > stats.max_ratio {
            stats.max_ratio = r.ratio;
        }
    }
    Summary {
        trials: config.trials,
        checks: results.len() as u64,
        violations,
        vacuous,
        per_check,
    }
}
