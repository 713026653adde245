//! Random states, verification campaigns and figure tables.
//!
//! Campaigns split their samples into fixed-size shards. Shard `s` draws
//! from ChaCha8 stream `s` of the configured seed, and shard summaries are
//! merged in shard order, so results do not depend on the worker count.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    evaluate, lemma1_gap, lemma1_gap_unchecked, tripartite_family, tripartite_new, BoundSpec,
    EntanglementProfile, Family,
};
use crate::error::{Error, Result};
use crate::gsd::{gsd_numeric_measures, sample_params};
use crate::measures::PureState;

/// Samples per shard.
pub const SHARD_SIZE: usize = 50;
/// Environment override for the campaign worker count.
pub const THREADS_ENV: &str = "MONOGAMY_THREADS";

/// Evenly spaced or explicit parameter values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Grid {
    Range { min: f64, max: f64, step: f64 },
    List(Vec<f64>),
}

impl Grid {
    pub fn range(min: f64, max: f64, step: f64) -> Result<Self> {
        let g = Grid::Range { min, max, step };
        g.validate()?;
        Ok(g)
    }

    pub fn single(x: f64) -> Self {
        Grid::List(vec![x])
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Grid::Range { min, max, step } => {
                if !(min.is_finite() && max.is_finite() && step.is_finite()) {
                    return Err(Error::Config("grid bounds must be finite".into()));
                }
                if !(step > 0.0) {
                    return Err(Error::Config(format!("grid step {step} must be > 0")));
                }
                if min > max {
                    return Err(Error::Config(format!("grid min {min} > max {max}")));
                }
                Ok(())
            }
            Grid::List(ref xs) => {
                if xs.is_empty() {
                    return Err(Error::Config("empty grid".into()));
                }
                if xs.iter().any(|x| !x.is_finite()) {
                    return Err(Error::Config("grid values must be finite".into()));
                }
                Ok(())
            }
        }
    }

    /// Grid values in order. A range includes both endpoints; the last
    /// point is `max` exactly when `(max − min)/step` is integral.
    pub fn points(&self) -> Vec<f64> {
        match *self {
            Grid::Range { min, max, step } => {
                let span = (max - min) / step;
                let n = (span + 1e-9).floor() as usize;
                let hits_max = (span - span.round()).abs() < 1e-9;
                (0..=n)
                    .map(|i| {
                        if i == n && hits_max {
                            max
                        } else {
                            min + step * i as f64
                        }
                    })
                    .collect()
            }
            Grid::List(ref xs) => xs.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub seed: u64,
    pub sample_count: usize,
    /// β values; the lemma scan reads it as the exponent `x`.
    pub beta_grid: Grid,
    pub k_grid: Grid,
    pub tolerance: f64,
    /// Points per `k` on `t ∈ [0, k]` in the lemma scan.
    pub t_points: usize,
    /// Report only; hypotheses are not enforced and violations do not fail.
    pub exploratory: bool,
}

impl CampaignConfig {
    pub fn ckw(seed: u64, sample_count: usize) -> Self {
        Self {
            seed,
            sample_count,
            beta_grid: Grid::single(2.0),
            k_grid: Grid::single(1.0),
            tolerance: 1e-9,
            t_points: 0,
            exploratory: false,
        }
    }

    /// `x ∈ [2, 12]` step 0.1, `k ∈ [0.01, 1]` step 0.01, 101 `t` per `k`.
    pub fn lemma_default() -> Self {
        Self {
            seed: 0,
            sample_count: 1,
            beta_grid: Grid::Range {
                min: 2.0,
                max: 12.0,
                step: 0.1,
            },
            k_grid: Grid::Range {
                min: 0.01,
                max: 1.0,
                step: 0.01,
            },
            tolerance: 1e-12,
            t_points: 101,
            exploratory: false,
        }
    }

    /// β ∈ {4, 6, 8}, k ∈ {0.2, 0.5, 0.8, 1.0}.
    pub fn validity(seed: u64, sample_count: usize) -> Self {
        Self {
            seed,
            sample_count,
            beta_grid: Grid::List(vec![4.0, 6.0, 8.0]),
            k_grid: Grid::List(vec![0.2, 0.5, 0.8, 1.0]),
            tolerance: 1e-9,
            t_points: 0,
            exploratory: false,
        }
    }

    pub fn dominance(seed: u64, sample_count: usize) -> Self {
        Self {
            tolerance: 1e-12,
            ..Self::validity(seed, sample_count)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sample_count == 0 {
            return Err(Error::Config("sample_count must be >= 1".into()));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::Config(format!(
                "tolerance {} must be > 0",
                self.tolerance
            )));
        }
        self.beta_grid.validate()?;
        self.k_grid.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CampaignKind {
    Ckw,
    Lemma,
    Validity,
    Dominance,
}

impl FromStr for CampaignKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ckw" => Ok(Self::Ckw),
            "lemma" => Ok(Self::Lemma),
            "validity" => Ok(Self::Validity),
            "dominance" => Ok(Self::Dominance),
            other => Err(Error::Config(format!("unknown campaign kind '{other}'"))),
        }
    }
}

/// The input that produced the smallest slack, replayable on its own.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WorstCase {
    pub slack: f64,
    pub check: String,
    pub inputs: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignResult {
    pub kind: CampaignKind,
    pub family: Option<Family>,
    pub seed: u64,
    pub tolerance: f64,
    pub exploratory: bool,
    pub checked: usize,
    pub violations: usize,
    pub min_slack: Option<f64>,
    pub worst_case: Option<WorstCase>,
}

impl CampaignResult {
    /// No violations, or exploratory mode.
    pub fn passed(&self) -> bool {
        self.exploratory || self.violations == 0
    }
}

#[derive(Debug, Clone, Default)]
struct Tally {
    checked: usize,
    violations: usize,
    worst: Option<WorstCase>,
}

impl Tally {
    fn observe(
        &mut self,
        slack: f64,
        tolerance: f64,
        check: &str,
        inputs: impl FnOnce() -> BTreeMap<String, f64>,
    ) {
        self.checked += 1;
        if !(slack >= -tolerance) {
            self.violations += 1;
        }
        let better = match &self.worst {
            None => true,
            Some(w) => slack < w.slack || (slack.is_nan() && !w.slack.is_nan()),
        };
        if better {
            self.worst = Some(WorstCase {
                slack,
                check: check.to_string(),
                inputs: inputs(),
            });
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.violations += other.violations;
        if let Some(w) = other.worst {
            let replace = match &self.worst {
                None => true,
                Some(cur) => w.slack < cur.slack,
            };
            if replace {
                self.worst = Some(w);
            }
        }
        self
    }

    fn finish(
        self,
        kind: CampaignKind,
        family: Option<Family>,
        cfg: &CampaignConfig,
    ) -> CampaignResult {
        CampaignResult {
            kind,
            family,
            seed: cfg.seed,
            tolerance: cfg.tolerance,
            exploratory: cfg.exploratory,
            checked: self.checked,
            violations: self.violations,
            min_slack: self.worst.as_ref().map(|w| w.slack),
            worst_case: self.worst,
        }
    }
}

/// Worker count from `MONOGAMY_THREADS`, else the available parallelism.
pub fn worker_count() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

fn shard_rng(seed: u64, shard: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard as u64);
    rng
}

/// Runs `job(shard_index)` for every shard on `threads` workers and merges
/// the tallies in shard order.
fn run_shards<F>(shards: usize, threads: usize, job: F) -> Result<Tally>
where
    F: Fn(usize) -> Result<Tally> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let tallies: Vec<Result<Tally>> =
        pool.install(|| (0..shards).into_par_iter().map(&job).collect());
    tallies
        .into_iter()
        .try_fold(Tally::default(), |acc, t| Ok(acc.merge(t?)))
}

fn sample_shards(cfg: &CampaignConfig) -> usize {
    cfg.sample_count.div_ceil(SHARD_SIZE)
}

fn shard_range(cfg: &CampaignConfig, shard: usize) -> std::ops::Range<usize> {
    let start = shard * SHARD_SIZE;
    start..(start + SHARD_SIZE).min(cfg.sample_count)
}

/// Haar-random pure state: i.i.d. complex Gaussian amplitudes, normalized.
pub fn sample_haar_pure<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<PureState> {
    if !(2..=5).contains(&n_qubits) {
        return Err(Error::Unsupported(format!(
            "Haar sampling supports 2..=5 qubits, got {n_qubits}"
        )));
    }
    let amps: Vec<Complex64> = (0..1usize << n_qubits)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    PureState::normalized(amps)
}

fn named(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// `C²_{A|BC} − C²_{AB} − C²_{AC}` over Haar-random three-qubit states.
pub fn run_ckw_campaign(cfg: &CampaignConfig) -> Result<CampaignResult> {
    run_ckw_campaign_with_threads(cfg, worker_count())
}

pub fn run_ckw_campaign_with_threads(
    cfg: &CampaignConfig,
    threads: usize,
) -> Result<CampaignResult> {
    cfg.validate()?;
    let tally = run_shards(sample_shards(cfg), threads, |shard| {
        let mut rng = shard_rng(cfg.seed, shard);
        let mut tally = Tally::default();
        for sample in shard_range(cfg, shard) {
            let psi = sample_haar_pure(3, &mut rng)?;
            let m = crate::gsd::tripartite_concurrences(&psi, 1, 2)?;
            tally.observe(m.ckw_slack(), cfg.tolerance, "ckw", || {
                let mut inputs = named(&[
                    ("shard", shard as f64),
                    ("sample", sample as f64),
                    ("c_ab", m.c_ab),
                    ("c_ac", m.c_ac),
                    ("c_a_bc", m.c_a_bc),
                ]);
                for (i, a) in psi.amplitudes().iter().enumerate() {
                    inputs.insert(format!("amp{i}_re"), a.re);
                    inputs.insert(format!("amp{i}_im"), a.im);
                }
                inputs
            });
        }
        Ok(tally)
    })?;
    Ok(tally.finish(CampaignKind::Ckw, None, cfg))
}

/// Minimum scalar-inequality gap over the `(x, k, t)` grid, with `x` from
/// `beta_grid`.
pub fn run_lemma_scan(cfg: &CampaignConfig) -> Result<CampaignResult> {
    run_lemma_scan_with_threads(cfg, worker_count())
}

pub fn run_lemma_scan_with_threads(cfg: &CampaignConfig, threads: usize) -> Result<CampaignResult> {
    cfg.validate()?;
    if cfg.t_points < 2 {
        return Err(Error::Config("lemma scan needs t_points >= 2".into()));
    }
    let xs = cfg.beta_grid.points();
    let ks = cfg.k_grid.points();
    if !cfg.exploratory {
        if let Some(x) = xs.iter().find(|&&x| x < 2.0) {
            return Err(Error::Config(format!(
                "x = {x} below 2 needs exploratory mode"
            )));
        }
    }
    let last = cfg.t_points - 1;
    let tally = run_shards(xs.len(), threads, |row| {
        let x = xs[row];
        let mut tally = Tally::default();
        for &k in &ks {
            for i in (0..=last).rev() {
                let t = k * (i as f64 / last as f64);
                let gap = if cfg.exploratory {
                    lemma1_gap_unchecked(t, k, x)
                } else {
                    lemma1_gap(t, k, x)?
                };
                tally.observe(gap, cfg.tolerance, "lemma1", || {
                    named(&[("x", x), ("k", k), ("t", t), ("t_index", i as f64)])
                });
            }
        }
        Ok(tally)
    })?;
    Ok(tally.finish(CampaignKind::Lemma, None, cfg))
}

/// `truth^β − bound` over random GSD states and the `(β, k)` grid, where
/// the family's hypotheses hold. Both pair orderings are tried.
pub fn run_bound_validity(cfg: &CampaignConfig, family: Family) -> Result<CampaignResult> {
    run_bound_validity_with_threads(cfg, family, worker_count())
}

pub fn run_bound_validity_with_threads(
    cfg: &CampaignConfig,
    family: Family,
    threads: usize,
) -> Result<CampaignResult> {
    cfg.validate()?;
    let betas = cfg.beta_grid.points();
    let ks = cfg.k_grid.points();
    let tally = run_shards(sample_shards(cfg), threads, |shard| {
        let mut rng = shard_rng(cfg.seed, shard);
        let mut tally = Tally::default();
        for sample in shard_range(cfg, shard) {
            let params = sample_params(&mut rng);
            let m = gsd_numeric_measures(&params)?;
            for &beta in &betas {
                for &k in &ks {
                    let Ok(spec) = BoundSpec::tripartite(family, beta, k) else {
                        continue;
                    };
                    for (swap, (e1, e2)) in
                        [(m.c_ab, m.c_ac), (m.c_ac, m.c_ab)].into_iter().enumerate()
                    {
                        let Ok(report) = tripartite_family(e1, e2, &spec) else {
                            continue;
                        };
                        if !report.conditions_ok && !cfg.exploratory {
                            continue;
                        }
                        let slack = m.c_a_bc.powf(beta) - report.value;
                        tally.observe(slack, cfg.tolerance, family.name(), || {
                            let l = params.lambdas();
                            named(&[
                                ("shard", shard as f64),
                                ("sample", sample as f64),
                                ("lambda0", l[0]),
                                ("lambda1", l[1]),
                                ("lambda2", l[2]),
                                ("lambda3", l[3]),
                                ("lambda4", l[4]),
                                ("phi", params.phi()),
                                ("beta", beta),
                                ("k", k),
                                ("swapped", swap as f64),
                                ("bound", report.value),
                            ])
                        });
                    }
                }
            }
        }
        Ok(tally)
    })?;
    Ok(tally.finish(CampaignKind::Validity, Some(family), cfg))
}

/// Profile with `len` pairwise entries satisfying the k-scaled hypotheses
/// for split `m` and the aggregate `t_j² ≥ e_j² + t_{j+1}²`, scaled so the
/// total is at most one.
pub fn random_feasible_profile<R: Rng + ?Sized>(
    rng: &mut R,
    len: usize,
    k: f64,
    m: usize,
) -> Result<EntanglementProfile> {
    if len < 2 || m > len - 1 {
        return Err(Error::Domain(format!(
            "no split m = {m} for {len} pairwise values"
        )));
    }
    if !(k > 0.0 && k <= 1.0) {
        return Err(Error::Domain(format!("k = {k} outside (0, 1]")));
    }
    let mut e = vec![0.0; len];
    let mut t = vec![0.0; len];
    let first = rng.random_range(0.2..1.0);
    e[len - 1] = first;
    t[len - 1] = first;
    for j in (0..len - 1).rev() {
        let next = t[j + 1];
        // 1-based index j + 1 is a head step iff j + 1 <= m
        e[j] = if j < m {
            next / k.sqrt() * (1.0 + rng.random::<f64>())
        } else {
            k.sqrt() * next * rng.random::<f64>()
        };
        t[j] = (e[j] * e[j] + next * next).sqrt() * (1.0 + 0.2 * rng.random::<f64>());
    }
    let scale = rng.random_range(0.5..=1.0) / t[0];
    for x in e.iter_mut().chain(t.iter_mut()) {
        *x *= scale;
    }
    t[len - 1] = e[len - 1];
    EntanglementProfile::new(e, t)
}

fn dominance_checks(
    tally: &mut Tally,
    profile: &EntanglementProfile,
    beta: f64,
    k: f64,
    m: usize,
    tolerance: f64,
    context: &dyn Fn() -> BTreeMap<String, f64>,
) -> Result<()> {
    let eval = |family: Family, kk: f64| -> Option<crate::bounds::BoundReport> {
        BoundSpec::new(family, beta, kk, m)
            .and_then(|s| evaluate(profile, &s))
            .ok()
    };
    let (Some(new), Some(tao), Some(ylm), Some(fei), Some(power)) = (
        eval(Family::New, k),
        eval(Family::Tao, k),
        eval(Family::Ylm, k),
        eval(Family::Fei, k),
        eval(Family::PowerSum, k),
    ) else {
        return Ok(());
    };
    let with = |extra: &[(&str, f64)]| {
        let mut c = context();
        c.extend(named(extra));
        c
    };
    if new.conditions_ok {
        tally.observe(new.value - tao.value, tolerance, "NEW>=TAO", || {
            with(&[
                ("beta", beta),
                ("k", k),
                ("m", m as f64),
                ("new", new.value),
                ("tao", tao.value),
            ])
        });
        tally.observe(new.value - ylm.value, tolerance, "NEW>=YLM", || {
            with(&[
                ("beta", beta),
                ("k", k),
                ("m", m as f64),
                ("new", new.value),
                ("ylm", ylm.value),
            ])
        });
    }
    if tao.conditions_ok {
        tally.observe(tao.value - fei.value, tolerance, "TAO>=FEI", || {
            with(&[
                ("beta", beta),
                ("m", m as f64),
                ("tao", tao.value),
                ("fei", fei.value),
            ])
        });
    }
    if fei.conditions_ok {
        tally.observe(fei.value - power.value, tolerance, "FEI>=POWER_SUM", || {
            with(&[
                ("beta", beta),
                ("m", m as f64),
                ("fei", fei.value),
                ("power_sum", power.value),
            ])
        });
    }
    if let Some(new1) = eval(Family::New, 1.0) {
        let diff = (new1.value - tao.value).abs();
        tally.observe(-diff, tolerance, "NEW(k=1)==TAO", || {
            with(&[
                ("beta", beta),
                ("m", m as f64),
                ("new_k1", new1.value),
                ("tao", tao.value),
            ])
        });
    }
    Ok(())
}

/// Pairwise family ordering on GSD states (three parties) and random
/// feasible chain profiles (four to six parties).
pub fn run_dominance(cfg: &CampaignConfig) -> Result<CampaignResult> {
    run_dominance_with_threads(cfg, worker_count())
}

pub fn run_dominance_with_threads(cfg: &CampaignConfig, threads: usize) -> Result<CampaignResult> {
    cfg.validate()?;
    let betas: Vec<f64> = cfg
        .beta_grid
        .points()
        .into_iter()
        .filter(|&b| b >= 4.0)
        .collect();
    if betas.is_empty() {
        return Err(Error::Config("dominance needs some beta >= 4".into()));
    }
    let ks = cfg.k_grid.points();
    let tally = run_shards(sample_shards(cfg), threads, |shard| {
        let mut rng = shard_rng(cfg.seed, shard);
        let mut tally = Tally::default();
        for sample in shard_range(cfg, shard) {
            let params = sample_params(&mut rng);
            let g = gsd_numeric_measures(&params)?;
            let len = rng.random_range(3..=5);
            let m = rng.random_range(0..len);
            let k_profile = ks[rng.random_range(0..ks.len())];
            let chain = random_feasible_profile(&mut rng, len, k_profile, m)?;
            for (swap, (e1, e2)) in [(g.c_ab, g.c_ac), (g.c_ac, g.c_ab)].into_iter().enumerate() {
                let tri = EntanglementProfile::tripartite(e1, e2, g.c_a_bc)?;
                for &beta in &betas {
                    for &k in &ks {
                        let ctx = || {
                            let l = params.lambdas();
                            named(&[
                                ("shard", shard as f64),
                                ("sample", sample as f64),
                                ("lambda0", l[0]),
                                ("lambda1", l[1]),
                                ("lambda2", l[2]),
                                ("lambda3", l[3]),
                                ("lambda4", l[4]),
                                ("phi", params.phi()),
                                ("swapped", swap as f64),
                            ])
                        };
                        dominance_checks(&mut tally, &tri, beta, k, 1, cfg.tolerance, &ctx)?;
                    }
                }
            }
            for &beta in &betas {
                let ctx = || {
                    let mut c = named(&[
                        ("shard", shard as f64),
                        ("sample", sample as f64),
                        ("profile_k", k_profile),
                    ]);
                    for (i, (e, t)) in chain.pairwise().iter().zip(chain.tails()).enumerate() {
                        c.insert(format!("e{}", i + 1), *e);
                        c.insert(format!("t{}", i + 1), *t);
                    }
                    c
                };
                dominance_checks(&mut tally, &chain, beta, k_profile, m, cfg.tolerance, &ctx)?;
            }
        }
        Ok(tally)
    })?;
    Ok(tally.finish(CampaignKind::Dominance, None, cfg))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Figure {
    Fig1,
    Fig2,
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig1" => Ok(Figure::Fig1),
            "fig2" => Ok(Figure::Fig2),
            other => Err(Error::Config(format!("unknown figure '{other}'"))),
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
        })
    }
}

pub const DEFAULT_FIGURE_K: f64 = 0.8;

pub fn default_beta_grid() -> Grid {
    Grid::Range {
        min: 4.0,
        max: 12.0,
        step: 0.05,
    }
}

/// Published measure values the figures are drawn from: concurrences
/// `(1/2, 1/(2√2))` with total `√2/2` for the first, CREN values
/// `(4/9, 2√3/9)` with total `2√10/9` for the second.
pub fn figure_profile(which: Figure) -> EntanglementProfile {
    let (ab, ac, total) = match which {
        Figure::Fig1 => (0.5, 1.0 / (2.0 * 2f64.sqrt()), 2f64.sqrt() / 2.0),
        Figure::Fig2 => (4.0 / 9.0, 2.0 * 3f64.sqrt() / 9.0, 2.0 * 10f64.sqrt() / 9.0),
    };
    EntanglementProfile::tripartite(ab, ac, total).expect("valid published profile")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundRow {
    pub beta: f64,
    pub ylm: f64,
    pub fei: f64,
    pub tao: f64,
    pub new: f64,
    pub truth: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundTable {
    pub rows: Vec<BoundRow>,
}

pub const TABLE_HEADER: &str = "beta,ylm,fei,tao,new,truth";

/// Decimal rendering with 12 significant digits.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() {
            "0".into()
        } else {
            x.to_string()
        };
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (11 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

impl BoundTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(TABLE_HEADER);
        out.push('\n');
        for r in &self.rows {
            let cells = [r.beta, r.ylm, r.fei, r.tao, r.new, r.truth].map(format_sig12);
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Tripartite bounds of every plotted family for one profile across β.
pub fn profile_table(
    profile: &EntanglementProfile,
    k: f64,
    beta_grid: &Grid,
) -> Result<BoundTable> {
    beta_grid.validate()?;
    if profile.len() != 2 {
        return Err(Error::Unsupported(
            "bound tables are defined for three-party profiles".into(),
        ));
    }
    let (ab, ac) = (profile.pairwise()[0], profile.pairwise()[1]);
    let rows = beta_grid
        .points()
        .into_iter()
        .map(|beta| {
            let value = |family| {
                BoundSpec::tripartite(family, beta, k)
                    .and_then(|s| tripartite_family(ab, ac, &s))
                    .map(|r| r.value)
            };
            Ok(BoundRow {
                beta,
                ylm: value(Family::Ylm)?,
                fei: value(Family::Fei)?,
                tao: value(Family::Tao)?,
                new: tripartite_new(ab, ac, k, beta)?.value,
                truth: profile.total().powf(beta),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundTable { rows })
}

pub fn reproduce_figure(which: Figure, k: f64, beta_grid: &Grid) -> Result<BoundTable> {
    profile_table(&figure_profile(which), k, beta_grid)
}
