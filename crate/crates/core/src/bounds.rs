//! β-power monogamy lower bounds evaluated on entanglement profiles.
//!
//! A profile holds pairwise values `e_i = E(ρ_{AB_i})` and tail values
//! `t_i = E(ρ_{A|B_i⋯B_{N−1}})` for `i = 1..N−1`, indexed from `B_1`.
//! Every chain family shares one shape: with head multipliers `a_i`
//! (`i ≤ m`) and tail multipliers `b_j` (`m < j ≤ N−2`),
//!
//! ```text
//! bound = Σ_{i=1}^{m} (Π_{l<i} a_l) e_i^β + (Π_{l≤m} a_l) (Σ_j b_j e_j^β + e_{N−1}^β)
//! ```
//!
//! | family      | a_i                          | b_j                          |
//! |-------------|------------------------------|------------------------------|
//! | `PowerSum`  | 1                            | 1                            |
//! | `HalfBeta`  | β/2                          | β/2                          |
//! | `Fei`       | 2^{β/2} − 1                  | 2^{β/2} − 1                  |
//! | `Ylm`       | ((1+k)^{β/2} − 1)/k^{β/2}    | same                         |
//! | `Tao`       | 2^{β/2} − (t_{i+1}/e_i)^β    | 2^{β/2} − (e_j/t_{j+1})^β    |
//! | `New`       | M − (t_{i+1}/e_i)^β          | M − (e_j/t_{j+1})^β          |
//!
//! where `M = ((1+k)^{β/2} − 1)/k^{β/2} + k^{β/2}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on squared-value hypothesis comparisons.
pub const CONDITION_TOL: f64 = 1e-12;
/// Tolerance on `t_{N−1} = e_{N−1}`.
pub const PROFILE_TAIL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    PowerSum,
    HalfBeta,
    Fei,
    Ylm,
    Tao,
    New,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::PowerSum,
        Family::HalfBeta,
        Family::Fei,
        Family::Ylm,
        Family::Tao,
        Family::New,
    ];

    pub fn min_beta(self) -> f64 {
        match self {
            Family::Tao | Family::New => 4.0,
            _ => 2.0,
        }
    }

    pub fn uses_k(self) -> bool {
        matches!(self, Family::Ylm | Family::New)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::PowerSum => "POWER_SUM",
            Family::HalfBeta => "HALF_BETA",
            Family::Fei => "FEI",
            Family::Ylm => "YLM",
            Family::Tao => "TAO",
            Family::New => "NEW",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == norm)
            .ok_or_else(|| Error::Domain(format!("unknown bound family '{s}'")))
    }
}

/// Which value chain bounds report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainMode {
    /// The full expansion of the recursive proof, including the leading
    /// `e_1^β` term.
    #[default]
    ProofChain,
    /// The displayed closed form without the leading `e_1^β` term.
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundSpec {
    pub family: Family,
    pub beta: f64,
    /// Only read by `Ylm` and `New`.
    pub k: f64,
    /// Split index: hypotheses of the head form hold for `i ≤ m`.
    pub m: usize,
}

impl BoundSpec {
    pub fn new(family: Family, beta: f64, k: f64, m: usize) -> Result<Self> {
        if !beta.is_finite() || beta < family.min_beta() {
            return Err(Error::Domain(format!(
                "{family} needs beta >= {}, got {beta}",
                family.min_beta()
            )));
        }
        if family.uses_k() && !(k > 0.0 && k <= 1.0) {
            return Err(Error::Domain(format!("{family} needs 0 < k <= 1, got {k}")));
        }
        Ok(Self { family, beta, k, m })
    }

    /// Spec with `m = 1`, the only split of a three-party profile.
    pub fn tripartite(family: Family, beta: f64, k: f64) -> Result<Self> {
        Self::new(family, beta, k, 1)
    }

    /// The scaling used in the family's ordering hypotheses.
    fn condition_k(&self) -> Option<f64> {
        match self.family {
            Family::PowerSum => None,
            Family::Ylm | Family::New => Some(self.k),
            _ => Some(1.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntanglementProfile {
    pairwise: Vec<f64>,
    tails: Vec<f64>,
}

impl EntanglementProfile {
    pub fn new(pairwise: Vec<f64>, tails: Vec<f64>) -> Result<Self> {
        if pairwise.len() < 2 {
            return Err(Error::Domain(format!(
                "profile needs at least two pairwise values, got {}",
                pairwise.len()
            )));
        }
        if tails.len() != pairwise.len() {
            return Err(Error::DimensionMismatch {
                expected: pairwise.len(),
                found: tails.len(),
            });
        }
        if pairwise
            .iter()
            .chain(&tails)
            .any(|x| !x.is_finite() || *x < 0.0)
        {
            return Err(Error::Domain(
                "profile entries must be finite and >= 0".into(),
            ));
        }
        let last = pairwise.len() - 1;
        if (tails[last] - pairwise[last]).abs() > PROFILE_TAIL_TOL {
            return Err(Error::Domain(format!(
                "last tail {} must equal last pairwise value {}",
                tails[last], pairwise[last]
            )));
        }
        Ok(Self { pairwise, tails })
    }

    /// Like `new`, additionally requiring `t_1² ≥ Σ e_i² − tol`.
    pub fn from_state(pairwise: Vec<f64>, tails: Vec<f64>, tol: f64) -> Result<Self> {
        let p = Self::new(pairwise, tails)?;
        if !p.satisfies_ckw(tol) {
            return Err(Error::Domain(
                "total is smaller than the squared pairwise sum allows".into(),
            ));
        }
        Ok(p)
    }

    /// Three-party profile `(e_AB, e_AC)` with total `E(A|BC)`.
    pub fn tripartite(e_ab: f64, e_ac: f64, total: f64) -> Result<Self> {
        Self::new(vec![e_ab, e_ac], vec![total, e_ac])
    }

    pub fn pairwise(&self) -> &[f64] {
        &self.pairwise
    }

    pub fn tails(&self) -> &[f64] {
        &self.tails
    }

    /// `E(A|B_1⋯B_{N−1})`
    pub fn total(&self) -> f64 {
        self.tails[0]
    }

    /// Number of pairwise values, `N − 1`.
    pub fn len(&self) -> usize {
        self.pairwise.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairwise.is_empty()
    }

    pub fn parties(&self) -> usize {
        self.pairwise.len() + 1
    }

    pub fn satisfies_ckw(&self, tol: f64) -> bool {
        let sum: f64 = self.pairwise.iter().map(|e| e * e).sum();
        self.total() * self.total() >= sum - tol
    }

    /// 1-based accessors.
    fn e(&self, i: usize) -> f64 {
        self.pairwise[i - 1]
    }

    fn t(&self, i: usize) -> f64 {
        self.tails[i - 1]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub family: Family,
    pub beta: f64,
    pub k: Option<f64>,
    pub m: Option<usize>,
    pub mode: ChainMode,
    pub value: f64,
    /// Multiplier of `e_i^β` for each pairwise entry.
    pub coefficients: Vec<f64>,
    pub conditions_ok: bool,
    /// Signed hypothesis slack for each index `1..=N−2`; empty when the
    /// family has no hypotheses.
    pub condition_details: Vec<f64>,
}

/// Per-index hypothesis slacks for the k-scaled ordering conditions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub k: f64,
    pub m: usize,
    /// Slack at indices `1..=N−2`: `k e_i² − t_{i+1}²` for `i ≤ m`,
    /// `k t_{j+1}² − e_j²` for `j > m`.
    pub slacks: Vec<f64>,
    pub ok: bool,
    /// Every split `m ∈ 0..=N−2` whose hypotheses hold.
    pub feasible_m: Vec<usize>,
}

fn check_unit_k(k: f64) -> Result<()> {
    if k > 0.0 && k <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("k = {k} outside (0, 1]")))
    }
}

/// `(1+t)^x − 1 − [((1+k)^x − 1)/k^x + k^x − t^x] t^x` without domain checks.
///
/// Evaluated as `((1+t)^x − 1) − ((1+k)^x − 1)(t/k)^x − (k^x − t^x) t^x`
/// so that `t = k` and `t = 0` give exactly zero.
pub fn lemma1_gap_unchecked(t: f64, k: f64, x: f64) -> f64 {
    let grow_t = (x * t.ln_1p()).exp_m1();
    let grow_k = (x * k.ln_1p()).exp_m1();
    let tx = t.powf(x);
    let kx = k.powf(x);
    let ratio = if t == k { 1.0 } else { (t / k).powf(x) };
    grow_t - grow_k * ratio - (kx - tx) * tx
}

/// Slack of the scalar inequality behind the new coefficient; nonnegative
/// for `0 ≤ t ≤ k ≤ 1`, `k > 0`, `x ≥ 2`.
pub fn lemma1_gap(t: f64, k: f64, x: f64) -> Result<f64> {
    check_unit_k(k)?;
    if !(x >= 2.0) {
        return Err(Error::Domain(format!("exponent x = {x} must be >= 2")));
    }
    if !(t >= 0.0 && t <= k) {
        return Err(Error::Domain(format!("t = {t} outside [0, k = {k}]")));
    }
    Ok(lemma1_gap_unchecked(t, k, x))
}

/// `f(x, y) = (1+y)^x − y^x + y^{−x}`, increasing in `y ≥ 1` for `x ≥ 2`.
pub fn lemma1_auxiliary(x: f64, y: f64) -> f64 {
    (1.0 + y).powf(x) - y.powf(x) + y.powf(-x)
}

/// `((1+k)^{β/2} − 1)/k^{β/2}`, the YLM weight.
pub fn ylm_weight(k: f64, beta: f64) -> f64 {
    let h = beta / 2.0;
    ((1.0 + k).powf(h) - 1.0) / k.powf(h)
}

/// `M = ((1+k)^{β/2} − 1)/k^{β/2} + k^{β/2}`.
pub fn coefficient_m(k: f64, beta: f64) -> Result<f64> {
    check_unit_k(k)?;
    if !(beta >= 4.0) {
        return Err(Error::Domain(format!("beta = {beta} must be >= 4")));
    }
    Ok(ylm_weight(k, beta) + k.powf(beta / 2.0))
}

/// `(num/den)^β`, zero when both vanish.
fn ratio_pow(num: f64, den: f64, beta: f64, what: &str) -> Result<f64> {
    if den == 0.0 {
        if num == 0.0 {
            Ok(0.0)
        } else {
            Err(Error::Infeasible(format!(
                "{what}: zero denominator with nonzero numerator {num}"
            )))
        }
    } else {
        Ok((num / den).powf(beta))
    }
}

fn check_tripartite_inputs(e_ab: f64, e_ac: f64) -> Result<()> {
    if !(e_ab >= 0.0 && e_ac >= 0.0) || !e_ab.is_finite() || !e_ac.is_finite() {
        return Err(Error::Domain(format!(
            "measure values must be finite and >= 0: ({e_ab}, {e_ac})"
        )));
    }
    Ok(())
}

/// `e_AB^β + [M − (e_AC/e_AB)^β] e_AC^β`, certified when `e_AC² ≤ k e_AB²`.
pub fn tripartite_new(e_ab: f64, e_ac: f64, k: f64, beta: f64) -> Result<BoundReport> {
    check_tripartite_inputs(e_ab, e_ac)?;
    let m = coefficient_m(k, beta)?;
    if e_ab == 0.0 && e_ac > 0.0 {
        return Err(Error::Infeasible(
            "e_AB = 0 with e_AC > 0 cannot satisfy e_AC² ≤ k e_AB²".into(),
        ));
    }
    let r = ratio_pow(e_ac, e_ab, beta, "e_AC/e_AB")?;
    let coef = m - r;
    let slack = k * e_ab * e_ab - e_ac * e_ac;
    Ok(BoundReport {
        family: Family::New,
        beta,
        k: Some(k),
        m: Some(1),
        mode: ChainMode::ProofChain,
        value: e_ab.powf(beta) + coef * e_ac.powf(beta),
        coefficients: vec![1.0, coef],
        conditions_ok: slack >= -CONDITION_TOL,
        condition_details: vec![slack],
    })
}

/// Three-party specialization of each family, written out directly.
pub fn tripartite_family(e_ab: f64, e_ac: f64, spec: &BoundSpec) -> Result<BoundReport> {
    let spec = BoundSpec::new(spec.family, spec.beta, spec.k, 1)?;
    if spec.family == Family::New {
        return tripartite_new(e_ab, e_ac, spec.k, spec.beta);
    }
    check_tripartite_inputs(e_ab, e_ac)?;
    let beta = spec.beta;
    let coef = match spec.family {
        Family::PowerSum => 1.0,
        Family::HalfBeta => beta / 2.0,
        Family::Fei => 2f64.powf(beta / 2.0) - 1.0,
        Family::Ylm => ylm_weight(spec.k, beta),
        Family::Tao => {
            if e_ab == 0.0 && e_ac > 0.0 {
                return Err(Error::Infeasible(
                    "e_AB = 0 with e_AC > 0 in the TAO ratio".into(),
                ));
            }
            2f64.powf(beta / 2.0) - ratio_pow(e_ac, e_ab, beta, "e_AC/e_AB")?
        }
        Family::New => unreachable!(),
    };
    let (ok, details) = match spec.condition_k() {
        None => (true, Vec::new()),
        Some(kc) => {
            let slack = kc * e_ab * e_ab - e_ac * e_ac;
            (slack >= -CONDITION_TOL, vec![slack])
        }
    };
    Ok(BoundReport {
        family: spec.family,
        beta,
        k: spec.family.uses_k().then_some(spec.k),
        m: Some(1),
        mode: ChainMode::ProofChain,
        value: e_ab.powf(beta) + coef * e_ac.powf(beta),
        coefficients: vec![1.0, coef],
        conditions_ok: ok,
        condition_details: details,
    })
}

fn condition_slacks(profile: &EntanglementProfile, kc: f64, m: usize) -> Vec<f64> {
    let last = profile.len(); // N − 1
    (1..last)
        .map(|i| {
            if i <= m {
                kc * profile.e(i).powi(2) - profile.t(i + 1).powi(2)
            } else {
                kc * profile.t(i + 1).powi(2) - profile.e(i).powi(2)
            }
        })
        .collect()
}

fn check_split(profile: &EntanglementProfile, m: usize) -> Result<()> {
    let max_m = profile.len() - 1;
    if m > max_m {
        return Err(Error::Domain(format!(
            "split m = {m} exceeds N − 2 = {max_m}"
        )));
    }
    Ok(())
}

/// Signed slacks of `k e_i² ≥ t_{i+1}²` (`i ≤ m`) and `e_j² ≤ k t_{j+1}²`
/// (`m < j ≤ N−2`), with the set of splits for which all hold.
pub fn check_conditions(
    profile: &EntanglementProfile,
    k: f64,
    m: usize,
) -> Result<ConditionReport> {
    check_unit_k(k)?;
    check_split(profile, m)?;
    let slacks = condition_slacks(profile, k, m);
    let ok = slacks.iter().all(|&s| s >= -CONDITION_TOL);
    let feasible_m = (0..profile.len())
        .filter(|&mm| {
            condition_slacks(profile, k, mm)
                .iter()
                .all(|&s| s >= -CONDITION_TOL)
        })
        .collect();
    Ok(ConditionReport {
        k,
        m,
        slacks,
        ok,
        feasible_m,
    })
}

/// Head multipliers `a_1..a_m` and tail multipliers `b_{m+1}..b_{N−2}`.
fn multipliers(profile: &EntanglementProfile, spec: &BoundSpec) -> Result<(Vec<f64>, Vec<f64>)> {
    let beta = spec.beta;
    let last = profile.len();
    let constant = |w: f64| (vec![w; spec.m], vec![w; last - 1 - spec.m]);
    let base = match spec.family {
        Family::PowerSum => return Ok(constant(1.0)),
        Family::HalfBeta => return Ok(constant(beta / 2.0)),
        Family::Fei => return Ok(constant(2f64.powf(beta / 2.0) - 1.0)),
        Family::Ylm => return Ok(constant(ylm_weight(spec.k, beta))),
        Family::Tao => 2f64.powf(beta / 2.0),
        Family::New => coefficient_m(spec.k, beta)?,
    };
    let head = (1..=spec.m)
        .map(|i| {
            ratio_pow(
                profile.t(i + 1),
                profile.e(i),
                beta,
                &format!("head index {i}"),
            )
            .map(|r| base - r)
        })
        .collect::<Result<Vec<_>>>()?;
    let tail = (spec.m + 1..last)
        .map(|j| {
            ratio_pow(
                profile.e(j),
                profile.t(j + 1),
                beta,
                &format!("tail index {j}"),
            )
            .map(|r| base - r)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((head, tail))
}

fn evaluate_chain(
    profile: &EntanglementProfile,
    spec: &BoundSpec,
    mode: ChainMode,
) -> Result<BoundReport> {
    let spec = BoundSpec::new(spec.family, spec.beta, spec.k, spec.m)?;
    check_split(profile, spec.m)?;
    if mode == ChainMode::Literal && spec.m == 0 {
        return Err(Error::Domain("the literal closed form needs m >= 1".into()));
    }
    let (head, tail) = multipliers(profile, &spec)?;
    let last = profile.len();

    let mut coefficients = Vec::with_capacity(last);
    let mut prefix = 1.0;
    for a in &head {
        coefficients.push(prefix);
        prefix *= a;
    }
    for b in &tail {
        coefficients.push(prefix * b);
    }
    coefficients.push(prefix);
    if mode == ChainMode::Literal {
        coefficients[0] = 0.0;
    }

    let value = coefficients
        .iter()
        .zip(profile.pairwise())
        .fold(0.0, |acc, (c, e)| acc + c * e.powf(spec.beta));

    let (conditions_ok, condition_details) = match spec.condition_k() {
        None => (true, Vec::new()),
        Some(kc) => {
            let slacks = condition_slacks(profile, kc, spec.m);
            (slacks.iter().all(|&s| s >= -CONDITION_TOL), slacks)
        }
    };
    Ok(BoundReport {
        family: spec.family,
        beta: spec.beta,
        k: spec.family.uses_k().then_some(spec.k),
        m: Some(spec.m),
        mode,
        value,
        coefficients,
        conditions_ok,
        condition_details,
    })
}

/// The new chained bound in its proof-chain form.
pub fn chain_new(profile: &EntanglementProfile, spec: &BoundSpec) -> Result<BoundReport> {
    chain_new_with_mode(profile, spec, ChainMode::ProofChain)
}

pub fn chain_new_with_mode(
    profile: &EntanglementProfile,
    spec: &BoundSpec,
    mode: ChainMode,
) -> Result<BoundReport> {
    if spec.family != Family::New {
        return Err(Error::Domain(format!(
            "chain_new expects family NEW, got {}",
            spec.family
        )));
    }
    evaluate_chain(profile, spec, mode)
}

/// Published chained bounds (`PowerSum`, `HalfBeta`, `Fei`, `Ylm`, `Tao`).
pub fn chain_prior(profile: &EntanglementProfile, spec: &BoundSpec) -> Result<BoundReport> {
    if spec.family == Family::New {
        return Err(Error::Domain("chain_prior does not evaluate NEW".into()));
    }
    evaluate_chain(profile, spec, ChainMode::ProofChain)
}

/// Any family on any profile.
pub fn evaluate(profile: &EntanglementProfile, spec: &BoundSpec) -> Result<BoundReport> {
    evaluate_chain(profile, spec, ChainMode::ProofChain)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn lemma1_examples() {
        assert_eq!(lemma1_gap(0.0, 0.7, 3.3).unwrap(), 0.0);
        assert_eq!(lemma1_gap(0.37, 0.37, 5.0).unwrap(), 0.0);
        // 1.96 − 1 − [(2.24/0.64) + 0.64 − 0.16]·0.16
        assert!(close(lemma1_gap(0.4, 0.8, 2.0).unwrap(), 0.3232, 1e-14));
    }

    #[test]
    fn lemma1_domain_errors() {
        assert!(lemma1_gap(0.5, 0.4, 2.0).is_err());
        assert!(lemma1_gap(0.1, 0.0, 2.0).is_err());
        assert!(lemma1_gap(0.1, 1.5, 2.0).is_err());
        assert!(lemma1_gap(0.1, 0.5, 1.9).is_err());
        assert!(lemma1_gap(-0.1, 0.5, 2.0).is_err());
    }

    #[test]
    fn coefficient_m_examples() {
        assert!(close(coefficient_m(1.0, 4.0).unwrap(), 4.0, 1e-15));
        assert!(close(coefficient_m(0.8, 4.0).unwrap(), 4.14, 1e-13));
        assert!(close(coefficient_m(0.8, 8.0).unwrap(), 23.5971, 1e-12));
        assert!(coefficient_m(0.8, 3.0).is_err());
        assert!(coefficient_m(1.2, 4.0).is_err());
    }

    #[test]
    fn tripartite_new_examples() {
        let r = tripartite_new(0.5, 1.0 / 8f64.sqrt(), 0.8, 4.0).unwrap();
        assert!(close(r.value, 0.12328125, 1e-15));
        assert!(r.conditions_ok);
        assert!(close(r.condition_details[0], 0.075, 1e-15));

        let r = tripartite_new(4.0 / 9.0, 2.0 * 3f64.sqrt() / 9.0, 0.8, 4.0).unwrap();
        let oracle = (16.0f64 / 81.0).powi(2) + (4.14 - 0.5625) * (12.0f64 / 81.0).powi(2);
        assert!(close(r.value, oracle, 1e-14));
        assert!(close(r.value, 0.117537, 1e-6));

        let r = tripartite_new(0.6, 0.0, 0.5, 6.0).unwrap();
        assert_eq!(r.value, 0.6f64.powf(6.0));
    }

    #[test]
    fn tripartite_zero_cases() {
        assert_eq!(tripartite_new(0.0, 0.0, 0.8, 4.0).unwrap().value, 0.0);
        assert!(matches!(
            tripartite_new(0.0, 0.1, 0.8, 4.0),
            Err(Error::Infeasible(_))
        ));
        let tao = BoundSpec::tripartite(Family::Tao, 4.0, 1.0).unwrap();
        assert!(tripartite_family(0.0, 0.1, &tao).is_err());
        assert!(tripartite_new(-0.1, 0.0, 0.8, 4.0).is_err());
    }

    #[test]
    fn tripartite_family_examples() {
        let (ab, ac) = (0.5, 1.0 / 8f64.sqrt());
        let fei = BoundSpec::tripartite(Family::Fei, 4.0, 1.0).unwrap();
        assert!(close(
            tripartite_family(ab, ac, &fei).unwrap().value,
            0.109375,
            1e-15
        ));
        let tao = BoundSpec::tripartite(Family::Tao, 4.0, 1.0).unwrap();
        assert!(close(
            tripartite_family(ab, ac, &tao).unwrap().value,
            0.12109375,
            1e-15
        ));
        let ylm = BoundSpec::tripartite(Family::Ylm, 4.0, 0.8).unwrap();
        assert!(close(
            tripartite_family(ab, ac, &ylm).unwrap().value,
            0.1171875,
            1e-15
        ));
        for f in Family::ALL {
            let spec = BoundSpec::tripartite(f, 6.0, 0.7).unwrap();
            assert_eq!(
                tripartite_family(0.3, 0.0, &spec).unwrap().value,
                0.3f64.powf(6.0)
            );
        }
    }

    #[test]
    fn spec_validation() {
        assert!(BoundSpec::new(Family::New, 3.9, 0.5, 1).is_err());
        assert!(BoundSpec::new(Family::Tao, 3.0, 1.0, 1).is_err());
        assert!(BoundSpec::new(Family::Fei, 2.0, 7.0, 1).is_ok());
        assert!(BoundSpec::new(Family::Ylm, 2.0, 0.0, 1).is_err());
        assert!(BoundSpec::new(Family::PowerSum, 1.5, 1.0, 0).is_err());
        assert_eq!("half_beta".parse::<Family>().unwrap(), Family::HalfBeta);
        assert!("bogus".parse::<Family>().is_err());
    }

    #[test]
    fn profile_validation() {
        assert!(EntanglementProfile::new(vec![0.5], vec![0.5]).is_err());
        assert!(EntanglementProfile::new(vec![0.5, 0.2], vec![0.6]).is_err());
        assert!(EntanglementProfile::new(vec![0.5, 0.2], vec![0.6, 0.3]).is_err());
        assert!(EntanglementProfile::new(vec![0.5, -0.2], vec![0.6, -0.2]).is_err());
        assert!(EntanglementProfile::from_state(vec![0.5, 0.5], vec![0.6, 0.5], 1e-9).is_err());
        assert!(EntanglementProfile::from_state(vec![0.5, 0.5], vec![0.8, 0.5], 1e-9).is_ok());
    }

    #[test]
    fn chain_of_length_one_is_tripartite() {
        let p = EntanglementProfile::tripartite(0.5, 0.3, 0.7).unwrap();
        let spec = BoundSpec::new(Family::New, 5.0, 0.6, 1).unwrap();
        let chain = chain_new(&p, &spec).unwrap();
        let tri = tripartite_new(0.5, 0.3, 0.6, 5.0).unwrap();
        assert_eq!(chain.value, tri.value);
        assert_eq!(chain.coefficients, tri.coefficients);
    }

    #[test]
    fn literal_mode_drops_leading_term() {
        let p = EntanglementProfile::new(vec![0.8, 0.5, 0.3], vec![0.99, 0.55, 0.3]).unwrap();
        let spec = BoundSpec::new(Family::New, 4.0, 1.0, 1).unwrap();
        let full = chain_new(&p, &spec).unwrap();
        let lit = chain_new_with_mode(&p, &spec, ChainMode::Literal).unwrap();
        assert!(close(full.value - lit.value, 0.8f64.powi(4), 1e-15));
        let m0 = BoundSpec::new(Family::New, 4.0, 1.0, 0).unwrap();
        assert!(chain_new_with_mode(&p, &m0, ChainMode::Literal).is_err());
    }

    #[test]
    fn chain_family_guards() {
        let p = EntanglementProfile::tripartite(0.5, 0.3, 0.7).unwrap();
        let new = BoundSpec::new(Family::New, 4.0, 1.0, 1).unwrap();
        let fei = BoundSpec::new(Family::Fei, 4.0, 1.0, 1).unwrap();
        assert!(chain_prior(&p, &new).is_err());
        assert!(chain_new(&p, &fei).is_err());
        let too_far = BoundSpec::new(Family::New, 4.0, 1.0, 2).unwrap();
        assert!(chain_new(&p, &too_far).is_err());
    }

    #[test]
    fn chain_zero_denominators() {
        // e_1 = 0 with t_2 > 0 in a head step
        let p = EntanglementProfile::new(vec![0.0, 0.3, 0.2], vec![0.5, 0.4, 0.2]).unwrap();
        let spec = BoundSpec::new(Family::New, 4.0, 1.0, 1).unwrap();
        assert!(matches!(chain_new(&p, &spec), Err(Error::Infeasible(_))));
        // t_3 = 0 with e_2 > 0 in a tail step
        let p = EntanglementProfile::new(vec![0.6, 0.3, 0.0], vec![0.7, 0.3, 0.0]).unwrap();
        let spec = BoundSpec::new(Family::New, 4.0, 1.0, 1).unwrap();
        assert!(matches!(chain_new(&p, &spec), Err(Error::Infeasible(_))));
        // both zero contributes nothing
        let p = EntanglementProfile::new(vec![0.6, 0.0, 0.0], vec![0.6, 0.0, 0.0]).unwrap();
        let r = chain_new(&p, &spec).unwrap();
        assert_eq!(r.value, 0.6f64.powi(4));
    }

    #[test]
    fn conditions_example1_and_boundary() {
        let p = EntanglementProfile::tripartite(0.5, 1.0 / 8f64.sqrt(), 1.0 / 2f64.sqrt()).unwrap();
        let r = check_conditions(&p, 0.8, 1).unwrap();
        assert!(r.ok);
        assert!(close(r.slacks[0], 0.075, 1e-15));

        let p = EntanglementProfile::new(vec![0.5, 0.4, 0.3], vec![0.9, 0.4, 0.3]).unwrap();
        // e_1 = t_2 and e_2 > t_3 are boundary-equal only at index 1
        let r = check_conditions(&p, 1.0, 1).unwrap();
        assert_eq!(r.slacks[0], 0.5 * 0.5 - 0.4 * 0.4);
        let eq = EntanglementProfile::new(vec![0.5, 0.5, 0.5], vec![0.9, 0.5, 0.5]).unwrap();
        let r = check_conditions(&eq, 1.0, 2).unwrap();
        assert!(r.ok && r.slacks.iter().all(|&s| s == 0.0));
        assert_eq!(r.feasible_m, vec![0, 1, 2]);
    }

    #[test]
    fn conditions_violating_both_orderings() {
        // at index 1: 0.5·e² < t² and e² > 0.5·t²
        let p = EntanglementProfile::new(vec![0.5, 0.5, 0.3], vec![0.9, 0.5, 0.3]).unwrap();
        let r = check_conditions(&p, 0.5, 1).unwrap();
        assert!(!r.ok);
        assert!(r.feasible_m.is_empty());
        let spec = BoundSpec::new(Family::New, 4.0, 0.5, 1).unwrap();
        let report = chain_new(&p, &spec).unwrap();
        assert!(!report.conditions_ok);
        assert!(report.value.is_finite());
    }

    #[test]
    fn value_is_coefficient_dot_powers() {
        let p = EntanglementProfile::new(vec![0.7, 0.4, 0.3, 0.2], vec![0.95, 0.55, 0.35, 0.2])
            .unwrap();
        for f in Family::ALL {
            for m in 0..=3 {
                let spec = BoundSpec::new(f, 4.5, 0.9, m).unwrap();
                let r = evaluate(&p, &spec).unwrap();
                let dot: f64 = r
                    .coefficients
                    .iter()
                    .zip(p.pairwise())
                    .map(|(c, e)| c * e.powf(4.5))
                    .sum();
                assert!(close(r.value, dot, 1e-12), "{f} m={m}");
            }
        }
    }

    #[test]
    fn prior_weights_follow_published_pattern() {
        // N = 5: e_1, h e_2, h^{m+1} e_3, h^m e_4 with m = 2
        let p =
            EntanglementProfile::new(vec![0.9, 0.5, 0.3, 0.2], vec![0.99, 0.6, 0.4, 0.2]).unwrap();
        let spec = BoundSpec::new(Family::HalfBeta, 6.0, 1.0, 2).unwrap();
        let r = chain_prior(&p, &spec).unwrap();
        assert_eq!(r.coefficients, vec![1.0, 3.0, 27.0, 9.0]);
        let spec = BoundSpec::new(Family::PowerSum, 2.0, 1.0, 2).unwrap();
        let r = chain_prior(&p, &spec).unwrap();
        assert_eq!(r.coefficients, vec![1.0; 4]);
        assert!(r.conditions_ok && r.condition_details.is_empty());
    }
}
