//! The five-parameter generalized Schmidt decomposition family of
//! three-qubit pure states,
//!
//! `λ0|000> + λ1 e^{iφ}|100> + λ2|101> + λ3|110> + λ4|111>`,
//!
//! with closed-form concurrences used as ground truth for the numeric
//! pipeline.
//!
//! Party labels: A is qubit 0 (the leftmost ket position). The closed
//! forms `C_AB = 2λ0λ2` and `C_AC = 2λ0λ3` pair A with the rightmost ket
//! position for B, so `PARTY_B = 2` and `PARTY_C = 1`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{
    concurrence_from_factor, concurrence_pure, negativity_pure, Bipartition, PureState,
};

pub const PARTY_A: usize = 0;
pub const PARTY_B: usize = 2;
pub const PARTY_C: usize = 1;

/// Tolerance on `Σλᵢ² = 1`.
pub const PARAM_NORM_TOL: f64 = 1e-12;

/// Default retry cap for conditional sampling.
pub const DEFAULT_RETRY_CAP: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchmidtParams {
    lambdas: [f64; 5],
    phi: f64,
}

impl SchmidtParams {
    pub fn new(lambdas: [f64; 5], phi: f64) -> Result<Self> {
        if lambdas.iter().any(|l| !l.is_finite() || *l < 0.0) {
            return Err(Error::Domain(format!(
                "Schmidt coefficients must be finite and nonnegative: {lambdas:?}"
            )));
        }
        if !phi.is_finite() {
            return Err(Error::Domain("phase must be finite".into()));
        }
        let norm_sqr: f64 = lambdas.iter().map(|l| l * l).sum();
        if (norm_sqr - 1.0).abs() > PARAM_NORM_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self {
            lambdas,
            phi: phi.rem_euclid(TAU),
        })
    }

    /// Rescales the coefficients to unit norm after checking they are
    /// within `tol` of it.
    pub fn normalized(lambdas: [f64; 5], phi: f64, tol: f64) -> Result<Self> {
        let norm_sqr: f64 = lambdas.iter().map(|l| l * l).sum();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > tol || norm_sqr == 0.0 {
            return Err(Error::NotNormalized { norm_sqr });
        }
        let norm = norm_sqr.sqrt();
        let mut scaled = lambdas;
        for l in &mut scaled {
            *l /= norm;
        }
        // Renormalized values sit within a few ulps of one.
        Self::new(scaled, phi)
    }

    /// `λ0 = λ3 = 1/2`, `λ2 = √2/2`, `λ1 = λ4 = 0`.
    pub fn example1() -> Self {
        Self::new([0.5, 0.0, std::f64::consts::FRAC_1_SQRT_2, 0.5, 0.0], 0.0).expect("normalized")
    }

    /// `λ0 = λ1 = λ2 = √2/3`, `λ3 = λ4 = 1/√6`.
    pub fn example2() -> Self {
        let a = 2f64.sqrt() / 3.0;
        let b = 1.0 / 6f64.sqrt();
        Self::new([a, a, a, b, b], 0.0).expect("normalized")
    }

    pub fn lambdas(&self) -> [f64; 5] {
        self.lambdas
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn with_phi(&self, phi: f64) -> Self {
        Self {
            lambdas: self.lambdas,
            phi: phi.rem_euclid(TAU),
        }
    }
}

/// Concurrences of the three cuts used by the tripartite bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GsdMeasures {
    pub c_ab: f64,
    pub c_ac: f64,
    pub c_a_bc: f64,
}

impl GsdMeasures {
    /// `C²_{A|BC} − C²_{AB} − C²_{AC}`
    pub fn ckw_slack(&self) -> f64 {
        self.c_a_bc * self.c_a_bc - self.c_ab * self.c_ab - self.c_ac * self.c_ac
    }
}

pub fn make_gsd_state(p: &SchmidtParams) -> PureState {
    let [l0, l1, l2, l3, l4] = p.lambdas;
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    amps[0b000] = Complex64::new(l0, 0.0);
    amps[0b100] = Complex64::from_polar(l1, p.phi);
    amps[0b101] = Complex64::new(l2, 0.0);
    amps[0b110] = Complex64::new(l3, 0.0);
    amps[0b111] = Complex64::new(l4, 0.0);
    // SchmidtParams guarantees the norm.
    PureState::new(amps).expect("SchmidtParams are normalized")
}

pub fn gsd_analytic_measures(p: &SchmidtParams) -> GsdMeasures {
    let [l0, _, l2, l3, l4] = p.lambdas;
    GsdMeasures {
        c_ab: 2.0 * l0 * l2,
        c_ac: 2.0 * l0 * l3,
        c_a_bc: 2.0 * l0 * (l2 * l2 + l3 * l3 + l4 * l4).sqrt(),
    }
}

/// `4λ0²λ4²`, the exact CKW slack of the family.
pub fn gsd_analytic_ckw_slack(p: &SchmidtParams) -> f64 {
    let [l0, _, _, _, l4] = p.lambdas;
    4.0 * l0 * l0 * l4 * l4
}

/// Concurrences computed from the state vector through reduced states.
pub fn gsd_numeric_measures(p: &SchmidtParams) -> Result<GsdMeasures> {
    tripartite_concurrences(&make_gsd_state(p), PARTY_B, PARTY_C)
}

/// CREN values; pairs use the two-qubit identity and the `A|BC` cut uses the
/// pure-state negativity.
pub fn gsd_numeric_cren(p: &SchmidtParams) -> Result<GsdMeasures> {
    let psi = make_gsd_state(p);
    let pairs = tripartite_concurrences(&psi, PARTY_B, PARTY_C)?;
    Ok(GsdMeasures {
        c_a_bc: negativity_pure(&psi, &Bipartition::first_vs_rest(3)?)?,
        ..pairs
    })
}

/// `(C_{A b}, C_{A c}, C_{A|bc})` for a three-qubit pure state with A = qubit 0.
pub fn tripartite_concurrences(psi: &PureState, b: usize, c: usize) -> Result<GsdMeasures> {
    if psi.num_qubits() != 3 {
        return Err(Error::Unsupported(format!(
            "tripartite measures need 3 qubits, got {}",
            psi.num_qubits()
        )));
    }
    let pair = |other: usize| -> Result<f64> {
        let w = psi.reshape(&[PARTY_A, other])?;
        concurrence_from_factor(&w)
    };
    Ok(GsdMeasures {
        c_ab: pair(b)?,
        c_ac: pair(c)?,
        c_a_bc: concurrence_pure(psi, &Bipartition::first_vs_rest(3)?)?,
    })
}

/// Seeded sampler over `SchmidtParams`: five |N(0,1)| magnitudes
/// normalized, phase uniform on `[0, 2π)`.
#[derive(Debug, Clone)]
pub struct GsdSampler {
    rng: ChaCha8Rng,
}

impl GsdSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn from_rng(rng: ChaCha8Rng) -> Self {
        Self { rng }
    }

    pub fn sample(&mut self) -> SchmidtParams {
        sample_params(&mut self.rng)
    }

    /// Rejection-samples until `C²_AC ≤ k·C²_AB` (analytic values).
    pub fn sample_conditional(&mut self, k: f64, retry_cap: usize) -> Result<SchmidtParams> {
        if !(k > 0.0 && k <= 1.0) {
            return Err(Error::Domain(format!("k = {k} outside (0, 1]")));
        }
        for _ in 0..retry_cap {
            let p = self.sample();
            let m = gsd_analytic_measures(&p);
            if m.c_ac * m.c_ac <= k * m.c_ab * m.c_ab {
                return Ok(p);
            }
        }
        Err(Error::SamplerExhausted {
            attempts: retry_cap,
            reason: format!("no sample with C_AC² ≤ {k}·C_AB²"),
        })
    }
}

pub fn sample_params<R: Rng + ?Sized>(rng: &mut R) -> SchmidtParams {
    loop {
        let mut l = [0.0f64; 5];
        for x in &mut l {
            let g: f64 = rng.sample(StandardNormal);
            *x = g.abs();
        }
        let norm = l.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        for x in &mut l {
            *x /= norm;
        }
        let phi = rng.random::<f64>() * TAU;
        if let Ok(p) = SchmidtParams::new(l, phi) {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_params_give_basis_state() {
        let p = SchmidtParams::new([1.0, 0.0, 0.0, 0.0, 0.0], 0.0).unwrap();
        let psi = make_gsd_state(&p);
        assert_eq!(psi, PureState::basis(3, 0).unwrap());
        let m = gsd_analytic_measures(&p);
        assert_eq!((m.c_ab, m.c_ac, m.c_a_bc), (0.0, 0.0, 0.0));
        let n = gsd_numeric_measures(&p).unwrap();
        assert!(n.c_ab.abs() < 1e-15 && n.c_ac.abs() < 1e-15 && n.c_a_bc.abs() < 1e-15);
    }

    #[test]
    fn example1_amplitudes() {
        let psi = make_gsd_state(&SchmidtParams::example1());
        let amps = psi.amplitudes();
        let expected = [
            0.5,
            0.0,
            0.0,
            0.0,
            0.0,
            std::f64::consts::FRAC_1_SQRT_2,
            0.5,
            0.0,
        ];
        for (a, e) in amps.iter().zip(expected) {
            assert_eq!(*a, Complex64::new(e, 0.0));
        }
    }

    #[test]
    fn example2_is_normalized() {
        let psi = make_gsd_state(&SchmidtParams::example2());
        let n: f64 = psi.amplitudes().iter().map(|a| a.norm_sqr()).sum();
        assert!((n - 1.0).abs() < 1e-15);
    }

    #[test]
    fn example2_analytic_values() {
        let m = gsd_analytic_measures(&SchmidtParams::example2());
        assert!((m.c_ab - 4.0 / 9.0).abs() < 1e-15);
        assert!((m.c_ac - 2.0 * 3f64.sqrt() / 9.0).abs() < 1e-15);
        assert!((m.c_a_bc - 2.0 * 10f64.sqrt() / 9.0).abs() < 1e-15);
    }

    #[test]
    fn example1_analytic_values_follow_closed_forms() {
        // 2λ0λ2 = √2/2, 2λ0λ3 = 1/2, 2λ0·sqrt(3/4) = √3/2
        let m = gsd_analytic_measures(&SchmidtParams::example1());
        assert!((m.c_ab - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((m.c_ac - 0.5).abs() < 1e-15);
        assert!((m.c_a_bc - 3f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn params_validation() {
        assert!(SchmidtParams::new([1.0, 0.1, 0.0, 0.0, 0.0], 0.0).is_err());
        assert!(SchmidtParams::new([-1.0, 0.0, 0.0, 0.0, 0.0], 0.0).is_err());
        assert!(SchmidtParams::new([f64::NAN, 0.0, 0.0, 0.0, 0.0], 0.0).is_err());
        let p = SchmidtParams::normalized([0.5, 0.0, 0.70710678, 0.5, 0.0], 0.0, 1e-6).unwrap();
        let n: f64 = p.lambdas().iter().map(|l| l * l).sum();
        assert!((n - 1.0).abs() < 1e-15);
        assert!(SchmidtParams::normalized([0.5, 0.0, 0.0, 0.0, 0.0], 0.0, 1e-6).is_err());
    }

    #[test]
    fn sampler_is_deterministic() {
        let a: Vec<_> = {
            let mut s = GsdSampler::new(11);
            (0..5).map(|_| s.sample()).collect()
        };
        let b: Vec<_> = {
            let mut s = GsdSampler::new(11);
            (0..5).map(|_| s.sample()).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn conditional_sampler_respects_condition() {
        let mut s = GsdSampler::new(3);
        for _ in 0..50 {
            let p = s.sample_conditional(0.5, DEFAULT_RETRY_CAP).unwrap();
            let m = gsd_analytic_measures(&p);
            assert!(m.c_ac * m.c_ac <= 0.5 * m.c_ab * m.c_ab);
        }
        assert!(s.sample_conditional(0.0, 10).is_err());
    }

    #[test]
    fn conditional_sampler_reports_exhaustion() {
        // k tiny: acceptance region has very small probability
        let mut s = GsdSampler::new(5);
        let err = s.sample_conditional(1e-300, 3).unwrap_err();
        assert!(matches!(err, Error::SamplerExhausted { attempts: 3, .. }));
    }
}
