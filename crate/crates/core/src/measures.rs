//! Bipartite entanglement measures: concurrence, negativity and CREN.
//!
//! Negativity uses the unhalved convention `‖ρ^{T_A}‖ − 1`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    self, partial_trace, partial_transpose_many, psd_eigen, singular_values, trace_norm,
    ComplexMatrix, SubsystemLayout,
};

/// Allowed deviation of `Σ|amplitude|²` from one.
pub const NORM_TOL: f64 = 1e-12;
/// Measure values in `[-MEASURE_CLAMP_TOL, 0)` are reported as zero.
pub const MEASURE_CLAMP_TOL: f64 = 1e-12;
/// Allowed deviation of a density matrix trace from one.
pub const TRACE_TOL: f64 = 1e-10;

fn clamp_measure(x: f64) -> f64 {
    if (-MEASURE_CLAMP_TOL..0.0).contains(&x) {
        0.0
    } else {
        x.max(0.0)
    }
}

/// Normalized state vector over `num_qubits` qubits, qubit 0 most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::DimensionMismatch {
                expected: len.next_power_of_two().max(2),
                found: len,
            });
        }
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL || !norm_sqr.is_finite() {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self {
            num_qubits: len.trailing_zeros() as usize,
            amplitudes,
        })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized {
                norm_sqr: norm * norm,
            });
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Self::new(amplitudes)
    }

    /// Computational basis state `|index>`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::Domain(format!(
                "basis index {index} out of range for {num_qubits} qubits"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Self::new(amps)
    }

    /// `|self> ⊗ |other>`
    pub fn tensor(&self, other: &PureState) -> PureState {
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        PureState {
            num_qubits: self.num_qubits + other.num_qubits,
            amplitudes,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn layout(&self) -> SubsystemLayout {
        SubsystemLayout::qubits(self.num_qubits).expect("at least one qubit")
    }

    pub fn density_matrix(&self) -> DensityMatrix {
        DensityMatrix {
            matrix: ComplexMatrix::outer(&self.amplitudes),
            layout: self.layout(),
        }
    }

    /// Amplitudes reshaped into a `2^|keep| x 2^(n-|keep|)` matrix `W`
    /// with rows indexed by the kept qubits, so that the reduced state on
    /// `keep` is `W W†`.
    pub fn reshape(&self, keep: &[usize]) -> Result<ComplexMatrix> {
        let keep = self.layout().normalize_set(keep)?;
        let rest: Vec<usize> = (0..self.num_qubits).filter(|q| !keep.contains(q)).collect();
        let n = self.num_qubits;
        let bits = |index: usize, qubits: &[usize]| {
            qubits
                .iter()
                .fold(0usize, |acc, &q| (acc << 1) | ((index >> (n - 1 - q)) & 1))
        };
        let mut w = ComplexMatrix::zeros(1 << keep.len(), 1 << rest.len());
        for (index, &amp) in self.amplitudes.iter().enumerate() {
            w[(bits(index, &keep), bits(index, &rest))] = amp;
        }
        Ok(w)
    }

    /// Reduced density matrix on the listed qubits.
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let keep_sorted = self.layout().normalize_set(keep)?;
        let w = self.reshape(&keep_sorted)?;
        Ok(DensityMatrix {
            matrix: &w * &w.adjoint(),
            layout: SubsystemLayout::qubits(keep_sorted.len())
                .map_err(|_| Error::Bipartition("nothing kept".into()))?,
        })
    }

    /// Schmidt coefficients across the cut, descending.
    pub fn schmidt_coefficients(&self, cut: &Bipartition) -> Result<Vec<f64>> {
        self.check_cut(cut)?;
        Ok(singular_values(&self.reshape(cut.side_a())?))
    }

    fn check_cut(&self, cut: &Bipartition) -> Result<()> {
        if cut.num_parties() != self.num_qubits {
            return Err(Error::Bipartition(format!(
                "cut over {} parties applied to {} qubits",
                cut.num_parties(),
                self.num_qubits
            )));
        }
        Ok(())
    }
}

/// A Hermitian, PSD, unit-trace matrix over a subsystem layout.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    layout: SubsystemLayout,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, layout: SubsystemLayout) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if matrix.rows() != layout.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.total_dim(),
                found: matrix.rows(),
            });
        }
        // Hermiticity and PSD are checked by the eigensolver.
        psd_eigen(&matrix)?;
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::Domain(format!("trace {tr} is not one")));
        }
        Ok(Self { matrix, layout })
    }

    /// Density matrix over qubits.
    pub fn qubits(matrix: ComplexMatrix) -> Result<Self> {
        let n = matrix.rows();
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::Layout(format!(
                "dimension {n} is not a qubit register"
            )));
        }
        let layout = SubsystemLayout::qubits(n.trailing_zeros() as usize)?;
        Self::new(matrix, layout)
    }

    pub fn maximally_mixed(layout: SubsystemLayout) -> Self {
        let d = layout.total_dim();
        Self {
            matrix: ComplexMatrix::identity(d).scale(Complex64::new(1.0 / d as f64, 0.0)),
            layout,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let keep = self.layout.normalize_set(keep)?;
        if keep.is_empty() {
            return Err(Error::Layout("must keep at least one subsystem".into()));
        }
        Ok(DensityMatrix {
            matrix: partial_trace(&self.matrix, &self.layout, &keep)?,
            layout: self.layout.select(&keep)?,
        })
    }

    /// `tr ρ²`
    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }
}

/// A cut of `num_parties` subsystems into side A and its complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    side_a: Vec<usize>,
    side_b: Vec<usize>,
}

impl Bipartition {
    pub fn new(side_a: &[usize], num_parties: usize) -> Result<Self> {
        let mut a = side_a.to_vec();
        a.sort_unstable();
        a.dedup();
        if a.len() != side_a.len() {
            return Err(Error::Bipartition("duplicate index in side A".into()));
        }
        if a.is_empty() || a.len() >= num_parties {
            return Err(Error::Bipartition(
                "side A must be a nonempty proper subset".into(),
            ));
        }
        if let Some(&bad) = a.iter().find(|&&q| q >= num_parties) {
            return Err(Error::Bipartition(format!(
                "index {bad} out of range for {num_parties} parties"
            )));
        }
        let side_b = (0..num_parties).filter(|q| !a.contains(q)).collect();
        Ok(Self { side_a: a, side_b })
    }

    /// The cut `{0} | {1, .., n-1}`.
    pub fn first_vs_rest(num_parties: usize) -> Result<Self> {
        Self::new(&[0], num_parties)
    }

    pub fn side_a(&self) -> &[usize] {
        &self.side_a
    }

    pub fn side_b(&self) -> &[usize] {
        &self.side_b
    }

    pub fn num_parties(&self) -> usize {
        self.side_a.len() + self.side_b.len()
    }
}

/// `sqrt(2(1 − tr ρ_A²))`, evaluated from Schmidt coefficients as
/// `2 sqrt(Σ_{i<j} s_i² s_j²)` so near-product states stay at rounding level.
pub fn concurrence_pure(psi: &PureState, cut: &Bipartition) -> Result<f64> {
    let s = psi.schmidt_coefficients(cut)?;
    let p: Vec<f64> = s.iter().map(|x| x * x).collect();
    let mut pairs = 0.0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            pairs += p[i] * p[j];
        }
    }
    Ok(clamp_measure(2.0 * pairs.sqrt()))
}

/// `(tr sqrt(ρ_A))² − 1 = 2 Σ_{i<j} s_i s_j` over Schmidt coefficients.
pub fn negativity_pure(psi: &PureState, cut: &Bipartition) -> Result<f64> {
    let s = psi.schmidt_coefficients(cut)?;
    let mut pairs = 0.0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            pairs += s[i] * s[j];
        }
    }
    Ok(clamp_measure(2.0 * pairs))
}

fn spin_flip_yy() -> ComplexMatrix {
    // σy ⊗ σy
    ComplexMatrix::from_real(
        4,
        4,
        &[
            0.0, 0.0, 0.0, -1.0, //
            0.0, 0.0, 1.0, 0.0, //
            0.0, 1.0, 0.0, 0.0, //
            -1.0, 0.0, 0.0, 0.0,
        ],
    )
    .expect("4x4")
}

/// Two-qubit concurrence from any factor `W` with `ρ = W W†`.
///
/// The values `√μᵢ` (square roots of the eigenvalues of `ρ ρ̃`) are the
/// singular values of `Wᵀ (σy⊗σy) W`.
pub fn concurrence_from_factor(w: &ComplexMatrix) -> Result<f64> {
    if w.rows() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: w.rows(),
        });
    }
    let tau = &(&w.transpose() * &spin_flip_yy()) * w;
    let s = singular_values(&tau);
    let lead = s.first().copied().unwrap_or(0.0);
    let rest: f64 = s.iter().skip(1).sum();
    Ok(clamp_measure(lead - rest).max(0.0))
}

/// Two-qubit mixed-state concurrence, `max(0, √μ₁ − √μ₂ − √μ₃ − √μ₄)`.
pub fn concurrence_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    let eig = psd_eigen(rho.matrix())?;
    let w = {
        let mut w = ComplexMatrix::zeros(4, 4);
        for (k, &lambda) in eig.values.iter().enumerate() {
            let r = lambda.sqrt();
            for i in 0..4 {
                w[(i, k)] = eig.vectors[(i, k)] * r;
            }
        }
        w
    };
    concurrence_from_factor(&w)
}

/// Convex-roof extended negativity of a two-qubit state, which coincides
/// with its concurrence.
pub fn cren_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    concurrence_two_qubit(rho)
}

/// `‖ρ^{T_A}‖ − 1` with the partial transpose taken over side A.
pub fn negativity(rho: &DensityMatrix, cut: &Bipartition) -> Result<f64> {
    if cut.num_parties() != rho.layout().len() {
        return Err(Error::Bipartition(format!(
            "cut over {} parties applied to a {}-subsystem layout",
            cut.num_parties(),
            rho.layout().len()
        )));
    }
    let pt = partial_transpose_many(rho.matrix(), rho.layout(), cut.side_a())?;
    Ok(clamp_measure(trace_norm(&pt) - 1.0))
}

/// Whether a density matrix has a positive partial transpose across the cut.
pub fn is_ppt(rho: &DensityMatrix, cut: &Bipartition) -> Result<bool> {
    let pt = partial_transpose_many(rho.matrix(), rho.layout(), cut.side_a())?;
    let min = linalg::hermitian_eigenvalues(&pt)?
        .last()
        .copied()
        .unwrap_or(0.0);
    Ok(min >= -MEASURE_CLAMP_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn bell() -> PureState {
        PureState::new(vec![c(FRAC_1_SQRT_2), c(0.0), c(0.0), c(FRAC_1_SQRT_2)]).unwrap()
    }

    #[test]
    fn rejects_unnormalized_and_bad_length() {
        assert!(matches!(
            PureState::new(vec![c(1.0), c(1.0)]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(PureState::new(vec![c(1.0), c(0.0), c(0.0)]).is_err());
        assert!(PureState::normalized(vec![c(0.0), c(0.0)]).is_err());
    }

    #[test]
    fn bipartition_validation() {
        assert!(Bipartition::new(&[], 3).is_err());
        assert!(Bipartition::new(&[0, 1, 2], 3).is_err());
        assert!(Bipartition::new(&[3], 3).is_err());
        let cut = Bipartition::new(&[2, 0], 4).unwrap();
        assert_eq!(cut.side_a(), &[0, 2]);
        assert_eq!(cut.side_b(), &[1, 3]);
    }

    #[test]
    fn bell_values() {
        let cut = Bipartition::first_vs_rest(2).unwrap();
        let psi = bell();
        assert!((concurrence_pure(&psi, &cut).unwrap() - 1.0).abs() < 1e-14);
        assert!((negativity_pure(&psi, &cut).unwrap() - 1.0).abs() < 1e-14);
        let rho = psi.density_matrix();
        assert!((negativity(&rho, &cut).unwrap() - 1.0).abs() < 1e-14);
        assert!((concurrence_two_qubit(&rho).unwrap() - 1.0).abs() < 1e-14);
        assert!(!is_ppt(&rho, &cut).unwrap());
    }

    #[test]
    fn product_state_is_unentangled() {
        let plus = PureState::new(vec![c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)]).unwrap();
        let psi = PureState::basis(1, 0).unwrap().tensor(&plus);
        let cut = Bipartition::first_vs_rest(2).unwrap();
        assert!(concurrence_pure(&psi, &cut).unwrap() < 1e-15);
        assert!(negativity_pure(&psi, &cut).unwrap() < 1e-15);
        let rho = psi.density_matrix();
        assert!(negativity(&rho, &cut).unwrap() < 1e-14);
        assert!(concurrence_two_qubit(&rho).unwrap() < 1e-14);
        assert!(is_ppt(&rho, &cut).unwrap());
    }

    #[test]
    fn maximally_mixed_is_separable() {
        let rho = DensityMatrix::maximally_mixed(SubsystemLayout::qubits(2).unwrap());
        assert_eq!(concurrence_two_qubit(&rho).unwrap(), 0.0);
        assert_eq!(cren_two_qubit(&rho).unwrap(), 0.0);
        let cut = Bipartition::first_vs_rest(2).unwrap();
        assert!(negativity(&rho, &cut).unwrap() < 1e-15);
    }

    #[test]
    fn wrong_dimension_errors() {
        let rho = DensityMatrix::maximally_mixed(SubsystemLayout::qubits(3).unwrap());
        assert!(matches!(
            concurrence_two_qubit(&rho),
            Err(Error::DimensionMismatch { .. })
        ));
        let cut = Bipartition::first_vs_rest(2).unwrap();
        assert!(negativity(&rho, &cut).is_err());
        assert!(concurrence_pure(&bell(), &Bipartition::first_vs_rest(3).unwrap()).is_err());
    }

    #[test]
    fn density_matrix_validation() {
        let not_psd = ComplexMatrix::from_diagonal(&[1.5, -0.5]);
        assert!(matches!(
            DensityMatrix::qubits(not_psd),
            Err(Error::NotPsd { .. })
        ));
        let bad_trace = ComplexMatrix::from_diagonal(&[0.5, 0.25]);
        assert!(DensityMatrix::qubits(bad_trace).is_err());
    }

    #[test]
    fn reshape_and_reduced_agree_with_partial_trace() {
        let psi = PureState::normalized(
            (0..8)
                .map(|i| Complex64::new(i as f64 + 0.5, (i * i) as f64 * 0.1 - 1.0))
                .collect(),
        )
        .unwrap();
        let rho = psi.density_matrix();
        for keep in [vec![0], vec![1], vec![0, 2], vec![1, 2]] {
            let a = psi.reduced(&keep).unwrap();
            let b = rho.partial_trace(&keep).unwrap();
            assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-15, "{keep:?}");
        }
    }
}
