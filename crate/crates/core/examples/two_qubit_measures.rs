// Concurrence and negativity of two-qubit Werner states across the
// separability threshold p = 1/3.

use monogamy::linalg::ComplexMatrix;
use monogamy::measures::{
    concurrence_two_qubit, is_ppt, negativity, Bipartition, DensityMatrix, PureState,
};
use num_complex::Complex64;

fn werner(p: f64) -> Result<DensityMatrix, monogamy::Error> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    let bell = PureState::new(vec![Complex64::new(h, 0.0), z, z, Complex64::new(h, 0.0)])?;
    let pure = bell.density_matrix().matrix().scale(Complex64::new(p, 0.0));
    let noise = ComplexMatrix::identity(4).scale(Complex64::new((1.0 - p) / 4.0, 0.0));
    DensityMatrix::qubits(&pure + &noise)
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cut = Bipartition::first_vs_rest(2)?;
    println!(
        "{:>5} {:>14} {:>14} {:>5}",
        "p", "concurrence", "negativity", "ppt"
    );
    for p in [0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0] {
        let rho = werner(p)?;
        println!(
            "{p:>5.3} {:>14.10} {:>14.10} {:>5}",
            concurrence_two_qubit(&rho)?,
            negativity(&rho, &cut)?,
            is_ppt(&rho, &cut)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("two_qubit_measures example failed");
}
