// Partial trace, partial transpose and the Hermitian eigensolver on a
// Bell state.

use monogamy::linalg::{
    hermitian_eigen, partial_trace, partial_transpose, trace_norm, SubsystemLayout,
};
use monogamy::measures::PureState;
use num_complex::Complex64;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    let bell = PureState::new(vec![Complex64::new(h, 0.0), z, z, Complex64::new(h, 0.0)])?;
    let rho = bell.density_matrix();
    let layout = SubsystemLayout::qubits(2)?;

    let rho_a = partial_trace(rho.matrix(), &layout, &[0])?;
    println!("rho_A = {rho_a:?}");

    let pt = partial_transpose(rho.matrix(), &layout, 0)?;
    let eig = hermitian_eigen(&pt)?;
    println!("spectrum of rho^T_A: {:?}", eig.values);
    println!("||rho^T_A||_1 = {:.12}", trace_norm(&pt));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("linear_algebra example failed");
}
