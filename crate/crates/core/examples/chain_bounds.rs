// Every bound family on a random five-party profile, with the hypothesis
// diagnostics.

use monogamy::bounds::{check_conditions, evaluate, BoundSpec, Family};
use monogamy::harness::random_feasible_profile;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (k, beta, m) = (0.8, 6.0, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let profile = random_feasible_profile(&mut rng, 4, k, m)?;
    println!("pairwise {:?}", profile.pairwise());
    println!("tails    {:?}", profile.tails());
    let cond = check_conditions(&profile, k, m)?;
    println!(
        "slacks {:?}, feasible splits {:?}",
        cond.slacks, cond.feasible_m
    );

    println!("truth^beta = {:.10}", profile.total().powf(beta));
    for family in Family::ALL {
        let report = evaluate(&profile, &BoundSpec::new(family, beta, k, m)?)?;
        println!(
            "{:<10} {:.10}  ok={}  coefficients={:?}",
            family.name(),
            report.value,
            report.conditions_ok,
            report.coefficients
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("chain_bounds example failed");
}
