// Three-qubit states in generalized Schmidt form: numeric concurrences
// against the closed forms, and the CKW slack 4λ0²λ4².

use monogamy::gsd::{
    gsd_analytic_ckw_slack, gsd_analytic_measures, gsd_numeric_cren, gsd_numeric_measures,
    GsdSampler, SchmidtParams,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (name, p) in [
        ("example1", SchmidtParams::example1()),
        ("example2", SchmidtParams::example2()),
    ] {
        let num = gsd_numeric_measures(&p)?;
        let ana = gsd_analytic_measures(&p);
        println!(
            "{name}: numeric  C_AB={:.12} C_AC={:.12} C_A|BC={:.12}",
            num.c_ab, num.c_ac, num.c_a_bc
        );
        println!(
            "{name}: analytic C_AB={:.12} C_AC={:.12} C_A|BC={:.12}",
            ana.c_ab, ana.c_ac, ana.c_a_bc
        );
        let cren = gsd_numeric_cren(&p)?;
        println!(
            "{name}: CREN     N_AB={:.12} N_AC={:.12} N_A|BC={:.12}",
            cren.c_ab, cren.c_ac, cren.c_a_bc
        );
    }

    let mut sampler = GsdSampler::new(11);
    for _ in 0..3 {
        let p = sampler.sample();
        let num = gsd_numeric_measures(&p)?;
        println!(
            "ckw slack numeric={:.3e} analytic={:.3e}",
            num.ckw_slack(),
            gsd_analytic_ckw_slack(&p)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("gsd_measures example failed");
}
