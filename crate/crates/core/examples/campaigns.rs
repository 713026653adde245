// Small seeded campaigns: CKW on Haar-random states, the scalar lemma
// scan, bound validity and family dominance.

use monogamy::bounds::Family;
use monogamy::harness::{
    run_bound_validity, run_ckw_campaign, run_dominance, run_lemma_scan, CampaignConfig,
    CampaignResult, Grid,
};

fn show(r: &CampaignResult) {
    println!(
        "{:?}: checked={} violations={} min_slack={:?}",
        r.kind, r.checked, r.violations, r.min_slack
    );
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    show(&run_ckw_campaign(&CampaignConfig::ckw(7, 200))?);

    let mut lemma = CampaignConfig::lemma_default();
    lemma.beta_grid = Grid::range(2.0, 6.0, 0.5)?;
    lemma.k_grid = Grid::range(0.1, 1.0, 0.1)?;
    show(&run_lemma_scan(&lemma)?);

    show(&run_bound_validity(
        &CampaignConfig::validity(1, 100),
        Family::New,
    )?);
    show(&run_dominance(&CampaignConfig::dominance(3, 100))?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("campaigns example failed");
}
