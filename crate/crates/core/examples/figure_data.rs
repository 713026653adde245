// Bound curves for the two figure profiles at k = 0.8, as CSV.

use monogamy::harness::{reproduce_figure, Figure, Grid};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let grid = Grid::range(4.0, 12.0, 1.0)?;
    for fig in [Figure::Fig1, Figure::Fig2] {
        println!("# {fig}");
        print!("{}", reproduce_figure(fig, 0.8, &grid)?.to_csv());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("figure_data example failed");
}
