//! Dimension 1: directed cycles, q = I - N, total series n/(1-t).

use cygrowth::cy_series::{build_q, cycle_datum};
use cygrowth::growth::total_series;
use cygrowth::quiver::{Arrow, WeightedQuiver};

fn main() -> cygrowth::Result<()> {
    for n in 1..=4 {
        let arrows = (1..=n).map(|i| Arrow::new(format!("a{i}"), i, i % n + 1, 1)).collect();
        let quiver = WeightedQuiver::new(n, arrows);
        let cy = cycle_datum(&quiver)?;
        let model = build_q(&quiver, &cy)?;
        let total = total_series(&model.q)?;
        println!(
            "{n}-cycle: mu = {:?}, h_tot = {}, GK = {:?}, eps = {}",
            cy.mu,
            total.total.display_unit_constant(),
            total.gk,
            total.eps
        );
    }
    // weights need not be 1: a 2-cycle with weights 1 and 2
    let quiver = WeightedQuiver::new(2, vec![Arrow::new("a", 1, 2, 1), Arrow::new("b", 2, 1, 2)]);
    let model = build_q(&quiver, &cycle_datum(&quiver)?)?;
    let total = total_series(&model.q)?;
    println!("weighted 2-cycle: h_tot = {}", total.total.display_unit_constant());
    Ok(())
}
