//! k<x,y>/(yx - xy - x^3) with deg y = 2: graded dimensions, comparison
//! with 1/((1-t)(1-t^2)) and the truncated socle test.

use num_rational::BigRational;

use cygrowth::cy_series::build_q;
use cygrowth::oracle::{
    check_against_series, graded_dims, truncated_socle_trivial, GradedPresentation, Relation, Side, Term,
};
use cygrowth::quiver::{Arrow, CyDatum, WeightedQuiver};

fn main() -> cygrowth::Result<()> {
    let quiver = WeightedQuiver::new(1, vec![Arrow::new("x", 1, 1, 1), Arrow::new("y", 1, 1, 2)]);
    let one = |c: i64| BigRational::from_integer(c.into());
    let rel = Relation::new(
        &quiver,
        vec![Term::new(one(1), vec![1, 0]), Term::new(one(-1), vec![0, 1]), Term::new(one(-1), vec![0, 0, 0])],
    )?;
    let pres = GradedPresentation::new(quiver.clone(), vec![rel])?;
    let table = graded_dims(&pres, 10)?;
    let dims: Vec<u64> = (0..=10).map(|n| table.get(1, 1, n)).collect();
    println!("dims: {dims:?}");

    let model = build_q(&quiver, &CyDatum::new(2, vec![1], vec![3]))?;
    println!("q(t) = {}", model.q.get(0, 0));
    println!("matches q^-1: {}", check_against_series(&table, &model.q)?.matches);
    for side in [Side::Left, Side::Right] {
        let s = truncated_socle_trivial(&pres, side, 10)?;
        println!("{side:?} socle trivial through degree {:?}: {}", s.checked_up_to, s.trivial);
    }
    Ok(())
}
