//! Semipotential algebras: row and column derivatives of a potential and
//! their graded dimensions.

use num_rational::BigRational;

use cygrowth::cy_series::build_q;
use cygrowth::oracle::{build_semipotential_relations, check_against_series, graded_dims, Semipotential, Term};
use cygrowth::quiver::{Arrow, CyDatum, WeightedQuiver};

fn run(names: &[&str], ell: i64, words: &[(i64, &[usize])], degree: usize) -> cygrowth::Result<()> {
    let quiver = WeightedQuiver::new(1, names.iter().map(|n| Arrow::new(*n, 1, 1, 1)).collect());
    let cy = CyDatum::untwisted(3, 1, ell);
    let omega: Vec<Term> = words
        .iter()
        .map(|(c, p)| Term::new(BigRational::from_integer((*c).into()), p.to_vec()))
        .collect();
    let sp = Semipotential::from_potential(&quiver, &omega)?;
    let rel = build_semipotential_relations(&quiver, &cy, &sp)?;
    println!("row relations:");
    for r in &rel.rows.relations {
        println!("  {}", r.render(&quiver));
    }
    let rows = graded_dims(&rel.rows, degree)?;
    let cols = graded_dims(&rel.cols, degree)?;
    let dims: Vec<u64> = (0..=degree).map(|n| rows.get(1, 1, n)).collect();
    let model = build_q(&quiver, &cy)?;
    println!("dims {dims:?}");
    println!("row/column agree: {}", rows == cols);
    println!("matches q^-1 with q = {}: {}\n", model.q.get(0, 0), check_against_series(&rows, &model.q)?.matches);
    Ok(())
}

fn main() -> cygrowth::Result<()> {
    run(
        &["x", "y", "z"],
        3,
        &[(1, &[0, 1, 2]), (1, &[1, 2, 0]), (1, &[2, 0, 1]), (-1, &[0, 2, 1]), (-1, &[2, 1, 0]), (-1, &[1, 0, 2])],
        6,
    )?;
    run(&["x", "y"], 4, &[(1, &[0, 1, 1, 0]), (-1, &[0, 0, 1, 1]), (1, &[1, 0, 0, 1]), (-1, &[1, 1, 0, 0])], 10)
}
