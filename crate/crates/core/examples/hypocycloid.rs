//! Dimension 3 with normal incidence matrix: joint eigenvalues of (M, P)
//! against the deltoid and the astroid, next to the exact classification.

use cygrowth::cy_series::{build_q, dim3_normal_criterion, hypocycloid_contains};
use cygrowth::quiver::{CyDatum, WeightedQuiver};
use num_complex::Complex64;

fn report(name: &str, m: &[Vec<i64>], cy: CyDatum) -> cygrowth::Result<()> {
    let model = build_q(&WeightedQuiver::from_incidence(m), &cy)?;
    let r = dim3_normal_criterion(&model);
    println!(
        "{name}: det q = {}, verdict {}, exact {:?}",
        model.q.det(),
        r.verdict,
        r.exact_class
    );
    for p in &r.eigen_pairs {
        println!("    delta = {:.4}, zeta = {:.4}, inside = {}", p.delta, p.zeta, p.inside);
    }
    Ok(())
}

fn main() -> cygrowth::Result<()> {
    report("three loops, ell 3", &[vec![3]], CyDatum::untwisted(3, 1, 3))?;
    report("two loops, ell 4", &[vec![2]], CyDatum::untwisted(3, 1, 4))?;
    report("two loops, ell 5", &[vec![2]], CyDatum::untwisted(3, 1, 5))?;
    report("[[0,3],[3,0]], P = I", &[vec![0, 3], vec![3, 0]], CyDatum::untwisted(3, 2, 3))?;
    report("[[0,3],[3,0]], P = swap", &[vec![0, 3], vec![3, 0]], CyDatum::new(3, vec![2, 1], vec![3, 3]))?;

    // real sections: the deltoid meets R in [-1, 3], half the astroid in [-2, 2]
    let one = Complex64::new(1.0, 0.0);
    let section = |k: u32| {
        let inside: Vec<f64> = (-100..=100)
            .map(|i| f64::from(i) * 0.05)
            .filter(|&a| hypocycloid_contains(Complex64::new(a, 0.0), k, one))
            .collect();
        (inside[0], inside[inside.len() - 1])
    };
    println!("deltoid real section: {:?}", section(3));
    println!("half astroid real section: {:?}", section(4));
    Ok(())
}
