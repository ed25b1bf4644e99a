//! The skew group algebra k[x,y] # Z2: matrix versus total Hilbert series,
//! and a brute-force check of the mesh algebra against q(t)^-1.

use cygrowth::analysis::analyze;
use cygrowth::oracle::{build_mesh_relations, check_against_series, graded_dims, MeshData};
use cygrowth::quiver::{Arrow, CyDatum, WeightedQuiver};

fn main() -> cygrowth::Result<()> {
    let quiver = WeightedQuiver::new(
        2,
        vec![
            Arrow::new("a1", 1, 1, 1),
            Arrow::new("a2", 2, 2, 1),
            Arrow::new("b", 1, 2, 1),
            Arrow::new("c", 2, 1, 1),
        ],
    );
    let cy = CyDatum::new(2, vec![2, 1], vec![2, 2]);
    let report = analyze(&quiver, &cy, 1e-8)?;
    print!("{}", report.to_text());

    let mut tau = MeshData::default();
    tau.insert("a1", &[(1, "c")])
        .insert("c", &[(-1, "a2")])
        .insert("a2", &[(1, "b")])
        .insert("b", &[(-1, "a1")]);
    let pres = build_mesh_relations(&quiver, &cy, &tau)?;
    let table = graded_dims(&pres, 8)?;
    let cmp = check_against_series(&table, &report.q)?;
    println!("\nmesh relations:");
    for r in &pres.relations {
        println!("  {}", r.render(&quiver));
    }
    for n in 0..=8 {
        println!(
            "n = {n}: e1 A e1 = {}, e1 A e2 = {}, e2 A e1 = {}, e2 A e2 = {}",
            table.get(1, 1, n),
            table.get(1, 2, n),
            table.get(2, 1, n),
            table.get(2, 2, n)
        );
    }
    println!("matches q(t)^-1 through degree 8: {}", cmp.matches);
    Ok(())
}
