//! Write hypocycloid boundaries and an eigenvalue overlay as CSV files,
//! ready for any plotting tool.

use std::fmt::Write as _;

use cygrowth::cy_series::{build_q, dim3_normal_criterion, hypocycloid_boundary_scaled, region_scale};
use cygrowth::quiver::{CyDatum, WeightedQuiver};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("cygrowth-plots");
    std::fs::create_dir_all(&dir)?;
    for k in [3u32, 4] {
        let mut csv = String::from("theta,re,im\n");
        for p in hypocycloid_boundary_scaled(k, 720, region_scale(k)) {
            writeln!(csv, "{},{},{}", p.theta, p.point.re, p.point.im)?;
        }
        let path = dir.join(format!("omega{k}.csv"));
        std::fs::write(&path, csv)?;
        println!("wrote {}", path.display());
    }
    let m = vec![vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]];
    let model = build_q(&WeightedQuiver::from_incidence(&m), &CyDatum::new(3, vec![2, 3, 1], vec![3, 3, 3]))?;
    let mut csv = String::from("delta_re,delta_im,zeta_re,zeta_im,inside\n");
    for p in dim3_normal_criterion(&model).eigen_pairs {
        writeln!(csv, "{},{},{},{},{}", p.delta.re, p.delta.im, p.zeta.re, p.zeta.im, p.inside)?;
    }
    let path = dir.join("eigenvalues.csv");
    std::fs::write(&path, csv)?;
    println!("wrote {}", path.display());
    Ok(())
}
