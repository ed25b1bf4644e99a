//! Search three-vertex quivers for dimension-3 data with finite growth.
//!
//! Run with `cargo run --release --example markov_search`.

use cygrowth::search::{search, SearchBounds};

fn main() -> cygrowth::Result<()> {
    let hits = search(&SearchBounds::new(3, 3, 3, 3, 4))?;
    for h in &hits {
        println!(
            "{:?}  mu={:?}  ell={}  det q = {}  [{}]  GK {}",
            h.incidence,
            h.mu,
            h.ell,
            h.det_q,
            h.factorization,
            h.gk_dimension.map_or("-".to_string(), |g| g.to_string())
        );
    }
    let markov = vec![vec![0, 3, 0], vec![0, 0, 3], vec![3, 0, 0]];
    let found = hits.iter().any(|h| h.is_quiver(&markov) && h.ell == 3);
    println!("cyclic Markov quiver (3,3,3) present: {found}");
    let two_vertex = vec![vec![0, 3], vec![3, 0]];
    for h in hits.iter().filter(|h| h.is_quiver(&two_vertex)) {
        println!("[[0,3],[3,0]] passes with mu={:?}, ell={}", h.mu, h.ell);
    }
    Ok(())
}
