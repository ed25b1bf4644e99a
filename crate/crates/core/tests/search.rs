use cygrowth::search::{search, SearchBounds};

const SWAP: [[i64; 2]; 2] = [[0, 3], [3, 0]];

fn two_vertex_hits() -> Vec<cygrowth::search::SearchHit> {
    search(&SearchBounds::new(3, 2, 3, 3, 4)).unwrap()
}

#[test]
fn untwisted_three_arrow_swap_is_excluded() {
    let m: Vec<Vec<i64>> = SWAP.iter().map(|r| r.to_vec()).collect();
    let hits = two_vertex_hits();
    assert!(!hits.iter().any(|h| h.is_quiver(&m) && h.mu == [1, 2]));
}

#[test]
fn twisted_three_arrow_swap_survives() {
    // the skew group algebra of Z/2 acting by -1 on three variables
    let m: Vec<Vec<i64>> = SWAP.iter().map(|r| r.to_vec()).collect();
    let hits = two_vertex_hits();
    let hit = hits.iter().find(|h| h.is_quiver(&m)).expect("twisted hit");
    assert_eq!((hit.mu.as_slice(), hit.ell, hit.gk_dimension), (&[2, 1][..], 3, Some(3)));
    assert_eq!(hit.det_q, "1 - 3*t^2 + 3*t^4 - t^6");
}

#[test]
fn hits_are_sorted_and_canonical() {
    let hits = two_vertex_hits();
    assert!(hits.windows(2).all(|w| w[0] < w[1]));
    for h in &hits {
        assert_eq!(cygrowth::search::canonical_incidence(&h.incidence), h.incidence);
    }
}
