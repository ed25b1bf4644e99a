//! Exhaustive search over small unweighted quivers for Calabi-Yau data
//! whose `q(t)` passes the finite-growth tests.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::cy_series::build_q;
use crate::error::{Error, Result};
use crate::growth::{all_roots_are_roots_of_unity, classify_algebra, within_binomial_bound};
use crate::polyalg::{int_matmul, invert_as_series};
use crate::quiver::{permutations, CyDatum, WeightedQuiver};

/// Raw enumeration budget: total number of incidence matrices scanned.
pub const MAX_RAW_CANDIDATES: u128 = 200_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub dimension: u8,
    pub max_vertices: usize,
    pub max_mult: u32,
    pub ell_min: i64,
    pub ell_max: i64,
    /// Degree up to which `q(t)^-1` must have nonnegative coefficients.
    pub series_degree: usize,
    /// Keep only GK-dimension at least the Calabi-Yau dimension.
    pub require_gk_at_least_dimension: bool,
}

impl SearchBounds {
    pub fn new(dimension: u8, max_vertices: usize, max_mult: u32, ell_min: i64, ell_max: i64) -> Self {
        SearchBounds {
            dimension,
            max_vertices,
            max_mult,
            ell_min,
            ell_max,
            series_degree: 12,
            require_gk_at_least_dimension: true,
        }
    }

    pub fn raw_candidates(&self) -> u128 {
        (1..=self.max_vertices)
            .map(|n| u128::from(self.max_mult + 1).saturating_pow((n * n) as u32))
            .fold(0u128, |a, b| a.saturating_add(b))
    }

    pub fn check(&self) -> Result<()> {
        if !(1..=3).contains(&self.dimension) {
            return Err(Error::BoundsTooLarge(format!("dimension {} not in 1..=3", self.dimension)));
        }
        if self.max_vertices == 0 || self.max_mult == 0 {
            return Err(Error::BoundsTooLarge("bounds must be at least 1".into()));
        }
        if self.max_vertices > 4 {
            return Err(Error::BoundsTooLarge(format!("max vertices {} > 4", self.max_vertices)));
        }
        if self.max_mult > 6 {
            return Err(Error::BoundsTooLarge(format!("max multiplicity {} > 6", self.max_mult)));
        }
        if self.ell_min < 1 || self.ell_min > self.ell_max {
            return Err(Error::BoundsTooLarge(format!(
                "ell range {}..={} is empty or not positive",
                self.ell_min, self.ell_max
            )));
        }
        let raw = self.raw_candidates();
        if raw > MAX_RAW_CANDIDATES {
            return Err(Error::BoundsTooLarge(format!(
                "{raw} incidence matrices exceed the budget of {MAX_RAW_CANDIDATES}"
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchHit {
    pub vertices: usize,
    pub incidence: Vec<Vec<i64>>,
    /// 1-based Nakayama permutation.
    pub mu: Vec<usize>,
    pub ell: i64,
    pub det_q: String,
    pub factorization: String,
    pub gk_dimension: Option<u32>,
}

impl SearchHit {
    fn sort_key(&self) -> (usize, &Vec<Vec<i64>>, &Vec<usize>, i64) {
        (self.vertices, &self.incidence, &self.mu, self.ell)
    }
}

impl SearchHit {
    /// Whether this hit is the quiver `m` up to relabeling.
    pub fn is_quiver(&self, m: &[Vec<i64>]) -> bool {
        m.len() == self.vertices && canonical_incidence(m) == self.incidence
    }
}

impl PartialOrd for SearchHit {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SearchHit {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

fn decode(mut idx: u64, n: usize, base: u64) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; n]; n];
    for row in m.iter_mut() {
        for c in row.iter_mut() {
            *c = (idx % base) as i64;
            idx /= base;
        }
    }
    m
}

fn conjugate(m: &[Vec<i64>], perm: &[usize]) -> Vec<Vec<i64>> {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[perm[i]][perm[j]]).collect()).collect()
}

fn is_canonical(m: &[Vec<i64>], perms: &[Vec<usize>]) -> bool {
    perms.iter().all(|p| conjugate(m, p).as_slice() >= m)
}

/// Lexicographically least relabeling of an incidence matrix, the form
/// in which search results are reported.
pub fn canonical_incidence(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    permutations(m.len())
        .iter()
        .map(|p| conjugate(m, p))
        .min()
        .unwrap_or_default()
}

fn strongly_connected(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..n {
                let e = if forward { m[v][w] } else { m[w][v] };
                if e > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    };
    reach(true) && reach(false)
}

fn perm_matrix(mu: &[usize]) -> Vec<Vec<i64>> {
    let n = mu.len();
    (0..n).map(|i| (0..n).map(|j| i64::from(mu[i] == j)).collect()).collect()
}

/// Nakayama permutations commuting with `m`, one per orbit under the
/// automorphisms of `m`. Returned 0-based.
fn commuting_permutations(m: &[Vec<i64>], perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let autos: Vec<&Vec<usize>> = perms.iter().filter(|p| conjugate(m, p) == m).collect();
    let mut out = Vec::new();
    for mu in perms {
        let p = perm_matrix(mu);
        if int_matmul(m, &p) != int_matmul(&p, m) {
            continue;
        }
        // sigma^-1 mu sigma for each automorphism sigma
        let least = autos
            .iter()
            .map(|s| {
                let mut inv = vec![0; s.len()];
                for (i, &v) in s.iter().enumerate() {
                    inv[v] = i;
                }
                s.iter().map(|&si| inv[mu[si]]).collect::<Vec<usize>>()
            })
            .min()
            .expect("identity is an automorphism");
        if &least == mu {
            out.push(mu.clone());
        }
    }
    out
}

fn examine(m: &[Vec<i64>], perms: &[Vec<usize>], bounds: &SearchBounds) -> Vec<SearchHit> {
    let n = m.len();
    let quiver = WeightedQuiver::from_incidence(m);
    let mut hits = Vec::new();
    for mu in commuting_permutations(m, perms) {
        let mu1: Vec<usize> = mu.iter().map(|v| v + 1).collect();
        for ell in bounds.ell_min..=bounds.ell_max {
            let cy = CyDatum::new(bounds.dimension, mu1.clone(), vec![ell; n]);
            let Ok(model) = build_q(&quiver, &cy) else {
                continue;
            };
            let det = model.q.det();
            if !within_binomial_bound(&det) {
                continue;
            }
            let Ok((true, factors)) = all_roots_are_roots_of_unity(&det) else {
                continue;
            };
            let Ok(series) = invert_as_series(&model.q, bounds.series_degree) else {
                continue;
            };
            if !series.is_nonnegative() {
                continue;
            }
            let Ok(report) = classify_algebra(&model.q) else {
                continue;
            };
            let gk = report.gk_dimension;
            if bounds.require_gk_at_least_dimension && gk.is_none_or(|g| g < u32::from(bounds.dimension)) {
                continue;
            }
            hits.push(SearchHit {
                vertices: n,
                incidence: m.to_vec(),
                mu: mu1.clone(),
                ell,
                det_q: det.to_string(),
                factorization: factors.to_string(),
                gk_dimension: gk,
            });
        }
    }
    hits
}

/// Worker count from `CYGROWTH_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var("CYGROWTH_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

/// Enumerate strongly connected unweighted quivers up to relabeling and
/// report every commuting `P` and uniform `ell` that survive the filters.
/// Output is sorted by vertex count, incidence matrix, `mu`, `ell`.
pub fn search(bounds: &SearchBounds) -> Result<Vec<SearchHit>> {
    bounds.check()?;
    let run = || {
        let mut hits: Vec<SearchHit> = (1..=bounds.max_vertices)
            .flat_map(|n| {
                let perms = permutations(n);
                let base = u64::from(bounds.max_mult + 1);
                let total = base.pow((n * n) as u32);
                (0..total)
                    .into_par_iter()
                    .filter_map(|idx| {
                        let m = decode(idx, n, base);
                        (is_canonical(&m, &perms) && strongly_connected(&m)).then(|| examine(&m, &perms, bounds))
                    })
                    .flatten()
                    .collect::<Vec<_>>()
            })
            .collect();
        hits.sort();
        hits
    };
    match thread_cap() {
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::BoundsTooLarge(format!("cannot start {k} workers: {e}")))?;
            Ok(pool.install(run))
        }
        None => Ok(run()),
    }
}
