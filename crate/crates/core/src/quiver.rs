//! Weighted quivers, Calabi-Yau data and incidence matrices.
//!
//! Vertices are numbered `1..=n` in all public data; arrows carry a string id
//! so relations and `tau` maps can refer to them by name.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyalg::{IntLaurentPoly, MatPoly};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
    pub weight: u32,
}

impl Arrow {
    pub fn new(id: impl Into<String>, source: usize, target: usize, weight: u32) -> Self {
        Arrow {
            id: id.into(),
            source,
            target,
            weight,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedQuiver {
    #[serde(rename = "vertices")]
    pub n_vertices: usize,
    pub arrows: Vec<Arrow>,
}

/// A violated well-formedness rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    NoVertices,
    VertexOutOfRange { arrow: String, vertex: usize },
    DuplicateArrowId(String),
    /// The weight-0 subquiver has a directed cycle through these vertices.
    ZeroWeightCycle(Vec<usize>),
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::NoVertices => write!(f, "quiver has no vertices"),
            Diagnostic::VertexOutOfRange { arrow, vertex } => {
                write!(f, "arrow {arrow}: vertex {vertex} out of range")
            }
            Diagnostic::DuplicateArrowId(id) => write!(f, "duplicate arrow id {id}"),
            Diagnostic::ZeroWeightCycle(cycle) => {
                write!(f, "Q0 has a cycle through vertices {cycle:?}; kQ is not locally finite")
            }
        }
    }
}

impl WeightedQuiver {
    pub fn new(n_vertices: usize, arrows: Vec<Arrow>) -> Self {
        WeightedQuiver { n_vertices, arrows }
    }

    /// Unweighted quiver (all arrows of weight 1) with `m[i][j]` arrows `i -> j`.
    pub fn from_incidence(m: &[Vec<i64>]) -> Self {
        let mut arrows = Vec::new();
        for (i, row) in m.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                for k in 0..c.max(0) {
                    arrows.push(Arrow::new(format!("a{}_{}_{}", i + 1, j + 1, k + 1), i + 1, j + 1, 1));
                }
            }
        }
        WeightedQuiver::new(m.len(), arrows)
    }

    pub fn arrow(&self, id: &str) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.id == id)
    }

    pub fn arrow_index(&self) -> HashMap<&str, usize> {
        self.arrows
            .iter()
            .enumerate()
            .map(|(k, a)| (a.id.as_str(), k))
            .collect()
    }

    pub fn max_weight(&self) -> u32 {
        self.arrows.iter().map(|a| a.weight).max().unwrap_or(0)
    }

    pub fn all_weights_one(&self) -> bool {
        self.arrows.iter().all(|a| a.weight == 1)
    }

    /// Well-formedness and local finiteness diagnostics; empty when valid.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if self.n_vertices == 0 {
            out.push(Diagnostic::NoVertices);
        }
        let mut seen = HashSet::new();
        for a in &self.arrows {
            for v in [a.source, a.target] {
                if v == 0 || v > self.n_vertices {
                    out.push(Diagnostic::VertexOutOfRange {
                        arrow: a.id.clone(),
                        vertex: v,
                    });
                }
            }
            if !seen.insert(a.id.as_str()) {
                out.push(Diagnostic::DuplicateArrowId(a.id.clone()));
            }
        }
        if out.is_empty() {
            if let Some(cycle) = self.zero_weight_cycle() {
                out.push(Diagnostic::ZeroWeightCycle(cycle));
            }
        }
        out
    }

    /// `Ok` when `validate` reports nothing.
    pub fn check(&self) -> Result<()> {
        let diags = self.validate();
        if diags.is_empty() {
            Ok(())
        } else {
            let msgs: Vec<String> = diags.iter().map(|d| d.to_string()).collect();
            Err(Error::InvalidQuiver(msgs.join("; ")))
        }
    }

    /// True iff the weight-0 subquiver is acyclic.
    pub fn is_locally_finite(&self) -> bool {
        self.zero_weight_cycle().is_none()
    }

    fn zero_weight_cycle(&self) -> Option<Vec<usize>> {
        let n = self.n_vertices;
        let mut adj = vec![Vec::new(); n];
        for a in self.arrows.iter().filter(|a| a.weight == 0) {
            adj[a.source - 1].push(a.target - 1);
        }
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; n];
        let mut parent = vec![usize::MAX; n];
        for start in 0..n {
            if state[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            state[start] = 1;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if *next < adj[v].len() {
                    let w = adj[v][*next];
                    *next += 1;
                    match state[w] {
                        0 => {
                            state[w] = 1;
                            parent[w] = v;
                            stack.push((w, 0));
                        }
                        1 => {
                            let mut cycle = vec![w + 1];
                            let mut u = v;
                            while u != w {
                                cycle.push(u + 1);
                                u = parent[u];
                            }
                            cycle.reverse();
                            return Some(cycle);
                        }
                        _ => {}
                    }
                } else {
                    state[v] = 2;
                    stack.pop();
                }
            }
        }
        None
    }

    /// Weighted incidence matrix `N(t)` and `M = N(1)`.
    pub fn incidence(&self) -> IncidenceData {
        let n = self.n_vertices;
        let mut nt = MatPoly::zero(n);
        let mut m = vec![vec![0i64; n]; n];
        for a in &self.arrows {
            let (i, j) = (a.source - 1, a.target - 1);
            let mut p = nt.get(i, j).clone();
            p.add_term(a.weight as i32, BigInt::from(1));
            nt.set(i, j, p);
            m[i][j] += 1;
        }
        IncidenceData { n: nt, m }
    }

    /// Connected as an undirected graph. The empty quiver is not connected.
    pub fn is_connected(&self) -> bool {
        let n = self.n_vertices;
        if n == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); n];
        for a in &self.arrows {
            adj[a.source - 1].push(a.target - 1);
            adj[a.target - 1].push(a.source - 1);
        }
        reach_count(&adj, 0) == n
    }

    pub fn is_strongly_connected(&self) -> bool {
        let n = self.n_vertices;
        if n == 0 {
            return false;
        }
        let mut fwd = vec![Vec::new(); n];
        let mut bwd = vec![Vec::new(); n];
        for a in &self.arrows {
            fwd[a.source - 1].push(a.target - 1);
            bwd[a.target - 1].push(a.source - 1);
        }
        reach_count(&fwd, 0) == n && reach_count(&bwd, 0) == n
    }

    /// Disjoint union. Arrows of `other` whose id is already taken get primes
    /// appended until the id is fresh.
    pub fn disjoint_union(&self, other: &WeightedQuiver) -> WeightedQuiver {
        let shift = self.n_vertices;
        let mut arrows = self.arrows.clone();
        let mut taken: std::collections::HashSet<String> = arrows.iter().map(|a| a.id.clone()).collect();
        for a in &other.arrows {
            let mut id = a.id.clone();
            while taken.contains(&id) {
                id.push('\'');
            }
            taken.insert(id.clone());
            arrows.push(Arrow::new(id, a.source + shift, a.target + shift, a.weight));
        }
        WeightedQuiver::new(self.n_vertices + other.n_vertices, arrows)
    }

    /// Lexicographically least weighted adjacency tensor over all vertex
    /// relabelings. Exhaustive over `n!` permutations.
    pub fn canonical_form(&self) -> CanonicalForm {
        let n = self.n_vertices;
        let mut cells = vec![vec![Vec::new(); n]; n];
        for a in &self.arrows {
            cells[a.source - 1][a.target - 1].push(a.weight);
        }
        for row in &mut cells {
            for c in row.iter_mut() {
                c.sort_unstable();
            }
        }
        let mut best: Option<Vec<Vec<u32>>> = None;
        for perm in permutations(n) {
            let mut key = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    key.push(cells[perm[i]][perm[j]].clone());
                }
            }
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
        CanonicalForm {
            n,
            cells: best.unwrap_or_default(),
        }
    }
}

fn reach_count(adj: &[Vec<usize>], start: usize) -> usize {
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    count
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// Canonical representative of a weighted quiver up to vertex relabeling.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    /// Row-major cells, each the sorted list of arrow weights `i -> j`.
    pub cells: Vec<Vec<u32>>,
}

impl CanonicalForm {
    /// Arrow counts `M`.
    pub fn incidence_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.cells[i * self.n + j].len() as i64)
                    .collect()
            })
            .collect()
    }
}

/// Weighted incidence matrix `N(t)` together with the arrow counts `M = N(1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceData {
    pub n: MatPoly,
    pub m: Vec<Vec<i64>>,
}

/// Twisted Calabi-Yau datum: Nakayama permutation `mu`, AS-index `ell` and
/// dimension. `mu[i]` is the image of vertex `i + 1`, 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyDatum {
    pub dimension: u8,
    pub mu: Vec<usize>,
    pub ell: Vec<i64>,
}

impl CyDatum {
    pub fn new(dimension: u8, mu: Vec<usize>, ell: Vec<i64>) -> Self {
        CyDatum { dimension, mu, ell }
    }

    /// Identity permutation with a uniform AS-index.
    pub fn untwisted(dimension: u8, n: usize, ell: i64) -> Self {
        CyDatum::new(dimension, (1..=n).collect(), vec![ell; n])
    }

    pub fn size(&self) -> usize {
        self.mu.len()
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if !(1..=3).contains(&self.dimension) {
            return Err(Error::InvalidDatum(format!(
                "dimension {} not in {{1,2,3}}",
                self.dimension
            )));
        }
        if self.mu.len() != n {
            return Err(Error::InvalidDatum(format!(
                "mu has length {}, quiver has {n} vertices",
                self.mu.len()
            )));
        }
        if self.ell.len() != n {
            return Err(Error::InvalidDatum(format!(
                "ell has length {}, quiver has {n} vertices",
                self.ell.len()
            )));
        }
        let mut seen = vec![false; n];
        for &v in &self.mu {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidDatum(format!("mu {:?} is not a permutation", self.mu)));
            }
            seen[v - 1] = true;
        }
        Ok(())
    }

    /// `mu^-1`, 1-based.
    pub fn mu_inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.mu.len()];
        for (i, &m) in self.mu.iter().enumerate() {
            inv[m - 1] = i + 1;
        }
        inv
    }

    /// `P` with `P_ij = 1` iff `mu(i) = j`.
    pub fn permutation_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.mu.len();
        (0..n)
            .map(|i| (0..n).map(|j| i64::from(self.mu[i] == j + 1)).collect())
            .collect()
    }

    /// The monomial matrix `P t^L`, `L = diag(ell)`.
    pub fn p_t_l(&self) -> MatPoly {
        let n = self.mu.len();
        let mut m = MatPoly::zero(n);
        for i in 0..n {
            let j = self.mu[i] - 1;
            m.set(i, j, IntLaurentPoly::monomial(BigInt::from(1), self.ell[j] as i32));
        }
        m
    }

    pub fn is_uniform_ell(&self) -> bool {
        self.ell.windows(2).all(|w| w[0] == w[1])
    }
}

/// On-disk quiver file: a quiver plus an optional Calabi-Yau datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverFile {
    #[serde(flatten)]
    pub quiver: WeightedQuiver,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cy: Option<CyDatum>,
}

impl QuiverFile {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("quiver file serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: usize, arrows: &[(&str, usize, usize, u32)]) -> WeightedQuiver {
        WeightedQuiver::new(
            n,
            arrows
                .iter()
                .map(|(id, s, t, w)| Arrow::new(*id, *s, *t, *w))
                .collect(),
        )
    }

    #[test]
    fn zero_weight_loop_is_a_cycle() {
        let d = q(1, &[("x", 1, 1, 0)]).validate();
        assert_eq!(d, vec![Diagnostic::ZeroWeightCycle(vec![1])]);
        assert!(d[0].to_string().contains("Q0 has a cycle"));
    }

    #[test]
    fn no_arrows_is_valid() {
        assert!(q(1, &[]).validate().is_empty());
    }

    #[test]
    fn zero_weight_two_cycle() {
        let d = q(2, &[("a", 1, 2, 0), ("b", 2, 1, 0)]).validate();
        assert!(matches!(d.as_slice(), [Diagnostic::ZeroWeightCycle(_)]));
        // one positive weight breaks the cycle in Q0
        assert!(q(2, &[("a", 1, 2, 0), ("b", 2, 1, 1)]).validate().is_empty());
    }

    #[test]
    fn malformed_quivers() {
        let d = q(2, &[("a", 1, 3, 1), ("a", 1, 2, 1)]).validate();
        assert!(d.contains(&Diagnostic::VertexOutOfRange {
            arrow: "a".into(),
            vertex: 3
        }));
        assert!(d.contains(&Diagnostic::DuplicateArrowId("a".into())));
        assert_eq!(q(0, &[]).validate(), vec![Diagnostic::NoVertices]);
    }

    #[test]
    fn incidence_skew_group_quiver() {
        let quiver = q(2, &[("a1", 1, 1, 1), ("a2", 2, 2, 1), ("b", 1, 2, 1), ("c", 2, 1, 1)]);
        let inc = quiver.incidence();
        assert_eq!(inc.m, vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(inc.n, MatPoly::from_int_matrix(&[vec![1, 1], vec![1, 1]], 1));
    }

    #[test]
    fn incidence_weighted_loops() {
        let inc = q(1, &[("x", 1, 1, 1), ("y", 1, 1, 4)]).incidence();
        assert_eq!(inc.n.get(0, 0), &IntLaurentPoly::from_i64(&[0, 1, 0, 0, 1]));
        assert_eq!(q(3, &[]).incidence().n, MatPoly::zero(3));
    }

    #[test]
    fn connectivity() {
        let cyc = q(2, &[("a", 1, 2, 1), ("b", 2, 1, 1)]);
        assert!(cyc.is_connected() && cyc.is_strongly_connected());
        let line = q(2, &[("a", 1, 2, 1)]);
        assert!(line.is_connected() && !line.is_strongly_connected());
        let iso = q(2, &[]);
        assert!(!iso.is_connected() && !iso.is_strongly_connected());
    }

    #[test]
    fn repeated_union_keeps_ids_unique() {
        let c = q(1, &[("x", 1, 1, 1)]);
        let u = c.disjoint_union(&c).disjoint_union(&c).disjoint_union(&c);
        assert!(u.check().is_ok());
        let ids: Vec<&str> = u.arrows.iter().map(|a| a.id.as_str()).collect();
        assert_eq!(ids, ["x", "x'", "x''", "x'''"]);
    }

    #[test]
    fn union_is_block_diagonal() {
        let a = q(1, &[("x", 1, 1, 1), ("y", 1, 1, 2)]);
        let b = q(2, &[("u", 1, 2, 1), ("v", 2, 1, 3)]);
        let u = a.disjoint_union(&b).incidence().n;
        let (na, nb) = (a.incidence().n, b.incidence().n);
        for i in 0..3 {
            for j in 0..3 {
                let expected = match (i < 1, j < 1) {
                    (true, true) => na.get(i, j).clone(),
                    (false, false) => nb.get(i - 1, j - 1).clone(),
                    _ => IntLaurentPoly::zero(),
                };
                assert_eq!(u.get(i, j), &expected);
            }
        }
    }

    #[test]
    fn canonical_form_identifies_relabelings() {
        let a = WeightedQuiver::from_incidence(&[vec![0, 3, 0], vec![0, 0, 3], vec![3, 0, 0]]);
        let b = WeightedQuiver::from_incidence(&[vec![0, 0, 3], vec![3, 0, 0], vec![0, 3, 0]]);
        assert_eq!(a.canonical_form(), b.canonical_form());
        let c = WeightedQuiver::from_incidence(&[vec![0, 3, 0], vec![0, 0, 2], vec![3, 0, 0]]);
        assert_ne!(a.canonical_form(), c.canonical_form());
    }

    #[test]
    fn datum_validation_and_p_t_l() {
        let cy = CyDatum::new(2, vec![2, 1], vec![2, 2]);
        cy.check(2).unwrap();
        assert!(CyDatum::new(2, vec![1, 1], vec![2, 2]).check(2).is_err());
        assert!(CyDatum::new(4, vec![1, 2], vec![2, 2]).check(2).is_err());
        let inv = cy.p_t_l().substitute_inverse_t();
        let m2 = IntLaurentPoly::monomial(BigInt::from(1), -2);
        assert_eq!(inv.get(0, 1), &m2);
        assert_eq!(inv.get(1, 0), &m2);
        assert!(inv.get(0, 0).is_zero());
    }

    #[test]
    fn json_schema() {
        let src = r#"{"vertices": 2, "arrows": [{"id": "x1", "source": 1, "target": 2, "weight": 1}], "cy": {"dimension": 2, "mu": [2,1], "ell": [2,2]}}"#;
        let f = QuiverFile::from_json(src).unwrap();
        assert_eq!(f.quiver.n_vertices, 2);
        assert_eq!(f.cy.as_ref().unwrap().mu, vec![2, 1]);
        assert_eq!(QuiverFile::from_json(&f.to_json()).unwrap(), f);
        assert!(QuiverFile::from_json("{\"vertices\": 2}").is_err());
    }

    #[test]
    fn permutation_enumeration() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
    }
}
