//! Brute-force graded dimensions of `kQ/I` by exact linear algebra, with
//! mesh and semipotential relation builders, truncated socle checks and
//! comparison against closed-form series.

mod engine;
mod mesh;
mod presentation;
mod semipotential;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

pub use engine::{AlgebraVec, Monomial, QuotientAlgebra, DEFAULT_PATH_CAP};
pub use mesh::{build_mesh_relations, MeshData};
pub use presentation::{
    combine_terms, parse_rational, GradedPresentation, OracleInput, Relation, RelationJson, TauTermJson, Term,
    TermJson,
};
pub use semipotential::{build_semipotential_relations, Semipotential, SemipotentialRelations};

use crate::error::Result;
use crate::polyalg::{invert_as_series, rational_kernel, MatPoly};

/// `dim e_i A_n e_j` for `0 <= n <= degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimTable {
    pub degree: usize,
    pub vertices: usize,
    /// `dims[n][i][j]`, 0-based vertices.
    pub dims: Vec<Vec<Vec<u64>>>,
}

impl DimTable {
    /// Entry for 1-based vertices.
    pub fn get(&self, i: usize, j: usize, n: usize) -> u64 {
        self.dims[n][i - 1][j - 1]
    }

    /// Total dimension of `A_n`.
    pub fn total(&self, n: usize) -> u64 {
        self.dims[n].iter().flatten().sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,n,dim\n");
        for i in 0..self.vertices {
            for j in 0..self.vertices {
                for n in 0..=self.degree {
                    let _ = writeln!(out, "{},{},{},{}", i + 1, j + 1, n, self.dims[n][i][j]);
                }
            }
        }
        out
    }
}

pub fn graded_dims(p: &GradedPresentation, degree: usize) -> Result<DimTable> {
    graded_dims_with_cap(p, degree, DEFAULT_PATH_CAP)
}

pub fn graded_dims_with_cap(p: &GradedPresentation, degree: usize, cap: usize) -> Result<DimTable> {
    let mut a = QuotientAlgebra::with_cap(p, cap);
    a.extend_to(degree)?;
    Ok(table_of(&a, degree))
}

fn table_of(a: &QuotientAlgebra, degree: usize) -> DimTable {
    DimTable {
        degree,
        vertices: a.presentation().quiver.n_vertices,
        dims: (0..=degree).map(|n| a.block_dims(n)).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    /// 1-based.
    pub i: usize,
    /// 1-based.
    pub j: usize,
    pub n: usize,
    pub expected: String,
    pub found: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesComparison {
    pub degree: usize,
    pub matches: bool,
    pub first_mismatch: Option<Mismatch>,
}

/// Compare a dimension table with the coefficients of `q(t)^-1`, scanning
/// degrees in increasing order.
pub fn check_against_series(table: &DimTable, q: &MatPoly) -> Result<SeriesComparison> {
    let s = invert_as_series(q, table.degree)?;
    let nv = table.vertices.min(q.size());
    for n in 0..=table.degree {
        for i in 0..nv {
            for j in 0..nv {
                let found = table.dims[n][i][j];
                let expected = s.coeff(i, j, n);
                if *expected != BigRational::from_integer(found.into()) {
                    return Ok(SeriesComparison {
                        degree: table.degree,
                        matches: false,
                        first_mismatch: Some(Mismatch {
                            i: i + 1,
                            j: j + 1,
                            n,
                            expected: expected.to_string(),
                            found,
                        }),
                    });
                }
            }
        }
    }
    Ok(SeriesComparison {
        degree: table.degree,
        matches: table.vertices == q.size(),
        first_mismatch: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SocleWitness {
    /// 1-based.
    pub source: usize,
    /// 1-based.
    pub target: usize,
    pub degree: usize,
    pub element: String,
}

/// Socle evidence up to a cutoff. `trivial` only speaks for the degrees
/// `0..=checked_up_to`; a witness is a genuine socle element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SocleReport {
    pub side: Side,
    pub degree: usize,
    pub checked_up_to: Option<usize>,
    pub trivial: bool,
    pub truncated: bool,
    pub witnesses: Vec<SocleWitness>,
}

/// Kernel of `u -> (u x)_x` (right) or `u -> (x u)_x` (left) on each block
/// `e_i A_n e_j` with `n <= degree - max arrow weight`.
pub fn truncated_socle_trivial(p: &GradedPresentation, side: Side, degree: usize) -> Result<SocleReport> {
    let mut a = QuotientAlgebra::new(p);
    a.extend_to(degree)?;
    let nv = p.quiver.n_vertices;
    let checked_up_to = degree.checked_sub(p.quiver.max_weight() as usize);
    let mut witnesses = Vec::new();
    if let Some(top) = checked_up_to {
        for n in 0..=top {
            for i in 0..nv {
                for j in 0..nv {
                    for u in block_socle(&a, side, n, i, j) {
                        witnesses.push(SocleWitness {
                            source: i + 1,
                            target: j + 1,
                            degree: n,
                            element: a.render(n, &u),
                        });
                    }
                }
            }
        }
    }
    Ok(SocleReport {
        side,
        degree,
        checked_up_to,
        trivial: witnesses.is_empty(),
        truncated: true,
        witnesses,
    })
}

fn block_socle(a: &QuotientAlgebra, side: Side, n: usize, i: usize, j: usize) -> Vec<AlgebraVec> {
    let arrows = &a.presentation().quiver.arrows;
    let cols: Vec<usize> = (0..a.dim(n))
        .filter(|&b| a.basis(n)[b].source == i && a.basis(n)[b].target == j)
        .collect();
    // rows of the multiplication matrix are keyed by (arrow, image basis element)
    let mut row_index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut images = Vec::with_capacity(cols.len());
    for &b in &cols {
        let mut img = Vec::new();
        for (x, arrow) in arrows.iter().enumerate() {
            let prod = match side {
                Side::Right if arrow.source - 1 == j => a.mul_arrow(n, &AlgebraVec::from([(b, BigRational::one())]), x),
                Side::Left if arrow.target - 1 == i => {
                    let mut path = vec![x];
                    path.extend_from_slice(&a.basis(n)[b].path);
                    a.normal_form(arrow.source - 1, &path)
                }
                _ => continue,
            };
            for (k, c) in prod {
                let len = row_index.len();
                row_index.entry((x, k)).or_insert(len);
                img.push(((x, k), c));
            }
        }
        images.push(img);
    }
    let kernel = if row_index.is_empty() {
        (0..cols.len())
            .map(|k| (0..cols.len()).map(|l| if k == l { BigRational::one() } else { BigRational::zero() }).collect())
            .collect()
    } else {
        let mut matrix = vec![vec![BigRational::zero(); cols.len()]; row_index.len()];
        for (c, img) in images.into_iter().enumerate() {
            for (key, v) in img {
                matrix[row_index[&key]][c] = v;
            }
        }
        rational_kernel(&matrix)
    };
    kernel
        .into_iter()
        .map(|v| {
            v.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (cols[k], c))
                .collect()
        })
        .collect()
}

/// Relations (1-based positions) lying in the ideal generated by the
/// others, detected in their own degree when that is at most `degree`.
pub fn redundant_relations(p: &GradedPresentation, degree: usize) -> Result<Vec<usize>> {
    let mut redundant = Vec::new();
    for (k, r) in p.relations.iter().enumerate() {
        let w = r.weight as usize;
        if w > degree {
            continue;
        }
        let mut others = p.relations.clone();
        others.remove(k);
        let sub = GradedPresentation {
            quiver: p.quiver.clone(),
            relations: others,
        };
        let mut a = QuotientAlgebra::new(&sub);
        a.extend_to(w)?;
        if a.normal_form_terms(r.source - 1, &r.terms).is_empty() {
            redundant.push(k + 1);
        }
    }
    Ok(redundant)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::IntLaurentPoly;
    use crate::quiver::{Arrow, WeightedQuiver};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn weighted_plane() -> GradedPresentation {
        let quiver = WeightedQuiver::new(1, vec![Arrow::new("x", 1, 1, 1), Arrow::new("y", 1, 1, 2)]);
        let r = Relation::new(
            &quiver,
            vec![Term::new(q(1), vec![1, 0]), Term::new(q(-1), vec![0, 1]), Term::new(q(-1), vec![0, 0, 0])],
        )
        .unwrap();
        GradedPresentation::new(quiver, vec![r]).unwrap()
    }

    #[test]
    fn weighted_plane_dims_and_series() {
        let t = graded_dims(&weighted_plane(), 10).unwrap();
        let dims: Vec<u64> = (0..=10).map(|n| t.get(1, 1, n)).collect();
        assert_eq!(dims, vec![1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6]);
        let qm = MatPoly::from_rows(vec![vec![IntLaurentPoly::from_i64(&[1, -1, -1, 1])]]);
        assert!(check_against_series(&t, &qm).unwrap().matches);
        assert!(truncated_socle_trivial(&weighted_plane(), Side::Right, 8).unwrap().trivial);
        assert!(truncated_socle_trivial(&weighted_plane(), Side::Left, 8).unwrap().trivial);
    }

    #[test]
    fn free_mismatch() {
        let quiver = WeightedQuiver::new(1, vec![Arrow::new("x", 1, 1, 1), Arrow::new("y", 1, 1, 1)]);
        let t = graded_dims(&GradedPresentation::free(quiver).unwrap(), 3).unwrap();
        let qm = MatPoly::from_rows(vec![vec![IntLaurentPoly::from_i64(&[1, -2, 1])]]);
        let c = check_against_series(&t, &qm).unwrap();
        assert!(!c.matches);
        let m = c.first_mismatch.unwrap();
        assert_eq!((m.n, m.found, m.expected.as_str()), (2, 4, "3"));
    }

    #[test]
    fn dual_numbers_socle() {
        let quiver = WeightedQuiver::new(1, vec![Arrow::new("x", 1, 1, 1)]);
        let r = Relation::new(&quiver, vec![Term::new(q(1), vec![0, 0])]).unwrap();
        let p = GradedPresentation::new(quiver, vec![r]).unwrap();
        for side in [Side::Left, Side::Right] {
            let s = truncated_socle_trivial(&p, side, 4).unwrap();
            assert!(!s.trivial);
            assert_eq!(s.witnesses[0].element, "x");
            assert_eq!(s.witnesses[0].degree, 1);
        }
    }

    #[test]
    fn csv_layout() {
        let t = graded_dims(&weighted_plane(), 2).unwrap();
        assert_eq!(t.to_csv(), "i,j,n,dim\n1,1,0,1\n1,1,1,1\n1,1,2,2\n");
    }

    #[test]
    fn redundancy_detected() {
        let quiver = WeightedQuiver::new(1, vec![Arrow::new("x", 1, 1, 1), Arrow::new("y", 1, 1, 1)]);
        let r = Relation::new(&quiver, vec![Term::new(q(1), vec![0, 1]), Term::new(q(-1), vec![1, 0])]).unwrap();
        let r2 = Relation::new(&quiver, vec![Term::new(q(2), vec![0, 1]), Term::new(q(-2), vec![1, 0])]).unwrap();
        let p = GradedPresentation::new(quiver.clone(), vec![r.clone(), r2]).unwrap();
        assert_eq!(redundant_relations(&p, 4).unwrap(), vec![1, 2]);
        let p = GradedPresentation::new(quiver, vec![r]).unwrap();
        assert!(redundant_relations(&p, 4).unwrap().is_empty());
    }
}
