//! Degree-by-degree construction of `A = kQ/I`.
//!
//! With `V_n = (+)_x A_{n-w(x)} x`, every degree satisfies
//! `A_n = V_n / span{ b r : r a relation, b a basis element of A_{n-w(r)} }`,
//! because `I_n = sum_x I_{n-w(x)} x + sum_r (kQ)_{n-w(r)} r`. Each `V_n` is
//! spanned by standard monomials of lower degree times one arrow, so the
//! linear algebra is sized by `dim A`, not by the number of paths.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::presentation::{render_combination, GradedPresentation, Term};
use crate::error::{Error, Result};

/// Sparse rational vector indexed by column.
pub type SparseVec = BTreeMap<usize, BigRational>;

/// Default cap on `dim V_n`, the ambient space of one degree.
pub const DEFAULT_PATH_CAP: usize = 2_000_000;

fn axpy(v: &mut SparseVec, c: &BigRational, row: &SparseVec) {
    for (k, x) in row {
        let val = v.get(k).cloned().unwrap_or_else(BigRational::zero) - c * x;
        if val.is_zero() {
            v.remove(k);
        } else {
            v.insert(*k, val);
        }
    }
}

/// Reduced row echelon form; each pivot is the lowest column of its row
/// and carries coefficient 1.
#[derive(Clone, Debug, Default)]
struct Echelon {
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    fn reduce(&self, v: &mut SparseVec) {
        let hits: Vec<(usize, BigRational)> = v
            .iter()
            .filter(|(c, _)| self.pivot_row.contains_key(c))
            .map(|(c, x)| (*c, x.clone()))
            .collect();
        for (c, x) in hits {
            axpy(v, &x, &self.rows[self.pivot_row[&c]]);
        }
    }

    fn insert(&mut self, mut v: SparseVec) -> bool {
        self.reduce(&mut v);
        let Some((&p, lead)) = v.iter().next() else {
            return false;
        };
        let inv = BigRational::one() / lead;
        for x in v.values_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if let Some(c) = row.get(&p).cloned() {
                axpy(row, &c, &v);
            }
        }
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push(v);
        true
    }

    fn is_pivot(&self, c: usize) -> bool {
        self.pivot_row.contains_key(&c)
    }
}

/// A standard monomial: a path whose image is a basis element of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    /// 0-based vertex.
    pub source: usize,
    /// 0-based vertex.
    pub target: usize,
    /// 0-based arrow indices, left to right.
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, Default)]
struct Level {
    basis: Vec<Monomial>,
    /// Column `c` of `V_n` is `basis_{n-w(x)}[b] * x` for `vcols[c] = (b, x)`.
    vcols: Vec<(usize, usize)>,
    vindex: HashMap<(usize, usize), usize>,
    echelon: Echelon,
    col_basis: Vec<Option<usize>>,
}

/// Element of `A_n` in the standard monomial basis of that degree.
pub type AlgebraVec = BTreeMap<usize, BigRational>;

/// The algebra `kQ/I` computed up to some degree.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pres: GradedPresentation,
    arrows: Vec<(usize, usize, usize)>,
    levels: Vec<Level>,
    cap: usize,
}

impl QuotientAlgebra {
    pub fn new(pres: &GradedPresentation) -> Self {
        Self::with_cap(pres, DEFAULT_PATH_CAP)
    }

    pub fn with_cap(pres: &GradedPresentation, cap: usize) -> Self {
        let n = pres.quiver.n_vertices;
        let arrows = pres
            .quiver
            .arrows
            .iter()
            .map(|a| (a.source - 1, a.target - 1, a.weight as usize))
            .collect();
        let level0 = Level {
            basis: (0..n)
                .map(|v| Monomial {
                    source: v,
                    target: v,
                    path: Vec::new(),
                })
                .collect(),
            ..Level::default()
        };
        QuotientAlgebra {
            pres: pres.clone(),
            arrows,
            levels: vec![level0],
            cap,
        }
    }

    pub fn presentation(&self) -> &GradedPresentation {
        &self.pres
    }

    /// Highest degree computed so far.
    pub fn degree(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn extend_to(&mut self, degree: usize) -> Result<()> {
        while self.levels.len() <= degree {
            self.build_level(self.levels.len())?;
        }
        Ok(())
    }

    pub fn basis(&self, n: usize) -> &[Monomial] {
        &self.levels[n].basis
    }

    pub fn dim(&self, n: usize) -> usize {
        self.levels[n].basis.len()
    }

    /// `dim e_i A_n e_j` for every `(i, j)`, 0-based.
    pub fn block_dims(&self, n: usize) -> Vec<Vec<u64>> {
        let nv = self.pres.quiver.n_vertices;
        let mut d = vec![vec![0u64; nv]; nv];
        for m in &self.levels[n].basis {
            d[m.source][m.target] += 1;
        }
        d
    }

    fn weight(&self, x: usize) -> usize {
        self.arrows[x].2
    }

    fn build_level(&mut self, n: usize) -> Result<()> {
        let mut level = Level::default();
        for (x, &(src, _, w)) in self.arrows.iter().enumerate() {
            if w > n {
                continue;
            }
            for (b, m) in self.levels[n - w].basis.iter().enumerate() {
                if m.target == src {
                    level.vindex.insert((b, x), level.vcols.len());
                    level.vcols.push((b, x));
                }
            }
        }
        if level.vcols.len() > self.cap {
            return Err(Error::TruncationTooLarge {
                degree: n,
                count: level.vcols.len(),
                cap: self.cap,
            });
        }
        self.levels.push(level);

        let mut generators = Vec::new();
        for r in &self.pres.relations {
            let wr = r.weight as usize;
            if wr > n {
                continue;
            }
            for (b, m) in self.levels[n - wr].basis.iter().enumerate() {
                if m.target != r.source - 1 {
                    continue;
                }
                let mut g = SparseVec::new();
                for t in &r.terms {
                    let (last, init) = t.path.split_last().expect("relations have length >= 2");
                    let mut u = unit(b);
                    let mut deg = n - wr;
                    for &y in init {
                        u = self.mul_arrow(deg, &u, y);
                        deg += self.weight(y);
                    }
                    self.accumulate_v(deg, &u, *last, &t.coeff, &mut g);
                }
                generators.push(g);
            }
        }

        let mut level = self.levels.pop().expect("just pushed");
        for g in generators {
            level.echelon.insert(g);
        }
        let mut col_basis = vec![None; level.vcols.len()];
        let mut basis = Vec::new();
        for (c, &(b, x)) in level.vcols.iter().enumerate() {
            if level.echelon.is_pivot(c) {
                continue;
            }
            let prev = &self.levels[n - self.arrows[x].2].basis[b];
            let mut path = prev.path.clone();
            path.push(x);
            col_basis[c] = Some(basis.len());
            basis.push(Monomial {
                source: prev.source,
                target: self.arrows[x].1,
                path,
            });
        }
        level.col_basis = col_basis;
        level.basis = basis;
        self.levels.push(level);
        Ok(())
    }

    /// Add `c * (u x)` to a vector of `V_{n + w(x)}` coordinates.
    fn accumulate_v(&self, n: usize, u: &AlgebraVec, x: usize, c: &BigRational, acc: &mut SparseVec) {
        let level = &self.levels[n + self.weight(x)];
        let src = self.arrows[x].0;
        for (b, coeff) in u {
            if self.levels[n].basis[*b].target != src {
                continue;
            }
            let col = level.vindex[&(*b, x)];
            let val = acc.get(&col).cloned().unwrap_or_else(BigRational::zero) + c * coeff;
            if val.is_zero() {
                acc.remove(&col);
            } else {
                acc.insert(col, val);
            }
        }
    }

    fn to_basis(&self, n: usize, mut v: SparseVec) -> AlgebraVec {
        let level = &self.levels[n];
        level.echelon.reduce(&mut v);
        v.into_iter()
            .map(|(c, x)| (level.col_basis[c].expect("reduced vectors avoid pivots"), x))
            .collect()
    }

    /// `u * x` for `u` in `A_n`; needs degree `n + w(x)` to be computed.
    pub fn mul_arrow(&self, n: usize, u: &AlgebraVec, x: usize) -> AlgebraVec {
        let mut acc = SparseVec::new();
        self.accumulate_v(n, u, x, &BigRational::one(), &mut acc);
        self.to_basis(n + self.weight(x), acc)
    }

    /// Image of a path (0-based vertex, arrow indices) in `A`.
    pub fn normal_form(&self, source: usize, path: &[usize]) -> AlgebraVec {
        let mut u = unit(source);
        let mut deg = 0;
        for &x in path {
            u = self.mul_arrow(deg, &u, x);
            deg += self.weight(x);
        }
        u
    }

    /// Image of `sum c_k p_k`, all paths starting at `source` with equal weight.
    pub fn normal_form_terms(&self, source: usize, terms: &[Term]) -> AlgebraVec {
        let mut acc = AlgebraVec::new();
        for t in terms {
            for (k, x) in self.normal_form(source, &t.path) {
                let val = acc.get(&k).cloned().unwrap_or_else(BigRational::zero) + &t.coeff * x;
                if val.is_zero() {
                    acc.remove(&k);
                } else {
                    acc.insert(k, val);
                }
            }
        }
        acc
    }

    /// Render an element of `A_n` through its standard monomials.
    pub fn render(&self, n: usize, u: &AlgebraVec) -> String {
        let Some((&first, _)) = u.iter().next() else {
            return "0".into();
        };
        let source = self.levels[n].basis[first].source + 1;
        let terms: Vec<Term> = u
            .iter()
            .map(|(b, c)| Term::new(c.clone(), self.levels[n].basis[*b].path.clone()))
            .collect();
        render_combination(&self.pres.quiver, source, &terms)
    }
}

fn unit(b: usize) -> AlgebraVec {
    let mut u = AlgebraVec::new();
    u.insert(b, BigRational::one());
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::presentation::Relation;
    use crate::quiver::{Arrow, WeightedQuiver};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn free_two_loops() {
        let quiver = WeightedQuiver::new(1, vec![Arrow::new("x", 1, 1, 1), Arrow::new("y", 1, 1, 1)]);
        let p = GradedPresentation::free(quiver).unwrap();
        let mut a = QuotientAlgebra::new(&p);
        a.extend_to(6).unwrap();
        for n in 0..=6 {
            assert_eq!(a.dim(n), 1 << n);
        }
    }

    #[test]
    fn commutative_plane() {
        let quiver = WeightedQuiver::new(1, vec![Arrow::new("x", 1, 1, 1), Arrow::new("y", 1, 1, 1)]);
        let r = Relation::new(&quiver, vec![Term::new(q(1), vec![0, 1]), Term::new(q(-1), vec![1, 0])]).unwrap();
        let p = GradedPresentation::new(quiver, vec![r]).unwrap();
        let mut a = QuotientAlgebra::new(&p);
        a.extend_to(8).unwrap();
        for n in 0..=8 {
            assert_eq!(a.dim(n), n + 1);
        }
        let yx = a.normal_form(0, &[1, 0]);
        let xy = a.normal_form(0, &[0, 1]);
        assert_eq!(xy, yx);
    }

    #[test]
    fn cap_enforced() {
        let quiver = WeightedQuiver::new(1, vec![Arrow::new("x", 1, 1, 1), Arrow::new("y", 1, 1, 1)]);
        let p = GradedPresentation::free(quiver).unwrap();
        let mut a = QuotientAlgebra::with_cap(&p, 100);
        assert!(matches!(a.extend_to(10), Err(Error::TruncationTooLarge { degree: 7, .. })));
    }
}
