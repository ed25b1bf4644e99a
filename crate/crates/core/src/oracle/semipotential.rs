//! Twisted semipotentials `omega = sum_{i,j} y_i g_ij x_j` and their
//! row relations `h_i = sum_j g_ij x_j` and column relations
//! `h'_j = sum_i y_i g_ij`.

use std::collections::BTreeMap;

use num_rational::BigRational;

use super::presentation::{combine_terms, GradedPresentation, Relation, Term};
use crate::error::{Error, Result};
use crate::quiver::{CyDatum, WeightedQuiver};

/// Coefficient family of a semipotential. `x_j` runs over the arrows;
/// `y_i` is a declared second basis of the arrow space, each element a
/// combination of arrows sharing endpoints and weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semipotential {
    pub y_basis: Vec<Vec<(BigRational, usize)>>,
    /// `g[(i, j)]`: the path combination between `y_i` and arrow `x_j`.
    pub g: BTreeMap<(usize, usize), Vec<Term>>,
}

impl Semipotential {
    /// Read off `g_ij` from a potential written in paths, with `y_i = x_i`.
    /// Every term needs at least three arrows.
    pub fn from_potential(quiver: &WeightedQuiver, omega: &[Term]) -> Result<Self> {
        let y_basis = (0..quiver.arrows.len())
            .map(|k| vec![(BigRational::from_integer(1.into()), k)])
            .collect();
        let mut g: BTreeMap<(usize, usize), Vec<Term>> = BTreeMap::new();
        for t in combine_terms(omega.iter().cloned()) {
            if t.path.len() < 3 {
                return Err(Error::InvalidRelation(format!(
                    "potential term of length {} is shorter than 3",
                    t.path.len()
                )));
            }
            let (first, rest) = t.path.split_first().expect("nonempty");
            let (last, mid) = rest.split_last().expect("nonempty");
            g.entry((*first, *last)).or_default().push(Term::new(t.coeff, mid.to_vec()));
        }
        Ok(Semipotential { y_basis, g })
    }

    /// `omega` expanded in paths.
    pub fn omega(&self) -> Vec<Term> {
        combine_terms(self.g.iter().flat_map(|(&(i, j), gij)| {
            self.y_basis[i].iter().flat_map(move |(cy, y)| {
                gij.iter().map(move |t| {
                    let mut path = vec![*y];
                    path.extend_from_slice(&t.path);
                    path.push(j);
                    Term::new(cy * &t.coeff, path)
                })
            })
        }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemipotentialRelations {
    /// `h_i e_r`, the presentation used downstream.
    pub rows: GradedPresentation,
    /// `e_s h'_j`, kept for the two-sided check.
    pub cols: GradedPresentation,
}

fn path_endpoints(quiver: &WeightedQuiver, path: &[usize]) -> Result<(usize, usize, u32)> {
    let a = &quiver.arrows;
    for w in path.windows(2) {
        if a[w[0]].target != a[w[1]].source {
            return Err(Error::InvalidRelation(format!(
                "arrows {} and {} do not compose",
                a[w[0]].id, a[w[1]].id
            )));
        }
    }
    let w = path.iter().map(|&k| a[k].weight).sum();
    Ok((a[path[0]].source, a[path[path.len() - 1]].target, w))
}

/// Check the weak-potential condition and split `h_i`, `h'_j` into
/// idempotent blocks.
pub fn build_semipotential_relations(
    quiver: &WeightedQuiver,
    cy: &CyDatum,
    sp: &Semipotential,
) -> Result<SemipotentialRelations> {
    quiver.check()?;
    cy.check(quiver.n_vertices)?;
    let mu_inv = cy.mu_inverse();
    let omega = sp.omega();
    if omega.is_empty() {
        return Err(Error::NotWeakPotential("omega is zero".into()));
    }
    for t in &omega {
        let (s, r, w) = path_endpoints(quiver, &t.path)?;
        if s != mu_inv[r - 1] {
            return Err(Error::NotWeakPotential(format!(
                "a term of omega_{r} starts at vertex {s}, expected mu^-1({r}) = {}",
                mu_inv[r - 1]
            )));
        }
        if i64::from(w) != cy.ell[r - 1] {
            return Err(Error::NotWeakPotential(format!(
                "a term of omega_{r} has weight {w}, expected ell_{r} = {}",
                cy.ell[r - 1]
            )));
        }
    }

    // rows: h_i = sum_j g_ij x_j, split by target
    let mut rows: BTreeMap<(usize, usize), Vec<Term>> = BTreeMap::new();
    for (&(i, j), gij) in &sp.g {
        for t in gij {
            let mut path = t.path.clone();
            path.push(j);
            let target = quiver.arrows[j].target;
            rows.entry((i, target)).or_default().push(Term::new(t.coeff.clone(), path));
        }
    }
    // cols: h'_j = sum_i y_i g_ij, split by source
    let mut cols: BTreeMap<(usize, usize), Vec<Term>> = BTreeMap::new();
    for (&(i, j), gij) in &sp.g {
        for (c, y) in &sp.y_basis[i] {
            for t in gij {
                let mut path = vec![*y];
                path.extend_from_slice(&t.path);
                let source = quiver.arrows[*y].source;
                cols.entry((j, source)).or_default().push(Term::new(c * &t.coeff, path));
            }
        }
    }
    let collect = |groups: BTreeMap<(usize, usize), Vec<Term>>| -> Result<Vec<Relation>> {
        groups
            .into_values()
            .map(combine_terms)
            .filter(|ts| !ts.is_empty())
            .map(|ts| Relation::new(quiver, ts))
            .collect()
    };
    Ok(SemipotentialRelations {
        rows: GradedPresentation::new(quiver.clone(), collect(rows)?)?,
        cols: GradedPresentation::new(quiver.clone(), collect(cols)?)?,
    })
}
