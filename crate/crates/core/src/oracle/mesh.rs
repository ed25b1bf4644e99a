//! Mesh relations `h_r = sum_{x: target r} tau(x) x` for dimension 2.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::presentation::{lookup_arrow, parse_rational, GradedPresentation, Relation, TauTermJson, Term};
use crate::error::{Error, Result};
use crate::polyalg::rational_kernel;
use crate::quiver::{CyDatum, WeightedQuiver};

/// `tau` on the arrow space: each arrow id maps to a rational combination
/// of arrow ids. Arrows absent from the map go to zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MeshData {
    pub tau: BTreeMap<String, Vec<(BigRational, String)>>,
}

impl MeshData {
    pub fn from_json_map(map: &BTreeMap<String, Vec<TauTermJson>>) -> Result<Self> {
        let tau = map
            .iter()
            .map(|(k, v)| {
                let image = v
                    .iter()
                    .map(|t| Ok((parse_rational(&t.coeff)?, t.arrow.clone())))
                    .collect::<Result<Vec<_>>>()?;
                Ok((k.clone(), image))
            })
            .collect::<Result<_>>()?;
        Ok(MeshData { tau })
    }

    pub fn insert(&mut self, arrow: &str, image: &[(i64, &str)]) -> &mut Self {
        self.tau.insert(
            arrow.to_string(),
            image
                .iter()
                .map(|(c, y)| (BigRational::from_integer((*c).into()), y.to_string()))
                .collect(),
        );
        self
    }
}

/// One relation per vertex `r`, living in `e_{mu^-1(r)} kQ_{ell_r} e_r`.
pub fn build_mesh_relations(quiver: &WeightedQuiver, cy: &CyDatum, tau: &MeshData) -> Result<GradedPresentation> {
    quiver.check()?;
    cy.check(quiver.n_vertices)?;
    if let Some(k) = tau.tau.keys().find(|k| quiver.arrow(k).is_none()) {
        return Err(Error::Parse(format!("tau: unknown arrow id {k:?}")));
    }
    let mu_inv = cy.mu_inverse();
    let arrows = &quiver.arrows;

    // images[x] = sparse combination of codomain arrows
    let mut images: Vec<Vec<(BigRational, usize)>> = Vec::with_capacity(arrows.len());
    for x in arrows {
        let r = x.target;
        let want_src = mu_inv[r - 1];
        let want_w = cy.ell[r - 1] - i64::from(x.weight);
        let mut img = Vec::new();
        for (c, yid) in tau.tau.get(&x.id).map(Vec::as_slice).unwrap_or(&[]) {
            let y = lookup_arrow(quiver, yid)?;
            let ya = &arrows[y];
            if ya.source != want_src || ya.target != x.source {
                return Err(Error::DegreeMismatch(format!(
                    "tau({}) contains {} : {}->{}, expected an arrow {}->{}",
                    x.id, ya.id, ya.source, ya.target, want_src, x.source
                )));
            }
            if i64::from(ya.weight) != want_w {
                return Err(Error::DegreeMismatch(format!(
                    "tau({}) contains {} of weight {}, expected weight ell_{} - {} = {}",
                    x.id, ya.id, ya.weight, r, x.weight, want_w
                )));
            }
            if !c.is_zero() {
                img.push((c.clone(), y));
            }
        }
        images.push(img);
    }

    // domain blocks (source, target, weight)
    let mut blocks: BTreeMap<(usize, usize, u32), Vec<usize>> = BTreeMap::new();
    for (k, x) in arrows.iter().enumerate() {
        blocks.entry((x.source, x.target, x.weight)).or_default().push(k);
    }
    for (&(i, r, d), dom) in &blocks {
        let cod_w = cy.ell[r - 1] - i64::from(d);
        let cod: Vec<usize> = (0..arrows.len())
            .filter(|&y| {
                arrows[y].source == mu_inv[r - 1] && arrows[y].target == i && i64::from(arrows[y].weight) == cod_w
            })
            .collect();
        let rank = if cod.is_empty() {
            0
        } else {
            let rows: Vec<Vec<BigRational>> = cod
                .iter()
                .map(|&y| {
                    dom.iter()
                        .map(|&x| {
                            images[x]
                                .iter()
                                .filter(|(_, z)| *z == y)
                                .fold(BigRational::zero(), |acc, (c, _)| acc + c)
                        })
                        .collect()
                })
                .collect();
            dom.len() - rational_kernel(&rows).len()
        };
        if rank < dom.len() {
            return Err(Error::TauNotInjective(format!(
                "rank {rank} on the {} arrow(s) {i}->{r} of weight {d}",
                dom.len()
            )));
        }
        if rank < cod.len() {
            return Err(Error::TauImageNotArrowSpace(format!(
                "image of the arrows {i}->{r} of weight {d} has rank {rank}, the arrow space {}->{i} of weight {cod_w} has dimension {}",
                mu_inv[r - 1],
                cod.len()
            )));
        }
    }

    let mut relations = Vec::with_capacity(quiver.n_vertices);
    for r in 1..=quiver.n_vertices {
        let terms: Vec<Term> = arrows
            .iter()
            .enumerate()
            .filter(|(_, x)| x.target == r)
            .flat_map(|(k, _)| images[k].iter().map(move |(c, y)| Term::new(c.clone(), vec![*y, k])))
            .collect();
        if terms.is_empty() {
            return Err(Error::InvalidRelation(format!("mesh relation at vertex {r} is zero")));
        }
        relations.push(Relation::new(quiver, terms)?);
    }
    GradedPresentation::new(quiver.clone(), relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cy_series::build_q;
    use crate::oracle::{check_against_series, graded_dims, truncated_socle_trivial, Side};
    use crate::quiver::Arrow;

    fn skew_group() -> (WeightedQuiver, CyDatum, MeshData) {
        let quiver = WeightedQuiver::new(
            2,
            vec![
                Arrow::new("a1", 1, 1, 1),
                Arrow::new("a2", 2, 2, 1),
                Arrow::new("b", 1, 2, 1),
                Arrow::new("c", 2, 1, 1),
            ],
        );
        let mut tau = MeshData::default();
        tau.insert("a1", &[(1, "c")])
            .insert("c", &[(-1, "a2")])
            .insert("a2", &[(1, "b")])
            .insert("b", &[(-1, "a1")]);
        (quiver, CyDatum::new(2, vec![2, 1], vec![2, 2]), tau)
    }

    #[test]
    fn skew_group_matches_series() {
        let (quiver, cy, tau) = skew_group();
        let p = build_mesh_relations(&quiver, &cy, &tau).unwrap();
        assert_eq!(p.relations.len(), 2);
        assert_eq!(p.relations[0].render(&quiver), "-a2*c + c*a1");
        let table = graded_dims(&p, 8).unwrap();
        let model = build_q(&quiver, &cy).unwrap();
        assert!(check_against_series(&table, &model.q).unwrap().matches);
        assert!(truncated_socle_trivial(&p, Side::Right, 6).unwrap().trivial);
    }

    #[test]
    fn degree_mismatch() {
        let quiver = WeightedQuiver::new(2, vec![Arrow::new("a", 1, 2, 1), Arrow::new("b", 2, 1, 1)]);
        let mut tau = MeshData::default();
        tau.insert("a", &[(1, "b")]).insert("b", &[(1, "a")]);
        let e = build_mesh_relations(&quiver, &CyDatum::untwisted(2, 2, 3), &tau);
        assert!(matches!(e, Err(Error::DegreeMismatch(_))));
    }

    #[test]
    fn non_injective_tau() {
        let (quiver, cy, mut tau) = skew_group();
        tau.tau.remove("b");
        assert!(matches!(build_mesh_relations(&quiver, &cy, &tau), Err(Error::TauNotInjective(_))));
    }

    #[test]
    fn image_too_small() {
        // two loops at one vertex, tau sends both to x: rank 1 < 2
        let quiver = WeightedQuiver::new(1, vec![Arrow::new("x", 1, 1, 1), Arrow::new("y", 1, 1, 1)]);
        let mut tau = MeshData::default();
        tau.insert("x", &[(1, "y")]).insert("y", &[(2, "y")]);
        let e = build_mesh_relations(&quiver, &CyDatum::untwisted(2, 1, 2), &tau);
        assert!(matches!(e, Err(Error::TauNotInjective(_))));
    }

    #[test]
    fn image_not_arrow_space() {
        let quiver = WeightedQuiver::new(
            1,
            vec![Arrow::new("x", 1, 1, 1), Arrow::new("y", 1, 1, 2), Arrow::new("z", 1, 1, 2)],
        );
        let mut tau = MeshData::default();
        tau.insert("x", &[(1, "y")]).insert("y", &[(1, "x")]).insert("z", &[(1, "x")]);
        let e = build_mesh_relations(&quiver, &CyDatum::untwisted(2, 1, 3), &tau);
        assert!(matches!(e, Err(Error::TauImageNotArrowSpace(_))));
    }
}
