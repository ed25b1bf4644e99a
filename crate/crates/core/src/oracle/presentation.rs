//! Homogeneous relations on a weighted quiver and their JSON form.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::quiver::WeightedQuiver;

/// `coeff * path`, the path given by 0-based arrow indices read left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigRational,
    pub path: Vec<usize>,
}

impl Term {
    pub fn new(coeff: BigRational, path: Vec<usize>) -> Self {
        Term { coeff, path }
    }
}

/// Merge equal paths and drop zero coefficients; output sorted by path.
pub fn combine_terms(terms: impl IntoIterator<Item = Term>) -> Vec<Term> {
    let mut acc: BTreeMap<Vec<usize>, BigRational> = BTreeMap::new();
    for t in terms {
        let e = acc.entry(t.path).or_insert_with(BigRational::zero);
        *e += t.coeff;
    }
    acc.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(path, coeff)| Term { coeff, path })
        .collect()
}

/// A homogeneous relation whose paths all run from `source` to `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    /// 1-based vertex.
    pub source: usize,
    /// 1-based vertex.
    pub target: usize,
    pub weight: u32,
    pub terms: Vec<Term>,
}

impl Relation {
    /// Build a relation from terms, inferring endpoints and weight and
    /// checking composability, homogeneity and length at least 2.
    pub fn new(quiver: &WeightedQuiver, terms: Vec<Term>) -> Result<Relation> {
        let terms = combine_terms(terms);
        let Some(first) = terms.first() else {
            return Err(Error::InvalidRelation("relation is zero".into()));
        };
        let (source, target, weight) = path_shape(quiver, &first.path)?;
        for t in &terms {
            let shape = path_shape(quiver, &t.path)?;
            if (shape.0, shape.1) != (source, target) {
                return Err(Error::InvalidRelation(format!(
                    "path {} runs {}->{}, other terms run {}->{}",
                    render_path(quiver, source, &t.path),
                    shape.0,
                    shape.1,
                    source,
                    target
                )));
            }
            if shape.2 != weight {
                return Err(Error::InvalidRelation(format!(
                    "relation is not homogeneous: weights {} and {}",
                    weight, shape.2
                )));
            }
        }
        Ok(Relation {
            source,
            target,
            weight,
            terms,
        })
    }

    pub fn render(&self, quiver: &WeightedQuiver) -> String {
        render_combination(quiver, self.source, &self.terms)
    }
}

/// Source, target (1-based) and weight of a path of length at least 2.
fn path_shape(quiver: &WeightedQuiver, path: &[usize]) -> Result<(usize, usize, u32)> {
    if path.len() < 2 {
        return Err(Error::InvalidRelation(format!(
            "path of length {} is not in J^2",
            path.len()
        )));
    }
    let arrows = &quiver.arrows;
    if let Some(&bad) = path.iter().find(|&&a| a >= arrows.len()) {
        return Err(Error::InvalidRelation(format!("arrow index {bad} out of range")));
    }
    for w in path.windows(2) {
        if arrows[w[0]].target != arrows[w[1]].source {
            return Err(Error::InvalidRelation(format!(
                "arrows {} and {} do not compose",
                arrows[w[0]].id, arrows[w[1]].id
            )));
        }
    }
    let weight = path.iter().map(|&a| arrows[a].weight).sum();
    Ok((arrows[path[0]].source, arrows[path[path.len() - 1]].target, weight))
}

pub(crate) fn render_path(quiver: &WeightedQuiver, source: usize, path: &[usize]) -> String {
    if path.is_empty() {
        format!("e{source}")
    } else {
        path.iter()
            .map(|&a| quiver.arrows[a].id.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

pub(crate) fn render_combination(quiver: &WeightedQuiver, source: usize, terms: &[Term]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, t) in terms.iter().enumerate() {
        let p = render_path(quiver, source, &t.path);
        let neg = t.coeff < BigRational::zero();
        let mag = if neg { -t.coeff.clone() } else { t.coeff.clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != BigRational::from_integer(1.into()) {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(&p);
    }
    out
}

/// A weighted quiver with homogeneous relations, `A = kQ/(relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPresentation {
    pub quiver: WeightedQuiver,
    pub relations: Vec<Relation>,
}

impl GradedPresentation {
    /// The oracle counts degree 0 as the span of the vertices, so every
    /// arrow needs positive weight.
    pub fn new(quiver: WeightedQuiver, relations: Vec<Relation>) -> Result<Self> {
        quiver.check()?;
        if let Some(a) = quiver.arrows.iter().find(|a| a.weight == 0) {
            return Err(Error::InvalidQuiver(format!(
                "arrow {} has weight 0; the dimension oracle needs positive weights",
                a.id
            )));
        }
        Ok(GradedPresentation { quiver, relations })
    }

    pub fn free(quiver: WeightedQuiver) -> Result<Self> {
        Self::new(quiver, Vec::new())
    }

    pub fn to_json(&self) -> Vec<RelationJson> {
        self.relations
            .iter()
            .map(|r| RelationJson {
                source: r.source,
                target: r.target,
                weight: r.weight,
                terms: r
                    .terms
                    .iter()
                    .map(|t| TermJson {
                        coeff: t.coeff.to_string(),
                        path: t.path.iter().map(|&a| self.quiver.arrows[a].id.clone()).collect(),
                    })
                    .collect(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub source: usize,
    pub target: usize,
    pub weight: u32,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauTermJson {
    pub coeff: String,
    pub arrow: String,
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad rational coefficient {s:?}")))
}

pub(crate) fn lookup_arrow(quiver: &WeightedQuiver, id: &str) -> Result<usize> {
    quiver
        .arrows
        .iter()
        .position(|a| a.id == id)
        .ok_or_else(|| Error::Parse(format!("unknown arrow id {id:?}")))
}

pub(crate) fn parse_terms(quiver: &WeightedQuiver, terms: &[TermJson]) -> Result<Vec<Term>> {
    terms
        .iter()
        .map(|t| {
            let path = t
                .path
                .iter()
                .map(|id| lookup_arrow(quiver, id))
                .collect::<Result<Vec<_>>>()?;
            Ok(Term::new(parse_rational(&t.coeff)?, path))
        })
        .collect()
}

impl RelationJson {
    /// Convert, checking the declared endpoints and weight.
    pub fn to_relation(&self, quiver: &WeightedQuiver) -> Result<Relation> {
        let r = Relation::new(quiver, parse_terms(quiver, &self.terms)?)?;
        if (r.source, r.target, r.weight) != (self.source, self.target, self.weight) {
            return Err(Error::InvalidRelation(format!(
                "declared source {}, target {}, weight {} but paths give {}, {}, {}",
                self.source, self.target, self.weight, r.source, r.target, r.weight
            )));
        }
        Ok(r)
    }
}

/// Contents of a relations file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleInput {
    Relations(Vec<RelationJson>),
    Mesh(BTreeMap<String, Vec<TauTermJson>>),
    Potential(Vec<TermJson>),
}

impl OracleInput {
    /// Accepts a bare array of relations, `{"relations": [...]}`,
    /// `{"tau": {...}}` or `{"potential": [...]}`.
    pub fn from_json(s: &str) -> Result<OracleInput> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let field = |name: &str| Error::Parse(format!("field {name:?}: malformed"));
        match v {
            Value::Array(_) => serde_json::from_value(v)
                .map(OracleInput::Relations)
                .map_err(|e| Error::Parse(format!("relations: {e}"))),
            Value::Object(mut obj) => {
                if let Some(r) = obj.remove("relations") {
                    serde_json::from_value(r).map(OracleInput::Relations).map_err(|_| field("relations"))
                } else if let Some(t) = obj.remove("tau") {
                    serde_json::from_value(t).map(OracleInput::Mesh).map_err(|_| field("tau"))
                } else if let Some(p) = obj.remove("potential") {
                    serde_json::from_value(p).map(OracleInput::Potential).map_err(|_| field("potential"))
                } else {
                    Err(Error::Parse(
                        "expected one of the fields \"relations\", \"tau\", \"potential\"".into(),
                    ))
                }
            }
            _ => Err(Error::Parse("relations file must be a JSON array or object".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Arrow;

    fn two_loops() -> WeightedQuiver {
        WeightedQuiver::new(1, vec![Arrow::new("x", 1, 1, 1), Arrow::new("y", 1, 1, 2)])
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn relation_infers_shape() {
        let r = Relation::new(
            &two_loops(),
            vec![Term::new(q(1), vec![1, 0]), Term::new(q(-1), vec![0, 1]), Term::new(q(-1), vec![0, 0, 0])],
        )
        .unwrap();
        assert_eq!((r.source, r.target, r.weight), (1, 1, 3));
        assert_eq!(r.render(&two_loops()), "-x*x*x - x*y + y*x");
    }

    #[test]
    fn inhomogeneous_rejected() {
        let e = Relation::new(&two_loops(), vec![Term::new(q(1), vec![1, 0]), Term::new(q(1), vec![0, 0])]);
        assert!(matches!(e, Err(Error::InvalidRelation(_))));
    }

    #[test]
    fn short_and_empty_rejected() {
        assert!(Relation::new(&two_loops(), vec![Term::new(q(1), vec![0])]).is_err());
        assert!(Relation::new(&two_loops(), vec![Term::new(q(1), vec![0, 0]), Term::new(q(-1), vec![0, 0])]).is_err());
    }

    #[test]
    fn parse_shapes() {
        let rel = r#"[{"source":1,"target":1,"weight":3,"terms":[{"coeff":"1","path":["y","x"]},{"coeff":"-1","path":["x","y"]},{"coeff":"-1","path":["x","x","x"]}]}]"#;
        let OracleInput::Relations(v) = OracleInput::from_json(rel).unwrap() else { panic!() };
        assert_eq!(v[0].to_relation(&two_loops()).unwrap().terms.len(), 3);
        assert!(matches!(OracleInput::from_json(r#"{"tau":{"x":[{"coeff":"1","arrow":"y"}]}}"#), Ok(OracleInput::Mesh(_))));
        assert!(matches!(OracleInput::from_json(r#"{"potential":[]}"#), Ok(OracleInput::Potential(_))));
        assert!(matches!(OracleInput::from_json(r#"{"other":1}"#), Err(Error::Parse(_))));
        assert!(matches!(OracleInput::from_json("[1"), Err(Error::Parse(_))));
    }

    #[test]
    fn declared_shape_checked() {
        let rel = RelationJson {
            source: 1,
            target: 1,
            weight: 2,
            terms: vec![TermJson { coeff: "1/2".into(), path: vec!["y".into(), "x".into()] }],
        };
        assert!(rel.to_relation(&two_loops()).is_err());
    }
}
