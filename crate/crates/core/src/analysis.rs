//! One-shot analysis of a quiver with a Calabi-Yau datum, as printed by
//! `cygrowth analyze`.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;

use crate::cy_series::{
    build_q, dim2_spectral_criterion_with_tol, dim3_normal_criterion_with_tol, verify_functional_equation,
    FunctionalEquationCheck, SpectralReport,
};
use crate::error::Result;
use crate::growth::{classify_algebra, total_series, GrowthReport};
use crate::polyalg::MatPoly;
use crate::quiver::{CyDatum, WeightedQuiver};

#[derive(Clone, Debug, Serialize)]
pub struct TotalSeries {
    pub series: String,
    pub gk_dimension: Option<u32>,
    pub eps: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub vertices: usize,
    pub arrows: usize,
    pub cy: CyDatum,
    pub q: MatPoly,
    pub growth: GrowthReport,
    pub total: TotalSeries,
    pub functional_equation: FunctionalEquationCheck,
    pub spectral: Option<SpectralReport>,
}

pub fn analyze(quiver: &WeightedQuiver, cy: &CyDatum, tol: f64) -> Result<Analysis> {
    let model = build_q(quiver, cy)?;
    let growth = classify_algebra(&model.q)?;
    let total = total_series(&model.q)?;
    let spectral = match cy.dimension {
        2 => Some(dim2_spectral_criterion_with_tol(&model, tol)),
        3 => Some(dim3_normal_criterion_with_tol(&model, tol)),
        _ => None,
    };
    Ok(Analysis {
        vertices: quiver.n_vertices,
        arrows: quiver.arrows.len(),
        cy: cy.clone(),
        functional_equation: verify_functional_equation(&model),
        q: model.q,
        growth,
        total: TotalSeries {
            series: total.total.display_unit_constant(),
            gk_dimension: total.gk,
            eps: total.eps.to_string(),
        },
        spectral,
    })
}

/// Fixed-point rendering with negative zero folded to zero.
pub fn fmt_f64(x: f64) -> String {
    let x = if x.abs() < 5e-10 { 0.0 } else { x };
    format!("{x:.6}")
}

pub fn fmt_complex(z: Complex64) -> String {
    let im = if z.im.abs() < 5e-10 { 0.0 } else { z.im };
    if im < 0.0 {
        format!("{}-{}i", fmt_f64(z.re), fmt_f64(-im))
    } else {
        format!("{}+{}i", fmt_f64(z.re), fmt_f64(im))
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl Analysis {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "quiver: {} vertices, {} arrows", self.vertices, self.arrows);
        let _ = writeln!(
            s,
            "datum: dimension {}, mu = {:?}, ell = {:?}",
            self.cy.dimension, self.cy.mu, self.cy.ell
        );
        let _ = writeln!(s, "q(t):");
        for row in self.q.rows() {
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(s, "  [{}]", cells.join(", "));
        }
        let g = &self.growth;
        let _ = writeln!(s, "det q(t) = {}", g.det_q);
        let _ = writeln!(s, "cyclotomic factorization: {}", g.cyclotomic);
        let _ = writeln!(s, "growth: {}", g.growth_class);
        let _ = writeln!(
            s,
            "GK dimension: {}",
            g.gk_dimension.map_or("infinite".to_string(), |d| d.to_string())
        );
        let _ = writeln!(s, "total series: {}", self.total.series);
        let _ = writeln!(s, "total multiplicity: {}", self.total.eps);
        let fe = &self.functional_equation;
        let _ = writeln!(
            s,
            "functional equation q(t) = (-1)^d P t^L q(t^-1)^T: {}",
            if fe.functional_equation { "holds" } else { "fails" }
        );
        let _ = writeln!(s, "commutes with P t^L: {}", yes_no(fe.commutes));
        if let Some(r) = &self.spectral {
            s.push_str(&spectral_text(self.cy.dimension, r));
        }
        s
    }
}

fn spectral_text(dimension: u8, r: &SpectralReport) -> String {
    let mut s = String::new();
    let name = if dimension == 2 { "spectral criterion" } else { "hypocycloid criterion" };
    let _ = writeln!(s, "{name}: {}", r.verdict);
    let _ = writeln!(s, "  spectral radius: {}", fmt_f64(r.spectral_radius));
    if let Some(v) = &r.perron_vector {
        let v: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "  positive eigenvector: [{}]", v.join(", "));
    }
    for p in &r.eigen_pairs {
        let _ = writeln!(
            s,
            "  eigenvalue {} with zeta {}: {}",
            fmt_complex(p.delta),
            fmt_complex(p.zeta),
            if p.inside { "inside" } else { "outside" }
        );
    }
    if let (Some(rho), Some(gk)) = (r.expected_rho, r.expected_gk) {
        let _ = writeln!(s, "  expected: rho = {}, GK dimension {gk}", fmt_f64(rho));
    }
    if let Some(agree) = r.agrees_with_exact {
        let _ = writeln!(s, "  agrees with exact classification: {}", yes_no(agree));
    }
    for n in &r.notes {
        let _ = writeln!(s, "  note: {n}");
    }
    s
}
